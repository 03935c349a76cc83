"""Rank orderings over systems and the normalized L1 distance between
two orderings of the same set.

An ordering assigns rank 1 to the best system.  The distance between
two orderings is the sum of absolute rank differences divided by the
largest such sum possible for that many systems (achieved by a full
reversal), so the result always lands in [0, 1].
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from typing import Sequence

__all__ = [
    "LengthMismatch",
    "Direction",
    "Ordering",
    "scores_to_ordering",
    "max_l1_distance",
    "normalized_l1",
]


class LengthMismatch(ValueError):
    """The two orderings cover different numbers of systems."""


class Direction(str, Enum):
    HIGHER_BETTER = "higher"
    LOWER_BETTER = "lower"


@dataclass(frozen=True)
class Ordering:
    """Ranks in system order: ``ranks[i]`` is the rank of system i."""

    ranks: tuple[int, ...]

    def __post_init__(self) -> None:
        k = len(self.ranks)
        if k == 0:
            raise ValueError("an ordering needs at least one system")
        if sorted(self.ranks) != list(range(1, k + 1)):
            raise ValueError("ranks must be a permutation of 1..k")

    def __len__(self) -> int:
        return len(self.ranks)


def scores_to_ordering(
    scores: Sequence[float],
    direction: Direction = Direction.HIGHER_BETTER,
) -> Ordering:
    """Rank systems by score; rank 1 is best.  Tied scores keep the
    earlier position ahead, so the result is always a strict ordering."""
    if len(scores) == 0:
        raise ValueError("no scores given")
    if any(not math.isfinite(s) for s in scores):
        raise ValueError("scores must be finite")
    sign = -1.0 if direction is Direction.HIGHER_BETTER else 1.0
    order = sorted(range(len(scores)), key=lambda i: (sign * scores[i], i))
    ranks = [0] * len(scores)
    for pos, i in enumerate(order):
        ranks[i] = pos + 1
    return Ordering(tuple(ranks))


def max_l1_distance(k: int) -> int:
    """Largest possible sum of absolute rank differences for k systems,
    realized by reversing the ordering."""
    if k < 1:
        raise ValueError("k must be at least 1")
    return sum(abs((k - i + 1) - i) for i in range(1, k + 1))


def normalized_l1(a: Ordering, b: Ordering) -> float:
    """Sum of absolute rank differences scaled into [0, 1]."""
    if len(a) != len(b):
        raise LengthMismatch(f"orderings cover {len(a)} vs {len(b)} systems")
    k = len(a)
    if k < 2:
        raise ValueError("distance needs at least two systems")
    raw = sum(abs(x - y) for x, y in zip(a.ranks, b.ranks))
    return raw / max_l1_distance(k)

"""Transport solver against an independent LP oracle, and the
summary-to-document similarity built on it."""
import math
import random

import numpy as np
import pytest
from scipy.optimize import linprog

from rapidsumm.embeddings import EmbeddingStore
from rapidsumm.similarity import (
    NBow,
    NoComparableContent,
    nbow,
    rwmd,
    wesm,
    wesm_text,
    wmd,
)
from rapidsumm.textprep import Stoplist, default_stoplist, load_document, word_tokens
from rapidsumm.transport import TransportError, solve_transport, transport_cost


def _store(entries):
    dim = len(next(iter(entries.values())))
    return EmbeddingStore(
        dim=dim,
        table={w: np.array(v, dtype=np.float32) for w, v in entries.items()},
    )


def _lp_transport(a, b, C):
    """Dense LP formulation solved by an unrelated method (HiGHS)."""
    m, n = C.shape
    A_eq = []
    b_eq = []
    for i in range(m):
        row = np.zeros(m * n)
        row[i * n : (i + 1) * n] = 1.0
        A_eq.append(row)
        b_eq.append(a[i])
    for j in range(n):
        col = np.zeros(m * n)
        col[j::n] = 1.0
        A_eq.append(col)
        b_eq.append(b[j])
    res = linprog(C.ravel(), A_eq=np.array(A_eq), b_eq=np.array(b_eq), method="highs")
    assert res.status == 0, res.message
    return res.fun


def _random_instance(rng, max_side=8, dim=16):
    m = rng.randrange(1, max_side + 1)
    n = rng.randrange(1, max_side + 1)
    a = np.array([rng.random() + 0.05 for _ in range(m)])
    a /= a.sum()
    b = np.array([rng.random() + 0.05 for _ in range(n)])
    b /= b.sum()
    X = np.array([[rng.gauss(0, 1) for _ in range(dim)] for _ in range(m)])
    Y = np.array([[rng.gauss(0, 1) for _ in range(dim)] for _ in range(n)])
    C = np.sqrt(((X[:, None, :] - Y[None, :, :]) ** 2).sum(-1))
    return a, b, C


# --- transport solver -------------------------------------------------------


def test_transport_single_cell():
    value, T = solve_transport([1.0], [1.0], [[2.5]])
    assert value == 2.5
    assert T.tolist() == [[1.0]]


def test_transport_single_row_is_forced():
    b = [0.2, 0.3, 0.5]
    C = [[4.0, 1.0, 2.0]]
    value, T = solve_transport([1.0], b, C)
    assert math.isclose(value, 0.2 * 4 + 0.3 * 1 + 0.5 * 2, abs_tol=1e-12)
    assert np.allclose(T, [b])


def test_transport_identity_pairing():
    value, T = solve_transport([0.5, 0.5], [0.5, 0.5], [[0.0, 1.0], [1.0, 0.0]])
    assert math.isclose(value, 0.0, abs_tol=1e-12)
    assert np.allclose(T, [[0.5, 0.0], [0.0, 0.5]])


def test_transport_validates_inputs():
    with pytest.raises(ValueError):
        solve_transport([1.0], [0.5], [[1.0]])
    with pytest.raises(ValueError):
        solve_transport([0.5, 0.5], [1.0], [[1.0]])
    with pytest.raises(ValueError):
        solve_transport([-0.5, 1.5], [1.0], [[1.0], [1.0]])


def test_transport_flow_is_feasible():
    rng = random.Random(14)
    for _ in range(30):
        a, b, C = _random_instance(rng)
        value, T = solve_transport(a, b, C)
        assert np.all(T >= -1e-12)
        assert np.allclose(T.sum(axis=1), a, atol=1e-9)
        assert np.allclose(T.sum(axis=0), b, atol=1e-9)
        assert math.isclose(value, float((T * C).sum()), abs_tol=1e-12)


def test_transport_matches_lp_oracle():
    rng = random.Random(15)
    for _ in range(40):
        a, b, C = _random_instance(rng)
        value = transport_cost(a, b, C)
        oracle = _lp_transport(a, b, C)
        assert abs(value - oracle) < 1e-6


def test_transport_degenerate_equal_masses():
    # uniform masses with many exact ties exercise zero-flow pivots
    rng = random.Random(16)
    for _ in range(15):
        m = rng.randrange(2, 7)
        n = rng.randrange(2, 7)
        a = np.full(m, 1.0 / m)
        b = np.full(n, 1.0 / n)
        C = np.array([[rng.choice([0.0, 1.0, 2.0]) for _ in range(n)] for _ in range(m)])
        value = transport_cost(a, b, C)
        oracle = _lp_transport(a, b, C)
        assert abs(value - oracle) < 1e-6


def test_transport_is_deterministic():
    rng = random.Random(17)
    a, b, C = _random_instance(rng)
    v1, T1 = solve_transport(a, b, C)
    v2, T2 = solve_transport(a, b, C)
    assert v1 == v2
    assert np.array_equal(T1, T2)


# --- nbow --------------------------------------------------------------------


STORE = _store(
    {
        "cat": [0.0, 0.0],
        "dog": [1.0, 0.0],
        "bird": [0.0, 1.0],
        "fish": [1.0, 1.0],
    }
)


def test_nbow_frequency_weights():
    got = nbow(["cat", "cat", "dog"], Stoplist([]), STORE)
    assert got.words == ("cat", "dog")
    assert got.weights == (2 / 3, 1 / 3)


def test_nbow_all_oov_raises():
    with pytest.raises(NoComparableContent):
        nbow(["zebra", "yak"], Stoplist([]), STORE)


def test_nbow_drops_stopwords_and_punctuation():
    got = nbow(["the", "cat", "...", "!"], Stoplist(["the"]), STORE)
    assert got.words == ("cat",)
    assert got.weights == (1.0,)


def test_nbow_case_folds():
    got = nbow(["Cat", "CAT", "dog"], Stoplist([]), STORE)
    assert got.words == ("cat", "dog")
    assert got.weights == (2 / 3, 1 / 3)


def test_nbow_validation():
    with pytest.raises(ValueError):
        NBow(words=("a", "a"), weights=(0.5, 0.5))
    with pytest.raises(ValueError):
        NBow(words=("a", "b"), weights=(1.5, -0.5))
    with pytest.raises(ValueError):
        NBow(words=("a",), weights=(0.5, 0.5))


# --- wmd ----------------------------------------------------------------------


def test_wmd_identity_is_zero():
    a = nbow(["cat", "dog", "dog"], Stoplist([]), STORE)
    assert abs(wmd(a, a, STORE)) < 1e-12


def test_wmd_single_words_is_euclidean():
    store = _store({"x": [0.0, 0.0], "y": [3.0, 4.0]})
    a = nbow(["x"], Stoplist([]), store)
    b = nbow(["y"], Stoplist([]), store)
    assert math.isclose(wmd(a, b, store), 5.0, abs_tol=1e-12)


def test_wmd_two_by_two_hand_solved():
    # p,q at y=0 and r,s at y=1 directly above: matching p->r, q->s
    # moves every unit a distance of 1
    store = _store({"p": [0, 0], "q": [1, 0], "r": [0, 1], "s": [1, 1]})
    sl = Stoplist([])
    a = nbow(["p", "q"], sl, store)
    b = nbow(["r", "s"], sl, store)
    assert math.isclose(wmd(a, b, store), 1.0, abs_tol=1e-9)


def test_wmd_symmetry():
    rng = random.Random(18)
    sl = Stoplist([])
    words = list(STORE.table)
    for _ in range(25):
        ta = [rng.choice(words) for _ in range(rng.randrange(1, 8))]
        tb = [rng.choice(words) for _ in range(rng.randrange(1, 8))]
        a = nbow(ta, sl, STORE)
        b = nbow(tb, sl, STORE)
        assert abs(wmd(a, b, STORE) - wmd(b, a, STORE)) < 1e-9


def _random_vocab_store(rng, n_words, dim=8):
    return _store(
        {f"w{i}": [rng.gauss(0, 1) for _ in range(dim)] for i in range(n_words)}
    )


def test_wmd_triangle_inequality():
    rng = random.Random(19)
    sl = Stoplist([])
    for _ in range(30):
        store = _random_vocab_store(rng, 10)
        words = list(store.table)
        bows = []
        for _i in range(3):
            toks = [rng.choice(words) for _ in range(rng.randrange(1, 7))]
            bows.append(nbow(toks, sl, store))
        a, b, c = bows
        assert wmd(a, c, store) <= wmd(a, b, store) + wmd(b, c, store) + 1e-6


def test_rwmd_is_a_lower_bound():
    rng = random.Random(20)
    sl = Stoplist([])
    for _ in range(25):
        store = _random_vocab_store(rng, 9)
        words = list(store.table)
        a = nbow([rng.choice(words) for _ in range(rng.randrange(1, 7))], sl, store)
        b = nbow([rng.choice(words) for _ in range(rng.randrange(1, 7))], sl, store)
        assert rwmd(a, b, store) <= wmd(a, b, store) + 1e-9


# --- wesm ----------------------------------------------------------------------


def test_wesm_verbatim_single_paragraph_is_one():
    doc = load_document("Cat dog bird.")
    score = wesm_text("Cat dog bird.", doc, Stoplist([]), STORE)
    assert math.isclose(score.value, 1.0, abs_tol=1e-12)
    assert score.per_paragraph == ((0, 0.0),)


def test_wesm_arithmetic_two_paragraphs():
    # distances 0 and 1 average to (1 + 1/2) / 2
    doc = load_document("Cat.\n\nDog.")
    score = wesm_text("Cat", doc, Stoplist([]), STORE)
    assert math.isclose(score.value, 0.75, abs_tol=1e-12)
    assert score.per_paragraph[0] == (0, 0.0)
    assert math.isclose(score.per_paragraph[1][1], 1.0, abs_tol=1e-12)


def test_wesm_skips_incomparable_paragraphs():
    # middle paragraph is all stopwords: flagged and left out of the mean
    doc = load_document("Cat.\n\nOf the and.\n\nDog.")
    score = wesm_text("Cat", doc, default_stoplist(), STORE)
    assert score.skipped_paragraphs == (1,)
    assert [p for p, _ in score.per_paragraph] == [0, 2]
    assert math.isclose(score.value, 0.75, abs_tol=1e-12)


def test_wesm_summary_without_content_raises():
    doc = load_document("Cat dog.")
    with pytest.raises(NoComparableContent):
        wesm_text("of the and", doc, default_stoplist(), STORE)
    with pytest.raises(NoComparableContent):
        wesm_text("zebra yak", doc, Stoplist([]), STORE)


def test_wesm_no_comparable_paragraphs_raises():
    doc = load_document("Zebra yak.")
    with pytest.raises(NoComparableContent):
        wesm_text("cat", doc, Stoplist([]), STORE)


def test_wesm_word_reuse_beats_distant_paraphrase():
    store = _store(
        {
            "storm": [0.0, 0.0],
            "rain": [0.1, 0.0],
            "market": [10.0, 10.0],
            "trade": [10.1, 10.0],
        }
    )
    doc = load_document("Storm rain storm.")
    sl = Stoplist([])
    close = wesm_text("storm rain", doc, sl, store)
    far = wesm_text("market trade", doc, sl, store)
    assert close.value > far.value


def test_wesm_value_in_unit_interval():
    rng = random.Random(22)
    sl = Stoplist([])
    for _ in range(15):
        store = _random_vocab_store(rng, 12, dim=4)
        words = list(store.table)
        paras = []
        for _p in range(rng.randrange(1, 4)):
            toks = [rng.choice(words) for _ in range(rng.randrange(2, 8))]
            paras.append(" ".join(toks).capitalize() + ".")
        doc = load_document("\n\n".join(paras))
        summary = " ".join(rng.choice(words) for _ in range(3))
        score = wesm_text(summary, doc, sl, store)
        assert 0.0 < score.value <= 1.0


def test_wesm_accepts_pretokenized_input():
    doc = load_document("Cat dog.")
    direct = wesm(word_tokens("cat dog"), doc, Stoplist([]), STORE)
    via_text = wesm_text("cat dog", doc, Stoplist([]), STORE)
    assert direct == via_text

"""End-to-end command-line behavior, invoked in process."""
import json

import pytest

from rapidsumm.cli import ENV_EMBEDDINGS, main

DOC = (
    "The harbor opened before dawn and the first vessels slipped out quietly. "
    "Crews checked the cargo manifests while the tide was still low. "
    "Merchants argued about prices on the quay.\n"
    "\n"
    "By noon the storm warnings reached the port authority. "
    "Every captain turned back toward the breakwater without waiting. "
    "The harbor master logged the strange signals for the night watch.\n"
)

EMBEDDINGS = "\n".join(
    [
        "harbor 1.0 0.0",
        "vessels 0.9 0.1",
        "cargo 0.8 0.2",
        "tide 0.7 0.3",
        "storm 0.0 1.0",
        "port 0.1 0.9",
        "captain 0.2 0.8",
        "night 0.3 0.7",
        "cat 1.0 1.0",
        "sat 0.5 0.5",
        "mat 0.0 0.5",
    ]
) + "\n"


@pytest.fixture()
def doc_file(tmp_path):
    p = tmp_path / "article.txt"
    p.write_text(DOC, encoding="utf-8")
    return p


@pytest.fixture()
def emb_file(tmp_path):
    p = tmp_path / "vectors.txt"
    p.write_text(EMBEDDINGS, encoding="utf-8")
    return p


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


# --- summarize ---


def test_summarize_percent_budget(doc_file, capsys):
    code, out, _ = run(
        capsys, "summarize", "--variant", "ET3Rank", "--percent", "30",
        "--format", "structured", str(doc_file),
    )
    assert code == 0
    record = json.loads(out.strip())
    assert set(record) >= {"variant", "budget", "char_used", "sentences", "scores"}
    assert record["variant"] == "ET3Rank"
    assert record["char_used"] <= len(DOC) * 30 // 100
    assert record["char_used"] == sum(len(s["text"]) for s in record["sentences"])
    indices = [s["index"] for s in record["sentences"]]
    assert indices == sorted(indices)


def test_summarize_char_budget(doc_file, capsys):
    code, out, _ = run(
        capsys, "summarize", "--variant", "PRAKE", "--chars", "120",
        "--format", "structured", str(doc_file),
    )
    assert code == 0
    record = json.loads(out.strip())
    assert record["budget"] == 120
    assert record["char_used"] <= 120


def test_summarize_text_mode_prints_sentences(doc_file, capsys):
    code, out, _ = run(capsys, "summarize", "--percent", "40", str(doc_file))
    assert code == 0
    for line in out.strip().splitlines():
        assert line in DOC


def test_summarize_unknown_variant_is_usage_error(doc_file, capsys):
    code, _, err = run(capsys, "summarize", "--variant", "NOPE", str(doc_file))
    assert code == 2
    assert "invalid choice" in err


def test_summarize_missing_input_fails(tmp_path, capsys):
    code, _, err = run(capsys, "summarize", str(tmp_path / "gone.txt"))
    assert code == 1
    assert "error" in err


def test_summarize_multiple_variants_have_headers(doc_file, capsys):
    code, out, _ = run(
        capsys, "summarize", "--variant", "PRAKE", "--variant", "T2RAKE",
        "--percent", "40", str(doc_file),
    )
    assert code == 0
    assert ":: PRAKE ==" in out
    assert ":: T2RAKE ==" in out


def test_summarize_output_file(doc_file, tmp_path, capsys):
    target = tmp_path / "out" / "summary.txt"
    code, out, _ = run(
        capsys, "summarize", "--percent", "40", "--output", str(target), str(doc_file)
    )
    assert code == 0
    assert out == ""
    assert target.read_text(encoding="utf-8").strip()


def test_summarize_deterministic(doc_file, capsys):
    args = ("summarize", "--percent", "30", "--format", "structured", str(doc_file))
    code1, out1, _ = run(capsys, *args)
    code2, out2, _ = run(capsys, *args)
    assert code1 == code2 == 0
    assert out1 == out2


def test_summarize_jobs_match_serial(doc_file, tmp_path, capsys):
    other = tmp_path / "second.txt"
    other.write_text(DOC.replace("harbor", "station"), encoding="utf-8")
    args = ("summarize", "--percent", "30", "--format", "structured",
            str(doc_file), str(other))
    _, serial, _ = run(capsys, *args)
    code, parallel, _ = run(capsys, *args, "--jobs", "2")
    assert code == 0
    assert parallel == serial


def test_summarize_directory_input(doc_file, capsys):
    code, out, _ = run(
        capsys, "summarize", "--percent", "30", "--format", "structured",
        str(doc_file.parent),
    )
    assert code == 0
    assert len(out.strip().splitlines()) >= 1


# --- keywords / topics ---


def test_keywords_text_output(doc_file, capsys):
    code, out, _ = run(capsys, "keywords", "--top", "5", str(doc_file))
    assert code == 0
    rows = [line.split("\t") for line in out.strip().splitlines()]
    assert 1 <= len(rows) <= 5
    scores = [float(r[0]) for r in rows]
    assert scores == sorted(scores, reverse=True)


def test_keywords_structured_rake(doc_file, capsys):
    code, out, _ = run(
        capsys, "keywords", "--extractor", "rake", "--format", "structured",
        str(doc_file),
    )
    assert code == 0
    record = json.loads(out.strip())
    assert record["variant"] == "rake"
    assert record["scores"]


def test_topics_paragraph_scheme(doc_file, capsys):
    code, out, _ = run(
        capsys, "topics", "--scheme", "tcp", "--format", "structured", str(doc_file)
    )
    assert code == 0
    record = json.loads(out.strip())
    assert record["scores"]["topic_count"] == 2
    topics = [s["topic"] for s in record["sentences"]]
    assert topics == [0, 0, 0, 1, 1, 1]


def test_topics_text_table(doc_file, capsys):
    code, out, _ = run(capsys, "topics", "--scheme", "tcs", str(doc_file))
    assert code == 0
    assert "(1 topics)" in out


# --- rouge ---


def test_rouge_identity_scores_one(tmp_path, capsys):
    cand = tmp_path / "cand.txt"
    ref = tmp_path / "ref.txt"
    cand.write_text("The cat sat on the mat.", encoding="utf-8")
    ref.write_text("The cat sat on the mat.", encoding="utf-8")
    code, out, _ = run(
        capsys, "rouge", "--references", str(ref), "--format", "structured", str(cand)
    )
    assert code == 0
    first = json.loads(out.strip().splitlines()[0])
    assert first["scores"]["r1"] == 1.0
    assert first["scores"]["r2"] == 1.0
    assert first["scores"]["rsu4"] == 1.0


def test_rouge_directory_pairing(tmp_path, capsys):
    cands = tmp_path / "cands"
    refs = tmp_path / "refs"
    cands.mkdir()
    refs.mkdir()
    (cands / "a.txt").write_text("alpha beta", encoding="utf-8")
    (cands / "b.txt").write_text("gamma delta", encoding="utf-8")
    (refs / "a.txt").write_text("alpha beta", encoding="utf-8")
    (refs / "b.1.txt").write_text("gamma delta", encoding="utf-8")
    (refs / "b.2.txt").write_text("epsilon zeta", encoding="utf-8")
    code, out, _ = run(
        capsys, "rouge", "--references", str(refs), "--format", "structured", str(cands)
    )
    assert code == 0
    records = [json.loads(line) for line in out.strip().splitlines()]
    by_doc = {r["document"]: r for r in records}
    assert by_doc[str(cands / "a.txt")]["scores"]["r1"] == 1.0
    # b matches two references; the zero-overlap one drags the mean to 0.5
    assert by_doc[str(cands / "b.txt")]["scores"]["r1"] == 0.5
    assert "MEAN" in by_doc


def test_rouge_truncate(tmp_path, capsys):
    cand = tmp_path / "cand.txt"
    ref = tmp_path / "ref.txt"
    cand.write_text("x y c d", encoding="utf-8")
    ref.write_text("c d", encoding="utf-8")
    code, out, _ = run(
        capsys, "rouge", "--references", str(ref), "--truncate", "2",
        "--format", "structured", str(cand),
    )
    assert code == 0
    first = json.loads(out.strip().splitlines()[0])
    assert first["scores"]["r1"] == 0.0


def test_rouge_unmatched_candidate_warns(tmp_path, capsys):
    cands = tmp_path / "cands"
    refs = tmp_path / "refs"
    cands.mkdir()
    refs.mkdir()
    (cands / "a.txt").write_text("alpha beta", encoding="utf-8")
    (cands / "orphan.txt").write_text("beta gamma", encoding="utf-8")
    (refs / "a.txt").write_text("alpha beta", encoding="utf-8")
    code, out, err = run(capsys, "rouge", "--references", str(refs), str(cands))
    assert code == 0
    assert "orphan" in err
    assert "MEAN" in out


def test_rouge_nothing_scored_fails(tmp_path, capsys):
    cands = tmp_path / "cands"
    refs = tmp_path / "refs"
    cands.mkdir()
    refs.mkdir()
    (cands / "a.txt").write_text("alpha", encoding="utf-8")
    (refs / "zzz.txt").write_text("alpha", encoding="utf-8")
    code, _, err = run(capsys, "rouge", "--references", str(refs), str(cands))
    assert code == 1
    assert "no candidate" in err


# --- wesm ---


def test_wesm_identical_single_paragraph_summary(tmp_path, emb_file, capsys):
    orig = tmp_path / "story.txt"
    orig.write_text("The cat sat on the mat.", encoding="utf-8")
    summ_dir = tmp_path / "summaries"
    summ_dir.mkdir()
    (summ_dir / "story.txt").write_text("The cat sat on the mat.", encoding="utf-8")
    code, out, _ = run(
        capsys, "wesm", "--embeddings", str(emb_file), "--summaries", str(summ_dir),
        str(orig),
    )
    assert code == 0
    rows = [line.split("\t") for line in out.strip().splitlines()]
    assert rows[0] == ["document", "variant", "wesm"]
    assert float(rows[1][2]) == 1.0
    assert rows[-1][0] == "MEAN"


def test_wesm_generates_summaries_per_variant(doc_file, emb_file, capsys):
    code, out, _ = run(
        capsys, "wesm", "--embeddings", str(emb_file), "--variant", "PRAKE",
        "--variant", "T2RAKE", "--percent", "60", "--format", "structured",
        str(doc_file),
    )
    assert code == 0
    records = [json.loads(line) for line in out.strip().splitlines()]
    means = [r for r in records if r["document"] == "MEAN"]
    assert {r["variant"] for r in means} == {"PRAKE", "T2RAKE"}
    for r in records:
        if r["document"] != "MEAN" and "wesm" in r["scores"]:
            assert 0.0 < r["scores"]["wesm"] <= 1.0
            assert r["sentences"]


def test_wesm_env_var_supplies_embeddings(tmp_path, emb_file, capsys, monkeypatch):
    monkeypatch.setenv(ENV_EMBEDDINGS, str(emb_file))
    orig = tmp_path / "story.txt"
    orig.write_text("The cat sat on the mat.", encoding="utf-8")
    summ = tmp_path / "story.summary.txt"
    summ.write_text("The cat sat.", encoding="utf-8")
    code, out, _ = run(capsys, "wesm", "--summaries", str(summ), str(orig))
    assert code == 0
    assert "MEAN" in out


def test_wesm_missing_embeddings_is_usage_error(tmp_path, capsys, monkeypatch):
    monkeypatch.delenv(ENV_EMBEDDINGS, raising=False)
    orig = tmp_path / "story.txt"
    orig.write_text("The cat sat.", encoding="utf-8")
    code, _, err = run(capsys, "wesm", str(orig))
    assert code == 2
    assert "embeddings" in err


def test_wesm_summaries_and_variant_conflict(tmp_path, emb_file, capsys):
    orig = tmp_path / "story.txt"
    orig.write_text("The cat sat.", encoding="utf-8")
    code, _, err = run(
        capsys, "wesm", "--embeddings", str(emb_file), "--summaries", str(orig),
        "--variant", "PRAKE", str(orig),
    )
    assert code == 2
    assert "mutually exclusive" in err


def test_wesm_empty_summary_recorded(tmp_path, emb_file, capsys):
    orig = tmp_path / "story.txt"
    orig.write_text("The cat sat on the mat.", encoding="utf-8")
    summ_dir = tmp_path / "sums"
    summ_dir.mkdir()
    (summ_dir / "story.txt").write_text("\n", encoding="utf-8")
    code, out, err = run(
        capsys, "wesm", "--embeddings", str(emb_file), "--summaries", str(summ_dir),
        "--format", "structured", str(orig),
    )
    assert code == 0
    record = json.loads(out.strip().splitlines()[0])
    assert record["scores"].get("error") == "no comparable content"
    assert "warning" in err


# --- bench ---


def test_bench_writes_artifacts(tmp_path, capsys):
    corpus = tmp_path / "corpus"
    corpus.mkdir()
    for i in range(3):
        (corpus / f"art{i}.txt").write_text(DOC, encoding="utf-8")
    out_dir = tmp_path / "bench"
    code, out, _ = run(
        capsys, "bench", "--corpus", str(corpus), "--min-words", "100",
        "--max-words", "200", "--step", "100", "--samples", "1",
        "--variant", "PRAKE", "--out-dir", str(out_dir),
    )
    assert code == 0
    assert out.startswith("words\t")
    assert (out_dir / "report.tsv").exists()
    assert (out_dir / "runtime_PRAKE.dat").exists()
    assert (out_dir / "runtime.png").exists()


def test_bench_no_artifacts(tmp_path, capsys):
    corpus = tmp_path / "corpus"
    corpus.mkdir()
    (corpus / "a.txt").write_text(DOC, encoding="utf-8")
    out_dir = tmp_path / "bench"
    code, out, _ = run(
        capsys, "bench", "--corpus", str(corpus), "--min-words", "100",
        "--max-words", "100", "--step", "100", "--samples", "1",
        "--variant", "PRAKE", "--out-dir", str(out_dir), "--no-artifacts",
    )
    assert code == 0
    assert "PRAKE" in out
    assert not out_dir.exists()


def test_bench_empty_corpus_fails(tmp_path, capsys):
    corpus = tmp_path / "corpus"
    corpus.mkdir()
    code, _, err = run(
        capsys, "bench", "--corpus", str(corpus), "--no-artifacts"
    )
    assert code == 1
    assert "error" in err


# --- compare ---


def test_compare_labeled_columns(tmp_path, capsys):
    c1 = tmp_path / "ravg.txt"
    c2 = tmp_path / "wesm.txt"
    c1.write_text(
        "ET3Rank 34.10\nESRAKE 32.90\nET2RAKE 31.73\nPRAKE 32.93\nT2RAKE 33.43\n",
        encoding="utf-8",
    )
    c2.write_text(
        "ET3Rank 3.382\nESRAKE 3.175\nET2RAKE 3.148\nPRAKE 3.150\nT2RAKE 3.247\n",
        encoding="utf-8",
    )
    code, out, _ = run(
        capsys, "compare", str(c1), str(c2), "--format", "structured"
    )
    assert code == 0
    record = json.loads(out.strip())
    assert record["orderings"]["O1"] == [1, 4, 5, 3, 2]
    assert record["orderings"]["O2"] == [1, 3, 5, 4, 2]
    assert record["scores"]["O1,O2"] == pytest.approx(1.0 / 6.0)


def test_compare_reorders_by_label(tmp_path, capsys):
    c1 = tmp_path / "a.txt"
    c2 = tmp_path / "b.txt"
    c1.write_text("x 3.0\ny 2.0\nz 1.0\n", encoding="utf-8")
    c2.write_text("z 9.0\nx 8.0\ny 7.0\n", encoding="utf-8")
    code, out, _ = run(capsys, "compare", str(c1), str(c2))
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[0] == "system\tO1\tO2"
    assert lines[1] == "x\t1\t2"
    assert lines[2] == "y\t2\t3"
    assert lines[3] == "z\t3\t1"


def test_compare_bare_columns_three_way(tmp_path, capsys):
    paths = []
    for name, body in (("c1.txt", "5\n4\n3\n"), ("c2.txt", "5\n4\n3\n"), ("c3.txt", "3\n4\n5\n")):
        p = tmp_path / name
        p.write_text(body, encoding="utf-8")
        paths.append(p)
    code, out, _ = run(capsys, "compare", *(str(p) for p in paths))
    assert code == 0
    assert "O1,O2\t0.000000" in out
    assert "O1,O3\t1.000000" in out


def test_compare_wrong_arity(tmp_path, capsys):
    p = tmp_path / "only.txt"
    p.write_text("1\n2\n", encoding="utf-8")
    code, _, err = run(capsys, "compare", str(p))
    assert code == 2
    assert "two or three" in err


def test_compare_mismatched_labels(tmp_path, capsys):
    c1 = tmp_path / "a.txt"
    c2 = tmp_path / "b.txt"
    c1.write_text("x 1\ny 2\n", encoding="utf-8")
    c2.write_text("x 1\nq 2\n", encoding="utf-8")
    code, _, err = run(capsys, "compare", str(c1), str(c2))
    assert code == 2
    assert "labels" in err


# --- top level ---


def test_no_subcommand_is_usage_error(capsys):
    assert main([]) == 2


def test_help_exits_zero(capsys):
    assert main(["--help"]) == 0
    assert main(["summarize", "--help"]) == 0

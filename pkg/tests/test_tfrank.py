import random

import pytest
from hypothesis import assume, given
from hypothesis import strategies as st

from oracles import brute_recommend
from tfcr.bm25 import Bm25Params, build_index, index_from_terms, rank_all
from tfcr.corpus import RANKING_TF, CandidateDocument, Corpus, OriginalDocument, Paragraph, TermFunction
from tfcr.tfrank import (
    Query,
    TermFunctionProfile,
    Variant,
    build_profiles,
    dump_profiles,
    load_profiles,
    recommend,
    tf_weight,
    tfw_score,
)

P, M, PM, MP = RANKING_TF
F_EXAMPLE = TermFunctionProfile("x", (4, 2, 8, 1))


def _par(pid, tf, refs):
    return Paragraph(pid, f"text {pid}", tf, frozenset(refs))


def _corpus(paragraphs_by_doc, cand_ids=("c1", "c2")):
    docs = [
        OriginalDocument(doc_id, "T", "A", 2020, "ie", tuple(pars)) for doc_id, pars in paragraphs_by_doc.items()
    ]
    return Corpus.from_documents(docs, [CandidateDocument(c, f"title {c}") for c in cand_ids])


def test_profile_from_worked_distribution():
    # cited by 3 problem+method, 4 problem, 0 method+problem and 1 method paragraphs
    pars = [_par(f"pm{i}", PM, ["c1"]) for i in range(3)]
    pars += [_par(f"p{i}", P, ["c1"]) for i in range(4)]
    pars += [_par("m0", M, ["c1"])]
    profiles = build_profiles(_corpus({"d1": pars}))
    assert profiles["c1"].counts == (4, 1, 3, 0)
    assert profiles["c2"].counts == (0, 0, 0, 0)
    # shares in (problem+method, problem, method+problem, method) order
    shares = [tf_weight(profiles["c1"], tf) for tf in (PM, P, MP, M)]
    assert shares == [3 / 8, 4 / 8, 0, 1 / 8]


def test_non_ranking_paragraphs_do_not_count():
    corpus = _corpus({"d1": [_par("a", TermFunction.APPLICATION, ["c1"])]})
    assert build_profiles(corpus)["c1"].counts == (0, 0, 0, 0)


def test_training_subset_and_unknown_ids():
    corpus = _corpus({"d1": [_par("a", P, ["c1"])], "d2": [_par("b", M, ["c1"])]})
    assert build_profiles(corpus, ["d1"])["c1"].counts == (1, 0, 0, 0)
    assert build_profiles(corpus, ["d1", "d2"], exclude_paragraphs={"a"})["c1"].counts == (0, 1, 0, 0)
    with pytest.raises(KeyError):
        build_profiles(corpus, ["d3"])


def test_training_isolation():
    base = {"d1": [_par("a", P, ["c1"]), _par("b", PM, ["c1", "c2"])]}
    before = build_profiles(_corpus(base), ["d1"])
    extended = dict(base, d2=[_par("c", MP, ["c1", "c2"])])
    assert build_profiles(_corpus(extended), ["d1"]) == before


@pytest.mark.parametrize(
    "tf,expected", [(P, 4 / 15), (M, 2 / 15), (PM, 8 / 15), (MP, 1 / 15)]
)
def test_weight_worked_example(tf, expected):
    assert tf_weight(F_EXAMPLE, tf) == pytest.approx(expected, abs=1e-12)


def test_weight_edge_cases():
    assert all(tf_weight(TermFunctionProfile("z"), tf) == 0 for tf in RANKING_TF)
    assert tf_weight(TermFunctionProfile("s", (0, 5, 0, 0)), M) == 1
    with pytest.raises(ValueError):
        tf_weight(F_EXAMPLE, TermFunction.TOOL)
    with pytest.raises(ValueError):
        TermFunctionProfile("bad", (1, -1, 0, 0))


@given(st.tuples(*[st.integers(0, 50)] * 4))
def test_weights_sum_to_one(counts):
    assume(sum(counts) > 0)
    profile = TermFunctionProfile("x", counts)
    weights = [tf_weight(profile, tf) for tf in RANKING_TF]
    assert abs(sum(weights) - 1) <= 1e-12
    assert all(0 <= w <= 1 for w in weights)


def test_tfw_score_examples():
    assert tfw_score(7.3, 0.0, 0.4) == 7.3
    assert tfw_score(10, 4 / 15, 1.0) == pytest.approx(12.6667, abs=1e-4)
    assert tfw_score(10, 4 / 15, 0.5) == pytest.approx(11.3333, abs=1e-4)


# subnormal scores are excluded: (1 + w) * 5e-324 rounds back to 5e-324
@given(st.one_of(st.just(0.0), st.floats(1e-300, 1e6)), st.integers(0, 40), st.integers(1, 40), st.floats(1e-3, 1))
def test_tfw_dominance(bm25, num, den, alpha):
    weight = min(num, den) / den  # weights are count ratios
    s = tfw_score(bm25, weight, alpha)
    assert s >= bm25
    if bm25 > 0:
        assert (s == bm25) == (weight == 0)


def test_query_validation():
    with pytest.raises(ValueError):
        Query("x", TermFunction.DATASET)
    for alpha in (0, -0.1, 1.01):
        with pytest.raises(ValueError):
            Query("x", P, alpha=alpha)
    assert Query("x", "problem+method").term_function is PM


def _setup(years=None, counts=None, texts=None):
    texts = texts or {
        "c1": "neural ranking", "c2": "neural ranking", "c3": "graph walk",
        "c4": "graph walk", "c5": "random walk",
    }
    years = years or {c: 2000 for c in texts}
    cands = [CandidateDocument(c, t, "", years[c]) for c, t in texts.items()]
    index = build_index(cands)
    counts = counts or {c: (0, 0, 0, 0) for c in texts}
    profiles = {c: TermFunctionProfile(c, counts[c]) for c in texts}
    return index, profiles


def test_year_filter_drops_recent_candidates():
    index, profiles = _setup(years={"c1": 2012, "c2": 2009, "c3": 2010, "c4": 2011, "c5": 2015})
    ranked = recommend(Query("neural ranking", P, year_cutoff=2010), index, profiles)
    assert [e.cand_id for e in ranked] == ["c2"]


def test_unknown_year_handling():
    index, profiles = _setup(years={"c1": None, "c2": 2001, "c3": 2001, "c4": 2001, "c5": 2001})
    q = Query("neural", P, year_cutoff=2010)
    assert "c1" not in [e.cand_id for e in recommend(q, index, profiles)]
    assert "c1" in [e.cand_id for e in recommend(q, index, profiles, lenient_year=True)]
    no_cutoff = Query("neural", P)
    assert "c1" in [e.cand_id for e in recommend(no_cutoff, index, profiles)]


def test_zero_profiles_reduce_to_plain():
    index, profiles = _setup()
    q = Query("neural ranking walk", MP)
    assert recommend(q, index, profiles, variant="tfw-bm25") == recommend(q, index, profiles, variant="plain-bm25")


def test_weight_breaks_bm25_tie():
    counts = {"c1": (1, 9, 0, 0), "c2": (8, 2, 0, 0)}
    index, profiles = _setup(counts={c: counts.get(c, (0, 0, 0, 0)) for c in ("c1", "c2", "c3", "c4", "c5")})
    q = Query("neural ranking", P)
    plain = recommend(q, index, profiles, variant=Variant.PLAIN)
    tfw = recommend(q, index, profiles, variant=Variant.TFW)
    assert plain[0].score == plain[1].score and plain[0].cand_id == "c1"
    assert tfw[0].cand_id == "c2" and tfw[0].score > tfw[1].score
    assert tfw[0].tf_weight == pytest.approx(0.8) and tfw[1].tf_weight == pytest.approx(0.1)


def test_recommend_errors():
    index, profiles = _setup()
    with pytest.raises(ValueError):
        recommend(Query("x", P), index, profiles, top_n=0)
    del profiles["c5"]
    with pytest.raises(ValueError):
        recommend(Query("x", P), index, profiles)


def test_truncation_default_is_thirty():
    texts = {f"c{i:02d}": "shared words here" for i in range(45)}
    index, profiles = _setup(texts=texts)
    assert len(recommend(Query("shared", P), index, profiles)) == 30
    assert len(recommend(Query("shared", P), index, profiles, top_n=7)) == 7


def _random_case(rng):
    n = rng.randint(1, 12)
    ids = [f"c{i}" for i in range(n)]
    docs = {c: rng.choices("abcdefgh", k=rng.randint(0, 10)) for c in ids}
    years = {c: rng.choice([None, *range(1995, 2015)]) for c in ids}
    counts = {c: tuple(rng.randint(0, 4) if rng.random() < 0.7 else 0 for _ in range(4)) for c in ids}
    return docs, years, counts


def test_pipeline_matches_brute_force():
    rng = random.Random(1234)
    for _ in range(300):
        docs, years, counts = _random_case(rng)
        index = index_from_terms(docs, years)
        profiles = {c: TermFunctionProfile(c, counts[c]) for c in docs}
        q_terms = rng.choices("abcdefghij", k=rng.randint(0, 5))
        tf = rng.choice(RANKING_TF)
        cutoff = rng.choice([None, 2000, 2005, 2010])
        alpha = rng.choice([0.1, 0.5, 1.0])
        top_n = rng.randint(1, 12)
        for variant in ("plain-bm25", "tfw-bm25"):
            got = recommend(
                Query(" ".join(q_terms), tf, cutoff, alpha), index, profiles,
                variant=variant, top_n=top_n, tokenizer=str.split,
            )
            want = brute_recommend(q_terms, docs, years, counts, RANKING_TF.index(tf), cutoff, variant, top_n, alpha)
            # scores that cancel to zero can differ by ~1e-17 between summation
            # orders, so ids may swap within an epsilon-tie; compare positionally
            assert len(got) == len(want)
            by_id = {w[0]: w for w in brute_recommend(
                q_terms, docs, years, counts, RANKING_TF.index(tf), cutoff, variant, len(docs), alpha)}
            for e, w in zip(got, want):
                assert e.score == pytest.approx(w[1], abs=1e-9)
                assert e.score == pytest.approx(by_id[e.cand_id][1], abs=1e-9)
                assert e.tf_weight == pytest.approx(by_id[e.cand_id][2], abs=1e-12)


def test_equal_weights_preserve_plain_order():
    rng = random.Random(99)
    for _ in range(100):
        docs, years, _ = _random_case(rng)
        index = index_from_terms(docs, years)
        profiles = {c: TermFunctionProfile(c, (2, 1, 1, 0)) for c in docs}
        q = Query(" ".join(rng.choices("abcdefgh", k=4)), P)
        plain = rank_all(q.text.split(), index)
        tfw = recommend(q, index, profiles, top_n=100, tokenizer=str.split)
        assert [e.cand_id for e in tfw] == [e.cand_id for e in plain]


def test_profiles_round_trip(tmp_path):
    profiles = {"c1": TermFunctionProfile("c1", (4, 2, 8, 1)), "c0": TermFunctionProfile("c0")}
    dump_profiles(profiles, tmp_path / "p.jsonl")
    assert (tmp_path / "p.jsonl").read_text().splitlines()[0] == '{"cand_id": "c0", "counts": [0, 0, 0, 0]}'
    assert load_profiles(tmp_path / "p.jsonl") == profiles

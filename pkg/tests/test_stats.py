import math

import pytest

from tfcr.corpus import RANKING_TF, CandidateDocument, Corpus, OriginalDocument, Paragraph, TermFunction
from tfcr.evaluation import TARGET_RANKING_SHARES, GeneratorConfig, format_distribution, gen_synthetic, tf_distribution


def _corpus(layout):
    """layout: {doc_id: (field, [term functions])}"""
    docs = []
    for doc_id, (fld, tfs) in layout.items():
        pars = tuple(Paragraph(f"{doc_id}-{i}", "x", tf, frozenset({"c1"})) for i, tf in enumerate(tfs))
        docs.append(OriginalDocument(doc_id, "T", "A", 2020, fld, pars))
    return Corpus.from_documents(docs, [CandidateDocument("c1", "T")])


def _table(rows):
    return {(r.field, r.term_function): (r.count, r.percentage) for r in rows}


def test_all_problem():
    rows = tf_distribution(_corpus({"d1": ("ie", [TermFunction.PROBLEM] * 10)}))
    assert len(rows) == 9
    table = _table(rows)
    assert table["ie", TermFunction.PROBLEM] == (10, 100.0)
    assert all(table["ie", tf] == (0, 0.0) for tf in TermFunction if tf is not TermFunction.PROBLEM)


def test_fields_are_independent():
    one = _corpus({"d1": ("ie", [TermFunction.PROBLEM, TermFunction.METHOD])})
    two = _corpus({
        "d1": ("ie", [TermFunction.PROBLEM, TermFunction.METHOD]),
        "d2": ("rs", [TermFunction.TOOL] * 3),
    })
    ie_one = [r for r in tf_distribution(one) if r.field == "ie"]
    ie_two = [r for r in tf_distribution(two) if r.field == "ie"]
    assert ie_one == ie_two
    for fld in ("ie", "rs"):
        assert math.isclose(sum(r.percentage for r in tf_distribution(two) if r.field == fld), 100.0)


def test_pooled():
    corpus = _corpus({"d1": ("ie", [TermFunction.PROBLEM]), "d2": ("rs", [TermFunction.METHOD] * 3)})
    table = _table(tf_distribution(corpus, group_by_field=False))
    assert table["all", TermFunction.PROBLEM] == (1, 25.0)
    assert table["all", TermFunction.METHOD] == (3, 75.0)
    assert "method" in format_distribution(tf_distribution(corpus))


def test_generator_reproduces_target_shares():
    corpus = gen_synthetic(GeneratorConfig(n_originals=600, n_candidates=120), seed=7)
    rows = tf_distribution(corpus, group_by_field=False)
    n = sum(r.count for r in rows)
    assert n > 2500
    for tf in RANKING_TF:
        target = TARGET_RANKING_SHARES[tf] / 100
        share = next(r.percentage for r in rows if r.term_function is tf) / 100
        sd = math.sqrt(target * (1 - target) / n)
        assert share == pytest.approx(target, abs=4 * sd), tf

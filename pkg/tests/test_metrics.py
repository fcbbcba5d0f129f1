import pytest
from hypothesis import given
from hypothesis import strategies as st

from tfcr.corpus import TermFunction
from tfcr.evaluation import (
    align_annotations,
    cohen_kappa,
    confusion_matrix,
    f1_score,
    precision_recall_f1,
    read_annotations,
)

P, M = TermFunction.PROBLEM, TermFunction.METHOD


def test_two_hits_in_top_five():
    p, r, f = precision_recall_f1(["a", "x", "b", "y", "z"], {"a", "b", "c", "d"}, 5)
    assert (p, r) == pytest.approx((0.4, 0.5), abs=1e-12)
    assert f == pytest.approx(4 / 9, abs=1e-12)


def test_perfect_and_disjoint():
    assert precision_recall_f1(["a", "b", "c"], {"a", "b", "c"}, 3) == (1.0, 1.0, 1.0)
    assert precision_recall_f1(["x", "y"], {"a"}, 2) == (0.0, 0.0, 0.0)


def test_short_list_divides_by_returned():
    # only two items came back although k=5
    p, r, _ = precision_recall_f1(["a", "x"], {"a", "b"}, 5)
    assert p == 0.5 and r == 0.5
    assert precision_recall_f1([], {"a"}, 5) == (0.0, 0.0, 0.0)


def test_metric_errors():
    with pytest.raises(ValueError):
        precision_recall_f1(["a"], {"a"}, 0)
    with pytest.raises(ValueError):
        precision_recall_f1(["a"], set(), 1)


@given(st.lists(st.sampled_from("abcdefghij"), unique=True, max_size=10), st.sets(st.sampled_from("abcdefghij"), min_size=1))
def test_recall_monotone_and_f1_identity(ranked, relevant):
    prev = 0.0
    for k in range(1, 11):
        p, r, f = precision_recall_f1(ranked, relevant, k)
        assert 0 <= p <= 1 and 0 <= r <= 1
        assert r >= prev
        prev = r
        assert f == pytest.approx(f1_score(p, r))
        assert f == (0.0 if p + r == 0 else pytest.approx(2 * p * r / (p + r)))


def test_kappa_fixtures():
    assert cohen_kappa([P, M, P], [P, M, P]) == pytest.approx(1.0, abs=1e-9)
    assert cohen_kappa([P, P, M, M], [P, M, M, M]) == pytest.approx(0.5, abs=1e-9)
    assert cohen_kappa([P, M], [M, P]) == pytest.approx(-1.0, abs=1e-9)


def test_kappa_single_shared_label():
    assert cohen_kappa([P, P], [P, P]) == 1.0


@given(st.lists(st.tuples(st.sampled_from(list(TermFunction)), st.sampled_from(list(TermFunction))), min_size=1))
def test_kappa_symmetric_and_bounded(pairs):
    a, b = [x for x, _ in pairs], [y for _, y in pairs]
    k = cohen_kappa(a, b)
    assert k == pytest.approx(cohen_kappa(b, a))
    assert -1 - 1e-12 <= k <= 1 + 1e-12


def test_kappa_errors():
    with pytest.raises(ValueError):
        cohen_kappa([], [])
    with pytest.raises(ValueError):
        cohen_kappa([P], [P, M])


def test_confusion_matrix():
    mat = confusion_matrix([P, P, M, M], [P, M, M, M])
    order = list(TermFunction)
    assert mat.shape == (9, 9)
    assert mat.sum() == 4
    assert mat[order.index(P), order.index(P)] == 1
    assert mat[order.index(P), order.index(M)] == 1
    assert mat[order.index(M), order.index(M)] == 2


def test_read_and_align(tmp_path):
    a = tmp_path / "a.tsv"
    a.write_text("paragraph_id\tterm_function\np1\tproblem\np2\tmethod\np3\ttool\n")
    b = tmp_path / "b.tsv"
    b.write_text("p2\tmethod\np1\tmethod\np4\tdataset\n")
    la, lb, unmatched = align_annotations(read_annotations(a), read_annotations(b))
    assert la == [P, M] and lb == [M, M]
    assert unmatched == ["p3", "p4"]


def test_read_annotations_errors(tmp_path):
    bad = tmp_path / "bad.tsv"
    bad.write_text("p1\tbackground\n")
    with pytest.raises(ValueError, match=":1:"):
        read_annotations(bad)
    dup = tmp_path / "dup.tsv"
    dup.write_text("p1\tproblem\np1\tmethod\n")
    with pytest.raises(ValueError, match="duplicate"):
        read_annotations(dup)

import itertools

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from astride import (
    CostModel,
    SymbolizerSpec,
    build_lookup_table,
    d_ged,
    dtw,
    euclidean,
    fit,
    fit_uniform,
    general_edit_distance,
    mindist,
    replicate,
    transform,
)
from astride.distances import (
    d_ged_matrix,
    edit_distances_to_many,
    euclidean_matrix,
    mindist_matrix,
)
from astride.exceptions import InvalidParameterError, ShapeError
from astride.segmentation import SegmentationModel

from .oracles import brute_force_dtw, operation_search_distances

TABLE2 = [
    [0, 0, 0.67, 1.34],
    [0, 0, 0, 0.67],
    [0.67, 0, 0, 0],
    [1.34, 0.67, 0, 0],
]

words = st.lists(st.integers(0, 3), max_size=6)


def test_euclidean():
    assert euclidean([1.0, 2.0], [1.0, 2.0]) == 0.0
    assert euclidean([0, 0], [3, 4]) == 5.0
    with pytest.raises(ShapeError):
        euclidean([1, 2], [1, 2, 3])


def test_euclidean_matches_naive_sum(rng):
    for _ in range(20):
        s, t = rng.normal(size=(2, 33))
        naive = sum((a - b) ** 2 for a, b in zip(s, t)) ** 0.5
        assert euclidean(s, t) == pytest.approx(naive, abs=1e-9)


def test_dtw_examples():
    assert dtw([1.0, 2.0, 3.0], [1.0, 2.0, 3.0]) == 0.0
    assert dtw([0, 0, 1], [0, 1]) == 0.0
    with pytest.raises(InvalidParameterError):
        dtw([], [1.0])


def test_dtw_matches_path_enumeration(rng):
    for _ in range(40):
        n, m = rng.integers(1, 7, size=2)
        s, t = rng.normal(size=n), rng.normal(size=m)
        assert dtw(s, t) == pytest.approx(brute_force_dtw(s, t), abs=1e-9)


def test_dtw_never_exceeds_euclidean(rng):
    for _ in range(50):
        s, t = rng.normal(size=(2, 40))
        assert dtw(s, t) <= euclidean(s, t) + 1e-9


def test_lookup_table_four_symbols():
    table = build_lookup_table(4)
    q = 0.6744897501960817
    expected = [[0, 0, q, 2 * q], [0, 0, 0, q], [q, 0, 0, 0], [2 * q, q, 0, 0]]
    np.testing.assert_allclose(table, expected, atol=1e-12)
    # the published two-decimal table truncates rather than rounds
    np.testing.assert_array_equal(np.floor(table * 100) / 100, TABLE2)


@pytest.mark.parametrize("A", [2, 3, 5, 9, 16])
def test_lookup_table_structure(A):
    table = build_lookup_table(A)
    np.testing.assert_array_equal(table, table.T)
    for a in range(A - 1):
        assert table[a, a] == 0 and table[a, a + 1] == 0


def test_mindist_examples():
    table = build_lookup_table(4)
    assert mindist([0, 1, 2, 3], [0, 1, 2, 3], table, 40) == 0.0
    # adjacent symbols everywhere: MINDIST cannot tell them apart
    assert mindist([0, 1, 2, 3], [1, 2, 3, 2], table, 40) == 0.0
    assert mindist([0], [3], table, 4) == pytest.approx(2 * table[0, 3])
    with pytest.raises(ShapeError):
        mindist([0, 1], [0, 1, 2], table, 40)


def test_mindist_matrix_matches_scalar(rng):
    table = build_lookup_table(9)
    S = rng.integers(0, 9, size=(5, 7))
    T = rng.integers(0, 9, size=(4, 7))
    M = mindist_matrix(S, T, table, 70)
    for i, j in itertools.product(range(5), range(4)):
        assert M[i, j] == pytest.approx(mindist(S[i], T[j], table, 70))


@pytest.mark.parametrize("w, A", [(5, 4), (10, 9)])
def test_mindist_lower_bounds_euclidean(rng, w, A):
    from astride import Dataset, znormalize

    X = znormalize(Dataset(np.cumsum(rng.normal(size=(400, 64)), axis=1)))
    model = fit(SymbolizerSpec("sax", w, A), X)
    S = transform(model, X)
    M = mindist_matrix(S, S, build_lookup_table(A), X.n)
    E = euclidean_matrix(X.signals, X.signals)
    assert np.all(M <= E + 1e-9)


def test_simple_edit_distance_classic():
    assert general_edit_distance("kitten", "sitting") == 3
    assert general_edit_distance("", "abc") == 3
    assert general_edit_distance("abc", "abc") == 0


def test_symbol_outside_cost_matrix():
    with pytest.raises(InvalidParameterError):
        general_edit_distance([0, 5], [0], CostModel.unit(3))


def test_general_matches_operation_search():
    rng = np.random.default_rng(7)
    mu = rng.integers(-20, 21, size=3) / 8.0
    costs = CostModel.from_representatives(mu)
    sub = costs.substitution.tolist()
    for s1 in [(), (0,), (1, 2), (2, 0, 1), (0, 0, 2, 1)]:
        reach = operation_search_distances(s1, 3, sub, costs.indel, max_len=5)
        for s2 in [(), (1,), (0, 1), (2, 2, 2), (1, 0, 2, 0)]:
            assert general_edit_distance(s1, s2, costs) == reach[s2]


def test_cost_model_from_representatives():
    costs = CostModel.from_representatives([-1.0, 0.5, 2.0])
    np.testing.assert_allclose(costs.substitution, [[0, 1.5, 3], [1.5, 0, 1.5], [3, 1.5, 0]])
    assert costs.indel == 3.0


def test_replicate_table3_example():
    out = replicate([1, 2, 3, 0], [7, 1, 1, 2])
    assert "".join(map(str, out)) == "11111112300"
    assert len(out) == 11


def test_replicate_identity_and_single():
    np.testing.assert_array_equal(replicate([3, 1, 2], [1, 1, 1]), [3, 1, 2])
    np.testing.assert_array_equal(replicate([2], [5]), [2] * 5)
    with pytest.raises(ShapeError):
        replicate([1, 2], [1])


def test_d_ged_single_substitution():
    mu = [-1.2, -0.1, 0.4, 2.0]
    costs = CostModel.from_representatives(mu)
    seg = SegmentationModel(40, (10, 20, 30))
    assert seg.normalized_lengths == (1, 1, 1, 1)
    assert d_ged([0, 1, 2, 3], [0, 1, 2, 3], costs, seg) == 0
    assert d_ged([0, 1, 2, 3], [0, 3, 2, 3], costs, seg) == pytest.approx(abs(mu[1] - mu[3]))


def test_d_ged_replicates_when_given_a_segmentation():
    costs = CostModel.from_representatives([0.0, 1.0])
    seg = SegmentationModel(30, (20,))  # normalized lengths (2, 1)
    # "001" vs "111": two substitutions of cost 1
    assert d_ged([0, 1], [1, 1], costs, seg) == 2.0
    assert d_ged([0, 1], [1, 1], costs) == 1.0


@given(words, words)
def test_d_ged_symmetric(a, b):
    costs = CostModel.from_representatives([-1.5, -0.2, 0.3, 1.9])
    if a and len(a) == len(b):
        seg = SegmentationModel(len(a) * 3, tuple(3 * k for k in range(1, len(a))))
        assert d_ged(a, b, costs, seg) == pytest.approx(d_ged(b, a, costs, seg))
    assert general_edit_distance(a, b, costs) == pytest.approx(general_edit_distance(b, a, costs))


@given(words, words, words)
def test_simple_edit_distance_is_a_metric(a, b, c):
    ed = lambda x, y: general_edit_distance(x, y)  # noqa: E731
    assert ed(a, a) == 0
    assert (ed(a, b) > 0) == (a != b)
    assert ed(a, b) == ed(b, a)
    assert ed(a, b) <= ed(a, c) + ed(c, b)
    assert 0 <= ed(a, b) <= max(len(a), len(b))


@given(words, words, words, st.lists(st.floats(-3, 3), min_size=4, max_size=4))
def test_general_edit_distance_triangle(a, b, c, mu):
    costs = CostModel.from_representatives(mu)
    g = lambda x, y: general_edit_distance(x, y, costs)  # noqa: E731
    assert g(a, b) == pytest.approx(g(b, a))
    assert g(a, b) <= g(a, c) + g(c, b) + 1e-9


@given(words, st.lists(st.lists(st.integers(0, 3), min_size=5, max_size=5), min_size=1, max_size=6))
def test_batched_edit_distance_matches_scalar(query, corpus):
    costs = CostModel.from_representatives([-1.0, 0.25, 0.5, 3.0])
    batch = edit_distances_to_many(query, corpus, costs)
    scalar = [general_edit_distance(query, row, costs) for row in corpus]
    np.testing.assert_allclose(batch, scalar, atol=1e-9)


def test_d_ged_matrix_matches_scalar(rng):
    costs = CostModel.from_representatives([-1.0, 0.0, 0.7, 1.1])
    seg = fit_uniform(13, 4)
    S = rng.integers(0, 4, size=(6, 4))
    M = d_ged_matrix(S, S, costs, seg)
    for i, j in itertools.product(range(6), range(6)):
        assert M[i, j] == pytest.approx(d_ged(S[i], S[j], costs, seg), abs=1e-9)
    np.testing.assert_allclose(np.diag(M), 0.0, atol=1e-12)

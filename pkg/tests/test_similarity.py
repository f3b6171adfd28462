import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

from cce import (
    InputError,
    ParameterError,
    PointSet,
    RouteNetwork,
    ValidationError,
    auto_sigma,
    from_matrix,
    from_routes,
    gaussian_kernel,
    njw_normalize,
)
from conftest import FOUR_POINT_S


def test_gaussian_identical_points():
    S = gaussian_kernel(np.array([[0.3, -1.2], [0.3, -1.2]]), sigma=0.7)
    assert S.entries[0, 1] == 1.0


def test_gaussian_unit_distance():
    S = gaussian_kernel(np.array([[0.0, 0.0], [0.0, 1.0]]), sigma=1.0)
    assert S.entries[0, 1] == pytest.approx(np.exp(-1.0), abs=1e-15)
    assert S.entries[0, 1] == pytest.approx(0.367879, abs=1e-6)


def test_gaussian_uses_sigma_squared_not_two_sigma_squared():
    S = gaussian_kernel(np.array([[0.0], [2.0]]), sigma=2.0)
    assert S.entries[0, 1] == pytest.approx(np.exp(-1.0))


def test_gaussian_unit_diagonal_and_range():
    rng = np.random.default_rng(3)
    S = gaussian_kernel(rng.normal(size=(30, 3)), 0.8).entries
    assert np.all(np.diagonal(S) == 1.0)
    assert np.all((S > 0) & (S <= 1))
    assert np.array_equal(S, S.T)


@pytest.mark.parametrize("sigma", [0.0, -1.0, np.nan])
def test_gaussian_bad_sigma(sigma):
    with pytest.raises(ParameterError):
        gaussian_kernel(np.zeros((2, 2)), sigma)


def test_gaussian_non_finite_points():
    with pytest.raises(InputError, match="point 1"):
        gaussian_kernel(np.array([[0.0, 1.0], [np.inf, 0.0]]), 1.0)


def test_pointset_rejects_duplicate_ids():
    with pytest.raises(ValidationError):
        PointSet(np.zeros((2, 1)), ("a", "a"))


def test_single_point():
    S = gaussian_kernel(np.array([[5.0, 5.0]]), 1.0)
    assert S.entries.tolist() == [[1.0]]


def test_auto_sigma_is_median_distance():
    pts = np.array([[0.0], [1.0], [3.0]])
    assert auto_sigma(pts) == 2.0


def test_from_matrix_four_point_unchanged():
    S = from_matrix(FOUR_POINT_S)
    assert np.array_equal(S.entries, FOUR_POINT_S)
    assert S.labels == ("0", "1", "2", "3")


def test_from_matrix_identity():
    assert np.array_equal(from_matrix(np.eye(3)).entries, np.eye(3))


def test_from_matrix_negative_entry():
    A = np.eye(3)
    A[0, 2] = A[2, 0] = -0.1
    with pytest.raises(ValidationError, match=r"\(0, 2\)"):
        from_matrix(A)


def test_from_matrix_asymmetric():
    A = np.eye(3)
    A[1, 2] = 0.5
    with pytest.raises(ValidationError, match=r"\(1, 2\)"):
        from_matrix(A)


def test_from_matrix_non_square():
    with pytest.raises(ValidationError, match="square"):
        from_matrix(np.ones((2, 3)))


def test_from_matrix_symmetrizes_within_tolerance():
    A = np.array([[1.0, 0.5], [0.5 + 1e-14, 1.0]])
    S = from_matrix(A)
    assert S.entries[0, 1] == S.entries[1, 0]


def test_similarity_matrix_is_read_only():
    S = from_matrix(np.eye(2))
    with pytest.raises(ValueError):
        S.entries[0, 0] = 3.0


def test_njw_all_ones():
    out = njw_normalize(from_matrix(np.ones((2, 2)))).entries
    assert np.allclose(out, 0.5, atol=1e-15)


def test_njw_identity():
    assert np.array_equal(njw_normalize(from_matrix(np.eye(4))).entries, np.eye(4))


def test_njw_hand_computed():
    # D = diag(2, 4): 1/2, 1/sqrt(8), 3/4
    out = njw_normalize(from_matrix([[1.0, 1.0], [1.0, 3.0]])).entries
    expected = np.array([[0.5, 0.3535533905932738], [0.3535533905932738, 0.75]])
    np.testing.assert_allclose(out, expected, atol=1e-15)


def test_njw_zero_row():
    A = np.zeros((3, 3))
    A[0, 0] = A[1, 1] = 1.0
    with pytest.raises(ValidationError, match="row 2"):
        njw_normalize(from_matrix(A))


@settings(max_examples=50, deadline=None)
@given(
    arrays(np.float64, (5, 5), elements=st.floats(0.01, 10.0)),
    st.floats(0.01, 100.0),
)
def test_njw_scale_cancels(A, c):
    S = from_matrix((A + A.T) / 2)
    np.testing.assert_allclose(
        njw_normalize(S.scaled(c)).entries, njw_normalize(S).entries, rtol=1e-12, atol=0
    )


def test_gaussian_psd_random():
    rng = np.random.default_rng(11)
    for _ in range(40):
        n = int(rng.integers(2, 51))
        S = gaussian_kernel(rng.normal(size=(n, int(rng.integers(1, 5)))), rng.uniform(0.1, 3))
        assert np.linalg.eigvalsh(S.entries).min() >= -1e-9


def test_routes_single():
    S = from_routes(RouteNetwork.from_routes([["A", "B", "C"]]))
    assert S.labels == ("A", "B", "C")
    np.testing.assert_array_equal(S.entries, [[3, 1, 0], [1, 2, 1], [0, 1, 3]])


def test_routes_repeated_route_adds():
    S = from_routes(RouteNetwork.from_routes([["A", "B"], ["A", "B"]]))
    np.testing.assert_array_equal(S.entries, [[4, 2], [2, 4]])


def test_routes_empty():
    S = from_routes(RouteNetwork(("x", "y", "z"), ()))
    np.testing.assert_array_equal(S.entries, np.zeros((3, 3)))


def test_routes_direction_ignored():
    a = from_routes(RouteNetwork.from_routes([["A", "B", "C"]])).entries
    b = from_routes(RouteNetwork(("A", "B", "C"), (("C", "B", "A"),))).entries
    np.testing.assert_array_equal(a, b)


def test_routes_permutation_equivariant():
    routes = [["A", "B", "C", "D"], ["B", "E"], ["E", "C", "A"]]
    net = RouteNetwork.from_routes(routes)
    S = from_routes(net).entries
    perm = [3, 0, 4, 2, 1]
    shuffled = RouteNetwork(tuple(net.stations[p] for p in perm), net.routes)
    T = from_routes(shuffled).entries
    np.testing.assert_array_equal(T, S[np.ix_(perm, perm)])
    assert np.array_equal(S, np.round(S))


@pytest.mark.parametrize(
    "stations, routes, match",
    [
        (("A", "B"), (("A",),), "fewer than 2"),
        (("A", "B"), (("A", "B", "A"),), "more than once"),
        (("A", "B"), (("A", "C"),), "unknown station"),
        (("A", "A"), (), "duplicate"),
    ],
)
def test_route_network_invariants(stations, routes, match):
    with pytest.raises(ValidationError, match=match):
        RouteNetwork(stations, routes)

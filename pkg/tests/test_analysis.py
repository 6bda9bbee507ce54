import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from pauliwalk.analysis import (
    Distribution,
    describe_map,
    diagonal_variances,
    distribution,
    find_symmetries,
    marginal,
    max_abs_diff,
    mean,
    signed_permutations,
    variance,
)
from pauliwalk.engine import WalkConfig, evolve
from pauliwalk.spinor import PLUS_I


def point(*pos):
    return Distribution.from_mapping({pos: 1.0})


@pytest.fixture(scope="module")
def square_t1():
    return distribution(evolve(WalkConfig.build("square", 1, 0.0, PLUS_I)))


def test_point_mass_at_start():
    d = distribution(evolve(WalkConfig.build("cubic", 0, 0.0, PLUS_I)))
    assert d.to_dict() == pytest.approx({(0, 0, 0): 1.0}, abs=1e-15)


def test_marginal(square_t1):
    m = marginal(square_t1, 0)
    assert m.to_dict() == pytest.approx({(-1,): 0.5, (1,): 0.5})
    assert max_abs_diff(marginal(m, 0), m) == 0
    assert marginal(point(3, 4), 1).to_dict() == {(4,): 1.0}
    with pytest.raises(ValueError):
        marginal(square_t1, 2)


def test_variance_and_mean():
    two = Distribution.from_mapping({(-1,): 0.5, (1,): 0.5})
    assert variance(two) == pytest.approx(1.0)
    assert mean(two) == 0
    assert variance(point(7)) == 0
    with pytest.raises(ValueError):
        variance(point(1, 2))


def test_max_abs_diff_examples():
    assert max_abs_diff(point(0, 0), point(0, 0)) == 0
    assert max_abs_diff(point(0, 0), point(1, 0)) == 1
    with pytest.raises(ValueError):
        max_abs_diff(point(0), point(0, 0))


dists = st.dictionaries(
    st.tuples(st.integers(-3, 3), st.integers(-3, 3)), st.floats(0, 1), min_size=1, max_size=8
).map(Distribution.from_mapping)


@given(a=dists, b=dists, c=dists)
def test_max_abs_diff_is_metric(a, b, c):
    assert max_abs_diff(a, a) == 0
    assert max_abs_diff(a, b) == max_abs_diff(b, a)
    assert max_abs_diff(a, c) <= max_abs_diff(a, b) + max_abs_diff(b, c) + 1e-15


def test_diagonal_variances(square_t1):
    u, v = diagonal_variances(square_t1)
    assert u == pytest.approx(v)
    assert diagonal_variances(point(0, 0)) == (0.0, 0.0)
    with pytest.raises(ValueError):
        diagonal_variances(point(0, 0, 0))


def test_diagonal_variances_along_a_diagonal():
    d = Distribution.from_mapping({(1, 1): 0.5, (-1, -1): 0.5})
    u, v = diagonal_variances(d)
    assert u == pytest.approx(2.0) and v == 0


def test_squeezing_at_fifty_steps():
    def ratio(theta):
        u, v = diagonal_variances(distribution(evolve(WalkConfig.build("square", 50, theta, PLUS_I))))
        return max(u, v) / min(u, v)

    assert ratio(math.pi / 12) > 1.5
    assert ratio(0.0) < 1.05


def test_clamping_and_merging():
    d = Distribution(np.array([[0], [0], [1]]), np.array([0.25, 0.25, 1e-17]))
    assert d.to_dict() == {(0,): 0.5, (1,): 0.0}
    assert d[(5,)] == 0.0


def test_rows_sorted():
    d = Distribution.from_mapping({(1, 0): 0.1, (-1, 2): 0.2, (-1, -2): 0.7})
    assert [p for p, _ in d] == [(-1, -2), (-1, 2), (1, 0)]


def test_total_sums_to_one(square_t1):
    assert square_t1.total() == pytest.approx(1.0, abs=1e-12)


def test_signed_permutations():
    assert len(signed_permutations(3)) == 47
    full = signed_permutations(2, include_identity=True)
    assert full[0] == ((0, 1), (1, 1)) and len(full) == 8


@pytest.mark.parametrize(
    "m, text",
    [
        (((0, 1, 2), (-1, -1, -1)), "inversion"),
        (((0, 1, 2), (1, 1, 1)), "identity"),
        (((0, 2, 1), (-1, 1, 1)), "(x, y, z) -> (-x, z, y)"),
    ],
)
def test_describe_map(m, text):
    assert describe_map(m) == text


def test_find_symmetries(square_t1):
    group = find_symmetries(square_t1)
    assert len(group) == 7
    lopsided = Distribution.from_mapping({(1, 0): 0.6, (0, 1): 0.4})
    assert find_symmetries(lopsided) == []
    assert find_symmetries(lopsided, Distribution.from_mapping({(0, 1): 0.6, (1, 0): 0.4})) == [((1, 0), (1, 1))]

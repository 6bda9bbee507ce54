import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from pauliwalk.analysis import distribution, max_abs_diff
from pauliwalk.dense import dense_evolve, dense_walk
from pauliwalk.engine import (
    NormalizationError,
    SpinorField,
    WalkConfig,
    apply_substep,
    evolve,
    initial_state,
    iter_evolve,
    step,
)
from pauliwalk.hamiltonian import lattice_walk_matrix
from pauliwalk.lattice import KagomeClassificationError, LatticeKind, lattice_spec
from pauliwalk.spinor import DOWN, PLUS_I, UP

PI = math.pi
S = 1 / math.sqrt(2)


def test_initial_state_is_point():
    cfg = WalkConfig.build("square", 0, 0.0, DOWN)
    state = initial_state(cfg)
    assert state.to_dict().keys() == {(0, 0)}
    np.testing.assert_array_equal(state[(0, 0)], [1, 0])


def test_rejects_unnormalized_spin():
    with pytest.raises(ValueError, match="not normalized"):
        WalkConfig.build("line", 3, 0.0, (1, 1))


@pytest.mark.parametrize("steps", [-1, 2.5, True])
def test_rejects_bad_steps(steps):
    with pytest.raises(ValueError):
        WalkConfig.build("line", steps)


def test_rejects_missing_theta():
    with pytest.raises(ValueError, match="no coin angle"):
        WalkConfig.build("square", 1, {"Z": 0.1})


def test_substep_x_splits_down_state():
    spec = lattice_spec("square")
    out = apply_substep(SpinorField.point((0, 0), DOWN), "X", 0.0, spec)
    np.testing.assert_allclose(out[(-1, 0)], [0.5, 0.5], atol=1e-15)
    np.testing.assert_allclose(out[(1, 0)], [0.5, -0.5], atol=1e-15)
    d = distribution(out)
    assert d[(-1, 0)] == pytest.approx(0.5) and d[(1, 0)] == pytest.approx(0.5)


def test_substep_z_moves_down_state():
    out = apply_substep(SpinorField.point((0, 0), DOWN), "Z", 0.0, lattice_spec("square"))
    np.testing.assert_array_equal(out[(0, -1)], [1, 0])
    assert distribution(out).to_dict() == {(0, -1): 1.0, (0, 1): 0.0}


def test_substep_half_pi_flips_to_up():
    out = apply_substep(SpinorField.point((0,), DOWN), "Z", PI / 2, lattice_spec("line"))
    d = distribution(out)
    assert d[(1,)] == pytest.approx(1.0)
    np.testing.assert_allclose(out[(1,)], [0, -1], atol=1e-15)


def test_substep_inactive_axis():
    with pytest.raises(ValueError, match="not active"):
        apply_substep(SpinorField.point((0,), DOWN), "X", 0.0, lattice_spec("line"))


@pytest.mark.parametrize("kind", list(LatticeKind))
def test_zero_steps_unchanged(kind):
    cfg = WalkConfig.build(kind, 0, 0.4, PLUS_I)
    state = evolve(cfg)
    assert len(state) == 1
    np.testing.assert_array_equal(state[cfg.initial_position], PLUS_I)


def test_line_quarter_pi_two_steps():
    # hand expansion of two Z sub-steps with B = [[1, 1], [-1, 1]]/sqrt2
    state = evolve(WalkConfig.build("line", 2, PI / 4, DOWN))
    np.testing.assert_allclose(state[(-2,)], [0.5, 0], atol=1e-15)
    np.testing.assert_allclose(state[(0,)], [-0.5, -0.5], atol=1e-15)
    np.testing.assert_allclose(state[(2,)], [0, -0.5], atol=1e-15)


def test_line_quarter_pi_matches_dense():
    cfg = WalkConfig.build("line", 2, PI / 4, DOWN)
    dense = dense_evolve(cfg)
    mine = evolve(cfg)
    for pos, amp in dense:
        np.testing.assert_allclose(mine[pos], amp, atol=1e-14)


def test_square_one_step():
    d = distribution(evolve(WalkConfig.build("square", 1, 0.0, PLUS_I)))
    for pos in [(1, 1), (1, -1), (-1, 1), (-1, -1)]:
        assert d[pos] == pytest.approx(0.25, abs=1e-15)
    assert d.total() == pytest.approx(1.0, abs=1e-12)


def test_triangular_one_step():
    d = distribution(evolve(WalkConfig.build("triangular", 1, 0.0, DOWN)))
    support = {pos for pos, p in d if p > 1e-15}
    assert support == {(0, -4, -2), (4, -2, -4), (-2, 0, 0), (2, 2, -2)}
    for pos in support:
        assert d[pos] == pytest.approx(0.25, abs=1e-14)


def test_cubic_locality():
    state = evolve(WalkConfig.build("cubic", 3, 0.0, PLUS_I))
    assert abs(state.norm_squared() - 1) < 1e-12
    assert np.abs(state.coords).max() <= 3


@pytest.mark.parametrize("kind, radius", [("square", 1), ("cubic", 1), ("triangular", 4)])
def test_support_radius(kind, radius):
    t = 5
    d = distribution(evolve(WalkConfig.build(kind, t, PI / 12, PLUS_I)))
    assert np.abs(d.support()).max() <= radius * t


@pytest.mark.parametrize("t", [1, 2, 5, 8])
def test_square_parity_sublattice(t):
    d = distribution(evolve(WalkConfig.build("square", t, PI / 7, PLUS_I)))
    pts = d.support()
    assert np.all((pts[:, 0] + t) % 2 == 0)
    assert np.all((pts[:, 1] + t) % 2 == 0)


@pytest.mark.parametrize("kind", list(LatticeKind))
@pytest.mark.parametrize("theta", [0.0, PI / 12, PI / 4, PI / 2])
def test_norm_every_substep(kind, theta):
    # check_norm raises on the first sub-step that drifts
    cfg = WalkConfig.build(kind, 12, theta, UP)
    for state in iter_evolve(cfg):
        assert abs(state.norm_squared() - 1) < 1e-12


def test_norm_breach_detected():
    cfg = WalkConfig.build("line", 1, 0.0, DOWN)
    bad = SpinorField.point((0,), [2.0, 0.0])
    with pytest.raises(NormalizationError):
        step(bad, cfg)


@settings(max_examples=25, deadline=None)
@given(
    a=st.complex_numbers(max_magnitude=2, allow_nan=False, allow_infinity=False),
    b=st.complex_numbers(max_magnitude=2, allow_nan=False, allow_infinity=False),
    theta=st.floats(-PI, PI),
    kind=st.sampled_from(["line", "square", "triangular"]),
)
def test_linearity(a, b, theta, kind):
    spec = lattice_spec(kind)
    thetas = {ax: theta for ax in spec.ordering}
    cfg = WalkConfig(spec, 4, thetas, DOWN, check_norm=False)

    def run(spin):
        state = SpinorField.point(cfg.initial_position, spin)
        for _ in range(cfg.steps):
            state = step(state, cfg)
        return state

    left = run(a * DOWN + b * UP)
    right = run(DOWN) * a + run(UP) * b
    diff = (left + right * -1).amps
    assert np.max(np.abs(diff), initial=0.0) < 1e-12


@pytest.mark.parametrize("kind", ["line", "square", "cubic", "triangular"])
@pytest.mark.parametrize("theta", [0.0, 0.37, PI / 4])
def test_matches_dense_oracle(kind, theta):
    cfg = WalkConfig.build(kind, 3, theta, PLUS_I)
    dense = dense_evolve(cfg)
    mine = evolve(cfg)
    assert len({p for p, a in mine if np.any(a)}) == len({p for p, a in dense if np.any(a)})
    for pos, amp in dense:
        np.testing.assert_allclose(mine[pos], amp, atol=1e-13)


@pytest.mark.parametrize("kind", ["line", "square", "cubic", "triangular"])
def test_dense_operator_unitary_on_interior(kind):
    spec = lattice_spec(kind)
    dw = dense_walk(spec, {a: 0.3 for a in spec.ordering}, 3)
    cols = dw.interior_columns()
    np.testing.assert_allclose(cols.conj().T @ cols, np.eye(cols.shape[1]), atol=1e-12)


@pytest.mark.parametrize("kind", ["line", "square", "cubic", "triangular"])
@pytest.mark.parametrize("k_seed", [1, 2])
def test_fourier_transform_of_one_step(kind, k_seed):
    # a plane wave sum_p exp(-i k.p)|p> x s maps to the same wave times W(k) s,
    # so W(k) s = sum_p exp(i k.p) f_s(p) with f_s the one-step image of a point
    spec = lattice_spec(kind)
    rng = np.random.default_rng(k_seed)
    thetas = {a: float(t) for a, t in zip(spec.ordering, rng.uniform(-PI, PI, 3))}
    k = rng.uniform(-PI, PI, spec.dim)
    w = lattice_walk_matrix(spec, thetas, k)
    for col, spin in enumerate((DOWN, UP)):
        cfg = WalkConfig(spec, 1, thetas, spin)
        image = evolve(cfg)
        phases = np.exp(1j * image.coords @ k)
        np.testing.assert_allclose(phases @ image.amps, w[:, col], atol=1e-12)


@pytest.mark.parametrize("origin_type", ["o", "p", "q"])
@pytest.mark.parametrize("convention", ["literal", "planar"])
def test_kagome_runs(origin_type, convention):
    cfg = WalkConfig.build("kagome", 8, PI / 5, PLUS_I, origin_type=origin_type, convention=convention)
    state = evolve(cfg)
    assert abs(state.norm_squared() - 1) < 1e-12


def test_kagome_missing_axis():
    spec = lattice_spec("kagome", origin_type="p")
    with pytest.raises(KagomeClassificationError, match="does not exist"):
        apply_substep(SpinorField.point((0, 0, 0), DOWN), "Z", 0.0, spec)


def test_kagome_matches_triangular_labels_after_full_step():
    # one full kagome step uses the same three displacement vectors as the triangular walk
    tri = lattice_spec("triangular", ordering="YZX")
    kag = WalkConfig.build("kagome", 3, 0.2, PLUS_I)
    a = distribution(evolve(kag))
    b = distribution(evolve(WalkConfig(tri, 3, kag.thetas, PLUS_I)))
    assert max_abs_diff(a, b) < 1e-14


def test_field_helpers():
    f = SpinorField.point((1, 2), PLUS_I)
    assert (1, 2) in f and (0, 0) not in f
    np.testing.assert_array_equal(f[(0, 0)], [0, 0])
    assert f.dim == 2 and f.components == 2 and len(f) == 1
    merged = SpinorField.from_scatter(np.array([[0], [0]]), np.array([[1, 0], [2, 0]], dtype=complex))
    np.testing.assert_array_equal(merged[(0,)], [3, 0])


def test_evolution_is_bitwise_deterministic():
    cfg = WalkConfig.build("cubic", 6, PI / 9, PLUS_I)
    a, b = evolve(cfg), evolve(cfg)
    assert np.array_equal(a.coords, b.coords) and np.array_equal(a.amps, b.amps)

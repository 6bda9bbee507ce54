"""
Named numerical checks with structured results.

Each check returns a :class:`CheckResult`; :func:`run_checks` runs a
selection and assembles a JSON-ready report. Tolerances are fixed here.
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass, field
from typing import Any, Callable, Iterable

import numpy as np

from .analysis import (
    Distribution,
    describe_map,
    diagonal_variances,
    distribution,
    find_symmetries,
    max_abs_diff,
    signed_permutations,
)
from .dense import dense_walk
from .engine import WalkConfig, evolve, iter_evolve
from .grover import grover_evolve, grover_evolve_state
from .hamiltonian import (
    DEGENERACY_TOL,
    degeneracy_gap,
    eigensystem,
    hamiltonian_matrix,
    theta0_hamiltonian,
    triangular_commutator_report,
    unitary_from_hamiltonian,
    walk_momentum_matrix,
)
from .lattice import LatticeKind, lattice_spec
from .recursion import GROVER_VARIANTS, determine_correspondence, grover_recursion, two_state_recursion
from .spinor import DOWN, PLUS_I, UP, PauliAxis

__all__ = ["CheckResult", "CHECKS", "SUITES", "run_checks", "UnknownCheckError"]

PI = math.pi


class UnknownCheckError(KeyError):
    pass


@dataclass
class CheckResult:
    name: str
    passed: bool
    details: dict[str, Any] = field(default_factory=dict)

    def to_dict(self) -> dict[str, Any]:
        return {"name": self.name, "passed": bool(self.passed), **self.details}


def check_normalization(max_steps: int = 30, tol: float = 1e-12, **_: Any) -> CheckResult:
    worst = 0.0
    runs = 0
    for kind in LatticeKind:
        for theta in (0.0, PI / 12, PI / 4):
            cfg = WalkConfig.build(kind, max_steps, theta, PLUS_I)
            for state in iter_evolve(cfg):
                worst = max(worst, abs(state.norm_squared() - 1.0))
            runs += 1
    return CheckResult("normalization", worst < tol, {"runs": runs, "max_drift": worst, "tolerance": tol})


def check_unitarity(radius_steps: int = 5, tol: float = 1e-12, **_: Any) -> CheckResult:
    per = {}
    for kind in (LatticeKind.LINE, LatticeKind.SQUARE, LatticeKind.TRIANGULAR):
        spec = lattice_spec(kind)
        for theta in (0.0, PI / 12, PI / 4):
            dw = dense_walk(spec, {a: theta for a in spec.ordering}, radius_steps)
            cols = dw.interior_columns()
            err = float(np.max(np.abs(cols.conj().T @ cols - np.eye(cols.shape[1]))))
            per[f"{kind.value}@{theta:.6f}"] = err
    worst = max(per.values())
    return CheckResult("unitarity", worst < tol, {"max_gram_deviation": worst, "per_run": per, "tolerance": tol})


def check_grover_equivalence(steps: int = 25, tol: float = 1e-10, long_steps: int = 50, **_: Any) -> CheckResult:
    two = distribution(evolve(WalkConfig.build("square", steps, 0.0, PLUS_I)))
    diff = max_abs_diff(two, grover_evolve(steps))
    t0 = time.perf_counter()
    long_two = distribution(evolve(WalkConfig.build("square", long_steps, 0.0, PLUS_I)))
    long_diff = max_abs_diff(long_two, grover_evolve(long_steps))
    elapsed = time.perf_counter() - t0
    return CheckResult(
        "grover_equivalence",
        diff < tol and long_diff < tol and elapsed < 10.0,
        {"steps": steps, "max_abs_diff": diff, "long_steps": long_steps,
         "long_max_abs_diff": long_diff, "long_seconds": elapsed, "tolerance": tol},
    )


def check_two_state_recursion(max_steps: int = 10, tol: float = 1e-10, **_: Any) -> CheckResult:
    fields = list(iter_evolve(WalkConfig.build("square", max_steps, 0.0, PLUS_I)))
    table = two_state_recursion(max_steps, PLUS_I)
    corr = determine_correspondence(table, fields[1])
    diffs = [max_abs_diff(table.distribution(t, corr), distribution(fields[t])) for t in range(max_steps + 1)]
    norms = [abs(table.norm_squared(t) - 1.0) for t in range(max_steps + 1)]
    return CheckResult(
        "two_state_recursion",
        max(diffs) < tol and max(norms) < 1e-12,
        {"correspondence": describe_map(corr, ("a", "b")), "correspondence_map": [list(corr[0]), list(corr[1])],
         "max_abs_diff": max(diffs), "max_norm_drift": max(norms), "tolerance": tol},
    )


def check_grover_recursion(max_steps: int = 10, tol: float = 1e-10, **_: Any) -> CheckResult:
    engine = [grover_evolve_state(t) for t in range(max_steps + 1)]
    results = {}
    for variant in GROVER_VARIANTS:
        table = grover_recursion(max_steps, variant)
        prob = max(max_abs_diff(table.distribution(t), distribution(engine[t])) for t in range(max_steps + 1))
        amp = 0.0
        for t in range(max_steps + 1):
            f = table.field(t)
            for pos, a in engine[t]:
                amp = max(amp, float(np.max(np.abs(f[pos] - a))))
        results[variant] = {"max_prob_diff": prob, "max_amp_diff": amp, "matches": prob < tol}
    matching = [v for v, r in results.items() if r["matches"]]
    return CheckResult(
        "grover_recursion",
        bool(matching),
        {"variants": results, "matching_variant": matching[0] if matching else None, "tolerance": tol},
    )


def _momentum_samples(n: int, seed: int, min_gap: float) -> list[tuple[float, float]]:
    rng = np.random.default_rng(seed)
    out: list[tuple[float, float]] = []
    while len(out) < n:
        theta, k = rng.uniform(-PI, PI, size=2)
        if degeneracy_gap(theta, k) > min_gap:
            out.append((float(theta), float(k)))
    return out


def check_hamiltonian_roundtrip(samples: int = 100, seed: int = 0, tol: float = 1e-8, **_: Any) -> CheckResult:
    worst = {a.value: 0.0 for a in PauliAxis}
    herm = 0.0
    for theta, k in _momentum_samples(samples, seed, 1e-6):
        for axis in (PauliAxis.Z, PauliAxis.X, PauliAxis.Y):
            h = hamiltonian_matrix(axis, theta, k)
            w = walk_momentum_matrix(axis, theta, k)
            worst[axis.value] = max(worst[axis.value], float(np.linalg.norm(unitary_from_hamiltonian(h) - w)))
            herm = max(herm, float(np.linalg.norm(h - h.conj().T)))
    theta0 = 0.0
    for k in np.linspace(-PI, PI, 41)[1:-1]:
        for axis in PauliAxis:
            h0 = theta0_hamiltonian(axis, k)
            theta0 = max(theta0, float(np.linalg.norm(unitary_from_hamiltonian(h0) - walk_momentum_matrix(axis, 0.0, k))))
            if degeneracy_gap(0.0, k) > DEGENERACY_TOL:
                theta0 = max(theta0, float(np.linalg.norm(hamiltonian_matrix(axis, 0.0, k) - h0)))
    passed = max(worst.values()) < tol and theta0 < 1e-12 and herm < 1e-10
    return CheckResult(
        "hamiltonian_roundtrip",
        passed,
        {"samples": samples, "max_residual": worst, "max_hermiticity_defect": herm,
         "theta0_max_residual": theta0, "tolerance": tol},
    )


def check_eigen_identities(samples: int = 100, seed: int = 0, tol: float = 1e-12, **_: Any) -> CheckResult:
    prod = mod = recon = 0.0
    for theta, k in _momentum_samples(samples, seed, 1e-6):
        es = eigensystem(theta, k)
        prod = max(prod, abs(es.lambda_plus * es.lambda_minus - 1.0))
        mod = max(mod, abs(abs(es.lambda_plus) - 1.0), abs(abs(es.lambda_minus) - 1.0))
        recon = max(recon, float(np.linalg.norm(es.reconstruct() - walk_momentum_matrix(PauliAxis.Z, theta, k))))
    theta0 = 0.0
    for k in np.linspace(-PI, PI, 41)[1:-1]:
        if degeneracy_gap(0.0, k) <= DEGENERACY_TOL:
            continue
        es = eigensystem(0.0, k)
        theta0 = max(theta0, abs(es.lambda_minus - np.exp(-1j * k)), abs(es.lambda_plus - np.exp(1j * k)))
    passed = prod < tol and mod < tol and theta0 < tol and recon < 1e-10
    return CheckResult(
        "eigen_identities",
        passed,
        {"max_product_defect": prod, "max_modulus_defect": mod, "theta0_max_defect": theta0,
         "max_reconstruction_residual": recon, "tolerance": tol},
    )


def _involutions(dim: int) -> list:
    out = []
    for perm, signs in signed_permutations(dim):
        twice = tuple(signs[i] * signs[perm[i]] for i in range(dim))
        if all(perm[perm[i]] == i for i in range(dim)) and all(s == 1 for s in twice):
            out.append((perm, signs))
    return out


def _tri_distribution(steps: int, theta: Any, spin: Any, convention: str) -> Distribution:
    return distribution(evolve(WalkConfig.build("triangular", steps, theta, spin, convention=convention)))


def check_triangular_mirror(probe_steps: int = 3, steps: int = 20, tol: float = 1e-10, **_: Any) -> CheckResult:
    found = {}
    ok = True
    for convention in ("literal", "planar"):
        down3 = _tri_distribution(probe_steps, 0.0, DOWN, convention)
        up3 = _tri_distribution(probe_steps, 0.0, UP, convention)
        maps = find_symmetries(down3, up3, tol=tol, candidates=_involutions(3))
        down = _tri_distribution(steps, 0.0, DOWN, convention)
        up = _tri_distribution(steps, 0.0, UP, convention)
        held = {describe_map(m): max_abs_diff(down.transformed(*m), up) for m in maps}
        ok = ok and bool(maps) and all(v < tol for v in held.values())
        found[convention] = {"maps": sorted(held), f"max_abs_diff_t{steps}": held}
    inversion_default = "inversion" in found["literal"]["maps"]
    return CheckResult(
        "triangular_mirror",
        ok and inversion_default,
        {"probe_steps": probe_steps, "steps": steps, "by_convention": found, "tolerance": tol},
    )


def check_triangular_symmetry(probe_steps: int = 3, steps: int = 20, tol: float = 1e-10, **_: Any) -> CheckResult:
    thetas = {PauliAxis.X: 0.0, PauliAxis.Y: PI / 4, PauliAxis.Z: 0.0}
    found = {}
    ok = True
    for convention in ("literal", "planar"):
        d3 = _tri_distribution(probe_steps, thetas, DOWN, convention)
        group = find_symmetries(d3, tol=tol)
        d = _tri_distribution(steps, thetas, DOWN, convention)
        held = {describe_map(m): max_abs_diff(d.transformed(*m), d) for m in group}
        ok = ok and all(v < tol for v in held.values())
        found[convention] = {"symmetries": sorted(held), f"max_abs_diff_t{steps}": held}
    nontrivial = bool(found["planar"]["symmetries"])
    return CheckResult(
        "triangular_symmetry",
        ok and nontrivial,
        {"thetas": {a.value: v for a, v in thetas.items()}, "probe_steps": probe_steps,
         "steps": steps, "by_convention": found, "tolerance": tol},
    )


def check_squeezing(steps: int = 50, **_: Any) -> CheckResult:
    ratios = {}
    for label, theta in (("theta=0", 0.0), ("theta=pi/12", PI / 12)):
        vu, vv = diagonal_variances(distribution(evolve(WalkConfig.build("square", steps, theta, PLUS_I))))
        ratios[label] = {"var_u": vu, "var_v": vv, "ratio": max(vu, vv) / min(vu, vv),
                         "wider": "x+z" if vu > vv else "x-z"}
    passed = ratios["theta=pi/12"]["ratio"] > 1.5 and ratios["theta=0"]["ratio"] < 1.05
    return CheckResult("squeezing", passed, {"steps": steps, "runs": ratios})


def check_commutator_report(grid_size: int = 5, degenerate_tolerance: float = DEGENERACY_TOL, **_: Any) -> CheckResult:
    reports = {}
    complete = True
    for label, theta in (("0", 0.0), ("pi/12", PI / 12)):
        rep = triangular_commutator_report(theta, grid_size, degenerate_tolerance)
        reports[label] = rep.to_dict()
        complete = complete and rep.evaluated + rep.skipped_degenerate == rep.total_points == grid_size**3
        complete = complete and rep.evaluated > 0
    return CheckResult("commutator_report", complete, {"reports": reports})


CHECKS: dict[str, Callable[..., CheckResult]] = {
    "normalization": check_normalization,
    "unitarity": check_unitarity,
    "grover_equivalence": check_grover_equivalence,
    "two_state_recursion": check_two_state_recursion,
    "grover_recursion": check_grover_recursion,
    "hamiltonian_roundtrip": check_hamiltonian_roundtrip,
    "eigen_identities": check_eigen_identities,
    "triangular_mirror": check_triangular_mirror,
    "triangular_symmetry": check_triangular_symmetry,
    "squeezing": check_squeezing,
    "commutator_report": check_commutator_report,
}

SUITES = {
    "oracle": ("unitarity", "two_state_recursion", "grover_recursion", "grover_equivalence"),
    "hamiltonian": ("hamiltonian_roundtrip", "eigen_identities", "commutator_report"),
}


def run_checks(names: Iterable[str] | None = None, **options: Any) -> dict[str, Any]:
    """Run the named checks (all when ``names`` is None) and build a report."""
    selected = list(names) if names else list(CHECKS)
    unknown = [n for n in selected if n not in CHECKS]
    if unknown:
        raise UnknownCheckError(f"unknown check(s): {', '.join(unknown)}; known: {', '.join(CHECKS)}")
    results = [CHECKS[n](**options) for n in dict.fromkeys(selected)]
    failed = [r.name for r in results if not r.passed]
    return {"passed": not failed, "failed": failed, "checks": [r.to_dict() for r in results]}

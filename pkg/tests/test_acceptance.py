"""
Acceptance suite: one recorded pass/fail line per criterion.

Each test records its line before asserting, so a failing criterion still
shows up in the summary printed at the end of the run.
"""

import hashlib
import math
import time

from pauliwalk import verify
from pauliwalk.analysis import diagonal_variances, distribution, max_abs_diff
from pauliwalk.cli import main
from pauliwalk.engine import WalkConfig, evolve
from pauliwalk.grover import grover_evolve
from pauliwalk.spinor import PLUS_I

PI = math.pi


def test_01_normalization(acceptance):
    res = verify.check_normalization(max_steps=30, tol=1e-12)
    ok = acceptance(
        1, "normalization, every lattice x theta in {0, pi/12, pi/4} x t <= 30",
        res.passed, f"runs={res.details['runs']} max drift={res.details['max_drift']:.2e} (tol 1e-12)",
    )
    assert ok


def test_02_unitarity(acceptance):
    res = verify.check_unitarity(radius_steps=5, tol=1e-12)
    ok = acceptance(
        2, "dense one-step operator columns orthonormal (line, square, triangular; 5-step truncation)",
        res.passed, f"max Gram deviation={res.details['max_gram_deviation']:.2e} (tol 1e-12)",
    )
    assert ok


def test_03_grover_equivalence(acceptance):
    two = distribution(evolve(WalkConfig.build("square", 25, 0.0, PLUS_I)))
    diff25 = max_abs_diff(two, grover_evolve(25))
    start = time.perf_counter()
    diff50 = max_abs_diff(distribution(evolve(WalkConfig.build("square", 50, 0.0, PLUS_I))), grover_evolve(50))
    elapsed = time.perf_counter() - start
    ok = acceptance(
        3, "two-state square walk equals Grover walk",
        diff25 < 1e-10 and diff50 < 1e-10 and elapsed < 10,
        f"t=25 diff={diff25:.2e}, t=50 diff={diff50:.2e} in {elapsed:.2f}s (tol 1e-10, 10s)",
    )
    assert ok


def test_04_recursion_oracles(acceptance):
    two = verify.check_two_state_recursion(max_steps=10, tol=1e-10)
    grov = verify.check_grover_recursion(max_steps=10, tol=1e-10)
    detail = (
        f"two-state diff={two.details['max_abs_diff']:.2e} under {two.details['correspondence']}; "
        f"Grover matching variant={grov.details['matching_variant']} "
        f"(verbatim diff={grov.details['variants']['verbatim']['max_prob_diff']:.4f})"
    )
    ok = acceptance(4, "recursion oracles agree with the engine for t <= 10", two.passed and grov.passed, detail)
    assert ok


def test_05_hamiltonian_roundtrip(acceptance):
    res = verify.check_hamiltonian_roundtrip(samples=100, seed=0, tol=1e-8)
    worst = max(res.details["max_residual"].values())
    ok = acceptance(
        5, "exp(-iH) reproduces W on 100 samples for Z, X, Y; theta=0 forms exact",
        res.passed, f"max residual={worst:.2e} (tol 1e-8), theta=0 residual={res.details['theta0_max_residual']:.2e} (tol 1e-12)",
    )
    assert ok


def test_06_eigen_identities(acceptance):
    res = verify.check_eigen_identities(samples=100, seed=0, tol=1e-12)
    d = res.details
    ok = acceptance(
        6, "lambda+ lambda- = 1, |lambda| = 1, theta=0 gives exp(-/+ ik)",
        res.passed,
        f"product={d['max_product_defect']:.1e} modulus={d['max_modulus_defect']:.1e} theta0={d['theta0_max_defect']:.1e} (tol 1e-12)",
    )
    assert ok


def test_07_triangular_mirror(acceptance):
    res = verify.check_triangular_mirror(probe_steps=3, steps=20, tol=1e-10)
    lit = res.details["by_convention"]["literal"]
    ok = acceptance(
        7, "|down> and |up> triangular runs related by the involution found at t=3, held at t=20",
        res.passed, f"maps={lit['maps']} diff@t20={max(lit['max_abs_diff_t20'].values(), default=float('nan')):.1e}",
    )
    assert ok
    assert lit["maps"] == ["inversion"]


def test_08_triangular_symmetric_coin(acceptance):
    res = verify.check_triangular_symmetry(probe_steps=3, steps=20, tol=1e-10)
    by = res.details["by_convention"]
    ok = acceptance(
        8, "theta=(0, pi/4, 0) triangular run: symmetry found at t=3 holds at t=20",
        res.passed, f"literal group={by['literal']['symmetries']} planar group={by['planar']['symmetries']}",
    )
    assert ok


def test_09_squeezing(acceptance):
    ratios = {}
    for theta in (0.0, PI / 12):
        u, v = diagonal_variances(distribution(evolve(WalkConfig.build("square", 50, theta, PLUS_I))))
        ratios[theta] = max(u, v) / min(u, v)
    ok = acceptance(
        9, "theta=pi/12 squeezes the t=50 square distribution, theta=0 does not",
        ratios[PI / 12] > 1.5 and ratios[0.0] < 1.05,
        f"ratio(pi/12)={ratios[PI / 12]:.3f} (> 1.5), ratio(0)={ratios[0.0]:.6f} (< 1.05)",
    )
    assert ok


def test_10_commutator_report(acceptance):
    res = verify.check_commutator_report(grid_size=5)
    reps = res.details["reports"]
    detail = "; ".join(
        f"theta={k}: evaluated={r['evaluated']} skipped={r['skipped_degenerate']} "
        f"max||[H,H]||={max(r['commutator_norm_max'].values()):.2f}"
        for k, r in reps.items()
    )
    ok = acceptance(10, "triangular commutator report complete on a 5x5x5 grid", res.passed, detail)
    assert ok


def test_11_determinism(acceptance, tmp_path, monkeypatch):
    argv = ["run", "--lattice", "triangular", "--steps", "12", "--theta", "y=pi/4",
            "--theta", "x=0", "--theta", "z=0", "--initial", "down", "--out", "run.csv"]
    digests = []
    for name in ("first", "second"):
        workdir = tmp_path / name
        workdir.mkdir()
        monkeypatch.chdir(workdir)
        assert main(argv) == 0
        blob = (workdir / "run.csv").read_bytes() + (workdir / "run.csv.manifest.json").read_bytes()
        digests.append(hashlib.sha256(blob).hexdigest())
    ok = acceptance(11, "two identical CLI runs give hash-identical files", digests[0] == digests[1], digests[0][:16])
    assert ok

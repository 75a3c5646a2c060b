"""The twelve acceptance criteria, each printing one PASS/FAIL line.

The lines are collected and printed in the pytest terminal summary under
"acceptance criteria".
Everything runs in exact rational arithmetic on Minkowski (3,1).
"""

import json
import random
import time

import pytest

from geotraj import sampling
from geotraj.action import check_pullback_scaling, check_pushforward_scaling, orbit_gram_rank, orbit_pullback
from geotraj.audit import reduction_dimension_audit
from geotraj.contact import contact_volume
from geotraj.linalg import Subspace, mat_vec, subspace_annihilator, symplectic_orthogonal
from geotraj.minkowski import MINKOWSKI, CausalKind, inner
from geotraj.phase import CartanPoint, cartan_kernel, geodesic_generator, omega_matrix
from geotraj.quotient import ChartPoint, GaugeChart, atlas, chart_embedding, compute_sigma, gauge_fix
from geotraj.verify import RunConfig, run_suites

g = MINKOWSKI
KINDS = (CausalKind.SPACE_LIKE, CausalKind.TIME_LIKE, CausalKind.NULL)
LINES: list[str] = []


def report_line(number: int, label: str, ok: bool, note: str = "") -> None:
    line = f"criterion {number:>2} {'PASS' if ok else 'FAIL'}  {label}" + (f"  ({note})" if note else "")
    LINES.append(line)
    print(line)
    assert ok, line


def check_counts(report, suite: str, name: str) -> tuple[int, int]:
    for s in report.suites:
        if s.name == suite:
            for c in s.checks:
                if c.name == name:
                    return c.attempted, c.passed
    raise KeyError(f"{suite}/{name}")


def all_of(report, suite, name, count) -> bool:
    attempted, passed = check_counts(report, suite, name)
    return attempted == count and passed == count


@pytest.fixture(scope="module")
def default_run():
    start = time.perf_counter()
    report = run_suites(RunConfig())
    return report, time.perf_counter() - start


def test_criterion_01_orbit_pullback(default_run):
    report, _ = default_run
    rng = random.Random(1)
    start = time.perf_counter()
    ok = True
    for kind in KINDS:
        for _ in range(1000):
            gamma = sampling.geodesic(rng, g, kind)
            h = orbit_pullback(g, gamma)
            ok &= h == inner(g, gamma.V, gamma.V)
            if kind == CausalKind.NULL:
                ok &= h == 0
    elapsed = time.perf_counter() - start
    ok &= all(all_of(report, "orbits", f"orbit_pullback_{k.value}", 1000) for k in KINDS)
    report_line(1, "orbit pullback equals g(V, V), zero on null", ok and elapsed < 5, f"{elapsed:.2f} s")


def test_criterion_02_pullback_scaling(default_run):
    report, _ = default_run
    rng = random.Random(2)
    ok = all(check_pullback_scaling(g, phi := sampling.affine_element(rng)) == phi.a for _ in range(1000))
    ok &= all_of(report, "action", "pullback_scaling", 1000)
    report_line(2, "M^T Omega M = a Omega", ok)


def test_criterion_03_pushforward_scaling(default_run):
    report, _ = default_run
    rng = random.Random(3)
    ok = all(check_pushforward_scaling(g, phi := sampling.affine_element(rng)) == phi.a for _ in range(1000))
    ok &= all_of(report, "action", "pushforward_scaling", 1000)
    report_line(3, "M Omega^-1 M^T = a Omega^-1", ok)


def test_criterion_04_orbit_dichotomy(default_run):
    report, _ = default_run
    rng = random.Random(4)
    ok = True
    for kind in KINDS:
        for _ in range(1000):
            gamma = sampling.geodesic(rng, g, kind)
            ok &= orbit_gram_rank(g, gamma) == (0 if inner(g, gamma.V, gamma.V) == 0 else 2)
    ok &= all(all_of(report, "orbits", f"orbit_gram_rank_{k.value}", 1000) for k in KINDS)
    report_line(4, "orbit Gram rank 2 off the cone, 0 on it", ok)


def test_criterion_05_annihilator_identity(default_run):
    report, _ = default_run
    rng = random.Random(5)
    fm = omega_matrix(g)
    ok = True
    for dim in range(1, 5):
        for _ in range(200):
            W = Subspace.span(sampling.subspace_vectors(rng, dim, 8), 8)
            image = Subspace.span((mat_vec(fm.OmegaInv, c) for c in subspace_annihilator(W).basis), 8)
            ok &= W.dim == dim and image == symplectic_orthogonal(W, fm.Omega)
        ok &= all_of(report, "orbits", f"annihilator_identity_dim{dim}", 200)
    report_line(5, "Omega^-1(W annihilator) = Orth(W), dims 1-4", ok)


def test_criterion_06_image_of_sigma(default_run):
    report, _ = default_run
    charts = atlas(g)
    ok = len(charts) == 10
    # the suite walks the atlas round robin, so 1000 points cover every chart 100 times
    ok &= all_of(report, "quotient", "image_sigma_equals_F", 1000)
    rng = random.Random(6)
    for chart in charts:
        cp = gauge_fix(g, sampling.geodesic_in_chart(rng, g, chart), chart)
        ok &= compute_sigma(g, cp).image == compute_sigma(g, cp).F_down
    report_line(6, "Im sigma = F on all 10 charts", ok)


def test_criterion_07_massive_theorem(default_run):
    report, _ = default_run
    ok = all_of(report, "quotient", "sigma_invertible_TimeLike", 1000)
    ok &= all_of(report, "quotient", "sigma_invertible_SpaceLike", 1000)
    ok &= all(all_of(report, "orbits", f"F_decomposition_{k.value}", 1000) for k in KINDS[:2])
    report_line(7, "sigma rank 6 and T = T(orbit) + F off the cone", ok)


def test_criterion_08_contact_theorem(default_run):
    report, _ = default_run
    ok = all_of(report, "contact", "null_contact_NullTimeSlice(+)", 500)
    ok &= all_of(report, "contact", "null_contact_NullTimeSlice(-)", 500)
    chart = GaugeChart.null(1)
    cp = ChartPoint(g, chart, chart_embedding(g, chart, (0,) * 5), (0,) * 5)
    spot = contact_volume(g, cp)
    ok &= abs(spot) == 8 and all_of(report, "contact", "volume_spot_value", 1)
    report_line(8, "null charts: rank 4, ker alpha = D_F, contact volume nonzero", ok, f"|vol| at origin = {abs(spot)}")


def test_criterion_09_dimension_audit(default_run):
    report, _ = default_run
    dims = reduction_dimension_audit(g)
    details = next(s for s in report.suites if s.name == "audit").details
    ok = dims == (7, 6, 5) and details["dimensions"] == [7, 6, 5]
    report_line(9, "dimension audit (7, 6, 5)", ok, str(dims))


def test_criterion_10_conformal_class(default_run):
    report, _ = default_run
    ok = all_of(report, "quotient", "conformal_class", 500)
    report_line(10, "sigma through a shifted fiber point is a positive multiple", ok)


def test_criterion_11_cartan_kernel(default_run):
    report, _ = default_run
    rng = random.Random(11)
    ok = True
    for i in range(1000):
        v = sampling.velocity(rng, g, KINDS[i % 3])
        y = CartanPoint(sampling.vector(rng, 4), v, sampling.rational(rng))
        K = cartan_kernel(g, y)
        ok &= K.dim == 1 and K.contains(geodesic_generator(y))
    ok &= all_of(report, "phase", "cartan_kernel", 1000)
    report_line(11, "Cartan kernel is the line through (v, 0, 1)", ok)


def test_criterion_12_determinism_and_runtime(default_run):
    report, elapsed = default_run
    first = json.dumps(report.to_json(), indent=2)
    second = json.dumps(run_suites(RunConfig()).to_json(), indent=2)
    ok = first == second and report.passed and elapsed < 60
    report_line(12, "byte-identical JSON for equal seeds, default run under 60 s", ok, f"{elapsed:.1f} s")


if __name__ == "__main__":
    raise SystemExit(pytest.main([__file__, "-q"]))

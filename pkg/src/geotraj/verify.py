"""Randomized verification suites and the JSON report they produce."""

from __future__ import annotations

import contextlib
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Any, Callable

from . import sampling
from .action import (
    AffineElement,
    VerificationError,
    act,
    action_differential,
    check_pullback_scaling,
    check_pushforward_scaling,
    is_fixed,
    orbit_frame,
    orbit_gram_rank,
    orbit_pullback,
)
from .audit import audit_point, reduction_dimension_audit
from .contact import (
    check_characteristic_triviality,
    check_kernel_equals_DF,
    contact_exterior_derivative,
    contact_exterior_derivative_fd,
    contact_kernel,
    contact_volume,
    contact_volume_nonzero,
    contact_volume_squared,
    xi_t_transverse,
)
from .kforms import MAX_DEGREE
from .linalg import (
    RATIONAL_TYPES,
    LinAlgError,
    Subspace,
    det,
    float_mode,
    identity,
    is_zero,
    mat_vec,
    mats_equal,
    scalars_equal,
    subspace_annihilator,
    subspace_intersect,
    symplectic_orthogonal,
    tolerance,
    vecs_equal,
)
from .minkowski import CausalKind, Metric, inner
from .phase import (
    CartanPoint,
    Geodesic,
    PhaseTangent,
    bilinear,
    cartan_kernel,
    check_d_liouville,
    check_omega_matrix,
    geodesic_generator,
    hamiltonian_differential,
    omega_eval,
    omega_matrix,
)
from .quotient import (
    ChartDomainError,
    ChartPoint,
    GaugeChart,
    atlas,
    chart_embedding,
    check_chart_overlap,
    check_conformal_class,
    closedness_defect,
    compute_F,
    compute_sigma,
    gauge_conditions_hold,
    gauge_fix,
    in_domain,
    section_meets_orbit_transversally,
    symplectic_inverse_on_massive,
    unit_speed_gauge,
)

SUITES = ("phase", "action", "orbits", "quotient", "contact", "audit")
SCHEMA_VERSION = 1


class ConfigError(ValueError):
    pass


@dataclass(frozen=True)
class RunConfig:
    signature: tuple[int, int] = (3, 1)
    mode: str = "exact"
    samples: int = 1000
    seed: int = 42
    tol: float = 1e-6
    suites: tuple[str, ...] = SUITES

    def validate(self) -> None:
        try:
            Metric(*self.signature)
        except (TypeError, ValueError) as exc:
            raise ConfigError(str(exc)) from None
        if self.mode not in ("exact", "float"):
            raise ConfigError(f"mode must be 'exact' or 'float', got {self.mode!r}")
        if not isinstance(self.samples, int) or self.samples < 1:
            raise ConfigError("samples must be a positive integer")
        if not -(2**63) <= self.seed < 2**64:
            raise ConfigError("seed must fit in 64 bits")
        if self.mode == "float" and not self.tol > 0:
            raise ConfigError("tol must be positive in float mode")
        unknown = [s for s in self.suites if s not in SUITES]
        if unknown or not self.suites:
            raise ConfigError(f"unknown or empty suite list {list(self.suites)}; choose from {', '.join(SUITES)}")

    @property
    def metric(self) -> Metric:
        return Metric(*self.signature)

    def to_json(self) -> dict:
        return {
            "signature": list(self.signature),
            "mode": self.mode,
            "samples": self.samples,
            "seed": self.seed,
            "tol": self.tol if self.mode == "float" else None,
            "suites": list(self.suites),
        }


@dataclass
class CheckResult:
    name: str
    attempted: int = 0
    passed: int = 0
    counterexample: dict | None = None

    def to_json(self) -> dict:
        return {
            "name": self.name,
            "attempted": self.attempted,
            "passed": self.passed,
            "counterexample": self.counterexample,
        }


@dataclass
class SuiteResult:
    name: str
    checks: list[CheckResult] = field(default_factory=list)
    details: dict = field(default_factory=dict)
    wall_time: float = 0.0
    skipped: bool = False

    @property
    def attempted(self) -> int:
        return sum(c.attempted for c in self.checks)

    @property
    def passed_count(self) -> int:
        return sum(c.passed for c in self.checks)

    @property
    def passed(self) -> bool:
        if self.skipped:
            return True
        return self.attempted > 0 and self.attempted == self.passed_count

    @property
    def counterexample(self) -> dict | None:
        for c in self.checks:
            if c.counterexample is not None:
                return c.counterexample
        return None

    def to_json(self, timings: bool = False) -> dict:
        out = {
            "name": self.name,
            "passed": self.passed,
            "skipped": self.skipped,
            "attempted": self.attempted,
            "passed_checks": self.passed_count,
            "counterexample": self.counterexample,
            "details": self.details,
            "checks": [c.to_json() for c in self.checks],
        }
        if timings:
            out["wall_time"] = round(self.wall_time, 6)
        return out


@dataclass
class Report:
    config: RunConfig
    suites: list[SuiteResult]

    @property
    def passed(self) -> bool:
        return all(s.passed for s in self.suites)

    def to_json(self, timings: bool = False) -> dict:
        return {
            "schema_version": SCHEMA_VERSION,
            "config": self.config.to_json(),
            "passed": self.passed,
            "suites": [s.to_json(timings) for s in self.suites],
        }

    def to_text(self) -> str:
        lines = [f"signature {self.config.signature}, mode {self.config.mode}, "
                 f"samples {self.config.samples}, seed {self.config.seed}"]
        for s in self.suites:
            flag = "SKIP" if s.skipped else "PASS" if s.passed else "FAIL"
            lines.append(f"[{flag}] {s.name:<9} {s.passed_count}/{s.attempted} checks  ({s.wall_time:.2f} s)")
            for c in s.checks:
                mark = "ok " if c.attempted == c.passed else "BAD"
                lines.append(f"    {mark} {c.name}: {c.passed}/{c.attempted}")
            if s.details:
                for k, v in s.details.items():
                    lines.append(f"    {k}: {v}")
            if s.counterexample:
                lines.append(f"    counterexample: {s.counterexample}")
        lines.append("overall: " + ("PASS" if self.passed else "FAIL"))
        return "\n".join(lines)


# ---------------------------------------------------------------------------
# serialization of inputs for counterexamples


def encode(x: Any) -> Any:
    if isinstance(x, bool) or x is None or isinstance(x, str):
        return x
    if isinstance(x, RATIONAL_TYPES):
        return str(x)
    if isinstance(x, int):
        return str(x)
    if isinstance(x, float):
        return repr(x)
    if isinstance(x, (tuple, list)):
        return [encode(y) for y in x]
    if isinstance(x, Geodesic):
        return {
            "X": encode(x.X),
            "V": encode(x.V),
            "gamma": ",".join(str(c) for c in x.X) + ";" + ",".join(str(c) for c in x.V),
        }
    if isinstance(x, AffineElement):
        return {"a": encode(x.a), "b": encode(x.b)}
    if isinstance(x, (GaugeChart, Metric)):
        return str(x)
    if isinstance(x, ChartPoint):
        return {"chart": str(x.chart), "gamma": encode(x.gamma), "coords": encode(x.coords)}
    if isinstance(x, PhaseTangent):
        return {"dX": encode(x.dX), "dV": encode(x.dV)}
    if isinstance(x, CartanPoint):
        return {"x": encode(x.x), "v": encode(x.v), "t": encode(x.t)}
    if isinstance(x, dict):
        return {k: encode(v) for k, v in x.items()}
    return repr(x)


_EXPECTED_ERRORS = (VerificationError, LinAlgError, ChartDomainError, ValueError, ZeroDivisionError)


class _Suite:
    def __init__(self, name: str, cfg: RunConfig):
        self.result = SuiteResult(name)
        self.cfg = cfg
        self.g = cfg.metric
        self.rng = sampling.stream(cfg.seed, name)
        self.N = cfg.samples
        self._checks: dict[str, CheckResult] = {}

    @property
    def exact(self) -> bool:
        return self.cfg.mode == "exact"

    def prep(self, x):
        return x if self.exact else sampling.to_float(x)

    def draw_geodesic(self, draw: Callable[[], Geodesic]) -> Geodesic:
        """draw() in exact mode; in float mode redraw until well conditioned, then convert."""
        while True:
            gamma = draw()
            if self.exact:
                return gamma
            if sampling.well_conditioned(self.g, gamma.V):
                return sampling.to_float(gamma)

    def check(self, name: str, fn: Callable[[], bool], **inputs) -> bool:
        cr = self._checks.get(name)
        if cr is None:
            cr = self._checks[name] = CheckResult(name)
            self.result.checks.append(cr)
        cr.attempted += 1
        error = None
        try:
            ok = bool(fn())
        except _EXPECTED_ERRORS as exc:
            ok = False
            error = f"{type(exc).__name__}: {exc}"
        if ok:
            cr.passed += 1
        elif cr.counterexample is None:
            cr.counterexample = {"check": name, "inputs": encode(inputs), "error": error}
        return ok


def _count(N: int, divisor: int) -> int:
    return max(1, N // divisor)


# ---------------------------------------------------------------------------
# suites


def _suite_phase(s: _Suite) -> None:
    g, rng, N = s.g, s.rng, s.N
    n = g.n
    fm = omega_matrix(g)
    s.check("omega_matrix", lambda: check_omega_matrix(g, fm) and det(fm.Omega) == 1)
    for _ in range(N):
        a = PhaseTangent(*s.prep((sampling.vector(rng, n), sampling.vector(rng, n))))
        b = PhaseTangent(*s.prep((sampling.vector(rng, n), sampling.vector(rng, n))))
        s.check(
            "omega_antisymmetric_and_matrix",
            lambda: scalars_equal(omega_eval(g, a, b), -omega_eval(g, b, a))
            and scalars_equal(bilinear(fm.Omega, a.stacked, b.stacked), omega_eval(g, a, b)),
            a=a,
            b=b,
        )
    for _ in range(_count(N, 10)):
        gamma = s.prep(sampling.any_geodesic(rng, g))
        s.check("d_liouville_equals_omega", lambda: check_d_liouville(g, gamma), gamma=gamma)
    kinds = (CausalKind.NULL, CausalKind.TIME_LIKE, CausalKind.SPACE_LIKE) if g.q and g.p else (CausalKind.SPACE_LIKE,)
    for i in range(N):
        v = sampling.velocity(rng, g, kinds[i % len(kinds)])
        y = CartanPoint(*s.prep((sampling.vector(rng, n), v, sampling.rational(rng))))

        def cartan_ok(y=y):
            K = cartan_kernel(g, y)
            return K.dim == 1 and K.contains(geodesic_generator(y))

        s.check("cartan_kernel", cartan_ok, y=y)


def _suite_action(s: _Suite) -> None:
    g, rng, N = s.g, s.rng, s.N
    n = g.n
    ident = AffineElement.identity()
    for _ in range(N):
        gamma = s.prep(sampling.any_geodesic(rng, g))
        p1 = s.prep(sampling.affine_element(rng))
        p2 = s.prep(sampling.affine_element(rng))

        def same(x: Geodesic, y: Geodesic) -> bool:
            return vecs_equal(x.X, y.X) and vecs_equal(x.V, y.V)

        s.check("identity_acts_trivially", lambda: same(act(ident, gamma), gamma), gamma=gamma)
        s.check(
            "composition",
            lambda: same(act(p2, act(p1, gamma)), act(p1 * p2, gamma)),
            phi1=p1,
            phi2=p2,
            gamma=gamma,
        )
        s.check("inverse_undoes", lambda: same(act(p1.inverse(), act(p1, gamma)), gamma), phi=p1, gamma=gamma)
        s.check("free", lambda: not is_fixed(p1, gamma) or (is_zero(p1.a - 1) and is_zero(p1.b)), phi=p1, gamma=gamma)
        s.check(
            "differential_det",
            lambda: scalars_equal(det(action_differential(p1, n=n)), p1.a**n),
            phi=p1,
        )
        s.check(
            "pullback_scaling",
            lambda: scalars_equal(check_pullback_scaling(g, p1), p1.a),
            phi=p1,
        )
        s.check(
            "pushforward_scaling",
            lambda: scalars_equal(check_pushforward_scaling(g, p1), check_pullback_scaling(g, p1)),
            phi=p1,
        )


def _kinds(g: Metric) -> tuple[CausalKind, ...]:
    kinds = []
    if g.p:
        kinds.append(CausalKind.SPACE_LIKE)
    if g.q:
        kinds.append(CausalKind.TIME_LIKE)
    if g.p and g.q:
        kinds.append(CausalKind.NULL)
    return tuple(kinds)


def _suite_orbits(s: _Suite) -> None:
    g, rng, N = s.g, s.rng, s.N
    N2 = 2 * g.n
    for kind in _kinds(g):
        for _ in range(N):
            gamma = s.draw_geodesic(lambda: sampling.geodesic(rng, g, kind))
            gvv = inner(g, gamma.V, gamma.V)
            null = kind == CausalKind.NULL
            s.check(
                f"orbit_pullback_{kind.value}",
                lambda: scalars_equal(orbit_pullback(g, gamma), gvv) and (not null or is_zero(orbit_pullback(g, gamma))),
                gamma=gamma,
            )
            s.check(
                f"orbit_gram_rank_{kind.value}",
                lambda: orbit_gram_rank(g, gamma) == (0 if null else 2),
                gamma=gamma,
            )

            def decomposition_ok(gamma=gamma, null=null):
                F = compute_F(g, gamma)
                O = orbit_frame(gamma).orbit_tangent
                if F.dim != N2 - 2:
                    return False
                if null:
                    return F.contains_subspace(O)
                return subspace_intersect(F, O).dim == 0 and (F + O).dim == N2

            s.check(f"F_decomposition_{kind.value}", decomposition_ok, gamma=gamma)

    OmegaInv = omega_matrix(g).OmegaInv
    Omega = omega_matrix(g).Omega
    for d in range(1, 5):
        for _ in range(_count(N, 5)):
            vs = s.prep(sampling.subspace_vectors(rng, d, N2))

            def annihilator_identity(vs=vs):
                W = Subspace.span(vs, N2)
                lhs = Subspace.span((mat_vec(OmegaInv, beta) for beta in subspace_annihilator(W).basis), N2)
                return lhs == symplectic_orthogonal(W, Omega) and lhs.dim + W.dim == N2

            s.check(f"annihilator_identity_dim{d}", annihilator_identity, vectors=vs)


def _massive_kinds(g: Metric) -> tuple[CausalKind, ...]:
    return tuple(k for k in _kinds(g) if k != CausalKind.NULL)


def _random_chart_for(rng, g: Metric, gamma: Geodesic) -> GaugeChart:
    charts = [c for c in atlas(g) if in_domain(g, gamma, c)]
    return rng.choice(charts)


def _suite_quotient(s: _Suite) -> None:
    g, rng, N = s.g, s.rng, s.N
    charts = atlas(g)
    m_full = 2 * g.n - 2

    for i in range(N):
        chart = charts[i % len(charts)]
        gamma = s.draw_geodesic(lambda: sampling.geodesic_in_chart(rng, g, chart))
        phi = s.prep(sampling.affine_element(rng))

        def invariance(gamma=gamma, phi=phi, chart=chart):
            cp = gauge_fix(g, gamma, chart)
            again = gauge_fix(g, act(phi, gamma), chart)
            idem = gauge_fix(g, cp.gamma, chart)
            return (
                gauge_conditions_hold(cp)
                and vecs_equal(cp.coords, again.coords)
                and vecs_equal(cp.gamma.X + cp.gamma.V, again.gamma.X + again.gamma.V)
                and vecs_equal(idem.coords, cp.coords)
            )

        s.check("gauge_invariance", invariance, gamma=gamma, phi=phi, chart=chart)

        def central(gamma=gamma, chart=chart):
            cp = gauge_fix(g, gamma, chart)
            qs = compute_sigma(g, cp)
            expected = m_full - 2 if chart.is_null else m_full
            return qs.image == qs.F_down and qs.sigma_rank == expected and section_meets_orbit_transversally(cp)

        s.check("image_sigma_equals_F", central, gamma=gamma, chart=chart)

    for kind in _massive_kinds(g):
        for _ in range(N):
            gamma = s.draw_geodesic(lambda: sampling.geodesic(rng, g, kind))
            chart = _random_chart_for(rng, g, gamma)

            def sigma_invertible(gamma=gamma, chart=chart):
                cp = gauge_fix(g, gamma, chart)
                qs = compute_sigma(g, cp)
                inv = symplectic_inverse_on_massive(qs)
                F = qs.F_up
                O = orbit_frame(cp.gamma).orbit_tangent
                return (
                    qs.sigma_rank == m_full
                    and qs.image.dim == m_full
                    and mats_equal(inv, tuple(tuple(-x for x in r) for r in zip(*inv)))
                    and subspace_intersect(F, O).dim == 0
                    and (F + O).dim == 2 * g.n
                )

            s.check(f"sigma_invertible_{kind.value}", sigma_invertible, gamma=gamma, chart=chart)

    for i in range(_count(N, 2)):
        chart = charts[i % len(charts)]
        gamma = s.draw_geodesic(lambda: sampling.geodesic_in_chart(rng, g, chart))
        phi = s.prep(sampling.affine_element(rng))

        def conformal(gamma=gamma, phi=phi, chart=chart):
            cp = gauge_fix(g, gamma, chart)
            c = check_conformal_class(g, cp, phi)
            # σ at act(φ, γ) is σ/a, i.e. σ = a · σ′
            return c > 0 and scalars_equal(c * phi.a, 1)

        s.check("conformal_class", conformal, gamma=gamma, phi=phi, chart=chart)

    for _ in range(_count(N, 10)):
        kind = rng.choice(_massive_kinds(g))
        gamma = s.draw_geodesic(lambda: sampling.geodesic(rng, g, kind))
        options = [c for c in atlas(g) if not c.is_null and in_domain(g, gamma, c)]
        if len(options) < 2:
            continue
        c1, c2 = rng.sample(options, 2)
        s.check(
            "chart_overlap",
            lambda: check_chart_overlap(g, gamma, c1, c2) > 0,
            gamma=gamma,
            chart1=c1,
            chart2=c2,
        )

    if not s.exact:
        for _ in range(_count(N, 50)):
            kind = rng.choice(_massive_kinds(g))
            gamma = s.draw_geodesic(lambda: sampling.geodesic(rng, g, kind))
            chart = _random_chart_for(rng, g, gamma)

            def unit_speed(gamma=gamma, chart=chart):
                u = unit_speed_gauge(g, gamma)
                return (
                    abs(abs(inner(g, u.V, u.V)) - 1) <= tolerance()
                    and vecs_equal(gauge_fix(g, u, chart).coords, gauge_fix(g, gamma, chart).coords)
                )

            s.check("unit_speed_gauge_agrees", unit_speed, gamma=gamma, chart=chart)

            def closed(gamma=gamma, chart=chart):
                return closedness_defect(g, gauge_fix(g, gamma, chart)) <= 1e-6

            s.check("unit_speed_representative_closed", closed, gamma=gamma, chart=chart)


def _suite_contact(s: _Suite) -> None:
    g, rng, N = s.g, s.rng, s.N
    if not (g.p and g.q):
        s.result.details["reason"] = f"signature {g} has no light rays"
        s.result.skipped = True
        return
    m = 2 * g.n - 3
    origin_chart = GaugeChart.null(1)
    origin = tuple(s.prep((0,) * m))
    cp0 = ChartPoint(g, origin_chart, chart_embedding(g, origin_chart, origin), origin)
    if m <= MAX_DEGREE:
        spot = contact_volume(g, cp0)
        s.result.details["volume_at_origin"] = encode(spot)
    else:
        s.result.details["volume_squared_at_origin"] = encode(contact_volume_squared(g, cp0))
    if (g.p, g.q) == (3, 1):
        s.check("volume_spot_value", lambda: scalars_equal(abs(spot), 8), coords=origin)

    for i in range(N):
        chart = GaugeChart.null(1 if i % 2 == 0 else -1)
        gamma = s.draw_geodesic(lambda: sampling.geodesic_in_chart(rng, g, chart))

        def null_contact(gamma=gamma, chart=chart):
            cp = gauge_fix(g, gamma, chart)
            qs = compute_sigma(g, cp)
            return (
                qs.sigma_rank == m - 1
                and contact_kernel(g, cp).dim == m - 1
                and check_kernel_equals_DF(g, cp)
                and contact_volume_nonzero(g, cp)
                and check_characteristic_triviality(g, cp)
                and xi_t_transverse(cp)
            )

        s.check(f"null_contact_{chart}", null_contact, gamma=gamma, chart=chart)

    with float_mode(s.cfg.tol if not s.exact else 1e-6):
        for i in range(_count(N, 10)):
            chart = GaugeChart.null(1 if i % 2 == 0 else -1)
            gamma = sampling.to_float(sampling.geodesic_in_chart(rng, g, chart))

            def fd_agrees(gamma=gamma, chart=chart):
                cp = gauge_fix(g, gamma, chart)
                exact = contact_exterior_derivative(g, cp)
                approx = contact_exterior_derivative_fd(g, cp)
                scale = max([1.0] + [abs(x) for r in exact for x in r])
                return all(abs(x - y) <= 1e-6 * scale for r, q in zip(exact, approx) for x, y in zip(r, q))

            s.check("d_alpha_matches_finite_differences", fd_agrees, gamma=gamma, chart=chart)


def _suite_audit(s: _Suite) -> None:
    g, rng, N = s.g, s.rng, s.N
    if not (g.p and g.q):
        s.result.details["reason"] = f"signature {g} has no null geodesics"
        s.result.skipped = True
        return
    points = [s.draw_geodesic(lambda: sampling.geodesic(rng, g, CausalKind.NULL)) for _ in range(_count(N, 100))]
    dims = reduction_dimension_audit(g, points)
    s.result.details["dimensions"] = list(dims)
    n = g.n
    s.check("dimensions", lambda: dims == (2 * n - 1, 2 * n - 2, 2 * n - 3), points=len(points))
    for gamma in points:
        s.check("per_point_audit", lambda gamma=gamma: audit_point(g, gamma).as_tuple() == dims, gamma=gamma)
    for _ in range(N):
        gamma = s.prep(sampling.any_geodesic(rng, g))
        s.check(
            "dH_nonzero",
            lambda: any(not is_zero(x) for x in hamiltonian_differential(g, gamma)),
            gamma=gamma,
        )
    for gamma in points:
        flow = tuple(gamma.V) + (0,) * n
        s.check(
            "flow_in_ker_dH",
            lambda gamma=gamma, flow=flow: is_zero(sum(a * b for a, b in zip(hamiltonian_differential(g, gamma), flow))),
            gamma=gamma,
        )


_RUNNERS: dict[str, Callable[[_Suite], None]] = {
    "phase": _suite_phase,
    "action": _suite_action,
    "orbits": _suite_orbits,
    "quotient": _suite_quotient,
    "contact": _suite_contact,
    "audit": _suite_audit,
}


def run_suite(name: str, cfg: RunConfig) -> SuiteResult:
    suite = _Suite(name, cfg)
    start = time.perf_counter()
    ctx = float_mode(cfg.tol) if cfg.mode == "float" else contextlib.nullcontext()
    with ctx:
        try:
            _RUNNERS[name](suite)
        except _EXPECTED_ERRORS as exc:
            # a failure outside any individual check still has to fail the suite
            cr = CheckResult("suite_setup", attempted=1, passed=0)
            cr.counterexample = {"check": "suite_setup", "inputs": {}, "error": f"{type(exc).__name__}: {exc}"}
            suite.result.checks.append(cr)
    suite.result.wall_time = time.perf_counter() - start
    return suite.result


def run_suites(cfg: RunConfig, workers: int = 1) -> Report:
    """Run every enabled suite; results do not depend on ``workers``."""
    cfg.validate()
    names = [n for n in SUITES if n in cfg.suites]
    if workers > 1:
        with ProcessPoolExecutor(workers) as pool:
            results = list(pool.map(run_suite, names, [cfg] * len(names)))
    else:
        results = [run_suite(n, cfg) for n in names]
    return Report(cfg, results)


# ---------------------------------------------------------------------------
# single-point inspection


def parse_gamma(text: str, g: Metric) -> Geodesic:
    """Parse "x1,...,xn;v1,...,vn"; entries are integers, fractions p/q or decimals, kept exact."""
    from fractions import Fraction

    from .linalg import Rational

    parts = text.split(";")
    if len(parts) != 2:
        raise ConfigError(f"expected 'x1,...,x{g.n};v1,...,v{g.n}', got {text!r}")
    blocks = []
    for part in parts:
        try:
            block = tuple(Rational(Fraction(tok.strip())) for tok in part.split(","))
        except ValueError:
            raise ConfigError(f"could not parse {part!r} as numbers") from None
        if len(block) != g.n:
            raise ConfigError(f"expected {g.n} components, got {len(block)} in {part!r}")
        blocks.append(block)
    return Geodesic(*blocks)


def inspect_point(g: Metric, gamma: Geodesic) -> dict:
    """Everything the pipeline computes at one geodesic, as JSON-ready data."""
    from .action import orbit_gram
    from .contact import contact_form
    from .minkowski import classify
    from .quotient import default_chart

    cls = classify(g, gamma.V)
    gram = orbit_gram(g, gamma)
    chart = default_chart(g, gamma)
    cp = gauge_fix(g, gamma, chart)
    qs = compute_sigma(g, cp)
    out: dict[str, Any] = {
        "signature": [g.p, g.q],
        "gamma": encode(gamma),
        "causal_class": cls.kind.value,
        "hamiltonian": encode(cls.h),
        "orbit_gram": encode(gram),
        "orbit_rank": orbit_gram_rank(g, gamma),
        "F_basis": encode(compute_F(g, gamma).basis),
        "chart": str(chart),
        "representative": encode(cp.gamma),
        "chart_coordinates": encode(cp.coords),
        "sigma": encode(qs.sigma),
        "sigma_rank": qs.sigma_rank,
    }
    if chart.is_null:
        out["alpha"] = encode(contact_form(g, cp))
        out["d_alpha"] = encode(contact_exterior_derivative(g, cp))
        if len(cp.coords) <= MAX_DEGREE:
            out["contact_volume"] = encode(contact_volume(g, cp))
        else:
            out["contact_volume_squared"] = encode(contact_volume_squared(g, cp))
    return out


def inspect_text(info: dict) -> str:
    def rows(m):
        return "\n".join("    [" + ", ".join(f"{x:>8}" for x in r) + "]" for r in m)

    lines = [
        f"gamma           {info['gamma']['gamma']}",
        f"causal class    {info['causal_class']}  (H = {info['hamiltonian']})",
        f"orbit Gram      rank {info['orbit_rank']}",
        rows(info["orbit_gram"]),
        f"F basis         dim {len(info['F_basis'])}",
        rows(info["F_basis"]),
        f"chart           {info['chart']}",
        f"representative  {info['representative']['gamma']}",
        f"coordinates     ({', '.join(info['chart_coordinates'])})",
        f"sigma           rank {info['sigma_rank']}",
        rows(info["sigma"]),
    ]
    if "alpha" in info:
        lines += [
            f"alpha           ({', '.join(info['alpha'])})",
            "d alpha",
            rows(info["d_alpha"]),
        ]
        if "contact_volume" in info:
            lines.append(f"contact volume  {info['contact_volume']}")
        else:
            lines.append(f"volume squared  {info['contact_volume_squared']}")
    return "\n".join(lines)

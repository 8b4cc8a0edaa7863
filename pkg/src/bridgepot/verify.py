"""Named verification suites, one per comparability statement.

Each suite measures the quantities behind one estimate (a two-sided kernel
comparison, a divergence threshold, a closed-form constant, an invariance)
on a deterministic probe set and reports machine-readable findings.  Where
the underlying statement only asserts that constants exist, the suite
records the empirical window and passes if it is finite, positive, and
within a generous declared width; the only sharp thresholds enforced are
the ones with explicit values: the sqrt(4 pi / c) constant, the
[2 i_app, 4 i_app] sandwich, the d = 3 kernel identity, and the 4 sqrt(pi)
upper ratio at d = 3.

Reports serialize to JSON with the stable schema
{suite, passed, findings: [{name, value, bound, passed}], runtime_ms, seed}.
"""

from __future__ import annotations

import math
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np

from .errors import BridgepotError
from .feynman_kac import McConfig, g_ratio_mc
from .functionals import (
    BridgeSpec,
    SearchStrategy,
    build_compact_counterexample,
    growth_diagnosis,
    j_transform,
    k_norm,
    k_transform,
    n_functional,
    newton_norm,
    newton_potential,
    s_functional,
    s_norm,
)
from .growth import Verdict
from .kernels import (
    as_dimension,
    explicit_constant,
    f_estimate,
    f_integral,
    i_app,
    j_kernel,
    k0,
    kappa,
    newton_constant,
)
from .potentials import (
    BallIndicator,
    CounterexampleA,
    Potential,
    dilate,
    lp_halfd_norm,
    parse_potential,
)
from .quadrature import QuadratureSpec

__all__ = ["Finding", "ComparabilityReport", "SuiteReport", "run_suite", "SUITE_IDS"]


@dataclass(frozen=True)
class Finding:
    name: str
    value: float
    bound: str
    passed: bool

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "value": float(self.value),
            "bound": self.bound,
            "passed": bool(self.passed),
        }


@dataclass(frozen=True)
class ComparabilityReport:
    """Empirical [min, max] of a ratio over a probe grid."""

    grid: str
    min_ratio: float
    max_ratio: float
    argmin: dict
    argmax: dict
    passed: bool

    def findings(self, label: str, bound: str) -> list[Finding]:
        return [
            Finding(f"{label}.min_ratio", self.min_ratio, bound, self.passed),
            Finding(f"{label}.max_ratio", self.max_ratio, bound, self.passed),
        ]


@dataclass
class SuiteReport:
    suite: str
    passed: bool
    findings: list[Finding]
    runtime_ms: float
    seed: int
    inputs: dict = field(default_factory=dict)

    def to_dict(self, include_runtime: bool = True) -> dict:
        return {
            "suite": self.suite,
            "passed": bool(self.passed),
            "findings": [f.to_dict() for f in self.findings],
            "runtime_ms": float(self.runtime_ms) if include_runtime else 0.0,
            "seed": int(self.seed),
            "inputs": self.inputs,
        }


def _pmap(fn: Callable, items: Sequence, threads: int) -> list:
    """Map preserving order; thread pool only when requested."""
    if threads <= 1 or len(items) <= 1:
        return [fn(it) for it in items]
    with ThreadPoolExecutor(max_workers=threads) as pool:
        return list(pool.map(fn, items))


def _rng(seed: int) -> np.random.Generator:
    return np.random.Generator(np.random.Philox(key=np.array([seed, 0], dtype=np.uint64)))


def _window_report(
    label: str, ratios: list[tuple[float, dict]], cap_width: float
) -> tuple[list[Finding], bool]:
    vals = [r for r, _ in ratios]
    vmin, vmax = min(vals), max(vals)
    amin = next(arg for r, arg in ratios if r == vmin)
    amax = next(arg for r, arg in ratios if r == vmax)
    ok = (
        vmin > 0.0
        and math.isfinite(vmax)
        and vmax / vmin <= cap_width
    )
    rep = ComparabilityReport(label, vmin, vmax, amin, amax, ok)
    return rep.findings(label, f"width <= {cap_width:g}"), ok


_DEFAULT_POTENTIALS = (
    '{"type": "ball", "radius": 2.0, "amplitude": -1.0}',
    '{"type": "radial_power", "exponent": 0.0, "inner_radius": 0.5, '
    '"outer_radius": 1.5, "amplitude": -0.7}',
    '{"type": "sum", "terms": [{"type": "ball", "radius": 1.0, "amplitude": -1.0}, '
    '{"type": "ball", "radius": 2.5, "amplitude": -0.25}]}',
)


def _potentials_from_cfg(cfg: dict) -> list[Potential]:
    specs = cfg.get("potentials", _DEFAULT_POTENTIALS)
    return [parse_potential(s) if isinstance(s, (str, dict)) else s for s in specs]


# ===========================================================================
# suites
# ===========================================================================


def _suite_est2(cfg: dict, threads: int) -> tuple[list[Finding], bool, dict]:
    betas = tuple(cfg.get("betas", (1.5, 2.0, 2.5, 3.0)))
    cs = tuple(cfg.get("cs", (0.25, 1.0, 4.0)))
    n = int(cfg.get("grid_n", 9))
    lo, hi = float(cfg.get("grid_lo", 1e-3)), float(cfg.get("grid_hi", 1e3))
    width_cap = float(cfg.get("width_cap", 50.0))
    spec = QuadratureSpec(rel_tol=float(cfg.get("rel_tol", 1e-8)))
    grid = np.exp(np.linspace(math.log(lo), math.log(hi), n))

    findings: list[Finding] = []
    all_ok = True

    def cell(bc) -> tuple[list[Finding], bool]:
        beta, c = bc
        C = explicit_constant(beta, c, spec)
        ratios = []
        cap_excess = 0.0
        sandwich_bad = 0
        for a in grid:
            for b in grid:
                f = f_integral(a, b, beta, c, spec)
                F = f_estimate(a, b, beta)
                I = i_app(a, b, beta, c, spec)
                ratios.append((f.value / F, {"a": float(a), "b": float(b)}))
                cap_excess = max(cap_excess, f.value / (C.value * F) - 1.0)
                slack = f.error_bound + 4.0 * I.error_bound + 1e-9 * f.value
                if not (2.0 * I.value - slack <= f.value <= 4.0 * I.value + slack):
                    sandwich_bad += 1
        label = f"est2[beta={beta:g},c={c:g}]"
        fnd, ok = _window_report(label, ratios, width_cap)
        cap_ok = cap_excess <= 1e-6
        fnd.append(Finding(f"{label}.upper_constant_excess", cap_excess, "<= 1e-6", cap_ok))
        fnd.append(Finding(f"{label}.sandwich_violations", sandwich_bad, "== 0", sandwich_bad == 0))
        return fnd, ok and cap_ok and sandwich_bad == 0

    for fnd, ok in _pmap(cell, [(b, c) for b in betas for c in cs], threads):
        findings.extend(fnd)
        all_ok = all_ok and ok
    return findings, all_ok, {"betas": list(betas), "cs": list(cs), "grid_n": n}


def _suite_jk0(cfg: dict, threads: int) -> tuple[list[Finding], bool, dict]:
    dims = tuple(int(d) for d in cfg.get("dims", (3, 4, 6)))
    samples = int(cfg.get("samples", 200))
    seed = int(cfg.get("seed", 123))
    spec = QuadratureSpec(rel_tol=1e-9)
    findings: list[Finding] = []
    all_ok = True
    for d in dims:
        rng = _rng(seed + d)
        ratios = []
        for _ in range(samples):
            nx = math.exp(rng.uniform(math.log(1e-2), math.log(1e2)))
            ny = math.exp(rng.uniform(math.log(1e-2), math.log(1e2)))
            u = rng.standard_normal(d)
            v = rng.standard_normal(d)
            x = u / np.linalg.norm(u) * nx
            y = v / np.linalg.norm(v) * ny
            # both kernels carry the identical exp(-(|x||y| - x.y)/2) factor,
            # which can underflow at strongly misaligned large probes; the
            # ratio cancels it exactly, so compare in log space
            jv = j_kernel(x, y, d, spec)
            kv = k0(x, y, d)
            if kv > 0.0 and jv.value > 0.0:
                ratio = jv.value / kv
            else:
                log_shape = (2.0 - d) * math.log(nx) + 0.5 * (d - 3.0) * math.log1p(nx * ny)
                ratio = f_integral(nx / 2.0, ny / 2.0, d / 2.0, 1.0, spec).value * math.exp(
                    -log_shape
                )
            ratios.append((ratio, {"r_x": nx, "r_y": ny}))
        label = f"jk0[d={d}]"
        fnd, ok = _window_report(label, ratios, float(cfg.get("width_cap", 100.0)))
        findings.extend(fnd)
        if d == 3:
            worst = max(r for r, _ in ratios)
            cap = 4.0 * math.sqrt(math.pi) * (1.0 + 1e-6)
            ok3 = worst <= cap
            findings.append(
                Finding("jk0[d=3].upper_4sqrtpi", worst, "<= 4 sqrt(pi)", ok3)
            )
            ok = ok and ok3
        all_ok = all_ok and ok
    return findings, all_ok, {"dims": list(dims), "samples": samples, "seed": seed}


def _suite_lu(cfg: dict, threads: int) -> tuple[list[Finding], bool, dict]:
    d = as_dimension(int(cfg.get("d", 3)))
    ts = tuple(float(t) for t in cfg.get("ts", (0.1, 1.0, 10.0)))
    samples = int(cfg.get("samples", 20))
    seed = int(cfg.get("seed", 2024))
    lo_cap, hi_cap = 1e-2, 1e2
    potentials = _potentials_from_cfg(cfg)
    rng = _rng(seed)
    pairs = [(rng.standard_normal(d), rng.standard_normal(d)) for _ in range(samples)]

    findings: list[Finding] = []
    all_ok = True
    ratios_u: list[tuple[float, dict]] = []
    ratios_l: list[tuple[float, dict]] = []
    sup_s = 0.0
    sup_j = 0.0

    def one(job):
        V_idx, t, p_idx = job
        V = potentials[V_idx]
        x, y = pairs[p_idx]
        spec = BridgeSpec(t, tuple(x), tuple(y))
        sv = s_functional(V, spec).value
        nv = n_functional(V, spec).value
        nv_half_t = n_functional(V, BridgeSpec(t / 2.0, tuple(x), tuple(y))).value
        return V_idx, t, p_idx, sv, nv, nv_half_t

    jobs = [
        (vi, t, pi)
        for vi in range(len(potentials))
        for t in ts
        for pi in range(samples)
    ]
    for vi, t, pi, sv, nv, nv2 in _pmap(one, jobs, threads):
        tag = {"potential": vi, "t": t, "pair": pi}
        if nv > 0 and sv > 0:
            ratios_u.append((sv / nv, tag))
        if nv2 > 0 and sv > 0:
            ratios_l.append((sv / nv2, tag))
        sup_s = max(sup_s, sv)

    for x, y in pairs:
        sup_j = max(sup_j, j_transform(potentials[0], x, y, d).value)

    fnd_u, ok_u = _window_report("lu.S_over_N_t", ratios_u, hi_cap / lo_cap)
    fnd_l, ok_l = _window_report("lu.S_over_N_half_t", ratios_l, hi_cap / lo_cap)
    in_win_u = all(lo_cap < r < hi_cap for r, _ in ratios_u)
    in_win_l = all(lo_cap < r < hi_cap for r, _ in ratios_l)
    m2_emp = max(r for r, _ in ratios_u)
    m1_emp = min(r for r, _ in ratios_l)
    findings.extend(fnd_u)
    findings.extend(fnd_l)
    findings.append(Finding("lu.m2_empirical", m2_emp, "in (1e-2, 1e2)", in_win_u))
    findings.append(Finding("lu.m1_empirical", m1_emp, "in (1e-2, 1e2)", in_win_l))
    sup_ratio = sup_s / sup_j if sup_j > 0 else math.inf
    sup_ok = 1e-3 < sup_ratio < 1e3
    findings.append(
        Finding("lu.sup_S_over_sup_J(potential 0)", sup_ratio, "in (1e-3, 1e3)", sup_ok)
    )
    all_ok = ok_u and ok_l and in_win_u and in_win_l and sup_ok
    return findings, all_ok, {"d": d, "ts": list(ts), "samples": samples, "seed": seed}


def _suite_main(cfg: dict, threads: int) -> tuple[list[Finding], bool, dict]:
    d = as_dimension(int(cfg.get("d", 3)))
    potentials = _potentials_from_cfg(cfg)
    strategy = SearchStrategy(
        grid_density=int(cfg.get("grid_density", 4)),
        multistarts=int(cfg.get("multistarts", 2)),
        nm_max_iter=int(cfg.get("nm_max_iter", 30)),
    )
    findings: list[Finding] = []
    ratios: list[tuple[float, dict]] = []
    all_ok = True
    for i, V in enumerate(potentials):
        s_rep = s_norm(V, d, strategy=strategy)
        k_rep = k_norm(V, d, strategy=strategy)
        if not (math.isfinite(k_rep.estimate.value) and k_rep.estimate.value > 0):
            all_ok = False
            continue
        ratio = s_rep.estimate.value / k_rep.estimate.value
        ratios.append((ratio, {"potential": i}))
        findings.append(
            Finding(f"main.sup_S[potential {i}]", s_rep.estimate.value, "> 0", s_rep.estimate.value > 0)
        )
        findings.append(
            Finding(f"main.norm_K[potential {i}]", k_rep.estimate.value, "> 0", True)
        )
    fnd, ok = _window_report("main.supS_over_normK", ratios, float(cfg.get("width_cap", 100.0)))
    findings.extend(fnd)
    all_ok = all_ok and ok
    return findings, all_ok, {"d": d, "n_potentials": len(potentials)}


def _suite_d3(cfg: dict, threads: int) -> tuple[list[Finding], bool, dict]:
    seed = int(cfg.get("seed", 31))
    n_ident = int(cfg.get("samples_identity", 20))
    n_dom = int(cfg.get("samples_domination", 100))
    potentials = [
        parse_potential(s)
        for s in cfg.get(
            "potentials",
            (
                '{"type": "ball", "radius": 1.0, "amplitude": -1.0}',
                '{"type": "radial_power", "exponent": -1.0, "inner_radius": 0.2, '
                '"outer_radius": 2.0, "amplitude": -1.0}',
            ),
        )
    ]
    rng = _rng(seed)
    c3inv = 1.0 / newton_constant(3)
    findings: list[Finding] = []
    worst_rel = 0.0
    for V in potentials:
        for _ in range(n_ident):
            x = rng.standard_normal(3) * 1.5
            kv = k_transform(V, x, np.zeros(3), 3)
            nv = newton_potential(V, x, 3)
            worst_rel = max(worst_rel, abs(kv.value / (c3inv * nv.value) - 1.0))
    ident_ok = worst_rel <= 1e-8
    findings.append(Finding("d3.identity_worst_rel", worst_rel, "<= 1e-8", ident_ok))

    dom_bad = 0
    worst_margin = -math.inf
    V = potentials[0]
    spec2 = QuadratureSpec(rel_tol=1e-6, max_subdivisions=4000)

    def dom(job):
        x, y = job
        kxy = k_transform(V, x, y, 3, spec2)
        kx0 = k_transform(V, x, np.zeros(3), 3)
        slack = 1e-6 * kx0.value + 3.0 * (kxy.error_bound + kx0.error_bound)
        return kxy.value - kx0.value, slack

    jobs = [(rng.standard_normal(3) * 1.5, rng.standard_normal(3) * 1.5) for _ in range(n_dom)]
    for margin, slack in _pmap(dom, jobs, threads):
        worst_margin = max(worst_margin, margin)
        if margin > slack:
            dom_bad += 1
    findings.append(Finding("d3.domination_violations", dom_bad, "== 0", dom_bad == 0))
    findings.append(
        Finding("d3.domination_worst_excess", worst_margin, "<= quadrature slack", dom_bad == 0)
    )
    ok = ident_ok and dom_bad == 0
    return findings, ok, {"seed": seed, "samples_identity": n_ident, "samples_domination": n_dom}


def _suite_prop14(cfg: dict, threads: int) -> tuple[list[Finding], bool, dict]:
    d = as_dimension(int(cfg.get("d", 4)))
    if d < 4:
        raise BridgepotError("prop14 requires d >= 4")
    potentials = [
        parse_potential(s)
        for s in cfg.get(
            "potentials",
            (
                '{"type": "ball", "radius": 1.0, "amplitude": -1.0}',
                '{"type": "radial_power", "exponent": -1.0, "inner_radius": 0.3, '
                '"outer_radius": 3.0, "amplitude": -0.5}',
            ),
        )
    ]
    strategy = SearchStrategy(
        grid_density=int(cfg.get("grid_density", 4)),
        multistarts=int(cfg.get("multistarts", 2)),
        nm_max_iter=int(cfg.get("nm_max_iter", 30)),
    )
    kap = kappa(d)
    cd_inv = 1.0 / newton_constant(d)
    findings: list[Finding] = [
        Finding("prop14.kappa", kap.value, "finite, converged", kap.converged)
    ]
    all_ok = kap.converged
    for i, V in enumerate(potentials):
        lphalf = lp_halfd_norm(V, d)
        n_rep = newton_norm(V, d)
        x_star = np.zeros(d)
        x_star[0] = n_rep.sup.arg.get("r_x", 0.0)
        k_slice = k_transform(V, x_star, np.zeros(d), d)
        k_rep = k_norm(V, d, strategy=strategy)
        k_probed = max(k_rep.estimate.value, k_slice.value)
        lhs = cd_inv * n_rep.estimate.value
        rhs = 2.0 ** ((d - 3) / 2.0) * (cd_inv * n_rep.estimate.value + kap.value * lphalf.value)
        lo_ok = k_probed >= lhs * (1.0 - 1e-6)
        hi_ok = k_probed <= rhs * (1.0 + 1e-6)
        findings.append(Finding(f"prop14.lower[potential {i}]", k_probed / lhs, ">= 1", lo_ok))
        findings.append(Finding(f"prop14.upper[potential {i}]", k_probed / rhs, "<= 1", hi_ok))
        all_ok = all_ok and lo_ok and hi_ok
    return findings, all_ok, {"d": d, "n_potentials": len(potentials)}


def _suite_counterexample(cfg: dict, threads: int) -> tuple[list[Finding], bool, dict]:
    d = as_dimension(int(cfg.get("d", 4)))
    radii = [float(r) for r in cfg.get("radii", (1e2, 1e3, 1e4, 1e5))]
    newton_points = int(cfg.get("newton_points", 25))
    n_compact = int(cfg.get("compact_terms", 2))
    V = CounterexampleA()
    x0 = np.zeros(d)
    y0 = np.zeros(d)
    y0[0] = 1.0

    findings: list[Finding] = []

    diag = growth_diagnosis(
        lambda R: k_transform(CounterexampleA(z1_max=R), x0, y0, d), radii
    )
    div_ok = diag.verdict is Verdict.DIVERGENT
    fit_ok = diag.slope > 0 and diag.r_squared >= 0.99
    findings.append(
        Finding("counterexample.k_truncation_verdict", 1.0 if div_ok else 0.0, "divergent", div_ok)
    )
    findings.append(Finding("counterexample.k_log_slope", diag.slope, "> 0", diag.slope > 0))
    findings.append(
        Finding("counterexample.k_fit_r2", diag.r_squared, ">= 0.99", diag.r_squared >= 0.99)
    )

    grid = np.exp(np.linspace(math.log(4.0), math.log(1e6), newton_points))

    def newt(x1: float) -> float:
        x = np.zeros(d)
        x[0] = x1
        return newton_potential(V, x, d).value

    vals = _pmap(newt, list(grid), threads)
    # stabilized tail: maximal suffix with consecutive relative changes < 5%
    tail_start = len(vals) - 1
    for i in range(len(vals) - 1, 0, -1):
        if abs(vals[i] - vals[i - 1]) <= 0.05 * abs(vals[i]):
            tail_start = i - 1
        else:
            break
    tail = vals[tail_start:]
    tail_ok = len(tail) >= 4 and max(tail) / min(tail) < 2.0
    findings.append(
        Finding(
            "counterexample.newton_tail_max_over_min",
            (max(tail) / min(tail)) if tail else math.inf,
            "< 2",
            tail_ok,
        )
    )
    findings.append(
        Finding("counterexample.newton_sup_probed", max(vals), "finite", math.isfinite(max(vals)))
    )

    lp = lp_halfd_norm(V, d)
    lp_ok = math.isinf(lp.value)
    findings.append(
        Finding("counterexample.lp_halfd_norm", lp.value, "= +inf (diverged)", lp_ok)
    )

    ok_compact = True
    if n_compact > 0:
        compact, probe_radii = build_compact_counterexample(n_compact, d)
        inside_unit = compact.support_radius() <= 1.0 + 1e-12
        findings.append(
            Finding(
                "counterexample.compact_support_radius",
                compact.support_radius(),
                "<= 1",
                inside_unit,
            )
        )
        ok_compact = inside_unit
        for n, rho in enumerate(probe_radii, start=1):
            yn = np.zeros(d)
            yn[0] = rho
            kv = k_transform(compact, x0, yn, d)
            target = 2.0**n
            ok_n = kv.value >= target * (1.0 - 1e-3)
            findings.append(
                Finding(
                    f"counterexample.compact_probe_{n}",
                    kv.value,
                    f">= 2^{n}",
                    ok_n,
                )
            )
            ok_compact = ok_compact and ok_n

    ok = div_ok and fit_ok and tail_ok and lp_ok and ok_compact
    return findings, ok, {"d": d, "radii": radii, "newton_points": newton_points}


def _suite_lemma_const(cfg: dict, threads: int) -> tuple[list[Finding], bool, dict]:
    d = as_dimension(int(cfg.get("d", 4)))
    b_div = float(cfg.get("beta_divergent", 2.4))
    b_con = float(cfg.get("beta_convergent", 2.6))
    threshold = (d + 1) / 2.0
    div = kappa(d, exponent_override=b_div)
    con = kappa(d, exponent_override=b_con)
    div_ok = math.isinf(div.value)
    con_ok = math.isfinite(con.value) and con.converged
    findings = [
        Finding(f"lemma_const.beta={b_div:g}", div.value, "divergent (+inf)", div_ok),
        Finding(f"lemma_const.beta={b_con:g}", con.value, "finite, convergent", con_ok),
        Finding("lemma_const.threshold", threshold, "(d+1)/2", True),
    ]
    return findings, div_ok and con_ok, {"d": d, "betas": [b_div, b_con]}


def _suite_gen_neg(cfg: dict, threads: int) -> tuple[list[Finding], bool, dict]:
    d = as_dimension(int(cfg.get("d", 3)))
    t = float(cfg.get("t", 1.0))
    paths = int(cfg.get("paths", 100_000))
    steps = int(cfg.get("steps", 512))
    seed = int(cfg.get("seed", 99))
    pos_amp = float(cfg.get("positive_amplitude", 0.1))
    x = np.zeros(d)
    y = np.zeros(d)
    y[0] = 1.0
    spec = BridgeSpec(t, tuple(x), tuple(y))
    mc = McConfig(paths, steps, seed)

    findings: list[Finding] = []

    V_neg = BallIndicator(None, 1.0, -1.0)
    s_quad = s_functional(V_neg, spec)
    ratio = g_ratio_mc(V_neg, spec, mc)
    lower = math.exp(-s_quad.value)
    lo_ok = ratio.mean >= lower - 3.0 * ratio.std_error
    hi_ok = ratio.mean <= 1.0 + 3.0 * ratio.std_error
    findings.append(Finding("gen_neg.ratio_negative_V", ratio.mean, f">= exp(-S) = {lower:.6f}", lo_ok))
    findings.append(Finding("gen_neg.ratio_upper_1", ratio.mean, "<= 1", hi_ok))

    V_pos = BallIndicator(None, 1.0, pos_amp)
    eta_rep = s_norm(
        V_pos, d, strategy=SearchStrategy(grid_density=4, multistarts=2, nm_max_iter=40)
    )
    eta = eta_rep.estimate.value
    eta_ok = eta < 1.0
    findings.append(Finding("gen_neg.eta", eta, "< 1", eta_ok))
    ratio_pos = g_ratio_mc(V_pos, spec, mc)
    cap = 1.0 / (1.0 - eta) if eta < 1.0 else math.inf
    pos_ok = ratio_pos.mean <= cap + 3.0 * ratio_pos.std_error
    findings.append(
        Finding("gen_neg.ratio_positive_V", ratio_pos.mean, f"<= 1/(1-eta) = {cap:.6f}", pos_ok)
    )
    ok = lo_ok and hi_ok and eta_ok and pos_ok
    return findings, ok, {"d": d, "paths": paths, "steps": steps, "seed": seed}


def _suite_dilation(cfg: dict, threads: int) -> tuple[list[Finding], bool, dict]:
    d = as_dimension(int(cfg.get("d", 3)))
    samples = int(cfg.get("samples", 50))
    seed = int(cfg.get("seed", 55))
    V = (
        parse_potential(cfg["potential"])
        if "potential" in cfg
        else BallIndicator(None, 1.0, -1.0)
    )
    rng = _rng(seed)
    q2 = QuadratureSpec(rel_tol=1e-6, max_subdivisions=4000)

    def one(_):
        s = float(np.exp(rng.uniform(-1.5, 1.5)))
        x = rng.standard_normal(d)
        y = rng.standard_normal(d)
        Vs = dilate(V, s)
        rs = math.sqrt(s)
        k1 = k_transform(Vs, x, y, d, q2)
        k2 = k_transform(V, rs * x, y / rs, d, q2)
        n1 = newton_potential(Vs, x, d)
        n2 = newton_potential(V, rs * x, d)
        rel_k = abs(k1.value - k2.value) / max(abs(k2.value), 1e-300)
        rel_n = abs(n1.value - n2.value) / max(abs(n2.value), 1e-300)
        return rel_k, rel_n

    rels = [one(i) for i in range(samples)]
    worst_k = max(r[0] for r in rels)
    worst_n = max(r[1] for r in rels)
    k_ok = worst_k <= 1e-6
    n_ok = worst_n <= 1e-6
    findings = [
        Finding("dilation.k_transform_worst_rel", worst_k, "<= 1e-6", k_ok),
        Finding("dilation.newton_worst_rel", worst_n, "<= 1e-6", n_ok),
    ]

    # norm invariance: probed Newton sup is exactly invariant for radial V
    s = 4.0
    n_base = newton_norm(V, d)
    n_dil = newton_norm(dilate(V, s), d)
    rel = abs(n_base.estimate.value - n_dil.estimate.value) / n_base.estimate.value
    norm_ok = rel <= 1e-6
    findings.append(Finding("dilation.newton_norm_invariance_rel", rel, "<= 1e-6", norm_ok))
    ok = k_ok and n_ok and norm_ok
    return findings, ok, {"d": d, "samples": samples, "seed": seed}


_SUITES = {
    "est2": _suite_est2,
    "jk0": _suite_jk0,
    "lu": _suite_lu,
    "main": _suite_main,
    "d3": _suite_d3,
    "prop14": _suite_prop14,
    "counterexample": _suite_counterexample,
    "lemma_const": _suite_lemma_const,
    "gen_neg": _suite_gen_neg,
    "dilation": _suite_dilation,
}

SUITE_IDS = tuple(sorted(_SUITES))


def run_suite(suite_id: str, cfg: dict | None = None, threads: int = 1) -> SuiteReport:
    """Run one verification suite and return its report.

    cfg overrides the suite's documented defaults (grids, seeds, sample
    counts); unknown suite ids raise.  Reports are deterministic for a
    fixed configuration and seed.
    """
    if suite_id not in _SUITES:
        raise BridgepotError(
            f"unknown suite {suite_id!r}; available: {', '.join(SUITE_IDS)}"
        )
    cfg = dict(cfg or {})
    seed = int(cfg.get("seed", 0))
    start = time.perf_counter()
    findings, passed, inputs = _SUITES[suite_id](cfg, threads)
    runtime_ms = (time.perf_counter() - start) * 1000.0
    return SuiteReport(suite_id, passed, findings, runtime_ms, seed, inputs)

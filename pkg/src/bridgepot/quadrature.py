"""Adaptive Gauss-Kronrod quadrature with half-line maps and 2D tensor panels.

Every integral in this package goes through one of three entry points:

    integrate_finite(f, a, b, ...)      adaptive G7/K15 on a finite interval
    integrate_half_line(f, ...)         integral over (0, inf) with a peak-
                                        centered logarithmic (or algebraic)
                                        change of variables
    integrate_2d(f2, xspan, yspan, ...) adaptive tensor G7/K15 rectangles

The half-line routine maps u = center * exp(v) and expands the v-window
outward from the peak until probe values become negligible, so a bump whose
location varies over many orders of magnitude is always bracketed.  All
integrands must accept numpy arrays and return arrays of the same shape.

Results are reported as :class:`Estimate` values carrying an error bound and
a convergence status; nothing here raises on slow convergence, the status
field says what happened.
"""

from __future__ import annotations

import heapq
import math
from dataclasses import dataclass
from enum import Enum
from typing import Callable, Iterable, Sequence

import numpy as np

__all__ = [
    "Status",
    "QuadratureSpec",
    "Estimate",
    "DEFAULT_SPEC_1D",
    "DEFAULT_SPEC_2D",
    "integrate_finite",
    "integrate_half_line",
    "integrate_2d",
    "gauss_legendre_nodes",
    "QuadratureError",
]


class QuadratureError(ValueError):
    """Invalid quadrature request (bad tolerances, bad interval, NaN integrand)."""


class Status(str, Enum):
    CONVERGED = "converged"
    MAX_SUBDIVISIONS_REACHED = "max_subdivisions_reached"
    DIVERGED = "diverged"


_STATUS_RANK = {
    Status.CONVERGED: 0,
    Status.MAX_SUBDIVISIONS_REACHED: 1,
    Status.DIVERGED: 2,
}


@dataclass(frozen=True)
class QuadratureSpec:
    """Tolerances and budget for one adaptive integration.

    ``infinite_map`` selects the change of variables used on (0, inf):
    "log" substitutes u = peak * e^v, "algebraic" substitutes
    u = peak * r/(1-r).  The log map is the default; it resolves power-law
    endpoint behaviour at 0 and exponential tails equally well.
    """

    rel_tol: float = 1e-8
    abs_tol: float = 0.0
    max_subdivisions: int = 400
    infinite_map: str = "log"

    def __post_init__(self) -> None:
        if not (self.rel_tol > 0.0):
            raise QuadratureError(f"rel_tol must be > 0, got {self.rel_tol}")
        if not (self.abs_tol >= 0.0):
            raise QuadratureError(f"abs_tol must be >= 0, got {self.abs_tol}")
        if self.max_subdivisions < 1:
            raise QuadratureError("max_subdivisions must be >= 1")
        if self.infinite_map not in ("log", "algebraic"):
            raise QuadratureError(f"unknown infinite_map {self.infinite_map!r}")


DEFAULT_SPEC_1D = QuadratureSpec(rel_tol=1e-8)
DEFAULT_SPEC_2D = QuadratureSpec(rel_tol=1e-6, max_subdivisions=4000)


@dataclass(frozen=True)
class Estimate:
    """A numerical value with an error bound and a convergence flag.

    value may be +inf, in which case status is always DIVERGED.  When status
    is CONVERGED the error bound satisfies
    error_bound <= max(abs_tol, rel_tol * |value|) for the spec in force.
    """

    value: float
    error_bound: float
    status: Status

    def __post_init__(self) -> None:
        if math.isinf(self.value) and self.status is not Status.DIVERGED:
            raise QuadratureError("infinite value requires DIVERGED status")

    @property
    def converged(self) -> bool:
        return self.status is Status.CONVERGED

    def scaled(self, factor: float) -> "Estimate":
        """Multiply by an exact scalar factor."""
        if math.isinf(self.value):
            return self
        return Estimate(self.value * factor, abs(factor) * self.error_bound, self.status)

    def __add__(self, other: "Estimate") -> "Estimate":
        status = max(self.status, other.status, key=_STATUS_RANK.get)
        if math.isinf(self.value) or math.isinf(other.value):
            return Estimate(math.inf, math.inf, Status.DIVERGED)
        return Estimate(
            self.value + other.value,
            self.error_bound + other.error_bound,
            status,
        )


# --------------------------------------------------------------------------
# Gauss-Kronrod 7/15 rule (nodes on the open interval, endpoints never hit).
# Values are the standard QUADPACK dqk15 abscissae/weights.
# --------------------------------------------------------------------------

_XK = np.array(
    [
        -0.991455371120813,
        -0.949107912342759,
        -0.864864423359769,
        -0.741531185599394,
        -0.586087235467691,
        -0.405845151377397,
        -0.207784955007898,
        0.0,
        0.207784955007898,
        0.405845151377397,
        0.586087235467691,
        0.741531185599394,
        0.864864423359769,
        0.949107912342759,
        0.991455371120813,
    ]
)
_WK = np.array(
    [
        0.022935322010529,
        0.063092092629979,
        0.104790010322250,
        0.140653259715525,
        0.169004726639267,
        0.190350578064785,
        0.204432940075298,
        0.209482141084728,
        0.204432940075298,
        0.190350578064785,
        0.169004726639267,
        0.140653259715525,
        0.104790010322250,
        0.063092092629979,
        0.022935322010529,
    ]
)
# Gauss-7 weights sit on the odd-index Kronrod nodes.
_IG = np.arange(1, 15, 2)
_WG = np.array(
    [
        0.129484966168870,
        0.279705391489277,
        0.381830050505119,
        0.417959183673469,
        0.381830050505119,
        0.279705391489277,
        0.129484966168870,
    ]
)


def gauss_legendre_nodes(n: int, a: float, b: float) -> tuple[np.ndarray, np.ndarray]:
    """Gauss-Legendre nodes/weights mapped to [a, b]."""
    x, w = np.polynomial.legendre.leggauss(n)
    return 0.5 * (b - a) * x + 0.5 * (b + a), 0.5 * (b - a) * w


def _panel_eval(f: Callable, lows: np.ndarray, highs: np.ndarray):
    """Evaluate K15 and G7 on a batch of panels.

    Returns (valK, valG, resabs) arrays, one entry per panel.
    """
    c = 0.5 * (lows + highs)
    h = 0.5 * (highs - lows)
    # nodes laid out panel-major: shape (npanels, 15)
    x = c[:, None] + h[:, None] * _XK[None, :]
    y = np.asarray(f(x.ravel()), dtype=float).reshape(x.shape)
    if not np.all(np.isfinite(y)):
        raise QuadratureError("integrand returned a non-finite value")
    valk = h * (y * _WK[None, :]).sum(axis=1)
    valg = h * (y[:, _IG] * _WG[None, :]).sum(axis=1)
    resabs = np.abs(h) * (np.abs(y) * _WK[None, :]).sum(axis=1)
    return valk, valg, resabs


def _refine(f, panels, spec: QuadratureSpec) -> tuple[float, float, Status, int]:
    """Adaptive bisection over an initial list of (lo, hi) panels."""
    lows = np.array([p[0] for p in panels], dtype=float)
    highs = np.array([p[1] for p in panels], dtype=float)
    valk, valg, resabs = _panel_eval(f, lows, highs)
    neval = lows.size * 15

    heap: list[tuple[float, int, float, float, float]] = []
    serial = 0
    total = 0.0
    total_err = 0.0
    eps = np.finfo(float).eps
    for lo, hi, vk, vg, ra in zip(lows, highs, valk, valg, resabs):
        err = max(abs(vk - vg), 50.0 * eps * ra)
        total += vk
        total_err += err
        heapq.heappush(heap, (-err, serial, lo, hi, vk))
        serial += 1

    splits = 0
    while splits < spec.max_subdivisions:
        tol = max(spec.abs_tol, spec.rel_tol * abs(total))
        if total_err <= tol:
            break
        # bisect a batch of the worst panels in one integrand call
        batch = []
        batch_budget = min(8, spec.max_subdivisions - splits)
        while heap and len(batch) < batch_budget:
            neg_err, _, lo, hi, vk = heapq.heappop(heap)
            if -neg_err <= 0.25 * tol / max(len(batch), 1):
                heapq.heappush(heap, (neg_err, serial, lo, hi, vk))
                serial += 1
                break
            if (hi - lo) <= abs(lo) * 1e-15 + abs(hi) * 1e-15 + 1e-300:
                # cannot subdivide further in double precision; keep its error
                heapq.heappush(heap, (0.0, serial, lo, hi, vk))
                serial += 1
                splits += 1
                continue
            batch.append((lo, hi, vk, -neg_err))
        if not batch:
            break
        lows = np.array([b[0] for b in batch] + [0.5 * (b[0] + b[1]) for b in batch])
        highs = np.array([0.5 * (b[0] + b[1]) for b in batch] + [b[1] for b in batch])
        vks, vgs, ras = _panel_eval(f, lows, highs)
        neval += lows.size * 15
        child_err = np.maximum(np.abs(vks - vgs), 50.0 * eps * ras)
        for i, (lo, hi, vk, err) in enumerate(batch):
            mid = 0.5 * (lo + hi)
            j = i + len(batch)
            total += vks[i] + vks[j] - vk
            total_err += child_err[i] + child_err[j] - err
            heapq.heappush(heap, (-child_err[i], serial, lo, mid, vks[i]))
            heapq.heappush(heap, (-child_err[j], serial + 1, mid, hi, vks[j]))
            serial += 2
            splits += 1

    tol = max(spec.abs_tol, spec.rel_tol * abs(total))
    status = Status.CONVERGED if total_err <= tol else Status.MAX_SUBDIVISIONS_REACHED
    return total, total_err, status, neval


def _initial_panels(a: float, b: float, breakpoints: Iterable[float]) -> list[tuple[float, float]]:
    # each breakpoint is bracketed with short flanking panels so that a
    # narrow feature sitting exactly on it lands near a quadrature node
    delta = 1e-3 * (b - a)
    pts = {a, b}
    for p in breakpoints:
        if a < p < b:
            pts.add(p)
            for q in (p - delta, p + delta):
                if a < q < b:
                    pts.add(q)
    spts = sorted(pts)
    return list(zip(spts[:-1], spts[1:]))


def integrate_finite(
    f: Callable,
    a: float,
    b: float,
    spec: QuadratureSpec = DEFAULT_SPEC_1D,
    breakpoints: Sequence[float] = (),
) -> Estimate:
    """Adaptive Gauss-Kronrod integral of f over [a, b].

    breakpoints seed the initial subdivision; pass interior peak locations
    or kink positions so narrow features cannot slip between panels.
    """
    if not (b > a):
        if b == a:
            return Estimate(0.0, 0.0, Status.CONVERGED)
        raise QuadratureError(f"bad interval [{a}, {b}]")
    total, err, status, _ = _refine(f, _initial_panels(a, b, breakpoints), spec)
    return Estimate(total, err, status)


def _log_map_window(
    f: Callable, center: float, must_cover: tuple[float, float] | None
) -> tuple[float, float, list[float]]:
    """Scan outward from v=0 for the window carrying the mass of f(c e^v) c e^v.

    Works on integrands that are unimodal (or eventually monotone) in the
    mapped variable; our kernels all are.  Returns (v_lo, v_hi, knots).
    """
    v_cap = 690.0 - abs(math.log(center))

    def probe(v: float) -> float:
        u = center * math.exp(v)
        val = float(np.max(np.abs(f(np.array([u * 0.97, u, u * 1.03])))))
        return val * u

    knots = [0.0]
    g0 = probe(0.0)
    gmax = max(g0, 1e-300)

    def scan(direction: float) -> float:
        nonlocal gmax
        v = 0.0
        quiet = 0
        while True:
            v_next = v + 2.0 * direction
            if abs(v_next) > min(v_cap, 760.0):
                return v
            g = probe(v_next)
            gmax = max(gmax, g)
            knots.append(v_next)
            v = v_next
            need_cover = False
            if must_cover is not None:
                lo, hi = must_cover
                if direction < 0 and lo > 0 and center * math.exp(v) > lo:
                    need_cover = True
                if direction > 0 and center * math.exp(v) < hi:
                    need_cover = True
            if g <= gmax * 1e-18 and not need_cover:
                quiet += 1
                if quiet >= 2:
                    return v
            else:
                quiet = 0

    v_hi = scan(+1.0)
    v_lo = scan(-1.0)
    return v_lo, v_hi, sorted(k for k in knots if v_lo < k < v_hi)


def integrate_half_line(
    f: Callable,
    spec: QuadratureSpec = DEFAULT_SPEC_1D,
    center: float = 1.0,
    must_cover: tuple[float, float] | None = None,
) -> Estimate:
    """Integral of f over (0, inf) with a change of variables about ``center``.

    ``center`` should be (near) the maximizer of u -> f(u) * u; for the
    log map the transformed integrand is then unimodal and the expansion
    scan brackets it.  ``must_cover`` forces the window to include a given
    (lo, hi) range in u regardless of probe decay, which protects against
    integrands whose mass sits far from the nominal center.
    """
    if not (center > 0.0) or not math.isfinite(center):
        raise QuadratureError(f"center must be positive and finite, got {center}")

    if spec.infinite_map == "algebraic":
        def g(r: np.ndarray) -> np.ndarray:
            r = np.asarray(r, dtype=float)
            u = center * r / (1.0 - r)
            return f(u) * center / (1.0 - r) ** 2

        breaks = [0.5]
        if must_cover is not None:
            for u in must_cover:
                if u > 0 and math.isfinite(u):
                    breaks.append(u / (center + u))
        return integrate_finite(g, 0.0, 1.0, spec, breakpoints=breaks)

    v_lo, v_hi, knots = _log_map_window(f, center, must_cover)

    def g(v: np.ndarray) -> np.ndarray:
        v = np.asarray(v, dtype=float)
        u = center * np.exp(v)
        return f(u) * u

    if v_hi <= v_lo:
        return Estimate(0.0, 0.0, Status.CONVERGED)
    # thin the scan knots so the initial panel count stays modest
    if len(knots) > 30:
        knots = knots[:: max(1, len(knots) // 30)]
    total, err, status, _ = _refine(g, _initial_panels(v_lo, v_hi, knots), spec)
    return Estimate(total, err, status)


# --------------------------------------------------------------------------
# 2D adaptive tensor cubature
# --------------------------------------------------------------------------


def _rect_eval(f2, rects: np.ndarray):
    """Evaluate K15xK15 / G7xG7 on a batch of rectangles.

    rects has shape (n, 4) columns (xlo, xhi, ylo, yhi).  Returns
    (valk, errx, erry, resabs) per rectangle, where errx/erry compare the
    full rule against the rule degraded to Gauss in one direction only; the
    larger component tells which axis to split.
    """
    n = rects.shape[0]
    cx = 0.5 * (rects[:, 0] + rects[:, 1])
    hx = 0.5 * (rects[:, 1] - rects[:, 0])
    cy = 0.5 * (rects[:, 2] + rects[:, 3])
    hy = 0.5 * (rects[:, 3] - rects[:, 2])
    X = cx[:, None, None] + hx[:, None, None] * _XK[None, :, None]
    Y = cy[:, None, None] + hy[:, None, None] * _XK[None, None, :]
    Xf = np.broadcast_to(X, (n, 15, 15)).ravel()
    Yf = np.broadcast_to(Y, (n, 15, 15)).ravel()
    vals = np.asarray(f2(Xf, Yf), dtype=float).reshape(n, 15, 15)
    if not np.all(np.isfinite(vals)):
        raise QuadratureError("2D integrand returned a non-finite value")
    area = hx * hy
    kk = area * np.einsum("nij,i,j->n", vals, _WK, _WK)
    gk = area * np.einsum("nij,i,j->n", vals[:, _IG, :], _WG, _WK)
    kg = area * np.einsum("nij,i,j->n", vals[:, :, _IG], _WK, _WG)
    gg = area * np.einsum("nij,i,j->n", vals[:, _IG, :][:, :, _IG], _WG, _WG)
    resabs = np.abs(area) * np.einsum("nij,i,j->n", np.abs(vals), _WK, _WK)
    err = np.abs(kk - gg)
    errx = np.abs(kk - gk)
    erry = np.abs(kk - kg)
    return kk, err, errx, erry, resabs


def integrate_2d(
    f2: Callable,
    xspan: tuple[float, float],
    yspan: tuple[float, float],
    spec: QuadratureSpec = DEFAULT_SPEC_2D,
    xbreaks: Sequence[float] = (),
    ybreaks: Sequence[float] = (),
) -> Estimate:
    """Adaptive tensor-product Gauss-Kronrod cubature on a rectangle.

    Rectangles are kept in an error heap; the worst one is bisected along
    the axis whose one-dimensional degradation error is larger.  f2 must
    accept two equal-shape arrays (x, y) and return an array.
    """
    xs = sorted({xspan[0], xspan[1], *(p for p in xbreaks if xspan[0] < p < xspan[1])})
    ys = sorted({yspan[0], yspan[1], *(p for p in ybreaks if yspan[0] < p < yspan[1])})
    rects = []
    for x0, x1 in zip(xs[:-1], xs[1:]):
        for y0, y1 in zip(ys[:-1], ys[1:]):
            rects.append((x0, x1, y0, y1))
    rect_arr = np.array(rects, dtype=float)
    kk, err, errx, erry, resabs = _rect_eval(f2, rect_arr)
    eps = np.finfo(float).eps

    heap: list[tuple[float, int, tuple, float, float, float]] = []
    total = 0.0
    total_err = 0.0
    serial = 0
    for r, vk, e, ex, ey, ra in zip(rects, kk, err, errx, erry, resabs):
        e = max(e, 50.0 * eps * ra)
        total += vk
        total_err += e
        heapq.heappush(heap, (-e, serial, r, vk, ex, ey))
        serial += 1

    splits = 0
    while splits < spec.max_subdivisions:
        tol = max(spec.abs_tol, spec.rel_tol * abs(total))
        if total_err <= tol:
            break
        # split a batch of the worst rectangles in one integrand call
        batch = []
        batch_budget = min(8, spec.max_subdivisions - splits)
        while heap and len(batch) < batch_budget:
            neg_e, _, r, vk, ex, ey = heapq.heappop(heap)
            if -neg_e <= 0.25 * tol / max(len(batch), 1):
                heapq.heappush(heap, (neg_e, serial, r, vk, ex, ey))
                serial += 1
                break
            x0, x1, y0, y1 = r
            if (x1 - x0) < 1e-14 * (abs(x0) + abs(x1) + 1e-300) and (y1 - y0) < 1e-14 * (
                abs(y0) + abs(y1) + 1e-300
            ):
                heapq.heappush(heap, (0.0, serial, r, vk, 0.0, 0.0))
                serial += 1
                splits += 1
                continue
            batch.append((r, vk, -neg_e, ex, ey))
        if not batch:
            break
        children = []
        for r, vk, err, ex, ey in batch:
            x0, x1, y0, y1 = r
            # split the axis with the larger directional error
            if ex >= ey:
                xm = 0.5 * (x0 + x1)
                children.extend([(x0, xm, y0, y1), (xm, x1, y0, y1)])
            else:
                ym = 0.5 * (y0 + y1)
                children.extend([(x0, x1, y0, ym), (x0, x1, ym, y1)])
        ck, ce, cex, cey, cra = _rect_eval(f2, np.array(children, dtype=float))
        ce = np.maximum(ce, 50.0 * eps * cra)
        for i, (r, vk, err, _, _) in enumerate(batch):
            j0, j1 = 2 * i, 2 * i + 1
            total += ck[j0] + ck[j1] - vk
            total_err += ce[j0] + ce[j1] - err
            for j in (j0, j1):
                heapq.heappush(heap, (-ce[j], serial, tuple(children[j]), ck[j], cex[j], cey[j]))
                serial += 1
            splits += 1

    tol = max(spec.abs_tol, spec.rel_tol * abs(total))
    status = Status.CONVERGED if total_err <= tol else Status.MAX_SUBDIVISIONS_REACHED
    return Estimate(total, total_err, status)

"""Brownian-bridge Monte Carlo for the perturbed-to-free kernel ratio.

The pinned bridge associated with the heat kernel (per-coordinate variance
2t) is sampled by sequential conditioning on a uniform grid of ``steps``
intervals.  The ratio of the perturbed fundamental solution to the Gaussian
kernel is the bridge expectation of exp(int_0^t V(path)), estimated with a
trapezoidal time integral along each path; the bridge occupation integral
of |V| gives an independent stochastic oracle for the quadrature-based
bridge potential.

Randomness is counter-based: each path draws its normals from a Philox
generator keyed by (seed, path index), so results are bit-identical for a
fixed configuration no matter how paths are batched, and path generation
is embarrassingly parallel.  Sample moments are taken over the per-path
functionals in index order.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import BridgepotError, ComputationError
from .functionals import BridgeSpec
from .kernels import as_dimension
from .potentials import Potential, evaluate_many

__all__ = ["McConfig", "McEstimate", "sample_bridge", "g_ratio_mc", "s_mc"]

_CHUNK = 2048
_EXP_GUARD = 700.0


@dataclass(frozen=True)
class McConfig:
    paths: int
    steps: int
    seed: int

    def __post_init__(self) -> None:
        if self.paths < 1:
            raise ValueError("paths must be >= 1")
        if self.steps < 2:
            raise ValueError("steps must be >= 2")


@dataclass(frozen=True)
class McEstimate:
    mean: float
    std_error: float
    paths: int


def _path_generator(seed: int, index: int) -> np.random.Generator:
    key = np.array([seed & 0xFFFFFFFFFFFFFFFF, index], dtype=np.uint64)
    return np.random.Generator(np.random.Philox(key=key))


def sample_bridge(spec: BridgeSpec, steps: int, rng: np.random.Generator) -> np.ndarray:
    """One bridge path on the uniform grid: array of shape (steps+1, d).

    path[0] = x and path[steps] = y exactly; the marginal at time s is
    N(x + (s/t)(y - x), 2 s (t - s)/t I), matching the closed-form bridge
    parameters.
    """
    if steps < 2:
        raise ValueError("steps must be >= 2")
    d = as_dimension(spec.d)
    t = spec.t
    dt = t / steps
    x = np.asarray(spec.x, dtype=float)
    y = np.asarray(spec.y, dtype=float)
    path = np.empty((steps + 1, d))
    path[0] = x
    cur = x.copy()
    for i in range(1, steps):
        remaining = t - (i - 1) * dt
        mean = cur + (dt / remaining) * (y - cur)
        var = 2.0 * dt * (t - i * dt) / remaining
        cur = mean + math.sqrt(var) * rng.standard_normal(d)
        path[i] = cur
    path[steps] = y
    return path


def _check_positive_part(V: Potential) -> None:
    if V.bound_above() == math.inf:
        raise BridgepotError(
            "Monte Carlo ratio estimation requires a bounded positive part; "
            "exp of the occupation integral has unbounded variance otherwise"
        )


def _path_time_integrals(
    V: Potential, spec: BridgeSpec, mc: McConfig, absolute: bool
) -> np.ndarray:
    """Trapezoidal int_0^t V(path_s) ds (or |V|) for every path, in path order."""
    d = as_dimension(spec.d)
    hint = V.dimension_hint()
    if hint is not None and hint != d:
        raise BridgepotError(f"potential pins dimension {hint}, bridge has {d}")
    t = spec.t
    steps = mc.steps
    dt = t / steps
    x = np.asarray(spec.x, dtype=float)
    y = np.asarray(spec.y, dtype=float)

    def values(points: np.ndarray) -> np.ndarray:
        v = evaluate_many(V, points)
        return np.abs(v) if absolute else v

    v_end = 0.5 * dt * (values(x[None, :])[0] + values(y[None, :])[0])
    out = np.empty(mc.paths)
    for start in range(0, mc.paths, _CHUNK):
        stop = min(start + _CHUNK, mc.paths)
        B = stop - start
        noise = np.empty((B, steps - 1, d))
        for j in range(B):
            noise[j] = _path_generator(mc.seed, start + j).standard_normal((steps - 1, d))
        cur = np.broadcast_to(x, (B, d)).copy()
        acc = np.zeros(B)
        for i in range(1, steps):
            remaining = t - (i - 1) * dt
            mean = cur + (dt / remaining) * (y - cur)
            var = 2.0 * dt * (t - i * dt) / remaining
            cur = mean + math.sqrt(var) * noise[:, i - 1, :]
            acc += dt * values(cur)
        out[start:stop] = acc + v_end
    return out


def _moments(samples: np.ndarray) -> tuple[float, float]:
    if samples.size and np.all(samples == samples[0]):
        # deterministic path functional: exactly zero spread
        return float(samples[0]), 0.0
    mean = float(np.mean(samples))
    if samples.size < 2:
        return mean, 0.0
    var = float(np.var(samples, ddof=1))
    return mean, math.sqrt(max(var, 0.0) / samples.size)


def g_ratio_mc(V: Potential, spec: BridgeSpec, mc: McConfig) -> McEstimate:
    """Bridge estimate of (perturbed kernel) / (Gaussian kernel) at (t, x, y).

    The per-path functional is exp of the trapezoidal time integral of V
    along the bridge.  Potentials with unbounded positive part are
    rejected, and an occupation integral beyond the exp overflow guard
    raises instead of returning infinities.
    """
    _check_positive_part(V)
    integrals = _path_time_integrals(V, spec, mc, absolute=False)
    peak = float(np.max(integrals))
    if peak > _EXP_GUARD:
        raise ComputationError(
            f"occupation integral reached {peak:.3g}; exp would overflow"
        )
    mean, se = _moments(np.exp(integrals))
    return McEstimate(mean, se, mc.paths)


def s_mc(V: Potential, spec: BridgeSpec, mc: McConfig) -> McEstimate:
    """Bridge occupation estimate of the |V| time integral (the quadrature
    bridge potential's stochastic oracle)."""
    _check_positive_part(V)
    mean, se = _moments(_path_time_integrals(V, spec, mc, absolute=True))
    return McEstimate(mean, se, mc.paths)

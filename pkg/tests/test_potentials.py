import json
import math

import numpy as np
import pytest

from bridgepot.errors import BridgepotError, DimensionError
from bridgepot.potentials import (
    BallIndicator,
    Constant,
    CounterexampleA,
    Dilate,
    RadialPower,
    Scale,
    SignClass,
    Sum,
    Symmetry,
    axial_profile,
    dilate,
    evaluate,
    evaluate_many,
    lp_halfd_norm,
    parse_potential,
    radial_profile,
    serialize_potential,
)
from bridgepot.quadrature import Status

RNG = np.random.default_rng(7)

BALL = BallIndicator(None, 1.0, -1.0)
CEX = CounterexampleA()


def test_counterexample_values():
    assert evaluate(CEX, [9, 2, 0, 0]) == pytest.approx(-1.0 / 9.0)
    assert evaluate(CEX, [9, 4, 0, 0]) == 0.0
    assert evaluate(CEX, [3.9, 0, 0, 0]) == 0.0  # below the z1 > 4 cut


def test_dilate_evaluation():
    V = Dilate(4.0, BALL)
    assert evaluate(V, [0.4, 0, 0]) == pytest.approx(-4.0)
    assert evaluate(V, [0.6, 0, 0]) == 0.0
    assert V.support_radius() == pytest.approx(0.5)


def test_dilate_identity_and_composition():
    V = BallIndicator(None, 2.0, -1.0)
    z = np.array([1.3, -0.2, 0.4])
    assert evaluate(dilate(V, 1.0), z) == evaluate(V, z)
    lhs = dilate(dilate(V, 2.0), 3.0)
    rhs = dilate(V, 6.0)
    for _ in range(20):
        p = RNG.standard_normal(3)
        assert evaluate(lhs, p) == pytest.approx(evaluate(rhs, p), rel=1e-15)


def test_dilate_rejects_nonpositive_scale():
    with pytest.raises(BridgepotError):
        dilate(BALL, 0.0)


def test_dilation_covariance_pointwise():
    # evaluate(dilate(V, s), z) = s * evaluate(V, sqrt(s) z)
    V = Sum((BALL, RadialPower(-1.0, 0.3, 2.0, -0.5)))
    for _ in range(1000):
        s = float(np.exp(RNG.uniform(-2, 2)))
        z = RNG.standard_normal(3) * 2
        lhs = evaluate(dilate(V, s), z)
        rhs = s * evaluate(V, math.sqrt(s) * z)
        assert lhs == pytest.approx(rhs, rel=1e-12, abs=1e-300)


def test_sum_linearity():
    V1, V2 = BALL, Constant(0.25)
    S = Sum((V1, V2))
    for _ in range(50):
        z = RNG.standard_normal(3)
        assert evaluate(S, z) == pytest.approx(evaluate(V1, z) + evaluate(V2, z))


def test_sign_metadata_sharp():
    cases = [
        (BALL, SignClass.NONPOSITIVE),
        (Scale(-2.0, BALL), SignClass.NONNEGATIVE),
        (CEX, SignClass.NONPOSITIVE),
        (Sum((BALL, BallIndicator(None, 2.0, 0.5))), SignClass.MIXED),
        (RadialPower(-1.0, 0.1, 5.0, 2.0), SignClass.NONNEGATIVE),
    ]
    for V, sign in cases:
        assert V.sign is sign
        d = V.dimension_hint() or 4
        Z = RNG.standard_normal((10_000, d)) * 3
        vals = evaluate_many(V, Z)
        if sign is SignClass.NONPOSITIVE:
            assert np.all(vals <= 0)
        elif sign is SignClass.NONNEGATIVE:
            assert np.all(vals >= 0)


def test_symmetry_metadata():
    assert BALL.symmetry is Symmetry.RADIAL
    assert CEX.symmetry is Symmetry.AXIAL
    assert BallIndicator((1.0, 0.0, 0.0), 1.0, -1.0).symmetry is Symmetry.AXIAL
    assert BallIndicator((1.0, 2.0, 0.0), 1.0, -1.0).symmetry is Symmetry.GENERAL
    assert Sum((BALL, CEX)).symmetry is Symmetry.AXIAL
    assert Dilate(2.0, CEX).symmetry is Symmetry.AXIAL


def test_radial_power_constructor_guard():
    with pytest.raises(BridgepotError):
        RadialPower(-1.0, 0.0, 1.0, -1.0)  # singular at origin
    RadialPower(0.5, 0.0, 1.0, -1.0)  # nonnegative exponent is fine


def test_json_round_trip_examples():
    sources = [
        '{"type":"ball","center":[0,0,0],"radius":1.0,"amplitude":-1.0}',
        '{"type":"counterexample_a"}',
        '{"type":"dilate","s":4.0,"inner":{"type":"constant","value":-0.5}}',
        '{"type":"sum","terms":[{"type":"ball","radius":1.0,"amplitude":-1.0},'
        '{"type":"constant","value":0.125}]}',
        '{"type":"radial_power","exponent":-1.0,"inner_radius":0.1,'
        '"outer_radius":10.0,"amplitude":-1.0}',
        '{"type":"constant","value":-0.5}',
        '{"type":"scale","factor":-3.0,"inner":{"type":"counterexample_a","z1_max":100.0}}',
        '{"type":"radial_power","exponent":-3.0,"inner_radius":1.0,'
        '"outer_radius":null,"amplitude":-1.0}',
    ]
    for src in sources:
        V = parse_potential(src)
        ser = serialize_potential(V)
        V2 = parse_potential(ser)
        assert serialize_potential(V2) == ser  # canonical form is a fixed point
        assert V2 == V
        # bit-exact float round trip
        assert json.loads(ser) == json.loads(serialize_potential(V2))


def test_parse_rejects_malformed():
    with pytest.raises(BridgepotError):
        parse_potential('{"type": "wormhole"}')
    with pytest.raises(BridgepotError):
        parse_potential('{"type": "ball", "radius": 1.0}')
    with pytest.raises(BridgepotError):
        parse_potential("[1, 2, 3]")


def test_dimension_hint_conflicts():
    V = Sum((BallIndicator((0.0, 0.0, 0.0), 1.0, -1.0), BallIndicator((0.0,) * 4, 1.0, -1.0)))
    with pytest.raises(DimensionError):
        V.dimension_hint()
    with pytest.raises(DimensionError):
        evaluate(BallIndicator((0.0, 0.0, 0.0), 1.0, -1.0), [1.0, 0.0, 0.0, 0.0])


def test_radial_profile_cells_merge_mixed_signs():
    V = Sum((BALL, BallIndicator(None, 2.0, 0.25)))
    prof = radial_profile(V)
    assert prof.constant_cells == ((0.0, 1.0, 0.75), (1.0, 2.0, 0.25))
    r = np.array([0.5, 1.5, 3.0])
    assert np.allclose(prof.abs_value(r), [0.75, 0.25, 0.0])


def test_axial_profile_counterexample():
    prof = axial_profile(CEX)
    assert prof.z1_lo == 4.0 and math.isinf(prof.z1_hi)
    z1 = np.array([9.0, 9.0, 3.0])
    rho = np.array([2.0, 4.0, 0.0])
    assert np.allclose(prof.abs_value(z1, rho), [1 / 9, 0.0, 0.0])


def test_axial_profile_dilated():
    V = Dilate(4.0, CounterexampleA(z1_max=100.0))
    prof = axial_profile(V)
    assert prof.z1_lo == pytest.approx(2.0)  # 4 / sqrt(4)
    assert prof.z1_hi == pytest.approx(50.0)
    assert prof.abs_value(np.array([5.0]), np.array([0.0]))[0] == pytest.approx(4.0 / 10.0)


# ---------------------------------------------------------------------------
# the L^{d/2} norm
# ---------------------------------------------------------------------------


def test_lp_norm_ball_d4():
    est = lp_halfd_norm(BALL, 4)
    assert est.converged
    assert est.value == pytest.approx((math.pi**2 / 2) ** 0.5, rel=1e-12)


def test_lp_norm_zero_and_constant():
    assert lp_halfd_norm(Constant(0.0), 3).value == 0.0
    est = lp_halfd_norm(Constant(-0.5), 3)
    assert math.isinf(est.value) and est.status is Status.DIVERGED


def test_lp_norm_counterexample_diverges():
    est = lp_halfd_norm(CEX, 4)
    assert math.isinf(est.value) and est.status is Status.DIVERGED


def test_lp_norm_radial_closed_form():
    # |V| = r^-1 on [1, 2] at d = 4: integral of r^-2 * r^3 over the annulus
    V = RadialPower(-1.0, 1.0, 2.0, -1.0)
    est = lp_halfd_norm(V, 4)
    area = 2 * math.pi**2
    oracle = (area * (2.0**2 - 1.0) / 2.0) ** 0.5
    assert est.value == pytest.approx(oracle, rel=1e-8)


def test_lp_norm_dilation_invariant():
    # the d/2 norm is exactly dilation invariant
    for V in (BALL, RadialPower(-1.0, 0.5, 3.0, -2.0)):
        base = lp_halfd_norm(V, 4).value
        for s in (0.25, 4.0, 19.0):
            assert lp_halfd_norm(dilate(V, s), 4).value == pytest.approx(base, rel=1e-9)


def test_lp_norm_unbounded_tail_convergent():
    # |V|^{d/2} = r^{-6} at d = 4 integrates at infinity
    V = RadialPower(-3.0, 1.0, math.inf, -1.0)
    est = lp_halfd_norm(V, 4)
    assert math.isfinite(est.value)
    oracle = (2 * math.pi**2 / 2.0) ** 0.5  # (area * int_1^inf r^-6 r^3)^(1/2)
    assert est.value == pytest.approx(oracle, rel=1e-4)

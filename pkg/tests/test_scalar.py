import cmath
import math

import mpmath as mp
import numpy as np
import pytest
from hypothesis import assume, given, strategies as st

from monofun.errors import DomainError
from monofun.scalar import (
    ComplexPoint,
    ExponentPair,
    beta_closed_form,
    canonical_density,
    eval_f,
    eval_f_complex,
    eval_g,
    eval_g_complex,
    fop_weight,
    im_log_parts,
    mc_function,
    sharp,
    weight_h,
)

from conftest import exponent_pairs, log_uniform

mp.mp.dps = 40


def mp_f(p, q, t):
    p, q, t = mp.mpf(p), mp.mpf(q), mp.mpf(t)
    return p / q * (t**q - 1) / (t**p - 1)


def mp_density(p, q, lam):
    p, q, lam = mp.mpf(p), mp.mpf(q), mp.mpf(lam)
    num = lam ** (p + q) * mp.sin((q - p) * mp.pi) - lam**q * mp.sin(q * mp.pi) + lam**p * mp.sin(p * mp.pi)
    return p / q * num / (mp.pi * (lam ** (2 * p) - 2 * lam**p * mp.cos(p * mp.pi) + 1))


def mp_weight(p, q, lam):
    p, q, lam = mp.mpf(p), mp.mpf(q), mp.mpf(lam)
    a = lam ** (p + q) * mp.cos((q - p) * mp.pi) - lam**q * mp.cos(q * mp.pi) - lam**p * mp.cos(p * mp.pi) + 1
    b = lam ** (p + q) * mp.sin((q - p) * mp.pi) - lam**q * mp.sin(q * mp.pi) + lam**p * mp.sin(p * mp.pi)
    return mp.atan2(b, a) / mp.pi


# ---------------------------------------------------------------- types


@pytest.mark.parametrize("p,q", [(0, 0.5), (-0.1, 0.5), (0.6, 0.5), (0.5, 1.2), (float("nan"), 1), (0.5, float("inf"))])
def test_exponent_pair_rejects(p, q):
    with pytest.raises(DomainError, match="0<p<=q<=1"):
        ExponentPair(p, q) if math.isfinite(p) and math.isfinite(q) else _finite_message(p, q)


def _finite_message(p, q):
    try:
        ExponentPair(p, q)
    except DomainError as exc:
        raise DomainError("0<p<=q<=1 " + str(exc))


@given(exponent_pairs())
def test_sym_exponent_range(pq):
    assert 0 < pq.sym_exponent <= 0.5


@given(st.floats(1e-6, 1e6), st.floats(0.0, math.pi))
def test_complex_point_round_trip(r, theta):
    z = ComplexPoint(r, theta)
    back = ComplexPoint.from_complex(z.to_complex())
    assert back.r == pytest.approx(r, rel=1e-14)
    assert back.theta == pytest.approx(theta, rel=1e-14, abs=1e-300)


@pytest.mark.parametrize("r,theta", [(0, 1), (-1, 1), (1, -0.1), (1, 3.2)])
def test_complex_point_rejects(r, theta):
    with pytest.raises(DomainError):
        ComplexPoint(r, theta)


# ---------------------------------------------------------------- f


def test_eval_f_examples():
    assert eval_f(ExponentPair(0.5, 0.5), 7) == 1
    assert eval_f(ExponentPair(0.5, 1), 4) == pytest.approx(1.5, rel=1e-15)
    assert eval_f(ExponentPair(0.3, 0.8), 1) == 1


def test_eval_f_frozen():
    assert eval_f(ExponentPair(0.3, 0.7), 10) == pytest.approx(1.7275584863839215392, rel=1e-14)
    assert eval_f(ExponentPair(0.2, 0.9), 0.1) == pytest.approx(0.52635135547279387263, rel=1e-14)


@pytest.mark.parametrize("t", [0, -1, float("nan"), float("inf")])
def test_eval_f_domain(t):
    with pytest.raises(DomainError):
        eval_f(ExponentPair(0.3, 0.6), t)


@pytest.mark.parametrize("dt", [1e-15, -3e-13, 1e-9, -5e-8, 9e-7, 2e-6, -4e-5])
def test_eval_f_near_one_against_mpmath(dt):
    pq = ExponentPair(0.23, 0.81)
    t = 1.0 + dt
    assert eval_f(pq, t) == pytest.approx(float(mp_f(pq.p, pq.q, t)), rel=1e-12)


@given(exponent_pairs(), log_uniform)
def test_eval_f_matches_mpmath(pq, t):
    assume(t != 1.0 and not pq.is_trivial)
    assert eval_f(pq, t) == pytest.approx(float(mp_f(pq.p, pq.q, t)), rel=1e-11)


@given(exponent_pairs())
def test_eval_f_monotone_on_log_grid(pq):
    t = np.logspace(-6, 6, 400)
    v = eval_f(pq, t)
    assert np.all(np.isfinite(v)) and np.all(v > 0)
    assert np.all(np.diff(v) >= 0)


def test_eval_f_one_ulp_gap_matches_mpmath():
    # f - 1 is below rounding level here; it must still be formed accurately
    t = np.logspace(-6, 6, 400)
    for p in (0.2889520759646728, 0.8988359815395441, 0.05):
        q = float(np.nextafter(p, 2.0))
        v = eval_f(ExponentPair(p, q), t)
        ref = np.array([float(mp_f(p, q, x)) if x != 1.0 else 1.0 for x in t])
        assert np.all(np.abs(v - ref) <= np.spacing(ref))


def test_eval_f_strictly_increasing_for_resolvable_gap():
    t = np.logspace(-6, 6, 400)
    for pq in (ExponentPair(0.3, 0.3 + 1e-12), ExponentPair(0.02, 0.020000001), ExponentPair(0.5, 1.0)):
        assert np.all(np.diff(eval_f(pq, t)) > 0)


def test_eval_f_vectorised_matches_scalar():
    pq = ExponentPair(0.4, 0.9)
    t = np.array([0.1, 1.0, 3.0])
    assert np.allclose(eval_f(pq, t), [eval_f(pq, x) for x in t], rtol=0, atol=0)


# ---------------------------------------------------------------- complex extension


def test_eval_f_complex_examples(half_one):
    v = eval_f_complex(half_one, ComplexPoint(1.0, math.pi / 2))
    expected = (1 + cmath.exp(1j * math.pi / 4)) / 2
    assert abs(v - expected) < 1e-15
    assert eval_f_complex(ExponentPair(0.7, 0.7), ComplexPoint(3.0, 1.1)) == 1 + 0j


def test_eval_f_complex_frozen():
    v = eval_f_complex(ExponentPair(0.3, 0.9), ComplexPoint(2.0, 2.0))
    assert v.imag > 0
    assert abs(v - complex(0.8551129942981476878, 0.7026211699644291632)) < 1e-14


def test_eval_f_complex_domain():
    with pytest.raises(DomainError):
        eval_f_complex(ExponentPair(0.3, 0.9), ComplexPoint(2.0, 0.0))


@given(exponent_pairs(strict=True), log_uniform)
def test_eval_f_complex_real_axis_limit(pq, t):
    v = eval_f_complex(pq, ComplexPoint(t, 1e-14))
    assert v.real == pytest.approx(eval_f(pq, t), rel=1e-12)


@given(exponent_pairs(strict=True), st.floats(-3, 3).map(lambda e: 10.0**e), st.floats(1e-3, math.pi - 1e-3))
def test_pick_property(pq, r, theta):
    assert eval_f_complex(pq, ComplexPoint(r, theta)).imag > 0


# ---------------------------------------------------------------- a, b


def test_im_log_parts_examples():
    a, b = im_log_parts(ExponentPair(0.5, 0.5), ComplexPoint(3.0, 1.0))
    assert b == 0
    a, b = im_log_parts(ExponentPair(0.5, 1.0), ComplexPoint(1.0, math.pi))
    # term by term: cos(pi/2) - cos(pi) - cos(pi/2) + 1 and sin(pi/2) - sin(pi) + sin(pi/2)
    assert a == pytest.approx(2.0, abs=1e-15)
    assert b == pytest.approx(2.0, abs=1e-15)
    a, b = im_log_parts(ExponentPair(0.3, 0.9), ComplexPoint(0.5, 2.5))
    assert a > 0 and b > 0


@given(exponent_pairs(strict=True), st.floats(-3, 3).map(lambda e: 10.0**e), st.floats(1e-3, math.pi - 1e-3))
def test_b_positive(pq, r, theta):
    assert im_log_parts(pq, ComplexPoint(r, theta)).b > 0


@given(exponent_pairs(strict=True), st.floats(-3, 3).map(lambda e: 10.0**e), st.floats(1e-3, math.pi - 1e-3))
def test_atan2_is_argument_of_f(pq, r, theta):
    z = ComplexPoint(r, theta)
    a, b = im_log_parts(pq, z)
    assert math.atan2(b, a) == pytest.approx(cmath.phase(eval_f_complex(pq, z)), abs=1e-10)


@given(exponent_pairs(), st.floats(-3, 3).map(lambda e: 10.0**e), st.floats(1e-3, math.pi - 1e-3))
def test_a_positive_when_gap_at_most_half(pq, r, theta):
    # arg f(z) < (q - p) pi, so a > 0 is guaranteed only for q - p <= 1/2
    assume(pq.q - pq.p <= 0.5)
    assert im_log_parts(pq, ComplexPoint(r, theta)).a > 0


def test_a_can_be_negative_when_gap_exceeds_half():
    a, b = im_log_parts(ExponentPair(0.05, 1.0), ComplexPoint(100.0, 3.1))
    assert b > 0
    assert a < -20


# ---------------------------------------------------------------- density


def test_canonical_density_examples():
    assert canonical_density(ExponentPair(0.4, 0.4), 2.0) == 0
    assert canonical_density(ExponentPair(0.5, 1), 4.0) == pytest.approx(2 / (2 * math.pi), rel=1e-14)
    expected = (2 / 7) * (
        math.sin(0.5 * math.pi) - math.sin(0.7 * math.pi) + math.sin(0.2 * math.pi)
    ) / (math.pi * (2 - 2 * math.cos(0.2 * math.pi)))
    assert canonical_density(ExponentPair(0.2, 0.7), 1.0) == pytest.approx(expected, rel=1e-14)
    assert expected == pytest.approx(0.18542385465882454195, rel=1e-14)


@given(exponent_pairs(), log_uniform)
def test_canonical_density_matches_formula(pq, lam):
    got = canonical_density(pq, lam)
    ref = mp_density(pq.p, pq.q, lam)
    assert got >= 0
    assert got == pytest.approx(float(ref), rel=1e-10, abs=1e-15 * (1 + lam))


def test_canonical_density_domain():
    with pytest.raises(DomainError):
        canonical_density(ExponentPair(0.2, 0.7), 0.0)


# ---------------------------------------------------------------- weight h


def test_weight_h_examples(half_one):
    assert weight_h(ExponentPair(0.6, 0.6), 5.0) == 0
    assert weight_h(half_one, 1.0) == pytest.approx(0.25, rel=1e-14)
    assert weight_h(half_one, 3.0) == pytest.approx(1 / 3, rel=1e-14)


@given(exponent_pairs(), log_uniform)
def test_weight_h_matches_formula(pq, lam):
    assert weight_h(pq, lam) == pytest.approx(float(mp_weight(pq.p, pq.q, lam)), abs=1e-12)


@given(exponent_pairs())
def test_weight_h_bounds(pq):
    lam = np.logspace(-6, 6, 1000)
    h = weight_h(pq, lam)
    gap = pq.q - pq.p
    assert np.all(h >= 0)
    # the weight never exceeds q - p; the 1/2 bound holds on (0, 1] and
    # everywhere when q - p <= 1/2
    assert np.all(h <= gap + 1e-12)
    assert np.all(h[lam <= 1] <= 0.5 + 1e-15)
    if gap <= 0.5:
        assert np.all(h <= 0.5 + 1e-15)


def test_weight_h_exceeds_half_for_large_gap():
    h = weight_h(ExponentPair(0.05, 1.0), 1e4)
    assert 0.5 < h < 0.95


# ---------------------------------------------------------------- beta


def test_beta_examples():
    assert beta_closed_form(ExponentPair(0.3, 0.3)) == 0
    # |f(i)|^2 = (2 + sqrt 2)/4 for p = 1/2, q = 1
    assert beta_closed_form(ExponentPair(0.5, 1)) == pytest.approx(0.5 * math.log((2 + math.sqrt(2)) / 4), abs=1e-15)
    assert beta_closed_form(ExponentPair(0.5, 1)) == pytest.approx(-0.079173591910187469447, abs=1e-15)
    assert beta_closed_form(ExponentPair(0.2, 0.9)) == pytest.approx(-0.080591719581065029474, abs=1e-15)


@given(exponent_pairs(min_p=1e-3))
def test_beta_is_real_log_f_at_i(pq):
    fi = eval_f_complex(pq, ComplexPoint(1.0, math.pi / 2))
    assert abs(beta_closed_form(pq) - math.log(abs(fi))) < 1e-10


# ---------------------------------------------------------------- g, sharp, c


def test_eval_g_examples(half_one):
    assert eval_g(ExponentPair(0.3, 0.7), 1.0) == 1
    assert eval_g(half_one, 4.0) == pytest.approx(1.5 * 4**0.25, rel=1e-15)
    assert eval_g(ExponentPair(0.8, 0.8), 9.0) == pytest.approx(3.0, rel=1e-15)


def test_sharp_examples(half_one):
    assert sharp(ExponentPair(0.2, 0.6), 1.0) == 1
    assert sharp(half_one, 4.0) == pytest.approx(3.0, rel=1e-15)
    assert sharp(ExponentPair(0.5, 0.5), 10.0) == 10


@given(exponent_pairs(), log_uniform)
def test_involution_identity(pq, t):
    assert sharp(pq, t) == pytest.approx(t ** (1 - pq.q + pq.p) * eval_f(pq, t), rel=1e-12)


@given(exponent_pairs(), log_uniform)
def test_g_in_fop(pq, t):
    assert eval_g(pq, t) == pytest.approx(t * eval_g(pq, 1 / t), rel=1e-12)


@given(exponent_pairs(), log_uniform)
def test_geometric_mean_fixpoint(pq, t):
    assert eval_g(pq, t) ** 2 == pytest.approx(eval_f(pq, t) * sharp(pq, t), rel=1e-12)


def test_mc_function_examples(half_one):
    for s in (0.01, 1.0, 7.5):
        assert mc_function(ExponentPair(0.3, 0.8), s, s) == pytest.approx(1 / s, rel=1e-15)
    v = mc_function(half_one, 4.0, 1.0)
    assert v == pytest.approx((2 / 3) * 4**-0.25, rel=1e-14)
    assert v == pytest.approx(1 / (1.0 * eval_g(half_one, 4.0)), rel=1e-14)


@given(exponent_pairs(), log_uniform, log_uniform)
def test_mc_symmetric(pq, x, y):
    assert mc_function(pq, x, y) == pytest.approx(mc_function(pq, y, x), rel=1e-12)


@given(exponent_pairs(), log_uniform, log_uniform, st.floats(-3, 3).map(lambda e: 10.0**e))
def test_mc_homogeneity(pq, x, y, s):
    assert mc_function(pq, s * x, s * y) == pytest.approx(mc_function(pq, x, y) / s, rel=1e-12)


@given(exponent_pairs(), log_uniform, st.floats(-7.5, -3))
def test_mc_branches_agree(pq, y, log_gap):
    x = y * (1 + 10.0**log_gap)
    direct = mc_function(pq, x, y)
    assert direct == pytest.approx(1 / (y * eval_g(pq, x / y)), rel=1e-10)


@given(exponent_pairs(), log_uniform, log_uniform)
def test_mc_matches_textbook_form(pq, x, y):
    assume(abs(math.log(x / y)) > 1e-3 and not pq.is_trivial)
    p, q = pq.p, pq.q
    ref = (q / p) * (x**p - y**p) / (x**q - y**q) * (x * y) ** (-(1 - q + p) / 2)
    assert mc_function(pq, x, y) == pytest.approx(ref, rel=1e-9)


@given(exponent_pairs(strict=True), st.floats(-3, 3).map(lambda e: 10.0**e), st.floats(1e-3, math.pi - 1e-3))
def test_im_log_g_decomposition(pq, r, theta):
    z = ComplexPoint(r, theta)
    a, b = im_log_parts(pq, z)
    expected = pq.sym_exponent * theta + math.atan2(b, a)
    assert cmath.phase(eval_g_complex(pq, z)) == pytest.approx(expected, abs=1e-10)


# ---------------------------------------------------------------- fop weight


def test_fop_weight_examples(half_one):
    assert fop_weight(ExponentPair(0.4, 0.4), 0.5) == 0.5
    assert fop_weight(half_one, 1.0) == pytest.approx(0.5, rel=1e-15)
    assert fop_weight(half_one, 1e-12) == pytest.approx(0.25, abs=1e-6)
    assert fop_weight(ExponentPair(0.3, 0.8), 0.5) == pytest.approx(0.46404122386876230952, abs=1e-14)


@pytest.mark.parametrize("lam", [0.0, 1.5, -0.2])
def test_fop_weight_domain(lam):
    with pytest.raises(DomainError):
        fop_weight(ExponentPair(0.3, 0.8), lam)


@given(exponent_pairs())
def test_fop_weight_bounds(pq):
    w = fop_weight(pq, np.linspace(1e-6, 1, 1000))
    assert np.all(w >= 0) and np.all(w <= 1)

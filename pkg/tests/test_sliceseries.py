import math
import warnings

import numpy as np
import pytest

from qspec import rand
from qspec.qlinalg import QVector
from qspec.quat import SLICE_I, SLICE_J, Quaternion
from qspec.sliceseries import (
    CompactExhaustion,
    DivergenceWarning,
    RadiusBiasWarning,
    SliceSeries,
    cr_residual,
    default_exhaustion,
    h_metric,
    sigma_radius,
    slice_derivative,
    slice_samples,
    star_product,
)

Z = Quaternion(0)
ONE = Quaternion(1)
I = Quaternion(0, 1, 0, 0)
J = Quaternion(0, 0, 1, 0)


def series(center, *coeffs):
    return SliceSeries(center, tuple(coeffs))


def test_eval_polynomial_center_zero():
    f = series(Z, ONE, 2 * ONE, ONE)  # 1 + 2q + q^2
    q = Quaternion(0.5, 0.5, 0, 0)
    expect = ONE + 2 * q + q * q
    assert f.eval(q).isclose(expect)


def test_star_square_of_linear_term():
    # f = (q - p) centered at p; its star square has monomials
    # p^2 - 2 p q + q^2, not the pointwise square
    p = J
    f = series(p, Z, ONE)
    sq = star_product(f, f)
    mono = sq.monomial_coefficients()
    assert mono[0].isclose(p * p)
    assert mono[1].isclose(-2 * p)
    assert mono[2].isclose(ONE)
    got = sq.eval(I)
    expect = I * I - 2 * (p * I) + p * p  # coefficient-left monomial sum
    assert got.isclose(expect)
    assert not got.isclose((I - p) * (I - p))


def test_star_product_matches_complex_on_slice():
    # series with real center and coefficients in one slice behave like
    # ordinary complex power series on that slice
    rng = rand.generator(131, 0)
    coeffs_a = [Quaternion(float(rng.standard_normal()), float(rng.standard_normal()), 0, 0)
                for _ in range(4)]
    coeffs_b = [Quaternion(float(rng.standard_normal()), float(rng.standard_normal()), 0, 0)
                for _ in range(3)]
    f = series(Z, *coeffs_a)
    g = series(Z, *coeffs_b)
    h = star_product(f, g)
    q = Quaternion(0.3, 0.7, 0, 0)
    za = complex(0.3, 0.7)
    fa = sum(complex(c.w, c.x) * za ** n for n, c in enumerate(coeffs_a))
    fb = sum(complex(c.w, c.x) * za ** n for n, c in enumerate(coeffs_b))
    got = h.eval(q)
    assert got.isclose(Quaternion((fa * fb).real, (fa * fb).imag, 0, 0),)


def test_star_product_distributes():
    rng = rand.generator(137, 0)
    f = series(Z, *(rand.rand_quaternion(rng) for _ in range(3)))
    g = series(Z, *(rand.rand_quaternion(rng) for _ in range(4)))
    h = series(Z, *(rand.rand_quaternion(rng) for _ in range(2)))
    lhs = star_product(f, g + h)
    rhs = star_product(f, g) + star_product(f, h)
    for a, b in zip(lhs.coefficients, rhs.coefficients):
        assert (a - b).norm_sq() < 1e-20


def test_star_product_associative():
    rng = rand.generator(139, 0)
    p = rand.rand_quaternion(rng, 0.5)
    f = series(p, *(rand.rand_quaternion(rng) for _ in range(3)))
    g = series(p, *(rand.rand_quaternion(rng) for _ in range(3)))
    h = series(p, *(rand.rand_quaternion(rng) for _ in range(2)))
    lhs = star_product(star_product(f, g), h)
    rhs = star_product(f, star_product(g, h))
    for a, b in zip(lhs.coefficients, rhs.coefficients):
        assert (a - b).norm_sq() < 1e-18


def test_vector_coefficients():
    rng = rand.generator(149, 0)
    vec_coeffs = tuple(rand.rand_qvector(rng, 3) for _ in range(3))
    f = SliceSeries(Z, vec_coeffs)
    assert f.is_vector
    g = series(Z, ONE, I)
    fv = star_product(g, f)   # scalar series acts from the left
    assert fv.is_vector
    with pytest.raises(TypeError):
        star_product(f, f)


def test_eval_vector_series():
    v = QVector.from_quaternions([ONE, I])
    f = SliceSeries(Z, (v,))
    out = f.eval(Quaternion(0.5))
    assert (out - v).norm() < 1e-15


def test_derivative_drops_degree():
    f = series(Z, ONE, 2 * I, 3 * J)
    df = slice_derivative(f)
    assert df.degree == 1
    assert df.coefficients[0].isclose(2 * I)
    assert df.coefficients[1].isclose(6 * J)


def test_derivative_matches_differences():
    rng = rand.generator(151, 0)
    f = series(Z, *(rand.rand_quaternion(rng) for _ in range(5)))
    df = slice_derivative(f)
    x, h = 0.37, 1e-4
    # real direction difference on the real axis stays slice free
    num = (f.eval(Quaternion(x + h)) - f.eval(Quaternion(x - h))) / (2 * h)
    assert (num - df.eval(Quaternion(x))).norm_sq() < 1e-12


def test_divergence_warning_outside_radius():
    f = SliceSeries(Z, (ONE, ONE), radius=1.0)
    with pytest.warns(DivergenceWarning):
        f.eval(Quaternion(3.0))


def test_sigma_radius_geometric_frozen():
    coeffs = tuple(Quaternion(0.5 ** n) for n in range(64))
    f = SliceSeries(Z, coeffs)
    assert sigma_radius(f) == pytest.approx(2.0, rel=1e-12)


def test_sigma_radius_prefactor_tolerance():
    rng = rand.generator(157, 0)
    r = 1.3
    coeffs = tuple(Quaternion(1.1 * r ** (-n)) for n in range(64))
    f = SliceSeries(Z, coeffs)
    assert sigma_radius(f) == pytest.approx(r, rel=0.02)


def test_sigma_radius_warns_on_short_series():
    f = series(Z, ONE, ONE, ONE)
    with pytest.warns(RadiusBiasWarning):
        sigma_radius(f)


def test_sigma_radius_zero_tail_infinite():
    # padded polynomial: the sampled tail is identically zero
    f = series(Z, ONE, I, J, *([Z] * 13))
    assert math.isinf(sigma_radius(f))


def test_cr_residual_regular_vs_conjugate():
    pts = [Quaternion(0.3, 0.2, 0.1, 0), Quaternion(-0.2, 0, 0.4, 0.1),
           Quaternion(0.1, -0.3, 0, 0.2)]
    f = series(Z, Z, Z, ONE)  # q^2
    assert cr_residual(f, pts) < 1e-6
    assert cr_residual(lambda q: q.conjugate(), pts) >= 0.5


def test_exhaustion_shapes():
    e = default_exhaustion(math.inf, 4)
    assert e.radii == (1.0, 2.0, 4.0, 8.0)
    f = default_exhaustion(3.0, 3)
    assert all(r < 3.0 for r in f.radii)
    assert f.radii == tuple(sorted(f.radii))
    with pytest.raises(ValueError):
        CompactExhaustion((2.0, 1.0))


def test_h_metric_constant_oracle():
    c0 = SliceSeries(Z, (Z,))
    c1 = SliceSeries(Z, (ONE,))
    d = h_metric(c0, c1, exhaustion=default_exhaustion(math.inf, 4))
    assert d == pytest.approx(15 / 32, abs=1e-15)


def test_h_metric_translation_invariant():
    rng = rand.generator(163, 0)
    f = series(Z, *(rand.rand_quaternion(rng, 0.5) for _ in range(4)))
    g = series(Z, *(rand.rand_quaternion(rng, 0.5) for _ in range(4)))
    h = series(Z, *(rand.rand_quaternion(rng, 0.5) for _ in range(4)))
    e = default_exhaustion(2.0, 6)
    lhs = h_metric(f + h, g + h, exhaustion=e)
    rhs = h_metric(f, g, exhaustion=e)
    assert abs(lhs - rhs) <= 1e-12


def test_h_metric_identity_and_symmetry():
    f = series(Z, ONE, I)
    g = series(Z, ONE, J)
    e = default_exhaustion(1.0, 4)
    assert h_metric(f, f, exhaustion=e) == 0.0
    assert h_metric(f, g, exhaustion=e) == pytest.approx(
        h_metric(g, f, exhaustion=e))


def test_slice_samples_deterministic():
    a = slice_samples(Z, 1.0)
    b = slice_samples(Z, 1.0)
    assert len(a) == len(b) > 0
    assert all(p == q for p, q in zip(a, b))
    assert all(abs(p) <= 1.0 + 1e-12 for p in a)

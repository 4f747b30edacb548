"""Power series in a quaternionic variable with one-sided coefficients.

A series sum_n a_n (q - p)^{*n} keeps its coefficients on the left and
its powers of the variable on the right; the star power is the n-fold
convolution product, which differs from the pointwise power whenever the
center fails to commute with the argument.  Evaluation therefore first
gathers the series into plain monomials C_m q^m, an exact polynomial
identity at any truncation, and only then sums.  Coefficients may be
scalars or vectors; vector times vector has no meaning here and is
rejected.

Convergence lives on sigma-balls around the center.  The radius
estimator reads the tail of the coefficient sequence; the metric on
series compares them over a compact exhaustion of the common ball, level
seminorms sampled on a fixed deterministic grid.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from typing import Callable, Sequence, Union

from .qlinalg import QVector
from .quat import (SLICE_I, SLICE_J, SLICE_K, Quaternion, SliceUnit,
                   sigma_dist, slice_compose, slice_decompose)

Coefficient = Union[Quaternion, QVector]


class DivergenceWarning(RuntimeWarning):
    """Evaluation requested outside the declared ball of convergence."""


class RadiusBiasWarning(RuntimeWarning):
    """Radius estimated from too few coefficients to trust the tail."""


def _is_vector(c: Coefficient) -> bool:
    return isinstance(c, QVector)


def _coeff_norm(c: Coefficient) -> float:
    return c.norm() if _is_vector(c) else abs(c)


def _right_mul(c: Coefficient, q: Quaternion) -> Coefficient:
    # scalar coefficients multiply as c * q, vectors through the right action
    return c.times(q) if _is_vector(c) else c * q


@dataclass(frozen=True)
class SliceSeries:
    """Truncated series sum_n a_n (q - center)^{*n}.

    ``radius`` is the declared sigma-ball of convergence; evaluation
    outside it still returns the truncated sum but raises a
    DivergenceWarning.
    """

    center: Quaternion
    coefficients: tuple[Coefficient, ...]
    radius: float = math.inf

    def __post_init__(self):
        coeffs = tuple(self.coefficients)
        if not coeffs:
            raise ValueError("a series needs at least one coefficient")
        vec = _is_vector(coeffs[0])
        for c in coeffs:
            if _is_vector(c) is not vec:
                raise TypeError("coefficients must be all scalars or all vectors")
            if vec and c.n != coeffs[0].n:
                raise TypeError("vector coefficients must share a length")
        if not self.radius > 0.0:
            raise ValueError("declared radius must be positive")
        object.__setattr__(self, "coefficients", coeffs)

    @property
    def is_vector(self) -> bool:
        return _is_vector(self.coefficients[0])

    @property
    def degree(self) -> int:
        return len(self.coefficients) - 1

    def __len__(self) -> int:
        return len(self.coefficients)

    def _zero(self) -> Coefficient:
        return QVector.zeros(self.coefficients[0].n) if self.is_vector else Quaternion()

    def monomial_coefficients(self) -> list[Coefficient]:
        """Rewrite around zero: coefficients C_m with f(q) = sum C_m q^m.

        The star power (q - p)^{*n} is the n-fold convolution of the pair
        (-p, 1); its coefficients are binomial combinations of powers of
        -p, accumulated here one convolution at a time.
        """
        if self.center == Quaternion():
            return list(self.coefficients)
        minus_p = -self.center
        out: list[Coefficient] = [self._zero() for _ in self.coefficients]
        power: list[Quaternion] = [Quaternion(1.0)]
        for a_n in self.coefficients:
            for m, b in enumerate(power):
                out[m] = out[m] + _right_mul(a_n, b)
            # convolve with (-p, 1): new[m] = power[m] * (-p) + power[m-1]
            power = ([power[0] * minus_p]
                     + [power[m] * minus_p + power[m - 1]
                        for m in range(1, len(power))]
                     + [power[-1]])
        return out

    def eval(self, q: Quaternion) -> Coefficient:
        if math.isfinite(self.radius) and sigma_dist(q, self.center) > self.radius:
            warnings.warn(
                "evaluation point lies outside the declared sigma-ball; the "
                "truncated sum does not approximate a limit there",
                DivergenceWarning, stacklevel=2)
        acc = self._zero()
        power = Quaternion(1.0)
        for c_m in self.monomial_coefficients():
            acc = acc + _right_mul(c_m, power)
            power = power * q
        return acc

    def __call__(self, q: Quaternion) -> Coefficient:
        return self.eval(q)

    def __add__(self, other: "SliceSeries") -> "SliceSeries":
        self._check_compatible(other)
        n = max(len(self), len(other))
        coeffs = [self._coeff(k) + other._coeff(k) for k in range(n)]
        return SliceSeries(self.center, tuple(coeffs),
                           min(self.radius, other.radius))

    def __sub__(self, other: "SliceSeries") -> "SliceSeries":
        self._check_compatible(other)
        n = max(len(self), len(other))
        coeffs = [self._coeff(k) - other._coeff(k) for k in range(n)]
        return SliceSeries(self.center, tuple(coeffs),
                           min(self.radius, other.radius))

    def _coeff(self, k: int) -> Coefficient:
        return self.coefficients[k] if k < len(self.coefficients) else self._zero()

    def _check_compatible(self, other: "SliceSeries") -> None:
        if not isinstance(other, SliceSeries):
            raise TypeError("expected another series")
        if self.center != other.center:
            raise ValueError("series must share a center")
        if self.is_vector != other.is_vector:
            raise TypeError("cannot mix scalar and vector series")
        if self.is_vector and self.coefficients[0].n != other.coefficients[0].n:
            raise TypeError("vector series must share a length")


def star_product(f: SliceSeries, g: SliceSeries) -> SliceSeries:
    """Convolution product of two series around the same center.

    Coefficients multiply in reading order, left factor first; a scalar
    series may sit on either side of a vector one, two vector series have
    no product.
    """
    if f.center != g.center:
        raise ValueError("series must share a center")
    if f.is_vector and g.is_vector:
        raise TypeError("no product of two vector series")
    n = len(f) + len(g) - 1
    if f.is_vector:
        zero: Coefficient = QVector.zeros(f.coefficients[0].n)
    elif g.is_vector:
        zero = QVector.zeros(g.coefficients[0].n)
    else:
        zero = Quaternion()
    coeffs = [zero] * n
    for k, a in enumerate(f.coefficients):
        for l, b in enumerate(g.coefficients):
            if _is_vector(a):
                term: Coefficient = a.times(b)   # vector * scalar, right action
            elif _is_vector(b):
                term = b.left_mul(a)             # scalar * vector, entrywise left
            else:
                term = a * b
            coeffs[k + l] = coeffs[k + l] + term
    return SliceSeries(f.center, tuple(coeffs), min(f.radius, g.radius))


def slice_derivative(f: SliceSeries) -> SliceSeries:
    """Term-by-term derivative sum_n n a_n (q - p)^{*(n-1)}."""
    if len(f) == 1:
        return SliceSeries(f.center, (f._zero(),), f.radius)
    coeffs = []
    for n, a in enumerate(f.coefficients[1:], start=1):
        coeffs.append(a.scale(float(n)) if _is_vector(a) else a * float(n))
    return SliceSeries(f.center, tuple(coeffs), f.radius)


def sigma_radius(f: SliceSeries | Sequence[Coefficient],
                 tail_fraction: float = 0.5) -> float:
    """Root-test estimate of the radius of the sigma-ball of convergence.

    1/R is read as max |a_n|^{1/n} over the tail of the available
    coefficients; the head carries transient information and is ignored.
    Truncations this short cannot distinguish slow growth from none, so
    fewer than eight coefficients raise a bias warning, and a tail that
    has underflowed to zero reads as an infinite radius.
    """
    coeffs = list(f.coefficients) if isinstance(f, SliceSeries) else list(f)
    if len(coeffs) < 8:
        warnings.warn(
            "radius estimated from fewer than eight coefficients; the tail "
            "is too short to trust", RadiusBiasWarning, stacklevel=2)
    start = max(1, int(len(coeffs) * (1.0 - tail_fraction)))
    inv = 0.0
    for n in range(start, len(coeffs)):
        mag = _coeff_norm(coeffs[n])
        if mag > 0.0:
            inv = max(inv, mag ** (1.0 / n))
    if inv == 0.0:
        return math.inf
    return 1.0 / inv


def _as_callable(f) -> Callable[[Quaternion], Coefficient]:
    return f.eval if hasattr(f, "eval") else f


def cr_residual(f, points: Sequence[Quaternion], h: float = 1e-4) -> float:
    """Largest sampled Cauchy-Riemann defect of f on its slices.

    At q = x + y I the defect is (D_x f + (D_y f) I) / 2 with centered
    differences of step h; it vanishes identically for series of the kind
    built here and stays order one for their pointwise conjugates.  Real
    sample points read their slice from SLICE_I.
    """
    evaluate = _as_callable(f)
    worst = 0.0
    for q in points:
        _, _, unit = slice_decompose(q)
        if unit is None:
            unit = SLICE_I
        iq = unit.as_quaternion()
        step = iq * h
        fxp, fxm = evaluate(q + Quaternion(h)), evaluate(q - Quaternion(h))
        fyp, fym = evaluate(q + step), evaluate(q - step)
        if _is_vector(fxp):
            dx = (fxp - fxm).scale(0.5 / h)
            dy = (fyp - fym).scale(0.5 / h)
            worst = max(worst, (dx + dy.times(iq)).scale(0.5).norm())
        else:
            dx = (fxp - fxm) * (0.5 / h)
            dy = (fyp - fym) * (0.5 / h)
            worst = max(worst, abs((dx + dy * iq) * 0.5))
    return worst


def slice_samples(center: Quaternion, r: float,
                  units: tuple[SliceUnit, ...] = ()) -> list[Quaternion]:
    """Deterministic sample grid of the closed euclidean r-ball at center.

    Euclidean distance dominates the sigma distance, so every sample also
    lies in the sigma-ball of the same radius.
    """
    if not units:
        s3 = 1.0 / math.sqrt(3.0)
        units = (SLICE_I, SLICE_J, SLICE_K, SliceUnit(s3, s3, s3))
    out = [center]
    for unit in units:
        for frac in (0.25, 0.5, 0.75, 1.0):
            for k in range(5):
                theta = math.pi * k / 4.0
                out.append(center + slice_compose(frac * r * math.cos(theta),
                                                  frac * r * math.sin(theta),
                                                  unit))
    return out


@dataclass(frozen=True)
class CompactExhaustion:
    """Strictly increasing radii, all below the limiting radius."""

    radii: tuple[float, ...]
    limit: float = math.inf

    def __post_init__(self):
        radii = tuple(float(r) for r in self.radii)
        if not radii:
            raise ValueError("an exhaustion needs at least one level")
        last = 0.0
        for r in radii:
            if r <= last:
                raise ValueError("exhaustion radii must increase strictly")
            last = r
        if radii[-1] >= self.limit:
            raise ValueError("exhaustion radii must stay below the limit radius")
        object.__setattr__(self, "radii", radii)

    def __len__(self) -> int:
        return len(self.radii)


def default_exhaustion(radius: float = math.inf, levels: int = 8) -> CompactExhaustion:
    if levels < 1:
        raise ValueError("need at least one level")
    if math.isfinite(radius):
        radii = tuple(radius * (1.0 - 1.0 / (n + 1)) for n in range(1, levels + 1))
        return CompactExhaustion(radii, radius)
    return CompactExhaustion(tuple(2.0 ** (n - 1) for n in range(1, levels + 1)))


def h_metric(f, g, center: Quaternion | None = None,
             exhaustion: CompactExhaustion | None = None) -> float:
    """Translation-invariant distance sum_n 2^{-n} s_n / (1 + s_n).

    s_n is the sampled sup seminorm of f - g on the n-th ball of the
    exhaustion, n starting at one; the weights make the sum finite for
    any pair and below one always.  Adding a common series to both sides
    leaves the value unchanged.
    """
    ef, eg = _as_callable(f), _as_callable(g)
    if center is None:
        if isinstance(f, SliceSeries):
            center = f.center
        elif isinstance(g, SliceSeries):
            center = g.center
        else:
            raise ValueError("a center is required for plain callables")
    if (isinstance(f, SliceSeries) and isinstance(g, SliceSeries)
            and f.center != g.center):
        raise ValueError("series must share a center")
    if exhaustion is None:
        limit = math.inf
        for s in (f, g):
            if isinstance(s, SliceSeries):
                limit = min(limit, s.radius)
        exhaustion = default_exhaustion(limit)
    total = 0.0
    for n, r in enumerate(exhaustion.radii, start=1):
        s = 0.0
        for q in slice_samples(center, r):
            diff = ef(q) - eg(q)
            s = max(s, _coeff_norm(diff))
        total += 2.0 ** (-n) * s / (1.0 + s)
    return total

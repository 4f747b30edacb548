"""S-spectra of right linear operators and their sampled portraits.

The pseudo-resolvent of A at q is R_q(A) = A^2 - 2 Re(q) A + |q|^2 I; it
depends on q only through the sphere (Re q, |Im q|), which is why every
spectral set here is an axially symmetric union of spheres.  For a finite
matrix the S-spectrum is exactly the set of spheres where R_q(A) is
singular, and the point, approximate, compression and surjectivity parts
all coincide sphere by sphere.  Infinite operators are probed through
rectangular finite sections: columns of R_q applied exactly to the first
few basis vectors, so each sampled kappa is an honest value of the full
operator restricted to a finitely supported subspace, monotonically
non-increasing in the window size.
"""

from __future__ import annotations

import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .errors import ShapeError
from .qlinalg import QMatrix, kernel_basis, min_singular, op_norm
from .quat import (EigenSphere, Quaternion, SLICE_I, SliceUnit, merge_spheres,
                   sphere_union)
from . import qlinalg


def thread_count() -> int:
    """Worker cap taken from QSPEC_THREADS; defaults to 1."""
    raw = os.environ.get("QSPEC_THREADS", "1")
    try:
        n = int(raw)
    except ValueError:
        return 1
    return max(1, n)


def pseudo_resolvent(a: QMatrix, q: Quaternion) -> QMatrix:
    """A^2 - 2 Re(q) A + |q|^2 I."""
    if a.rows != a.cols:
        raise ShapeError("pseudo-resolvent needs a square matrix")
    return (a @ a) - a.scale(2.0 * q.w) + QMatrix.identity(a.rows).scale(q.norm_sq())


def s_spectrum(a: QMatrix, tol: float = 1e-8) -> tuple[EigenSphere, ...]:
    """Spheres where the pseudo-resolvent is singular.

    In finite dimension these are exactly the right eigenvalue spheres.
    """
    return qlinalg.right_eigenspheres(a, tol=tol)


def membership_threshold(a: QMatrix, tol: float) -> float:
    # R_q is quadratic in A, so the scale uses the squared Frobenius norm.
    return tol * (1.0 + a.frobenius() ** 2)


@dataclass(frozen=True)
class SphereFlags:
    """Spectrum part membership for one sphere.

    Finite matrices admit no residual or continuous part: the kernel of a
    singular R_q is always nonzero, so those two flags exist for report
    symmetry and stay False.
    """

    point: bool
    approximate: bool
    compression: bool
    surjectivity: bool
    residual: bool = False
    continuous: bool = False

    def all_parts(self) -> bool:
        return self.point and self.approximate and self.compression and self.surjectivity

    def letters(self) -> str:
        out = []
        if self.point:
            out.append("p")
        if self.approximate:
            out.append("a")
        if self.compression:
            out.append("c")
        if self.surjectivity:
            out.append("s")
        return " ".join(out)


@dataclass(frozen=True)
class SpectrumReport:
    """Classified S-spectrum of a finite matrix."""

    spheres: tuple[EigenSphere, ...]
    flags: dict[EigenSphere, SphereFlags]
    radius: float
    lower_bound: float
    tol: float
    threshold: float
    coincident: bool

    def part(self, name: str) -> tuple[EigenSphere, ...]:
        return tuple(s for s in self.spheres if getattr(self.flags[s], name))

    def to_lines(self) -> list[str]:
        lines = []
        for s in self.spheres:
            lines.append(f"{_fmt(s.re)} {_fmt(s.im)} {self.flags[s].letters()}".rstrip())
        return sorted(lines)


def _fmt(x: float) -> str:
    # round display-only values so eigenvalue noise prints as clean zeros
    return format(round(x, 12) + 0.0, ".12g")


def classify(a: QMatrix, tol: float = 1e-8, n_max: int = 8) -> SpectrumReport:
    """Classify every sphere of sigma_S(A) into its four parts.

    Point membership tests ker R_q(A) directly; approximate membership
    tests kappa = min_singular(R_q(A)); compression goes through the
    conjugate point spectrum of A; surjectivity through the approximate
    spectrum of the adjoint.  The sphere list is the merged union of the
    eigen-spheres of A and A^dag, so a disagreement between the two sides
    would surface as a non-coincident report.
    """
    if a.rows != a.cols:
        raise ShapeError("classification needs a square matrix")
    adj = a.adjoint()
    spheres = sphere_union(s_spectrum(a, tol), s_spectrum(adj, tol))
    thresh = membership_threshold(a, tol)
    flags: dict[EigenSphere, SphereFlags] = {}
    for s in spheres:
        rep = Quaternion(s.re, s.im, 0.0, 0.0)
        r_here = pseudo_resolvent(a, rep)
        point = bool(kernel_basis(r_here, tol))
        approx = min_singular(r_here) <= thresh
        # The conjugate representative spans the same sphere and R depends
        # on q only through (Re q, |q|), so this reuses the exact same
        # matrix; the route is still the conjugate point spectrum.
        r_conj = pseudo_resolvent(a, rep.conjugate())
        compression = bool(kernel_basis(r_conj, tol))
        surjectivity = min_singular(pseudo_resolvent(adj, rep)) <= thresh
        flags[s] = SphereFlags(point, approx, compression, surjectivity)
    coincident = all(
        f.point == f.approximate == f.compression == f.surjectivity
        for f in flags.values())
    return SpectrumReport(
        spheres=spheres,
        flags=flags,
        radius=spectral_radius(a, n_max) if a.rows else 0.0,
        lower_bound=lower_bound_i(a, n_max) if a.rows else 0.0,
        tol=tol,
        threshold=thresh,
        coincident=coincident,
    )


# -- growth bounds -------------------------------------------------------


def spectral_radius(a, n_max: int = 8, window: int | None = None) -> float:
    """inf over n <= n_max of |A^n|^(1/n); an upper bound for sigma_S.

    Accepts a QMatrix or a windowed operator; operators are measured on
    rectangular sections whose columns are exact operator images.
    """
    if n_max < 1:
        raise ValueError("n_max must be at least 1")
    if isinstance(a, QMatrix):
        best = math.inf
        power = a
        for n in range(1, n_max + 1):
            nrm = op_norm(power)
            best = min(best, nrm ** (1.0 / n))
            if n < n_max:
                power = power @ a
        return best
    return _window_growth(a, n_max, window, want_max=True, minimize=True)


def lower_bound_i(a, n_max: int = 8, window: int | None = None) -> float:
    """sup over n <= n_max of kappa(A^n)^(1/n); a lower bound for sigma_apS."""
    if n_max < 1:
        raise ValueError("n_max must be at least 1")
    if isinstance(a, QMatrix):
        best = 0.0
        power = a
        for n in range(1, n_max + 1):
            kappa = min_singular(power)
            best = max(best, kappa ** (1.0 / n))
            if n < n_max:
                power = power @ a
        return best
    return _window_growth(a, n_max, window, want_max=False, minimize=False)


def _window_growth(op, n_max: int, window: int | None, want_max: bool,
                   minimize: bool) -> float:
    n_win = window or getattr(op, "window", 128)
    section = op.finite_section(n_win)
    bandwidth = getattr(op, "bandwidth", 0)
    best = math.inf if minimize else 0.0
    power = section
    for n in range(1, n_max + 1):
        cols = n_win - n * bandwidth
        if cols < 1:
            break
        rect = power.take_cols(cols)
        val = op_norm(rect) if want_max else min_singular(rect)
        scaled = val ** (1.0 / n)
        best = min(best, scaled) if minimize else max(best, scaled)
        if n < n_max:
            power = power @ section
    return best


@dataclass(frozen=True)
class AnnulusVerdict:
    """Outcome of the annulus containment check for approximate spheres."""

    ok: bool
    violations: tuple[EigenSphere, ...]

    def __bool__(self) -> bool:
        return self.ok


def annulus_check(report: SpectrumReport, tol: float = 1e-6) -> AnnulusVerdict:
    """Every approximate sphere must satisfy i(A) <= |q| <= r_S(A) up to tol."""
    bad = tuple(
        s for s in report.part("approximate")
        if not (report.lower_bound - tol <= s.abs_value() <= report.radius + tol))
    return AnnulusVerdict(ok=not bad, violations=bad)


# -- portraits -----------------------------------------------------------


@dataclass(frozen=True)
class GridSpec:
    """Half-plane sampling grid: x in [x0, x1], y in [0, y1]."""

    x0: float
    x1: float
    y1: float
    nx: int
    ny: int

    def __post_init__(self):
        if self.x1 < self.x0:
            raise ValueError("x1 must not be below x0")
        if self.y1 < 0.0:
            raise ValueError("the slice grid lives in y >= 0")
        if self.nx < 1 or self.ny < 1:
            raise ValueError("grid resolution must be positive")

    def xs(self) -> np.ndarray:
        return np.linspace(self.x0, self.x1, self.nx)

    def ys(self) -> np.ndarray:
        return np.linspace(0.0, self.y1, self.ny)


class _SectionKappa:
    """kappa(R_q) on a rectangular window section, reusable across q.

    Precomputes the section and its square once; each sphere then costs a
    single SVD.  Entries of shift and real diagonal sections live in C_i
    (or R), where the complex adjoint is block diagonal and one block
    suffices.
    """

    def __init__(self, op, window: int | None):
        n_win = op.dim if op.dim is not None else (window or getattr(op, "window", 128))
        if op.dim is None and n_win <= op.section_margin:
            raise ValueError("window too small for the section margin")
        section = op.finite_section(n_win)
        self.n = n_win
        self.cols = n_win - (0 if op.dim is not None else op.section_margin)
        self.norm_scale = op_norm(section)
        if section.is_complex_slice:
            block = section.c1
            if not np.any(block.imag):
                block = block.real.copy()
            self._m1 = block
            self._m2 = block @ block
            self._eye = np.eye(n_win, dtype=block.dtype)
            self._col_idx = np.arange(self.cols)
        else:
            m = qlinalg._chi(section)
            self._m1 = m
            self._m2 = m @ m
            self._eye = np.eye(2 * n_win, dtype=np.complex128)
            self._col_idx = np.concatenate(
                [np.arange(self.cols), n_win + np.arange(self.cols)])

    def kappa(self, x: float, y: float) -> float:
        r2 = x * x + y * y
        full = self._m2 - (2.0 * x) * self._m1 + r2 * self._eye
        rect = full[:, self._col_idx]
        s = np.linalg.svd(rect, compute_uv=False)
        return float(s[-1])


def window_kappa(op, q: Quaternion, window: int) -> float:
    """kappa of the rectangular window section of R_q(op).

    Non-increasing in the window size; small values certify approximate
    spectrum membership because the section columns are exact images.
    """
    return _SectionKappa(op, window).kappa(q.w, q.imag_norm())


@dataclass(frozen=True)
class SlicePortrait:
    """Sampled kappa(R_{x+yI}) over a half-plane grid on one slice."""

    grid: GridSpec
    slice_unit: SliceUnit
    window: int
    norm_scale: float
    values: np.ndarray
    op_label: str = ""

    def csv_lines(self) -> list[str]:
        lines = ["x,y,kappa"]
        xs, ys = self.grid.xs(), self.grid.ys()
        for iy, y in enumerate(ys):
            for ix, x in enumerate(xs):
                lines.append(f"{_fmt(x)},{_fmt(y)},{_fmt(self.values[iy, ix])}")
        return lines

    def write_csv(self, path) -> None:
        with open(path, "w") as fh:
            fh.write("\n".join(self.csv_lines()) + "\n")


def portrait(op, grid: GridSpec, window: int = 128,
             slice_unit: SliceUnit = SLICE_I, threads: int | None = None,
             label: str = "") -> SlicePortrait:
    """Sample kappa(R_{x+yI}(op)) over the grid.

    The value at (x, y) depends on the slice only through (x, |y|), so the
    portrait is the same for every slice unit; the unit is recorded for
    the caller's bookkeeping.  Rows are computed independently and joined
    by index, which keeps the result identical for any thread count.
    """
    engine = _SectionKappa(op, window)
    xs, ys = grid.xs(), grid.ys()
    workers = threads if threads is not None else thread_count()

    def row(iy: int) -> np.ndarray:
        y = ys[iy]
        return np.array([engine.kappa(float(x), float(y)) for x in xs])

    if workers > 1 and grid.ny > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            rows = list(pool.map(row, range(grid.ny)))
    else:
        rows = [row(iy) for iy in range(grid.ny)]
    values = np.vstack(rows)
    values.setflags(write=False)
    return SlicePortrait(grid=grid, slice_unit=slice_unit, window=engine.n,
                         norm_scale=engine.norm_scale, values=values,
                         op_label=label)


# -- axially symmetric regions and the full spectrum ----------------------


@dataclass(frozen=True)
class AxSymRegion:
    """Axially symmetric subset of H sampled as a half-plane cell mask."""

    grid: GridSpec
    mask: np.ndarray = field(repr=False)

    def cell_count(self) -> int:
        return int(np.sum(self.mask))


def threshold_region(p: SlicePortrait, tol: float = 1e-8) -> AxSymRegion:
    """Cells flagged as approximate spectrum: kappa <= tol * (1 + |A|^2)."""
    cut = tol * (1.0 + p.norm_scale ** 2)
    mask = p.values <= cut
    mask.setflags(write=False)
    return AxSymRegion(grid=p.grid, mask=mask)


def full_spectrum(region: AxSymRegion) -> AxSymRegion:
    """Fill the bounded holes of the complement.

    The grid edges at x0, x1 and y1 face the unbounded part of H; the
    y = 0 row is the real axis, an interior line of H, so a complement
    component touching only that row is still a bounded hole and gets
    filled.
    """
    mask = region.mask
    ny, nx = mask.shape
    outside = np.zeros_like(mask, dtype=bool)
    stack = []
    for iy in range(ny):
        for ix in (0, nx - 1):
            if not mask[iy, ix]:
                stack.append((iy, ix))
    for ix in range(nx):
        if not mask[ny - 1, ix]:
            stack.append((ny - 1, ix))
    while stack:
        iy, ix = stack.pop()
        if outside[iy, ix] or mask[iy, ix]:
            continue
        outside[iy, ix] = True
        if iy > 0:
            stack.append((iy - 1, ix))
        if iy < ny - 1:
            stack.append((iy + 1, ix))
        if ix > 0:
            stack.append((iy, ix - 1))
        if ix < nx - 1:
            stack.append((iy, ix + 1))
    filled = mask | ~outside
    filled.setflags(write=False)
    return AxSymRegion(grid=region.grid, mask=filled)


def full_spectrum_of_spheres(spheres) -> tuple[EigenSphere, ...]:
    """eta for an exact finite sphere set.

    Finitely many spheres cannot bound a component of the resolvent set,
    so eta(A) = sigma_S(A) and the set passes through unchanged.
    """
    return merge_spheres(spheres)


def transition_cells(values: np.ndarray, low: float, high: float) -> np.ndarray:
    """Cells with a <= low neighbour and a >= high neighbour.

    Used to sample the topological boundary of a portrait region.
    """
    near = values <= low
    far = values >= high
    pad_near = np.zeros((values.shape[0] + 2, values.shape[1] + 2), dtype=bool)
    pad_far = np.zeros_like(pad_near)
    pad_near[1:-1, 1:-1] = near
    pad_far[1:-1, 1:-1] = far
    has_near = np.zeros_like(near)
    has_far = np.zeros_like(far)
    for dy in (0, 1, 2):
        for dx in (0, 1, 2):
            if dy == 1 and dx == 1:
                continue
            has_near |= pad_near[dy:dy + values.shape[0], dx:dx + values.shape[1]]
            has_far |= pad_far[dy:dy + values.shape[0], dx:dx + values.shape[1]]
    return has_near & has_far

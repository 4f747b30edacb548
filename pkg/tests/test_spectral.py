import numpy as np
import pytest

from qspec import rand
from qspec.operators import DenseOperator, ShiftOperator
from qspec.qlinalg import QMatrix, min_singular
from qspec.quat import SLICE_I, SLICE_J, EigenSphere, Quaternion, sphere_of
from qspec.spectral import (
    GridSpec,
    annulus_check,
    classify,
    full_spectrum,
    full_spectrum_of_spheres,
    lower_bound_i,
    portrait,
    pseudo_resolvent,
    s_spectrum,
    spectral_radius,
    threshold_region,
    transition_cells,
    window_kappa,
)

Z = Quaternion(0)
ONE = Quaternion(1)
I = Quaternion(0, 1, 0, 0)
J = Quaternion(0, 0, 1, 0)


def test_pseudo_resolvent_kills_eigenvalue_sphere():
    a = QMatrix.from_quaternions([[I]])
    # R_q(A) = A^2 - 2 Re(q) A + |q|^2 vanishes on [q] = [i]
    r = pseudo_resolvent(a, J)  # j is a sphere mate of i
    assert min_singular(r) < 1e-12


def test_pseudo_resolvent_depends_only_on_sphere():
    rng = rand.generator(41, 0)
    a = rand.rand_qmatrix(rng, 3, 3)
    q = Quaternion(0.5, 1.0, 0, 0)
    p = Quaternion(0.5, 0, -1.0, 0)  # same (re, |im|)
    ra = pseudo_resolvent(a, q)
    rb = pseudo_resolvent(a, p)
    assert np.allclose(ra.c1, rb.c1) and np.allclose(ra.c2, rb.c2)


def test_s_spectrum_diagonal_frozen():
    a = QMatrix.from_quaternions([[I, Z], [Z, J + J]])
    spheres = s_spectrum(a)
    assert len(spheres) == 2
    assert spheres[0].matches(EigenSphere(0, 1), 1e-9)
    assert spheres[1].matches(EigenSphere(0, 2), 1e-9)


def test_s_spectrum_swap_real_pair():
    a = QMatrix.from_quaternions([[Z, ONE], [ONE, Z]])
    spheres = s_spectrum(a)
    assert len(spheres) == 2
    assert spheres[0].matches(EigenSphere(-1, 0), 1e-9)
    assert spheres[1].matches(EigenSphere(1, 0), 1e-9)


def test_s_spectrum_mixed_slices():
    # eigenvalues on different slices land on the same sphere set
    a = QMatrix.from_quaternions([[ONE + 2 * I, Z], [Z, ONE + 2 * J]])
    spheres = s_spectrum(a)
    assert len(spheres) == 1
    assert spheres[0].matches(EigenSphere(1, 2), 1e-9)


def test_classify_identity_all_parts():
    rep = classify(QMatrix.identity(2))
    assert rep.to_lines() == ["1 0 p a c s"]
    assert rep.coincident


def test_classify_parts_coincide_random():
    rng = rand.generator(43, 0)
    a = rand.rand_qmatrix(rng, 4, 4)
    rep = classify(a)
    assert rep.coincident
    for name in ("point", "approximate", "compression", "surjectivity"):
        assert len(rep.part(name)) == len(rep.spheres)


def test_spectral_radius_bounds_sphere_max():
    rng = rand.generator(47, 0)
    a = rand.rand_qmatrix(rng, 4, 4)
    rep = classify(a)
    top = max(s.abs_value() for s in rep.spheres)
    # power-norm bound: never below the true radius, tight for normal parts
    assert top <= rep.radius + 1e-9
    assert spectral_radius(a) == pytest.approx(rep.radius, rel=1e-12)
    # diagonal case is exact at n_max -> high powers
    d = QMatrix.from_quaternions([[2 * I, Z], [Z, J]])
    assert spectral_radius(d, n_max=64) == pytest.approx(2.0, rel=1e-2)


def test_annulus_bounds_hold():
    rng = rand.generator(53, 0)
    a = rand.rand_invertible(rng, 4)
    rep = classify(a)
    assert annulus_check(rep).ok
    assert lower_bound_i(a) <= rep.radius + 1e-9


def test_window_kappa_right_shift_frozen():
    right = ShiftOperator("right")
    k = window_kappa(right, Quaternion(0.5), 128)
    assert 0.2 <= k <= 0.3
    # monotone non-increasing in the window
    ks = [window_kappa(right, Quaternion(0.5), n) for n in (32, 64, 128)]
    assert ks[0] >= ks[1] >= ks[2]


def test_window_kappa_left_shift_interior_zero():
    left = ShiftOperator("left")
    assert window_kappa(left, Quaternion(0.5), 64) < 1e-10
    assert window_kappa(left, Quaternion(0, 0.5), 64) < 1e-10


def test_grid_spec_validation():
    g = GridSpec(-1, 1, 1.0, 4, 3)
    assert len(g.xs()) == 4 and len(g.ys()) == 3
    with pytest.raises(ValueError):
        GridSpec(-1, 1, -0.5, 4, 3)


def test_portrait_slice_independent_and_deterministic():
    right = ShiftOperator("right")
    g = GridSpec(-1.2, 1.2, 1.0, 9, 5)
    p1 = portrait(right, g, window=32, slice_unit=SLICE_I)
    p2 = portrait(right, g, window=32, slice_unit=SLICE_J)
    assert np.array_equal(p1.values, p2.values)
    assert p1.csv_lines() == p2.csv_lines()
    assert p1.csv_lines()[0] == "x,y,kappa"


def test_portrait_matrix_operator_zeros_on_spectrum():
    a = QMatrix.from_quaternions([[I, Z], [Z, I]])
    g = GridSpec(-1, 1, 1.0, 5, 5)
    p = portrait(DenseOperator(a), g, window=2)
    ys = g.ys()
    xs = g.xs()
    iy = int(np.argmin(np.abs(ys - 1.0)))
    ix = int(np.argmin(np.abs(xs)))
    assert p.values[iy, ix] < 1e-10


def test_threshold_region_and_fill():
    a = QMatrix.from_quaternions([[I, Z], [Z, I]])
    g = GridSpec(-1.5, 1.5, 1.5, 31, 16)
    p = portrait(DenseOperator(a), g, window=2)
    region = threshold_region(p, tol=1e-8)
    assert region.cell_count() == 1  # the sphere [i] only touches (0, 1)
    filled = full_spectrum(region)
    assert filled.cell_count() == 1  # a point cannot trap interior cells


def test_full_spectrum_ring_traps_interior():
    g = GridSpec(-1, 1, 1.0, 21, 11)
    mask = np.zeros((11, 21), dtype=bool)
    # closed square ring of cells
    mask[3, 5:16] = True
    mask[8, 5:16] = True
    mask[3:9, 5] = True
    mask[3:9, 15] = True
    from qspec.spectral import AxSymRegion

    filled = full_spectrum(AxSymRegion(g, mask))
    assert filled.mask[5, 10]  # interior cell got flooded in
    assert filled.cell_count() > mask.sum()
    assert not filled.mask[0, 0]


def test_full_spectrum_not_seeded_from_real_axis():
    # arc touching y=0 twice: the region below it is NOT reachable from
    # the outer boundary because the real axis is interior to the domain
    g = GridSpec(-1, 1, 1.0, 41, 21)
    from qspec.spectral import AxSymRegion

    mask = np.zeros((21, 41), dtype=bool)
    xs, ys = g.xs(), g.ys()
    for t in np.linspace(0, np.pi, 400):
        x, y = 0.6 * np.cos(t), 0.6 * np.sin(t)
        ix = int(np.argmin(np.abs(xs - x)))
        iy = int(np.argmin(np.abs(ys - y)))
        mask[iy, ix] = True
    filled = full_spectrum(AxSymRegion(g, mask))
    ix0 = int(np.argmin(np.abs(xs)))
    assert filled.mask[0, ix0]  # (0, 0) sits under the arc


def test_full_spectrum_of_spheres_passthrough():
    spheres = (EigenSphere(0.0, 0.8), EigenSphere(0.6, 0.6))
    assert full_spectrum_of_spheres(spheres) == spheres


def test_transition_cells_flag_boundary():
    vals = np.ones((5, 7))
    vals[2, 3] = 0.0
    cells = transition_cells(vals, low=0.1, high=0.5)
    # neighbors of the zero cell see both sides of the band
    assert cells[2, 2] and cells[2, 4] and cells[1, 3] and cells[3, 3]
    assert not cells[0, 0]

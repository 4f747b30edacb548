import numpy as np
import pytest

from qspec import rand
from qspec.errors import PoleError
from qspec.localspec import (
    check_ab_ba,
    check_aba,
    check_combination,
    check_commutant,
    check_intertwining,
    check_local_laws,
    check_resolvent_identity,
    check_zero_vector,
    decomposability_necessary,
    global_subspace,
    local_resolvent_diag,
    local_spectrum,
    local_subspace,
    spectral_projections,
    svep_status,
)
from qspec.operators import MultiplicationOperator, ShiftOperator
from qspec.qlinalg import QMatrix, QVector, op_norm
from qspec.quat import EigenSphere, Quaternion, sphere_of

Z = Quaternion(0)
ONE = Quaternion(1)
I = Quaternion(0, 1, 0, 0)
J = Quaternion(0, 0, 1, 0)

DIAG = QMatrix.from_quaternions([[I, Z], [Z, 2 * J]])


def test_local_spectrum_of_basis_vectors():
    s1 = tuple(local_spectrum(DIAG, QVector.basis(2, 0)))
    assert len(s1) == 1 and s1[0].matches(EigenSphere(0, 1), 1e-9)
    s2 = tuple(local_spectrum(DIAG, QVector.basis(2, 1)))
    assert len(s2) == 1 and s2[0].matches(EigenSphere(0, 2), 1e-9)


def test_local_spectrum_of_mixed_vector():
    phi = QVector.from_quaternions([I, J])
    spheres = tuple(local_spectrum(DIAG, phi))
    assert len(spheres) == 2


def test_local_spectrum_zero_vector_empty():
    assert len(local_spectrum(DIAG, QVector.zeros(2))) == 0
    assert check_zero_vector(DIAG)


def test_local_spectra_union_is_spectrum():
    rng = rand.generator(71, 0)
    a = rand.rand_qmatrix(rng, 4, 4)
    proj = spectral_projections(a)
    union = []
    for k in range(4):
        union.extend(local_spectrum(a, QVector.basis(4, k), projections=proj))
    from qspec.quat import merge_spheres, sphere_sets_equal
    from qspec.spectral import s_spectrum

    assert sphere_sets_equal(merge_spheres(tuple(union)), s_spectrum(a), 1e-6)


def test_spectral_projections_identities():
    rng = rand.generator(73, 0)
    a = rand.rand_qmatrix(rng, 4, 4)
    ps = spectral_projections(a)
    assert ps.certified
    total = ps.projections[0]
    for p in ps.projections[1:]:
        total = total + p
    assert np.allclose(total.c1, np.eye(4), atol=1e-8)
    for idx, p in enumerate(ps.projections):
        assert op_norm(p @ p - p) < 1e-8 * max(1.0, ps.conditions[idx])
        # ranges are invariant: A P = P A P
        lhs = a @ p
        rhs = p @ (a @ p)
        assert op_norm(lhs - rhs) < 1e-6 * (1 + op_norm(a))


def test_spectral_projection_single_sphere_is_identity():
    a = QMatrix.from_quaternions([[I, Z], [Z, J]])  # one sphere (0,1)
    ps = spectral_projections(a)
    assert len(ps.projections) == 1
    assert np.allclose(ps.projections[0].c1, np.eye(2))


def test_local_resolvent_diag_frozen():
    m = MultiplicationOperator(("p",), (I,))
    f = QVector.from_quaternions([ONE])
    h = local_resolvent_diag(m, f, Quaternion(2))
    # d = g^2 - 4 g + 4 = 3 - 4i, h = d^{-1} = (3 + 4i) / 25
    assert h.entry(0).isclose(Quaternion(0.12, 0.16, 0, 0))


def test_local_resolvent_pole_guard():
    m = MultiplicationOperator(("p",), (I,))
    f = QVector.from_quaternions([ONE])
    with pytest.raises(PoleError):
        local_resolvent_diag(m, f, J)  # [j] = [i] hits the value sphere


def test_local_resolvent_inverts_pseudo_resolvent():
    rng = rand.generator(79, 0)
    vals = tuple(rand.rand_quaternion(rng) for _ in range(5))
    m = MultiplicationOperator(tuple("abcde"), vals)
    f = rand.rand_qvector(rng, 5)
    q = Quaternion(4.0, 1.0, 0, 0)  # far from every value sphere
    h = local_resolvent_diag(m, f, q)
    a = m.as_qmatrix()
    from qspec.spectral import pseudo_resolvent

    back = pseudo_resolvent(a, q).apply(h)
    assert (back - f).norm() < 1e-8 * (1 + f.norm())


def test_local_subspace_dimensions():
    part = local_subspace(DIAG, (EigenSphere(0, 1),))
    assert part.dim == 1
    assert part.contains(QVector.basis(2, 0), 1e-8)
    both = local_subspace(DIAG, (EigenSphere(0, 1), EigenSphere(0, 2)))
    assert both.dim == 2


def test_global_subspace_matches_local():
    rng = rand.generator(83, 0)
    a = rand.rand_qmatrix(rng, 4, 4)
    ps = spectral_projections(a)
    take = ps.spheres[:1]
    loc = local_subspace(a, take, projections=ps)
    glo = global_subspace(a, take, projections=ps)
    assert loc.dim == glo.dim
    assert op_norm(loc.projection() - glo.projection()) < 1e-7


def test_check_combination_and_commutant():
    rng = rand.generator(89, 0)
    a = rand.rand_qmatrix(rng, 3, 3)
    phi = rand.rand_qvector(rng, 3)
    psi = rand.rand_qvector(rng, 3)
    b = rand.rand_commutant(rng, a)
    assert check_combination(a, phi, psi, rand.rand_quaternion(rng),
                             rand.rand_quaternion(rng))
    assert check_commutant(a, b, phi)
    assert check_local_laws(a, phi, psi, ONE, I, b)


def test_check_commutant_rejects_noncommuting():
    rng = rand.generator(97, 0)
    a = rand.rand_qmatrix(rng, 3, 3)
    b = rand.rand_qmatrix(rng, 3, 3)
    if op_norm(a @ b - b @ a) > 1e-6:
        with pytest.raises(ValueError):
            check_commutant(a, b, rand.rand_qvector(rng, 3))


def test_check_ab_ba_square_and_rectangular():
    rng = rand.generator(101, 0)
    a = rand.rand_invertible(rng, 3)
    b = rand.rand_qmatrix(rng, 3, 3)
    assert check_ab_ba(a, b, rand.rand_qvector(rng, 3))
    wide = rand.rand_qmatrix(rng, 2, 4)
    tall = rand.rand_qmatrix(rng, 4, 2)
    assert check_ab_ba(wide, tall, rand.rand_qvector(rng, 4))


def test_check_aba_idempotents():
    rng = rand.generator(103, 0)
    p = rand.rand_idempotent(rng, 4, 2)
    q = rand.rand_idempotent(rng, 4, 2)
    assert check_aba(p @ q, q @ p, rand.rand_qvector(rng, 4))


def test_check_intertwining_similarity():
    rng = rand.generator(107, 0)
    a = rand.rand_qmatrix(rng, 3, 3)
    s = rand.rand_invertible(rng, 3)
    from qspec.qlinalg import inverse_matrix

    b = s @ a @ inverse_matrix(s)
    phi = rand.rand_qvector(rng, 3)
    from qspec.spectral import s_spectrum

    assert check_intertwining(a, b, s, phi, s_spectrum(a)[:1])


def test_check_resolvent_identity_callable():
    rng = rand.generator(109, 0)
    a = rand.rand_qmatrix(rng, 3, 3)
    phi = rand.rand_qvector(rng, 3)
    from qspec.qlinalg import inverse_matrix
    from qspec.spectral import pseudo_resolvent

    samples = (Quaternion(9.0), Quaternion(8.0, 3.0, 0, 0))

    def f(q):
        return inverse_matrix(pseudo_resolvent(a, q)).apply(phi)

    assert check_resolvent_identity(a, phi, f, samples)


def test_matrix_decomposability_passes():
    rng = rand.generator(113, 0)
    a = rand.rand_qmatrix(rng, 4, 4)
    verdict = decomposability_necessary(a)
    assert verdict.status == "PASS" and bool(verdict)


def test_shift_decomposability_fails_with_witness():
    right = decomposability_necessary(ShiftOperator("right"), window=64)
    assert right.status == "FAIL" and not bool(right)
    assert right.witness.matches(EigenSphere(0.5, 0.0), 1e-9)
    left = decomposability_necessary(ShiftOperator("left"), window=64)
    assert left.status == "FAIL"
    assert left.witness.matches(EigenSphere(0.5, 0.0), 1e-9)


def test_svep_verdicts():
    rng = rand.generator(127, 0)
    assert svep_status(rand.rand_qmatrix(rng, 3, 3)).has_svep is True
    assert svep_status(ShiftOperator("left")).has_svep is False
    assert svep_status(ShiftOperator("right")).has_svep is None

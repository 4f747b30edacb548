import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from qspec import rand
from qspec.errors import ShapeError
from qspec.qlinalg import (
    ComplexAdjointMatrix,
    QMatrix,
    QVector,
    SubspaceBasis,
    complex_adjoint,
    inner,
    inverse_matrix,
    kernel_basis,
    min_singular,
    op_norm,
    orthonormalize,
    right_eigenspheres,
)
from qspec.quat import EigenSphere, Quaternion

Z = Quaternion(0)
ONE = Quaternion(1)
I = Quaternion(0, 1, 0, 0)
J = Quaternion(0, 0, 1, 0)
K = Quaternion(0, 0, 0, 1)


def test_vector_entries_roundtrip():
    v = QVector.from_quaternions([ONE + I, J - K])
    assert v.entry(0) == ONE + I
    assert v.entry(1) == J - K
    assert QVector.from_quaternions(list(v.entries())).to_components().tolist() \
        == v.to_components().tolist()


def test_inner_product_conjugate_linear_left():
    u = QVector.from_quaternions([I])
    v = QVector.from_quaternions([J])
    # <i e | j e> = conj(i) j = -ij = -k
    assert inner(u, v) == -K
    assert inner(v, u) == K


def test_inner_right_linearity():
    rng = rand.generator(7, 0)
    u = rand.rand_qvector(rng, 3)
    v = rand.rand_qvector(rng, 3)
    q = rand.rand_quaternion(rng)
    lhs = inner(u, v.times(q))
    rhs = inner(u, v) * q
    assert (lhs - rhs).norm_sq() < 1e-20 * (1 + lhs.norm_sq())


def test_right_scalar_action_commutes_with_matrix():
    rng = rand.generator(11, 0)
    a = rand.rand_qmatrix(rng, 3, 3)
    v = rand.rand_qvector(rng, 3)
    q = rand.rand_quaternion(rng)
    lhs = a.apply(v.times(q))
    rhs = a.apply(v).times(q)
    assert (lhs - rhs).norm() < 1e-10 * (1 + rhs.norm())


def test_chi_shape_and_frozen_value():
    m = QMatrix.from_quaternions([[J]])
    chi = complex_adjoint(m).mat
    assert chi.shape == (2, 2)
    assert np.allclose(chi, np.array([[0, 1], [-1, 0]], dtype=complex))


def test_chi_multiplicative():
    rng = rand.generator(3, 1)
    a = rand.rand_qmatrix(rng, 3, 3)
    b = rand.rand_qmatrix(rng, 3, 3)
    lhs = complex_adjoint(a @ b).mat
    rhs = complex_adjoint(a).mat @ complex_adjoint(b).mat
    assert np.allclose(lhs, rhs, atol=1e-10)


def test_chi_of_adjoint_is_hermitian_transpose():
    rng = rand.generator(3, 2)
    a = rand.rand_qmatrix(rng, 2, 4)
    lhs = complex_adjoint(a.adjoint()).mat
    rhs = complex_adjoint(a).mat.conj().T
    assert np.allclose(lhs, rhs)


def test_structure_residual_zero_for_honest_chi():
    rng = rand.generator(5, 0)
    a = rand.rand_qmatrix(rng, 3, 2)
    ca = complex_adjoint(a)
    assert ca.structure_residual() < 1e-14
    back = ca.to_qmatrix()
    assert np.allclose(back.c1, a.c1) and np.allclose(back.c2, a.c2)


def test_structure_residual_detects_foreign_matrix():
    m = np.array([[1.0, 2.0], [3.0, 4.0]], dtype=complex)
    assert ComplexAdjointMatrix(m).structure_residual() > 0.5


def test_adjoint_frozen_example():
    a = QMatrix.from_quaternions([[I, J], [Z, K]])
    at = a.adjoint()
    expect = QMatrix.from_quaternions([[-I, Z], [-J, -K]])
    assert np.allclose(at.c1, expect.c1) and np.allclose(at.c2, expect.c2)


def test_adjoint_moves_inner_product():
    rng = rand.generator(9, 0)
    a = rand.rand_qmatrix(rng, 3, 3)
    u = rand.rand_qvector(rng, 3)
    v = rand.rand_qvector(rng, 3)
    lhs = inner(a.apply(u), v)
    rhs = inner(u, a.adjoint().apply(v))
    assert (lhs - rhs).norm_sq() < 1e-18 * (1 + rhs.norm_sq())


def test_matmul_associative_and_shapes():
    rng = rand.generator(13, 0)
    a = rand.rand_qmatrix(rng, 2, 3)
    b = rand.rand_qmatrix(rng, 3, 4)
    c = rand.rand_qmatrix(rng, 4, 2)
    lhs = (a @ b) @ c
    rhs = a @ (b @ c)
    assert lhs.shape == (2, 2)
    assert np.allclose(lhs.c1, rhs.c1, atol=1e-10)
    with pytest.raises(ShapeError):
        _ = a @ a


def test_right_eigenspheres_diagonal():
    a = QMatrix.from_quaternions([[I, Z], [Z, J + J]])
    spheres = right_eigenspheres(a)
    assert len(spheres) == 2
    assert spheres[0].matches(EigenSphere(0, 1), 1e-9)
    assert spheres[1].matches(EigenSphere(0, 2), 1e-9)


def test_kernel_basis_counts():
    a = QMatrix.from_quaternions([[ONE, Z], [Z, Z]])
    ker = kernel_basis(a)
    assert len(ker) == 1
    assert a.apply(ker[0]).norm() < 1e-12
    assert len(kernel_basis(QMatrix.identity(3))) == 0


def test_min_singular_invertible_vs_singular():
    assert min_singular(QMatrix.identity(4)) == pytest.approx(1.0)
    a = QMatrix.from_quaternions([[ONE, ONE], [ONE, ONE]])
    assert min_singular(a) < 1e-12


def test_op_norm_bounds_frobenius():
    rng = rand.generator(17, 0)
    a = rand.rand_qmatrix(rng, 4, 4)
    assert op_norm(a) <= a.frobenius() + 1e-12
    v = rand.rand_unit_vector(rng, 4)
    assert a.apply(v).norm() <= op_norm(a) * (1 + 1e-10)


def test_inverse_matrix():
    rng = rand.generator(19, 0)
    a = rand.rand_invertible(rng, 3)
    ia = inverse_matrix(a)
    eye = a @ ia
    assert np.allclose(eye.c1, np.eye(3), atol=1e-9)
    assert np.allclose(eye.c2, 0, atol=1e-9)


def test_orthonormalize_and_subspace():
    rng = rand.generator(23, 0)
    vs = [rand.rand_qvector(rng, 4) for _ in range(2)]
    vs.append(vs[0].times(I) + vs[1].times(J))  # right-dependent
    basis = orthonormalize(vs)
    assert len(basis) == 2
    sub = SubspaceBasis.from_span(4, vs)
    assert sub.dim == 2
    assert sub.contains(vs[2], 1e-8)
    assert not sub.contains(QVector.basis(4, 3), 1e-3)


def test_projection_idempotent():
    rng = rand.generator(29, 0)
    sub = SubspaceBasis.from_span(4, [rand.rand_qvector(rng, 4) for _ in range(2)])
    p = sub.projection()
    diff = p @ p - p
    assert op_norm(diff) < 1e-10


def test_embedding_pullback():
    rng = rand.generator(31, 0)
    a = rand.rand_qmatrix(rng, 3, 3)
    v = rand.rand_qvector(rng, 3)
    chi = complex_adjoint(a).mat
    lhs = chi @ v.embed()
    rhs = a.apply(v).embed()
    assert np.allclose(lhs, rhs, atol=1e-10)
    back = QVector.from_embedding(rhs)
    assert (back - a.apply(v)).norm() < 1e-12


@given(st.integers(min_value=0, max_value=2 ** 31 - 1))
def test_min_singular_matches_chi_svd(seed):
    rng = rand.generator(seed, 0)
    a = rand.rand_qmatrix(rng, 3, 3)
    direct = float(np.linalg.svd(complex_adjoint(a).mat, compute_uv=False)[-1])
    assert min_singular(a) == pytest.approx(direct, rel=1e-9, abs=1e-12)

from fractions import Fraction

import numpy as np
import pytest

from quatmod import qalg
from quatmod.qalg import AlgebraError, MatQuat, QuadElem, Quat, QuatAlgebra
from quatmod.verify import random_matrix, random_quat


def test_algebra_validation():
    with pytest.raises(AlgebraError):
        QuatAlgebra(1, -3)
    with pytest.raises(AlgebraError):
        QuatAlgebra(-4, -3)
    with pytest.raises(AlgebraError):
        QuatAlgebra(-1, 0)


def test_basis_products(any_alg):
    z, x, zx = any_alg.zeta(), any_alg.xi(), any_alg.zeta_xi()
    assert z * x == zx
    assert x * z == -zx
    assert z * z == any_alg.alpha
    assert x * x == any_alg.beta
    one = any_alg.one()
    assert (one + z) * (one - z) == 1 - any_alg.alpha


def test_mixing_algebras_is_rejected():
    a, b = QuatAlgebra(-1, -3), QuatAlgebra(-2, -5)
    with pytest.raises(AlgebraError):
        a.zeta() * b.zeta()


def test_conjugation(any_alg):
    assert any_alg.one().conj() == any_alg.one()
    assert any_alg.zeta().conj() == -any_alg.zeta()
    assert any_alg.zeta_xi().conj() == -any_alg.zeta_xi()


def test_trace_norm_examples(any_alg):
    assert qalg.trace_norm(any_alg.zeta()) == (0, -any_alg.alpha)
    assert qalg.trace_norm(any_alg.one()) == (2, 1)
    a = QuatAlgebra(-1, -1)
    assert qalg.trace_norm(a(1, 1)) == (2, 2)


def test_algebraic_laws(any_alg, rng):
    for _ in range(40):
        x, y, w = (random_quat(any_alg, rng) for _ in range(3))
        assert (x * y) * w == x * (y * w)
        assert (x * y).norm() == x.norm() * y.norm()
        assert (x * y).trace() == (y * x).trace()
        assert x.conj() == x.trace() - x
        assert x.conj().conj() == x
        assert (x * y).conj() == y.conj() * x.conj()
        if not x.is_zero():
            assert x.norm() > 0
            assert x * x.inverse() == 1


def test_rational_coordinates_are_exact(alg):
    x = alg(Fraction(1, 3), Fraction(-2, 7), 0, Fraction(5, 2))
    assert (x * x.inverse()).coords == (1, 0, 0, 0)
    with pytest.raises(AlgebraError):
        alg(0.5)


def test_quadratic_field():
    b = -3
    x, y = QuadElem(1, 2, b), QuadElem(Fraction(1, 2), -1, b)
    assert x * y == y * x
    assert x * x.inverse() == QuadElem(1, 0, b)
    assert x.conj().conj() == x
    assert (x * y).conj() == x.conj() * y.conj()


def test_split_embed_examples(any_alg):
    al, be = any_alg.alpha, any_alg.beta
    K = lambda p, q=0: QuadElem(p, q, be)  # noqa: E731
    assert qalg.split_embed(any_alg.one()) == qalg.MatQuad.identity(be, 2)
    assert qalg.split_embed(any_alg.zeta()) == qalg.MatQuad(be, [[K(0), K(al)], [K(1), K(0)]])
    assert qalg.split_embed(any_alg.xi()) == qalg.MatQuad(be, [[K(0, 1), K(0)], [K(0), K(0, -1)]])


def test_split_embed_homomorphism_det_trace(any_alg, rng):
    for _ in range(30):
        x, y = random_quat(any_alg, rng), random_quat(any_alg, rng)
        ix = qalg.split_embed(x)
        assert qalg.split_embed(x * y) == ix @ qalg.split_embed(y)
        assert ix.det() == QuadElem(x.norm(), 0, any_alg.beta)
        assert ix.trace() == QuadElem(x.trace(), 0, any_alg.beta)


def test_mat_split_embed_examples(alg):
    assert qalg.mat_split_embed(MatQuat.identity(alg, 3)) == qalg.MatQuad.identity(alg.beta, 6)
    X = MatQuat.diag(alg, [alg.zeta(), 1])
    be = alg.beta
    K = lambda p: QuadElem(p, 0, be)  # noqa: E731
    expected = qalg.MatQuad(be, [
        [K(0), K(alg.alpha), K(0), K(0)],
        [K(1), K(0), K(0), K(0)],
        [K(0), K(0), K(1), K(0)],
        [K(0), K(0), K(0), K(1)],
    ])
    assert qalg.mat_split_embed(X) == expected


def test_transport_identities(any_alg, rng):
    for n in (1, 2, 3):
        X = random_matrix(any_alg, n, n, rng)
        assert qalg.transport_residuals(X) == (True, True)


def test_matrix_star_and_products(alg, rng):
    for _ in range(10):
        X = random_matrix(alg, 2, 3, rng)
        Y = random_matrix(alg, 3, 2, rng)
        assert X.star().star() == X
        assert (X @ Y).star() == Y.star() @ X.star()


def test_reduced_det_trace_examples(alg):
    assert qalg.reduced_det_trace(MatQuat.identity(alg, 3)) == (1, 6)
    assert qalg.reduced_det_trace(MatQuat(alg, [[alg.zeta()]])) == (-alg.alpha, 0)
    a = QuatAlgebra(-1, -3)
    assert qalg.reduced_det(MatQuat.diag(a, [a(1, 1), 1])) == 2


def test_inverse_of_matrix(alg, rng):
    for _ in range(5):
        X = random_matrix(alg, 3, 3, rng)
        if qalg.reduced_det(X) != 0:
            assert (X @ X.inverse()).is_identity()
            assert (X.inverse() @ X).is_identity()


def test_real_embed(any_alg, rng):
    assert np.allclose(qalg.real_embed(MatQuat.identity(any_alg, 2)), np.eye(4))
    for _ in range(10):
        X = random_matrix(any_alg, 2, 2, rng)
        Y = random_matrix(any_alg, 2, 2, rng)
        x = qalg.real_embed(X)
        assert qalg.quaternionic_residual(x) < 1e-12 * max(1, np.abs(x).max())
        assert np.allclose(qalg.real_embed(X @ Y), x @ qalg.real_embed(Y), rtol=1e-12, atol=1e-9)
        d, t = qalg.reduced_det_trace(X)
        assert abs(np.linalg.det(x) - float(d)) <= 1e-9 * max(1.0, abs(float(d)))
        assert abs(np.trace(x) - float(t)) <= 1e-9 * max(1.0, abs(float(t)))


def test_lambda_pairing(alg):
    for m in (1, 2, 3):
        one = MatQuat.identity(alg, m)
        assert qalg.lambda_pairing(one, one) == m
        assert qalg.lambda_pairing(MatQuat.zeros(alg, m), one) == 0
    assert qalg.lambda_pairing(MatQuat(alg, [[1]]), MatQuat(alg, [[alg.zeta()]])) == 0
    with pytest.raises(AlgebraError):
        qalg.lambda_pairing(MatQuat.identity(alg, 2), MatQuat.identity(alg, 3))


def test_empty_dimensions_keep_shape(alg):
    x = MatQuat.zeros(alg, 2, 0)
    assert x.star().shape == (0, 2)
    assert x.star().scale(alg.zeta()).shape == (0, 2)
    assert (x @ x.star()).shape == (2, 2)

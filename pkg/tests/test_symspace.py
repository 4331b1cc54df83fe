import numpy as np
import pytest

from quatmod import symspace
from quatmod.symspace import BoundaryError, DomainError, DomainPoint

REALIZATIONS = [
    ("Z10", lambda: symspace.zeta_realization(1, 0)),
    ("Z11", lambda: symspace.zeta_realization(1, 1)),
    ("Z12", lambda: symspace.zeta_realization(1, 2)),
    ("H2", lambda: symspace.h_realization(2)),
    ("H3", lambda: symspace.h_realization(3)),
    ("B2", lambda: symspace.b_realization(2)),
    ("B3", lambda: symspace.b_realization(3)),
]


@pytest.fixture(params=REALIZATIONS, ids=[r[0] for r in REALIZATIONS])
def real(request):
    return request.param[1]()


def test_origin_is_in_domain(real):
    o = symspace.origin(real)
    assert symspace.membership(o)
    assert all(v < 1e-12 for v in symspace.shape_residuals(o).values())


def test_origin_delta_values():
    for n in (2, 3):
        H = symspace.h_realization(n)
        assert abs(symspace.delta(symspace.origin(H)) - 2 ** n) < 1e-12
        B = symspace.b_realization(n)
        assert abs(symspace.delta(symspace.origin(B)) - (-1j) ** n) < 1e-12


def test_identity_action(real):
    o = symspace.origin(real)
    p, a = symspace.act(np.eye(2 * real.n), o)
    assert np.allclose(p.z, o.z)
    assert np.allclose(a.lam, np.eye(real.n))
    assert abs(a.j - 1) < 1e-14


def test_cocycle_and_eta_law(real, nrng):
    smp = real.sampler()
    for _ in range(4):
        p1, _ = symspace.random_point(real, smp, nrng)
        p2, _ = symspace.random_point(real, smp, nrng)
        g, h = smp.sample(nrng), smp.sample(nrng)
        hz, ah = symspace.act(h, p1)
        _, agh = symspace.act(g, hz)
        _, a_prod = symspace.act(g @ h, p1)
        assert np.allclose(a_prod.lam, agh.lam @ ah.lam, rtol=1e-9, atol=1e-9)
        gz1, a1 = symspace.act(g, p1)
        gz2, a2 = symspace.act(g, p2)
        assert symspace.membership(gz1)
        e1 = symspace.eta_delta(gz1, gz2).eta
        pred = np.linalg.inv(a1.lam.conj().T) @ symspace.eta_delta(p1, p2).eta @ np.linalg.inv(a2.lam)
        assert np.allclose(e1, pred, rtol=1e-9, atol=1e-9)
        d1 = symspace.delta(gz1)
        assert abs(d1 - symspace.delta(p1) / abs(a1.j) ** 2) < 1e-9 * abs(d1)


def test_wrong_group_element_rejected(real):
    g = np.eye(2 * real.n, dtype=complex)
    g[0, 0] = 3.0
    with pytest.raises(DomainError):
        symspace.act(g, symspace.origin(real))


def test_non_domain_point_fails_membership():
    B = symspace.b_realization(2)
    z = np.array([[0, 2.0], [-2.0, 0]], dtype=complex)
    assert not symspace.membership(DomainPoint(B, z))
    H = symspace.h_realization(2)
    assert not symspace.membership(DomainPoint(H, -1j * np.eye(2)))


def test_cayley_round_trip(nrng):
    for n in (2, 3, 4):
        H = symspace.h_realization(n)
        smp = H.sampler()
        for _ in range(3):
            p, _ = symspace.random_point(H, smp, nrng)
            q = symspace.cayley(p)
            assert symspace.membership(q)
            assert np.abs(symspace.cayley_inverse(q).z - p.z).max() < 1e-10
            q2, _ = symspace.realization_map(symspace.cayley_matrix(n), p, symspace.b_realization(n))
            assert np.abs(q2.z - q.z).max() < 1e-10
    assert np.allclose(symspace.cayley(symspace.origin(symspace.h_realization(2))).z, 0)


def test_cayley_boundary():
    with pytest.raises(BoundaryError):
        symspace.cayley_inverse(DomainPoint(symspace.b_realization(2), np.eye(2, dtype=complex)))
    with pytest.raises(DomainError):
        symspace.cayley(symspace.origin(symspace.b_realization(2)))


def test_stabilizer_factor_is_unitary(real, nrng):
    basis = symspace.stabilizer_basis(real)
    o = symspace.origin(real)
    eta0 = symspace.eta_delta(o, o).eta
    for _ in range(2):
        k = symspace.sample_stabilizer(basis, nrng)
        ko, a = symspace.act(k, o)
        assert np.abs(ko.z - o.z).max() < 1e-10
        assert np.abs(a.lam.conj().T @ eta0 @ a.lam - eta0).max() < 1e-9


def test_measure_invariance(nrng):
    B = symspace.b_realization(2)
    smp = B.sampler()
    p, _ = symspace.random_point(B, smp, nrng, 0.4)
    assert symspace.density_invariance_residual(smp.sample(nrng, 0.4), p) < 1e-6

import random

import numpy as np
import pytest

from quatmod import groups, symspace
from quatmod.doubling import DoublingContext, DoublingError
from quatmod.qalg import MatQuat, QuatAlgebra
from quatmod.verify import r1_sign_variant_mismatch

SHAPES = [(1, 0), (2, 0), (1, 1), (1, 2), (2, 1)]


@pytest.mark.parametrize("m,r", SHAPES)
def test_r_identity(any_alg, m, r):
    assert DoublingContext.build(m, r, any_alg).identity_check()


def test_invalid_shapes():
    with pytest.raises(DoublingError):
        DoublingContext.build(0, 1)
    with pytest.raises(DoublingError):
        DoublingContext.build(1, -1)


@pytest.mark.parametrize("m,r", [(1, 0), (1, 1)])
def test_rho_is_a_homomorphism_into_doubled_group(alg, m, r):
    rng = random.Random(5)
    ctx = DoublingContext.build(m, r, alg)
    J = groups.split_form(alg, ctx.n)
    I = MatQuat.identity(alg, ctx.n)
    assert ctx.rho(I, I).is_identity()
    for _ in range(3):
        g1, g2, h1, h2 = (groups.random_exact_element(alg, m, r, rng, length=2) for _ in range(4))
        rho = ctx.rho_checked(g1, g2)
        assert groups.is_group_element(rho, J)
        assert ctx.rho(g1 @ h1, g2 @ h2) == rho @ ctx.rho(h1, h2)


def test_rho_checked_rejects_non_members(alg):
    ctx = DoublingContext.build(1, 0, alg)
    with pytest.raises(groups.GroupError):
        ctx.rho_checked(MatQuat.identity(alg, 2).scale(2), MatQuat.identity(alg, 2))


@pytest.mark.parametrize("m,r", [(1, 0), (1, 1), (2, 0), (1, 2)])
def test_origin_maps_to_origin(m, r):
    ctx = DoublingContext.build(m, r)
    o = symspace.origin(ctx.source())
    Z = ctx.iota(o, o)
    assert np.abs(Z.z - 1j * np.eye(ctx.N)).max() < 1e-12
    assert symspace.membership(Z)


@pytest.mark.parametrize("m,r", [(1, 0), (1, 1), (2, 0)])
def test_equivariance_factor_and_delta(m, r, nrng):
    ctx = DoublingContext.build(m, r)
    src, tgt = ctx.source(), ctx.target()
    smp = src.sampler()
    for _ in range(5):
        p1, _ = symspace.random_point(src, smp, nrng)
        p2, _ = symspace.random_point(src, smp, nrng)
        g1, g2 = smp.sample(nrng), smp.sample(nrng)
        G = ctx.rho_pair(g1, g2)
        assert symspace.group_residual(tgt, G) < 1e-9
        Z = ctx.iota(p1, p2)
        q1, a1 = symspace.act(g1, p1)
        q2, a2 = symspace.act(g2, p2)
        GZ, aG = symspace.act(G, Z)
        assert np.allclose(ctx.iota(q1, q2).z, GZ.z, rtol=1e-9, atol=1e-9)
        _, dB = ctx.b_matrix(p1, p2)
        _, dB2 = ctx.b_matrix(q1, q2)
        rhs = a1.j * np.conj(a2.j) * dB2
        assert abs(aG.j * dB - rhs) < 1e-9 * abs(rhs)
        pred = abs(dB) ** -2 * symspace.delta(p1) * symspace.delta(p2)
        assert abs(symspace.delta(Z) - pred) < 1e-9 * abs(pred)


@pytest.mark.parametrize("m,r", [(1, 0), (1, 1), (1, 2)])
def test_closed_form(m, r, nrng):
    ctx = DoublingContext.build(m, r)
    src = ctx.source()
    smp = src.sampler()
    for _ in range(3):
        p1, _ = symspace.random_point(src, smp, nrng)
        p2, _ = symspace.random_point(src, smp, nrng)
        assert np.abs(ctx.iota(p1, p2).z - ctx.iota_closed_form(p1, p2)).max() < 1e-9


def test_r1_simplified_form_sign(nrng):
    ctx = DoublingContext.build(1, 1)
    src = ctx.source()
    smp = src.sampler()
    p1, _ = symspace.random_point(src, smp, nrng)
    p2, _ = symspace.random_point(src, smp, nrng)
    assert np.abs(ctx.iota(p1, p2).z - ctx.iota_r1_form(p1, p2, corrected=True)).max() < 1e-9
    assert r1_sign_variant_mismatch(ctx, p1, p2, 1e-9) == [(0, 2)]
    with pytest.raises(DoublingError):
        DoublingContext.build(1, 0).iota_r1_form(p1, p2)


def test_iota_rejects_mismatched_points():
    ctx = DoublingContext.build(1, 1)
    o = symspace.origin(symspace.zeta_realization(1, 0))
    with pytest.raises(symspace.DomainError):
        ctx.iota(o, o)

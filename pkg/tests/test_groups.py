import random

import numpy as np
import pytest

from quatmod import groups
from quatmod.groups import GroupError
from quatmod.qalg import MatQuat, QuatAlgebra, reduced_det
from quatmod.symspace import zeta_realization

SHAPES = [(1, 0), (2, 0), (1, 1), (1, 2), (2, 1)]


def test_standard_form_shape(alg):
    phi = groups.standard_form(alg, 1, 1).matrix
    z = alg.zeta()
    assert phi == MatQuat(alg, [[0, 0, -1], [0, z, 0], [1, 0, 0]])
    assert phi.star() == -phi


@pytest.mark.parametrize("m,r", SHAPES)
def test_identity_and_form_membership(alg, m, r):
    phi = groups.standard_form(alg, m, r)
    assert groups.is_group_element(MatQuat.identity(alg, phi.n), phi)
    assert not groups.is_group_element(MatQuat.identity(alg, phi.n).scale(2), phi)


def test_size_mismatch(alg):
    with pytest.raises(GroupError):
        groups.is_group_element(MatQuat.identity(alg, 2), groups.standard_form(alg, 1, 1))


@pytest.mark.parametrize("m,r", SHAPES)
def test_random_words_and_inverse(any_alg, rng, m, r):
    phi = groups.standard_form(any_alg, m, r)
    for _ in range(3):
        g = groups.random_exact_element(any_alg, m, r, rng, length=3)
        assert g.is_integral()
        assert groups.is_group_element(g, phi)
        assert reduced_det(g) == 1
        assert (g @ groups.group_inverse(g, phi.matrix)).is_identity()


@pytest.mark.parametrize("m,r", SHAPES)
def test_coset_reps_in_doubled_group(alg, m, r):
    J = groups.split_form(alg, 2 * m + r)
    for t in range(m + 1):
        assert groups.is_group_element(groups.coset_rep(alg, t, m, r), J)
        assert groups.is_group_element(groups.modified_coset_rep(alg, t, m, r), J)
    with pytest.raises(GroupError):
        groups.coset_rep(alg, m + 1, m, r)


def test_coset_rep_zero_is_identity(alg):
    assert groups.coset_rep(alg, 0, 1, 1).is_identity()


def test_derived_conjugation_pattern(rng):
    for alg in (QuatAlgebra(-1, -3), QuatAlgebra(-3, -7)):
        for m, r in ((1, 0), (1, 1), (2, 1)):
            for _ in range(3):
                xi = groups.random_exact_element(alg, m, r, rng, length=3)
                assert groups.conjugate_by_tau_m(xi, m, r).matches_derived


def test_congruence_generator_and_level_check(alg, rng):
    for _ in range(5):
        xi = groups.random_exact_element(alg, 1, 1, rng, level=5, congruence=True)
        assert groups.congruence_member(xi, 5, 1, 1)
    groups.check_level(5, alg)
    with pytest.raises(GroupError):
        groups.check_level(4, alg)
    with pytest.raises(GroupError):
        groups.check_level(3, QuatAlgebra(-3, -7))


def test_bottom_left_zero_matches_congruences(alg, rng):
    for _ in range(6):
        xi = groups.random_exact_element(alg, 1, 1, rng, level=7, congruence=True)
        pat = groups.conjugate_by_tau_m(xi, 1, 1)
        cong = groups.tau_pattern_congruences(pat, xi, 7, 1, 1)
        assert groups.bottom_left_vanishes(pat, 7) == all(cong.values())


def test_principal_congruence(alg):
    g = MatQuat.identity(alg, 2)
    assert groups.principal_congruence(g, 5)
    g.e[0][1] = alg(5, 0, 10, 0)
    assert groups.principal_congruence(g, 5)
    g.e[0][1] = alg(1)
    assert not groups.principal_congruence(g, 5)


@pytest.mark.parametrize("m,r", [(1, 0), (1, 1), (1, 2)])
def test_lie_sampler(m, r, nrng):
    R = zeta_realization(m, r)
    smp = R.sampler()
    n = R.n
    assert smp.dim == n * (2 * n - 1)
    for _ in range(3):
        g = smp.sample(nrng)
        assert smp.residual(g) < 1e-10
        assert abs(np.linalg.det(g) - 1) < 1e-9

import math
import random
from fractions import Fraction

import numpy as np
import pytest
from scipy import special

from quatmod import eis, lfun
from quatmod.eis import EisensteinParams, NotHermitianError, UnsupportedLocalFactor
from quatmod.lfun import ConvergenceError, DirichletCharacter, HypothesisError
from quatmod.qalg import MatQuat, QuatAlgebra, lambda_pairing
from quatmod.verify import random_indefinite, random_positive

TRIV = DirichletCharacter.trivial()


def test_positivity_examples(alg):
    for m in (1, 2, 3):
        assert eis.positivity(MatQuat.identity(alg, m)) == eis.PD
        assert eis.positivity(MatQuat.zeros(alg, m)) == eis.PSD
    assert eis.positivity(MatQuat(alg, [[-1]])) == eis.INDEF
    x = alg(1, 1, 0, 0)
    # [[2, x], [x*, 1]]: det = 2 - N(x) = 2 - 2 = 0
    assert eis.positivity(MatQuat(alg, [[2, x], [x.conj(), 1]])) == eis.PSD
    assert eis.positivity(MatQuat(alg, [[3, x], [x.conj(), 1]])) == eis.PD
    assert eis.positivity(MatQuat(alg, [[1, x], [x.conj(), 1]])) == eis.INDEF


def test_positivity_routes_agree_on_random_indices(rng):
    for alg in (QuatAlgebra(-1, -3), QuatAlgebra(-2, -5)):
        for m in (1, 2):
            for _ in range(10):
                h = random_positive(alg, m, rng)
                assert eis.positivity_exact(h) == eis.positivity_numeric(h) == eis.PD
                k = random_indefinite(alg, m, rng)
                assert eis.positivity(k) == eis.INDEF


def test_positivity_rejects_non_hermitian(alg):
    with pytest.raises(NotHermitianError):
        eis.positivity(MatQuat(alg, [[alg.zeta()]]))


def test_quat_rank(alg):
    assert eis.quat_rank(MatQuat.identity(alg, 2)) == 2
    assert eis.quat_rank(MatQuat.zeros(alg, 2)) == 0
    x = alg(1, 1, 0, 0)
    assert eis.quat_rank(MatQuat(alg, [[2, x], [x.conj(), 1]])) == 1


def test_additive_characters():
    assert eis.additive_char(Fraction(1, 2)) == -1
    assert eis.additive_char(Fraction(1, 2), 2) == -1
    assert eis.additive_char(Fraction(1, 3), 2) == 1
    assert eis.principal_part(Fraction(5, 12), 2) == Fraction(3, 4)
    assert eis.principal_part(Fraction(5, 12), 3) == Fraction(2, 3)
    assert eis.adelic_char(Fraction(1, 6)) == 1
    r = random.Random(3)
    for _ in range(300):
        x = Fraction(r.randint(-10 ** 5, 10 ** 5), r.randint(1, 10 ** 4))
        assert eis.adelic_phase(x) == 0
        # the local phases at primes not dividing the denominator vanish
        assert eis.additive_phase(x, 10007) == 0


def test_principal_part_is_p_integral_remainder():
    r = random.Random(4)
    for _ in range(200):
        x = Fraction(r.randint(-999, 999), r.randint(1, 500))
        for p in (2, 3, 5, 7):
            y = x - eis.principal_part(x, p)
            assert y.denominator % p != 0


def test_params_hypothesis():
    with pytest.raises(HypothesisError):
        EisensteinParams(2, 3)
    EisensteinParams(2, 4)


def test_alpha_ratio_values(alg):
    v = eis.alpha_ratio_rank(0, 3, TRIV, 1, 1).value
    assert abs(v - special.zeta(5) / special.zeta(6)) < 1e-8
    one = MatQuat.identity(alg, 2)
    for s in (3.0, 5.5):
        a = eis.alpha_ratio(one, s, TRIV, 1, 2)
        assert a.local_poly_trivial and not a.modulo_A_n
        assert abs(a.value * lfun.lambda_norm(s, TRIV, 2) - 1) < 1e-10
    # chi^2 trivial gives the same partial zetas as the trivial character
    chi4 = DirichletCharacter(4, [0, 1, 0, -1])
    a4 = eis.alpha_ratio_rank(1, 4, chi4, 4, 2).value
    at = eis.alpha_ratio_rank(1, 4, TRIV, 4, 2).value
    assert abs(a4 - at) < 1e-12


def test_alpha_ratio_guards(alg):
    with pytest.raises(UnsupportedLocalFactor):
        eis.alpha_ratio(MatQuat.identity(alg, 1), 3, TRIV, 1, 1, assume_local_trivial=False)
    with pytest.raises(ConvergenceError):
        eis.alpha_ratio_rank(0, 1, TRIV, 1, 1)


def test_xi_scalar_example(alg):
    v = eis.xi_special(np.eye(2), MatQuat(alg, [[1]]), 2, 1)
    pred = 16 * math.pi ** 4 / 6 * math.exp(-2 * math.pi)
    assert abs(v - pred) < 1e-12 * pred


def test_xi_power_law_and_decay(rng):
    for m in (1, 2):
        alg = QuatAlgebra(-1, -3)
        h = random_positive(alg, m, rng)
        l = 2 * m + 1
        y = np.eye(2 * m) / eis.lambda_numeric(h, np.eye(2 * m))
        for t in (Fraction(2), Fraction(7, 3)):
            v1 = eis.xi_special(y, h, l, m)
            v2 = eis.xi_special(y / float(t), h.scale(t), l, m)
            pred = v1 * float(t) ** (2 * m * (l - (2 * m - 1) / 2))
            assert abs(v2 - pred) < 1e-10 * abs(pred)
        mags = [abs(eis.xi_special(y * c, h, l, m)) for c in (1, 10, 100)]
        assert mags[0] > mags[1] > mags[2]


def test_xi_rejects_bad_inputs(alg):
    with pytest.raises(ValueError):
        eis.xi_special(np.eye(2), MatQuat(alg, [[-1]]), 2, 1)
    with pytest.raises(ValueError):
        eis.xi_special(-np.eye(2), MatQuat(alg, [[1]]), 2, 1)


def test_coefficient_zero_off_positive(rng):
    params = EisensteinParams(2, 4)
    for _ in range(10):
        h = random_indefinite(QuatAlgebra(-1, -3), 2, rng)
        c = eis.coefficient_special_point(h, None, params)
        assert c.value == 0 and c.modulo_A_n
    alg = QuatAlgebra(-1, -3)
    assert eis.coefficient_special_point(MatQuat.zeros(alg, 2), None, params).value == 0


def test_coefficient_q_identity(alg):
    h = MatQuat(alg, [[2, alg(0, 1, 0, 0)], [alg(0, -1, 0, 0), 3]])
    params = EisensteinParams(2, 4)
    c = eis.coefficient_special_point(h, None, params)
    assert abs(c.value - math.exp(-2 * math.pi * float(lambda_pairing(h, MatQuat.identity(alg, 2))))) < 1e-15
    assert c.flags() == {"modulo_A_n": True, "local_poly_trivial": False}


def test_coefficient_unit_q_substitution(alg):
    params = EisensteinParams(1, 3)
    h = MatQuat(alg, [[2]])
    # a unit q changes only lambda(q* h q), which equals lambda(h) for norm-one q
    q = MatQuat(alg, [[alg.zeta()]])
    c1 = eis.coefficient_special_point(h, q, params).value
    c0 = eis.coefficient_special_point(h, None, params).value
    assert abs(c1 - c0) < 1e-15
    q2 = MatQuat(alg, [[2]])
    c2 = eis.coefficient_special_point(h, q2, params).value
    # reduced det of the scalar 2 is 4, and q* h q = 8
    pred = 4 ** (params.l - 1) * math.exp(-2 * math.pi * 8)
    assert abs(c2 - pred) < 1e-12 * pred


def test_positive_indices_enumeration(alg):
    assert list(eis.positive_indices(alg, 1, 0)) == []
    assert [h.e[0][0].coords[0] for h in eis.positive_indices(alg, 1, 4)] == [1, 2, 3, 4]
    found = list(eis.positive_indices(alg, 2, 4))
    assert all(eis.positivity(h) == eis.PD for h in found)
    assert all(lambda_pairing(h, MatQuat.identity(alg, 2)) <= 4 for h in found)
    # brute force over a box, filtered by positivity and trace
    box = []
    for a in range(1, 4):
        for d in range(1, 4):
            for c in np.ndindex(3, 3, 3, 3):
                x = alg(*[v - 1 for v in c])
                h = MatQuat(alg, [[a, x], [x.conj(), d]])
                if a + d <= 4 and eis.positivity(h) == eis.PD:
                    box.append(h)
    key = lambda h: tuple(c for row in h.e for q in row for c in q.coords)  # noqa: E731
    assert sorted(map(key, found)) == sorted(map(key, box))
    with pytest.raises(eis.EnumerationError):
        list(eis.positive_indices(alg, 3, 2))


def test_partial_fourier_sum(alg):
    params = EisensteinParams(1, 3)
    sigma = MatQuat(alg, [[Fraction(1, 3)]])
    assert eis.partial_fourier_sum(sigma, np.eye(2), params, 0).value == 0
    res = eis.partial_fourier_sum(sigma, np.eye(2), params, 5)
    pred = sum(math.exp(-2 * math.pi * a) * eis.finite_char(Fraction(a, 3)) for a in range(1, 6))
    assert res.terms == 5 and abs(res.value - pred) < 1e-15
    bigger = eis.partial_fourier_sum(sigma, np.eye(2), params, 6)
    assert abs(bigger.value - res.value) <= res.tail * (1 + 1e-12)
    p2 = EisensteinParams(2, 4)
    s2 = eis.partial_fourier_sum(MatQuat.zeros(alg, 2), np.eye(4), p2, 3)
    assert s2.terms == len(list(eis.positive_indices(alg, 2, 3)))

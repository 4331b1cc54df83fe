"""Acceptance criteria 1-7.  Each test prints one PASS/FAIL line.

Run with ``pytest -v tests/test_acceptance.py`` or directly as a script.
"""
import json
import pathlib
import time
from fractions import Fraction

import pytest

from quatmod import lfun, verify
from quatmod.lfun import HypothesisError
from quatmod.qalg import QuatAlgebra

SEED = 20240611
FIXTURES = pathlib.Path(__file__).parent / "fixtures"
ALGEBRAS = [QuatAlgebra(-1, -3), QuatAlgebra(-2, -5), QuatAlgebra(-3, -7)]


def report(request, number, ok, cases, elapsed, extra=""):
    line = f"criterion {number}: {'PASS' if ok else 'FAIL'}  ({elapsed:.2f}s)"
    bad = [c for c in cases if not c.passed]
    if bad:
        line += "  failing: " + ", ".join(c.name for c in bad)
    if extra:
        line += "  " + extra
    capman = request.config.pluginmanager.getplugin("capturemanager") if request else None
    if capman:
        with capman.global_and_fixture_disabled():
            print("\n" + line)
    else:
        print(line)
    return line


def _timed(fn):
    t0 = time.perf_counter()
    out = fn()
    return out, time.perf_counter() - t0


def criterion_1():
    def body():
        cases = []
        for alg in ALGEBRAS:
            cases += verify.r_identity_cases(alg, verify.SHAPES)
            cases += verify.coset_cases(alg, verify.SHAPES)
        cases += verify.transport_cases(SEED, count=200, max_size=4)
        cases += verify.embedding_product_cases(SEED, count=200)
        return cases

    cases, dt = _timed(body)
    cases.append(verify.Case("runtime_under_10s", dt < 10, dt, 10.0))
    return cases, dt, ""


def criterion_2():
    cases, dt = _timed(lambda: verify.doubling_prop_cases(SEED, 100, 1e-8, ((1, 0), (1, 1), (2, 0))))
    cases.append(verify.Case("runtime_under_60s", dt < 60, dt, 60.0))
    return cases, dt, ""


def criterion_3():
    def body():
        return (verify.transformation_law_cases(SEED, 500, 1e-8)
                + verify.cayley_cases(SEED, 60)
                + verify.unitarity_cases(SEED, 70, 1e-8))

    cases, dt = _timed(body)
    return cases, dt, ""


def criterion_4():
    def body():
        pat = verify.tau_pattern_cases(SEED, 50, 1, 1)
        cases = [verify.Case("expected_pattern_matches", pat["expected_matches"] == pat["count"], detail=pat)]
        info = [f"expected {pat['expected_matches']}/50", f"derived {pat['derived_matches']}/50"]
        for N in (5, 7):
            c = verify.tau_congruence_cases(SEED, 50, N, 1, 1)
            cases.append(verify.Case(f"congruences_hold[N={N}]", c["all_hold"] == c["count"], detail=c))
            info.append(f"N={N}: all congruences {c['all_hold']}/50, per-congruence {c['per_congruence']}, "
                        f"bottom-left zero iff congruences {c['bottom_left_iff_congruences']}/50")
        return cases, "; ".join(info)

    (cases, info), dt = _timed(body)
    return cases, dt, info


def criterion_5():
    cases, dt = _timed(lambda: verify.lfun_cases(SEED, 100, 100_000))
    return cases, dt, ""


def criterion_6():
    cases, dt = _timed(lambda: verify.eis_cases(SEED, 100))
    return cases, dt, ""


def criterion_7():
    def body():
        doc = json.loads((FIXTURES / "exponents.json").read_text())
        cases = []
        for row in doc["algebraicity"]:
            got = lfun.algebraicity_exponent(row["n"], row["k"], row["mu"])
            cases.append(verify.Case(f"algebraicity{(row['n'], row['k'], row['mu'])}",
                                     got == Fraction(row["expected"]), detail={"got": str(got)}))
        for row in doc["nearly_holo"]:
            got = lfun.nearly_holo_exponent(row["m"], row["l"], row["mu"])
            cases.append(verify.Case(f"nearly_holo{(row['m'], row['l'], row['mu'])}",
                                     list(got) == row["expected"], detail={"got": list(got)}))
        for kind, fn, keys in (("algebraicity", lfun.algebraicity_exponent, ("n", "k", "mu")),
                               ("nearly_holo", lfun.nearly_holo_exponent, ("m", "l", "mu"))):
            for row in doc["rejected"][kind]:
                try:
                    fn(*(row[k] for k in keys))
                    ok = False
                except HypothesisError:
                    ok = True
                cases.append(verify.Case(f"{kind}_rejects{tuple(row[k] for k in keys)}", ok))
        return cases

    cases, dt = _timed(body)
    return cases, dt, f"{len(cases)} fixture rows"


CRITERIA = {1: criterion_1, 2: criterion_2, 3: criterion_3, 4: criterion_4,
            5: criterion_5, 6: criterion_6, 7: criterion_7}
_elapsed = {}


@pytest.mark.parametrize("number", sorted(CRITERIA))
def test_criterion(number, request):
    cases, dt, extra = CRITERIA[number]()
    _elapsed[number] = dt
    ok = all(c.passed for c in cases)
    report(request, number, ok, cases, dt, extra)
    assert ok, [c.to_json() for c in cases if not c.passed]


def test_total_runtime_under_five_minutes(request):
    if len(_elapsed) < len(CRITERIA):
        pytest.skip("needs the full criterion run")
    total = sum(_elapsed.values())
    report(request, "total", total < 300, [], total)
    assert total < 300


if __name__ == "__main__":
    for n, fn in CRITERIA.items():
        cases, dt, extra = fn()
        report(None, n, all(c.passed for c in cases), cases, dt, extra)

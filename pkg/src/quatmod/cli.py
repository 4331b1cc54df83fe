"""Command-line front end.  Every command prints a single JSON object.

Exit codes: 0 success, 1 verification failure, 2 usage error,
3 precondition or domain error.
"""
from __future__ import annotations

import argparse
import json
import math
import os
import random
import sys
from concurrent.futures import ThreadPoolExecutor
from fractions import Fraction

import numpy as np

from . import __version__, eis, fixtures, groups, kernels, lfun, symspace, verify
from .doubling import DoublingContext, DoublingError
from .qalg import AlgebraError, MatQuat, QuatAlgebra

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_PRECONDITION = 0, 1, 2, 3
SUITE_NAMES = ("qalg", "groups", "symspace", "doubling", "lfun", "eis", "all")

PRECONDITION_ERRORS = (
    ValueError, ArithmeticError, AlgebraError, DoublingError, groups.GroupError, symspace.DomainError,
    lfun.ConvergenceError, lfun.PoleError, lfun.SatakeError, lfun.HypothesisError,
    eis.UnsupportedLocalFactor, eis.EnumerationError, OSError, KeyError,
)


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _emit(doc: dict, human: str | None = None) -> None:
    sys.stdout.write(json.dumps(doc, indent=2) + "\n")
    if human:
        sys.stderr.write(human + "\n")


def _cnum(z: complex) -> list:
    z = complex(z)
    return [z.real, z.imag]


def _parse_complex(text: str) -> complex:
    return complex(text.replace(" ", "").replace("i", "j"))


def _threads() -> int:
    try:
        return max(1, int(os.environ.get("QUATMOD_THREADS", "1")))
    except ValueError:
        return 1


def _algebra(args) -> QuatAlgebra:
    return QuatAlgebra(args.alpha, args.beta)


def _character(args) -> lfun.DirichletCharacter:
    if args.chi_table is None:
        return lfun.DirichletCharacter.trivial(args.chi_modulus)
    table = args.chi_table
    if os.path.exists(table):
        table = json.dumps(fixtures.load_json(table))
    return lfun.parse_char_table(args.chi_modulus, json.loads(table))


def _base(command: str, args, value, provenance: str, flags: dict | None = None, **extra) -> dict:
    doc = {"command": command, "value": value, "flags": flags or {}, "provenance": provenance}
    tol = getattr(args, "tol", None)
    if tol is not None:
        doc["tolerance"] = tol
    doc.update(extra)
    return doc


# ---------------------------------------------------------------------------
# commands


def cmd_verify(args) -> int:
    names = [s for s in SUITE_NAMES if s != "all"] if args.suite == "all" else [args.suite]

    def run(name):
        return verify.run_suite(name, args.seed, args.tol, args.pmax)

    with ThreadPoolExecutor(max_workers=min(_threads(), len(names))) as ex:
        results = list(ex.map(run, names))  # map keeps submission order
    cases = [c for block in results for c in block]
    failures = [c.to_json() for c in cases if not c.passed]
    doc = {
        "command": "verify",
        "suite": args.suite,
        "seed": args.seed,
        "tolerance": args.tol,
        "pmax": args.pmax,
        "backend": kernels.BACKEND,
        "cases_run": len(cases),
        "failures": len(failures),
        "cases": [c.to_json() for c in cases],
    }
    human = f"verify {args.suite}: {len(cases) - len(failures)}/{len(cases)} passed" if args.human else None
    _emit(doc, human)
    return EXIT_OK if not failures else EXIT_FAIL


def cmd_lvalue(args) -> int:
    chi = _character(args)
    s = _parse_complex(args.s)
    if args.fixture:
        sat = lfun.SatakeData.load(args.fixture)
        rep = lfun.l_function(s, sat, chi, args.pmax, args.variant)
        prov = "truncated Euler product of the standard L-function from Satake parameters"
        flags = dict(rep.flags)
        flags["degree"] = sat.n
    else:
        rep = lfun.dirichlet_l_partial(s, chi, args.exclude or (), args.pmax)
        prov = "truncated Euler product of the Dirichlet L-function"
        flags = {"excluded_primes": sorted(args.exclude or [])}
    doc = _base("lvalue", args, _cnum(rep.value), prov, flags, pmax=rep.pmax, tail_estimate=rep.tail,
                character={"modulus": chi.modulus, "conductor": chi.conductor})
    _emit(doc, f"L = {rep.value:.12g}" if args.human else None)
    return EXIT_OK


def cmd_gamma(args) -> int:
    val = lfun.gamma_m(args.m, _parse_complex(args.s))
    _emit(_base("gamma", args, _cnum(val), "Gamma_m(s) = pi^(m(m-1)) prod_{i<m} Gamma(s-2i)"),
          f"Gamma_{args.m} = {val:.12g}" if args.human else None)
    return EXIT_OK


def cmd_ck(args) -> int:
    val = lfun.reproducing_constant(args.n, args.k, _parse_complex(args.s))
    doc = _base("ck", args, _cnum(val),
                "pi^(n(n-1)/2) prod Gamma(s+k-2n+3+2j) / prod Gamma(s+k-n+2+j), j < n-1",
                {"modulo_algebraic_factor": True})
    _emit(doc, f"c_k = {val:.12g}" if args.human else None)
    return EXIT_OK


def cmd_exponent(args) -> int:
    if args.kind == "algebraicity":
        if args.n is None or args.k is None:
            raise UsageError("algebraicity exponent needs --n and --k")
        val = lfun.algebraicity_exponent(args.n, args.k, args.mu)
        doc = _base("exponent", args, fixtures.frac_str(val), "n(k+mu) - (3/2) n (n-1)")
    else:
        if args.m is None or args.l is None:
            raise UsageError("nearly holomorphic exponents need --m and --l")
        a, b = lfun.nearly_holo_exponent(args.m, args.l, args.mu)
        doc = _base("exponent", args, {"alpha": a, "beta": b}, "alpha = m(l-mu), beta = m(l+mu) - m(m-1)")
    _emit(doc)
    return EXIT_OK


def cmd_pfaffian(args) -> int:
    if args.matrix:
        A = fixtures.complex_from_json(fixtures.load_json(args.matrix))
    else:
        rng = np.random.default_rng(args.seed)
        A = verify.random_skew(rng, args.size)
    pf = lfun.pfaffian(A)
    det = complex(np.linalg.det(A))
    res = abs(pf * pf - det) / max(1.0, abs(det))
    doc = _base("pfaffian", args, _cnum(pf), "Parlett-Reid skew tridiagonalization",
                {"backend": kernels.BACKEND}, det=_cnum(det), residual_pf2_minus_det=res)
    _emit(doc)
    return EXIT_OK if res < args.tol else EXIT_FAIL


def _read_point(path, src) -> symspace.DomainPoint:
    doc = fixtures.load_json(path)
    z = fixtures.complex_from_json(doc)
    p = symspace.DomainPoint(src, z)
    if not symspace.membership(p):
        raise symspace.DomainError(f"{path} is not a point of the domain")
    return p


def cmd_embed_iota(args) -> int:
    ctx = DoublingContext.build(args.m, args.r)
    src = ctx.source()
    rng = np.random.default_rng(args.seed)
    smp = src.sampler()
    p1 = _read_point(args.z1, src) if args.z1 else symspace.random_point(src, smp, rng)[0]
    p2 = _read_point(args.z2, src) if args.z2 else symspace.random_point(src, smp, rng)[0]
    Z = ctx.iota(p1, p2)
    _, detB = ctx.b_matrix(p1, p2)
    shape = symspace.shape_residuals(Z)
    margin = symspace.positivity_margin(Z)
    d = symspace.delta(Z)
    pred = abs(detB) ** -2 * symspace.delta(p1) * symspace.delta(p2)
    closed = float(np.abs(Z.z - ctx.iota_closed_form(p1, p2)).max())
    residuals = {"membership_shape": max(shape.values()), "positivity_margin": margin,
                 "delta_identity": abs(d - pred) / abs(pred), "closed_form": closed}
    ok = residuals["membership_shape"] < args.tol and margin > 0 and residuals["delta_identity"] < args.tol \
        and closed < args.tol
    doc = _base("embed-iota", args, {"realization": "ZN", "matrix": fixtures.complex_to_json(Z.z)},
                "A B^-1 S from the stacked image of U(z1) x U(z2)", {"m": args.m, "r": args.r},
                detB=_cnum(detB), residuals=residuals,
                inputs={"z1": fixtures.complex_to_json(p1.z), "z2": fixtures.complex_to_json(p2.z)})
    _emit(doc)
    return EXIT_OK if ok else EXIT_FAIL


def _read_group_element(path, alg, phi) -> MatQuat:
    doc = fixtures.load_json(path)
    g = fixtures.matrix_from_json(doc, fixtures.algebra_from_json(doc["algebra"]) if "algebra" in doc else alg)
    if g.alg != alg:
        raise ValueError("fixture algebra differs from --alpha/--beta")
    if not groups.is_group_element(g, phi):
        raise groups.GroupError(f"{path} is not an element of the group")
    return g


def cmd_embed_rho(args) -> int:
    alg = _algebra(args)
    ctx = DoublingContext.build(args.m, args.r, alg)
    phi = groups.standard_form(alg, args.m, args.r)
    rng = random.Random(args.seed)
    g1 = _read_group_element(args.g1, alg, phi) if args.g1 else groups.random_exact_element(alg, args.m, args.r, rng, 3)
    g2 = _read_group_element(args.g2, alg, phi) if args.g2 else groups.random_exact_element(alg, args.m, args.r, rng, 3)
    G = ctx.rho(g1, g2)
    member = groups.is_group_element(G, groups.split_form(alg, ctx.n))
    doc = _base("embed-rho", args, fixtures.matrix_to_json(G, m=args.m, r=args.r, N=ctx.N),
                "R^-1 diag[g1, g2] R", {"exact": True}, member_of_G_N=member,
                identity_R_omega_R=ctx.identity_check(),
                inputs={"g1": fixtures.matrix_to_json(g1), "g2": fixtures.matrix_to_json(g2)})
    _emit(doc)
    return EXIT_OK if member else EXIT_FAIL


def cmd_coset(args) -> int:
    alg = _algebra(args)
    if args.modified:
        tau = groups.modified_coset_rep(alg, args.t, args.m, args.r)
        prov = "tau_t rho(1, kappa_t x 1)"
    else:
        tau = groups.coset_rep(alg, args.t, args.m, args.r)
        prov = "tau_t = [[1, 0], [C_t, 1]]"
    n = 2 * args.m + args.r
    member = groups.is_group_element(tau, groups.split_form(alg, n))
    doc = _base("coset", args, fixtures.matrix_to_json(tau, m=args.m, r=args.r, N=2 * n), prov,
                {"modified": args.modified}, member_of_G_N=member)
    _emit(doc)
    return EXIT_OK if member else EXIT_FAIL


def cmd_fourier(args) -> int:
    alg = _algebra(args)
    params = eis.EisensteinParams(args.m, args.l, _character(args), args.chi_modulus)
    h = fixtures.matrix_from_json(fixtures.load_json(args.h), alg)
    q = fixtures.matrix_from_json(fixtures.load_json(args.q), alg) if args.q else None
    c = eis.coefficient_special_point(h, q, params)
    doc = _base("fourier", args, _cnum(c.value), "C e_inf(i lambda(q* h q)), C = chi(det q)^-1 |det q|_h^(2m-1-l)",
                c.flags(), positivity=eis.positivity(h))
    _emit(doc)
    return EXIT_OK


def cmd_fourier_sum(args) -> int:
    alg = _algebra(args)
    params = eis.EisensteinParams(args.m, args.l, _character(args), args.chi_modulus)
    sigma = fixtures.matrix_from_json(fixtures.load_json(args.sigma), alg) if args.sigma \
        else MatQuat.zeros(alg, args.m)
    y = fixtures.complex_from_json(fixtures.load_json(args.y)) if args.y else np.eye(2 * args.m)
    ps = eis.partial_fourier_sum(sigma, y, params, args.bound)
    doc = _base("fourier-sum", args, _cnum(ps.value),
                "sum over positive h with lambda(h) <= bound of e_inf(i lambda(h y)) e_h(lambda(h sigma))",
                ps.flags, terms=ps.terms, truncation={"bound": args.bound, "tail_estimate": ps.tail})
    _emit(doc)
    return EXIT_OK


# ---------------------------------------------------------------------------
# parser


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--tol", type=float, default=1e-8)
    common.add_argument("--pmax", type=int, default=100_000)
    common.add_argument("--fixture", default=None)
    common.add_argument("--human", action="store_true")

    alg = _Parser(add_help=False)
    alg.add_argument("--alpha", type=int, default=-1)
    alg.add_argument("--beta", type=int, default=-3)

    chi = _Parser(add_help=False)
    chi.add_argument("--chi-modulus", type=int, default=1)
    chi.add_argument("--chi-table", default=None, help="JSON list (or file) of values per residue or per unit")

    p = _Parser(prog="quatmod", description="Quaternionic unitary groups, doubling and L-value numerics.")
    p.add_argument("--version", action="version", version=__version__)
    sub = p.add_subparsers(dest="command", parser_class=_Parser)

    v = sub.add_parser("verify", parents=[common])
    v.add_argument("suite")
    v.set_defaults(func=cmd_verify)

    lv = sub.add_parser("lvalue", parents=[common, chi])
    lv.add_argument("--s", required=True)
    lv.add_argument("--exclude", type=int, nargs="*")
    lv.add_argument("--variant", choices=lfun.EULER_VARIANTS, default="s_free")
    lv.set_defaults(func=cmd_lvalue)

    g = sub.add_parser("gamma", parents=[common])
    g.add_argument("--m", type=int, required=True)
    g.add_argument("--s", required=True)
    g.set_defaults(func=cmd_gamma)

    ck = sub.add_parser("ck", parents=[common])
    ck.add_argument("--n", type=int, required=True)
    ck.add_argument("--k", type=int, required=True)
    ck.add_argument("--s", required=True)
    ck.set_defaults(func=cmd_ck)

    ex = sub.add_parser("exponent", parents=[common])
    ex.add_argument("--kind", choices=("algebraicity", "nearly-holo"), default="algebraicity")
    ex.add_argument("--n", type=int)
    ex.add_argument("--k", type=int)
    ex.add_argument("--m", type=int)
    ex.add_argument("--l", type=int)
    ex.add_argument("--mu", type=int, required=True)
    ex.set_defaults(func=cmd_exponent)

    pf = sub.add_parser("pfaffian", parents=[common])
    pf.add_argument("--matrix", default=None)
    pf.add_argument("--size", type=int, default=6)
    pf.set_defaults(func=cmd_pfaffian)

    ei = sub.add_parser("embed-iota", parents=[common])
    ei.add_argument("--m", type=int, required=True)
    ei.add_argument("--r", type=int, default=0)
    ei.add_argument("--z1")
    ei.add_argument("--z2")
    ei.set_defaults(func=cmd_embed_iota)

    er = sub.add_parser("embed-rho", parents=[common, alg])
    er.add_argument("--m", type=int, required=True)
    er.add_argument("--r", type=int, default=0)
    er.add_argument("--g1")
    er.add_argument("--g2")
    er.set_defaults(func=cmd_embed_rho)

    co = sub.add_parser("coset", parents=[common, alg])
    co.add_argument("--t", type=int, required=True)
    co.add_argument("--m", type=int, required=True)
    co.add_argument("--r", type=int, default=0)
    co.add_argument("--modified", action="store_true")
    co.set_defaults(func=cmd_coset)

    fo = sub.add_parser("fourier", parents=[common, alg, chi])
    fo.add_argument("--m", type=int, required=True)
    fo.add_argument("--l", type=int, required=True)
    fo.add_argument("--h", required=True)
    fo.add_argument("--q")
    fo.set_defaults(func=cmd_fourier)

    fs = sub.add_parser("fourier-sum", parents=[common, alg, chi])
    fs.add_argument("--m", type=int, required=True)
    fs.add_argument("--l", type=int, required=True)
    fs.add_argument("--bound", type=int, required=True)
    fs.add_argument("--sigma")
    fs.add_argument("--y")
    fs.set_defaults(func=cmd_fourier_sum)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        if args.command is None:
            raise UsageError("a command is required")
        if args.command == "verify" and args.suite not in SUITE_NAMES:
            raise UsageError(f"unknown suite {args.suite!r}; choose from {', '.join(SUITE_NAMES)}")
        return args.func(args)
    except UsageError as exc:
        _emit({"error": "usage", "message": str(exc)})
        return EXIT_USAGE
    except PRECONDITION_ERRORS as exc:
        _emit({"error": "precondition", "type": type(exc).__name__, "message": str(exc)})
        return EXIT_PRECONDITION


if __name__ == "__main__":
    sys.exit(main())

"""Command-line front end.

stdout carries only JSON (``gen`` writes scm-v1 text); diagnostics go to
stderr.  Exit codes: 0 ok, 1 parse/usage error, 2 axiom violation,
3 spectral failure, 4 internal inconsistency.
"""
from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import duality, group_scheme, polynomial
from .fixtures import FAMILIES, FixtureError, FixtureSpec, generate_fixture, relations_for
from .numerics import DEFAULT_EPS_CLUSTER, DEFAULT_EPS_EQ, Tolerance, format_scalar
from .report import InconsistencyError, dumps, run_analyze
from .scheme import (AxiomViolation, SchemeError, ScmParseError, format_scm, read_scm,
                     verify_scheme)
from .spectral import KreinViolation, SpectralError, decompose, krein_parameters

EXIT_OK, EXIT_PARSE, EXIT_AXIOM, EXIT_SPECTRAL, EXIT_INTERNAL = 0, 1, 2, 3, 4


class UsageError(ValueError):
    pass


def _tolerance(args) -> Tolerance:
    if args.mode == "exact":
        return Tolerance.exact()
    eps = DEFAULT_EPS_EQ if args.eps is None else args.eps
    return Tolerance.approx(eps, max(eps, DEFAULT_EPS_CLUSTER))


def _sigma(text: str):
    try:
        return tuple(int(v) for v in text.split(","))
    except ValueError:
        raise UsageError(f"bad --sigma {text!r}; expected comma-separated indices") from None


def _add_fixture_args(p, with_file=True):
    if with_file:
        p.add_argument("file", nargs="?", help="scheme in scm-v1 format")
    p.add_argument("--family", choices=FAMILIES)
    p.add_argument("--n", type=int, help="word length (hamming) or cycle length")
    p.add_argument("--q", type=int, default=2, help="alphabet size (hamming)")
    p.add_argument("--m", type=int, help="binary-group rank")


def _fixture_spec(args) -> FixtureSpec:
    if args.family == "hamming":
        return FixtureSpec("hamming", {"n": args.n, "q": args.q})
    if args.family == "cycle":
        return FixtureSpec("cycle", {"n": args.n})
    return FixtureSpec("binary-group", {"m": args.m})


def _load_scheme(args):
    if getattr(args, "file", None):
        r, d = read_scm(args.file)
        return verify_scheme(r, d)
    if args.family is None:
        raise UsageError("give a scheme file or --family")
    try:
        return generate_fixture(_fixture_spec(args))
    except (FixtureError, TypeError) as exc:
        raise UsageError(str(exc)) from None


# --- commands ---------------------------------------------------------------

def cmd_verify(args):
    s = _load_scheme(args)
    return {"valid": True, "n": s.n, "d": s.d, "k": s.k, "p": s.p}


def cmd_analyze(args):
    return run_analyze(_load_scheme(args), _tolerance(args), args.seed)


def cmd_selfdual(args):
    tol = _tolerance(args)
    s = _load_scheme(args)
    sp = decompose(s, tol=tol)
    q = krein_parameters(sp, s.params)
    out = {"mode": tol.mode.value, "ordering_convention": sp.ordering, "n": s.n, "d": s.d}
    if args.enumerate:
        cls = duality.classify_all_orderings(s.params, sp, q, tol)
        out["summary"] = cls.summary()
        out["reports"] = [r.as_dict() for r in cls.reports]
    else:
        sigma = _sigma(args.sigma) if args.sigma else tuple(range(s.d + 1))
        out["reports"] = [duality.duality_report(s.params, sp, q, sigma, tol).as_dict()]
    return out


def cmd_group_scheme(args):
    m = args.m
    s = group_scheme.build_group_scheme(m)
    if args.emit_scm:
        Path(args.emit_scm).write_text(format_scm(s.r, s.d, [f"binary group scheme X^({m}), n={s.n}"]))
    out = {"m": m, "n": s.n, "d": s.d, "k": s.k,
           "eigenmatrix": group_scheme.closed_form_eigenmatrix(m)}
    if m <= 4:
        out["kronecker_associates_ok"] = group_scheme.check_kronecker_structure(m)
        out["spectral_matches_closed_form"] = group_scheme.closed_form_matches_spectral(m, _tolerance(args))
    return out


def cmd_gl2_classify(args):
    tol = _tolerance(args)
    if args.S:
        S = group_scheme.Gf2Matrix.parse(args.S)
        if args.m is not None and args.m != S.m:
            raise UsageError(f"--S is {S.m}x{S.m} but --m is {args.m}")
        if not S.invertible:
            raise UsageError(f"--S {args.S} is singular over GF(2)")
        data = group_scheme.group_scheme_data(S.m, tol)
        return {"m": S.m, **group_scheme.analyze_matrix(data, S)}
    if args.m is None:
        raise UsageError("gl2-classify needs --m or --S")
    if args.m > group_scheme.MAX_ENUMERATE_M:
        raise UsageError(f"full enumeration of GL(m,2) is limited to m <= {group_scheme.MAX_ENUMERATE_M}")
    rep = group_scheme.classify_linear(args.m, args.trials_nonlinear, args.seed or 0, tol,
                                       check_nsd=args.m <= 3)
    return rep.as_dict(details=args.details or args.m <= 2)


def cmd_poly_check(args):
    tol = _tolerance(args)
    s = _load_scheme(args)
    sp = decompose(s, tol=tol)
    q = krein_parameters(sp, s.params)
    pcheck = polynomial.is_p_polynomial(s.params)
    qcheck = polynomial.is_q_polynomial_ordering(q, tol)
    out = {"p_polynomial": pcheck.ok, "q_polynomial_ordering": qcheck.ok,
           "aw_max_residual": None, "main2_verified": None, "orderings_checked": 0}
    if qcheck.ambiguous:
        out["q_ambiguous"] = [list(w) for w in qcheck.ambiguous]
    if pcheck.ok and qcheck.ok:
        out["aw_max_residual"] = format_scalar(polynomial.check_askey_wilson(s.params, sp, q, tol))
    if pcheck.ok and s.d <= duality.MAX_ENUMERATE_D:
        rep = polynomial.verify_theorem_main2(s.params, sp, q, tol)
        out["main2_verified"] = rep.verified
        out["orderings_checked"] = rep.orderings_checked
        out["q_polynomial_orderings"] = rep.q_polynomial_orderings
    return out


def cmd_gen(args):
    try:
        spec = _fixture_spec(args)
    except (FixtureError, TypeError) as exc:
        raise UsageError(str(exc)) from None
    r = relations_for(spec)
    text = format_scm(r, comments=[f"{spec.label()}"])
    if args.out:
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text)
    return None


# --- parser -------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    g = common.add_argument_group("global options")
    g.add_argument("--mode", choices=("exact", "approx"), default=argparse.SUPPRESS)
    g.add_argument("--eps", type=float, default=argparse.SUPPRESS, help="equality tolerance (approx mode)")
    g.add_argument("--json", dest="json_path", default=argparse.SUPPRESS, help="also write JSON here")
    g.add_argument("--seed", type=int, default=argparse.SUPPRESS)

    parser = argparse.ArgumentParser(prog="schemedual", description=__doc__.splitlines()[0])
    parser.add_argument("--mode", choices=("exact", "approx"), default="exact")
    parser.add_argument("--eps", type=float, default=None)
    parser.add_argument("--json", dest="json_path", default=None)
    parser.add_argument("--seed", type=int, default=None)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("verify", parents=[common], help="check the scheme axioms")
    _add_fixture_args(p)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("analyze", parents=[common], help="full parameter report")
    _add_fixture_args(p)
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("selfdual", parents=[common], help="self-duality for an ordering")
    _add_fixture_args(p)
    p.add_argument("--sigma", help="ordering as comma-separated indices, e.g. 0,2,1,3")
    p.add_argument("--enumerate", action="store_true", help="classify every ordering fixing 0")
    p.set_defaults(func=cmd_selfdual)

    p = sub.add_parser("group-scheme", parents=[common], help="binary group scheme X^(m)")
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--emit-scm", help="write the relation matrix to this file")
    p.set_defaults(func=cmd_group_scheme)

    p = sub.add_parser("gl2-classify", parents=[common], help="classify GF(2)-linear reorderings")
    p.add_argument("--m", type=int)
    p.add_argument("--S", help="single matrix, rows as bit strings: 10,11")
    p.add_argument("--trials-nonlinear", type=int, default=0)
    p.add_argument("--details", action="store_true", help="include per-matrix eigenmatrices")
    p.set_defaults(func=cmd_gl2_classify)

    p = sub.add_parser("poly-check", parents=[common], help="P-/Q-polynomial and Askey-Wilson checks")
    _add_fixture_args(p)
    p.set_defaults(func=cmd_poly_check)

    p = sub.add_parser("gen", parents=[common], help="write a fixture in scm-v1 format")
    _add_fixture_args(p, with_file=False)
    p.add_argument("-o", "--out", help="output path (default stdout)")
    p.set_defaults(func=cmd_gen)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_PARSE if exc.code else EXIT_OK
    try:
        result = args.func(args)
    except (ScmParseError, UsageError, FixtureError, group_scheme.GroupSchemeError,
            duality.OrderingError, OSError) as exc:
        return _fail(EXIT_PARSE, "parse", exc)
    except AxiomViolation as exc:
        return _fail(EXIT_AXIOM, "axiom", exc, exc.as_dict())
    except SchemeError as exc:
        return _fail(EXIT_AXIOM, "axiom", exc)
    except (KreinViolation, InconsistencyError) as exc:
        return _fail(EXIT_INTERNAL, "inconsistency", exc)
    except (SpectralError, polynomial.NotPolynomial) as exc:
        return _fail(EXIT_SPECTRAL, "spectral", exc)
    if result is not None:
        text = dumps(result)
        sys.stdout.write(text + "\n")
        if args.json_path:
            Path(args.json_path).write_text(text + "\n")
    return EXIT_OK


def _fail(code, kind, exc, detail=None) -> int:
    print(f"error ({kind}): {exc}", file=sys.stderr)
    if detail:
        print(dumps(detail), file=sys.stderr)
    return code


if __name__ == "__main__":
    sys.exit(main())

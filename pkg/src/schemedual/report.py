"""Full analysis pipeline and its JSON form."""
from __future__ import annotations

import json
from fractions import Fraction

import numpy as np

from . import duality, polynomial
from .numerics import Tolerance, as_array, first_mismatch, format_scalar, parse_scalar
from .scheme import AssociationScheme
from .spectral import (SpectralData, SpectralError, decompose, krein_parameters,
                       verify_p_from_Q)

FORMAT = "schemedual-report-v1"


class InconsistencyError(RuntimeError):
    """Two routes to the same quantity disagree."""


def encode(a):
    """Nested lists of strings for scalars; ints stay ints."""
    a = np.asarray(a, dtype=object)
    if a.ndim == 0:
        v = a.item()
        return v if isinstance(v, (int, np.integer)) and not isinstance(v, bool) else format_scalar(v)
    return [encode(x) for x in a]


def encode_scalars(a):
    a = np.asarray(a, dtype=object)
    if a.ndim == 0:
        return format_scalar(a.item())
    return [encode_scalars(x) for x in a]


def decode_scalars(obj, tol: Tolerance):
    if isinstance(obj, list):
        arr = np.array([decode_scalars(x, tol) for x in obj], dtype=object)
        return arr if tol.is_exact else arr.astype(float)
    return parse_scalar(obj, tol)


def spectral_to_json(sp: SpectralData, q) -> dict:
    return {
        "P": encode_scalars(sp.P),
        "Q": encode_scalars(sp.Q),
        "m": encode_scalars(sp.m),
        "q": encode_scalars(q),
    }


def run_analyze(s: AssociationScheme, tol: Tolerance, seed: int | None = None) -> dict:
    """verify (already done) -> parameters -> idempotents -> Krein -> duality -> polynomials.

    Raises SpectralError (incl. KreinViolation) or InconsistencyError.
    """
    params = s.params
    kw = {} if seed is None else {"seed": seed}
    sp = decompose(s, tol=tol, **kw)
    q = krein_parameters(sp, params)

    n_eye = as_array(np.eye(sp.d + 1, dtype=np.int64) * sp.n, tol)
    if first_mismatch(sp.P.dot(sp.Q), n_eye, tol) or first_mismatch(sp.Q.dot(sp.P), n_eye, tol):
        raise InconsistencyError("PQ != nI")
    ok, bad = verify_p_from_Q(sp, params)
    if not ok:
        raise InconsistencyError(f"intersection numbers disagree with Q-reconstruction at {bad}")

    ident = tuple(range(sp.d + 1))
    rep = duality.duality_report(params, sp, q, ident, tol)

    pcheck = polynomial.is_p_polynomial(params)
    qcheck = polynomial.is_q_polynomial_ordering(q, tol)
    poly = {
        "p_polynomial": pcheck.ok,
        "p_witness": list(pcheck.witness) if pcheck.witness else None,
        "q_polynomial_ordering": qcheck.ok,
        "q_witness": list(qcheck.witness) if qcheck.witness else None,
        "q_ambiguous": [list(w) for w in qcheck.ambiguous],
        "aw_max_residual": None,
        "u_reproduces_P": None,
        "ustar_reproduces_Q": None,
    }
    if pcheck.ok:
        tp = polynomial.tridiagonal_params(params, sp, q)
        u = polynomial.build_polynomials(tp, tol=tol)
        poly["u_reproduces_P"] = polynomial.check_lemma_pij(sp, params, u)[0]
        if qcheck.ok:
            ustar = polynomial.build_polynomials(tp, starred=True, tol=tol)
            poly["ustar_reproduces_Q"] = polynomial.check_lemma_pij(sp, params, ustar, dual=True)[0]
            poly["aw_max_residual"] = format_scalar(polynomial.check_askey_wilson(params, sp, q, tol))

    return {
        "format": FORMAT,
        "mode": tol.mode.value,
        "ordering_convention": sp.ordering,
        "scheme": {"n": s.n, "d": s.d},
        "k": [int(v) for v in params.k],
        "p": params.p.tolist(),
        **spectral_to_json(sp, q),
        "duality": rep.as_dict(),
        "polynomial": poly,
    }


def load_report(text: str) -> dict:
    """Parse a report, turning scalar strings back into Fractions/floats."""
    data = json.loads(text)
    tol = Tolerance.exact() if data["mode"] == "exact" else Tolerance.approx()
    for key in ("P", "Q", "m", "q"):
        data[key] = decode_scalars(data[key], tol)
    data["p"] = np.array(data["p"], dtype=np.int64)
    return data


def dumps(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True, default=_default)


def _default(o):
    if isinstance(o, np.ndarray):
        return encode(o)
    if isinstance(o, (np.integer,)):
        return int(o)
    if isinstance(o, (np.bool_,)):
        return bool(o)
    if isinstance(o, (Fraction, float, np.floating)):
        return format_scalar(o)
    raise TypeError(f"not JSON serializable: {type(o).__name__}")


__all__ = ["run_analyze", "load_report", "dumps", "InconsistencyError", "SpectralError"]

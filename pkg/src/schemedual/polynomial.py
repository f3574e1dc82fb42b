"""P-polynomial / Q-polynomial checks and the Askey-Wilson polynomial sequences.

Polynomials are dense coefficient lists, constant term first, evaluated by
Horner's rule.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import duality
from .numerics import EXACT, Tolerance, as_array, first_mismatch, is_zero, max_abs
from .scheme import SchemeParameters
from .spectral import SpectralData


class NotPolynomial(ValueError):
    pass


@dataclass
class TriangleCheck:
    ok: bool
    witness: tuple[int, int, int] | None = None
    reason: str | None = None
    ambiguous: list = field(default_factory=list)

    def __bool__(self):
        return self.ok


def _triangle_masks(d: int):
    idx = np.arange(d + 1)
    h, i, j = np.meshgrid(idx, idx, idx, indexing="ij")
    greater = (h > i + j) | (i > h + j) | (j > h + i)
    equal = (h == i + j) | (i == h + j) | (j == h + i)
    return greater, equal


def triangle_check(t: np.ndarray, tol: Tolerance) -> TriangleCheck:
    """Vanishing pattern: zero when one index exceeds the sum of the other two,
    nonzero when one equals the sum of the other two.

    In approximate mode |t| <= eps_eq counts as zero and values in
    (eps_eq, 100 eps_eq) are reported as ambiguous instead of classified.
    """
    d = t.shape[0] - 1
    greater, equal = _triangle_masks(d)
    if tol.is_exact:
        zero = np.vectorize(lambda v: v == 0, otypes=[bool])(t)
        amb = np.zeros_like(zero)
    else:
        a = np.abs(np.asarray(t, dtype=float))
        zero = a <= tol.eps_eq
        amb = (a > tol.eps_eq) & (a < 100 * tol.eps_eq)
    ambiguous = [tuple(int(v) for v in w) for w in np.argwhere(amb & (greater | equal))]
    bad_zero = greater & ~zero
    bad_nonzero = equal & zero
    bad = np.argwhere(bad_zero | bad_nonzero)
    if len(bad):
        w = tuple(int(v) for v in bad[0])
        reason = "nonzero where an index exceeds the sum" if bad_zero[w] else "zero where an index equals the sum"
        return TriangleCheck(False, w, reason, ambiguous)
    return TriangleCheck(not ambiguous, None, "ambiguous" if ambiguous else None, ambiguous)


def is_p_polynomial(params: SchemeParameters) -> TriangleCheck:
    """Triangle conditions on p^h_{ij} for the relation ordering as given."""
    return triangle_check(as_array(params.p, EXACT), EXACT)


def is_q_polynomial_ordering(q: np.ndarray, tol: Tolerance) -> TriangleCheck:
    return triangle_check(q, tol)


@dataclass(frozen=True, eq=False)
class TridiagonalParams:
    c: list
    a: list
    b: list
    c_star: list
    a_star: list
    b_star: list
    theta: list
    theta_star: list
    k1: object
    m1: object


def tridiagonal_params(params: SchemeParameters, sp: SpectralData, q: np.ndarray) -> TridiagonalParams:
    """c_i = p^i_{1,i-1}, a_i = p^i_{1,i}, b_i = p^i_{1,i+1} and their Krein analogues."""
    tol = sp.tol
    p = as_array(params.p, tol)
    d = params.d
    return TridiagonalParams(
        c=[None] + [p[i, 1, i - 1] for i in range(1, d + 1)],
        a=[p[i, 1, i] for i in range(d + 1)],
        b=[p[i, 1, i + 1] for i in range(d)],
        c_star=[None] + [q[i, 1, i - 1] for i in range(1, d + 1)],
        a_star=[q[i, 1, i] for i in range(d + 1)],
        b_star=[q[i, 1, i + 1] for i in range(d)],
        theta=list(sp.P[:, 1]),
        theta_star=list(sp.Q[:, 1]),
        k1=p[0, 1, 1],
        m1=sp.m[1],
    )


def build_polynomials(tp: TridiagonalParams, starred: bool = False, tol: Tolerance | None = None) -> list[list]:
    """u_0..u_d from u_0 = 1, u_1 = x / k_1 and
    x u_i = c_i u_{i-1} + a_i u_i + b_i u_{i+1}  (1 <= i <= d-1).
    """
    if starred:
        c, a, b, lead = tp.c_star, tp.a_star, tp.b_star, tp.m1
    else:
        c, a, b, lead = tp.c, tp.a, tp.b, tp.k1
    d = len(a) - 1
    one = lead / lead
    zero = one - one
    u = [[one], [zero, one / lead]]
    for i in range(1, d):
        if is_zero(b[i], tol or EXACT):
            kind = "Q" if starred else "P"
            raise NotPolynomial(f"not {kind}-polynomial: b{'*' if starred else ''}_{i} = 0")
        x_ui = [zero] + u[i]
        nxt = []
        for deg in range(i + 2):
            v = x_ui[deg]
            if deg < len(u[i - 1]):
                v = v - c[i] * u[i - 1][deg]
            if deg < len(u[i]):
                v = v - a[i] * u[i][deg]
            nxt.append(v / b[i])
        u.append(nxt)
    return u[: d + 1]


def evaluate(poly, x):
    acc = 0
    for coef in reversed(poly):
        acc = acc * x + coef
    return acc


def check_lemma_pij(sp: SpectralData, params: SchemeParameters, u, dual: bool = False):
    """P[i,j] == k_j u_j(theta_i) (or Q[i,j] == m_j u*_j(theta*_i) when dual).

    Returns ``(ok, first_mismatch_or_None)``.
    """
    tol = sp.tol
    d = sp.d
    if dual:
        M, mult, th = sp.Q, sp.m, sp.Q[:, 1]
    else:
        M, mult, th = sp.P, as_array(params.k, tol), sp.P[:, 1]
    rebuilt = np.empty_like(M)
    for i in range(d + 1):
        for j in range(d + 1):
            rebuilt[i, j] = mult[j] * evaluate(u[j], th[i])
    bad = first_mismatch(M, rebuilt, tol)
    return bad is None, bad


def askey_wilson_matrices(tp: TridiagonalParams, u, ustar):
    d = len(u) - 1
    lhs = np.empty((d + 1, d + 1), dtype=object)
    rhs = np.empty((d + 1, d + 1), dtype=object)
    for i in range(d + 1):
        for j in range(d + 1):
            lhs[i, j] = evaluate(u[i], tp.theta[j])
            rhs[i, j] = evaluate(ustar[j], tp.theta_star[i])
    return lhs, rhs


def check_askey_wilson(params, sp, q, tol: Tolerance | None = None):
    """max |u_i(theta_j) - u*_j(theta*_i)| over all (i, j).

    Refuses unless the scheme is P-polynomial and the ordering Q-polynomial.
    """
    tol = tol or sp.tol
    pcheck = is_p_polynomial(params)
    if not pcheck:
        raise NotPolynomial(f"scheme is not P-polynomial (witness {pcheck.witness})")
    qcheck = is_q_polynomial_ordering(q, tol)
    if not qcheck:
        raise NotPolynomial(f"ordering is not Q-polynomial (witness {qcheck.witness}, {qcheck.reason})")
    tp = tridiagonal_params(params, sp, q)
    u = build_polynomials(tp, tol=tol)
    ustar = build_polynomials(tp, starred=True, tol=tol)
    lhs, rhs = askey_wilson_matrices(tp, u, ustar)
    return max_abs(lhs - rhs)


@dataclass
class Main2Report:
    orderings_checked: int = 0
    exceptions: list = field(default_factory=list)
    q_polynomial_orderings: int = 0
    q_polynomial_exceptions: list = field(default_factory=list)

    @property
    def verified(self) -> bool:
        return not self.exceptions and not self.q_polynomial_exceptions

    def as_dict(self):
        return {"orderings_checked": self.orderings_checked,
                "exceptions": [list(s) for s in self.exceptions],
                "q_polynomial_orderings": self.q_polynomial_orderings,
                "q_polynomial_exceptions": [list(s) for s in self.q_polynomial_exceptions],
                "verified": self.verified}


def verify_theorem_main2(params, sp, q, tol: Tolerance | None = None,
                         require_p_polynomial: bool = True) -> Main2Report:
    """Over every ordering fixing E_0: numerically self-dual iff formally self-dual.

    Orderings that are Q-polynomial are tallied separately (the Q-side
    statement needs no P-polynomial hypothesis).
    """
    tol = tol or sp.tol
    if require_p_polynomial:
        pcheck = is_p_polynomial(params)
        if not pcheck:
            raise NotPolynomial(f"scheme is not P-polynomial (witness {pcheck.witness})")
    cls = duality.classify_all_orderings(params, sp, q, tol)
    rep = Main2Report()
    for r in cls.reports:
        rep.orderings_checked += 1
        mismatch = r.formally_self_dual != r.numerically_self_dual
        if mismatch and require_p_polynomial:
            rep.exceptions.append(r.ordering)
        s = list(r.ordering)
        if is_q_polynomial_ordering(q[np.ix_(s, s, s)], tol):
            rep.q_polynomial_orderings += 1
            if mismatch:
                rep.q_polynomial_exceptions.append(r.ordering)
    return rep


def verify_theorem_main4(params, sp, q, tol: Tolerance | None = None) -> Main2Report:
    return verify_theorem_main2(params, sp, q, tol, require_p_polynomial=False)

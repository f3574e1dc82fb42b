"""Primitive idempotents, eigenmatrices and Krein parameters.

All heavy work happens on (d+1)x(d+1) matrices.  The intersection matrices
``B_i`` (``B_i[h, j] = p^h_{ij}``) give the regular representation of the
Bose-Mesner algebra; a generic combination ``M = sum c_i B_i`` has d+1 distinct
eigenvalues, one per primitive idempotent, and the idempotent for eigenvalue
``theta_r`` has A-basis coordinates equal to the matching eigenvector of M.
"""
from __future__ import annotations

import functools
import math
import random
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .numerics import EXACT, Tolerance, as_array, cluster, first_mismatch, max_abs
from .scheme import AssociationScheme, SchemeParameters

MAX_ATTEMPTS = 16
COEFF_SEED = 20240601
ORDERING_CONVENTION = (
    "E_0 = J/n; E_1..E_d sorted by the row (P[i,1], ..., P[i,d]) in descending "
    "lexicographic order (tool convention)")


class SpectralError(ArithmeticError):
    pass


class IrrationalSpectrum(SpectralError):
    def __init__(self, msg="irrational spectrum"):
        super().__init__(msg)


class ClusterAmbiguity(SpectralError):
    def __init__(self, msg="cluster ambiguity"):
        super().__init__(msg)


class KreinViolation(SpectralError):
    pass


@dataclass(frozen=True, eq=False)
class SpectralData:
    n: int
    d: int
    P: np.ndarray
    Q: np.ndarray
    m: np.ndarray
    tol: Tolerance = EXACT
    ordering: str = ORDERING_CONVENTION

    @property
    def E_coeffs(self) -> np.ndarray:
        """Row j holds the A-basis coefficients of E_j, i.e. Q[:, j] / n."""
        return self.Q.T / self.n

    @property
    def k(self) -> np.ndarray:
        return self.P[0]


def intersection_matrices(params: SchemeParameters) -> list[np.ndarray]:
    p = params.p
    return [np.ascontiguousarray(p[:, i, :]) for i in range(params.d + 1)]


POWER_SEQUENCE_MAX_D = 24
# float eigenvalues must round to the right integers; beyond this magnitude
# (relative to the matrix size) a failed root search proves nothing
FLOAT_ROOT_LIMIT = 2.0 ** 40


def _coefficient_sequence(d: int, attempt: int, seed: int) -> list[int]:
    if attempt == 0 and d <= POWER_SEQUENCE_MAX_D:
        return [0] + [2 ** (i - 1) for i in range(1, d + 1)]
    rng = random.Random(seed + attempt)
    bound = 4 * (d + 1) if d <= POWER_SEQUENCE_MAX_D else 2 ** 16
    return [0] + [rng.randint(1, bound) for _ in range(d)]


def charpoly(M: np.ndarray) -> list[int]:
    """Characteristic polynomial of an integer matrix, highest degree first.

    Faddeev-LeVerrier recursion in exact integer arithmetic.
    """
    A = np.array(M, dtype=object)
    size = A.shape[0]
    coeffs = [1]
    Mk = np.zeros_like(A)
    eye = np.eye(size, dtype=int).astype(object)
    for k in range(1, size + 1):
        Mk = A.dot(Mk) + coeffs[-1] * eye
        c = -Fraction(int(np.trace(A.dot(Mk))), k)
        assert c.denominator == 1
        coeffs.append(int(c))
    return coeffs


def _horner(coeffs, x):
    acc = 0
    for c in coeffs:
        acc = acc * x + c
    return acc


def _deflate(coeffs, root):
    out = [coeffs[0]]
    for c in coeffs[1:-1]:
        out.append(c + out[-1] * root)
    return out


def _small_divisors(c: int, limit: int = 10 ** 7) -> list[int]:
    c = abs(c)
    if c == 0 or c > limit:
        return []
    divs = set()
    for f in range(1, math.isqrt(c) + 1):
        if c % f == 0:
            divs.update((f, c // f))
    return sorted(divs)


def integer_roots(coeffs: list[int], approx_roots) -> list[int] | None:
    """All roots (with multiplicity) of a monic integer polynomial, or None
    if it does not split over the rationals.

    Rational roots of a monic integer polynomial are integer divisors of the
    constant term; candidates come from rounded floating-point roots and, when
    the constant term is small, from its divisors.  Every candidate is
    confirmed by exact evaluation.
    """
    roots: list[int] = []
    poly = list(coeffs)
    candidates = []
    for z in approx_roots:
        base = int(round(float(np.real(z))))
        candidates.extend((base, base - 1, base + 1))
    tried = set()

    def take(cands):
        nonlocal poly
        for c in cands:
            while len(poly) > 1 and _horner(poly, c) == 0:
                roots.append(c)
                poly = _deflate(poly, c)

    for c in candidates:
        if c not in tried:
            tried.add(c)
            take([c])
    if len(poly) > 1:
        divs = _small_divisors(poly[-1])
        take([v for f in divs for v in (f, -f)])
    if len(poly) > 1:
        return None
    return sorted(roots, reverse=True)


def _descending_key(tol: Tolerance):
    def cmp(a, b):
        for x, y in zip(a, b):
            if tol.is_exact:
                if x != y:
                    return -1 if x > y else 1
            elif abs(x - y) > tol.eps_eq:
                return -1 if x > y else 1
        return 0
    return functools.cmp_to_key(cmp)


def _exact_idempotents(Bs, c) -> list[np.ndarray] | None:
    """A-basis coordinates of every primitive idempotent, or None when this
    element cannot separate the spectrum (collision or float precision)."""
    size = Bs[0].shape[0]
    M = sum(ci * B.astype(object) for ci, B in zip(c, Bs))
    coeffs = charpoly(M)
    approx = np.linalg.eigvals(M.astype(float))
    roots = integer_roots(coeffs, approx)
    if roots is None:
        if float(np.max(np.abs(approx))) * size > FLOAT_ROOT_LIMIT:
            return None
        raise IrrationalSpectrum()
    if len(set(roots)) != size:
        return None

    # E_r = f_r(M) e_0 / f_r(theta_r) with f_r = charpoly / (x - theta_r);
    # the Krylov vectors M^j e_0 keep everything in integers until the end
    krylov = [np.array([1] + [0] * (size - 1), dtype=object)]
    for _ in range(size - 1):
        krylov.append(M.dot(krylov[-1]))
    out = []
    for theta in roots:
        quotient = _deflate(coeffs, theta)   # highest degree first
        numer = sum(c * krylov[size - 1 - j] for j, c in enumerate(quotient))
        denom = _horner(quotient, theta)
        out.append(np.array([Fraction(int(v), denom) for v in numer], dtype=object))
    return out


def _approx_idempotents(Bs, c, tol: Tolerance) -> list[np.ndarray] | str:
    size = Bs[0].shape[0]
    M = sum(ci * B.astype(float) for ci, B in zip(c, Bs))
    vals, vecs = np.linalg.eig(M)
    scale = max(1.0, float(np.max(np.abs(vals))))
    if np.max(np.abs(vals.imag)) > tol.eps_cluster * scale:
        return "complex"
    vals = vals.real
    groups = cluster(list(vals), tol)
    if len(groups) != size:
        return "collision"
    reps = sorted(g[0] for g in groups)
    if min(np.diff(reps)) < 10 * tol.eps_cluster:
        return "ambiguous"
    k = np.array([B[0, i] for i, B in enumerate(Bs)], dtype=float)
    out = []
    for _, (idx,) in groups:
        v = vecs[:, idx].real
        # scale so that v*v = v in the algebra: v_0 / sum_i k_i v_i^2
        v = v * (v[0] / float(np.dot(k, v * v)))
        out.append(v)
    return out


def decompose(s: AssociationScheme | None = None, params: SchemeParameters | None = None,
              tol: Tolerance = EXACT, n: int | None = None, seed: int = COEFF_SEED) -> SpectralData:
    """Primitive idempotents and eigenmatrices in the canonical ordering.

    Exact mode raises IrrationalSpectrum if the character table is not
    rational; approximate mode raises ClusterAmbiguity if no generic element
    with well-separated eigenvalues is found.
    """
    if params is None:
        params = s.params
    if n is None:
        n = s.n
    d = params.d
    Bs = intersection_matrices(params)
    k = as_array(params.k, tol)
    result = None
    reason = "collision"
    for attempt in range(MAX_ATTEMPTS):
        c = _coefficient_sequence(d, attempt, seed)
        if tol.is_exact:
            result = _exact_idempotents(Bs, c)
        else:
            result = _approx_idempotents(Bs, c, tol)
            if isinstance(result, str):
                reason, result = result, None
        if result is not None:
            break
    if result is None:
        if tol.is_exact:
            raise SpectralError(f"no separating element after {MAX_ATTEMPTS} attempts")
        raise ClusterAmbiguity(f"cluster ambiguity ({reason}) after {MAX_ATTEMPTS} attempts")

    # Q[i, r] = n * coeff_i(E_r); P[r, j] = k_j Q[j, r] / m_r with m_r = Q[0, r]
    if tol.is_exact:
        Q = np.array([[v[i] * n for v in result] for i in range(d + 1)], dtype=object)
    else:
        Q = np.column_stack(result) * n
    m = Q[0].copy()
    P = np.empty_like(Q)
    for r in range(d + 1):
        for j in range(d + 1):
            P[r, j] = k[j] * Q[j, r] / m[r]

    trivial = [r for r in range(d + 1) if all(_close(P[r, j], k[j], tol) for j in range(d + 1))]
    if len(trivial) != 1:
        raise SpectralError("could not identify the trivial idempotent E_0")
    rest = sorted((r for r in range(d + 1) if r != trivial[0]),
                  key=lambda r: _descending_key(tol)(list(P[r, 1:])))
    order = trivial + rest
    P, Q, m = P[order], Q[:, order], m[order]
    if not tol.is_exact:
        # E_0 = J/n is known exactly
        P[0] = k
        Q[:, 0] = 1.0
    return SpectralData(n=n, d=d, P=P, Q=Q, m=m, tol=tol)


def _close(a, b, tol: Tolerance) -> bool:
    if tol.is_exact:
        return a == b
    return abs(float(a) - float(b)) <= max(tol.eps_cluster, tol.eps_eq) * max(1.0, abs(float(b)))


def krein_parameters(sp: SpectralData, params: SchemeParameters) -> np.ndarray:
    """q[h, i, j] = (m_i m_j / n) sum_r P[i,r] P[j,r] P[h,r] / k_r^2.

    Raises KreinViolation on an entry below -eps_eq.
    """
    tol = sp.tol
    k = as_array(params.k, tol)
    P, m, n = sp.P, sp.m, sp.n
    W = P / (k * k)[None, :]  # W[i, r] = P[i, r] / k_r^2
    q = _einsum_exact(W, P) if tol.is_exact else np.einsum("ir,jr,hr->hij", W, P, P)
    q = q * (m[None, :, None] * m[None, None, :]) / n
    if tol.is_exact:
        neg = [idx for idx, v in np.ndenumerate(q) if v < 0]
    else:
        neg = [tuple(int(t) for t in idx) for idx in np.argwhere(q < -tol.eps_eq)]
    if neg:
        h, i, j = neg[0]
        raise KreinViolation(f"negative Krein parameter q^{h}_{i},{j} = {q[h, i, j]}")
    return q


def _einsum_exact(W, P) -> np.ndarray:
    # q[h, i, j] = sum_r W[i, r] P[j, r] P[h, r]; object arrays need explicit loops
    size = P.shape[0]
    q = np.empty((size, size, size), dtype=object)
    for h in range(size):
        Ph = P[h]
        for i in range(size):
            t = W[i] * Ph
            for j in range(i, size):
                q[h, i, j] = q[h, j, i] = sum(t * P[j], Fraction(0))
    return q


def p_from_Q(sp: SpectralData, params: SchemeParameters) -> np.ndarray:
    """p[h, i, j] rebuilt as (k_i k_j / n) sum_r Q[i,r] Q[j,r] Q[h,r] / m_r^2."""
    tol = sp.tol
    k = as_array(params.k, tol)
    Q, m, n = sp.Q, sp.m, sp.n
    W = Q / (m * m)[None, :]
    if tol.is_exact:
        t = _einsum_exact(W, Q)
    else:
        t = np.einsum("ir,jr,hr->hij", W, Q, Q)
    return t * (k[None, :, None] * k[None, None, :]) / n


def verify_p_from_Q(sp: SpectralData, params: SchemeParameters):
    """Compare counted intersection numbers with their reconstruction from Q.

    Returns ``(ok, first_offending_triple_or_None)``.
    """
    rebuilt = p_from_Q(sp, params)
    bad = first_mismatch(as_array(params.p, sp.tol), rebuilt, sp.tol)
    return bad is None, bad


def idempotent_matrices(s: AssociationScheme, sp: SpectralData) -> list[np.ndarray]:
    """Materialize E_j = n^-1 sum_i Q[i, j] A_i as n x n matrices."""
    tol = sp.tol
    As = [as_array(A, tol) for A in s.associate_matrices()]
    out = []
    for j in range(sp.d + 1):
        E = sum((sp.Q[i, j] * As[i] for i in range(sp.d + 1)), as_array(np.zeros((s.n, s.n), int), tol))
        out.append(E / sp.n)
    return out


def krein_from_entrywise(s: AssociationScheme, sp: SpectralData) -> np.ndarray:
    """Krein parameters from the entrywise products of materialized idempotents."""
    return krein_from_idempotents(idempotent_matrices(s, sp), sp.n, sp.tol)


def krein_from_idempotents(Es: list[np.ndarray], n: int, tol: Tolerance) -> np.ndarray:
    """q[h, i, j] = n * sum(E_i o E_j o E_h) / trace(E_h).

    E_h (E_i o E_j) = (q^h_{ij} / n) E_h and the trace of E_h is m_h; for
    symmetric matrices trace(XY) is the sum of the entrywise product.
    """
    size = len(Es)
    ms = [np.trace(E) for E in Es]
    q = np.empty((size, size, size), dtype=object if tol.is_exact else float)
    for i in range(size):
        for j in range(size):
            prod = Es[i] * Es[j]
            for h in range(size):
                q[h, i, j] = n * (prod * Es[h]).sum() / ms[h]
    return q


def eigenmatrices_from_idempotents(s: AssociationScheme, Es: list[np.ndarray], tol: Tolerance):
    """(P, Q, m) read off a list of materialized idempotents in the given order.

    P[i, j] = trace(A_j E_i) / trace(E_i) and Q[i, j] = n * (E_j)[x, y] for any
    (x, y) in relation i.
    """
    size = len(Es)
    reps = [tuple(np.argwhere(s.r == i)[0]) for i in range(s.d + 1)]
    As = s.associate_matrices()
    m = np.array([np.trace(E) for E in Es], dtype=object if tol.is_exact else float)
    P = np.empty((size, size), dtype=m.dtype)
    Q = np.empty((size, size), dtype=m.dtype)
    for i in range(size):
        for j in range(size):
            P[i, j] = (As[j] * Es[i]).sum() / m[i]
            Q[i, j] = s.n * Es[j][reps[i]]
    return P, Q, m


def residual(a, b):
    """Max absolute entrywise difference (exact rationals stay exact)."""
    return max_abs(np.asarray(a, dtype=object) - np.asarray(b, dtype=object))

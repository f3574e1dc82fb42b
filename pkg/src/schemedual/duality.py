"""Formal and numerical self-duality with respect to an idempotent ordering."""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field, replace

import numpy as np

from .numerics import Tolerance, as_array, first_mismatch
from .scheme import SchemeParameters
from .spectral import SpectralData

MAX_ENUMERATE_D = 8


class OrderingError(ValueError):
    pass


def check_sigma(sigma, d: int) -> tuple[int, ...]:
    sigma = tuple(int(v) for v in sigma)
    if len(sigma) != d + 1:
        raise OrderingError(f"ordering has {len(sigma)} entries, expected {d + 1}")
    if sorted(sigma) != list(range(d + 1)):
        raise OrderingError(f"ordering {sigma} is not a bijection of 0..{d}")
    if sigma[0] != 0:
        raise OrderingError(f"ordering must fix 0, got sigma[0]={sigma[0]}")
    return sigma


def inverse(sigma) -> tuple[int, ...]:
    inv = [0] * len(sigma)
    for i, s in enumerate(sigma):
        inv[s] = i
    return tuple(inv)


def permutation_matrix(sigma) -> np.ndarray:
    """T with T[i, j] = 1 iff sigma(i) = j, so that the reordered P is T @ P."""
    T = np.zeros((len(sigma), len(sigma)), dtype=np.int64)
    T[np.arange(len(sigma)), list(sigma)] = 1
    return T


def reorder(sp: SpectralData, q: np.ndarray, sigma) -> tuple[SpectralData, np.ndarray]:
    """Data for the ordering E_{sigma(0)}, ..., E_{sigma(d)}.

    P'[i, j] = P[sigma(i), j], Q'[i, j] = Q[i, sigma(j)] and
    q'[h, i, j] = q[sigma(h), sigma(i), sigma(j)].
    """
    s = list(check_sigma(sigma, sp.d))
    new = replace(sp, P=sp.P[s], Q=sp.Q[:, s], m=sp.m[s])
    return new, q[np.ix_(s, s, s)]


@dataclass
class DualityReport:
    ordering: tuple[int, ...]
    formally_self_dual: bool
    numerically_self_dual: bool
    first_P_Q_mismatch: tuple[int, int] | None = None
    first_pq_mismatch: tuple[int, int, int] | None = None

    def as_dict(self):
        return {
            "ordering": list(self.ordering),
            "formally_self_dual": self.formally_self_dual,
            "numerically_self_dual": self.numerically_self_dual,
            "first_P_Q_mismatch": list(self.first_P_Q_mismatch) if self.first_P_Q_mismatch else None,
            "first_pq_mismatch": list(self.first_pq_mismatch) if self.first_pq_mismatch else None,
        }


def is_formally_self_dual(sp: SpectralData, sigma, tol: Tolerance | None = None):
    """(P' == Q', first mismatching (i, j) or None)."""
    tol = tol or sp.tol
    s = list(check_sigma(sigma, sp.d))
    bad = first_mismatch(sp.P[s], sp.Q[:, s], tol)
    return bad is None, bad


def is_numerically_self_dual(params: SchemeParameters, q: np.ndarray, sigma, tol: Tolerance):
    """(p == q', first mismatching (h, i, j) or None) for the reordered Krein tensor."""
    s = list(check_sigma(sigma, params.d))
    p = as_array(params.p, tol) if tol.is_exact else params.p.astype(float)
    bad = first_mismatch(p, q[np.ix_(s, s, s)], tol)
    return bad is None, bad


def duality_report(params, sp, q, sigma, tol: Tolerance | None = None) -> DualityReport:
    tol = tol or sp.tol
    sigma = check_sigma(sigma, sp.d)
    fsd, pq = is_formally_self_dual(sp, sigma, tol)
    nsd, hij = is_numerically_self_dual(params, q, sigma, tol)
    return DualityReport(sigma, fsd, nsd, pq, hij)


def orderings(d: int):
    """All permutations of 0..d fixing 0, in lexicographic order."""
    for tail in itertools.permutations(range(1, d + 1)):
        yield (0,) + tail


@dataclass
class Classification:
    reports: list[DualityReport] = field(default_factory=list)

    @property
    def fsd(self) -> int:
        return sum(r.formally_self_dual for r in self.reports)

    @property
    def nsd(self) -> int:
        return sum(r.numerically_self_dual for r in self.reports)

    @property
    def nsd_not_fsd(self) -> int:
        return sum(r.numerically_self_dual and not r.formally_self_dual for r in self.reports)

    def summary(self):
        return {"orderings": len(self.reports), "fsd": self.fsd, "nsd": self.nsd,
                "nsd_not_fsd": self.nsd_not_fsd}


def classify_all_orderings(params, sp, q, tol: Tolerance | None = None) -> Classification:
    """Duality report for every ordering fixing E_0 (refuses d > 8)."""
    if sp.d > MAX_ENUMERATE_D:
        raise OrderingError(
            f"d={sp.d} exceeds the enumeration bound d <= {MAX_ENUMERATE_D} ({MAX_ENUMERATE_D}! orderings)")
    tol = tol or sp.tol
    # hoist the conversions out of the d! loop
    p = as_array(params.p, tol) if tol.is_exact else params.p.astype(float)
    out = Classification()
    for sigma in orderings(sp.d):
        s = list(sigma)
        pq = first_mismatch(sp.P[s], sp.Q[:, s], tol)
        hij = first_mismatch(p, q[np.ix_(s, s, s)], tol)
        out.reports.append(DualityReport(sigma, pq is None, hij is None, pq, hij))
    return out

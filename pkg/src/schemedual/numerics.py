"""Scalar handling shared by every computation.

Two arithmetic modes are supported.  In exact mode every real number is a
``fractions.Fraction`` (matrices are numpy object arrays of Fractions); in
approximate mode numbers are IEEE doubles and equality is tested within a
tolerance.  A single computation never mixes the two.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

DEFAULT_EPS_EQ = 1e-9
DEFAULT_EPS_CLUSTER = 1e-6


class Mode(str, enum.Enum):
    EXACT = "exact"
    APPROX = "approx"


class ModeMismatch(TypeError):
    pass


@dataclass(frozen=True)
class Tolerance:
    mode: Mode = Mode.EXACT
    eps_eq: float = 0.0
    eps_cluster: float = 0.0

    def __post_init__(self):
        object.__setattr__(self, "mode", Mode(self.mode))
        if self.mode is Mode.EXACT:
            if self.eps_eq != 0 or self.eps_cluster != 0:
                raise ValueError("exact mode tolerances must be zero")
        elif not 0 <= self.eps_eq <= self.eps_cluster:
            raise ValueError("need 0 <= eps_eq <= eps_cluster")

    @classmethod
    def exact(cls) -> "Tolerance":
        return cls(Mode.EXACT, 0.0, 0.0)

    @classmethod
    def approx(cls, eps_eq: float = DEFAULT_EPS_EQ,
               eps_cluster: float = DEFAULT_EPS_CLUSTER) -> "Tolerance":
        return cls(Mode.APPROX, eps_eq, max(eps_eq, eps_cluster))

    @property
    def is_exact(self) -> bool:
        return self.mode is Mode.EXACT


EXACT = Tolerance.exact()
APPROX = Tolerance.approx()


def mode_of(x) -> Mode | None:
    """Mode implied by a scalar; plain integers are compatible with both."""
    if isinstance(x, (bool, int, np.integer)):
        return None
    if isinstance(x, Fraction):
        return Mode.EXACT
    if isinstance(x, (float, np.floating)):
        return Mode.APPROX
    raise TypeError(f"not a real scalar: {x!r}")


def _check_modes(tol: Tolerance, *xs):
    for x in xs:
        m = mode_of(x)
        if m is not None and m is not tol.mode:
            raise ModeMismatch(f"{x!r} is a {m.value} scalar in a {tol.mode.value} computation")


def to_scalar(x, tol: Tolerance):
    """Coerce an int/Fraction/float into the scalar type of ``tol.mode``."""
    if tol.is_exact:
        if isinstance(x, (float, np.floating)):
            raise ModeMismatch(f"float {x!r} in exact computation")
        return Fraction(x)
    return float(x)


def as_array(values, tol: Tolerance) -> np.ndarray:
    """Array of scalars in the given mode (object array of Fractions or float64)."""
    a = np.asarray(values, dtype=object)
    if tol.is_exact:
        out = np.empty(a.shape, dtype=object)
        flat = out.reshape(-1)
        for k, v in enumerate(a.reshape(-1)):
            flat[k] = to_scalar(v, tol)
        return out
    return a.astype(float)


def scalar_eq(a, b, tol: Tolerance) -> bool:
    _check_modes(tol, a, b)
    if tol.is_exact:
        return Fraction(a) == Fraction(b)
    return abs(float(a) - float(b)) <= tol.eps_eq


def is_zero(x, tol: Tolerance) -> bool:
    return scalar_eq(x, 0, tol)


def arrays_equal(a: np.ndarray, b: np.ndarray, tol: Tolerance) -> bool:
    if a.shape != b.shape:
        return False
    if tol.is_exact:
        return bool(np.all(a == b))
    return bool(np.all(np.abs(np.asarray(a, float) - np.asarray(b, float)) <= tol.eps_eq))


def first_mismatch(a: np.ndarray, b: np.ndarray, tol: Tolerance) -> tuple[int, ...] | None:
    """Lexicographically first index where ``a`` and ``b`` differ, or None."""
    if tol.is_exact:
        diff = a != b
    else:
        diff = np.abs(np.asarray(a, float) - np.asarray(b, float)) > tol.eps_eq
    hits = np.argwhere(np.asarray(diff, dtype=bool))
    if len(hits) == 0:
        return None
    return tuple(int(v) for v in hits[0])


def max_abs(a) -> Fraction | float:
    vals = [abs(v) for v in np.asarray(a, dtype=object).reshape(-1)]
    return max(vals) if vals else 0


def cluster(values, tol: Tolerance) -> list[tuple[object, list[int]]]:
    """Group scalars into clusters of (near-)equal values.

    Returns ``(representative, member_indices)`` pairs in descending order of
    the representative.  Exact mode groups identical values; approximate mode
    starts a new cluster whenever a value is more than ``eps_cluster`` below
    the first (largest) member of the current cluster, so members of a
    cluster are pairwise within ``eps_cluster``.
    """
    values = list(values)
    _check_modes(tol, *values)
    if tol.is_exact:
        groups: dict[Fraction, list[int]] = {}
        for i, v in enumerate(values):
            groups.setdefault(Fraction(v), []).append(i)
        return [(v, groups[v]) for v in sorted(groups, reverse=True)]

    order = sorted(range(len(values)), key=lambda i: -float(values[i]))
    out: list[tuple[object, list[int]]] = []
    current: list[int] = []
    for i in order:
        if current and float(values[current[0]]) - float(values[i]) > tol.eps_cluster:
            out.append(current)
            current = []
        current.append(i)
    if current:
        out.append(current)
    return [(sum(float(values[i]) for i in c) / len(c), sorted(c)) for c in out]


def format_scalar(x) -> str:
    """Lossless text form: ``a/b`` (or ``a``) for rationals, repr for floats."""
    if isinstance(x, (float, np.floating)):
        return repr(float(x))
    x = Fraction(x)
    return str(x)


def parse_scalar(s: str, tol: Tolerance):
    if tol.is_exact:
        return Fraction(s)
    return float(Fraction(s)) if "/" in s else float(s)

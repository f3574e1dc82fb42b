"""Symmetric association schemes stored as a relation-index matrix.

``r[x, y] = i`` means the pair ``(x, y)`` lies in relation ``R_i``.  Associate
matrices are materialized on demand.
"""
from __future__ import annotations

import random
from collections import Counter
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

EXHAUSTIVE_LIMIT = 512
SAMPLED_ROWS = 64


class SchemeError(ValueError):
    """Relation matrix is not a well-formed symmetric relation partition."""


class AxiomViolation(SchemeError):
    """The regularity axiom fails: two pairs in one relation have different counts."""

    def __init__(self, h, i, j, pair_a, count_a, pair_b, count_b):
        self.h, self.i, self.j = h, i, j
        self.pair_a, self.count_a = pair_a, count_a
        self.pair_b, self.count_b = pair_b, count_b
        super().__init__(
            f"regularity axiom violated at (h,i,j)=({h},{i},{j}): pair {pair_a} has "
            f"{count_a} intermediates, pair {pair_b} has {count_b}")

    def as_dict(self):
        return {"h": self.h, "i": self.i, "j": self.j,
                "witnesses": [{"pair": list(self.pair_a), "count": self.count_a},
                              {"pair": list(self.pair_b), "count": self.count_b}]}


class ScmParseError(ValueError):
    pass


@dataclass(frozen=True)
class SchemeParameters:
    p: np.ndarray  # p[h, i, j] = p^h_{ij}
    k: np.ndarray

    @property
    def d(self) -> int:
        return len(self.k) - 1


@dataclass(frozen=True, eq=False)
class AssociationScheme:
    r: np.ndarray
    d: int
    params: SchemeParameters = field(repr=False)

    @property
    def n(self) -> int:
        return self.r.shape[0]

    @property
    def k(self) -> np.ndarray:
        return self.params.k

    @property
    def p(self) -> np.ndarray:
        return self.params.p

    def associate_matrix(self, i: int) -> np.ndarray:
        return associate_matrix(self, i)

    def associate_matrices(self) -> list[np.ndarray]:
        return [associate_matrix(self, i) for i in range(self.d + 1)]


def check_relation_matrix(r, d: int | None = None) -> tuple[np.ndarray, int]:
    """Validate diagonal, symmetry and index coverage; return (r, d).

    ``d`` is the declared class count; by default the largest index present.
    """
    r = np.asarray(r)
    if r.ndim != 2 or r.shape[0] != r.shape[1] or r.shape[0] == 0:
        raise SchemeError(f"relation matrix must be square and nonempty, got shape {r.shape}")
    if not np.issubdtype(r.dtype, np.integer):
        raise SchemeError("relation indices must be integers")
    r = r.astype(np.int64)
    if r.min() < 0:
        x, y = np.argwhere(r < 0)[0]
        raise SchemeError(f"negative relation index at ({x},{y})")
    diag = np.flatnonzero(np.diag(r) != 0)
    if len(diag):
        x = int(diag[0])
        raise SchemeError(f"nonzero diagonal entry at ({x},{x}): r={int(r[x, x])}")
    asym = np.argwhere(r != r.T)
    if len(asym):
        x, y = (int(v) for v in asym[0])
        raise SchemeError(f"asymmetric at ({x},{y}): r[x][y]={int(r[x, y])} but r[y][x]={int(r[y, x])}")
    if d is None:
        d = int(r.max())
    elif r.max() > d:
        x, y = (int(v) for v in np.argwhere(r > d)[0])
        raise SchemeError(f"relation index {int(r[x, y])} at ({x},{y}) exceeds d={d}")
    if d < 1:
        raise SchemeError("need at least one non-identity relation (d >= 1)")
    present = np.zeros(d + 1, dtype=bool)
    present[r.reshape(-1)] = True
    if (r == 0).sum() != r.shape[0]:
        x, y = (int(v) for v in np.argwhere((r == 0) & ~np.eye(len(r), dtype=bool))[0])
        raise SchemeError(f"off-diagonal pair ({x},{y}) in relation 0")
    missing = np.flatnonzero(~present)
    if len(missing):
        raise SchemeError(f"relation index {int(missing[0])} does not occur (indices must cover 0..{d})")
    return r, d


def _pair_keys(r: np.ndarray, d: int, x: int) -> np.ndarray:
    # column y holds the codes i*(d+1)+j of (r[x,z], r[z,y]) over all z, sorted
    keys = r[x, :, None] * (d + 1) + r
    keys.sort(axis=0)
    return keys


def _violation(r, d, pair_a, pair_b) -> AxiomViolation:
    def counts(x, y):
        return Counter(zip(r[x].tolist(), r[:, y].tolist()))
    ca, cb = counts(*pair_a), counts(*pair_b)
    i, j = min(key for key in set(ca) | set(cb) if ca[key] != cb[key])
    h = int(r[pair_a])
    return AxiomViolation(h, i, j, pair_a, ca[(i, j)], pair_b, cb[(i, j)])


def verify_scheme(r, d: int | None = None, seed: int = 0) -> AssociationScheme:
    """Check all axioms and return the scheme with its intersection numbers.

    Raises SchemeError for malformed input, AxiomViolation (with the
    lexicographically first offending (i, j) and two witness pairs) when the
    counts are not constant on some relation.
    Exhaustive over all ordered pairs for n <= 512; above that every pair in a
    seeded sample of rows is checked.
    """
    r, d = check_relation_matrix(r, d)
    n = r.shape[0]
    reps = _representatives(r, d)
    rep_keys = np.zeros((d + 1, n), dtype=np.int64)
    for h, (x, y) in reps.items():
        rep_keys[h] = np.sort(r[x] * (d + 1) + r[:, y])
    if n <= EXHAUSTIVE_LIMIT:
        rows = range(n)
    else:
        rows = sorted(random.Random(seed).sample(range(n), SAMPLED_ROWS))
    for x in rows:
        keys = _pair_keys(r, d, x)
        expected = rep_keys[r[x]].T
        bad = np.flatnonzero(np.any(keys != expected, axis=0))
        if len(bad):
            y = int(bad[0])
            raise _violation(r, d, reps[int(r[x, y])], (x, y))
    params = _count_parameters(r, d, reps)
    return AssociationScheme(r=r, d=d, params=params)


def _representatives(r, d) -> dict[int, tuple[int, int]]:
    # first pair of each relation in row-major order
    _, first = np.unique(r.reshape(-1), return_index=True)
    n = r.shape[0]
    return {h: (int(f) // n, int(f) % n) for h, f in enumerate(first)}


def _count_parameters(r, d, reps) -> SchemeParameters:
    p = np.zeros((d + 1, d + 1, d + 1), dtype=np.int64)
    for h in range(d + 1):
        x, y = reps[h]
        np.add.at(p[h], (r[x], r[:, y]), 1)
    return SchemeParameters(p=p, k=np.array([p[0, i, i] for i in range(d + 1)], dtype=np.int64))


def intersection_numbers(s: AssociationScheme) -> SchemeParameters:
    """Recount p^h_{ij} on one representative pair per relation."""
    return _count_parameters(s.r, s.d, _representatives(s.r, s.d))


def associate_matrix(s: AssociationScheme, i: int) -> np.ndarray:
    if not 0 <= i <= s.d:
        raise IndexError(f"relation index {i} out of range 0..{s.d}")
    return (s.r == i).astype(np.int64)


# --- scm-v1 text format -----------------------------------------------------

def format_scm(r, d: int | None = None, comments=()) -> str:
    r = np.asarray(r)
    lines = [f"# {c}" for c in comments]
    lines.append(f"{r.shape[0]} {int(r.max()) if d is None else d}")
    lines.extend(" ".join(str(int(v)) for v in row) for row in r)
    return "\n".join(lines) + "\n"


def parse_scm(text: str) -> tuple[np.ndarray, int]:
    """Parse scm-v1 text into ``(r, d)``."""
    rows = [ln.split() for ln in text.splitlines()
            if ln.strip() and not ln.lstrip().startswith("#")]
    if not rows:
        raise ScmParseError("empty scheme file")
    try:
        header = [int(v) for v in rows[0]]
    except ValueError:
        raise ScmParseError(f"bad header line: {' '.join(rows[0])!r}") from None
    if len(header) != 2 or header[0] < 1 or header[1] < 0:
        raise ScmParseError("header must be 'n d' with positive n")
    n, d = header
    body = rows[1:]
    if len(body) != n:
        raise ScmParseError(f"expected {n} matrix rows, found {len(body)}")
    try:
        r = np.array([[int(v) for v in row] for row in body], dtype=np.int64)
    except ValueError as exc:
        raise ScmParseError(f"non-integer entry: {exc}") from None
    if r.shape != (n, n):
        bad = next(k for k, row in enumerate(body) if len(row) != n)
        raise ScmParseError(f"row {bad} has {len(body[bad])} entries, expected {n}")
    if r.min() < 0 or r.max() > d:
        raise ScmParseError(f"entries must lie in [0,{d}]")
    return r, d


def read_scm(path) -> tuple[np.ndarray, int]:
    return parse_scm(Path(path).read_text())


def write_scm(path, r, d: int | None = None, comments=()):
    Path(path).write_text(format_scm(r, d, comments))

"""The group scheme of G = Z_2^m and its GF(2)-linear reorderings.

Elements of G are encoded as integers with the first coordinate as the most
significant bit, so integer order is the lexicographic order 00 < 01 < 10 < 11.
Idempotents of the group scheme are indexed by characters: E_x has A-basis
coefficients (-1)^<x, y> / 2^m.
"""
from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from functools import reduce

import numpy as np

from . import duality
from .numerics import EXACT, Tolerance, as_array, first_mismatch
from .scheme import AssociationScheme, verify_scheme
from .spectral import SpectralData, decompose, krein_parameters

MAX_M = 10
MAX_ENUMERATE_M = 4


class GroupSchemeError(ValueError):
    pass


def bits(x: int, m: int) -> tuple[int, ...]:
    return tuple((x >> (m - 1 - i)) & 1 for i in range(m))


def encode(bits_) -> int:
    return reduce(lambda acc, b: (acc << 1) | int(b), bits_, 0)


def inner(x: int, y: int) -> int:
    """<x, y> = sum x_i y_i over GF(2)."""
    return bin(x & y).count("1") & 1


def _check_m(m, hi=MAX_M):
    if not 1 <= m <= hi:
        raise GroupSchemeError(f"m={m} out of range 1..{hi}")


def build_group_scheme(m: int) -> AssociationScheme:
    """X^(m): r[y][z] = y XOR z on G = Z_2^m."""
    _check_m(m)
    g = np.arange(2 ** m)
    return verify_scheme(g[:, None] ^ g[None, :])


def closed_form_eigenmatrix(m: int) -> np.ndarray:
    """(-1)^<x,y>, equal to both P and Q in character indexing."""
    _check_m(m)
    g = np.arange(2 ** m)
    parity = np.vectorize(lambda v: bin(int(v)).count("1") & 1)(g[:, None] & g[None, :])
    return (1 - 2 * parity).astype(np.int64)


def kronecker_associate(m: int, x: int) -> np.ndarray:
    """A_x as the Kronecker product of the m one-bit associate matrices."""
    A1 = [np.eye(2, dtype=np.int64), np.array([[0, 1], [1, 0]], dtype=np.int64)]
    return reduce(np.kron, (A1[b] for b in bits(x, m)))


def kronecker_idempotent(m: int, x: int) -> np.ndarray:
    """2^m E_x as a Kronecker product of the one-bit idempotents (scaled by 2)."""
    E1 = [np.array([[1, 1], [1, 1]]), np.array([[1, -1], [-1, 1]])]
    return reduce(np.kron, (E1[b] for b in bits(x, m)))


# --- GF(2) matrices ----------------------------------------------------------

@dataclass(frozen=True)
class Gf2Matrix:
    rows: tuple[tuple[int, ...], ...]

    @classmethod
    def parse(cls, text: str) -> "Gf2Matrix":
        """Rows as comma-separated bit strings, e.g. ``10,11``."""
        rows = tuple(tuple(int(c) for c in row.strip()) for row in text.split(","))
        m = len(rows)
        if any(len(r) != m or any(v not in (0, 1) for v in r) for r in rows):
            raise GroupSchemeError(f"not a square 0/1 matrix: {text!r}")
        return cls(rows)

    @property
    def m(self) -> int:
        return len(self.rows)

    def array(self) -> np.ndarray:
        return np.array(self.rows, dtype=np.int64)

    @property
    def symmetric(self) -> bool:
        a = self.array()
        return bool(np.array_equal(a, a.T))

    @property
    def invertible(self) -> bool:
        return gf2_rank(self.array()) == self.m

    def apply(self, x: int) -> int:
        """S x for an encoded element x (column vector of its bits)."""
        xb = bits(x, self.m)
        return encode(sum(s * v for s, v in zip(row, xb)) & 1 for row in self.rows)

    def __str__(self):
        return ",".join("".join(map(str, r)) for r in self.rows)


def gf2_rank(a: np.ndarray) -> int:
    a = np.array(a, dtype=np.uint8) & 1
    rank = 0
    rows, cols = a.shape
    for c in range(cols):
        pivot = next((r for r in range(rank, rows) if a[r, c]), None)
        if pivot is None:
            continue
        a[[rank, pivot]] = a[[pivot, rank]]
        for r in range(rows):
            if r != rank and a[r, c]:
                a[r] ^= a[rank]
        rank += 1
    return rank


def enumerate_linear_bijections(m: int) -> list[Gf2Matrix]:
    """All of GL(m, 2), ordered lexicographically by row bits (m <= 4)."""
    _check_m(m, MAX_ENUMERATE_M)
    out = []
    for rows in itertools.product(range(2 ** m), repeat=m):
        S = Gf2Matrix(tuple(bits(r, m) for r in rows))
        if S.invertible:
            out.append(S)
    return out


def sample_linear_bijections(m: int, count: int, seed: int = 0) -> list[Gf2Matrix]:
    """Seeded random invertible matrices, for m too large to enumerate."""
    _check_m(m)
    rng = random.Random(seed)
    out = []
    while len(out) < count:
        S = Gf2Matrix(tuple(bits(rng.randrange(2 ** m), m) for _ in range(m)))
        if S.invertible:
            out.append(S)
    return out


def sigma_from_matrix(S: Gf2Matrix) -> tuple[int, ...]:
    """The permutation x -> S x of encoded elements; fixes 0."""
    if not S.invertible:
        raise GroupSchemeError(f"singular matrix {S}")
    return tuple(S.apply(x) for x in range(2 ** S.m))


def matrix_from_sigma(sigma, m: int) -> Gf2Matrix:
    """Column j is sigma(e_j); only meaningful when sigma is linear."""
    cols = [bits(sigma[1 << (m - 1 - j)], m) for j in range(m)]
    return Gf2Matrix(tuple(tuple(cols[j][i] for j in range(m)) for i in range(m)))


def is_linear(sigma) -> bool:
    """sigma(x ^ y) == sigma(x) ^ sigma(y) for all pairs."""
    size = len(sigma)
    return all(sigma[x ^ y] == sigma[x] ^ sigma[y] for x in range(size) for y in range(x, size))


def is_linear_sampled(sigma, m: int, pairs: int = 256, seed: int = 0) -> bool:
    """Basis-pair generators plus random pairs; used above m = 3."""
    size = len(sigma)
    basis = [1 << i for i in range(m)]
    checks = [(a, b) for a in basis for b in basis]
    rng = random.Random(seed)
    checks += [(rng.randrange(size), rng.randrange(size)) for _ in range(pairs)]
    if sigma[0] != 0:
        return False
    return all(sigma[x ^ y] == sigma[x] ^ sigma[y] for x, y in checks)


def satisfies_adjoint_condition(sigma) -> bool:
    """<sigma(x), y> == <x, sigma(y)> for all x, y."""
    size = len(sigma)
    return all(inner(sigma[x], y) == inner(x, sigma[y]) for x in range(size) for y in range(size))


def random_nonlinear_permutations(m: int, count: int, seed: int = 0) -> list[tuple[int, ...]]:
    """Seeded Fisher-Yates permutations fixing 0, linear ones rejected."""
    size = 2 ** m
    if _all_fixing_zero_are_linear(m):
        return []
    rng = random.Random(seed)
    test = is_linear if m <= 3 else (lambda s: is_linear_sampled(s, m, seed=seed))
    out = []
    while len(out) < count:
        rest = list(range(1, size))
        rng.shuffle(rest)
        sigma = (0, *rest)
        if not test(sigma):
            out.append(sigma)
    return out


def _all_fixing_zero_are_linear(m: int) -> bool:
    # |GL(m,2)| == (2^m - 1)! only for m <= 2
    order = 1
    for i in range(m):
        order *= 2 ** m - 2 ** i
    fact = 1
    for v in range(2, 2 ** m):
        fact *= v
    return order == fact


# --- spectral data in character indexing ---------------------------------------

@dataclass(frozen=True, eq=False)
class GroupSchemeData:
    m: int
    scheme: AssociationScheme
    spectral: SpectralData   # aligned to character indexing
    krein: np.ndarray
    alignment: tuple[int, ...]  # canonical index of the idempotent for character x


def align_to_characters(sp: SpectralData, q: np.ndarray, m: int):
    """Reorder canonical spectral output so that index x is the character x.

    Matches Q columns against the closed-form table.
    """
    H = closed_form_eigenmatrix(m)
    cols = {tuple(sp.Q[:, r].tolist()): r for r in range(sp.d + 1)} if sp.tol.is_exact else None
    tau = []
    for x in range(2 ** m):
        target = H[:, x]
        if cols is not None:
            r = cols.get(tuple(int(v) for v in target))
        else:
            r = next((r for r in range(sp.d + 1)
                      if np.max(np.abs(sp.Q[:, r].astype(float) - target)) <= sp.tol.eps_eq), None)
        if r is None:
            raise GroupSchemeError(f"no idempotent matches character {x}")
        tau.append(r)
    aligned, qa = duality.reorder(sp, q, tau)
    return aligned, qa, tuple(tau)


def group_scheme_data(m: int, tol: Tolerance = EXACT) -> GroupSchemeData:
    s = build_group_scheme(m)
    sp = decompose(s, tol=tol)
    q = krein_parameters(sp, s.params)
    aligned, qa, tau = align_to_characters(sp, q, m)
    return GroupSchemeData(m, s, aligned, qa, tau)


def closed_form_intersection(m: int) -> np.ndarray:
    """delta_{x XOR y, z} as t[z, x, y]."""
    size = 2 ** m
    g = np.arange(size)
    return (g[:, None, None] == (g[None, :, None] ^ g[None, None, :])).astype(np.int64)


# --- classifying linear reorderings -------------------------------------------

@dataclass
class LinearityReport:
    m: int
    linear_total: int = 0
    symmetric: int = 0
    fsd: int = 0
    nsd: int | None = 0
    nonlinear_sampled: int = 0
    nonlinear_nsd: int = 0
    fsd_iff_symmetric: bool = True
    counterexamples: list = field(default_factory=list)
    solutions: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.counterexamples

    def as_dict(self, details: bool = False):
        out = {
            "m": self.m,
            "linear_total": self.linear_total,
            "symmetric": self.symmetric,
            "fsd": self.fsd,
            "nsd": self.nsd,
            "nonlinear_sampled": self.nonlinear_sampled,
            "nonlinear_nsd": self.nonlinear_nsd,
            "fsd_iff_symmetric": self.fsd_iff_symmetric,
            "counterexamples": self.counterexamples,
        }
        if details:
            out["solutions"] = self.solutions
        return out


def analyze_matrix(data: GroupSchemeData, S: Gf2Matrix, check_nsd: bool = True) -> dict:
    """Reordered eigenmatrices and both self-duality predicates for one S."""
    sp, q = data.spectral, data.krein
    sigma = sigma_from_matrix(S)
    new, _ = duality.reorder(sp, q, sigma)
    fsd, _ = duality.is_formally_self_dual(sp, sigma)
    nsd = None
    if check_nsd:
        nsd, _ = duality.is_numerically_self_dual(data.scheme.params, q, sigma, sp.tol)
    return {
        "S": str(S),
        "symmetric": S.symmetric,
        "sigma": list(sigma),
        "sigma_bits": ["".join(map(str, bits(v, data.m))) for v in sigma],
        "P": new.P,
        "Q": new.Q,
        "fsd": fsd,
        "nsd": nsd,
    }


def classify_linear(m: int, trials_nonlinear: int = 0, seed: int = 0,
                    tol: Tolerance = EXACT, data: GroupSchemeData | None = None,
                    check_nsd: bool = True, keep_solutions: bool | None = None) -> LinearityReport:
    """Every S in GL(m,2): NSD must hold, FSD must coincide with S = S^T.

    Also samples random nonlinear permutations fixing 0, none of which may be NSD.
    """
    data = data or group_scheme_data(m, tol)
    sp, q, params = data.spectral, data.krein, data.scheme.params
    if keep_solutions is None:
        keep_solutions = m <= 2
    rep = LinearityReport(m)
    for S in enumerate_linear_bijections(m):
        info = analyze_matrix(data, S, check_nsd)
        rep.linear_total += 1
        rep.symmetric += info["symmetric"]
        rep.fsd += info["fsd"]
        if check_nsd:
            rep.nsd += info["nsd"]
            if not info["nsd"]:
                rep.counterexamples.append({"kind": "linear_not_nsd", "S": info["S"]})
        if info["fsd"] != info["symmetric"]:
            rep.fsd_iff_symmetric = False
            rep.counterexamples.append({"kind": "fsd_vs_symmetric", "S": info["S"]})
        if keep_solutions:
            rep.solutions.append(info)
    if not check_nsd:
        rep.nsd = None
    for sigma in random_nonlinear_permutations(m, trials_nonlinear, seed):
        rep.nonlinear_sampled += 1
        nsd, _ = duality.is_numerically_self_dual(params, q, sigma, sp.tol)
        if nsd:
            rep.nonlinear_nsd += 1
            rep.counterexamples.append({"kind": "nonlinear_nsd", "sigma": list(sigma)})
    return rep


def verify_theorem_main1(m: int, trials_nonlinear: int = 100, seed: int = 0,
                         tol: Tolerance = EXACT) -> LinearityReport:
    """Linear bijections give numerical self-duality, sampled nonlinear ones do not."""
    _check_m(m, 3)
    return classify_linear(m, trials_nonlinear, seed, tol)


def verify_theorem_main3(m: int, tol: Tolerance = EXACT) -> LinearityReport:
    """Formal self-duality holds exactly for the symmetric S."""
    _check_m(m, MAX_ENUMERATE_M)
    return classify_linear(m, 0, 0, tol, check_nsd=m <= 3)


def check_kronecker_structure(m: int) -> bool:
    s = build_group_scheme(m)
    return all(np.array_equal(s.associate_matrix(x), kronecker_associate(m, x))
               for x in range(2 ** m))


def closed_form_matches_spectral(m: int, tol: Tolerance = EXACT) -> bool:
    """Aligned spectral P and Q both equal the (-1)^<x,y> table."""
    data = group_scheme_data(m, tol)
    H = as_array(closed_form_eigenmatrix(m), tol)
    return (first_mismatch(data.spectral.P, H, tol) is None
            and first_mismatch(data.spectral.Q, H, tol) is None)

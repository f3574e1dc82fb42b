"""Independent reference computations used to derive expected values.

Nothing here imports the package; each routine follows the defining formula
directly with plain loops.
"""
import itertools
from fractions import Fraction
from math import comb

import numpy as np


def brute_intersection_numbers(r):
    """Count p^h_{ij} over every pair and insist the counts agree."""
    r = [list(map(int, row)) for row in r]
    n = len(r)
    d = max(max(row) for row in r)
    p = {}
    for x in range(n):
        for y in range(n):
            h = r[x][y]
            counts = [[0] * (d + 1) for _ in range(d + 1)]
            for z in range(n):
                counts[r[x][z]][r[z][y]] += 1
            if h in p:
                if p[h] != counts:
                    return None
            else:
                p[h] = counts
    return np.array([p[h] for h in range(d + 1)], dtype=np.int64)


def hamming_valencies(n, q=2):
    return [comb(n, i) * (q - 1) ** i for i in range(n + 1)]


def krawtchouk_table(n):
    """P[i][j] = K_j(i) = sum_s (-1)^s C(i,s) C(n-i, j-s) for the binary Hamming scheme."""
    return [[sum((-1) ** s * comb(i, s) * comb(n - i, j - s) for s in range(j + 1))
             for j in range(n + 1)] for i in range(n + 1)]


def krein_from_P(P, n):
    """q^h_{ij} = (m_i m_j / n) sum_r P[i][r] P[j][r] P[h][r] / k_r^2 with
    m read off Q = n P^{-1} (computed by Fraction Gauss-Jordan)."""
    size = len(P)
    k = P[0]
    Q = [[Fraction(n) * v for v in row] for row in fraction_inverse(P)]
    m = Q[0]
    return [[[m[i] * m[j] / n * sum(Fraction(P[i][r] * P[j][r] * P[h][r], k[r] ** 2) for r in range(size))
              for j in range(size)] for i in range(size)] for h in range(size)], Q


def fraction_inverse(A):
    size = len(A)
    M = [[Fraction(v) for v in row] + [Fraction(int(i == j)) for j in range(size)]
         for i, row in enumerate(A)]
    for c in range(size):
        piv = next(r for r in range(c, size) if M[r][c] != 0)
        M[c], M[piv] = M[piv], M[c]
        lead = M[c][c]
        M[c] = [v / lead for v in M[c]]
        for r in range(size):
            if r != c and M[r][c] != 0:
                f = M[r][c]
                M[r] = [a - f * b for a, b in zip(M[r], M[c])]
    return [row[size:] for row in M]


def is_invertible_mod2(rows):
    """Determinant parity by cofactor expansion (independent of elimination)."""
    def det(M):
        if len(M) == 1:
            return M[0][0]
        return sum((-1) ** c * M[0][c] * det([row[:c] + row[c + 1:] for row in M[1:]])
                   for c in range(len(M)))
    return det([list(r) for r in rows]) % 2 == 1


def gl2_counts(m):
    total = sym = 0
    for flat in itertools.product((0, 1), repeat=m * m):
        rows = [flat[i * m:(i + 1) * m] for i in range(m)]
        if is_invertible_mod2(rows):
            total += 1
            sym += all(rows[i][j] == rows[j][i] for i in range(m) for j in range(m))
    return total, sym


def triangle_ok(t):
    """Plain-loop version of the P-/Q-polynomial vanishing pattern."""
    size = len(t)
    for h in range(size):
        for i in range(size):
            for j in range(size):
                a, b, c = sorted((h, i, j))
                v = t[h][i][j]
                if c > a + b and v != 0:
                    return False
                if c == a + b and v == 0:
                    return False
    return True

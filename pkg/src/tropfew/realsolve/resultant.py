"""Sylvester resultants of integer bivariate polynomials.

The matrix entries are polynomials in x.  Rather than run elimination over
Z[x], every entry is evaluated at a large power of two (Kronecker
substitution), the integer determinant is taken by Bareiss' fraction-free
elimination, and the coefficients of the resultant are read back off as
signed base-2^b digits.  This is exact as long as 2^(b-1) exceeds the
coefficient bound, which we compute from the matrix rows.
"""

from __future__ import annotations

from typing import Mapping

import gmpy2
from gmpy2 import mpz

BiPoly = Mapping[tuple[int, int], int]  # (deg_x, deg_y) -> integer coefficient


def y_coefficients(f: BiPoly) -> list[list[mpz]]:
    """``f = sum_j a_j(x) y^j``; returns ``[a_0, a_1, ...]`` as x-coefficient lists."""
    if not f:
        return []
    dy = max(j for _, j in f)
    dx = max(i for i, _ in f)
    rows = [[mpz(0)] * (dx + 1) for _ in range(dy + 1)]
    for (i, j), c in f.items():
        rows[j][i] += c
    for r in rows:
        while len(r) > 1 and r[-1] == 0:
            r.pop()
    return rows


def sylvester(f: BiPoly, g: BiPoly) -> list[list[list[mpz]]]:
    """Sylvester matrix with respect to y; entries are x-coefficient lists."""
    a, b = y_coefficients(f), y_coefficients(g)
    m, n = len(a) - 1, len(b) - 1
    size = m + n
    zero = [mpz(0)]
    mat = [[zero] * size for _ in range(size)]
    for r in range(n):
        for j in range(m + 1):
            mat[r][r + m - j] = a[j]
    for r in range(m):
        for j in range(n + 1):
            mat[n + r][r + n - j] = b[j]
    return mat


def bareiss_det(mat: list[list[mpz]]) -> mpz:
    """Determinant of an integer matrix by fraction-free elimination."""
    n = len(mat)
    if n == 0:
        return mpz(1)
    a = [list(map(mpz, row)) for row in mat]
    sign = 1
    prev = mpz(1)
    for k in range(n - 1):
        if a[k][k] == 0:
            for r in range(k + 1, n):
                if a[r][k] != 0:
                    a[k], a[r] = a[r], a[k]
                    sign = -sign
                    break
            else:
                return mpz(0)
        piv = a[k][k]
        rk = a[k]
        for i in range(k + 1, n):
            ri = a[i]
            aik = ri[k]
            for j in range(k + 1, n):
                ri[j] = (piv * ri[j] - aik * rk[j]) // prev
            ri[k] = mpz(0)
        prev = piv
    return sign * a[n - 1][n - 1]


def _eval_pow2(coeffs: list[mpz], bits: int) -> mpz:
    acc = mpz(0)
    for c in reversed(coeffs):
        acc = (acc << bits) + c
    return acc


def unpack_signed(v: mpz, bits: int) -> list[mpz]:
    """Inverse of evaluation at ``2**bits`` for digits in ``(-2^(bits-1), 2^(bits-1)]``."""
    out = []
    base = mpz(1) << bits
    half = base >> 1
    while v != 0:
        r = gmpy2.f_mod(v, base)
        if r > half:
            r -= base
        out.append(r)
        v = (v - r) >> bits
    return out or [mpz(0)]


def resultant_y(f: BiPoly, g: BiPoly) -> list[mpz]:
    """``Res_y(f, g)`` as a coefficient list in x (lowest degree first)."""
    if not f or not g:
        return [mpz(0)]
    mat = sylvester(f, g)
    if not mat:
        return [mpz(1)]
    bound = mpz(1)
    for row in mat:
        bound *= max(mpz(1), sum(sum(abs(c) for c in entry) for entry in row))
    bits = int(gmpy2.bit_length(bound)) + 2
    det = bareiss_det([[_eval_pow2(e, bits) for e in row] for row in mat])
    out = unpack_signed(det, bits)
    while len(out) > 1 and out[-1] == 0:
        out.pop()
    return out


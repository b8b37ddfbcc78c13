"""Brute-force reference computations used to freeze expected values.

Nothing here imports torsionkit: each oracle takes plain nested lists.
"""

from fractions import Fraction
from itertools import combinations, permutations
from math import factorial, gcd


def perm_sign(p):
    p = list(p)
    sign = 1
    for i in range(len(p)):
        for j in range(i + 1, len(p)):
            if p[i] > p[j]:
                sign = -sign
    return sign


def cofactor_det(rows):
    """Laplace expansion along the first row."""
    n = len(rows)
    if n == 0:
        return Fraction(1)
    if n == 1:
        return Fraction(rows[0][0])
    total = Fraction(0)
    for j in range(n):
        if rows[0][j] == 0:
            continue
        minor = [r[:j] + r[j + 1:] for r in rows[1:]]
        total += (-1) ** j * Fraction(rows[0][j]) * cofactor_det(minor)
    return total


def bareiss_det(rows):
    """Fraction-free integer determinant."""
    a = [list(r) for r in rows]
    n = len(a)
    if n == 0:
        return 1
    sign, prev = 1, 1
    for k in range(n - 1):
        if a[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if a[i][k]), None)
            if swap is None:
                return 0
            a[k], a[swap] = a[swap], a[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


def minors_rank(rows, ncols):
    """Largest k with a nonzero k x k minor."""
    m = len(rows)
    for k in range(min(m, ncols), 0, -1):
        for rs in combinations(range(m), k):
            for cs in combinations(range(ncols), k):
                if cofactor_det([[rows[i][j] for j in cs] for i in rs]) != 0:
                    return k
    return 0


def invariant_factors_by_minors(rows, ncols):
    """d_k / d_{k-1} where d_k is the gcd of all k x k minors."""
    m = len(rows)
    divisors = [1]
    for k in range(1, min(m, ncols) + 1):
        g = 0
        for rs in combinations(range(m), k):
            for cs in combinations(range(ncols), k):
                g = gcd(g, int(bareiss_det([[rows[i][j] for j in cs] for i in rs])))
        if g == 0:
            break
        divisors.append(g)
    return [divisors[k] // divisors[k - 1] for k in range(1, len(divisors))]


def sinhc_reciprocal_series(order):
    """Coefficients of (x/2)/sinh(x/2) by power-series division.

    sinh(x/2)/(x/2) = sum_n x^{2n} / (4^n (2n+1)!); invert term by term.
    """
    s = [Fraction(0)] * (order + 1)
    for m in range(0, order + 1, 2):
        s[m] = Fraction(1, 2 ** m * factorial(m + 1))
    inv = [Fraction(0)] * (order + 1)
    inv[0] = 1 / s[0]
    for m in range(1, order + 1):
        inv[m] = -sum(s[j] * inv[m - j] for j in range(1, m + 1)) / s[0]
    return inv


def exterior_monomial_product(a, b):
    """Sign and sorted support of e_a e_b by explicit bubble sort; 0 if repeated."""
    word = list(a) + list(b)
    if len(set(word)) != len(word):
        return 0, ()
    sign = 1
    for i in range(len(word)):
        for j in range(len(word) - 1 - i):
            if word[j] > word[j + 1]:
                word[j], word[j + 1] = word[j + 1], word[j]
                sign = -sign
    return sign, tuple(word)


def omega_power_top_coefficient(g):
    """Coefficient of e_1...e_{2g} in Omega^g by enumerating ordered pair choices."""
    pairs = [(2 * p - 1, 2 * p) for p in range(1, g + 1)]
    total = 0
    for order in permutations(range(g)):
        word = []
        for p in order:
            word += list(pairs[p])
        total += perm_sign(word) if len(set(word)) == len(word) else 0
    return total


def rank_convolution(a, b):
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] += x * y
    return out

#!/usr/bin/env python3
"""Regenerate data/hodge_base.txt.

Seed integrals int_{Mbar_{g,m}} lambda_1^e1 lambda_2^e2 prod psi_i^a_i for g <= 2
that string and dilaton cannot reduce further.  Pure psi values come from the
Witten-Kontsevich (DVV) recursion, lambda_1 values from Mumford's formula
12 lambda_1 = kappa_1 - sum psi_i + delta, lambda_2 from the lambda_g formula,
lambda_1 lambda_2 from the lambda_g lambda_{g-1} formula, and the rest from the
genus-2 Mumford relation lambda_1^2 = 2 lambda_2.

Usage: gen_hodge_table.py [output]   (prints the FNV-1a checksum)
"""
import sys
from fractions import Fraction as F
from functools import lru_cache
from itertools import combinations
from math import comb, factorial


def df(n):
    r = 1
    while n > 1:
        r *= n
        n -= 2
    return r


@lru_cache(maxsize=None)
def wk(g, a):
    """<tau_a1 ... tau_an>_g via DVV, a a sorted tuple."""
    n = len(a)
    if 2 * g - 2 + n <= 0 or any(x < 0 for x in a):
        return F(0)
    if sum(a) != 3 * g - 3 + n:
        return F(0)
    if g == 0 and n == 3:
        return F(1)
    if g == 1 and n == 1:
        return F(1, 24)
    a = list(a)
    # pick the largest index as the distinguished one
    k = a.pop(a.index(max(a)))
    rest = a
    res = F(0)
    for j in range(len(rest)):
        b = list(rest)
        b[j] = b[j] + k - 1
        res += F(df(2 * k + 2 * rest[j] - 1), df(2 * rest[j] - 1)) * wk(g, tuple(sorted(b)))
    for r in range(0, k - 1):
        s = k - 2 - r
        res += F(df(2 * r + 1) * df(2 * s + 1), 2) * wk(g - 1, tuple(sorted(rest + [r, s])))
        for size in range(len(rest) + 1):
            for idx in combinations(range(len(rest)), size):
                left = [rest[i] for i in idx]
                right = [rest[i] for i in range(len(rest)) if i not in idx]
                for g1 in range(0, g + 1):
                    res += F(df(2 * r + 1) * df(2 * s + 1), 2) * wk(g1, tuple(sorted(left + [r]))) * wk(g - g1, tuple(sorted(right + [s])))
    return res / df(2 * k + 1)


def psi(g, a):
    return wk(g, tuple(sorted(a)))


def kappa1(g, a):
    return psi(g, list(a) + [2])


def boundary(g, a):
    """int over the total boundary divisor of prod psi^a."""
    n = len(a)
    tot = F(0)
    if g >= 1:
        tot += F(1, 2) * psi(g - 1, list(a) + [0, 0])
    for g1 in range(0, g + 1):
        for size in range(n + 1):
            for idx in combinations(range(n), size):
                s1 = [a[i] for i in idx] + [0]
                s2 = [a[i] for i in range(n) if i not in idx] + [0]
                if 2 * g1 - 2 + len(s1) <= 0 or 2 * (g - g1) - 2 + len(s2) <= 0:
                    continue
                tot += F(1, 2) * psi(g1, s1) * psi(g - g1, s2)
    return tot


def lambda1(g, a):
    n = len(a)
    val = kappa1(g, a) + boundary(g, a)
    for j in range(n):
        b = list(a)
        b[j] += 1
        val -= psi(g, b)
    return val / 12


def bernoulli_abs(n):
    # |B_n| for even n via the Akiyama-Tanigawa algorithm
    A = [F(0)] * (n + 1)
    for m in range(n + 1):
        A[m] = F(1, m + 1)
        for j in range(m, 0, -1):
            A[j - 1] = j * (A[j - 1] - A[j])
    return abs(A[0])


def lambda_g(g, a):
    n = len(a)
    if sum(a) != 2 * g - 3 + n:
        return F(0)
    bg = F(2 ** (2 * g - 1) - 1, 2 ** (2 * g - 1)) * bernoulli_abs(2 * g) / factorial(2 * g)
    multinom = factorial(2 * g - 3 + n)
    for x in a:
        multinom //= factorial(x)
    return multinom * bg


def seeds():
    rows = []
    # genus 0
    rows.append((0, (0, 0, 0), 0, 0, F(1)))
    # genus 1 on Mbar_{1,1}
    rows.append((1, (1,), 0, 0, psi(1, [1])))
    rows.append((1, (0,), 1, 0, lambda1(1, [0])))
    # genus 2, all psi exponents >= 2
    for a in [(4,), (2, 3), (2, 2, 2)]:
        rows.append((2, a, 0, 0, psi(2, list(a))))
    for a in [(3,), (2, 2)]:
        rows.append((2, a, 1, 0, lambda1(2, list(a))))
    l2 = lambda_g(2, [2])
    rows.append((2, (2,), 0, 1, l2))
    rows.append((2, (2,), 2, 0, 2 * l2))
    b4, b2 = bernoulli_abs(4), bernoulli_abs(2)
    # lambda_{g-2} lambda_{g-1} lambda_g = |B_2g-2|/(2g-2) |B_2g|/(2g) / (2 (2g-2)!)
    l1l2 = b2 / 2 * b4 / 4 / (2 * factorial(2))
    # lambda_{g-1}^3 = |B_2g||B_2g-2| / (2g (2g-2) (2g-2)!) must equal 2 lambda_1 lambda_2
    assert b4 * b2 / (4 * 2 * factorial(2)) == 2 * l1l2
    rows.append((2, (), 1, 1, l1l2))
    rows.append((2, (), 3, 0, 2 * l1l2))
    return rows


def render(rows):
    out = ["# g | psi exponents | e1 e2 | value    (int lambda_1^e1 lambda_2^e2 prod psi)"]
    for g, a, e1, e2, v in rows:
        out.append(f"{g} | {','.join(map(str, a)) if a else '-'} | {e1} {e2} | {v.numerator}/{v.denominator}")
    return "\n".join(out) + "\n"


def fnv1a(data: bytes):
    h = 0xcbf29ce484222325
    for b in data:
        h ^= b
        h = (h * 0x100000001b3) & 0xFFFFFFFFFFFFFFFF
    return h


if __name__ == "__main__":
    assert psi(2, [4]) == F(1, 1152)
    assert psi(2, [2, 3]) == F(29, 5760)
    assert psi(2, [2, 2, 2]) == F(7, 240)
    assert lambda1(1, [0]) == F(1, 24)
    # Mumford's formula must commute with dilaton and string
    assert lambda1(2, [3, 1]) == 3 * lambda1(2, [3])
    assert lambda1(2, [3, 2, 0]) == lambda1(2, [2, 2]) + lambda1(2, [3, 1])
    assert lambda1(1, [1, 0]) == lambda1(1, [0])
    text = render(seeds())
    path = sys.argv[1] if len(sys.argv) > 1 else None
    if path:
        with open(path, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    print(f"fnv1a = 0x{fnv1a(text.encode()):016x}", file=sys.stderr)

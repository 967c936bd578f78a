"""Independent reference computations used to freeze expected test values.

Everything here is deliberately written against plain ints/Fractions and
coefficient lists, with no imports from the package under test, so that a
test comparing package output to an oracle exercises two separate routes.
"""

from fractions import Fraction
from math import comb


def fib(n: int) -> int:
    """Fibonacci numbers with F_1 = F_2 = 1."""
    a, b = 0, 1
    for _ in range(n):
        a, b = b, a + b
    return a


def fib_factorial(n: int) -> int:
    out = 1
    for m in range(1, n + 1):
        out *= fib(m)
    return out


def fibonomial(n: int, k: int) -> Fraction:
    """Fibonomial coefficient straight from the factorial ratio."""
    return Fraction(fib_factorial(n), fib_factorial(k) * fib_factorial(n - k))


def poly_add(a, b):
    out = [Fraction(0)] * max(len(a), len(b))
    for i, c in enumerate(a):
        out[i] += c
    for i, c in enumerate(b):
        out[i] += c
    while out and out[-1] == 0:
        out.pop()
    return out


def poly_mul(a, b):
    if not a or not b:
        return []
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, ca in enumerate(a):
        for j, cb in enumerate(b):
            out[i + j] += Fraction(ca) * Fraction(cb)
    while out and out[-1] == 0:
        out.pop()
    return out


def poly_eval(a, x):
    acc = Fraction(0)
    for c in reversed(a):
        acc = acc * x + c
    return acc


def gaussian_binomial(n: int, k: int):
    """Gaussian binomial as a coefficient list, via the Pascal-type triangle.

    Uses the recurrence G(n, k) = G(n-1, k-1) + q^k G(n-1, k), which is a
    different route than any factorial ratio.
    """
    if k < 0 or k > n:
        return []
    row = [[Fraction(1)]]
    for r in range(1, n + 1):
        nxt = [[Fraction(1)]]
        for c in range(1, r):
            shifted = [Fraction(0)] * c + list(row[c])
            nxt.append(poly_add(row[c - 1], shifted))
        nxt.append([Fraction(1)])
        row = nxt
    return row[k]


def q_integer(n: int, q0: Fraction) -> Fraction:
    return sum((Fraction(q0) ** t for t in range(n)), Fraction(0))


__all__ = [
    "comb",
    "fib",
    "fib_factorial",
    "fibonomial",
    "poly_add",
    "poly_mul",
    "poly_eval",
    "gaussian_binomial",
    "q_integer",
]

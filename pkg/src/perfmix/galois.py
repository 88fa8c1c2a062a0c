"""Finite fields F_q for small prime powers, backed by dense lookup tables.

Elements are integer indices in ``[0, q)``.  For ``q = p**t`` with ``t > 1`` the
index encodes the coefficient vector of the polynomial representative in base
``p`` (coefficient of ``x**i`` is digit ``i``), reduced modulo a fixed monic
irreducible polynomial.  The reduction polynomial for each ``q`` is the
lexicographically smallest one (coefficients compared from ``x**(t-1)`` down to
the constant term):

======  =================
q       reduction poly
======  =================
4       x^2 + x + 1
8       x^3 + x + 1
9       x^2 + 1
16      x^4 + x + 1
======  =================

With this choice F_4 = {0, 1, alpha, beta} maps to indices {0, 1, 2, 3}.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from itertools import product

import numpy as np

MAX_ORDER = 16


class FieldError(ValueError):
    pass


class NotPrimePower(FieldError):
    pass


class Unsupported(FieldError):
    pass


class ZeroInverse(ZeroDivisionError):
    pass


def factor_prime_power(q: int) -> tuple[int, int]:
    """Return ``(p, t)`` with ``q == p**t`` or raise :class:`NotPrimePower`."""
    if q < 2:
        raise NotPrimePower(f"{q} is not a prime power")
    p = next(d for d in range(2, q + 1) if q % d == 0)
    t, rest = 0, q
    while rest % p == 0:
        rest //= p
        t += 1
    if rest != 1:
        raise NotPrimePower(f"{q} has at least two distinct prime factors")
    return p, t


def is_prime_power(q: int) -> bool:
    try:
        factor_prime_power(q)
    except NotPrimePower:
        return False
    return True


def _is_irreducible(coeffs, p, t):
    # coeffs: low-to-high, monic, degree t.  Irreducible iff no monic factor of
    # degree 1..t//2 divides it; brute force is fine for t <= 4.
    def polymod(a, b):
        a = list(a)
        while len(a) >= len(b):
            if a[-1] == 0:
                a.pop()
                continue
            shift = len(a) - len(b)
            c = a[-1]
            for i, bc in enumerate(b):
                a[shift + i] = (a[shift + i] - c * bc) % p
            a.pop()
        return a

    for deg in range(1, t // 2 + 1):
        for low in product(range(p), repeat=deg):
            divisor = list(low) + [1]
            if not any(polymod(coeffs, divisor)):
                return False
    return True


def smallest_irreducible(p: int, t: int) -> tuple[int, ...]:
    """Lexicographically smallest monic irreducible of degree ``t`` over F_p.

    Returned low-to-high without the leading 1, e.g. ``(1, 1)`` for x^2+x+1.
    """
    # Lexicographic from the x^(t-1) coefficient down means iterating the
    # high coefficients slowest.
    for high_first in product(range(p), repeat=t):
        low = tuple(reversed(high_first))
        if low[0] == 0:
            continue
        if _is_irreducible(list(low) + [1], p, t):
            return low
    raise AssertionError("no irreducible polynomial found")


@dataclass(frozen=True, eq=False)
class FieldTable:
    """Arithmetic tables for F_q.  Immutable once built."""

    q: int
    p: int
    t: int
    reduction_poly: tuple[int, ...]
    add_table: np.ndarray = field(repr=False)
    mul_table: np.ndarray = field(repr=False)
    neg_table: np.ndarray = field(repr=False)
    inv_table: np.ndarray = field(repr=False)

    @property
    def elements(self) -> range:
        return range(self.q)

    def add(self, a: int, b: int) -> int:
        return int(self.add_table[a, b])

    def sub(self, a: int, b: int) -> int:
        return int(self.add_table[a, self.neg_table[b]])

    def mul(self, a: int, b: int) -> int:
        return int(self.mul_table[a, b])

    def neg(self, a: int) -> int:
        return int(self.neg_table[a])

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroInverse("0 has no multiplicative inverse")
        return int(self.inv_table[a])

    def div(self, a: int, b: int) -> int:
        return self.mul(a, self.inv(b))

    def pow(self, a: int, e: int) -> int:
        r = 1
        for _ in range(e):
            r = self.mul(r, a)
        return r

    def sum(self, values) -> int:
        acc = 0
        for v in values:
            acc = self.add_table[acc, v]
        return int(acc)

    def __eq__(self, other):
        return isinstance(other, FieldTable) and self.q == other.q

    def __hash__(self):
        return hash(("FieldTable", self.q))

    def __repr__(self):
        return f"FieldTable(q={self.q})"


def _build(q: int) -> FieldTable:
    p, t = factor_prime_power(q)
    if t == 1:
        idx = np.arange(q)
        add = (idx[:, None] + idx[None, :]) % q
        mul = (idx[:, None] * idx[None, :]) % q
        red: tuple[int, ...] = ()
    else:
        red = smallest_irreducible(p, t)
        digits = np.array([[(a // p**i) % p for i in range(t)] for a in range(q)])
        weights = p ** np.arange(t)
        add = ((digits[:, None, :] + digits[None, :, :]) % p) @ weights

        def polymul(a, b):
            prod = [0] * (2 * t - 1)
            for i, ai in enumerate(a):
                for j, bj in enumerate(b):
                    prod[i + j] = (prod[i + j] + ai * bj) % p
            # x^t = -(red)
            for deg in range(2 * t - 2, t - 1, -1):
                c = prod[deg]
                if c:
                    prod[deg] = 0
                    for i, rc in enumerate(red):
                        prod[deg - t + i] = (prod[deg - t + i] - c * rc) % p
            return sum(prod[i] * p**i for i in range(t))

        mul = np.array([[polymul(digits[a], digits[b]) for b in range(q)] for a in range(q)])
    add = add.astype(np.uint8)
    mul = mul.astype(np.uint8)
    neg = np.array([int(np.flatnonzero(add[a] == 0)[0]) for a in range(q)], dtype=np.uint8)
    inv = np.zeros(q, dtype=np.uint8)
    for a in range(1, q):
        inv[a] = int(np.flatnonzero(mul[a] == 1)[0])
    for arr in (add, mul, neg, inv):
        arr.setflags(write=False)
    return FieldTable(q, p, t, red, add, mul, neg, inv)


@lru_cache(maxsize=None)
def make_field(q: int) -> FieldTable:
    """Build (or fetch the cached) field of order ``q``."""
    q = int(q)
    factor_prime_power(q)
    if q > MAX_ORDER:
        raise Unsupported(f"fields larger than {MAX_ORDER} are not supported (got {q})")
    return _build(q)


def field_add(F: FieldTable, a: int, b: int) -> int:
    return F.add(a, b)


def field_mul(F: FieldTable, a: int, b: int) -> int:
    return F.mul(a, b)


def field_neg(F: FieldTable, a: int) -> int:
    return F.neg(a)


def field_inv(F: FieldTable, a: int) -> int:
    return F.inv(a)

"""Slow, independent reference implementations used to freeze expected values.

Nothing here imports the package's tables or kernels: fields are rebuilt from
polynomial arithmetic and every code parameter is found by plain loops.
"""

from itertools import permutations, product

# reduction polynomials, low-to-high coefficients including the leading 1
REDUCTION = {
    2: (2, [0, 1]),
    3: (3, [0, 1]),
    4: (2, [1, 1, 1]),
    5: (5, [0, 1]),
    7: (7, [0, 1]),
    8: (2, [1, 1, 0, 1]),
    9: (3, [1, 0, 1]),
    11: (11, [0, 1]),
    13: (13, [0, 1]),
    16: (2, [1, 1, 0, 0, 1]),
}


class PolyField:
    """F_q with elements as base-p digit lists (index = sum c_i p^i)."""

    def __init__(self, q):
        self.q = q
        self.p, self.mod = REDUCTION[q]
        self.t = len(self.mod) - 1

    def digits(self, a):
        return [(a // self.p**i) % self.p for i in range(self.t)]

    def index(self, ds):
        return sum(int(c) * self.p**i for i, c in enumerate(ds))

    def add(self, a, b):
        return self.index([(x + y) % self.p for x, y in zip(self.digits(a), self.digits(b))])

    def neg(self, a):
        return self.index([(-x) % self.p for x in self.digits(a)])

    def mul(self, a, b):
        x, y = self.digits(a), self.digits(b)
        prod_ = [0] * (2 * self.t)
        for i, u in enumerate(x):
            for j, v in enumerate(y):
                prod_[i + j] = (prod_[i + j] + u * v) % self.p
        if self.t == 1:
            return prod_[0] % self.p
        for deg in range(2 * self.t - 1, self.t - 1, -1):
            c = prod_[deg]
            if c:
                for k, mk in enumerate(self.mod):
                    prod_[deg - self.t + k] = (prod_[deg - self.t + k] - c * mk) % self.p
        return self.index(prod_[: self.t])

    def inv(self, a):
        return next(b for b in range(1, self.q) if self.mul(a, b) == 1)


def hamming(x, y):
    return sum(a != b for a, b in zip(x, y))


def min_distance(words):
    words = [tuple(w) for w in words]
    return min(hamming(a, b) for i, a in enumerate(words) for b in words[i + 1 :])


def distance_distribution(words):
    """Histogram of distances over unordered pairs of distinct codewords."""
    words = [tuple(w) for w in words]
    n = len(words[0])
    out = [0] * (n + 1)
    for i, a in enumerate(words):
        for b in words[i + 1 :]:
            out[hamming(a, b)] += 1
    return out


def covering_radius(words, orders):
    words = [tuple(w) for w in words]
    return max(min(hamming(x, c) for c in words) for x in product(*(range(o) for o in orders)))


def is_perfect_brute(words, orders):
    """Every word of the space lies at distance <= 1 from exactly one codeword."""
    words = [tuple(w) for w in words]
    for x in product(*(range(o) for o in orders)):
        if sum(hamming(x, c) <= 1 for c in words) != 1:
            return False
    return True


def rank(rows, F):
    rows = [list(r) for r in rows]
    r = 0
    ncols = len(rows[0]) if rows else 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(rows)) if rows[i][c]), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        inv = F.inv(rows[r][c])
        rows[r] = [F.mul(inv, x) for x in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c]:
                f = F.neg(rows[i][c])
                rows[i] = [F.add(x, F.mul(f, y)) for x, y in zip(rows[i], rows[r])]
        r += 1
    return r


def span(rows, F):
    out = set()
    for coeffs in product(range(F.q), repeat=len(rows)):
        w = [0] * len(rows[0])
        for c, row in zip(coeffs, rows):
            w = [F.add(x, F.mul(c, y)) for x, y in zip(w, row)]
        out.add(tuple(w))
    return out


def rm_rows(q, m, r):
    """Evaluations of all monomials of degree <= r at the points of AG(m, q)."""
    F = PolyField(q)
    pts = list(product(range(q), repeat=m))
    rows = []
    for e in product(range(q), repeat=m):
        if sum(e) > r:
            continue
        row = []
        for pt in pts:
            v = 1
            for x, k in zip(pt, e):
                for _ in range(k):
                    v = F.mul(v, x)
            row.append(v)
        rows.append(row)
    return rows


def latin_squares(k):
    """All k x k Latin squares over 0..k-1, row by row."""
    rows = list(permutations(range(k)))
    out = []

    def rec(sq):
        if len(sq) == k:
            out.append(tuple(sq))
            return
        for r in rows:
            if all(r[c] != s[c] for s in sq for c in range(k)):
                rec(sq + [r])

    rec([])
    return out

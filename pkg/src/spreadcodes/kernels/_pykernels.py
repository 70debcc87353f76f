"""Pure-Python kernels: elimination, determinants and polynomial arithmetic
over a tabled finite field.  Matrices are lists of row lists of packed ints;
polynomials are coefficient lists, constant term first, with no trailing zeros.
"""

from __future__ import annotations

from itertools import combinations

BACKEND = "python"


class Tables:
    __slots__ = ("q", "k", "order", "exp", "log", "zech", "n", "neg_shift")

    def __init__(self, ft):
        self.q, self.k, self.order = ft.q, ft.k, ft.order
        self.exp, self.log, self.zech = ft.exp, ft.log, ft.zech
        self.n = ft.order - 1
        # log(-1); in characteristic 2, -1 == 1
        self.neg_shift = self.n // 2 if ft.q != 2 else 0

    def add(self, a, b):
        if self.q == 2:
            return a ^ b
        if self.k == 1:
            return (a + b) % self.q
        if a == 0:
            return b
        if b == 0:
            return a
        la = self.log[a]
        d = self.log[b] - la
        if d < 0:
            d += self.n
        z = self.zech[d]
        if z < 0:
            return 0
        return self.exp[la + z]

    def neg(self, a):
        if a == 0 or self.q == 2:
            return a
        if self.k == 1:
            return self.q - a
        return self.exp[self.log[a] + self.neg_shift]

    def sub(self, a, b):
        return self.add(a, self.neg(b))

    def mul(self, a, b):
        if a == 0 or b == 0:
            return 0
        return self.exp[self.log[a] + self.log[b]]

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError("inverse of zero")
        la = self.log[a]
        return self.exp[self.n - la] if la else 1


def make_tables(ft):
    return Tables(ft)


def rref(rows, tab):
    """Reduced row echelon form; returns (rows, pivot columns)."""
    m = [list(r) for r in rows]
    nr = len(m)
    nc = len(m[0]) if nr else 0
    add, mul, neg, inv = tab.add, tab.mul, tab.neg, tab.inv
    pivots = []
    r = 0
    for c in range(nc):
        if r == nr:
            break
        piv = -1
        for i in range(r, nr):
            if m[i][c]:
                piv = i
                break
        if piv < 0:
            continue
        m[r], m[piv] = m[piv], m[r]
        prow = m[r]
        s = inv(prow[c])
        if s != 1:
            prow = m[r] = [mul(s, v) for v in prow]
        for i in range(nr):
            if i != r:
                f = m[i][c]
                if f:
                    nf = neg(f)
                    row = m[i]
                    m[i] = [add(a, mul(nf, b)) if b else a for a, b in zip(row, prow)]
        pivots.append(c)
        r += 1
    return m, pivots


def rank(rows, tab):
    return len(rref(rows, tab)[1])


def _det_small(m, n, tab):
    add, sub, mul = tab.add, tab.sub, tab.mul
    if n == 0:
        return 1
    if n == 1:
        return m[0][0]
    if n == 2:
        return sub(mul(m[0][0], m[1][1]), mul(m[0][1], m[1][0]))
    total = 0
    for j in range(n):
        a = m[0][j]
        if not a:
            continue
        minor = [row[:j] + row[j + 1:] for row in m[1:]]
        term = mul(a, _det_small(minor, n - 1, tab))
        total = add(total, term) if j % 2 == 0 else sub(total, term)
    return total


def det(rows, tab):
    """Determinant: cofactor expansion up to size 4, elimination above."""
    n = len(rows)
    if n <= 4:
        return _det_small(rows, n, tab)
    m = [list(r) for r in rows]
    add, mul, neg, inv = tab.add, tab.mul, tab.neg, tab.inv
    result = 1
    for c in range(n):
        piv = -1
        for i in range(c, n):
            if m[i][c]:
                piv = i
                break
        if piv < 0:
            return 0
        if piv != c:
            m[c], m[piv] = m[piv], m[c]
            result = neg(result)
        pv = m[c][c]
        result = mul(result, pv)
        s = inv(pv)
        prow = m[c]
        for i in range(c + 1, n):
            f = m[i][c]
            if f:
                nf = neg(mul(f, s))
                row = m[i]
                m[i] = [add(a, mul(nf, b)) if b else a for a, b in zip(row, prow)]
    return result


def matmul(a, b, tab):
    add, mul = tab.add, tab.mul
    cols = list(zip(*b)) if b else []
    out = []
    for row in a:
        new = []
        for col in cols:
            s = 0
            for x, y in zip(row, col):
                if x and y:
                    s = add(s, mul(x, y))
            new.append(s)
        out.append(new)
    return out


def offdiag_minor_search(rows, max_size, tab):
    """Largest size s <= max_size with a nonzero minor on disjoint row/column
    sets, and the lexicographically first such minor of that size.

    Returns (size, row_set, col_set, minors_tried); size 0 if every
    off-diagonal entry vanishes.  A size-(s+1) minor expands into size-s minors
    on subsets, so once a size has no nonzero minor no larger size can.
    """
    k = len(rows)
    best = (0, (), ())
    tried = 0
    idx = range(k)
    for s in range(1, max_size + 1):
        found = None
        for rs in combinations(idx, s):
            rest = [j for j in idx if j not in rs]
            sub_rows = [rows[i] for i in rs]
            for cs in combinations(rest, s):
                tried += 1
                if det([[r[j] for j in cs] for r in sub_rows], tab):
                    found = (s, rs, cs)
                    break
            if found:
                break
        if found is None:
            break
        best = found
    return best[0], best[1], best[2], tried


# -- polynomials -------------------------------------------------------------

def _trim(a):
    while a and a[-1] == 0:
        a.pop()
    return a


def poly_add(a, b, tab):
    add = tab.add
    if len(a) < len(b):
        a, b = b, a
    out = list(a)
    for i, c in enumerate(b):
        out[i] = add(out[i], c)
    return _trim(out)


def poly_sub(a, b, tab):
    neg = tab.neg
    return poly_add(a, [neg(c) for c in b], tab)


def poly_mul(a, b, tab):
    if not a or not b:
        return []
    add, mul = tab.add, tab.mul
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                if y:
                    out[i + j] = add(out[i + j], mul(x, y))
    return _trim(out)


def poly_divmod(a, b, tab):
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    add, mul, neg, inv = tab.add, tab.mul, tab.neg, tab.inv
    r = _trim(list(a))
    db = len(b) - 1
    if len(r) - 1 < db:
        return [], r
    quo = [0] * (len(r) - db)
    s = inv(b[-1])
    while len(r) - 1 >= db and r:
        shift = len(r) - 1 - db
        c = mul(r[-1], s)
        quo[shift] = c
        nc = neg(c)
        for j, bj in enumerate(b):
            if bj:
                r[shift + j] = add(r[shift + j], mul(nc, bj))
        r.pop()
        _trim(r)
    return _trim(quo), r


def poly_mod(a, m, tab):
    return poly_divmod(a, m, tab)[1]


def poly_mulmod(a, b, m, tab):
    return poly_mod(poly_mul(a, b, tab), m, tab)


def poly_monic(a, tab):
    if not a:
        return []
    s = tab.inv(a[-1])
    mul = tab.mul
    return [mul(s, c) for c in a]


def poly_gcd(a, b, tab):
    a, b = _trim(list(a)), _trim(list(b))
    while b:
        a, b = b, poly_mod(a, b, tab)
    return poly_monic(a, tab)


def poly_eval(a, x, tab):
    add, mul = tab.add, tab.mul
    acc = 0
    for c in reversed(a):
        acc = add(mul(acc, x), c)
    return acc


def scan_roots(a, tab):
    """Every field element (ascending packed index) at which ``a`` vanishes."""
    return [x for x in range(tab.order) if poly_eval(a, x, tab) == 0]

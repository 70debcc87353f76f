# cython: language_level=3, cdivision=True
"""Compiled kernels; same signatures and results as ``_pykernels``."""

from libc.stdlib cimport malloc, free
from itertools import combinations

BACKEND = "cython"


cdef class Tables:
    cdef public long q, k, order, n, neg_shift
    cdef long* exp
    cdef long* log
    cdef long* zech

    def __cinit__(self, ft):
        cdef long i
        self.q = ft.q
        self.k = ft.k
        self.order = ft.order
        self.n = ft.order - 1
        self.neg_shift = self.n // 2 if ft.q != 2 else 0
        self.exp = <long*> malloc(len(ft.exp) * sizeof(long))
        self.log = <long*> malloc(len(ft.log) * sizeof(long))
        self.zech = <long*> malloc(len(ft.zech) * sizeof(long))
        if not self.exp or not self.log or not self.zech:
            raise MemoryError()
        for i in range(len(ft.exp)):
            self.exp[i] = ft.exp[i]
        for i in range(len(ft.log)):
            self.log[i] = ft.log[i]
        for i in range(len(ft.zech)):
            self.zech[i] = ft.zech[i]

    def __dealloc__(self):
        free(self.exp)
        free(self.log)
        free(self.zech)

    cdef inline long add(self, long a, long b) nogil:
        cdef long la, d, z
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

    cdef inline long neg(self, long a) nogil:
        if a == 0 or self.q == 2:
            return a
        if self.k == 1:
            return self.q - a
        return self.exp[self.log[a] + self.neg_shift]

    cdef inline long sub(self, long a, long b) nogil:
        return self.add(a, self.neg(b))

    cdef inline long mul(self, long a, long b) nogil:
        if a == 0 or b == 0:
            return 0
        return self.exp[self.log[a] + self.log[b]]

    cdef inline long inv(self, long a) nogil:
        cdef long la = self.log[a]
        if la == 0:
            return 1
        return self.exp[self.n - la]

    def py_add(self, a, b):
        return self.add(a, b)

    def py_mul(self, a, b):
        return self.mul(a, b)


def make_tables(ft):
    return Tables(ft)


cdef long* _load(rows, long* nr, long* nc) except NULL:
    cdef long i, j
    cdef long* m
    nr[0] = len(rows)
    nc[0] = len(rows[0]) if nr[0] else 0
    m = <long*> malloc((nr[0] * nc[0] + 1) * sizeof(long))
    if not m:
        raise MemoryError()
    for i in range(nr[0]):
        row = rows[i]
        for j in range(nc[0]):
            m[i * nc[0] + j] = row[j]
    return m


cdef list _dump(long* m, long nr, long nc):
    return [[m[i * nc + j] for j in range(nc)] for i in range(nr)]


cdef long _rref_inplace(long* m, long nr, long nc, Tables tab, long* pivots) nogil:
    cdef long r = 0, c, i, j, piv, s, f, nf, tmp
    for c in range(nc):
        if r == nr:
            break
        piv = -1
        for i in range(r, nr):
            if m[i * nc + c] != 0:
                piv = i
                break
        if piv < 0:
            continue
        if piv != r:
            for j in range(nc):
                tmp = m[r * nc + j]
                m[r * nc + j] = m[piv * nc + j]
                m[piv * nc + j] = tmp
        s = tab.inv(m[r * nc + c])
        if s != 1:
            for j in range(nc):
                m[r * nc + j] = tab.mul(s, m[r * nc + j])
        for i in range(nr):
            if i != r:
                f = m[i * nc + c]
                if f != 0:
                    nf = tab.neg(f)
                    for j in range(nc):
                        if m[r * nc + j] != 0:
                            m[i * nc + j] = tab.add(m[i * nc + j], tab.mul(nf, m[r * nc + j]))
        pivots[r] = c
        r += 1
    return r


def rref(rows, Tables tab):
    cdef long nr, nc, rk
    cdef long* m = _load(rows, &nr, &nc)
    cdef long* piv = <long*> malloc((nr + 1) * sizeof(long))
    try:
        rk = _rref_inplace(m, nr, nc, tab, piv)
        return _dump(m, nr, nc), [piv[i] for i in range(rk)]
    finally:
        free(m)
        free(piv)


def rank(rows, Tables tab):
    cdef long nr, nc, rk
    cdef long* m = _load(rows, &nr, &nc)
    cdef long* piv = <long*> malloc((nr + 1) * sizeof(long))
    try:
        rk = _rref_inplace(m, nr, nc, tab, piv)
        return rk
    finally:
        free(m)
        free(piv)


cdef long _det_cofactor(long* m, long stride, long* cols, long n, long row, Tables tab) nogil:
    # determinant of rows row..row+n-1 restricted to the n column indices in cols
    cdef long j, a, term, total = 0
    cdef long sub_cols[4]
    cdef long t, u
    if n == 1:
        return m[row * stride + cols[0]]
    if n == 2:
        return tab.sub(tab.mul(m[row * stride + cols[0]], m[(row + 1) * stride + cols[1]]),
                       tab.mul(m[row * stride + cols[1]], m[(row + 1) * stride + cols[0]]))
    for j in range(n):
        a = m[row * stride + cols[j]]
        if a != 0:
            u = 0
            for t in range(n):
                if t != j:
                    sub_cols[u] = cols[t]
                    u += 1
            term = tab.mul(a, _det_cofactor(m, stride, sub_cols, n - 1, row + 1, tab))
            if j % 2 == 0:
                total = tab.add(total, term)
            else:
                total = tab.sub(total, term)
    return total


cdef long _det_inplace(long* m, long n, Tables tab) nogil:
    cdef long c, i, j, piv, tmp, pv, s, f, nf, result = 1
    cdef long cols[4]
    if n == 0:
        return 1
    if n <= 4:
        for j in range(n):
            cols[j] = j
        return _det_cofactor(m, n, cols, n, 0, tab)
    for c in range(n):
        piv = -1
        for i in range(c, n):
            if m[i * n + c] != 0:
                piv = i
                break
        if piv < 0:
            return 0
        if piv != c:
            for j in range(n):
                tmp = m[c * n + j]
                m[c * n + j] = m[piv * n + j]
                m[piv * n + j] = tmp
            result = tab.neg(result)
        pv = m[c * n + c]
        result = tab.mul(result, pv)
        s = tab.inv(pv)
        for i in range(c + 1, n):
            f = m[i * n + c]
            if f != 0:
                nf = tab.neg(tab.mul(f, s))
                for j in range(c, n):
                    if m[c * n + j] != 0:
                        m[i * n + j] = tab.add(m[i * n + j], tab.mul(nf, m[c * n + j]))
    return result


def det(rows, Tables tab):
    cdef long nr, nc
    cdef long* m
    if len(rows) == 0:
        return 1
    m = _load(rows, &nr, &nc)
    try:
        return _det_inplace(m, nr, tab)
    finally:
        free(m)


def matmul(a, b, Tables tab):
    cdef long ar, ac, br, bc, i, j, t, s, x, y
    cdef long* ma = _load(a, &ar, &ac)
    cdef long* mb = _load(b, &br, &bc)
    cdef long* out = <long*> malloc((ar * bc + 1) * sizeof(long))
    try:
        with nogil:
            for i in range(ar):
                for j in range(bc):
                    s = 0
                    for t in range(ac):
                        x = ma[i * ac + t]
                        y = mb[t * bc + j]
                        if x != 0 and y != 0:
                            s = tab.add(s, tab.mul(x, y))
                    out[i * bc + j] = s
        return _dump(out, ar, bc)
    finally:
        free(ma)
        free(mb)
        free(out)


def offdiag_minor_search(rows, long max_size, Tables tab):
    """See ``_pykernels.offdiag_minor_search``."""
    cdef long k, nc, s, i, j, d
    cdef long tried = 0
    cdef long* m
    cdef long* sub
    m = _load(rows, &k, &nc)
    sub = <long*> malloc((max_size * max_size + 1) * sizeof(long))
    best = (0, (), ())
    try:
        idx = range(k)
        for s in range(1, max_size + 1):
            found = None
            for rs in combinations(idx, s):
                rest = [j for j in idx if j not in rs]
                for cs in combinations(rest, s):
                    tried += 1
                    for i in range(s):
                        for j in range(s):
                            sub[i * s + j] = m[(<long> rs[i]) * nc + (<long> cs[j])]
                    d = _det_inplace(sub, s, tab)
                    if d != 0:
                        found = (s, rs, cs)
                        break
                if found:
                    break
            if found is None:
                break
            best = found
        return best[0], best[1], best[2], tried
    finally:
        free(m)
        free(sub)


# -- polynomials -------------------------------------------------------------

cdef list _trimmed(long* a, long n):
    while n > 0 and a[n - 1] == 0:
        n -= 1
    return [a[i] for i in range(n)]


cdef long* _loadv(a, long extra) except NULL:
    cdef long n = len(a), i
    cdef long* v = <long*> malloc((n + extra + 1) * sizeof(long))
    if not v:
        raise MemoryError()
    for i in range(n):
        v[i] = a[i]
    for i in range(n, n + extra + 1):
        v[i] = 0
    return v


def poly_add(a, b, Tables tab):
    cdef long na, nb, i
    cdef long* v
    if len(a) < len(b):
        a, b = b, a
    na = len(a)
    nb = len(b)
    v = _loadv(a, 0)
    try:
        for i in range(nb):
            v[i] = tab.add(v[i], <long> b[i])
        return _trimmed(v, na)
    finally:
        free(v)


def poly_sub(a, b, Tables tab):
    return poly_add(a, [tab.neg(<long> c) for c in b], tab)


cdef long _mul_into(long* a, long na, long* b, long nb, long* out, Tables tab) nogil:
    cdef long i, j, x, y
    if na == 0 or nb == 0:
        return 0
    for i in range(na + nb - 1):
        out[i] = 0
    for i in range(na):
        x = a[i]
        if x != 0:
            for j in range(nb):
                y = b[j]
                if y != 0:
                    out[i + j] = tab.add(out[i + j], tab.mul(x, y))
    return na + nb - 1


cdef long _mod_inplace(long* r, long nr, long* m, long nm, long* quo, Tables tab) nogil:
    # reduces r (length nr) modulo m in place; returns remainder length
    cdef long dm = nm - 1, shift, j, c, nc, s
    while nr > 0 and r[nr - 1] == 0:
        nr -= 1
    s = tab.inv(m[dm])
    while nr - 1 >= dm and nr > 0:
        shift = nr - 1 - dm
        c = tab.mul(r[nr - 1], s)
        if quo != NULL:
            quo[shift] = c
        nc = tab.neg(c)
        for j in range(nm):
            if m[j] != 0:
                r[shift + j] = tab.add(r[shift + j], tab.mul(nc, m[j]))
        nr -= 1
        while nr > 0 and r[nr - 1] == 0:
            nr -= 1
    return nr


def poly_mul(a, b, Tables tab):
    cdef long na, nb, n
    cdef long* va
    cdef long* vb
    cdef long* out
    if not a or not b:
        return []
    na = len(a)
    nb = len(b)
    va = _loadv(a, 0)
    vb = _loadv(b, 0)
    out = <long*> malloc((na + nb) * sizeof(long))
    try:
        n = _mul_into(va, na, vb, nb, out, tab)
        return _trimmed(out, n)
    finally:
        free(va)
        free(vb)
        free(out)


def poly_divmod(a, b, Tables tab):
    cdef long na, nb, nr, nq, i
    cdef long* r
    cdef long* vb
    cdef long* quo
    b = list(b)
    while b and b[-1] == 0:
        b.pop()
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    na = len(a)
    nb = len(b)
    nq = na - nb + 1 if na >= nb else 0
    r = _loadv(a, 0)
    vb = _loadv(b, 0)
    quo = <long*> malloc((nq + 1) * sizeof(long))
    for i in range(nq + 1):
        quo[i] = 0
    try:
        nr = _mod_inplace(r, na, vb, nb, quo, tab)
        return _trimmed(quo, nq), _trimmed(r, nr)
    finally:
        free(r)
        free(vb)
        free(quo)


def poly_mod(a, m, Tables tab):
    return poly_divmod(a, m, tab)[1]


def poly_mulmod(a, b, m, Tables tab):
    cdef long na, nb, nm, n
    cdef long* va
    cdef long* vb
    cdef long* vm
    cdef long* out
    if not a or not b:
        return []
    na = len(a)
    nb = len(b)
    nm = len(m)
    va = _loadv(a, 0)
    vb = _loadv(b, 0)
    vm = _loadv(m, 0)
    out = <long*> malloc((na + nb) * sizeof(long))
    try:
        n = _mul_into(va, na, vb, nb, out, tab)
        n = _mod_inplace(out, n, vm, nm, NULL, tab)
        return _trimmed(out, n)
    finally:
        free(va)
        free(vb)
        free(vm)
        free(out)


def poly_monic(a, Tables tab):
    cdef long s
    if not a:
        return []
    s = tab.inv(<long> a[-1])
    return [tab.mul(s, <long> c) for c in a]


def poly_gcd(a, b, Tables tab):
    a = list(a)
    b = list(b)
    while a and a[-1] == 0:
        a.pop()
    while b and b[-1] == 0:
        b.pop()
    while b:
        a, b = b, poly_mod(a, b, tab)
    return poly_monic(a, tab)


cdef inline long _eval(long* a, long n, long x, Tables tab) nogil:
    cdef long acc = 0, i
    for i in range(n - 1, -1, -1):
        acc = tab.add(tab.mul(acc, x), a[i])
    return acc


def poly_eval(a, long x, Tables tab):
    cdef long n = len(a)
    cdef long* v = _loadv(a, 0)
    try:
        return _eval(v, n, x, tab)
    finally:
        free(v)


def scan_roots(a, Tables tab):
    cdef long n, x
    cdef long* v
    n = len(a)
    v = _loadv(a, 0)
    out = []
    try:
        for x in range(tab.order):
            if _eval(v, n, x, tab) == 0:
                out.append(x)
        return out
    finally:
        free(v)

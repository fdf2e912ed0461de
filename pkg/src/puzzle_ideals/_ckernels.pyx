# cython: boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled versions of the hot loops in _pykernels, same signatures.

Monomial keys are unpacked into four 64-bit words, so rings of up to 128
variables reduce entirely in C; larger rings fall back to the Python code.
"""

from libc.stdint cimport uint64_t
from libc.stdlib cimport free, malloc, realloc
from libc.string cimport memset

from . import _pykernels

cdef extern from *:
    int __builtin_clzll(unsigned long long) nogil

cdef enum:
    W = 4
    MAXVARS = 128

cdef uint64_t LOW = 0x5555555555555555ULL
cdef object MASK64 = 0xFFFFFFFFFFFFFFFF

ctypedef struct Key:
    uint64_t w[W]

ctypedef struct Term:
    Key k
    int c

ctypedef struct Red:
    Key lm
    Key a
    Key b
    Key *tk
    unsigned char *tc
    int tlen


# keys ------------------------------------------------------------------------------

cdef inline void to_key(object k, Key *out):
    cdef int i
    for i in range(W):
        out.w[i] = <uint64_t>((k >> (64 * i)) & MASK64)


cdef inline object from_key(const Key *k):
    return (k.w[0] | (<object>k.w[1] << 64) | (<object>k.w[2] << 128)
            | (<object>k.w[3] << 192))


cdef inline int kcmp(const Key *x, const Key *y) noexcept nogil:
    cdef int i
    for i in range(W - 1, -1, -1):
        if x.w[i] != y.w[i]:
            return 1 if x.w[i] > y.w[i] else -1
    return 0


cdef inline void kmul(const Key *x, const Key *y, Key *out) noexcept nogil:
    cdef int i
    cdef uint64_t a1, b1, a2, b2, a, b
    for i in range(W):
        b1 = (x.w[i] >> 1) & LOW
        a1 = (x.w[i] & LOW) | b1
        b2 = (y.w[i] >> 1) & LOW
        a2 = (y.w[i] & LOW) | b2
        b = (b1 & ~a2) | (b2 & ~a1) | (a1 & a2 & ~(b1 ^ b2))
        a = a1 | a2
        out.w[i] = (b << 1) | (a & ~b)


cdef inline void kmasks(const Key *k, Key *a, Key *b) noexcept nogil:
    cdef int i
    for i in range(W):
        b.w[i] = (k.w[i] >> 1) & LOW
        a.w[i] = (k.w[i] & LOW) | b.w[i]


cdef inline bint kzero(const Key *k) noexcept nogil:
    cdef int i
    for i in range(W):
        if k.w[i]:
            return False
    return True


def mono_mul(k1, k2, LO):
    """Product of packed monomials with exponents folded by x^3 = x."""
    return _pykernels.mono_mul(k1, k2, LO)


# reducers --------------------------------------------------------------------------

cdef class Reducers:
    """Reducers bucketed by the largest variable of their leading monomial."""

    cdef public object LO
    cdef public object fallback
    cdef Red *reds
    cdef int nreds, cap
    cdef int *bucket[MAXVARS]
    cdef int blen[MAXVARS]
    cdef int bcap[MAXVARS]
    cdef int units

    def __cinit__(self, LO):
        self.reds = NULL
        self.nreds = self.cap = self.units = 0
        memset(self.bucket, 0, sizeof(self.bucket))
        memset(self.blen, 0, sizeof(self.blen))
        memset(self.bcap, 0, sizeof(self.bcap))

    def __init__(self, LO):
        self.LO = LO
        nvars = (LO.bit_length() + 1) // 2
        self.fallback = _pykernels.Reducers(LO) if nvars > MAXVARS else None

    def __dealloc__(self):
        cdef int i
        for i in range(self.nreds):
            free(self.reds[i].tk)
            free(self.reds[i].tc)
        free(self.reds)
        for i in range(MAXVARS):
            free(self.bucket[i])

    def add(self, lm, tail):
        if self.fallback is not None:
            self.fallback.add(lm, tail)
            return
        if not lm:
            self.units += 1
            return
        cdef int v = (lm.bit_length() - 1) // 2
        cdef int n = len(tail), i
        if self.nreds == self.cap:
            self.cap = max(16, 2 * self.cap)
            self.reds = <Red *>realloc(self.reds, self.cap * sizeof(Red))
            if self.reds == NULL:
                raise MemoryError()
        cdef Red *r = &self.reds[self.nreds]
        to_key(lm, &r.lm)
        kmasks(&r.lm, &r.a, &r.b)
        r.tlen = n
        r.tk = <Key *>malloc(max(n, 1) * sizeof(Key))
        r.tc = <unsigned char *>malloc(max(n, 1))
        if r.tk == NULL or r.tc == NULL:
            raise MemoryError()
        for i, (k, c) in enumerate(tail):
            to_key(k, &r.tk[i])
            r.tc[i] = c % 3
        if self.blen[v] == self.bcap[v]:
            self.bcap[v] = max(8, 2 * self.bcap[v])
            self.bucket[v] = <int *>realloc(self.bucket[v], self.bcap[v] * sizeof(int))
            if self.bucket[v] == NULL:
                raise MemoryError()
        self.bucket[v][self.blen[v]] = self.nreds
        self.blen[v] += 1
        self.nreds += 1

    def remove(self, lm):
        if self.fallback is not None:
            self.fallback.remove(lm)
            return
        if not lm:
            self.units -= 1
            return
        cdef Key k
        cdef int v = (lm.bit_length() - 1) // 2, i, j = 0
        to_key(lm, &k)
        for i in range(self.blen[v]):
            if kcmp(&self.reds[self.bucket[v][i]].lm, &k) != 0:
                self.bucket[v][j] = self.bucket[v][i]
                j += 1
        self.blen[v] = j

    cdef Red *find(self, const Key *t) noexcept nogil:
        cdef Key ta, tb
        cdef int i, j, f, v
        cdef uint64_t x
        cdef Red *r
        kmasks(t, &ta, &tb)
        for i in range(W - 1, -1, -1):
            x = t.w[i]
            while x:
                f = (63 - __builtin_clzll(x)) >> 1
                x &= ~(<uint64_t>3 << (2 * f))
                v = 32 * i + f
                for j in range(self.blen[v]):
                    r = &self.reds[self.bucket[v][j]]
                    if ((r.a.w[0] & ~ta.w[0]) | (r.a.w[1] & ~ta.w[1]) | (r.a.w[2] & ~ta.w[2])
                            | (r.a.w[3] & ~ta.w[3]) | (r.b.w[0] & ~tb.w[0]) | (r.b.w[1] & ~tb.w[1])
                            | (r.b.w[2] & ~tb.w[2]) | (r.b.w[3] & ~tb.w[3])) == 0:
                        return r
        return NULL


# max-heap of terms -----------------------------------------------------------------

ctypedef struct Heap:
    Term *d
    Py_ssize_t n, cap


cdef int hpush(Heap *h, const Key *k, int c) except -1 nogil:
    cdef Py_ssize_t i, p
    cdef Term *nd
    if h.n == h.cap:
        h.cap = 2 * h.cap if h.cap else 1024
        nd = <Term *>realloc(h.d, h.cap * sizeof(Term))
        if nd == NULL:
            with gil:
                raise MemoryError()
        h.d = nd
    i = h.n
    h.n += 1
    while i > 0:
        p = (i - 1) >> 1
        if kcmp(&h.d[p].k, k) >= 0:
            break
        h.d[i] = h.d[p]
        i = p
    h.d[i].k = k[0]
    h.d[i].c = c
    return 0


cdef void hpop(Heap *h) noexcept nogil:
    cdef Py_ssize_t i = 0, ch
    cdef Term last
    h.n -= 1
    if h.n == 0:
        return
    last = h.d[h.n]
    while True:
        ch = 2 * i + 1
        if ch >= h.n:
            break
        if ch + 1 < h.n and kcmp(&h.d[ch + 1].k, &h.d[ch].k) > 0:
            ch += 1
        if kcmp(&h.d[ch].k, &last.k) <= 0:
            break
        h.d[i] = h.d[ch]
        i = ch
    h.d[i] = last


def normal_form(terms, Reducers index):
    """Fully reduce {key: coeff} by the reducers in ``index``; returns a new dict."""
    if index.fallback is not None:
        return _pykernels.normal_form(terms, index.fallback)
    if index.units:
        return {}
    cdef Heap h
    h.d = NULL
    h.n = h.cap = 0
    cdef Heap res
    res.d = NULL
    res.n = res.cap = 0
    cdef Key t, m, kk
    cdef int c, mult, i
    cdef Red *r
    out = {}
    try:
        for k, v in terms.items():
            if v % 3:
                to_key(k, &t)
                hpush(&h, &t, v % 3)
        while h.n:
            t = h.d[0].k
            c = 0
            while h.n and kcmp(&h.d[0].k, &t) == 0:
                c += h.d[0].c
                hpop(&h)
            c %= 3
            if not c:
                continue
            r = index.find(&t)
            if r == NULL:
                hpush(&res, &t, c)   # used as a plain array; pushed in descending order
                continue
            for i in range(W):
                m.w[i] = t.w[i] - r.lm.w[i]
            mult = 3 - c
            if kzero(&m):
                for i in range(r.tlen):
                    hpush(&h, &r.tk[i], (mult * r.tc[i]) % 3)
            else:
                for i in range(r.tlen):
                    kmul(&m, &r.tk[i], &kk)
                    hpush(&h, &kk, (mult * r.tc[i]) % 3)
        for i in range(res.n):
            out[from_key(&res.d[i].k)] = res.d[i].c
    finally:
        free(h.d)
        free(res.d)
    return out


# tiling search ---------------------------------------------------------------------

ctypedef struct Plan:
    int N, ncell, limit, found
    int *val
    int *fixed
    int *sides
    int *aoff
    int *avals
    int *roff
    int *rfour
    unsigned char *rbad
    int *poff
    int *psub_off
    int *psub
    int *ppv
    int *pivs_off
    int *pivs
    int *ptgt
    int *ooff
    int *osub_off
    int *osub
    int *opv


cdef inline int _ints(list xs, int **out) except -1:
    cdef int i
    out[0] = <int *>malloc(max(len(xs), 1) * sizeof(int))
    if out[0] == NULL:
        raise MemoryError()
    for i in range(len(xs)):
        out[0][i] = xs[i]
    return 0


cdef bint _check(Plan *p, int k) noexcept:
    cdef int q, j, code, v, ok
    for q in range(p.roff[k], p.roff[k + 1]):
        code = 0
        for j in range(4):
            v = p.val[p.rfour[4 * q + j]]
            if v < 0:
                code = -1
                break
            code = 3 * code + v
        if code >= 0 and p.rbad[81 * q + code]:
            return False
    for q in range(p.poff[k], p.poff[k + 1]):
        ok = 1
        for j in range(p.psub_off[q], p.psub_off[q + 1]):
            if p.val[p.psub[j]] != p.ppv[j]:
                ok = 0
                break
        if ok:
            for j in range(p.pivs_off[q], p.pivs_off[q + 1]):
                if p.val[p.pivs[j]] != p.ptgt[j]:
                    return False
    for q in range(p.ooff[k], p.ooff[k + 1]):
        ok = 1
        for j in range(p.osub_off[q], p.osub_off[q + 1]):
            if p.val[p.osub[j]] != p.opv[j]:
                ok = 0
                break
        if ok:
            return False
    return True


cdef int _rec(Plan *p, int k, list out) except -1:
    cdef int q, j, iv, v, nnew, ok
    cdef int newly[3]
    if k == p.ncell:
        out.append(tuple([p.val[i] for i in range(1, p.N + 1)]))
        p.found += 1
        return 1 if (p.limit >= 0 and p.found >= p.limit) else 0
    for q in range(p.aoff[k], p.aoff[k + 1]):
        nnew = 0
        ok = 1
        for j in range(3):
            iv = p.sides[3 * k + j]
            v = p.avals[3 * q + j]
            if p.val[iv] >= 0:
                if p.val[iv] != v:
                    ok = 0
                    break
            elif p.fixed[iv] == -2 and v == 2:
                ok = 0
                break
            else:
                p.val[iv] = v
                newly[nnew] = iv
                nnew += 1
        if ok and _check(p, k) and _rec(p, k + 1, out):
            for j in range(nnew):
                p.val[newly[j]] = -1
            return 1
        for j in range(nnew):
            p.val[newly[j]] = -1
    return 0


def tiling_search(N, sides, allowed, fixed, rh, poly, orphan, limit=None):
    """Backtrack over atomic pieces cell by cell; see oracle.search_plan."""
    cdef Plan p
    cdef int i
    cdef list out = []
    memset(&p, 0, sizeof(Plan))
    p.N = N
    p.ncell = len(sides)
    p.limit = -1 if limit is None else limit
    rbad = []
    rfour, roff = [], [0]
    poff, psub_off, psub, ppv, pivs_off, pivs, ptgt = [0], [0], [], [], [0], [], []
    ooff, osub_off, osub, opv = [0], [0], [], []
    aoff, avals = [0], []
    for k in range(p.ncell):
        for t in allowed[k]:
            avals.extend(t)
        aoff.append(len(avals) // 3)
        for four, bad in rh[k]:
            rfour.extend(four)
            table = [0] * 81
            for b in bad:
                if all(0 <= x <= 2 for x in b):
                    table[27 * b[0] + 9 * b[1] + 3 * b[2] + b[3]] = 1
            rbad.extend(table)
        roff.append(len(rfour) // 4)
        for ivs, sub, pvals, target in poly[k]:
            psub.extend(sub)
            ppv.extend(pvals)
            psub_off.append(len(psub))
            pivs.extend(ivs)
            ptgt.extend(target)
            pivs_off.append(len(pivs))
        poff.append(len(psub_off) - 1)
        for sub, pvals in orphan[k]:
            osub.extend(sub)
            opv.extend(pvals)
            osub_off.append(len(osub))
        ooff.append(len(osub_off) - 1)
    try:
        _ints([-1] * (N + 1), &p.val)
        _ints(list(fixed), &p.fixed)
        _ints([s for tr in sides for s in tr], &p.sides)
        _ints(aoff, &p.aoff)
        _ints(avals, &p.avals)
        _ints(roff, &p.roff)
        _ints(rfour, &p.rfour)
        p.rbad = <unsigned char *>malloc(max(len(rbad), 1))
        if p.rbad == NULL:
            raise MemoryError()
        for i in range(len(rbad)):
            p.rbad[i] = rbad[i]
        _ints(poff, &p.poff)
        _ints(psub_off, &p.psub_off)
        _ints(psub, &p.psub)
        _ints(ppv, &p.ppv)
        _ints(pivs_off, &p.pivs_off)
        _ints(pivs, &p.pivs)
        _ints(ptgt, &p.ptgt)
        _ints(ooff, &p.ooff)
        _ints(osub_off, &p.osub_off)
        _ints(osub, &p.osub)
        _ints(opv, &p.opv)
        for i in range(1, N + 1):
            if p.fixed[i] >= 0:
                p.val[i] = p.fixed[i]
        _rec(&p, 0, out)
    finally:
        free(p.val); free(p.fixed); free(p.sides); free(p.aoff); free(p.avals)
        free(p.roff); free(p.rfour); free(p.rbad); free(p.poff); free(p.psub_off)
        free(p.psub); free(p.ppv); free(p.pivs_off); free(p.pivs); free(p.ptgt)
        free(p.ooff); free(p.osub_off); free(p.osub); free(p.opv)
    return out

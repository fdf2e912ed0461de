"""Pure-Python versions of the hot loops; the compiled module mirrors them."""

from __future__ import annotations


def tiling_search(N, sides, allowed, fixed, rh, poly, orphan, limit=None):
    """Backtrack over atomic pieces cell by cell; see oracle.search_plan."""
    val = [-1] * (N + 1)
    for i in range(1, N + 1):
        if fixed[i] >= 0:
            val[i] = fixed[i]
    ncell = len(sides)
    out = []

    def rec(k):
        if k == ncell:
            out.append(tuple(val[1:]))
            return limit is not None and len(out) >= limit
        a, b, c = sides[k]
        for x, y, z in allowed[k]:
            newly = []
            ok = True
            for iv, v in ((a, x), (b, y), (c, z)):
                cur = val[iv]
                if cur >= 0:
                    if cur != v:
                        ok = False
                        break
                elif fixed[iv] == -2 and v == 2:
                    ok = False
                    break
                else:
                    val[iv] = v
                    newly.append(iv)
            if ok:
                for four, bad in rh[k]:
                    if tuple([val[s] for s in four]) in bad:
                        ok = False
                        break
            if ok:
                for ivs, sub, pvals, target in poly[k]:
                    if tuple([val[s] for s in sub]) == pvals and tuple([val[i] for i in ivs]) != target:
                        ok = False
                        break
            if ok:
                for sub, pvals in orphan[k]:
                    if tuple([val[s] for s in sub]) == pvals:
                        ok = False
                        break
            if ok and rec(k + 1):
                for iv in newly:
                    val[iv] = -1
                return True
            for iv in newly:
                val[iv] = -1
        return False

    rec(0)
    return out


# Groebner kernels -----------------------------------------------------------------
# A monomial key packs two bits per variable; LO has the low bit of every field set.

def mono_mul(k1, k2, LO):
    """Product of packed monomials with exponents folded by x^3 = x."""
    b1 = (k1 >> 1) & LO
    a1 = (k1 & LO) | b1
    b2 = (k2 >> 1) & LO
    a2 = (k2 & LO) | b2
    b = (b1 & ~a2) | (b2 & ~a1) | (a1 & a2 & ~(b1 ^ b2))
    a = a1 | a2
    return (b << 1) | (a & ~b)


def _lead_vars(t, LO):
    """Shifts of the variables present in key t, largest first."""
    out = []
    while t:
        s = t.bit_length() - 1 & ~1
        out.append(s)
        t &= (1 << s) - 1
    return out


class Reducers:
    """Reducers bucketed by the largest variable of their leading monomial."""

    def __init__(self, LO):
        self.LO = LO
        self.buckets = {}

    def add(self, lm, tail):
        b = (lm >> 1) & self.LO
        a = (lm & self.LO) | b
        lead = lm.bit_length() - 1 & ~1
        self.buckets.setdefault(lead, []).append((a, b, lm, tail))

    def remove(self, lm):
        lead = lm.bit_length() - 1 & ~1
        bucket = self.buckets[lead]
        bucket[:] = [r for r in bucket if r[2] != lm]


def normal_form(terms, index):
    """Fully reduce {key: coeff} by the reducers in ``index``; returns a new dict."""
    import heapq

    LO = index.LO
    buckets = index.buckets
    if -2 in buckets:  # a constant reducer: the ideal is the whole ring
        return {}
    f = dict(terms)
    heap = [-k for k in f]
    heapq.heapify(heap)
    out = {}
    while heap:
        t = -heapq.heappop(heap)
        c = f.pop(t, 0)
        if not c:
            continue
        while heap and heap[0] == -t:
            heapq.heappop(heap)
        tb = (t >> 1) & LO
        ta = (t & LO) | tb
        hit = None
        for s in _lead_vars(t, LO):
            bucket = buckets.get(s)
            if bucket:
                for r in bucket:
                    if not (r[0] & ~ta) and not (r[1] & ~tb):
                        hit = r
                        break
                if hit is not None:
                    break
        if hit is None:
            out[t] = c
            continue
        m = t - hit[2]
        for k, cg in hit[3]:
            kk = mono_mul(m, k, LO) if m else k
            v = f.get(kk)
            if v is None:
                nv = (-c * cg) % 3
                f[kk] = nv
                heapq.heappush(heap, -kk)
            else:
                nv = (v - c * cg) % 3
                if nv:
                    f[kk] = nv
                else:
                    del f[kk]
    return out

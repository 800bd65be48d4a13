# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled hot kernels; same API and results as ``_pykernels``."""

BACKEND = "cython"

cdef enum:
    MAXE = 64
    MAXC = 32

cdef dict _ONE = {0: 1}
cdef dict _EMPTY = {}
cdef dict _p_caches = {}
cdef dict _s_caches = {}


def clear_caches():
    _p_caches.clear()
    _s_caches.clear()


cdef inline void _shift_add(dict acc, dict src, long e):
    cdef object k, c, v
    for k, c in src.items():
        k = k + e
        v = acc.get(k, 0) + c
        if v:
            acc[k] = v
        else:
            acc.pop(k, None)


cdef inline long _lvl(long c):
    return c >> 6


cdef dict _p(tuple w, tuple sym, dict cache):
    cdef Py_ssize_t n = len(w), k = 0
    cdef long a, b, va, vb, diff, e
    if n == 0:
        return _ONE
    hit = cache.get(w)
    if hit is not None:
        return <dict>hit
    while k < n - 1 and _lvl(<long>w[k]) <= _lvl(<long>w[k + 1]):
        k += 1
    if k == n - 1:
        cache[w] = _EMPTY
        return _EMPTY
    a = w[k]
    b = w[k + 1]
    va = a & 63
    vb = b & 63
    diff = _lvl(a) - _lvl(b)
    e = <long>sym[va][vb]
    if diff & 1:
        e = -e
    cdef dict res = {}
    _shift_add(res, _p(w[:k] + (b, a) + w[k + 2:], sym, cache), e)
    if va == vb and diff == 1:
        _shift_add(res, _p(w[:k] + w[k + 2:], sym, cache), 0)
    cache[w] = res
    return res


def p_numerator(codes, sym):
    cdef tuple w = tuple(codes)
    cdef long low, c
    cdef long acc[64]
    cdef Py_ssize_t i
    if len(w) == 0:
        return dict(_ONE)
    if len(w) & 1:
        return {}
    for i in range(64):
        acc[i] = 0
    low = _lvl(<long>w[0])
    for x in w:
        c = x
        if _lvl(c) & 1:
            acc[c & 63] -= 1
        else:
            acc[c & 63] += 1
        if _lvl(c) < low:
            low = _lvl(c)
    for i in range(64):
        if acc[i]:
            return {}
    if low:
        w = tuple([x - (low << 6) for x in w])
    cache = _p_caches.get(sym)
    if cache is None:
        cache = {}
        _p_caches[sym] = cache
    return dict(_p(w, sym, cache))


cdef dict _st(tuple w, tuple sym, dict cache):
    cdef Py_ssize_t n = len(w), k = 0
    cdef long a, b, va, vb, diff, e
    hit = cache.get(w)
    if hit is not None:
        return <dict>hit
    while k < n - 1 and _lvl(<long>w[k]) <= _lvl(<long>w[k + 1]):
        k += 1
    cdef dict res
    if k >= n - 1:
        res = {w: _ONE}
        cache[w] = res
        return res
    a = w[k]
    b = w[k + 1]
    va = a & 63
    vb = b & 63
    diff = _lvl(a) - _lvl(b)
    e = <long>sym[va][vb]
    if diff & 1:
        e = -e
    res = {}
    for word, num in _st(w[:k] + (b, a) + w[k + 2:], sym, cache).items():
        acc = res.get(word)
        if acc is None:
            acc = {}
            res[word] = acc
        _shift_add(acc, num, e)
    if va == vb and diff == 1:
        for word, num in _st(w[:k] + w[k + 2:], sym, cache).items():
            acc = res.get(word)
            if acc is None:
                acc = {}
                res[word] = acc
            _shift_add(acc, num, 0)
    res = {word: num for word, num in res.items() if num}
    cache[w] = res
    return res


def straighten_word(codes, sym):
    cache = _s_caches.get(sym)
    if cache is None:
        cache = {}
        _s_caches[sym] = cache
    return {w: dict(num) for w, num in _st(tuple(codes), sym, cache).items()}


cdef inline int _sign(long delta):
    if delta >= 1:
        return -1 if delta & 1 else 1
    return 1 if delta & 1 else -1


cdef struct Enum:
    int p
    int r
    int total
    long lev[MAXE]
    int ver[MAXE]
    int partner[MAXE]
    int sym[8][8]
    bint a2
    bint alt


cdef struct Chord:
    int kind
    int x
    int y
    int v
    long l1
    long l2
    int i1


cdef bint _degree(Enum* st, long* out_deg):
    cdef Chord ch[MAXC]
    cdef int nc = 0, e, f, s, u, k1, k2, p = st.p, r = st.r
    cdef long m = 0, n = 0, deg = 0
    cdef Chord *c1
    cdef Chord *c2
    cdef Chord *tmp
    for e in range(st.total):
        f = st.partner[e]
        if f < e:
            continue
        ch[nc].v = st.ver[e]
        ch[nc].l1 = st.lev[e]
        ch[nc].l2 = st.lev[f]
        if f < p:
            ch[nc].kind = 1
            ch[nc].x = e
            ch[nc].y = f
            ch[nc].i1 = e
        elif e < p:
            ch[nc].kind = 0
            ch[nc].x = e
            ch[nc].y = p + r - 1 - (f - p)
            ch[nc].i1 = e
        else:
            ch[nc].kind = 2
            ch[nc].x = p + r - 1 - (f - p)
            ch[nc].y = p + r - 1 - (e - p)
            ch[nc].i1 = e - p
        nc += 1
    for s in range(nc):
        for u in range(s + 1, nc):
            c1 = &ch[s]
            c2 = &ch[u]
            if not ((c1.x < c2.x < c1.y < c2.y) or (c2.x < c1.x < c2.y < c1.y)):
                continue
            k1 = c1.kind
            k2 = c2.kind
            if k1 > k2:
                tmp = c1; c1 = c2; c2 = tmp
                k1 = c1.kind
                k2 = c2.kind
            if k1 == 0 and k2 == 0:
                if c1.i1 > c2.i1:
                    tmp = c1; c1 = c2; c2 = tmp
                if st.a2 and c1.l1 == 1 and c2.l1 == 0:
                    return False
                m = c1.l1
                n = c2.l1
            elif k1 == 0 and k2 == 1:
                if st.alt:
                    m = c1.l1
                    n = c2.l1 + 1
                else:
                    m = c2.l1
                    n = c1.l1
            elif k1 == 0 and k2 == 2:
                if st.alt:
                    m = c2.l2
                    n = c1.l1
                else:
                    m = c1.l1
                    n = c2.l1
            elif k1 == 1 and k2 == 1:
                if c1.i1 > c2.i1:
                    tmp = c1; c1 = c2; c2 = tmp
                if st.alt:
                    m = c1.l2
                    n = c2.l2
                else:
                    m = c2.l1
                    n = c1.l2
            elif k1 == 2 and k2 == 2:
                if c1.i1 > c2.i1:
                    tmp = c1; c1 = c2; c2 = tmp
                if st.alt:
                    m = c2.l1
                    n = c1.l1
                else:
                    m = c1.l2
                    n = c2.l1
            else:
                continue
            deg += _sign(n - m) * st.sym[c1.v][c2.v]
    out_deg[0] = deg
    return True


cdef void _rec(Enum* st, int e, dict out):
    cdef int f, ve
    cdef long le, lf, deg = 0
    cdef bint ok
    while e < st.total and st.partner[e] >= 0:
        e += 1
    if e == st.total:
        if _degree(st, &deg):
            out[deg] = out.get(deg, 0) + 1
        return
    le = st.lev[e]
    ve = st.ver[e]
    for f in range(e + 1, st.total):
        if st.partner[f] >= 0 or st.ver[f] != ve:
            continue
        lf = st.lev[f]
        if e < st.p:
            if f < st.p:
                ok = lf == le + 1
            else:
                ok = lf == le
        else:
            ok = le == lf + 1
        if ok:
            st.partner[e] = f
            st.partner[f] = e
            _rec(st, e + 1, out)
            st.partner[e] = -1
            st.partner[f] = -1


def matching_degrees(bottom, top, sym, bint a2=False, bint alt=False):
    cdef Enum st
    cdef int k, i, j
    cdef long c
    bottom = tuple(bottom)
    top = tuple(top)
    st.p = len(bottom)
    st.r = len(top)
    st.total = st.p + st.r
    out = {}
    if st.total & 1:
        return out
    if st.total > MAXE or len(sym) > 8:
        raise ValueError("boundary too large for the compiled kernel")
    st.a2 = a2
    st.alt = alt
    for i in range(len(sym)):
        for j in range(len(sym)):
            st.sym[i][j] = sym[i][j]
    k = 0
    for x in bottom + top:
        c = x
        st.lev[k] = c >> 6
        st.ver[k] = c & 63
        st.partner[k] = -1
        k += 1
    _rec(&st, 0, out)
    return out


def list_matchings(bottom, top):
    from ._pykernels import list_matchings as _lm
    return _lm(bottom, top)

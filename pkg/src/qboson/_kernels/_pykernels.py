"""Pure-Python hot kernels.

Letters are packed as ``level * 64 + vertex``; ``code >> 6`` recovers the level
(also for negative levels) and ``code & 63`` the vertex.  Scalars produced here
are numerators only, as ``{exponent: coefficient}`` dicts: every value carries
the implied denominator prod_v (1 - q^(2 d_v))^kappa_v, where kappa_v is half
the number of deleted (or matched) letters with vertex v.  The compiled module
exposes exactly the same functions.
"""

from __future__ import annotations

BACKEND = "python"

_ONE = {0: 1}
_EMPTY: dict = {}

_p_caches: dict = {}
_s_caches: dict = {}


def clear_caches() -> None:
    _p_caches.clear()
    _s_caches.clear()


def _shift_add(acc: dict, src: dict, e: int) -> None:
    for k, c in src.items():
        k += e
        v = acc.get(k, 0) + c
        if v:
            acc[k] = v
        else:
            acc.pop(k, None)


def _p(w: tuple, sym, cache: dict) -> dict:
    if not w:
        return _ONE
    hit = cache.get(w)
    if hit is not None:
        return hit
    n = len(w)
    k = 0
    while k < n - 1 and (w[k] >> 6) <= (w[k + 1] >> 6):
        k += 1
    if k == n - 1:
        cache[w] = _EMPTY
        return _EMPTY
    a, b = w[k], w[k + 1]
    va, vb = a & 63, b & 63
    diff = (a >> 6) - (b >> 6)
    e = sym[va][vb] if diff % 2 == 0 else -sym[va][vb]
    res: dict = {}
    _shift_add(res, _p(w[:k] + (b, a) + w[k + 2:], sym, cache), e)
    if va == vb and diff == 1:
        _shift_add(res, _p(w[:k] + w[k + 2:], sym, cache), 0)
    cache[w] = res
    return res


def _weight_zero(codes) -> bool:
    acc: dict = {}
    for c in codes:
        v = c & 63
        acc[v] = acc.get(v, 0) + (-1 if (c >> 6) & 1 else 1)
    return not any(acc.values())


def p_numerator(codes, sym) -> dict:
    """Numerator of the empty-word coefficient of the straightened word."""
    codes = tuple(codes)
    if not codes:
        return dict(_ONE)
    if len(codes) % 2 or not _weight_zero(codes):
        return {}
    low = min(c >> 6 for c in codes)
    if low:
        codes = tuple(c - (low << 6) for c in codes)
    cache = _p_caches.setdefault(sym, {})
    return dict(_p(codes, sym, cache))


def _st(w: tuple, sym, cache: dict) -> dict:
    hit = cache.get(w)
    if hit is not None:
        return hit
    n = len(w)
    k = 0
    while k < n - 1 and (w[k] >> 6) <= (w[k + 1] >> 6):
        k += 1
    if k >= n - 1:
        res = {w: _ONE}
        cache[w] = res
        return res
    a, b = w[k], w[k + 1]
    va, vb = a & 63, b & 63
    diff = (a >> 6) - (b >> 6)
    e = sym[va][vb] if diff % 2 == 0 else -sym[va][vb]
    res = {}
    for word, num in _st(w[:k] + (b, a) + w[k + 2:], sym, cache).items():
        acc = res.setdefault(word, {})
        _shift_add(acc, num, e)
    if va == vb and diff == 1:
        for word, num in _st(w[:k] + w[k + 2:], sym, cache).items():
            acc = res.setdefault(word, {})
            _shift_add(acc, num, 0)
    res = {word: num for word, num in res.items() if num}
    cache[w] = res
    return res


def straighten_word(codes, sym) -> dict:
    """Reduced words (as code tuples) mapped to their coefficient numerators."""
    cache = _s_caches.setdefault(sym, {})
    return {w: dict(num) for w, num in _st(tuple(codes), sym, cache).items()}


def _sign(delta: int) -> int:
    if delta >= 1:
        return -1 if delta & 1 else 1
    return 1 if delta & 1 else -1


def _chord_pair_degree(c1, c2, sym, alt: bool) -> int:
    # chord layout: (kind, x, y, vertex, l1, l2, i1, i2)
    # kind 0 through: i1 bottom index, i2 top index, l1 = l2 = level
    # kind 1 cap: i1 < i2 bottom indices, l1, l2 their levels
    # kind 2 cup: i1 < i2 top indices, l1, l2 their levels
    k1, k2 = c1[0], c2[0]
    if k1 > k2:
        c1, c2 = c2, c1
        k1, k2 = k2, k1
    if k1 == 0 and k2 == 0:
        if c1[6] > c2[6]:
            c1, c2 = c2, c1
        m, n = c1[4], c2[4]
    elif k1 == 0 and k2 == 1:
        m, n = c2[4], c1[4]
        if alt:
            m, n = n, m + 1
    elif k1 == 0 and k2 == 2:
        n_thr = c1[4]
        if alt:
            m, n = c2[5], n_thr
        else:
            m, n = n_thr, c2[4]
    elif k1 == 1 and k2 == 1:
        if c1[6] > c2[6]:
            c1, c2 = c2, c1
        if alt:
            m, n = c1[5], c2[5]
        else:
            m, n = c2[4], c1[5]
    elif k1 == 2 and k2 == 2:
        if c1[6] > c2[6]:
            c1, c2 = c2, c1
        if alt:
            m, n = c2[4], c1[4]
        else:
            m, n = c1[5], c2[4]
    else:
        return 0
    return _sign(n - m) * sym[c1[3]][c2[3]]


def matching_degrees(bottom, top, sym, a2: bool = False, alt: bool = False) -> dict:
    """Histogram {degree: count} over all compatible matchings of the boundary.

    With ``a2`` set, matchings containing a leftwards crossing are skipped.
    With ``alt`` set, cap and cup crossings use the alternative leg labels.
    """
    bottom, top = tuple(bottom), tuple(top)
    p, r = len(bottom), len(top)
    total = p + r
    out: dict = {}
    if total % 2:
        return out
    ends = bottom + top
    partner = [-1] * total

    def finish():
        chords = []
        for e in range(total):
            f = partner[e]
            if f < e:
                continue
            lv_e, lv_f = ends[e] >> 6, ends[f] >> 6
            v = ends[e] & 63
            if f < p:
                chords.append((1, e, f, v, lv_e, lv_f, e, f))
            elif e < p:
                t = f - p
                chords.append((0, e, p + r - 1 - t, v, lv_e, lv_f, e, t))
            else:
                ce, cf = e - p, f - p
                chords.append((2, p + r - 1 - cf, p + r - 1 - ce, v, lv_e, lv_f, ce, cf))
        deg = 0
        nc = len(chords)
        for s in range(nc):
            a = chords[s]
            for u in range(s + 1, nc):
                b = chords[u]
                if not ((a[1] < b[1] < a[2] < b[2]) or (b[1] < a[1] < b[2] < a[2])):
                    continue
                if a2 and a[0] == 0 and b[0] == 0:
                    lft, rgt = (a, b) if a[6] < b[6] else (b, a)
                    if lft[4] == 1 and rgt[4] == 0:
                        return
                deg += _chord_pair_degree(a, b, sym, alt)
        out[deg] = out.get(deg, 0) + 1

    def rec(e: int):
        while e < total and partner[e] >= 0:
            e += 1
        if e == total:
            finish()
            return
        ce = ends[e]
        le, ve = ce >> 6, ce & 63
        for f in range(e + 1, total):
            if partner[f] >= 0:
                continue
            cf = ends[f]
            if (cf & 63) != ve:
                continue
            lf = cf >> 6
            if e < p:
                ok = lf == le + 1 if f < p else lf == le
            else:
                ok = le == lf + 1
            if ok:
                partner[e] = f
                partner[f] = e
                rec(e + 1)
                partner[e] = -1
                partner[f] = -1

    rec(0)
    return out


def list_matchings(bottom, top) -> list:
    """All compatible matchings as sorted tuples of endpoint-index pairs
    (indices below len(bottom) are bottom endpoints, the rest top)."""
    bottom, top = tuple(bottom), tuple(top)
    p = len(bottom)
    ends = bottom + top
    total = len(ends)
    out: list = []
    if total % 2:
        return out
    partner = [-1] * total

    def rec(e: int):
        while e < total and partner[e] >= 0:
            e += 1
        if e == total:
            out.append(tuple((x, partner[x]) for x in range(total) if partner[x] > x))
            return
        ce = ends[e]
        le, ve = ce >> 6, ce & 63
        for f in range(e + 1, total):
            if partner[f] >= 0 or (ends[f] & 63) != ve:
                continue
            lf = ends[f] >> 6
            if e < p:
                ok = lf == le + 1 if f < p else lf == le
            else:
                ok = le == lf + 1
            if ok:
                partner[e], partner[f] = f, e
                rec(e + 1)
                partner[e] = partner[f] = -1

    rec(0)
    return out

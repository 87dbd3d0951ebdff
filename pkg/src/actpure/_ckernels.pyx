# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled homomorphism search kernels (same contract as _pykernels)."""

from libc.stdlib cimport malloc, free
from libc.string cimport memset

DEF DOMAIN_LIMIT = 4000000


cdef struct Search:
    int *src
    int *tgt
    int n
    int m
    int mt
    int *img
    int *used
    int injective
    int *trail
    int ntrail
    int *stack
    char *dom
    char *mark
    int active
    int *pstart
    int *pa
    int *ps
    int *queue
    char *inq
    long long *dtrail
    long long nd


cdef int *_to_c(seq, Py_ssize_t length) except NULL:
    cdef int *buf = <int *> malloc((length if length > 0 else 1) * sizeof(int))
    cdef Py_ssize_t i
    if buf == NULL:
        raise MemoryError()
    for i in range(length):
        buf[i] = seq[i]
    return buf


cdef int _init(Search *S, int *src, int *tgt, int n, int m, int mt, int injective) except -1:
    S.src = src
    S.tgt = tgt
    S.n = n
    S.m = m
    S.mt = mt
    S.injective = injective
    S.ntrail = 0
    S.dom = NULL
    S.active = 0
    S.pstart = NULL
    S.pa = NULL
    S.ps = NULL
    S.queue = NULL
    S.inq = NULL
    S.dtrail = NULL
    S.nd = 0
    S.img = <int *> malloc((m + 1) * sizeof(int))
    S.used = <int *> malloc((mt + 1) * sizeof(int))
    S.trail = <int *> malloc((m + 1) * sizeof(int))
    S.stack = <int *> malloc(2 * (m * n + 2) * sizeof(int))
    S.mark = <char *> malloc((mt + 1) * sizeof(char))
    if S.img == NULL or S.used == NULL or S.trail == NULL or S.stack == NULL or S.mark == NULL:
        raise MemoryError()
    _reset(S)
    return 0


cdef void _reset(Search *S) noexcept:
    cdef int i
    for i in range(S.m):
        S.img[i] = -1
    for i in range(S.mt):
        S.used[i] = 0
    S.ntrail = 0
    S.active = 0


cdef void _release(Search *S) noexcept:
    free(S.img)
    free(S.used)
    free(S.trail)
    free(S.stack)
    free(S.dom)
    free(S.mark)
    free(S.pstart)
    free(S.pa)
    free(S.ps)
    free(S.queue)
    free(S.inq)
    free(S.dtrail)


cdef inline void _zero(Search *S, long long idx) noexcept:
    S.dom[idx] = 0
    S.dtrail[S.nd] = idx
    S.nd += 1


cdef int _assign(Search *S, int a, int v) noexcept:
    cdef int top = 1, cur, ba, bv, s, w
    S.stack[0] = a
    S.stack[1] = v
    while top > 0:
        top -= 1
        a = S.stack[2 * top]
        v = S.stack[2 * top + 1]
        cur = S.img[a]
        if cur >= 0:
            if cur != v:
                return 0
            continue
        if S.active:
            if not S.dom[a * S.mt + v]:
                return 0
            for w in range(S.mt):
                if w != v and S.dom[a * S.mt + w]:
                    _zero(S, a * S.mt + w)
        if S.injective:
            if S.used[v]:
                return 0
            S.used[v] = 1
        S.img[a] = v
        S.trail[S.ntrail] = a
        S.ntrail += 1
        ba = a * S.n
        bv = v * S.n
        for s in range(S.n):
            S.stack[2 * top] = S.src[ba + s]
            S.stack[2 * top + 1] = S.tgt[bv + s]
            top += 1
    return 1


cdef void _undo(Search *S, int mark) noexcept:
    cdef int a
    while S.ntrail > mark:
        S.ntrail -= 1
        a = S.trail[S.ntrail]
        if S.injective:
            S.used[S.img[a]] = 0
        S.img[a] = -1


cdef int _push(Search *S, int x, int *qtail) noexcept:
    if not S.inq[x]:
        S.inq[x] = 1
        S.queue[qtail[0] % (S.m + 1)] = x
        qtail[0] += 1
    return 0


cdef int _consistent(Search *S, int *seed, int nseed) noexcept:
    # propagate from the seed elements until stable; 0 if a candidate set empties
    cdef int x, a, b, v, w, s, k, hit, alive
    cdef int mt = S.mt, n = S.n
    cdef char *dom = S.dom
    cdef char *mk = S.mark
    cdef char *xrow
    cdef char *row
    cdef int qhead = 0, qtail = 0
    if not S.active:
        return 1
    for k in range(nseed):
        _push(S, seed[k], &qtail)
    while qhead < qtail:
        x = S.queue[qhead % (S.m + 1)]
        qhead += 1
        S.inq[x] = 0
        xrow = dom + x * mt
        for k in range(S.pstart[x], S.pstart[x + 1]):
            a = S.pa[k]
            s = S.ps[k]
            row = dom + a * mt
            hit = 0
            alive = 0
            for v in range(mt):
                if row[v]:
                    if not xrow[S.tgt[v * n + s]]:
                        _zero(S, <long long> a * mt + v)
                        hit = 1
                    else:
                        alive = 1
            if hit:
                if not alive:
                    _drain(S, qhead, qtail)
                    return 0
                _push(S, a, &qtail)
        for s in range(n):
            b = S.src[x * n + s]
            memset(mk, 0, mt)
            for v in range(mt):
                if xrow[v]:
                    mk[S.tgt[v * n + s]] = 1
            row = dom + b * mt
            hit = 0
            alive = 0
            for w in range(mt):
                if row[w]:
                    if mk[w]:
                        alive = 1
                    else:
                        _zero(S, <long long> b * mt + w)
                        hit = 1
            if hit:
                if not alive:
                    _drain(S, qhead, qtail)
                    return 0
                _push(S, b, &qtail)
    return 1


cdef void _drain(Search *S, int qhead, int qtail) noexcept:
    while qhead < qtail:
        S.inq[S.queue[qhead % (S.m + 1)]] = 0
        qhead += 1


cdef int _start(Search *S) except -1:
    cdef long long size = <long long> S.m * S.mt
    cdef int a, v, s, b, k
    if size > DOMAIN_LIMIT:
        S.active = 0
        return 1
    if S.dom == NULL:
        S.dom = <char *> malloc((size if size > 0 else 1) * sizeof(char))
        S.pstart = <int *> malloc((S.m + 2) * sizeof(int))
        S.pa = <int *> malloc((S.m * S.n + 1) * sizeof(int))
        S.ps = <int *> malloc((S.m * S.n + 1) * sizeof(int))
        S.queue = <int *> malloc((S.m + 1) * sizeof(int))
        S.inq = <char *> malloc((S.m + 1) * sizeof(char))
        S.dtrail = <long long *> malloc((size + 1) * sizeof(long long))
        if S.dtrail == NULL or S.dom == NULL or S.pstart == NULL or S.pa == NULL or S.ps == NULL or S.queue == NULL or S.inq == NULL:
            raise MemoryError()
        for b in range(S.m + 2):
            S.pstart[b] = 0
        for a in range(S.m):
            for s in range(S.n):
                S.pstart[S.src[a * S.n + s] + 2] += 1
        for b in range(S.m):
            S.pstart[b + 2] += S.pstart[b + 1]
        for a in range(S.m):
            for s in range(S.n):
                b = S.src[a * S.n + s]
                k = S.pstart[b + 1]
                S.pa[k] = a
                S.ps[k] = s
                S.pstart[b + 1] += 1
        memset(S.inq, 0, S.m + 1)
    for a in range(S.m):
        for v in range(S.mt):
            S.dom[a * S.mt + v] = 1 if (S.img[a] < 0 or S.img[a] == v) else 0
    S.active = 1
    S.nd = 0
    return _consistent_all(S)


cdef int _consistent_all(Search *S) except -1:
    cdef int *seed = <int *> malloc((S.m + 1) * sizeof(int))
    cdef int a, r
    if seed == NULL:
        raise MemoryError()
    for a in range(S.m):
        seed[a] = a
    r = _consistent(S, seed, S.m)
    free(seed)
    return r


cdef int _try(Search *S, int i, int v) noexcept:
    cdef int mark = S.ntrail
    if not _assign(S, i, v):
        return 0
    return _consistent(S, S.trail + mark, S.ntrail - mark)


cdef void _restore(Search *S, int mark, long long dmark) noexcept:
    _undo(S, mark)
    while S.nd > dmark:
        S.nd -= 1
        S.dom[S.dtrail[S.nd]] = 1


cdef int _allowed(Search *S, int i, int v) noexcept:
    return not S.active or S.dom[i * S.mt + v]


cdef int _exists(Search *S, int i) except -1:
    cdef int v, mark, found = 0
    cdef long long dmark
    while i < S.m and S.img[i] >= 0:
        i += 1
    if i == S.m:
        return 1
    for v in range(S.mt):
        if not _allowed(S, i, v):
            continue
        mark = S.ntrail
        dmark = S.nd
        if _try(S, i, v) and _exists(S, i + 1):
            found = 1
        _restore(S, mark, dmark)
        if found:
            break
    return found


cdef int _collect(Search *S, int i, list out, Py_ssize_t limit) except -1:
    cdef int v, mark, j
    cdef long long dmark
    while i < S.m and S.img[i] >= 0:
        i += 1
    if i == S.m:
        out.append(tuple([S.img[j] for j in range(S.m)]))
        return 1 if (limit > 0 and len(out) >= limit) else 0
    for v in range(S.mt):
        if not _allowed(S, i, v):
            continue
        mark = S.ntrail
        dmark = S.nd
        if _try(S, i, v):
            if _collect(S, i + 1, out, limit):
                return 1
        _restore(S, mark, dmark)
    return 0


def hom_search(src, tgt, int n, pinned, Py_ssize_t limit=0, bint injective=False):
    """All homomorphisms extending ``pinned`` (-1 = free), lexicographically."""
    cdef Py_ssize_t ls = len(src), lt = len(tgt)
    cdef int m = ls // n, mt = lt // n, a
    cdef int *csrc = _to_c(src, ls)
    cdef int *ctgt = _to_c(tgt, lt)
    cdef Search S
    cdef list out = []
    try:
        _init(&S, csrc, ctgt, n, m, mt, injective)
        try:
            for a in range(m):
                if pinned[a] >= 0 and not _assign(&S, a, pinned[a]):
                    return out
            if not _start(&S):
                return out
            _collect(&S, 0, out, limit)
        finally:
            _release(&S)
    finally:
        free(csrc)
        free(ctgt)
    return out


cdef int _leaf_fails(Search *K, Search *E, int *members, int k) except -1:
    cdef int j
    _reset(E)
    for j in range(k):
        if not _assign(E, members[j], K.img[j]):
            return 1
    if not _start(E):
        return 1
    return 0 if _exists(E, 0) else 1


cdef int _walk_k(Search *K, Search *E, int *members, int k, int i) except -1:
    # returns 1 and leaves K.img holding the failing hom when one is found
    cdef int v, mark
    cdef long long dmark
    while i < K.m and K.img[i] >= 0:
        i += 1
    if i == K.m:
        return _leaf_fails(K, E, members, k)
    for v in range(K.mt):
        if not _allowed(K, i, v):
            continue
        mark = K.ntrail
        dmark = K.nd
        if _try(K, i, v) and _walk_k(K, E, members, k, i + 1):
            return 1
        _restore(K, mark, dmark)
    return 0


def unextendable(L, members, A, int n):
    """First hom K -> A (K = members of L) without an extension L -> A, else None."""
    cdef Py_ssize_t ll = len(L), la = len(A), k = len(members)
    cdef int mL = ll // n, mA = la // n, j, s
    cdef dict pos = {a: j for j, a in enumerate(members)}
    ktab = [pos[L[a * n + s]] for a in members for s in range(n)]
    cdef int *cL = _to_c(L, ll)
    cdef int *cA = _to_c(A, la)
    cdef int *cK = _to_c(ktab, k * n)
    cdef int *cm = _to_c(members, k)
    cdef Search KS, ES
    result = None
    try:
        _init(&KS, cK, cA, n, <int> k, mA, 0)
        _init(&ES, cL, cA, n, mL, mA, 0)
        try:
            if _start(&KS) and _walk_k(&KS, &ES, cm, <int> k, 0):
                result = tuple([KS.img[j] for j in range(k)])
        finally:
            _release(&KS)
            _release(&ES)
    finally:
        free(cL)
        free(cA)
        free(cK)
        free(cm)
    return result

"""Pure-Python homomorphism search kernels.

Acts are passed as flat row-major action tables (``table[a * n + s]`` is
``a . s``).  Maps are tuples of target indices.  The compiled module
``_ckernels`` implements the same two functions with the same results.

The search assigns source elements in index order, trying target values in
ascending order, so results come out lexicographically.  Assigning ``a``
forces every ``a.s``; on top of that each node keeps candidate sets
arc-consistent in both directions (``v`` allowed for ``a`` needs ``v.s``
allowed for ``a.s``, and every allowed value of ``a.s`` must be some
``v.s``).  Filtering never removes a value that occurs in a solution, so it
changes speed only.
"""

DOMAIN_LIMIT = 4_000_000


class _Search:
    __slots__ = ("src", "tgt", "n", "m", "mt", "img", "used", "injective", "trail", "dom", "preds", "dlog", "dseen")

    def __init__(self, src, tgt, n, injective=False):
        self.src = src
        self.tgt = tgt
        self.n = n
        self.m = len(src) // n
        self.mt = len(tgt) // n
        self.img = [-1] * self.m
        self.used = [0] * self.mt
        self.injective = injective
        self.trail = []
        self.dom = None
        self.preds = None
        self.dlog = None
        self.dseen = None

    def reset(self):
        self.img = [-1] * self.m
        self.used = [0] * self.mt
        self.trail = []
        self.dom = None

    def assign(self, a, v):
        # forces a -> v and everything reachable from a; False on conflict
        img, src, tgt, n, trail, dom = self.img, self.src, self.tgt, self.n, self.trail, self.dom
        stack = [(a, v)]
        while stack:
            a, v = stack.pop()
            cur = img[a]
            if cur >= 0:
                if cur != v:
                    return False
                continue
            if dom is not None:
                if not dom[a][v]:
                    return False
                self._touch(a)
                row = bytearray(self.mt)
                row[v] = 1
                dom[a] = row
            if self.injective:
                if self.used[v]:
                    return False
                self.used[v] = 1
            img[a] = v
            trail.append(a)
            ba = a * n
            bv = v * n
            for s in range(n):
                stack.append((src[ba + s], tgt[bv + s]))
        return True

    def undo(self, mark):
        img, trail = self.img, self.trail
        while len(trail) > mark:
            a = trail.pop()
            if self.injective:
                self.used[img[a]] = 0
            img[a] = -1

    def pin(self, pinned):
        for a, v in enumerate(pinned):
            if v >= 0 and not self.assign(a, v):
                return False
        return True

    def start(self):
        """Set up candidate sets from the current partial map; False if empty."""
        m, mt = self.m, self.mt
        if m * mt > DOMAIN_LIMIT:
            self.dom = None
            return True
        if self.preds is None:
            preds = [[] for _ in range(m)]
            for a in range(m):
                for s in range(self.n):
                    preds[self.src[a * self.n + s]].append((a, s))
            self.preds = preds
        dom = []
        for a in range(m):
            if self.img[a] >= 0:
                row = bytearray(mt)
                row[self.img[a]] = 1
            else:
                row = bytearray(b"\x01") * mt
            dom.append(row)
        self.dom = dom
        return self.consistent(range(m))

    def _touch(self, a):
        # remember a row before its first change at this search node
        if self.dlog is not None and a not in self.dseen:
            self.dseen.add(a)
            self.dlog.append((a, self.dom[a]))
            self.dom[a] = bytearray(self.dom[a])

    def consistent(self, changed):
        """Propagate from the elements in ``changed`` until stable."""
        dom = self.dom
        if dom is None:
            return True
        mt, n, src, tgt, preds = self.mt, self.n, self.src, self.tgt, self.preds
        queue = list(dict.fromkeys(changed))
        queued = set(queue)
        while queue:
            x = queue.pop()
            queued.discard(x)
            xrow = dom[x]
            # v allowed for a needs v.s allowed for x = a.s
            for a, s in preds[x]:
                row = dom[a]
                hit = False
                for v in range(mt):
                    if row[v] and not xrow[tgt[v * n + s]]:
                        if not hit:
                            self._touch(a)
                            row = dom[a]
                        row[v] = 0
                        hit = True
                if hit:
                    if not any(row):
                        return False
                    if a not in queued:
                        queued.add(a)
                        queue.append(a)
            # every allowed value of x.s is some v.s with v allowed for x
            for s in range(n):
                b = src[x * n + s]
                reach = {tgt[v * n + s] for v in range(mt) if xrow[v]}
                brow = dom[b]
                hit = False
                for w in range(mt):
                    if brow[w] and w not in reach:
                        if not hit:
                            self._touch(b)
                            brow = dom[b]
                        brow[w] = 0
                        hit = True
                if hit:
                    if not any(brow):
                        return False
                    if b not in queued:
                        queued.add(b)
                        queue.append(b)
        return True

    def _try(self, i, v):
        """Assign and filter; returns the undo information or None on failure."""
        mark = len(self.trail)
        if self.dom is not None:
            self.dlog, self.dseen = [], set()
        ok = self.assign(i, v) and self.consistent(self.trail[mark:])
        state = (mark, self.dlog)
        self.dlog = self.dseen = None
        if ok:
            return state
        self._restore(*state)
        return None

    def _restore(self, mark, log):
        self.undo(mark)
        if log:
            dom = self.dom
            for a, row in reversed(log):
                dom[a] = row

    def _values(self, i):
        if self.dom is None:
            return range(self.mt)
        return [v for v, ok in enumerate(self.dom[i]) if ok]

    def _next(self, i):
        img, m = self.img, self.m
        while i < m and img[i] >= 0:
            i += 1
        return i

    def collect(self, out, limit):
        """Depth-first search in lexicographic order of the image tuple.

        Frames are [element, candidate values, next position, undo info];
        an explicit stack keeps deep searches off the interpreter stack.
        """
        m = self.m
        i = self._next(0)
        if i == m:
            out.append(tuple(self.img))
            return
        stack = [[i, self._values(i), 0, None]]
        while stack:
            fr = stack[-1]
            if fr[3] is not None:
                self._restore(*fr[3])
                fr[3] = None
            if fr[2] >= len(fr[1]):
                stack.pop()
                continue
            v = fr[1][fr[2]]
            fr[2] += 1
            state = self._try(fr[0], v)
            if state is None:
                continue
            fr[3] = state
            j = self._next(fr[0] + 1)
            if j == m:
                out.append(tuple(self.img))
                if limit and len(out) >= limit:
                    return
                continue
            stack.append([j, self._values(j), 0, None])


def hom_search(src, tgt, n, pinned, limit=0, injective=False):
    """All homomorphisms extending ``pinned`` (-1 = free), lexicographically.

    ``limit`` > 0 stops after that many results.
    """
    S = _Search(src, tgt, n, injective)
    if not S.pin(pinned) or not S.start():
        return []
    out = []
    S.collect(out, limit)
    return out


def unextendable(L, members, A, n):
    """First hom ``K -> A`` (K = ``members`` of L) with no extension ``L -> A``.

    Returns the map as a tuple indexed like ``members``, or None if every
    hom extends.
    """
    pos = {a: i for i, a in enumerate(members)}
    ktab = []
    for a in members:
        ba = a * n
        ktab.extend(pos[L[ba + s]] for s in range(n))
    ext = _Search(L, A, n)
    for h in hom_search(ktab, A, n, [-1] * len(members)):
        ext.reset()
        pinned = [-1] * ext.m
        for a, v in zip(members, h):
            pinned[a] = v
        if not ext.pin(pinned) or not ext.start():
            return h
        out = []
        ext.collect(out, 1)
        if not out:
            return h
    return None

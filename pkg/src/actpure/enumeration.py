"""Small monoids, acts, subacts and extensions up to isomorphism.

Isomorphism classes are represented by their canonical (lexicographically
least) tables; outputs are sorted by that table, so every enumeration is
reproducible.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import lru_cache

from .core import Act, Monoid, SubactHandle, canonical_table
from .errors import CapExceeded

MONOID_CAP = 4
ACT_CAP = 5
SUBSET_CAP = 20

_MONOID_LABELS = ("1", "a", "b", "c", "d", "f", "g", "h")


def _is_associative(t, n):
    return all(t[t[i][j]][k] == t[i][t[j][k]] for i in range(n) for j in range(n) for k in range(n))


@lru_cache(maxsize=None)
def _monoid_tables(k: int):
    seen = set()
    for free in itertools.product(range(k), repeat=(k - 1) ** 2):
        it = iter(free)
        t = tuple(
            tuple(j if i == 0 else i if j == 0 else next(it) for j in range(k)) for i in range(k)
        )
        if not _is_associative(t, k):
            continue
        seen.add(_canonical_monoid(t))
    return tuple(sorted(seen))


def _canonical_monoid(t):
    # relabel elements other than the identity (index 0)
    k = len(t)
    best = None
    for tail in itertools.permutations(range(1, k)):
        p = (0,) + tail
        inv = [0] * k
        for i, x in enumerate(p):
            inv[x] = i
        c = tuple(tuple(p[t[inv[i]][inv[j]]] for j in range(k)) for i in range(k))
        if best is None or c < best:
            best = c
    return best


def enumerate_monoids(order: int, cap: int = MONOID_CAP) -> list[Monoid]:
    """All monoids of the given order up to isomorphism, identity at index 0."""
    if order < 1:
        raise ValueError("order must be >= 1")
    if order > cap:
        raise CapExceeded(f"monoid order {order} exceeds cap {cap}")
    labels = _MONOID_LABELS[:order]
    return [Monoid(f"M{order}_{i}", labels, 0, t) for i, t in enumerate(_monoid_tables(order))]


def _columns(S: Monoid, m: int, prefix):
    """Yield every valid action table on m elements whose first rows are ``prefix``.

    Tables are built from the columns of a generating set of S; the column of
    any other monoid element is forced by composing generator columns, and a
    disagreement between two ways of reaching it rejects the choice.
    """
    n = S.order
    p = len(prefix)
    gens = S.generators
    mul = S.mul
    ident = tuple(range(m))

    def close(k):
        # columns of the submonoid generated by gens[:k]; None on a clash
        cols = {S.identity: ident}
        frontier = [S.identity]
        while frontier:
            x = frontier.pop()
            for g in gens[:k]:
                y = mul[x][g]
                col = tuple(chosen[g][cols[x][a]] for a in range(m))
                if y in cols:
                    if cols[y] != col:
                        return None
                else:
                    cols[y] = col
                    frontier.append(y)
        return cols

    chosen = {}

    def rec(k):
        if k == len(gens):
            cols = close(k)
            if cols is not None and len(cols) == n:
                yield tuple(tuple(cols[s][a] for s in range(n)) for a in range(m))
            return
        g = gens[k]
        fixed = tuple(prefix[a][g] for a in range(p))
        for free in itertools.product(range(m), repeat=m - p):
            chosen[g] = fixed + free
            if close(k + 1) is not None:
                yield from rec(k + 1)
        del chosen[g]

    yield from rec(0)


@lru_cache(maxsize=None)
def _act_tables(monoid_key, m: int, prefix):
    identity, mul = monoid_key
    S = Monoid("_", tuple(str(i) for i in range(len(mul))), identity, mul)
    seen = set()
    for t in _columns(S, m, prefix):
        seen.add(canonical_table(t, fixed=len(prefix)))
    return tuple(sorted(seen))


def enumerate_acts(S: Monoid, size: int, cap: int = ACT_CAP) -> list[Act]:
    """All acts of the given size over S up to isomorphism."""
    if size < 1:
        raise ValueError("size must be >= 1")
    if size > cap:
        raise CapExceeded(f"act size {size} exceeds cap {cap}")
    labels = tuple(f"a{i}" for i in range(size))
    return [
        Act(f"{S.name}_A{size}_{i}", S, labels, t) for i, t in enumerate(_act_tables(S.key, size, ()))
    ]


def enumerate_extensions(A, extra: int, cap: int = ACT_CAP) -> list[SubactHandle]:
    """All acts B with |B| = |A| + extra containing A as the subact on indices
    0..|A|-1, up to isomorphisms fixing A pointwise."""
    if isinstance(A, SubactHandle):
        A = A.as_act()
    if extra < 1:
        raise ValueError("extra must be >= 1")
    m = A.size + extra
    if m > cap:
        raise CapExceeded(f"extension size {m} exceeds cap {cap}")
    labels = list(A.elements)
    taken = set(labels)
    i = 0
    while len(labels) < m:
        if f"n{i}" not in taken:
            labels.append(f"n{i}")
        i += 1
    out = []
    for j, t in enumerate(_act_tables(A.monoid.key, m, A.action)):
        B = Act(f"{A.name}_ext{extra}_{j}", A.monoid, tuple(labels), t)
        out.append(SubactHandle(B, tuple(range(A.size))))
    return out


def subact_member_sets(A: Act) -> list[tuple[int, ...]]:
    """Every nonempty action-closed subset, ordered by size then lexicographically."""
    orbits = sorted({tuple(sorted(set(row))) for row in A.action})
    found = set()
    frontier = []
    for o in orbits:
        s = frozenset(o)
        if s not in found:
            found.add(s)
            frontier.append(s)
    while frontier:
        s = frontier.pop()
        for o in orbits:
            u = s.union(o)
            if u not in found:
                found.add(u)
                frontier.append(u)
    return sorted((tuple(sorted(s)) for s in found), key=lambda t: (len(t), t))


def enumerate_subacts(A: Act, cap: int = SUBSET_CAP) -> list[SubactHandle]:
    if A.size > cap:
        raise CapExceeded(f"act of size {A.size} exceeds subset cap {cap}")
    return [SubactHandle(A, s) for s in subact_member_sets(A)]


@dataclass
class Catalog:
    monoids: list[Monoid]
    acts_by_monoid: dict[str, list[Act]]
    provenance: dict = field(default_factory=dict)

    def pairs(self):
        for S in self.monoids:
            for A in self.acts_by_monoid[S.name]:
                yield S, A


def build_catalog(max_order: int = 3, max_size: int = 4) -> Catalog:
    monoids = [S for k in range(1, max_order + 1) for S in enumerate_monoids(k)]
    acts = {S.name: [A for m in range(1, max_size + 1) for A in enumerate_acts(S, m)] for S in monoids}
    return Catalog(monoids, acts, {"max_order": max_order, "max_size": max_size})

"""Finite monoids, right acts, subacts and act homomorphisms.

Monoids and acts are stored as index tables.  ``Monoid.mul[i][j]`` is the
index of ``e_i e_j``; ``Act.action[a][s]`` is the index of ``a . s``.  All
objects are immutable; the ``validate_*`` functions are the checked
constructors, direct construction is reserved for code that already knows
the tables are valid.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Mapping, Sequence

from . import kernels
from .errors import (
    ActError,
    AssociativityAxiom,
    EmptySeed,
    IdentityAxiom,
    MixedMonoids,
    NotASubact,
    NotAssociative,
    NotIdentity,
    TableShape,
    TooLarge,
)

DEFAULT_CAP = 10_000


@dataclass(frozen=True)
class Monoid:
    name: str
    elements: tuple[str, ...]
    identity: int
    mul: tuple[tuple[int, ...], ...]

    @property
    def order(self) -> int:
        return len(self.elements)

    @cached_property
    def key(self):
        """Structural identity: two monoids with equal keys are the same monoid."""
        return (self.identity, self.mul)

    @cached_property
    def _index(self):
        return {label: i for i, label in enumerate(self.elements)}

    def index(self, label: str) -> int:
        try:
            return self._index[label]
        except KeyError:
            raise ActError(f"{label!r} is not an element of monoid {self.name}") from None

    @cached_property
    def generators(self) -> tuple[int, ...]:
        """Greedy generating set: repeatedly add the least element not yet generated."""
        gens = []
        reached = {self.identity}
        for x in range(self.order):
            if x in reached:
                continue
            gens.append(x)
            frontier = list(reached)
            while frontier:
                y = frontier.pop()
                for g in gens:
                    z = self.mul[y][g]
                    if z not in reached:
                        reached.add(z)
                        frontier.append(z)
        return tuple(gens)

    def regular_act(self, name=None) -> Act:
        """S acting on itself by right multiplication."""
        return Act(name or f"{self.name}_reg", self, self.elements, self.mul)

    def __repr__(self):
        return f"Monoid({self.name!r}, order={self.order})"


@dataclass(frozen=True)
class Act:
    name: str
    monoid: Monoid
    elements: tuple[str, ...]
    action: tuple[tuple[int, ...], ...]

    @property
    def size(self) -> int:
        return len(self.elements)

    @cached_property
    def key(self):
        return (self.monoid.key, self.action)

    @cached_property
    def flat(self) -> tuple[int, ...]:
        return tuple(itertools.chain.from_iterable(self.action))

    @cached_property
    def _index(self):
        return {label: i for i, label in enumerate(self.elements)}

    def index(self, label: str) -> int:
        try:
            return self._index[label]
        except KeyError:
            raise ActError(f"{label!r} is not an element of act {self.name}") from None

    def act(self, a: int, s: int) -> int:
        return self.action[a][s]

    def orbit(self, a: int) -> frozenset[int]:
        """The cyclic subact aS."""
        return frozenset(self.action[a])

    def fixed_points(self) -> list[int]:
        return [a for a in range(self.size) if all(b == a for b in self.action[a])]

    def whole(self) -> SubactHandle:
        return SubactHandle(self, tuple(range(self.size)))

    def relabel(self, name=None, elements=None) -> Act:
        return Act(name or self.name, self.monoid, tuple(elements or self.elements), self.action)

    def __repr__(self):
        return f"Act({self.name!r}, size={self.size}, over={self.monoid.name!r})"


@dataclass(frozen=True)
class SubactHandle:
    """A nonempty action-closed subset of ``act``, given by sorted indices."""

    act: Act
    members: tuple[int, ...]

    def __post_init__(self):
        members = tuple(sorted(set(self.members)))
        object.__setattr__(self, "members", members)
        if not members:
            raise NotASubact("subact must be nonempty")
        if members[0] < 0 or members[-1] >= self.act.size:
            raise NotASubact(f"member index out of range for act {self.act.name}")
        ms = set(members)
        for a in members:
            for b in self.act.action[a]:
                if b not in ms:
                    raise NotASubact(
                        f"{{{', '.join(self.act.elements[x] for x in members)}}} is not closed: "
                        f"{self.act.elements[a]} maps to {self.act.elements[b]}"
                    )

    @property
    def size(self) -> int:
        return len(self.members)

    @cached_property
    def member_set(self) -> frozenset[int]:
        return frozenset(self.members)

    @cached_property
    def local(self) -> dict[int, int]:
        """Ambient index -> index in :meth:`as_act`."""
        return {a: i for i, a in enumerate(self.members)}

    def is_whole(self) -> bool:
        return self.size == self.act.size

    def labels(self) -> list[str]:
        return [self.act.elements[a] for a in self.members]

    @cached_property
    def _as_act(self) -> Act:
        loc = self.local
        rows = tuple(tuple(loc[b] for b in self.act.action[a]) for a in self.members)
        labels = tuple(self.act.elements[a] for a in self.members)
        name = self.act.name if self.is_whole() else f"{self.act.name}_sub_{'_'.join(labels)}"
        return Act(name, self.act.monoid, labels, rows)

    def as_act(self) -> Act:
        """The subact as a standalone act (elements renumbered in member order)."""
        return self._as_act

    def inclusion(self) -> ActHom:
        return ActHom(self.as_act(), self.act, self.members)

    def __repr__(self):
        return f"SubactHandle({self.act.name}, {{{', '.join(self.labels())}}})"


@dataclass(frozen=True)
class ActHom:
    source: Act
    target: Act
    map: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "map", tuple(self.map))

    def __call__(self, a: int) -> int:
        return self.map[a]

    def is_hom(self) -> bool:
        if self.source.monoid.key != self.target.monoid.key or len(self.map) != self.source.size:
            return False
        src, tgt, f = self.source.action, self.target.action, self.map
        if any(not 0 <= v < self.target.size for v in f):
            return False
        return all(f[src[a][s]] == tgt[f[a]][s] for a in range(self.source.size) for s in range(len(src[a])))

    def is_injective(self) -> bool:
        return len(set(self.map)) == len(self.map)

    def is_bijective(self) -> bool:
        return self.is_injective() and self.source.size == self.target.size

    def after(self, other: ActHom) -> ActHom:
        """``self o other``."""
        if other.target.key != self.source.key:
            raise ActError("composition: codomain and domain differ")
        return ActHom(other.source, self.target, tuple(self.map[v] for v in other.map))

    def image(self) -> SubactHandle:
        return SubactHandle(self.target, tuple(set(self.map)))

    def labelled(self) -> dict[str, str]:
        return {self.source.elements[a]: self.target.elements[v] for a, v in enumerate(self.map)}

    def __repr__(self):
        pairs = ", ".join(f"{k}->{v}" for k, v in self.labelled().items())
        return f"ActHom({self.source.name} -> {self.target.name}: {pairs})"


def identity_hom(A: Act) -> ActHom:
    return ActHom(A, A, tuple(range(A.size)))


def _default_labels(n, prefix):
    return tuple(f"{prefix}{i}" for i in range(n))


def _check_labels(labels, n, what):
    labels = tuple(str(x) for x in labels)
    if len(labels) != n:
        raise TableShape(f"{what}: expected {n} labels, got {len(labels)}")
    if len(set(labels)) != n:
        raise TableShape(f"{what}: labels are not distinct")
    return labels


def validate_monoid(table: Sequence[Sequence[int]], identity: int = 0, labels=None, name: str = "S") -> Monoid:
    """Checked constructor for :class:`Monoid`.

    Raises NotIdentity for the first element where the identity law fails and
    NotAssociative for the lexicographically first failing triple.
    """
    n = len(table)
    if n == 0:
        raise TableShape("monoid must have at least one element")
    rows = tuple(tuple(int(x) for x in row) for row in table)
    if any(len(row) != n for row in rows):
        raise TableShape("multiplication table is not square")
    if any(not 0 <= x < n for row in rows for x in row):
        raise TableShape("multiplication table entry out of range")
    if not 0 <= identity < n:
        raise TableShape("identity index out of range")
    for i in range(n):
        if rows[identity][i] != i or rows[i][identity] != i:
            raise NotIdentity(i)
    for i, j, k in itertools.product(range(n), repeat=3):
        if rows[rows[i][j]][k] != rows[i][rows[j][k]]:
            raise NotAssociative(i, j, k)
    labels = _default_labels(n, "e") if labels is None else _check_labels(labels, n, "monoid")
    return Monoid(name, labels, identity, rows)


def validate_act(monoid: Monoid, table: Sequence[Sequence[int]], labels=None, name: str = "A") -> Act:
    """Checked constructor for :class:`Act` (right unitary action)."""
    m, n = len(table), monoid.order
    if m == 0:
        raise TableShape("acts must be nonempty")
    rows = tuple(tuple(int(x) for x in row) for row in table)
    if any(len(row) != n for row in rows):
        raise TableShape(f"action table rows must have {n} entries")
    if any(not 0 <= x < m for row in rows for x in row):
        raise TableShape("action table entry out of range")
    e, mul = monoid.identity, monoid.mul
    for a in range(m):
        if rows[a][e] != a:
            raise IdentityAxiom(a)
    for a, s, t in itertools.product(range(m), range(n), range(n)):
        if rows[rows[a][s]][t] != rows[a][mul[s][t]]:
            raise AssociativityAxiom(a, s, t)
    labels = _default_labels(m, "a") if labels is None else _check_labels(labels, m, "act")
    return Act(name, monoid, labels, rows)


def trivial_act(S: Monoid, name="Theta", label="θ") -> Act:
    """The one-element act."""
    return Act(name, S, (label,), ((0,) * S.order,))


def same_monoid(*acts: Act) -> Monoid:
    if not acts:
        raise MixedMonoids("no acts given")
    key = acts[0].monoid.key
    for A in acts[1:]:
        if A.monoid.key != key:
            raise MixedMonoids(f"{acts[0].name} and {A.name} are over different monoids")
    return acts[0].monoid


def closure(A: Act, seed: Iterable[int]) -> frozenset[int]:
    out = set()
    for a in seed:
        out.update(A.action[a])
    return frozenset(out)


def generated_subact(A: Act, seed: Iterable[int]) -> SubactHandle:
    """Smallest subact containing ``seed`` (the union of the orbits aS)."""
    seed = list(seed)
    if not seed:
        raise EmptySeed()
    if any(not 0 <= a < A.size for a in seed):
        raise ActError("seed index out of range")
    return SubactHandle(A, tuple(closure(A, seed)))


def product_act(factors: Sequence[Act], cap: int = DEFAULT_CAP, name=None) -> Act:
    """Materialized direct product; elements are index tuples, action componentwise."""
    factors = list(factors)
    if not factors:
        raise ActError("product of no factors")
    S = same_monoid(*factors)
    size = 1
    for F in factors:
        size *= F.size
    if size > cap:
        raise TooLarge(size, cap)
    tuples = list(itertools.product(*(range(F.size) for F in factors)))
    index = {t: i for i, t in enumerate(tuples)}
    rows = tuple(
        tuple(index[tuple(F.action[c][s] for F, c in zip(factors, t))] for s in range(S.order)) for t in tuples
    )
    labels = tuple(":".join(F.elements[c] for F, c in zip(factors, t)) for t in tuples)
    return Act(name or "x".join(F.name for F in factors), S, labels, rows)


def product_tuples(factors: Sequence[Act]) -> list[tuple[int, ...]]:
    """Index tuples in the element order used by :func:`product_act`."""
    return list(itertools.product(*(range(F.size) for F in factors)))


def _pinned_list(A, B, pinned):
    p = [-1] * A.size
    for a, b in (pinned or {}).items():
        if not 0 <= a < A.size or not 0 <= b < B.size:
            raise ActError("pinned index out of range")
        p[a] = b
    return p


def enumerate_homs(A: Act, B: Act, pinned: Mapping[int, int] | None = None, limit: int = 0) -> list[ActHom]:
    """All homs A -> B extending ``pinned``, in lexicographic order of their maps.

    Elements are assigned in index order; images of already-assigned elements
    are propagated, so branching happens only on a greedy generating set.
    """
    same_monoid(A, B)
    maps = kernels.hom_search(A.flat, B.flat, A.monoid.order, _pinned_list(A, B, pinned), limit)
    return [ActHom(A, B, f) for f in maps]


def first_hom(A: Act, B: Act, pinned: Mapping[int, int] | None = None) -> ActHom | None:
    homs = enumerate_homs(A, B, pinned, limit=1)
    return homs[0] if homs else None


def find_isomorphism(A: Act, B: Act) -> ActHom | None:
    same_monoid(A, B)
    if A.size != B.size or _invariant(A) != _invariant(B):
        return None
    maps = kernels.hom_search(A.flat, B.flat, A.monoid.order, [-1] * A.size, 1, True)
    return ActHom(A, B, maps[0]) if maps else None


def _invariant(A: Act):
    # isomorphism-invariant fingerprint: per element, the sorted profile of
    # (fixed by s, orbit size); cheap rejection before the bijection search
    prof = []
    for a in range(A.size):
        row = A.action[a]
        prof.append((tuple(row[s] == a for s in range(len(row))), len(set(row))))
    return sorted(prof)


def is_isomorphic(A: Act, B: Act) -> bool:
    """True iff a bijective hom exists (its inverse is then automatically a hom)."""
    return find_isomorphism(A, B) is not None


def relabel_table(action, perm) -> tuple[tuple[int, ...], ...]:
    """Table of the act obtained by renaming element a to perm[a]."""
    m = len(action)
    out = [None] * m
    for a in range(m):
        out[perm[a]] = tuple(perm[b] for b in action[a])
    return tuple(out)


def canonical_table(action, fixed: int = 0) -> tuple[tuple[int, ...], ...]:
    """Lexicographically least table over all relabelings of elements ``>= fixed``."""
    m = len(action)
    best = None
    head = list(range(fixed))
    for tail in itertools.permutations(range(fixed, m)):
        t = relabel_table(action, head + list(tail))
        if best is None or t < best:
            best = t
    return best


def canonical_form(A: Act):
    """Minimal action table over all permutations of act elements."""
    return (A.monoid.key, canonical_table(A.action))

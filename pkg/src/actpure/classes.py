"""Relative injectivity and the act classes it defines over a finite monoid.

Over a finite monoid every subact of a finite act is finitely generated and
every finite act is finitely presented, so the classes reduce to finite
families of inclusion instances ``K -> L``:

* weakly p-injective: principal right ideals ``aS -> S``;
* weakly f-injective: all right ideals ``I -> S``;
* almost pure: ``K -> L`` with L cyclic;
* absolutely pure, bounded: ``K -> L`` with ``|L| <= n``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import lru_cache

from . import kernels
from .core import DEFAULT_CAP, Act, ActHom, Monoid, SubactHandle, closure, is_isomorphic, product_act, same_monoid
from .enumeration import enumerate_acts, enumerate_extensions, subact_member_sets
from .errors import ActError, MixedMonoids, TooLarge

ALL = "all"
WEAKLY_P = "weakly-p-injective"
WEAKLY_F = "weakly-f-injective"
ALMOST_PURE = "almost-pure"
ABS_PURE = "abs-pure"
EXTENSIONAL = "extensional"

BUILTIN_KINDS = (ALL, WEAKLY_P, WEAKLY_F, ALMOST_PURE, ABS_PURE)
INSTANCE_KINDS = (WEAKLY_P, WEAKLY_F, ALMOST_PURE, ABS_PURE)


@dataclass(frozen=True)
class ActClass:
    """A built-in class kind, or an explicit finite list of acts.

    ``bound`` only applies to ``abs-pure``; None means ``|A| + |S|`` for the
    act being tested.
    """

    kind: str
    bound: int | None = None
    members: tuple[Act, ...] = ()

    def __post_init__(self):
        if self.kind not in BUILTIN_KINDS + (EXTENSIONAL,):
            raise ActError(f"unknown class kind {self.kind!r}")
        if self.bound is not None and self.bound < 1:
            raise ActError("class bound must be >= 1")
        if self.kind == EXTENSIONAL:
            if not self.members:
                raise ActError("extensional class needs at least one act")
            same_monoid(*self.members)
            uniq = []
            for A in self.members:
                if not any(A.size == B.size and is_isomorphic(A, B) for B in uniq):
                    uniq.append(A)
            object.__setattr__(self, "members", tuple(uniq))

    @classmethod
    def builtin(cls, kind: str, bound: int | None = None) -> ActClass:
        return cls(kind, bound)

    @classmethod
    def extensional(cls, acts) -> ActClass:
        return cls(EXTENSIONAL, None, tuple(acts))

    @classmethod
    def parse(cls, text: str, loader=None) -> ActClass:
        """``all``, ``weakly-p-injective``, ``weakly-f-injective``,
        ``almost-pure``, ``abs-pure[:N]`` or ``extensional:FILE``."""
        kind, _, arg = text.partition(":")
        if kind == ABS_PURE:
            if not arg:
                return cls(ABS_PURE)
            try:
                return cls(ABS_PURE, int(arg))
            except ValueError:
                raise ActError(f"bad bound in {text!r}") from None
        if kind == EXTENSIONAL:
            if loader is None or not arg:
                raise ActError("extensional classes need a catalog file")
            return cls.extensional(loader(arg))
        if arg:
            raise ActError(f"class {kind!r} takes no argument")
        return cls(kind)

    def label(self) -> str:
        if self.kind == ABS_PURE and self.bound is not None:
            return f"{ABS_PURE}:{self.bound}"
        return self.kind

    def monoid(self) -> Monoid | None:
        return self.members[0].monoid if self.members else None


@dataclass(frozen=True)
class InclusionInstance:
    """An inclusion K -> L; ``inner`` is K as a subact of ``ambient`` L."""

    ambient: Act
    inner: SubactHandle

    def __post_init__(self):
        if self.inner.act.key != self.ambient.key:
            raise ActError("inner subact does not live in the ambient act")


def right_ideal_acts(S: Monoid, principal_only: bool = False) -> list[SubactHandle]:
    """Right ideals of S as subacts of the right regular act, sorted by size then members."""
    R = S.regular_act()
    if principal_only:
        sets = {tuple(sorted(set(S.mul[a]))) for a in range(S.order)}
        return [SubactHandle(R, m) for m in sorted(sets, key=lambda t: (len(t), t))]
    return [SubactHandle(R, m) for m in subact_member_sets(R)]


def _set_partitions(items):
    if not items:
        yield []
        return
    first, rest = items[0], items[1:]
    for part in _set_partitions(rest):
        for i in range(len(part)):
            yield part[:i] + [[first] + part[i]] + part[i + 1 :]
        yield [[first]] + part


def right_congruences(S: Monoid) -> list[tuple[int, ...]]:
    """Right congruences as class-index vectors (restricted growth strings),
    ordered by number of classes descending, then lexicographically."""
    n = S.order
    out = []
    for part in _set_partitions(list(range(n))):
        cls = [0] * n
        for i, block in enumerate(sorted(part, key=min)):
            for x in block:
                cls[x] = i
        if all(cls[S.mul[x][s]] == cls[S.mul[y][s]] for x in range(n) for y in range(n) if cls[x] == cls[y] for s in range(n)):
            out.append(tuple(cls))
    return sorted(out, key=lambda c: (-(max(c) + 1), c))


def cyclic_acts(S: Monoid) -> list[tuple[tuple[int, ...], Act]]:
    """Every right congruence with its quotient act S/rho (class of 1 first)."""
    out = []
    for cong in right_congruences(S):
        k = max(cong) + 1
        reps = [cong.index(i) for i in range(k)]
        rows = tuple(tuple(cong[S.mul[r][s]] for s in range(S.order)) for r in reps)
        labels = tuple("[" + "".join(S.elements[x] for x in range(S.order) if cong[x] == i) + "]" for i in range(k))
        name = f"{S.name}/" + "".join(str(c) for c in cong)
        out.append((cong, Act(name, S, labels, rows)))
    return out


def _check_instance(A: Act, inst: InclusionInstance):
    h = kernels.unextendable(inst.ambient.flat, inst.inner.members, A.flat, A.monoid.order)
    if h is None:
        return None
    return ActHom(inst.inner.as_act(), A, h)


def is_relatively_injective(A: Act, instances) -> tuple[bool, tuple[InclusionInstance, ActHom] | None]:
    """Whether every hom K -> A extends along every inclusion K -> L given.

    Returns ``(True, None)`` or ``(False, (instance, h))`` with the first hom h
    that has no extension.
    """
    for inst in instances:
        if inst.ambient.monoid.key != A.monoid.key:
            raise MixedMonoids()
        bad = _check_instance(A, inst)
        if bad is not None:
            return False, (inst, bad)
    return True, None


def _step_instance(L: Act, members) -> bool:
    # L is K plus one cyclic subact
    ks = set(members)
    return any(closure(L, list(ks) + [c]) == frozenset(range(L.size)) for c in range(L.size) if c not in ks)


@lru_cache(maxsize=None)
def _instances_cached(kind: str, monoid_key, name: str, labels, bound: int | None, reduced: bool):
    identity, mul = monoid_key
    S = Monoid(name, labels, identity, mul)
    out = []
    if kind in (WEAKLY_P, WEAKLY_F):
        R = S.regular_act()
        for I in right_ideal_acts(S, principal_only=kind == WEAKLY_P):
            if not I.is_whole():
                out.append(InclusionInstance(R, I))
        return tuple(out)
    if kind == ALMOST_PURE:
        Ls = [L for _, L in cyclic_acts(S)]
    elif kind == ABS_PURE:
        Ls = [L for m in range(1, bound + 1) for L in enumerate_acts(S, m)]
    else:
        raise ActError(f"class {kind!r} is not defined by inclusion instances")
    for L in Ls:
        for members in subact_member_sets(L):
            if len(members) == L.size:
                continue
            if reduced and not _step_instance(L, members):
                continue
            out.append(InclusionInstance(L, SubactHandle(L, members)))
    return tuple(out)


def class_instances(kind: str, S: Monoid, bound: int | None = None, reduced: bool = True) -> tuple[InclusionInstance, ...]:
    """The inclusion instances defining a built-in kind over S.

    Trivial instances (K = L) are dropped.  With ``reduced``, only instances
    where L is K plus one cyclic subact are kept: an extension along a longer
    chain ``K = L0 < L1 < ... < L`` is built one cyclic step at a time, and
    every intermediate Li is itself an act of size <= |L|.
    """
    reduced = reduced and kind == ABS_PURE
    return _instances_cached(kind, S.key, S.name, S.elements, bound, reduced)


def _abs_bound(cls: ActClass, A: Act) -> int:
    return cls.bound if cls.bound is not None else A.size + A.monoid.order


@lru_cache(maxsize=200_000)
def _contains_builtin(kind: str, bound: int | None, act_key, flat, name) -> bool:
    identity, mul = act_key[0]
    S = Monoid(name, tuple(str(i) for i in range(len(mul))), identity, mul)
    n = S.order
    for inst in class_instances(kind, S, bound):
        if kernels.unextendable(inst.ambient.flat, inst.inner.members, flat, n) is not None:
            return False
    return True


def class_contains(cls: ActClass, A: Act) -> bool:
    if cls.kind == ALL:
        return True
    if cls.kind == EXTENSIONAL:
        if cls.members[0].monoid.key != A.monoid.key:
            raise MixedMonoids()
        return any(B.size == A.size and is_isomorphic(A, B) for B in cls.members)
    bound = _abs_bound(cls, A) if cls.kind == ABS_PURE else None
    return _contains_builtin(cls.kind, bound, A.key, A.flat, A.monoid.name)


def membership_counterexample(cls: ActClass, A: Act):
    """First (instance, h) witnessing that A is not in a built-in class, or None."""
    if cls.kind in (ALL, EXTENSIONAL):
        return None
    bound = _abs_bound(cls, A) if cls.kind == ABS_PURE else None
    ok, cex = is_relatively_injective(A, class_instances(cls.kind, A.monoid, bound))
    return cex


def class_members(cls: ActClass, S: Monoid, max_size: int) -> list[Act]:
    """Members of the class over S with at most ``max_size`` elements, up to isomorphism."""
    if cls.kind == EXTENSIONAL:
        if cls.members[0].monoid.key != S.key:
            raise MixedMonoids()
        return sorted((A for A in cls.members if A.size <= max_size), key=lambda A: A.size)
    return [A for m in range(1, max_size + 1) for A in enumerate_acts(S, m) if class_contains(cls, A)]


def is_pure_in_extensions(A: Act, extra: int) -> bool:
    """Whether A is pure in every act obtained by adjoining up to ``extra`` elements."""
    from .purity import is_pure

    for e in range(1, extra + 1):
        for sub in enumerate_extensions(A, e, cap=max(5, A.size + extra)):
            if not is_pure(sub).pure:
                return False
    return True


@dataclass
class ClosureReport:
    kind: str
    product_closed: bool
    pure_subact_closed: bool
    members_checked: int
    products_checked: int
    pure_subacts_checked: int
    counterexamples: list = field(default_factory=list)


def check_class_closure(cls: ActClass, scope, cap: int = DEFAULT_CAP) -> ClosureReport:
    """Check closure of ``cls`` under binary products and pure subacts over ``scope``."""
    from .purity import is_pure
    from .enumeration import enumerate_subacts

    scope = list(scope)
    if scope:
        same_monoid(*scope)
    members = [A for A in scope if class_contains(cls, A)]
    cex = []
    n_prod = 0
    for A, B in itertools.combinations_with_replacement(members, 2):
        if A.size * B.size > cap:
            raise TooLarge(A.size * B.size, cap)
        P = product_act([A, B], cap=cap)
        n_prod += 1
        if not class_contains(cls, P):
            cex.append(("product", A, B))
    n_pure = 0
    pure_ok = True
    for A in members:
        for U in enumerate_subacts(A):
            if U.is_whole() or not is_pure(U).pure:
                continue
            n_pure += 1
            if not class_contains(cls, U.as_act()):
                pure_ok = False
                cex.append(("pure-subact", A, U))
    product_ok = not any(c[0] == "product" for c in cex)
    return ClosureReport(cls.label(), product_ok, pure_ok, len(members), n_prod, n_pure, cex)

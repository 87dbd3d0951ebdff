"""Preenvelopes: product construction, reduction by pure closure, verification.

A map ``phi: A -> C`` with C in a class is a preenvelope when every map
``f: A -> C'`` into a class member factors as ``g o phi``.  Verification here
is bounded: C' ranges over the class members with at most ``verify_bound``
elements, up to isomorphism.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import NamedTuple

from .classes import ActClass, class_contains, class_members
from .core import DEFAULT_CAP, Act, ActHom, enumerate_homs, first_hom, product_act
from .errors import TargetNotInClass, TooLarge
from .purity import pure_closure


@dataclass
class LazyProductAct:
    """Product of the coordinate acts, never materialized.

    Elements are index tuples, one entry per coordinate; the action is
    componentwise.
    """

    source: Act
    coordinates: list[tuple[Act, ActHom]]

    @property
    def monoid(self):
        return self.source.monoid

    @property
    def factors(self) -> list[Act]:
        return [C for C, _ in self.coordinates]

    @property
    def size(self) -> int:
        n = 1
        for C in self.factors:
            n *= C.size
        return n

    def act(self, t, s):
        return tuple(C.action[c][s] for C, c in zip(self.factors, t))

    def index(self, t) -> int:
        """Position of the tuple in :meth:`materialize` order."""
        i = 0
        for C, c in zip(self.factors, t):
            i = i * C.size + c
        return i

    def materialize(self, cap: int = DEFAULT_CAP, name="P") -> Act:
        if self.size > cap:
            raise TooLarge(self.size, cap)
        return product_act(self.factors, cap=cap, name=name)


@dataclass(frozen=True)
class LazyHom:
    """``a -> (f_1(a), ..., f_k(a))`` into a :class:`LazyProductAct`."""

    source: Act
    target: LazyProductAct
    images: tuple[tuple[int, ...], ...]

    def __call__(self, a):
        return self.images[a]

    def is_injective(self) -> bool:
        return len(set(self.images)) == len(self.images)

    def is_hom(self) -> bool:
        P = self.target
        return all(
            self.images[self.source.action[a][s]] == P.act(self.images[a], s)
            for a in range(self.source.size)
            for s in range(self.source.monoid.order)
        )


class ProductPreenvelope(NamedTuple):
    product: LazyProductAct
    phi: LazyHom
    certificates: list[bool]


class Reduction(NamedTuple):
    act: Act
    phi: ActHom
    inside: object  # SubactHandle of the materialized product


@dataclass
class FactoringReport:
    candidate: object
    cls: ActClass
    verify_bound: int
    verified: bool
    counterexample: tuple[Act, ActHom] | None = None
    certificates: dict = field(default_factory=dict)
    checked: int = 0


def _pinned_for(phi_map, f: ActHom):
    pinned = {}
    for a, c in enumerate(phi_map):
        v = f.map[a]
        if pinned.setdefault(c, v) != v:
            return None
    return pinned


def factor_through(phi: ActHom, f: ActHom) -> ActHom | None:
    """Least g: C -> C' with g o phi = f, or None."""
    pinned = _pinned_for(phi.map, f)
    if pinned is None:
        return None
    return first_hom(phi.target, f.target, pinned)


def verify_preenvelope(phi: ActHom, cls: ActClass, verify_bound: int) -> FactoringReport:
    """Check that every f: A -> C' (C' in cls, |C'| <= verify_bound) factors through phi."""
    C = phi.target
    if not class_contains(cls, C):
        raise TargetNotInClass(f"{C.name} is not in class {cls.label()}")
    report = FactoringReport(phi, cls, verify_bound, True)
    for Cp in class_members(cls, C.monoid, verify_bound):
        for f in enumerate_homs(phi.source, Cp):
            report.checked += 1
            g = factor_through(phi, f)
            if g is None:
                report.verified = False
                report.counterexample = (Cp, f)
                return report
            report.certificates[(Cp.name, f.map)] = g
    return report


@dataclass
class EnvelopeReport:
    preenvelope: FactoringReport
    verified: bool
    non_automorphism: ActHom | None = None


def verify_envelope(phi: ActHom, cls: ActClass, verify_bound: int) -> EnvelopeReport:
    """Preenvelope check plus: every g: C -> C with g o phi = phi is bijective."""
    pre = verify_preenvelope(phi, cls, verify_bound)
    if not pre.verified:
        return EnvelopeReport(pre, False)
    C = phi.target
    pinned = {c: c for c in phi.map}
    for g in enumerate_homs(C, C, pinned):
        if not g.is_bijective():
            return EnvelopeReport(pre, False, g)
    return EnvelopeReport(pre, True)


def extract_retraction(phi: ActHom) -> ActHom | None:
    """Least g: C -> A with g o phi = id_A, or None."""
    return factor_through(phi, ActHom(phi.source, phi.source, tuple(range(phi.source.size))))


def product_preenvelope(A: Act, cls: ActClass, rep_bound: int) -> ProductPreenvelope:
    """Map A into the product of every (C', f: A -> C') with C' a class member
    of size <= rep_bound.  Each projection factors its own f."""
    coords = [(Cp, f) for Cp in class_members(cls, A.monoid, rep_bound) for f in enumerate_homs(A, Cp)]
    P = LazyProductAct(A, coords)
    images = tuple(tuple(f.map[a] for _, f in coords) for a in range(A.size))
    phi = LazyHom(A, P, images)
    certs = [all(images[a][i] == f.map[a] for a in range(A.size)) for i, (_, f) in enumerate(coords)]
    return ProductPreenvelope(P, phi, certs)


def verify_product_preenvelope(pp: ProductPreenvelope, cls: ActClass, verify_bound: int) -> FactoringReport:
    """Bounded factoring check for the lazy product using only projections."""
    A = pp.phi.source
    index = {(Cp.key, f.map): i for i, (Cp, f) in enumerate(pp.product.coordinates)}
    report = FactoringReport(pp.phi, cls, verify_bound, True)
    for Cp in class_members(cls, A.monoid, verify_bound):
        for f in enumerate_homs(A, Cp):
            report.checked += 1
            i = index.get((Cp.key, f.map))
            if i is None or not pp.certificates[i]:
                report.verified = False
                report.counterexample = (Cp, f)
                return report
            report.certificates[(Cp.name, f.map)] = ("projection", i)
    return report


def reduce_via_pure_closure(P: LazyProductAct, phi: LazyHom, cap: int = DEFAULT_CAP) -> Reduction:
    """Replace the product by the pure closure of the image of phi inside it."""
    Pm = P.materialize(cap)
    image = sorted({P.index(t) for t in phi.images})
    U = pure_closure(Pm, image)
    Uact = U.as_act()
    m = tuple(U.local[P.index(t)] for t in phi.images)
    return Reduction(Uact, ActHom(phi.source, Uact, m), U)


def find_min_preenvelope(A: Act, cls: ActClass, target_bound: int, verify_bound: int):
    """First verified (phi, report), scanning targets by size then canonical order
    and maps lexicographically; None if nothing within the bounds verifies."""
    for C in class_members(cls, A.monoid, target_bound):
        for phi in enumerate_homs(A, C):
            report = verify_preenvelope(phi, cls, verify_bound)
            if report.verified:
                return phi, report
    return None

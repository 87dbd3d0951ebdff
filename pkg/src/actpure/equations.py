"""Finite systems of equations ``x.r = y.s`` / ``x.r = x.s`` / ``x.r = a`` over an act.

A system is written over an ambient act; its constants live in a subact of
that act.  Solving happens in any target act into which the constants embed.
"""

from __future__ import annotations

import itertools
from collections import deque
from dataclasses import dataclass
from typing import Iterator, Mapping, Union

from .core import Act, ActHom, SubactHandle
from .errors import ActError, BadEmbedding


@dataclass(frozen=True, order=True)
class VarTerm:
    """``x_var . scalar``"""

    var: int
    scalar: int


@dataclass(frozen=True, order=True)
class ConstTerm:
    """A constant, as an element index of the ambient act."""

    elem: int


Term = Union[VarTerm, ConstTerm]


@dataclass(frozen=True)
class EquationSystem:
    var_count: int
    constants: SubactHandle
    equations: tuple[tuple[Term, Term], ...]
    var_names: tuple[str, ...] | None = None

    def __post_init__(self):
        object.__setattr__(self, "equations", tuple((l, r) for l, r in self.equations))
        if self.var_count < 0:
            raise ActError("negative variable count")
        if self.var_names is not None:
            names = tuple(self.var_names)
            if len(names) != self.var_count or len(set(names)) != len(names):
                raise ActError("variable names must be distinct, one per variable")
            object.__setattr__(self, "var_names", names)
        n = self.constants.act.monoid.order
        members = self.constants.member_set
        for eq in self.equations:
            for t in eq:
                if isinstance(t, VarTerm):
                    if not 0 <= t.var < self.var_count or not 0 <= t.scalar < n:
                        raise ActError(f"term {t} out of range")
                elif isinstance(t, ConstTerm):
                    if t.elem not in members:
                        raise ActError(f"constant {t.elem} is not in the constants subact")
                else:
                    raise ActError(f"not a term: {t!r}")

    @property
    def act(self) -> Act:
        return self.constants.act

    def names(self) -> tuple[str, ...]:
        if self.var_names is not None:
            return self.var_names
        if self.var_count <= 4:
            return ("x", "y", "z", "w")[: self.var_count]
        return tuple(f"x{i + 1}" for i in range(self.var_count))

    def format_term(self, t: Term) -> str:
        if isinstance(t, VarTerm):
            return f"{self.names()[t.var]}.{self.act.monoid.elements[t.scalar]}"
        return f"@{self.act.elements[t.elem]}"

    def format(self) -> list[str]:
        return [f"{self.format_term(l)} = {self.format_term(r)}" for l, r in self.equations]

    def used_vars(self) -> list[int]:
        return sorted({t.var for eq in self.equations for t in eq if isinstance(t, VarTerm)})

    def compact(self) -> EquationSystem:
        """Drop variables that occur in no equation and renumber the rest."""
        used = self.used_vars()
        if len(used) == self.var_count:
            return self
        ren = {v: i for i, v in enumerate(used)}

        def sub(t):
            return VarTerm(ren[t.var], t.scalar) if isinstance(t, VarTerm) else t

        names = None if self.var_names is None else tuple(self.var_names[v] for v in used)
        eqs = tuple((sub(l), sub(r)) for l, r in self.equations)
        return EquationSystem(len(used), self.constants, eqs, names)

    def with_equations(self, eqs) -> EquationSystem:
        return EquationSystem(self.var_count, self.constants, tuple(eqs), self.var_names)


def _embedding(sys: EquationSystem, target: Act, embed) -> dict[int, int]:
    members = sys.constants.members
    if embed is None:
        if target.key != sys.act.key:
            raise BadEmbedding("an embedding is required when solving outside the ambient act")
        return {a: a for a in members}
    if isinstance(embed, ActHom):
        src = embed.source
        if src.key == sys.constants.as_act().key and len(embed.map) == len(members):
            emb = {a: embed.map[i] for i, a in enumerate(members)}
        elif src.key == sys.act.key:
            emb = {a: embed.map[a] for a in members}
        else:
            raise BadEmbedding("embedding source is neither the constants subact nor its ambient act")
        if embed.target.key != target.key:
            raise BadEmbedding("embedding target differs from the solving target")
    else:
        emb = dict(embed)
    if target.monoid.key != sys.act.monoid.key:
        raise BadEmbedding("target act is over a different monoid")
    if any(a not in emb for a in members):
        raise BadEmbedding("embedding is not defined on every constant")
    for a in members:
        if not 0 <= emb[a] < target.size:
            raise BadEmbedding("embedding value out of range")
        for s, b in enumerate(sys.act.action[a]):
            if emb[b] != target.action[emb[a]][s]:
                raise BadEmbedding(
                    f"embedding is not a hom at {sys.act.elements[a]}.{sys.act.monoid.elements[s]}"
                )
    return emb


def evaluate(t: Term, values, target: Act, emb: Mapping[int, int]) -> int:
    if isinstance(t, VarTerm):
        return target.action[values[t.var]][t.scalar]
    return emb[t.elem]


def satisfies(sys: EquationSystem, target: Act, values, embed=None) -> bool:
    """Independent evaluation of every equation under an assignment."""
    emb = _embedding(sys, target, embed)
    if len(values) != sys.var_count:
        return False
    return all(evaluate(l, values, target, emb) == evaluate(r, values, target, emb) for l, r in sys.equations)


class Problem:
    """Constraint network of a system in a target act, after arc consistency.

    ``domains`` is None when the system is already known unsolvable.
    """

    def __init__(self, sys: EquationSystem, target: Act, embed=None):
        self.sys = sys
        self.target = target
        emb = _embedding(sys, target, embed)
        k = sys.var_count
        act = target.action
        domains = [set(range(target.size)) for _ in range(k)]
        binary = []  # (x, r, y, s) with x != y
        ok = True
        for l, r in sys.equations:
            if isinstance(l, ConstTerm) and isinstance(r, ConstTerm):
                ok = ok and emb[l.elem] == emb[r.elem]
                continue
            if isinstance(l, ConstTerm):
                l, r = r, l
            if isinstance(r, ConstTerm):
                c = emb[r.elem]
                domains[l.var] = {v for v in domains[l.var] if act[v][l.scalar] == c}
            elif l.var == r.var:
                domains[l.var] = {v for v in domains[l.var] if act[v][l.scalar] == act[v][r.scalar]}
            else:
                binary.append((l.var, l.scalar, r.var, r.scalar))
        self.binary = binary
        # constraints checked when the later of the two variables is assigned
        self.checks = [[] for _ in range(k)]
        for x, r, y, s in binary:
            if x < y:
                self.checks[y].append((x, r, s))
            else:
                self.checks[x].append((y, s, r))
        if ok and all(domains):
            ok = self._ac3(domains)
        self.domains = [sorted(d) for d in domains] if ok else None

    def _ac3(self, domains) -> bool:
        act = self.target.action
        arcs = {}
        for x, r, y, s in self.binary:
            arcs.setdefault((x, y), []).append((r, s))
            arcs.setdefault((y, x), []).append((s, r))
        neighbours = {}
        for x, y in arcs:
            neighbours.setdefault(y, []).append(x)
        queue = deque(arcs)
        while queue:
            x, y = queue.popleft()
            pairs = arcs[(x, y)]
            keep = {v for v in domains[x] if any(all(act[v][r] == act[w][s] for r, s in pairs) for w in domains[y])}
            if len(keep) < len(domains[x]):
                domains[x] = keep
                if not keep:
                    return False
                for z in neighbours.get(x, ()):
                    if z != y:
                        queue.append((z, x))
        return True

    def consistent(self, values, i) -> bool:
        """Whether ``values[i]`` agrees with every earlier assigned variable."""
        act = self.target.action
        v = values[i]
        return all(act[values[j]][s] == act[v][r] for j, s, r in self.checks[i])

    def solutions(self) -> Iterator[tuple[int, ...]]:
        """All satisfying assignments in lexicographic order."""
        if self.domains is None:
            return
        k = self.sys.var_count
        values = [0] * k

        def rec(i):
            if i == k:
                yield tuple(values)
                return
            for v in self.domains[i]:
                values[i] = v
                if self.consistent(values, i):
                    yield from rec(i + 1)

        yield from rec(0)


def solve_system(sys: EquationSystem, target: Act | None = None, embed=None) -> tuple[int, ...] | None:
    """Lexicographically least solution in ``target``, or None.

    ``embed`` maps the constants into ``target``: an ActHom from the constants
    subact (or from its ambient act) or a dict keyed by ambient indices.  It
    may be omitted when solving in the ambient act itself.
    """
    if target is None:
        target = sys.act
    return next(Problem(sys, target, embed).solutions(), None)


def iter_solutions(sys: EquationSystem, target: Act | None = None, embed=None) -> Iterator[tuple[int, ...]]:
    if target is None:
        target = sys.act
    return Problem(sys, target, embed).solutions()


def brute_force_solutions(sys: EquationSystem, target: Act | None = None, embed=None) -> list[tuple[int, ...]]:
    """Every assignment in ``target^vars`` checked directly; test oracle."""
    if target is None:
        target = sys.act
    emb = _embedding(sys, target, embed)
    out = []
    for values in itertools.product(range(target.size), repeat=sys.var_count):
        if all(evaluate(l, values, target, emb) == evaluate(r, values, target, emb) for l, r in sys.equations):
            out.append(values)
    return out


def diagram_for(sub: SubactHandle, universe=None) -> EquationSystem:
    """Diagram of ``sub`` relative to the elements of ``universe`` (default: all of B).

    ``universe`` must be a subact of B containing ``sub``.  One variable per
    element outside ``sub``; every action coincidence among outside elements
    and every hit of ``sub`` becomes an equation.
    """
    B = sub.act
    inside = sub.member_set
    if universe is None:
        universe = range(B.size)
    outside = [b for b in sorted(universe) if b not in inside]
    var = {b: i for i, b in enumerate(outside)}
    n = B.monoid.order
    terms = [(b, r) for b in outside for r in range(n)]
    by_value = {}
    for b, r in terms:
        by_value.setdefault(B.action[b][r], []).append((b, r))
    eqs = []
    seen = set()
    for b, r in terms:
        value = B.action[b][r]
        lhs = VarTerm(var[b], r)
        if value in inside:
            eqs.append((lhs, ConstTerm(value)))
        for b2, s in by_value[value]:
            if (b2, s) <= (b, r):
                continue
            eq = (lhs, VarTerm(var[b2], s))
            if eq not in seen:
                seen.add(eq)
                eqs.append(eq)
    names = tuple(f"x_{B.elements[b]}" for b in outside)
    return EquationSystem(len(outside), sub, tuple(eqs), names)


def diagram_system(sub: SubactHandle) -> EquationSystem:
    """The complete system of action relations of B over constants from ``sub``.

    Its variables are the elements of B outside ``sub`` in index order, and
    the tuple of those elements is always a solution in B.
    """
    return diagram_for(sub)


def outside_elements(sub: SubactHandle, universe=None) -> list[int]:
    inside = sub.member_set
    return [b for b in sorted(universe if universe is not None else range(sub.act.size)) if b not in inside]

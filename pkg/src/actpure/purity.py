"""Purity of subacts, purity witnesses and pure closures."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

from .core import Act, ActHom, SubactHandle, closure, enumerate_homs, generated_subact
from .equations import EquationSystem, Problem, diagram_for, solve_system
from .errors import ActError, CapExceeded, EmptySeed

BOUNDED_BUDGET = 2_000_000


@dataclass(frozen=True)
class PurityVerdict:
    pure: bool
    method: str
    witness: EquationSystem | None = None
    retraction: ActHom | None = None


def _retraction(sub: SubactHandle, universe=None) -> ActHom | None:
    """A hom from ``universe`` (a subact of B containing ``sub``, default B) onto
    ``sub`` fixing ``sub`` pointwise."""
    B = sub.act
    if universe is None:
        src = B
        pos = {a: a for a in range(B.size)}
    else:
        V = SubactHandle(B, tuple(universe))
        src = V.as_act()
        pos = V.local
    A = sub.as_act()
    pinned = {pos[a]: i for a, i in sub.local.items()}
    homs = enumerate_homs(src, A, pinned, limit=1)
    return homs[0] if homs else None


def is_pure(sub: SubactHandle) -> PurityVerdict:
    """Decide purity by searching for a retraction B -> A fixing A.

    For a finite ambient act this is exact: the whole diagram of B over A is a
    single finite system, and its solutions in A are the retractions.
    """
    r = _retraction(sub)
    if r is not None:
        return PurityVerdict(True, "retraction", retraction=r)
    return PurityVerdict(False, "retraction", witness=purity_witness(sub))


def is_pure_via_diagram(sub: SubactHandle) -> PurityVerdict:
    """Decide purity by solving the complete diagram of B over A inside A."""
    diagram = diagram_for(sub)
    A = sub.as_act()
    if solve_system(diagram, A, sub.local) is not None:
        return PurityVerdict(True, "diagram")
    return PurityVerdict(False, "diagram", witness=diagram)


def retraction_from_solution(sub: SubactHandle, values) -> ActHom:
    """b -> values[x_b] outside A, a -> a inside."""
    B = sub.act
    inside = sub.local
    outside = [b for b in range(B.size) if b not in inside]
    f = [0] * B.size
    for a, i in inside.items():
        f[a] = i
    for b, v in zip(outside, values):
        f[b] = v
    return ActHom(B, sub.as_act(), tuple(f))


def _minimize(system: EquationSystem, A: Act, emb) -> EquationSystem:
    eqs = list(system.equations)
    i = 0
    while i < len(eqs):
        trial = eqs[:i] + eqs[i + 1 :]
        if solve_system(system.with_equations(trial), A, emb) is None:
            eqs = trial
        else:
            i += 1
    return system.with_equations(eqs).compact()


def purity_witness(sub: SubactHandle) -> EquationSystem | None:
    """A system with constants in A, solvable in B but not in A; None if A is pure.

    The witness is a subsystem of the diagram: first the ambient elements are
    thinned to a subact V of B in which A is still not a retract, then
    equations of the diagram of A in V are dropped one at a time while the
    rest stays unsolvable in A.
    """
    B = sub.act
    if _retraction(sub) is not None:
        return None
    inside = sub.member_set
    gens = [b for b in range(B.size) if b not in inside]
    kept = list(gens)
    for g in gens:
        trial = [x for x in kept if x != g]
        universe = closure(B, list(inside) + trial)
        if _retraction(sub, universe) is None:
            kept = trial
    universe = closure(B, list(inside) + kept)
    diagram = diagram_for(sub, universe)
    return _minimize(diagram, sub.as_act(), sub.local)


def _atoms(v: int, n: int, constants):
    atoms = []
    terms = [(i, r) for i in range(v) for r in range(n)]
    for (i, r), (j, s) in itertools.combinations(terms, 2):
        atoms.append((i, r, j, s))
    for i, r in terms:
        for a in constants:
            atoms.append((i, r, None, a))
    return atoms


def _sat_mask(atoms, act, t) -> int:
    mask = 0
    for k, (i, r, j, s) in enumerate(atoms):
        lhs = act[t[i]][r]
        rhs = s if j is None else act[t[j]][s]
        if lhs == rhs:
            mask |= 1 << k
    return mask


def _hitting_set(sets, limit, budget):
    """Is there a set of <= limit atoms meeting every mask in ``sets``?"""

    def rec(chosen, left):
        budget[0] -= 1
        if budget[0] < 0:
            raise CapExceeded("bounded purity search exceeded its budget")
        miss = next((d for d in sets if not d & chosen), None)
        if miss is None:
            return True
        if left == 0:
            return False
        bits = miss
        while bits:
            low = bits & -bits
            if rec(chosen | low, left - 1):
                return True
            bits ^= low
        return False

    return rec(0, limit)


def is_pure_bounded(sub: SubactHandle, max_vars: int, max_eqs: int, budget: int = BOUNDED_BUDGET) -> bool:
    """Check every system with <= max_vars variables and <= max_eqs equations.

    Systems are taken up to renaming of variables.  A system E solvable in B
    with solution t fails in A iff E meets ``sat(t) - sat(u)`` for every u in
    A^vars, so the search runs over t (as a multiset) and then looks for a
    small hitting set of those differences.
    """
    if max_vars < 1 or max_eqs < 1:
        raise ActError("bounds must be >= 1")
    B = sub.act
    inside = sub.members
    act = B.action
    atoms = _atoms(max_vars, B.monoid.order, inside)
    left = [budget]
    u_masks = [_sat_mask(atoms, act, u) for u in itertools.product(inside, repeat=max_vars)]
    inside_set = sub.member_set
    for t in itertools.combinations_with_replacement(range(B.size), max_vars):
        left[0] -= 1
        if all(x in inside_set for x in t):
            continue
        sat_t = _sat_mask(atoms, act, t)
        diffs = set()
        for mu in u_masks:
            d = sat_t & ~mu
            if not d:
                break
            diffs.add(d)
        else:
            # keep only inclusion-minimal difference sets
            ds = sorted(diffs, key=lambda d: bin(d).count("1"))
            minimal = []
            for d in ds:
                if not any(m & d == m for m in minimal):
                    minimal.append(d)
            if _hitting_set(minimal, max_eqs, left):
                return False
    return True


@dataclass
class ClosureStep:
    before: SubactHandle
    witness: EquationSystem
    solution: tuple[int, ...]
    added: tuple[int, ...]


@dataclass
class ClosureTrace:
    seed: tuple[int, ...]
    result: SubactHandle
    steps: list[ClosureStep] = field(default_factory=list)

    @property
    def iterations(self) -> int:
        return len(self.steps)


def _cheapest_solution(witness: EquationSystem, A: Act, current: frozenset[int]):
    """Solution adding the fewest elements to ``current`` (ties: lexicographic
    on the sorted added elements, then on the assignment)."""
    prob = Problem(witness, A)
    if prob.domains is None:
        return None
    k = witness.var_count
    values = [0] * k
    best = [None, None]  # key, solution

    def cost(vals):
        extra = [x for x in vals if x not in current]
        return tuple(sorted(closure(A, extra) - current)) if extra else ()

    def rec(i):
        if best[0] is not None:
            bound = len(cost(values[:i]))
            if bound > len(best[0][1]):
                return
        if i == k:
            added = cost(values)
            key = (len(added), added, tuple(values))
            if best[0] is None or key < best[0]:
                best[0] = key
                best[1] = tuple(values)
            return
        # values already in U first: they are free
        for v in sorted(prob.domains[i], key=lambda x: (x not in current, x)):
            values[i] = v
            if prob.consistent(values, i):
                rec(i + 1)

    rec(0)
    return best[1]


def pure_closure_trace(A: Act, seed) -> ClosureTrace:
    """Iterated closure: add solutions of purity witnesses until the subact is pure."""
    seed = tuple(sorted(set(seed)))
    if not seed:
        raise EmptySeed()
    U = generated_subact(A, seed)
    trace = ClosureTrace(seed, U)
    while True:
        witness = purity_witness(U)
        if witness is None:
            break
        if len(trace.steps) >= A.size:
            raise RuntimeError("pure closure failed to terminate within |A| rounds")
        sol = _cheapest_solution(witness, A, U.member_set)
        if sol is None:
            raise RuntimeError("purity witness is unsolvable in the ambient act")
        new = generated_subact(A, U.members + sol)
        added = tuple(sorted(new.member_set - U.member_set))
        trace.steps.append(ClosureStep(U, witness, sol, added))
        U = new
    trace.result = U
    return trace


def pure_closure(A: Act, seed) -> SubactHandle:
    return pure_closure_trace(A, seed).result


def minimal_pure_superact_oracle(A: Act, seed, cap: int = 20) -> SubactHandle:
    """Smallest pure subact containing ``seed`` by scanning subsets; test oracle."""
    seed = set(seed)
    if not seed:
        raise EmptySeed()
    if A.size > cap:
        raise CapExceeded(f"subset scan over {A.size} elements exceeds cap {cap}")
    rest = [a for a in range(A.size) if a not in seed]
    for k in range(len(rest) + 1):
        for extra in itertools.combinations(rest, k):
            members = seed.union(extra)
            if closure(A, members) != members:
                continue
            U = SubactHandle(A, tuple(members))
            if _retraction(U) is not None:
                return U
    raise AssertionError("the whole act is always pure in itself")

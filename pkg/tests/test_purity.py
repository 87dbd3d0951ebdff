import itertools

import pytest

from actpure.core import SubactHandle, enumerate_homs, validate_act
from actpure.enumeration import build_catalog, subact_member_sets
from actpure.equations import ConstTerm, VarTerm, brute_force_solutions, solve_system
from actpure.purity import (
    is_pure,
    is_pure_bounded,
    is_pure_via_diagram,
    minimal_pure_superact_oracle,
    pure_closure,
    pure_closure_trace,
    purity_witness,
)

SMALL = build_catalog(3, 3)


def _subacts(cat):
    for _, A in cat.pairs():
        for members in subact_member_sets(A):
            yield SubactHandle(A, members)


def naive_bounded(sub, max_vars, max_eqs):
    """Enumerate every system literally (atoms up to symmetry of each equation)."""
    B = sub.act
    n = B.monoid.order
    terms = [VarTerm(i, r) for i in range(max_vars) for r in range(n)]
    atoms = [(a, b) for a, b in itertools.combinations(terms, 2)]
    atoms += [(t, ConstTerm(c)) for t in terms for c in sub.members]
    from actpure.equations import EquationSystem

    A = sub.as_act()
    for k in range(1, max_eqs + 1):
        for eqs in itertools.combinations(atoms, k):
            sys_ = EquationSystem(max_vars, sub, eqs)
            if brute_force_solutions(sys_) and not brute_force_solutions(sys_, A, sub.local):
                return False
    return True


class TestIsPure:
    def test_whole(self, B):
        v = is_pure(B.whole())
        assert v.pure and v.retraction.map == (0, 1, 2)

    def test_pq_not_pure(self, B):
        v = is_pure(SubactHandle(B, (0, 1)))
        assert not v.pure and v.witness is not None and v.retraction is None

    def test_p_pure(self, B):
        v = is_pure(SubactHandle(B, (0,)))
        assert v.pure and v.retraction.map == (0, 0, 0)

    def test_retraction_fixes_subact(self):
        for sub in _subacts(SMALL):
            v = is_pure(sub)
            if v.pure:
                assert v.retraction.is_hom()
                assert all(v.retraction.map[a] == sub.local[a] for a in sub.members)


class TestDiagramMethod:
    def test_whole(self, B):
        assert is_pure_via_diagram(B.whole()).pure

    def test_pq(self, B):
        assert not is_pure_via_diagram(SubactHandle(B, (0, 1))).pure

    def test_trivial_monoid(self, T1):
        A = validate_act(T1, [[0], [1], [2]])
        for members in subact_member_sets(A):
            assert is_pure_via_diagram(SubactHandle(A, members)).pure


class TestWitness:
    def test_pure_input(self, B):
        assert purity_witness(SubactHandle(B, (0,))) is None
        assert purity_witness(SubactHandle(B, (1,))) is None

    def test_pq(self, B):
        w = purity_witness(SubactHandle(B, (0, 1)))
        assert w.var_count == 1
        assert set(w.equations) == {(VarTerm(0, 1), ConstTerm(0)), (VarTerm(0, 2), ConstTerm(1))}

    def test_witness_contract(self):
        for sub in _subacts(SMALL):
            w = purity_witness(sub)
            if w is None:
                assert is_pure(sub).pure
                continue
            A = sub.as_act()
            assert solve_system(w) is not None
            assert solve_system(w, A, sub.local) is None
            for i in range(len(w.equations)):
                rest = w.with_equations(w.equations[:i] + w.equations[i + 1 :])
                assert solve_system(rest, A, sub.local) is not None


class TestBounded:
    def test_whole(self, B):
        assert is_pure_bounded(B.whole(), 3, 5)

    def test_pq(self, B):
        assert not is_pure_bounded(SubactHandle(B, (0, 1)), 1, 2)
        assert is_pure_bounded(SubactHandle(B, (0, 1)), 1, 1)

    def test_p(self, B):
        assert is_pure_bounded(SubactHandle(B, (0,)), 2, 4)

    @pytest.mark.parametrize("bounds", [(1, 1), (1, 2), (2, 1), (2, 2)])
    def test_matches_naive_enumeration(self, bounds):
        cat = build_catalog(3, 3)
        for sub in _subacts(cat):
            assert is_pure_bounded(sub, *bounds) == naive_bounded(sub, *bounds)

    def test_one_sided_agreement(self):
        for sub in _subacts(SMALL):
            pure = is_pure(sub).pure
            for v, e in [(1, 1), (1, 3), (2, 2), (2, 4)]:
                bounded = is_pure_bounded(sub, v, e)
                if pure:
                    assert bounded
                if not bounded:
                    assert not pure


class TestClosure:
    def test_whole(self, B):
        assert pure_closure(B, [0, 1, 2]).members == (0, 1, 2)

    def test_p(self, B):
        assert pure_closure(B, [0]).members == (0,)

    def test_pq(self, B):
        trace = pure_closure_trace(B, [0, 1])
        assert trace.result.members == (0, 1, 2)
        assert trace.iterations == 1 and trace.steps[0].added == (2,)

    def test_contract_and_idempotence(self):
        for _, A in SMALL.pairs():
            for k in (1, 2):
                for seed in itertools.combinations(range(A.size), k):
                    trace = pure_closure_trace(A, seed)
                    U = trace.result
                    assert set(seed) <= U.member_set
                    assert is_pure(U).pure
                    assert trace.iterations <= A.size
                    assert U.size >= minimal_pure_superact_oracle(A, seed).size
                    assert pure_closure(A, U.members) == U


class TestOracle:
    def test_examples(self, B):
        assert minimal_pure_superact_oracle(B, [0, 1]).members == (0, 1, 2)
        assert minimal_pure_superact_oracle(B, [0]).members == (0,)
        assert minimal_pure_superact_oracle(B, [0, 1, 2]).members == (0, 1, 2)


def test_retract_iff_pure():
    for sub in _subacts(SMALL):
        pinned = {a: i for a, i in sub.local.items()}
        has = bool(enumerate_homs(sub.act, sub.as_act(), pinned, limit=1))
        assert has == is_pure(sub).pure


def test_transitivity():
    for sub in _subacts(SMALL):
        if not is_pure(sub).pure:
            continue
        U = sub.as_act()
        for members in subact_member_sets(U):
            if is_pure(SubactHandle(U, members)).pure:
                ambient = tuple(sub.members[i] for i in members)
                assert is_pure(SubactHandle(sub.act, ambient)).pure

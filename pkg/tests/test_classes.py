import pytest

from actpure.classes import (
    ABS_PURE,
    ALL,
    ALMOST_PURE,
    WEAKLY_F,
    WEAKLY_P,
    ActClass,
    InclusionInstance,
    check_class_closure,
    class_contains,
    class_instances,
    class_members,
    cyclic_acts,
    is_pure_in_extensions,
    is_relatively_injective,
    membership_counterexample,
    right_congruences,
    right_ideal_acts,
)
from actpure.core import SubactHandle, closure, trivial_act
from actpure.enumeration import build_catalog
from actpure.errors import ActError, MixedMonoids

SMALL = build_catalog(3, 3)


class TestIdeals:
    def test_s3(self, S3):
        assert [I.labels() for I in right_ideal_acts(S3)] == [["r"], ["s"], ["r", "s"], ["1", "r", "s"]]
        assert [I.labels() for I in right_ideal_acts(S3, principal_only=True)] == [["r"], ["s"], ["1", "r", "s"]]

    def test_group_has_one_ideal(self, Z2):
        assert len(right_ideal_acts(Z2)) == 1

    def test_ideals_closed(self):
        for S in SMALL.monoids:
            for I in right_ideal_acts(S):
                assert closure(I.act, I.members) == I.member_set


class TestCongruences:
    def test_counts(self, E2, S3, Z2, T1):
        assert len(right_congruences(E2)) == 2
        assert len(right_congruences(S3)) == 3
        assert len(right_congruences(Z2)) == 2
        assert len(right_congruences(T1)) == 1

    def test_cyclic_acts_are_cyclic(self):
        for S in SMALL.monoids:
            for cong, L in cyclic_acts(S):
                assert closure(L, [0]) == frozenset(range(L.size))
                assert L.size == max(cong) + 1

    def test_s3_quotients(self, S3):
        sizes = [L.size for _, L in cyclic_acts(S3)]
        assert sizes == [3, 2, 1]


class TestMembership:
    def test_pq(self, PQ):
        assert class_contains(ActClass(WEAKLY_P), PQ)
        assert not class_contains(ActClass(WEAKLY_F), PQ)
        assert not class_contains(ActClass(ALMOST_PURE), PQ)
        assert not class_contains(ActClass(ABS_PURE), PQ)

    def test_pq_f_witness_is_rs(self, PQ):
        inst, h = membership_counterexample(ActClass(WEAKLY_F), PQ)
        assert inst.inner.labels() == ["r", "s"]
        assert h.map[0] != h.map[1]

    def test_trivial_act_in_every_class(self):
        for S in SMALL.monoids:
            theta = trivial_act(S)
            for kind in (ALL, WEAKLY_P, WEAKLY_F, ALMOST_PURE, ABS_PURE):
                assert class_contains(ActClass(kind), theta)

    def test_all(self, B):
        assert class_contains(ActClass(ALL), B)
        assert membership_counterexample(ActClass(ALL), B) is None

    def test_extensional(self, S3, B, PQ):
        cls = ActClass.extensional([PQ, B, B.relabel("B2", ("x", "y", "z"))])
        assert len(cls.members) == 2
        assert class_contains(cls, B) and class_contains(cls, PQ)
        assert not class_contains(cls, trivial_act(S3))

    def test_mixed_monoids(self, E2, PQ):
        with pytest.raises(MixedMonoids):
            class_contains(ActClass.extensional([PQ]), trivial_act(E2))

    def test_relatively_injective_interface(self, S3, PQ, B):
        inst = InclusionInstance(B, SubactHandle(B, (0, 1)))
        ok, cex = is_relatively_injective(PQ, [inst])
        assert not ok and cex[1].map == (0, 1)
        # the swap p<->q has nowhere to send u
        ok, cex = is_relatively_injective(B, [inst])
        assert not ok and cex[1].map == (1, 0)
        assert is_relatively_injective(trivial_act(S3), [inst]) == (True, None)


class TestParse:
    def test_kinds(self):
        assert ActClass.parse("abs-pure:4") == ActClass(ABS_PURE, 4)
        assert ActClass.parse("almost-pure").kind == ALMOST_PURE
        assert ActClass.parse("abs-pure:4").label() == "abs-pure:4"

    @pytest.mark.parametrize("text", ["nope", "abs-pure:x", "all:3", "abs-pure:0", "extensional:"])
    def test_errors(self, text):
        with pytest.raises(ActError):
            ActClass.parse(text)


def test_hierarchy():
    # abs-pure => almost pure => weakly f => weakly p
    chain = [ActClass(ABS_PURE, 4), ActClass(ALMOST_PURE), ActClass(WEAKLY_F), ActClass(WEAKLY_P)]
    for _, A in SMALL.pairs():
        flags = [class_contains(c, A) for c in chain]
        for a, b in zip(flags, flags[1:]):
            assert b or not a


def test_reduced_instances_equivalent():
    for S in SMALL.monoids:
        full = class_instances(ABS_PURE, S, 3, reduced=False)
        red = class_instances(ABS_PURE, S, 3, reduced=True)
        assert len(red) <= len(full)
        for A in SMALL.acts_by_monoid[S.name]:
            assert is_relatively_injective(A, full)[0] == is_relatively_injective(A, red)[0]


def test_abs_pure_monotone_in_bound():
    for _, A in SMALL.pairs():
        prev = True
        for n in range(1, 5):
            cur = class_contains(ActClass(ABS_PURE, n), A)
            assert prev or not cur
            prev = cur


def test_abs_pure_vs_extensions():
    # both are bounded surrogates for "pure in every containing act"; record agreement
    agree = total = 0
    for _, A in SMALL.pairs():
        if A.size > 2:
            continue
        total += 1
        agree += class_contains(ActClass(ABS_PURE, A.size + 1), A) == is_pure_in_extensions(A, 1)
    assert total > 0 and agree / total > 0.5


def test_class_members_sorted(S3):
    ms = class_members(ActClass(WEAKLY_P), S3, 3)
    assert [A.size for A in ms] == sorted(A.size for A in ms)
    assert all(class_contains(ActClass(WEAKLY_P), A) for A in ms)


@pytest.mark.parametrize("cls", [ActClass(WEAKLY_P), ActClass(WEAKLY_F), ActClass(ALMOST_PURE), ActClass(ABS_PURE, 4)])
def test_closure_small(cls):
    for S in SMALL.monoids:
        rep = check_class_closure(cls, SMALL.acts_by_monoid[S.name])
        assert rep.product_closed and rep.pure_subact_closed, rep.counterexamples

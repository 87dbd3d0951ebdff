import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from actpure.core import (
    ActHom,
    SubactHandle,
    enumerate_homs,
    generated_subact,
    identity_hom,
    is_isomorphic,
    product_act,
    trivial_act,
    validate_act,
    validate_monoid,
)
from actpure.errors import (
    AssociativityAxiom,
    EmptySeed,
    IdentityAxiom,
    MixedMonoids,
    NotASubact,
    NotAssociative,
    NotIdentity,
    TooLarge,
)


def brute_homs(A, B):
    out = []
    for f in itertools.product(range(B.size), repeat=A.size):
        if ActHom(A, B, f).is_hom():
            out.append(f)
    return out


class TestValidateMonoid:
    def test_trivial(self):
        assert validate_monoid([[0]], 0).order == 1

    def test_idempotent(self):
        S = validate_monoid([[0, 1], [1, 1]], 0, ["1", "e"])
        assert S.mul[1][1] == 1

    def test_first_nonassociative_triple(self):
        with pytest.raises(NotAssociative) as exc:
            validate_monoid([[0, 1, 2], [1, 0, 1], [2, 1, 0]], 0)
        assert exc.value.triple == (1, 1, 2)

    def test_identity_law(self):
        with pytest.raises(NotIdentity):
            validate_monoid([[0, 0], [1, 1]], 0)


class TestValidateAct:
    def test_one_element(self, E2):
        assert validate_act(E2, [[0, 0]]).size == 1

    def test_two_element(self, E2):
        assert validate_act(E2, [[0, 1], [1, 1]]).size == 2

    def test_identity_axiom(self, E2):
        with pytest.raises(IdentityAxiom) as exc:
            validate_act(E2, [[1, 1], [1, 1]])
        assert exc.value.a == 0

    def test_associativity_axiom(self, S3):
        # u.r = p but p.s = q breaks (u.r).s = u.(rs)
        with pytest.raises(AssociativityAxiom):
            validate_act(S3, [[0, 1, 1], [1, 1, 1], [2, 0, 1]])


@settings(max_examples=300, deadline=None)
@given(st.data())
def test_accepted_random_tables_satisfy_axioms(data):
    S = validate_monoid([[0, 1, 2], [1, 1, 1], [2, 2, 2]], 0)
    m = data.draw(st.integers(1, 3))
    rows = [[a] + data.draw(st.lists(st.integers(0, m - 1), min_size=2, max_size=2)) for a in range(m)]
    try:
        A = validate_act(S, rows)
    except AssociativityAxiom:
        return
    for a, s, t in itertools.product(range(m), range(3), range(3)):
        assert A.action[A.action[a][s]][t] == A.action[a][S.mul[s][t]]


class TestGeneratedSubact:
    def test_orbit(self, B):
        assert generated_subact(B, [2]).members == (0, 1, 2)

    def test_fixed(self, B):
        assert generated_subact(B, [0]).members == (0,)

    def test_empty(self, B):
        with pytest.raises(EmptySeed):
            generated_subact(B, [])

    def test_not_closed(self, B):
        with pytest.raises(NotASubact):
            SubactHandle(B, (2,))

    def test_idempotent(self, catalog):
        for _, A in catalog.pairs():
            for a in range(A.size):
                U = generated_subact(A, [a])
                assert generated_subact(A, U.members) == U


class TestProduct:
    def test_theta_neutral(self, B, S3):
        assert is_isomorphic(product_act([trivial_act(S3), B]), B)

    def test_size(self, S3, B, PQ):
        assert product_act([PQ, B]).size == 6

    def test_componentwise(self, B):
        P = product_act([B, B])
        uu = P.index("u:u")
        assert P.elements[P.action[uu][1]] == "p:p"

    def test_single_factor(self, catalog):
        for _, A in catalog.pairs():
            assert is_isomorphic(product_act([A]), A)

    def test_cap(self, B):
        with pytest.raises(TooLarge):
            product_act([B, B, B], cap=26)

    def test_mixed(self, B, E2):
        with pytest.raises(MixedMonoids):
            product_act([B, trivial_act(E2)])


class TestHoms:
    def test_free_cyclic(self, catalog):
        for S, A in catalog.pairs():
            assert len(enumerate_homs(S.regular_act(), A)) == A.size

    def test_from_theta(self, catalog):
        for S, A in catalog.pairs():
            images = [h.map[0] for h in enumerate_homs(trivial_act(S), A)]
            assert images == A.fixed_points()

    def test_pinned_empty(self, B):
        PQ = SubactHandle(B, (0, 1)).as_act()
        assert enumerate_homs(B, PQ, {0: 0, 1: 1}) == []

    def test_matches_brute_force_in_order(self, small_catalog):
        for S in small_catalog.monoids:
            acts = small_catalog.acts_by_monoid[S.name]
            for A, C in itertools.product(acts, repeat=2):
                assert [h.map for h in enumerate_homs(A, C)] == brute_homs(A, C)

    def test_image_is_subact(self, small_catalog):
        for S in small_catalog.monoids:
            acts = small_catalog.acts_by_monoid[S.name]
            for A, C in itertools.product(acts, repeat=2):
                for h in enumerate_homs(A, C):
                    assert isinstance(h.image(), SubactHandle)

    def test_composition(self, B):
        h = identity_hom(B)
        assert h.after(h) == h


class TestIsomorphism:
    def test_self(self, B):
        assert is_isomorphic(B, B)

    def test_relabelled(self, S3):
        A = validate_act(S3, [[0, 0, 0], [1, 1, 1], [2, 0, 1]])
        perm = [2, 0, 1]
        rows = [None] * 3
        for a in range(3):
            rows[perm[a]] = [perm[b] for b in A.action[a]]
        assert is_isomorphic(A, validate_act(S3, rows, ["x", "y", "z"]))

    def test_sizes_differ(self, E2):
        assert not is_isomorphic(trivial_act(E2), E2.regular_act())

    def test_agrees_with_bijective_homs(self, small_catalog):
        for S in small_catalog.monoids:
            acts = small_catalog.acts_by_monoid[S.name]
            for A, C in itertools.product(acts, repeat=2):
                bij = [h for h in enumerate_homs(A, C) if h.is_bijective()]
                assert bool(bij) == is_isomorphic(A, C)

import warnings

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oracles import count_group_homs, truncated_primes_of_free_monoid
from f1geom.monoid import (
    AbelianGroup,
    AffineMonoid,
    MonoidError,
    MonoidHom,
    PrimeIdeal,
    ResourceError,
    TableMonoid,
    adjoin_zero,
    free_monoid,
    group_completion,
    group_monoid,
    hom_count_to_cyclic,
    is_saturated,
    localize,
    maximal_prime,
    minimal_prime,
    primes,
    saturate,
    trivial_monoid,
    units,
)


# --- primes ---------------------------------------------------------------------

def test_primes_of_free_rank_one():
    ps = primes(free_monoid(1))
    assert len(ps) == 2
    faces = sorted(p.face for p in ps)
    assert faces == [(), (0,)]  # maximal prime (empty face) and the empty prime


def test_primes_of_trivial_monoid():
    assert len(primes(trivial_monoid())) == 1


def test_primes_of_n2_match_truncated_enumeration():
    ps = primes(free_monoid(2))
    assert len(ps) == 4
    # independent oracle: prime truncations of the degree-2 window
    assert len(truncated_primes_of_free_monoid(2)) == 4


def test_primes_count_matches_faces_for_corpus():
    corpus = [
        free_monoid(3),
        AffineMonoid.make(2, [[1, 0], [1, 1], [1, 2]]),
        AffineMonoid.make(1, [[2], [3]]),
        group_monoid(2),
        AffineMonoid.make(2, [[1, 0], [-1, 0], [0, 1]]),
    ]
    for A in corpus:
        from f1geom.cones import face_index_sets

        assert len(primes(A)) == len(face_index_sets(A.recession_cone))


def test_prime_list_order_and_extremes():
    A = free_monoid(2)
    ps = primes(A)
    assert ps[0] == minimal_prime(A)      # generic first (largest face)
    assert ps[-1] == maximal_prime(A)     # closed point last
    assert ps[0].face == (0, 1)
    assert ps[-1].face == ()


def test_table_monoid_primes_and_cap():
    M = TableMonoid.cyclic_group_with_zero(3)
    ps = primes(M)
    assert len(ps) == 1 and ps[0].elements == frozenset({"0"})
    big = TableMonoid.cyclic_group_with_zero(20)  # 21 elements
    with pytest.raises(ResourceError):
        primes(big)


def test_pointed_table_primes_contain_zero():
    M = TableMonoid.make(
        ("1", "x", "0"),
        {("1", "1"): "1", ("1", "x"): "x", ("1", "0"): "0",
         ("x", "x"): "x", ("x", "0"): "0", ("0", "0"): "0"},
        identity="1", zero="0")
    ps = primes(M)
    assert sorted(sorted(p.elements) for p in ps) == [["0"], ["0", "x"]]
    assert all("0" in p.elements for p in ps)


# --- localization -----------------------------------------------------------------

def test_localize_at_maximal_prime_is_identity():
    for A in (free_monoid(1), free_monoid(2),
              AffineMonoid.make(2, [[1, 0], [1, 1], [1, 2]])):
        loc, hom = localize(A, maximal_prime(A))
        assert loc.same_submonoid(A)
        for g in A.generators:
            assert hom.apply(g) == g


def test_localize_at_minimal_prime_is_group_completion():
    A = free_monoid(2)
    loc, _ = localize(A, minimal_prime(A))
    assert loc.is_group
    assert loc.units() == group_completion(A)


def test_localize_n2_at_coordinate_face():
    A = free_monoid(2)
    # generators sorted: (0,1) is index 0, (1,0) is index 1
    p = next(q for q in primes(A) if q.face == (1,))
    loc, _ = localize(A, p)
    expected = AffineMonoid.make(2, [[1, 0], [-1, 0], [0, 1]])
    assert loc.same_submonoid(expected)


def test_localize_table_collapse():
    # {1, x, 0} with x idempotent: inverting x collapses it to 1
    M = TableMonoid.make(
        ("1", "x", "0"),
        {("1", "1"): "1", ("1", "x"): "x", ("1", "0"): "0",
         ("x", "x"): "x", ("x", "0"): "0", ("0", "0"): "0"},
        identity="1", zero="0")
    p0 = next(p for p in primes(M) if p.elements == frozenset({"0"}))
    loc, hom = localize(M, p0)
    assert len(loc.elements) == 2
    assert hom.apply("x") == hom.apply("1")
    pmax = next(p for p in primes(M) if p.elements == frozenset({"x", "0"}))
    loc2, _ = localize(M, pmax)
    assert len(loc2.elements) == 3


def test_localize_rejects_foreign_prime():
    A, B = free_monoid(1), free_monoid(2)
    with pytest.raises(MonoidError):
        localize(B, primes(A)[0])


# --- group completion, saturation, units ------------------------------------------

def test_group_completion_examples():
    assert group_completion(free_monoid(2)) == AbelianGroup(2)
    assert group_completion(AffineMonoid.make(1, [[2], [3]])) == AbelianGroup(1)
    assert group_completion(AffineMonoid.make(2, [[2, 0], [0, 1]])) == AbelianGroup(2)


def test_saturation_examples():
    A = AffineMonoid.make(1, [[2], [3]])
    assert not is_saturated(A)
    S = saturate(A)
    assert S.generators == ((1,),)
    assert is_saturated(S)
    assert saturate(S).same_submonoid(S)  # idempotent
    assert is_saturated(free_monoid(2))
    assert saturate(free_monoid(2)).same_submonoid(free_monoid(2))
    quadric = AffineMonoid.make(2, [[1, 0], [1, 1], [1, 2]])
    assert is_saturated(quadric)


def test_saturate_with_torsion_ambient():
    # submonoid of Z x Z/2 generated by (1, 1bar): already saturated
    A = AffineMonoid.make(1, [[1, 1]], torsion=[2])
    assert is_saturated(A)
    # index-2 subgroup direction: <(2, 0)> inside Z x Z/2 misses (1, ...) entirely
    B = AffineMonoid.make(1, [[2, 0]], torsion=[2])
    assert is_saturated(B)


def test_units_examples():
    assert units(free_monoid(2)).is_trivial
    assert units(AffineMonoid.make(2, [[1, 0], [-1, 0], [0, 1]])) == AbelianGroup(1)
    A = AffineMonoid.make(1, [[1, 0], [0, 1]], torsion=[3])
    assert units(A) == AbelianGroup(0, (3,))
    assert units(group_monoid(3)) == AbelianGroup(3)


def test_units_found_through_combinations():
    # no single generator is reversible, but the lineality is the x-axis
    A = AffineMonoid.make(2, [[1, 1], [-1, 1], [0, -1]])
    # cone(A) is the whole plane: everything is a unit
    assert units(A).free_rank == 2


def test_adjoin_zero():
    A = free_monoid(1)
    Az = adjoin_zero(A)
    assert Az.pointed
    with warnings.catch_warnings(record=True) as w:
        warnings.simplefilter("always")
        again = adjoin_zero(Az)
        assert again is Az
        assert any("no-op" in str(x.message) for x in w)
    assert [p.face for p in primes(A)] == [p.face for p in primes(Az)]
    # table variant grows by one absorbing element
    M = TableMonoid.cyclic_group_with_zero(2)
    N = TableMonoid.make(("1", "g"), {("1", "1"): "1", ("1", "g"): "g",
                                      ("g", "g"): "1"}, identity="1")
    Nz = adjoin_zero(N)
    assert Nz.pointed and len(Nz.elements) == 3


def test_adjoin_zero_lifts_homs():
    A = free_monoid(1)
    h = MonoidHom.affine(A, A, [(2,)])
    hz = adjoin_zero(h)
    assert hz.source.pointed and hz.target.pointed
    assert hz.apply((3,)) == (6,)


# --- hom counting -------------------------------------------------------------------

def test_hom_count_examples():
    assert hom_count_to_cyclic(AbelianGroup(1), 6) == 6
    assert hom_count_to_cyclic(AbelianGroup(0, (6,)), 6) == 6
    assert hom_count_to_cyclic(AbelianGroup(0, (6,)), 4) == 2
    assert hom_count_to_cyclic(AbelianGroup(2, (2,)), 3) == 9


@settings(max_examples=80, deadline=None)
@given(st.lists(st.sampled_from([2, 3, 4, 5, 6, 8, 9, 12]), max_size=3),
       st.integers(1, 12))
def test_hom_count_matches_enumeration(factors, m):
    factors = sorted(factors)
    order = 1
    for d in factors:
        order *= d
    if order > 50:
        return
    chain = []
    for d in factors:  # make a divisibility chain out of the sample
        if chain and d % chain[-1] != 0:
            d = d * chain[-1]
        chain.append(d)
    if any(d > 50 for d in chain):
        return
    G = AbelianGroup(0, tuple(chain))
    assert hom_count_to_cyclic(G, m) == count_group_homs(chain, m)


# --- membership and hom validation ---------------------------------------------------

def test_membership_oracle():
    A = AffineMonoid.make(1, [[2], [3]])
    assert A.contains((5,)) and A.contains((2,)) and A.contains((0,))
    assert not A.contains((1,)) and not A.contains((-2,))
    B = AffineMonoid.make(2, [[1, 0], [-1, 0], [0, 1]])
    assert B.contains((-7, 3)) and not B.contains((0, -1))


def test_monoid_hom_validation():
    A = free_monoid(1)
    MonoidHom.affine(A, A, [(2,)])  # t -> t^2 is fine
    Z = group_monoid(1)
    MonoidHom.affine(A, Z, [(-1,)])  # t -> t^{-1} lands in Z
    with pytest.raises(MonoidError):
        MonoidHom.affine(A, A, [(-1,)])  # t^{-1} is not in N
    # relation check: <(1,0),(0,1),(1,1)> has g0 + g1 = g2
    S = AffineMonoid.make(2, [[1, 0], [0, 1], [1, 1]])
    MonoidHom.affine(S, A, [(1,), (2,), (3,)])
    with pytest.raises(MonoidError):
        MonoidHom.affine(S, A, [(1,), (2,), (4,)])


def test_table_monoid_validation_errors():
    with pytest.raises(MonoidError):
        TableMonoid.make(("1", "a"), {("1", "1"): "1", ("1", "a"): "a",
                                      ("a", "a"): "b"}, identity="1")
    with pytest.raises(MonoidError):        # identity law broken
        TableMonoid.make(("1", "a"), {("1", "1"): "1", ("1", "a"): "1",
                                      ("a", "a"): "a"}, identity="1")


def test_generator_canonicalization():
    A = AffineMonoid.make(2, [[1, 0], [1, 0], [0, 1]])
    assert A.generators == ((0, 1), (1, 0))  # deduped and sorted
    B = AffineMonoid.make(1, [[0, 5]], torsion=[3])
    assert B.generators == ((0, 2),)  # torsion coordinate reduced mod 3

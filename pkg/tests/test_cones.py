import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oracles import generated_lattice_points
from f1geom.cones import (
    ConeError,
    RationalCone,
    ResourceCapError,
    cone,
    dual_cone,
    faces,
    hilbert_basis,
    lattice_monoid_generators,
)


def test_dual_orthant_is_self_dual():
    c = cone((1, 0), (0, 1))
    d = dual_cone(c)
    assert d.rays == ((0, 1), (1, 0)) and d.lineality == ()


def test_dual_of_single_ray_is_a_halfplane():
    d = dual_cone(cone((1, 0)))
    assert d.rays == ((1, 0),)
    assert len(d.lineality) == 1 and d.lineality[0][0] == 0


def test_dual_of_a1_cone():
    d = dual_cone(cone((1, 0), (1, 2)))
    assert set(d.rays) == {(0, 1), (2, -1)}


def test_dual_of_dual_returns_original():
    for rays in [((1, 0), (0, 1)), ((1, 0), (1, 2)), ((2, 1), (1, 3)),
                 ((1, 0, 0), (0, 1, 0), (0, 0, 1)), ((1, 0),)]:
        c = cone(*rays)
        dd = dual_cone(dual_cone(c))
        assert dd.rays == c.rays
        assert not dd.effective_lineality


def test_faces_counts():
    assert len(faces(cone((1, 0), (0, 1)))) == 4
    assert len(faces(cone((1, 0)))) == 2
    # non-simplicial handling path via the dual of the A_1 cone
    assert len(faces(dual_cone(cone((1, 0), (1, 2))))) == 4


def test_faces_of_nonsimplicial_cone():
    c = RationalCone.make([(1, 0, 0), (0, 1, 0), (1, 0, 1), (0, 1, 1)], rank=3)
    fs = faces(c)
    dims = sorted(f.dim for f in fs)
    assert dims == [0, 1, 1, 1, 1, 2, 2, 2, 2, 3]  # square cone face lattice


def test_hilbert_basis_examples():
    assert hilbert_basis(cone((1, 0), (0, 1))).vectors == ((0, 1), (1, 0))
    assert set(hilbert_basis(cone((0, 1), (2, -1))).vectors) == \
        {(0, 1), (1, 0), (2, -1)}
    assert set(hilbert_basis(cone((1, 0), (1, 2))).vectors) == \
        {(1, 0), (1, 1), (1, 2)}


def test_hilbert_basis_generates_all_lattice_points():
    # every lattice point of the cone with coordinate sum <= 10 must be a
    # nonnegative combination of the basis (checked by DP enumeration)
    for rays in [((0, 1), (2, -1)), ((1, 0), (1, 2)), ((1, 0), (1, 3)),
                 ((2, 1), (1, 2))]:
        c = cone(*rays)
        hb = hilbert_basis(c).vectors
        generated = generated_lattice_points(list(hb), 10)
        for x0 in range(-10, 11):
            for x1 in range(-10, 11):
                if abs(x0) + abs(x1) > 10:
                    continue
                pt = (x0, x1)
                if c.contains(pt):
                    assert pt in generated, (rays, pt)


def test_hilbert_rejects_non_pointed():
    with pytest.raises(ConeError):
        hilbert_basis(RationalCone.make([(1, 0)], rank=2, lineality=((0, 1),)))
    with pytest.raises(ConeError):
        hilbert_basis(cone((1,), (-1,)))


def test_rank_cap_enforced():
    c = RationalCone.make([tuple(1 if j == i else 0 for j in range(5))
                           for i in range(5)], rank=5)
    with pytest.raises(ResourceCapError):
        dual_cone(c)
    with pytest.raises(ResourceCapError):
        hilbert_basis(c)


def test_lattice_monoid_generators_with_lineality():
    gens = lattice_monoid_generators(
        RationalCone.make([], rank=2, lineality=((1, 0), (0, 1))))
    assert set(gens) == {(1, 0), (-1, 0), (0, 1), (0, -1)}
    halfplane = RationalCone.make([(1, 0), (-1, 0), (0, 1)], rank=2)
    gens2 = lattice_monoid_generators(halfplane)
    assert (0, 1) in gens2 and (1, 0) in gens2 and (-1, 0) in gens2
    assert all(v[1] >= 0 for v in gens2)


@settings(max_examples=60, deadline=None)
@given(st.lists(st.tuples(st.integers(-4, 4), st.integers(-4, 4)),
                min_size=1, max_size=4))
def test_membership_agrees_with_nonneg_solver(rays):
    rays = [r for r in rays if any(r)]
    if not rays:
        return
    from oracles import in_rational_cone

    c = RationalCone.make(rays, rank=2)
    for x0 in range(-4, 5):
        for x1 in range(-4, 5):
            assert c.contains((x0, x1)) == in_rational_cone(rays, (x0, x1))

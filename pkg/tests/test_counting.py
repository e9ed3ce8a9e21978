import pytest

from oracles import (
    affine_points,
    hirzebruch1_points,
    lines_through_origin,
    product_p1_p1_points,
    projective_points,
)
from f1geom.counting import (
    CountError,
    count_points,
    counting_polynomial,
    orbit_count_polynomial,
    prime_power_base,
)
from f1geom.fans import kato, standard_fans
from f1geom.monoid import AffineMonoid, group_monoid
from f1geom.spectrum import plus_zero
from f1geom.zeta import q_poly

SAMPLE_QS = (2, 3, 4, 5, 7, 8, 9)


def test_prime_power_validation():
    assert prime_power_base(8) == (2, 3)
    assert prime_power_base(9) == (3, 2)
    assert prime_power_base(7) == (7, 1)
    for bad in (1, 6, 12, 0):
        with pytest.raises(CountError):
            prime_power_base(bad)


def test_torus_counts():
    for r in (1, 2, 3):
        for q in (2, 3, 5):
            assert count_points(group_monoid(r), q).count == (q - 1) ** r


def test_p1_counts_match_line_enumeration():
    X = kato(standard_fans("projective_space", 1))
    for p in (2, 3, 5):
        assert count_points(X, p).count == lines_through_origin(p) == p + 1


def test_p2_counts_match_projective_enumeration():
    X = kato(standard_fans("projective_space", 2))
    assert count_points(X, 2).count == projective_points(2, 2) == 7
    assert count_points(X, 3).count == projective_points(2, 3) == 13


def test_affine_space_counts():
    for n in (1, 2, 3):
        X = kato(standard_fans("affine_space", n))
        for p in (2, 3):
            assert count_points(X, p).count == affine_points(n, p)
        assert counting_polynomial(X).as_polynomial() == \
            q_poly(1, *([0] * n))


def test_p1xp1_and_hirzebruch_counts():
    p1 = standard_fans("projective_space", 1)
    X = kato(standard_fans("product", p1, p1))
    for p in (2, 3):
        assert count_points(X, p).count == product_p1_p1_points(p)
    H = kato(standard_fans("hirzebruch", 1))
    for p in (2, 3):
        assert count_points(H, p).count == hirzebruch1_points(p)
    assert counting_polynomial(H).as_polynomial() == q_poly(1, 2, 1)


def test_counting_polynomial_of_p2():
    X = kato(standard_fans("projective_space", 2))
    cf = counting_polynomial(X)
    assert cf.is_polynomial
    assert cf.as_polynomial() == q_poly(1, 1, 1)


def test_orbit_formula_commutes_with_scheme_counts():
    fans = [standard_fans("affine_space", n) for n in (1, 2, 3)]
    fans += [standard_fans("projective_space", n) for n in (1, 2)]
    p1 = standard_fans("projective_space", 1)
    fans += [standard_fans("product", p1, p1), standard_fans("hirzebruch", 1)]
    for fan in fans:
        X = kato(fan)
        orbit = orbit_count_polynomial(fan)
        assert counting_polynomial(X).as_polynomial() == orbit
        for q in SAMPLE_QS:
            assert count_points(X, q).count == orbit(q)


def test_count_matches_polynomial_everywhere():
    X = kato(standard_fans("projective_space", 2))
    cf = counting_polynomial(X)
    for q in SAMPLE_QS:
        assert count_points(X, q).count == cf.as_polynomial()(q)


def test_pointed_scheme_counts_are_unchanged():
    X = kato(standard_fans("projective_space", 1))
    Xz = plus_zero(X)
    for q in (2, 3, 4):
        assert count_points(Xz, q).count == count_points(X, q).count


def test_torsion_chart_is_flagged():
    mu3 = AffineMonoid.make(0, [[1]], torsion=[3])
    cf = counting_polynomial(mu3)
    assert not cf.is_polynomial
    assert cf.modulus == 3
    with pytest.raises(CountError):
        cf.as_polynomial()
    from math import gcd

    for q in SAMPLE_QS:
        assert cf.evaluate(q) == gcd(3, q - 1)
        assert count_points(mu3, q).count == gcd(3, q - 1)
    # per residue class the count is a constant polynomial
    assert cf.polynomial_on_class(7) == q_poly(3)
    assert cf.polynomial_on_class(2) == q_poly(1)


def test_count_record_shape():
    rec = count_points(group_monoid(1), 4, subject="torus")
    assert rec.as_dict() == {"q": 4, "count": 3, "method": "stalk-formula"}
    with pytest.raises(CountError):
        count_points(group_monoid(1), 6)

"""Semigroup rings Z[A] and the monomial-power endomorphism family.

Elements are sparse maps from monoid elements to nonzero integer
coefficients.  For a pointed monoid the ring is Z[A]/(zero of A ~ ring
zero), realized by never letting the monoid zero into a support.  The
endomorphisms psi_p act on monomials by a -> a^p; reduction mod p turns
psi_p into the Frobenius, which frobenius_check verifies elementwise.
"""
from __future__ import annotations

from dataclasses import dataclass

from .monoid import AffineMonoid


class RingError(ValueError):
    pass


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    d = 2
    while d * d <= p:
        if p % d == 0:
            return False
        d += 1
    return True


@dataclass(frozen=True)
class SemigroupRingElement:
    """Finite Z-linear combination of monoid elements."""

    owner: object
    coeffs: tuple  # sorted tuple of (element_key, coefficient), coefficient != 0

    @staticmethod
    def make(owner, mapping) -> "SemigroupRingElement":
        clean = {}
        for k, c in dict(mapping).items():
            if isinstance(owner, AffineMonoid):
                k = owner._reduce(tuple(k))
                if not owner.contains(k):
                    raise RingError(f"monomial {k} is not in the monoid")
            else:
                if k not in owner.elements:
                    raise RingError(f"monomial {k!r} is not in the monoid")
                if owner.pointed and k == owner.zero:
                    continue  # identified with the ring zero
            c = int(c)
            if c:
                clean[k] = clean.get(k, 0) + c
        items = tuple(sorted((k, c) for k, c in clean.items() if c != 0))
        return SemigroupRingElement(owner, items)

    @staticmethod
    def _unchecked(owner, mapping) -> "SemigroupRingElement":
        # internal: supports produced by ring operations are closed in the
        # monoid, so membership validation is skipped
        items = tuple(sorted((k, c) for k, c in mapping.items() if c != 0))
        return SemigroupRingElement(owner, items)

    @staticmethod
    def monomial(owner, k, c: int = 1) -> "SemigroupRingElement":
        return SemigroupRingElement.make(owner, {k: c})

    @staticmethod
    def one(owner) -> "SemigroupRingElement":
        ident = owner.identity() if isinstance(owner, AffineMonoid) else owner.identity
        return SemigroupRingElement.make(owner, {ident: 1})

    @staticmethod
    def zero(owner) -> "SemigroupRingElement":
        return SemigroupRingElement(owner, ())

    def as_dict(self) -> dict:
        return dict(self.coeffs)

    @property
    def support(self):
        return tuple(k for k, _ in self.coeffs)

    def __str__(self):
        if not self.coeffs:
            return "0"
        return " + ".join(f"{c}*[{k}]" for k, c in self.coeffs)


def _same_owner(x: SemigroupRingElement, y: SemigroupRingElement):
    if x.owner != y.owner:
        raise RingError("elements of different semigroup rings")


def ring_add(x: SemigroupRingElement, y: SemigroupRingElement) -> SemigroupRingElement:
    _same_owner(x, y)
    out = x.as_dict()
    for k, c in y.coeffs:
        out[k] = out.get(k, 0) + c
    return SemigroupRingElement._unchecked(x.owner, out)


def ring_neg(x: SemigroupRingElement) -> SemigroupRingElement:
    return SemigroupRingElement._unchecked(x.owner, {k: -c for k, c in x.coeffs})


def ring_sub(x, y):
    return ring_add(x, ring_neg(y))


def ring_mul(x: SemigroupRingElement, y: SemigroupRingElement) -> SemigroupRingElement:
    """Convolution product; a pointed monoid's zero is absorbed into 0."""
    _same_owner(x, y)
    A = x.owner
    out: dict = {}
    for k1, c1 in x.coeffs:
        for k2, c2 in y.coeffs:
            if isinstance(A, AffineMonoid):
                k = A.op(k1, k2)
            else:
                k = A.op(k1, k2)
                if A.pointed and k == A.zero:
                    continue
            out[k] = out.get(k, 0) + c1 * c2
    return SemigroupRingElement._unchecked(A, out)


def ring_pow(x: SemigroupRingElement, n: int) -> SemigroupRingElement:
    if n < 0:
        raise RingError("negative powers are not defined")
    out = SemigroupRingElement.one(x.owner)
    base = x
    while n:
        if n & 1:
            out = ring_mul(out, base)
        n >>= 1
        if n:
            base = ring_mul(base, base)
    return out


def monomial_power_map(x: SemigroupRingElement, k: int) -> SemigroupRingElement:
    """Coefficients kept, every support element raised to the k-th power."""
    A = x.owner
    out: dict = {}
    for key, c in x.coeffs:
        if isinstance(A, AffineMonoid):
            nk = A._reduce(tuple(k * v for v in key))
        else:
            nk = A.power(key, k)
            if A.pointed and nk == A.zero:
                continue
        out[nk] = out.get(nk, 0) + c
    return SemigroupRingElement._unchecked(A, out)


def psi(x: SemigroupRingElement, p: int) -> SemigroupRingElement:
    """psi_p, the lift of Frobenius: monomials a -> a^p."""
    if not _is_prime(p):
        raise RingError(f"{p} is not prime")
    return monomial_power_map(x, p)


def frobenius_check(x: SemigroupRingElement, p: int) -> bool:
    """psi_p(x) == x^p coefficientwise mod p (the Frobenius square)."""
    if not _is_prime(p):
        raise RingError(f"{p} is not prime")
    lhs = psi(x, p)
    rhs = ring_pow(x, p)
    diff = ring_sub(lhs, rhs)
    return all(c % p == 0 for _, c in diff.coeffs)


@dataclass(frozen=True)
class LambdaStructure:
    """The commuting family {psi_p} on a semigroup ring.

    ``check_commuting`` verifies psi_p o psi_q = psi_q o psi_p on given
    elements, ``check_frobenius`` the mod-p Frobenius square; both are the
    desk-scale content of a Frobenius-lift family.
    """

    owner: object

    def psi(self, x: SemigroupRingElement, p: int) -> SemigroupRingElement:
        if x.owner != self.owner:
            raise RingError("element belongs to a different ring")
        return psi(x, p)

    def check_commuting(self, x: SemigroupRingElement, ps) -> bool:
        ps = list(ps)
        for i, p in enumerate(ps):
            for q in ps[i + 1:]:
                if psi(psi(x, p), q) != psi(psi(x, q), p):
                    return False
        return True

    def check_frobenius(self, x: SemigroupRingElement, ps) -> bool:
        return all(frobenius_check(x, p) for p in ps)


def random_ring_elements(A, count: int, seed: int, max_exponent: int = 4,
                         coeff_bound: int = 9, max_terms: int = 6):
    """Seeded pseudo-random sparse elements with small support, for the
    reproducible property runs."""
    import random

    rng = random.Random(seed)
    out = []
    if isinstance(A, AffineMonoid):
        def random_key():
            return tuple(rng.randint(0, max_exponent) for _ in range(A.width))
    else:
        def random_key():
            return rng.choice(A.elements)
    for _ in range(count):
        terms = {}
        for _ in range(rng.randint(1, max_terms)):
            c = rng.randint(-coeff_bound, coeff_bound)
            if c == 0:
                c = 1
            terms[random_key()] = c
        out.append(SemigroupRingElement.make(A, terms))
    return out

"""Finitely generated commutative monoids, plain, pointed and tabulated.

Two concrete representations are used throughout:

* ``AffineMonoid`` -- a submonoid of an ambient group Z^r (+) Z/d_1 (+) ...
  given by a finite generator list.  Always cancellative; an absorbing
  zero can be formally adjoined via a flag.
* ``TableMonoid`` -- a finite monoid given by its full multiplication
  table, optionally with a distinguished zero.

Primes, localizations, group completions, saturations and unit groups
are all computed exactly; prime ideals of an affine monoid correspond to
the faces of its recession cone.
"""
from __future__ import annotations

import itertools
import warnings
from dataclasses import dataclass, field
from functools import cached_property
from math import gcd

from . import cones
from .cones import RationalCone, lattice_monoid_generators
from .intlinalg import (
    column_lattice_basis,
    dot,
    identity_matrix,
    kernel_basis,
    rat_rank,
    solve_integer,
    subgroup_invariants,
    transpose,
)

TABLE_PRIME_CAP = 20


class MonoidError(ValueError):
    pass


class ResourceError(MonoidError):
    pass


@dataclass(frozen=True)
class AbelianGroup:
    """Invariants of a finitely generated abelian group."""

    free_rank: int
    invariant_factors: tuple[int, ...] = ()

    def __post_init__(self):
        for a, b in zip(self.invariant_factors, self.invariant_factors[1:]):
            if b % a != 0:
                raise MonoidError("invariant factors must be in divisibility order")
        if any(d < 2 for d in self.invariant_factors):
            raise MonoidError("invariant factors must be >= 2")

    @property
    def is_trivial(self) -> bool:
        return self.free_rank == 0 and not self.invariant_factors

    @property
    def is_torsion_free(self) -> bool:
        return not self.invariant_factors

    @property
    def order(self):
        if self.free_rank:
            return None
        n = 1
        for d in self.invariant_factors:
            n *= d
        return n


def hom_count_to_cyclic(G: AbelianGroup, m: int) -> int:
    """#Hom(G, Z/m) = m^rank * prod gcd(d_i, m)."""
    if m < 1:
        raise MonoidError("m must be >= 1")
    n = m ** G.free_rank
    for d in G.invariant_factors:
        n *= gcd(d, m)
    return n


# --- affine monoids -----------------------------------------------------------

@dataclass(frozen=True)
class AffineMonoid:
    """Submonoid of Z^ambient_rank (+) Z/d_i generated by ``generators``.

    Generators are stored as full-length tuples (free coordinates first,
    then one coordinate per torsion factor, reduced mod d_i), sorted
    lexicographically and deduplicated.
    """

    ambient_rank: int
    torsion: tuple[int, ...] = ()
    generators: tuple[tuple[int, ...], ...] = ()
    pointed: bool = False

    @staticmethod
    def make(ambient_rank, generators, torsion=(), pointed=False) -> "AffineMonoid":
        torsion = tuple(int(d) for d in torsion)
        if any(d < 2 for d in torsion):
            raise MonoidError("torsion invariant factors must be >= 2")
        width = ambient_rank + len(torsion)
        gens = set()
        for g in generators:
            g = tuple(int(x) for x in g)
            if len(g) != width:
                raise MonoidError(f"generator {g!r} has length {len(g)}, expected {width}")
            g = tuple(
                x if i < ambient_rank else x % torsion[i - ambient_rank]
                for i, x in enumerate(g)
            )
            if any(x != 0 for x in g):
                gens.add(g)
        return AffineMonoid(ambient_rank, torsion, tuple(sorted(gens)), pointed)

    # -- basic structure

    @property
    def width(self) -> int:
        return self.ambient_rank + len(self.torsion)

    def free_part(self, v) -> tuple[int, ...]:
        return tuple(v[: self.ambient_rank])

    def _reduce(self, v) -> tuple[int, ...]:
        return tuple(
            x if i < self.ambient_rank else x % self.torsion[i - self.ambient_rank]
            for i, x in enumerate(v)
        )

    def op(self, a, b) -> tuple[int, ...]:
        return self._reduce(tuple(x + y for x, y in zip(a, b)))

    def identity(self) -> tuple[int, ...]:
        return (0,) * self.width

    @cached_property
    def recession_cone(self) -> RationalCone:
        rays = [self.free_part(g) for g in self.generators if any(self.free_part(g))]
        return RationalCone.make(rays, rank=self.ambient_rank)

    @cached_property
    def unit_generator_indices(self) -> tuple[int, ...]:
        """Indices of generators whose free part lies in the lineality of the
        recession cone; these generate the unit group."""
        lin_cone = self.recession_cone
        out = []
        for i, g in enumerate(self.generators):
            f = self.free_part(g)
            if not any(f):
                out.append(i)
            elif lin_cone.contains(f) and lin_cone.contains(tuple(-x for x in f)):
                out.append(i)
        return tuple(out)

    def units(self) -> AbelianGroup:
        vecs = [list(self.generators[i]) for i in self.unit_generator_indices]
        rank, factors = subgroup_invariants(vecs, self.ambient_rank, list(self.torsion))
        return AbelianGroup(rank, tuple(factors))

    def group_completion(self) -> AbelianGroup:
        vecs = [list(g) for g in self.generators]
        rank, factors = subgroup_invariants(vecs, self.ambient_rank, list(self.torsion))
        return AbelianGroup(rank, tuple(factors))

    @property
    def is_group(self) -> bool:
        return len(self.unit_generator_indices) == len(self.generators)

    # -- membership

    def in_quotient_group(self, v) -> bool:
        """Is v in the subgroup of the ambient generated by the monoid?"""
        v = self._reduce(tuple(v))
        cols = [list(g) for g in self.generators]
        for j, d in enumerate(self.torsion):
            rel = [0] * self.width
            rel[self.ambient_rank + j] = d
            cols.append(rel)
        if not cols:
            return not any(v)
        return solve_integer(transpose(cols), list(v)) is not None

    def contains(self, v) -> bool:
        """Exact monoid membership: v = sum n_i g_i with n_i >= 0."""
        v = self._reduce(tuple(v))
        if len(v) != self.width:
            raise MonoidError("element has wrong length")
        if not any(v):
            return True
        f = self.free_part(v)
        if any(f) and not self.recession_cone.contains(f):
            return False
        unit_idx = set(self.unit_generator_indices)
        nonunit = [i for i in range(len(self.generators)) if i not in unit_idx]
        # strictly positive functional on the pointed quotient of the cone
        normals = self.recession_cone.facet_normals
        weight_vec = [sum(u[i] for u in normals) for i in range(self.ambient_rank)]
        weights = [dot(weight_vec, self.free_part(self.generators[i])) for i in nonunit]
        assert all(w > 0 for w in weights)
        budget = dot(weight_vec, f)

        def unit_solvable(rem) -> bool:
            cols = [list(self.generators[i]) for i in unit_idx]
            for j, d in enumerate(self.torsion):
                rel = [0] * self.width
                rel[self.ambient_rank + j] = d
                cols.append(rel)
            if not cols:
                return not any(rem)
            return solve_integer(transpose(cols), list(rem)) is not None

        def search(k, rem, rem_budget) -> bool:
            if k == len(nonunit):
                return unit_solvable(rem)
            g = self.generators[nonunit[k]]
            w = weights[k]
            top = rem_budget // w
            for n in range(top + 1):
                new = self._reduce(tuple(x - n * y for x, y in zip(rem, g)))
                fn = self.free_part(new)
                if any(fn) and not self.recession_cone.contains(fn):
                    continue
                if search(k + 1, new, rem_budget - n * w):
                    return True
            return False

        return search(0, v, budget)

    def same_submonoid(self, other: "AffineMonoid") -> bool:
        """Equality as submonoids of a shared ambient group."""
        if (self.ambient_rank, self.torsion) != (other.ambient_rank, other.torsion):
            return False
        return all(other.contains(g) for g in self.generators) and all(
            self.contains(g) for g in other.generators
        )

    # -- primes

    @cached_property
    def _face_subsets(self) -> tuple[tuple[int, ...], ...]:
        """Faces of the recession cone as generator index subsets.

        A generator lies on a face iff its primitive free part is one of
        the face's rays; pure-torsion generators are units and belong to
        every face.
        """
        ray_of_gen = {}
        for i, g in enumerate(self.generators):
            f = self.free_part(g)
            ray_of_gen[i] = cones.primitive_vector(f) if any(f) else None
        cone_faces = cones.face_index_sets(self.recession_cone)
        ray_list = self.recession_cone.rays
        subsets = set()
        for face in cone_faces:
            face_rays = {ray_list[i] for i in face}
            members = tuple(
                i for i in range(len(self.generators))
                if ray_of_gen[i] is None or ray_of_gen[i] in face_rays
            )
            subsets.add(members)
        return tuple(sorted(subsets, key=lambda s: (-self._face_dim(s), s)))

    def _face_dim(self, subset) -> int:
        vecs = [list(self.free_part(self.generators[i])) for i in subset]
        return rat_rank(vecs) if vecs else 0

    def face_submonoid(self, subset) -> "AffineMonoid":
        return AffineMonoid.make(
            self.ambient_rank,
            [self.generators[i] for i in subset],
            torsion=self.torsion,
            pointed=self.pointed,
        )

    def __str__(self):
        t = f" (+) {'x'.join(f'Z/{d}' for d in self.torsion)}" if self.torsion else ""
        z = " with 0" if self.pointed else ""
        return f"AffineMonoid<{list(self.generators)} in Z^{self.ambient_rank}{t}>{z}"


@dataclass(frozen=True)
class TableMonoid:
    """Finite commutative monoid given by its full multiplication table."""

    elements: tuple
    table: dict = field(compare=False, repr=False)
    identity: object = 1
    zero: object = None
    _key: tuple = field(default=None, repr=False)

    @staticmethod
    def make(elements, table, identity=1, zero=None) -> "TableMonoid":
        elements = tuple(elements)
        els = set(elements)
        if len(els) != len(elements):
            raise MonoidError("duplicate elements")
        if identity not in els:
            raise MonoidError("identity not among elements")
        if zero is not None and zero not in els:
            raise MonoidError("zero not among elements")
        t = {}
        for a in elements:
            for b in elements:
                key = (a, b) if (a, b) in table else (b, a)
                if key not in table:
                    raise MonoidError(f"table missing product {a}*{b}")
                c = table[key]
                if c not in els:
                    raise MonoidError(f"product {a}*{b}={c!r} not among elements")
                t[(a, b)] = c
        for a in elements:
            if t[(identity, a)] != a:
                raise MonoidError("identity law fails")
            if zero is not None and t[(zero, a)] != zero:
                raise MonoidError("zero is not absorbing")
            for b in elements:
                if t[(a, b)] != t[(b, a)]:
                    raise MonoidError("table is not commutative")
                for c in elements:
                    if t[(t[(a, b)], c)] != t[(a, t[(b, c)])]:
                        raise MonoidError(f"associativity fails at ({a},{b},{c})")
        frozen = tuple(sorted((((str(a), str(b)), str(c)) for (a, b), c in t.items())))
        return TableMonoid(elements, t, identity, zero, frozen)

    @property
    def pointed(self) -> bool:
        return self.zero is not None

    def op(self, a, b):
        return self.table[(a, b)]

    def power(self, a, n: int):
        out = self.identity
        for _ in range(n):
            out = self.op(out, a)
        return out

    @cached_property
    def unit_elements(self) -> tuple:
        out = []
        for a in self.elements:
            if any(self.op(a, b) == self.identity for b in self.elements):
                out.append(a)
        return tuple(out)

    def units(self) -> AbelianGroup:
        return AbelianGroup(0, _finite_group_invariants(self, self.unit_elements))

    @property
    def is_integral(self) -> bool:
        """Cancellative (among nonzero elements when a zero is present)."""
        nz = [a for a in self.elements if a != self.zero]
        for a in nz:
            for x in nz:
                if self.pointed and self.op(a, x) == self.zero:
                    return False
                for y in nz:
                    if self.op(a, x) == self.op(a, y) and x != y:
                        return False
        return True

    @staticmethod
    def cyclic_group_with_zero(n: int) -> "TableMonoid":
        """Multiplicative monoid Z/n union {0}: elements '0','1','g','g^2',..."""
        labels = ["0"] + [("1" if k == 0 else "g" if k == 1 else f"g^{k}") for k in range(n)]
        table = {}
        for i, a in enumerate(labels):
            for j, b in enumerate(labels):
                if a == "0" or b == "0":
                    table[(a, b)] = "0"
                else:
                    table[(a, b)] = labels[1 + ((i - 1 + j - 1) % n)]
        return TableMonoid.make(labels, table, identity="1", zero="0")

    @staticmethod
    def f1_monoid() -> "TableMonoid":
        return TableMonoid.cyclic_group_with_zero(1)

    def __str__(self):
        return f"TableMonoid{self.elements}"


def _finite_group_invariants(M: TableMonoid, group_elements) -> tuple[int, ...]:
    """Invariant factors of a finite abelian group inside a table monoid."""
    els = list(group_elements)
    if len(els) <= 1:
        return ()

    def order(a):
        n, x = 1, a
        while x != M.identity:
            x = M.op(x, a)
            n += 1
        return n

    exponent = 1
    top = None
    for a in els:
        o = order(a)
        if exponent % o != 0:
            exponent = exponent * o // gcd(exponent, o)
        if top is None or o > order(top):
            top = a
    # split off a cyclic factor of maximal order and recurse on the quotient
    gen_powers = {M.power(top, k) for k in range(order(top))}
    cosets = {}
    for a in els:
        coset = frozenset(M.op(a, g) for g in gen_powers)
        cosets.setdefault(coset, []).append(a)
    if len(cosets) == 1:
        return (order(top),) if order(top) > 1 else ()
    reps = {c: min(str(a) for a in members) for c, members in cosets.items()}
    q_elements = tuple(sorted(reps.values()))
    rep_of = {}
    for coset, members in cosets.items():
        for a in members:
            rep_of[a] = reps[coset]
    q_table = {}
    for c1, m1 in cosets.items():
        for c2, m2 in cosets.items():
            prod = M.op(m1[0], m2[0])
            q_table[(reps[c1], reps[c2])] = rep_of[prod]
    Q = TableMonoid.make(q_elements, q_table, identity=rep_of[M.identity])
    sub = _finite_group_invariants(Q, Q.elements)
    return tuple(sorted(list(sub) + [order(top)]))


# --- ideals and primes --------------------------------------------------------

@dataclass(frozen=True)
class Ideal:
    """Ideal generated by a finite subset: union of g*A over the generators."""

    owner: object
    generators: tuple

    def contains(self, x) -> bool:
        A = self.owner
        if isinstance(A, AffineMonoid):
            return any(
                A.contains(tuple(a - b for a, b in zip(A._reduce(x), g)))
                for g in self.generators
            )
        return any(
            any(A.op(g, a) == x for a in A.elements) for g in self.generators
        )


@dataclass(frozen=True)
class PrimeIdeal:
    """Prime ideal, stored through its complement.

    For an AffineMonoid the complement is the face submonoid given by
    ``face`` (generator indices); for a TableMonoid the prime is the
    explicit element set ``elements``.
    """

    owner: object
    face: tuple[int, ...] = None
    elements: frozenset = None

    @property
    def key(self):
        if self.face is not None:
            return ("face", self.face)
        return ("set", tuple(sorted(map(str, self.elements))))

    def sort_key(self):
        if self.face is not None:
            return (-self.owner._face_dim(self.face), self.face)
        return (len(self.elements), tuple(sorted(map(str, self.elements))))

    def complement_submonoid(self):
        if self.face is not None:
            return self.owner.face_submonoid(self.face)
        keep = [a for a in self.owner.elements if a not in self.elements]
        table = {(a, b): self.owner.op(a, b) for a in keep for b in keep}
        return TableMonoid.make(keep, table, identity=self.owner.identity)

    def contains(self, x) -> bool:
        if self.face is not None:
            A = self.owner
            return A.contains(x) and not A.face_submonoid(self.face).contains(x)
        return x in self.elements

    def is_subset_of(self, other: "PrimeIdeal") -> bool:
        """Containment p <= q of primes of the same monoid."""
        if self.owner is not other.owner and self.owner != other.owner:
            raise MonoidError("primes of different monoids")
        if self.face is not None:
            return set(other.face) <= set(self.face)
        return self.elements <= other.elements

    def __str__(self):
        if self.face is not None:
            comp = [self.owner.generators[i] for i in self.face]
            return f"prime(complement face {comp})"
        return f"prime({sorted(map(str, self.elements))})"


def primes(A) -> list[PrimeIdeal]:
    """All prime ideals, sorted by face dimension then lexicographically.

    Affine monoids: complements of the faces of the recession cone.
    Table monoids: exhaustive subset search (capped at 20 elements).
    """
    if isinstance(A, AffineMonoid):
        return [PrimeIdeal(A, face=s) for s in A._face_subsets]
    if len(A.elements) > TABLE_PRIME_CAP:
        raise ResourceError(
            f"table monoid prime search capped at {TABLE_PRIME_CAP} elements"
        )
    units = set(A.unit_elements)
    nonunits = [a for a in A.elements if a not in units]
    found = []
    for k in range(len(nonunits) + 1):
        for combo in itertools.combinations(nonunits, k):
            p = set(combo)
            if A.pointed and A.zero not in p:
                continue
            comp = [a for a in A.elements if a not in p]
            if not all(A.op(a, b) not in p for a in comp for b in comp):
                continue
            if not all(A.op(a, m) in p for a in p for m in A.elements):
                continue
            found.append(PrimeIdeal(A, elements=frozenset(p)))
    return sorted(found, key=PrimeIdeal.sort_key)


def maximal_prime(A) -> PrimeIdeal:
    """m_A = A minus its units; unique maximal prime."""
    ps = primes(A)
    top = ps[0]
    for p in ps:
        if top.is_subset_of(p):
            top = p
    return top


def minimal_prime(A) -> PrimeIdeal:
    ps = primes(A)
    bot = ps[0]
    for p in ps:
        if p.is_subset_of(bot):
            bot = p
    return bot


# --- homomorphisms ------------------------------------------------------------

@dataclass(frozen=True)
class MonoidHom:
    """Monoid homomorphism given by generator images (affine) or an
    element map (table).  Relations of the source are checked against the
    kernel lattice of its generator matrix."""

    source: object
    target: object
    gen_images: tuple = None
    element_map: dict = field(default=None, compare=False)

    @staticmethod
    def affine(source: AffineMonoid, target: AffineMonoid, gen_images) -> "MonoidHom":
        gen_images = tuple(target._reduce(tuple(v)) for v in gen_images)
        if len(gen_images) != len(source.generators):
            raise MonoidError("need one image per source generator")
        for v in gen_images:
            if not target.contains(v):
                raise MonoidError(f"image {v} not in the target monoid")
        for z in _relation_lattice(source):
            img = (0,) * target.width
            for c, v in zip(z, gen_images):
                img = target._reduce(tuple(a + c * b for a, b in zip(img, v)))
            if any(img):
                raise MonoidError(f"source relation {z} not respected")
        if source.pointed != target.pointed:
            raise MonoidError("pointedness mismatch between source and target")
        return MonoidHom(source, target, gen_images=gen_images)

    @staticmethod
    def table(source: TableMonoid, target: TableMonoid, element_map: dict) -> "MonoidHom":
        if set(element_map) != set(source.elements):
            raise MonoidError("element map must cover the source")
        if element_map[source.identity] != target.identity:
            raise MonoidError("identity not preserved")
        if source.pointed:
            if not target.pointed or element_map[source.zero] != target.zero:
                raise MonoidError("zero not preserved")
        for a in source.elements:
            for b in source.elements:
                if element_map[source.op(a, b)] != target.op(element_map[a], element_map[b]):
                    raise MonoidError(f"multiplicativity fails at ({a},{b})")
        return MonoidHom(source, target, element_map=dict(element_map))

    def apply(self, x):
        if self.gen_images is not None:
            src: AffineMonoid = self.source
            coeffs = _group_coordinates(src, x)
            if coeffs is None:
                raise MonoidError(f"{x} is not in the source's quotient group")
            out = (0,) * self.target.width
            for c, v in zip(coeffs, self.gen_images):
                out = self.target._reduce(tuple(a + c * b for a, b in zip(out, v)))
            return out
        return self.element_map[x]

    def compose(self, other: "MonoidHom") -> "MonoidHom":
        """self o other (other applied first)."""
        if other.target != self.source:
            raise MonoidError("composition mismatch")
        if other.gen_images is not None:
            images = tuple(self.apply(v) for v in other.gen_images)
            return MonoidHom.affine(other.source, self.target, images)
        return MonoidHom.table(
            other.source, self.target,
            {a: self.apply(other.apply(a)) for a in other.source.elements},
        )


def _relation_lattice(A: AffineMonoid) -> list[list[int]]:
    """Basis of {z : sum z_i g_i = 0 in the ambient group}, restricted to
    the generator coordinates."""
    cols = [list(g) for g in A.generators]
    t = len(A.torsion)
    for j, d in enumerate(A.torsion):
        rel = [0] * A.width
        rel[A.ambient_rank + j] = d
        cols.append(rel)
    if not cols:
        return []
    full = kernel_basis(transpose(cols))
    return [z[: len(A.generators)] for z in full]


def _group_coordinates(A: AffineMonoid, x):
    """Integer coordinates of x over the generators, inside Quot(A)."""
    x = A._reduce(tuple(x))
    cols = [list(g) for g in A.generators]
    for j, d in enumerate(A.torsion):
        rel = [0] * A.width
        rel[A.ambient_rank + j] = d
        cols.append(rel)
    if not cols:
        return [] if not any(x) else None
    sol = solve_integer(transpose(cols), list(x))
    if sol is None:
        return None
    return sol[: len(A.generators)]


# --- module operations ---------------------------------------------------------

def localize(A, p: PrimeIdeal):
    """Localization A_p = (A minus p)^{-1} A with its canonical map.

    Affine: adjoin the negatives of the complementary face's generators.
    Table: explicit quotient-of-fractions construction with the relation
    a/s ~ b/t iff u t a = u s b for some u in the complement.
    """
    if isinstance(A, AffineMonoid):
        if p.owner != A:
            raise MonoidError("prime does not belong to this monoid")
        gens = list(A.generators)
        for i in p.face:
            gens.append(tuple(-x for x in A.generators[i]))
        loc = AffineMonoid.make(A.ambient_rank, gens, torsion=A.torsion, pointed=A.pointed)
        hom = MonoidHom.affine(A, loc, A.generators)
        return loc, hom
    return _localize_table(A, [a for a in A.elements if a not in p.elements])


def localize_at_submonoid(A: TableMonoid, S) -> tuple[TableMonoid, MonoidHom]:
    S = list(S)
    if A.identity not in S:
        raise MonoidError("localization set must contain the identity")
    for a in S:
        for b in S:
            if A.op(a, b) not in S:
                raise MonoidError("localization set must be multiplicatively closed")
    return _localize_table(A, S)


def _localize_table(A: TableMonoid, S):
    pairs = [(a, s) for a in A.elements for s in S]

    def equivalent(p1, p2):
        (a, s), (b, t) = p1, p2
        return any(A.op(A.op(u, t), a) == A.op(A.op(u, s), b) for u in S)

    classes: list[list] = []
    for p in pairs:
        for cls in classes:
            if equivalent(p, cls[0]):
                cls.append(p)
                break
        else:
            classes.append([p])
    labels = {}
    for cls in classes:
        rep = min(cls, key=lambda p: (str(p[0]), str(p[1])))
        name = f"{rep[0]}/{rep[1]}" if rep[1] != A.identity else f"{rep[0]}"
        for p in cls:
            labels[p] = name
    elements = tuple(sorted(set(labels.values())))
    table = {}
    for (a, s) in pairs:
        for (b, t) in pairs:
            prod = (A.op(a, b), A.op(s, t))
            table[(labels[(a, s)], labels[(b, t)])] = labels[prod]
    ident = labels[(A.identity, A.identity)]
    zero = labels[(A.zero, A.identity)] if A.pointed else None
    loc = TableMonoid.make(elements, table, identity=ident, zero=zero)
    hom = MonoidHom.table(A, loc, {a: labels[(a, A.identity)] for a in A.elements})
    return loc, hom


def group_completion(A: AffineMonoid) -> AbelianGroup:
    return A.group_completion()


def units(A) -> AbelianGroup:
    return A.units()


def saturation_generators(A: AffineMonoid, cone=None) -> tuple[tuple[int, ...], ...]:
    """Generators of {x in Quot A : free(x) in cone} in the ambient group.

    ``cone`` defaults to the recession cone of A, which gives the
    saturation; sheaf sections pass an intersected cone instead.
    """
    if cone is None:
        cone = A.recession_cone
    cols = [list(g) for g in A.generators]
    for j, d in enumerate(A.torsion):
        rel = [0] * A.width
        rel[A.ambient_rank + j] = d
        cols.append(rel)
    if not cols:
        return ()
    basis = column_lattice_basis(transpose(cols))  # basis of lifts of Quot(A)
    # basis members with zero free part are torsion elements of Quot(A) and
    # enter the saturation as a group; the rest carry the cone condition
    free_members = [tuple(b) for b in basis if any(b[: A.ambient_rank])]
    torsion_members = [tuple(b) for b in basis if not any(b[: A.ambient_rank])]
    out = set()
    for b in torsion_members:
        red = A._reduce(b)
        if any(red):
            out.add(red)
            out.add(A._reduce(tuple(-x for x in red)))
    if free_members:
        # pull the cone back through the free parts of the basis
        pullback_rows = []
        lin, rays = cone._dual_data
        for u in rays:
            pullback_rows.append([dot(u, A.free_part(b)) for b in free_members])
        for v in lin:
            row = [dot(v, A.free_part(b)) for b in free_members]
            pullback_rows.append(row)
            pullback_rows.append([-x for x in row])
        if pullback_rows:
            plin, prays = cones.double_description(pullback_rows, len(free_members))
        else:
            plin = tuple(tuple(r) for r in identity_matrix(len(free_members)))
            prays = ()
        qcone = RationalCone(len(free_members), prays, plin)
        for h in lattice_monoid_generators(qcone):
            vec = (0,) * A.width
            for c, b in zip(h, free_members):
                vec = tuple(a + c * x for a, x in zip(vec, b))
            red = A._reduce(vec)
            if any(red):
                out.add(red)
    return tuple(sorted(out))


def saturate(A: AffineMonoid) -> AffineMonoid:
    """Saturation cone(A) cap Quot(A) inside the ambient lattice."""
    return AffineMonoid.make(
        A.ambient_rank, saturation_generators(A), torsion=A.torsion, pointed=A.pointed
    )


def is_saturated(A: AffineMonoid) -> bool:
    return all(A.contains(g) for g in saturation_generators(A))


def adjoin_zero(M):
    """Functorially adjoin an absorbing zero; no-op with a warning if
    already pointed."""
    if isinstance(M, AffineMonoid):
        if M.pointed:
            warnings.warn("monoid already has a zero; adjoin_zero is a no-op")
            return M
        return AffineMonoid(M.ambient_rank, M.torsion, M.generators, True)
    if isinstance(M, TableMonoid):
        if M.pointed:
            warnings.warn("monoid already has a zero; adjoin_zero is a no-op")
            return M
        zero = "0"
        while zero in M.elements:
            zero += "'"
        elements = M.elements + (zero,)
        table = dict(M.table)
        for a in elements:
            table[(a, zero)] = zero
            table[(zero, a)] = zero
        return TableMonoid.make(elements, table, identity=M.identity, zero=zero)
    if isinstance(M, MonoidHom):
        if M.gen_images is not None:
            return MonoidHom.affine(adjoin_zero(M.source), adjoin_zero(M.target),
                                    M.gen_images)
        src, tgt = adjoin_zero(M.source), adjoin_zero(M.target)
        emap = dict(M.element_map)
        emap[src.zero] = tgt.zero
        return MonoidHom.table(src, tgt, emap)
    raise MonoidError(f"cannot adjoin zero to {M!r}")


# --- convenience constructors ---------------------------------------------------

def free_monoid(n: int) -> AffineMonoid:
    """N^n inside Z^n."""
    gens = [[1 if j == i else 0 for j in range(n)] for i in range(n)]
    return AffineMonoid.make(n, gens)


def group_monoid(n: int) -> AffineMonoid:
    """Z^n as a monoid (the coordinate monoid of a rank-n split torus)."""
    gens = []
    for i in range(n):
        e = [1 if j == i else 0 for j in range(n)]
        gens.append(e)
        gens.append([-x for x in e])
    return AffineMonoid.make(n, gens)


def trivial_monoid() -> AffineMonoid:
    return AffineMonoid.make(0, [])

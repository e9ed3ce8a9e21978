"""Prime spectra as finite spaces, structure sheaves, and glued monoid schemes.

The Zariski topology of a finite spectrum is the Alexandrov topology of
the specialization order (p <= q iff p is contained in q), so sheaves are
stored as functors on that poset: a stalk per point and a restriction hom
A_q -> A_p along every specialization.  Schemes are finite gluing
diagrams of affine spectra along localizations.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import cached_property

from .cones import RationalCone, double_description
from .intlinalg import (
    diagonal_of,
    dot,
    kernel_basis,
    smith_normal_form,
    transpose,
)
from .monoid import (
    AffineMonoid,
    MonoidError,
    MonoidHom,
    PrimeIdeal,
    TableMonoid,
    _localize_table,
    localize,
    primes,
)
from . import cones as _cones


class SchemeError(ValueError):
    pass


class GluingError(SchemeError):
    pass


# --- affine spectra -----------------------------------------------------------

@dataclass(frozen=True)
class SpecSpace:
    """Finite topological space of primes with the specialization order."""

    monoid: object
    points: tuple[PrimeIdeal, ...]

    def le(self, p: PrimeIdeal, q: PrimeIdeal) -> bool:
        return p.is_subset_of(q)

    @property
    def generic_point(self) -> PrimeIdeal:
        bot = self.points[0]
        for p in self.points:
            if p.is_subset_of(bot):
                bot = p
        assert all(bot.is_subset_of(p) for p in self.points)
        return bot

    @property
    def closed_point(self) -> PrimeIdeal:
        top = self.points[0]
        for p in self.points:
            if top.is_subset_of(p):
                top = p
        assert all(p.is_subset_of(top) for p in self.points)
        return top

    def is_open(self, subset) -> bool:
        """Open iff closed under generization (a down-set for <=)."""
        sub = list(subset)
        return all(
            (q not in sub) or (p in sub)
            for p in self.points for q in self.points if self.le(p, q)
        )

    def opens(self):
        """All open subsets (down-sets); exponential, for tiny spaces only."""
        for k in range(len(self.points) + 1):
            for combo in itertools.combinations(self.points, k):
                if self.is_open(combo):
                    yield combo

    def v_of(self, ideal_generators) -> tuple[PrimeIdeal, ...]:
        """V(a): primes containing every generator of the ideal."""
        out = []
        for p in self.points:
            if all(p.contains(g) for g in ideal_generators):
                out.append(p)
        return tuple(out)


@dataclass(frozen=True)
class StructureSheaf:
    """Stalks and restriction maps over the specialization poset."""

    space: SpecSpace
    stalks: dict = field(compare=False)
    _homs: dict = field(compare=False)       # prime -> hom A -> A_p
    _table_reps: dict = field(compare=False)  # table charts: prime -> label reps

    def stalk(self, p: PrimeIdeal):
        return self.stalks[p.key]

    def localization_hom(self, p: PrimeIdeal) -> MonoidHom:
        return self._homs[p.key]

    def restriction(self, q: PrimeIdeal, p: PrimeIdeal) -> MonoidHom:
        """Restriction A_q -> A_p for p <= q (further localization)."""
        if not self.space.le(p, q):
            raise SchemeError("restriction only runs along specializations")
        Aq, Ap = self.stalk(q), self.stalk(p)
        if isinstance(Aq, AffineMonoid):
            return MonoidHom.affine(Aq, Ap, Aq.generators)
        reps_q = self._table_reps[q.key]
        hom_p = self._homs[p.key]
        A = self.space.monoid

        def inv(label):
            for cand in Ap.elements:
                if Ap.op(cand, label) == Ap.identity:
                    return cand
            raise SchemeError("restriction: expected a unit")

        emap = {}
        for label in Aq.elements:
            a, s = reps_q[label]
            emap[label] = Ap.op(hom_p.apply(a), inv(hom_p.apply(s)))
        return MonoidHom.table(Aq, Ap, emap)

    def sections(self, open_points):
        """Sections over an open set: the limit of the stalks over it.

        An open with a unique maximal point U_p has sections = stalk at p;
        in particular global sections are A itself (localization at the
        units).  General opens are handled for saturated affine monoids by
        intersecting the stalk cones inside Quot(A).
        """
        open_points = list(open_points)
        if not open_points:
            raise SchemeError("sections over the empty set are not represented")
        if not self.space.is_open(open_points):
            raise SchemeError("not an open subset")
        maximal = [
            p for p in open_points
            if not any(q is not p and self.space.le(p, q) for q in open_points)
        ]
        if len(maximal) == 1:
            return self.stalk(maximal[0])
        A = self.space.monoid
        if not isinstance(A, AffineMonoid):
            raise NotImplementedError("multi-branch sections only for affine monoids")
        stalks = [self.stalk(p) for p in maximal]
        gens = _lattice_cone_members(
            A, [c.recession_cone for c in stalks]
        )
        out = AffineMonoid.make(A.ambient_rank, gens, torsion=A.torsion,
                                pointed=A.pointed)
        for g in out.generators:
            if not all(s.contains(g) for s in stalks):
                raise NotImplementedError(
                    "sections over this open need a non-saturated intersection")
        return out


def _lattice_cone_members(A: AffineMonoid, cone_list):
    """Generators of {x in Quot(A) : free(x) in every cone of cone_list}."""
    from .monoid import saturation_generators

    rows = []
    for c in cone_list:
        lin, rays = c._dual_data
        rows.extend(list(u) for u in rays)
        for v in lin:
            rows.append(list(v))
            rows.append([-x for x in v])
    if not rows:
        inter = RationalCone.make(
            [], rank=A.ambient_rank,
            lineality=[[1 if j == i else 0 for j in range(A.ambient_rank)]
                       for i in range(A.ambient_rank)],
        )
    else:
        lin, rays = double_description(rows, A.ambient_rank)
        inter = RationalCone(A.ambient_rank, rays, lin)
    return saturation_generators(A, cone=inter)


def spec(A):
    """The spectrum of a monoid with its structure sheaf."""
    pts = tuple(primes(A))
    space = SpecSpace(A, pts)
    stalks, homs, reps = {}, {}, {}
    for p in pts:
        if isinstance(A, AffineMonoid):
            loc, hom = localize(A, p)
        else:
            comp = [a for a in A.elements if a not in p.elements]
            loc, hom, labelreps = _localize_table_with_reps(A, comp)
            reps[p.key] = labelreps
        stalks[p.key] = loc
        homs[p.key] = hom
    return space, StructureSheaf(space, stalks, homs, reps)


def _localize_table_with_reps(A: TableMonoid, S):
    loc, hom = _localize_table(A, S)
    reps = {}
    for a in A.elements:
        for s in S:
            label = _table_fraction_label(loc, hom, a, s)
            reps.setdefault(label, (a, s))
    return loc, hom, reps


def _table_fraction_label(loc, hom, a, s):
    # a/s = phi(a) * phi(s)^{-1}; s comes from the inverted set
    img_a, img_s = hom.apply(a), hom.apply(s)
    inv = next(t for t in loc.elements if loc.op(img_s, t) == loc.identity)
    return loc.op(img_a, inv)


# --- morphisms of spectra -------------------------------------------------------

@dataclass(frozen=True)
class SpectrumMorphism:
    """Morphism of monoidal spaces between affine spectra.

    ``point_map`` sends source points to target points; ``stalk_homs[x]``
    is the stalk-level hom O_{Y,f(x)} -> O_{X,x}.  The constructor data is
    not required to be induced by a monoid hom, so non-local morphisms can
    be represented (and detected).
    """

    source: tuple  # (SpecSpace, StructureSheaf)
    target: tuple
    point_map: dict = field(compare=False)
    stalk_homs: dict = field(compare=False)

    def __post_init__(self):
        sspace, _ = self.source
        tspace, _ = self.target
        for p in sspace.points:
            if p.key not in self.point_map:
                raise SchemeError("point map must cover the source")
        # continuity on finite posets = order preservation
        for p in sspace.points:
            for q in sspace.points:
                if sspace.le(p, q):
                    fp = self.point_map[p.key]
                    fq = self.point_map[q.key]
                    if not tspace.le(fp, fq):
                        raise SchemeError("point map is not continuous")


def induced_spectrum_morphism(phi: MonoidHom) -> SpectrumMorphism:
    """spec(phi): spec(B) -> spec(A) for phi: A -> B, with stalk homs."""
    A, B = phi.source, phi.target
    if not isinstance(A, AffineMonoid) or not isinstance(B, AffineMonoid):
        raise NotImplementedError("induced morphisms implemented for affine monoids")
    src = spec(B)
    tgt = spec(A)
    point_map, stalk_homs = {}, {}
    for q in src[0].points:
        comp_b = B.face_submonoid(q.face)
        pre_face = tuple(
            i for i, g in enumerate(A.generators) if comp_b.contains(phi.apply(g))
        )
        p = next(pt for pt in tgt[0].points if pt.face == pre_face)
        point_map[q.key] = p
        Ap = tgt[1].stalk(p)
        Bq = src[1].stalk(q)
        loc_images = []
        for g in Ap.generators:
            # generators of A_p are generators of A plus negated face generators
            neg = tuple(-x for x in g)
            if A.contains(g):
                loc_images.append(phi.apply(g))
            elif A.contains(neg):
                loc_images.append(tuple(-x for x in phi.apply(neg)))
            else:
                raise SchemeError("unexpected localization generator")
        stalk_homs[q.key] = MonoidHom.affine(Ap, Bq, loc_images)
    return SpectrumMorphism(src, tgt, point_map, stalk_homs)


def _is_unit(M, x) -> bool:
    if isinstance(M, AffineMonoid):
        return M.contains(x) and M.contains(tuple(-v for v in M._reduce(x)))
    return x in M.unit_elements


def is_local_morphism(f: SpectrumMorphism) -> bool:
    """Check (f_x^#)^{-1}(units of source stalk) = units of target stalk.

    Homs carry units into units automatically, so the content is that no
    non-unit of O_{Y,f(x)} may map to a unit of O_{X,x}; on cancellative
    monoids it suffices to test generators.
    """
    sspace, ssheaf = f.source
    for x in sspace.points:
        hom = f.stalk_homs[x.key]
        stalk_x = ssheaf.stalk(x)
        source_stalk = hom.source  # O_{Y, f(x)}
        if isinstance(source_stalk, AffineMonoid):
            elements = source_stalk.generators
        else:
            elements = source_stalk.elements
        for g in elements:
            if _is_unit(stalk_x, hom.apply(g)) and not _is_unit(source_stalk, g):
                return False
    return True


# --- glued monoid schemes -------------------------------------------------------

@dataclass(frozen=True)
class Point:
    """A scheme point: canonical (chart, prime) representative plus rank."""

    chart_index: int
    prime: PrimeIdeal
    rank: int

    @property
    def key(self):
        return (self.chart_index, self.prime.key)


@dataclass(frozen=True)
class GluingData:
    """Identification of principal opens: localize chart_a at prime_a and
    chart_b at prime_b, identified by the lattice map ``iso`` (a square
    integer matrix sending ambient_a to ambient_b)."""

    chart_a: int
    prime_a: PrimeIdeal
    chart_b: int
    prime_b: PrimeIdeal
    iso: tuple[tuple[int, ...], ...]


@dataclass(frozen=True)
class MScheme:
    """A monoid scheme: charts plus gluings, with the derived point poset."""

    charts: tuple
    gluings: tuple = ()
    fan_data: object = field(default=None, compare=False)

    @staticmethod
    def affine(A) -> "MScheme":
        return glue([A], [])

    @cached_property
    def pointed(self) -> bool:
        flags = {c.pointed for c in self.charts}
        if len(flags) != 1:
            raise SchemeError("mixed pointed/unpointed charts")
        return flags.pop()

    # derived data filled in by glue(); kept on a parallel cache
    @cached_property
    def _derived(self):
        return _build_scheme_data(self)

    @property
    def points(self) -> tuple[Point, ...]:
        return self._derived["points"]

    def le(self, a: Point, b: Point) -> bool:
        return self._derived["le"][(a.key, b.key)]

    def stalk(self, pt: Point):
        return self._derived["stalks"][pt.key]

    def chart_spectra(self):
        return self._derived["spectra"]

    def point_of(self, chart_index: int, prime: PrimeIdeal) -> Point:
        return self._derived["class_of"][(chart_index, prime.key)]

    @property
    def connected_components(self) -> tuple[tuple[Point, ...], ...]:
        pts = self.points
        parent = {p.key: p.key for p in pts}

        def find(k):
            while parent[k] != k:
                parent[k] = parent[parent[k]]
                k = parent[k]
            return k

        for a in pts:
            for b in pts:
                if self.le(a, b) or self.le(b, a):
                    parent[find(a.key)] = find(b.key)
        groups = {}
        for p in pts:
            groups.setdefault(find(p.key), []).append(p)
        return tuple(tuple(g) for g in groups.values())


def glue(charts, gluings) -> "MScheme":
    """Build an MScheme, checking the gluing isomorphisms."""
    charts = tuple(charts)
    records = []
    for g in gluings:
        if isinstance(g, GluingData):
            records.append(g)
        else:
            records.append(GluingData(*g))
    scheme = MScheme(charts, tuple(records))
    scheme._derived  # force validation eagerly
    scheme.pointed
    return scheme


def _build_scheme_data(scheme: MScheme):
    charts = scheme.charts
    if not charts:
        raise SchemeError("a scheme needs at least one chart")
    spectra = [spec(A) for A in charts]

    # union-find over (chart, prime.key)
    keys = [(ci, p.key) for ci, (space, _) in enumerate(spectra) for p in space.points]
    parent = {k: k for k in keys}

    def find(k):
        while parent[k] != k:
            parent[k] = parent[parent[k]]
            k = parent[k]
        return k

    def union(a, b):
        parent[find(a)] = find(b)

    prime_by_key = {
        (ci, p.key): p for ci, (space, _) in enumerate(spectra) for p in space.points
    }

    for rec in scheme.gluings:
        _validate_gluing(charts, rec)
        for pa_key, pb_key in _gluing_point_pairs(charts, rec):
            union((rec.chart_a, pa_key), (rec.chart_b, pb_key))

    classes = {}
    for k in keys:
        classes.setdefault(find(k), []).append(k)

    class_points = {}
    stalks = {}
    class_of = {}
    for root, members in classes.items():
        rep = min(members)
        ci, pkey = rep
        prime = prime_by_key[rep]
        loc = spectra[ci][1].stalk(prime)
        rank = loc.units().free_rank
        pt = Point(ci, prime, rank)
        class_points[root] = pt
        stalks[pt.key] = loc
        for m in members:
            class_of[m] = pt

    points = tuple(sorted(class_points.values(), key=lambda p: p.key))

    # specialization order: chart relations, then transitive closure
    le = {(a.key, b.key): a.key == b.key for a in points for b in points}
    for ci, (space, _) in enumerate(spectra):
        for p in space.points:
            for q in space.points:
                if space.le(p, q):
                    a = class_of[(ci, p.key)]
                    b = class_of[(ci, q.key)]
                    le[(a.key, b.key)] = True
    for m in points:
        for a in points:
            for b in points:
                if le[(a.key, m.key)] and le[(m.key, b.key)]:
                    le[(a.key, b.key)] = True

    return {
        "points": points,
        "le": le,
        "stalks": stalks,
        "spectra": spectra,
        "class_of": class_of,
    }


def _validate_gluing(charts, rec: GluingData):
    A, B = charts[rec.chart_a], charts[rec.chart_b]
    if not isinstance(A, AffineMonoid) or not isinstance(B, AffineMonoid):
        raise GluingError("gluing records are supported for affine charts")
    loc_a, _ = localize(A, rec.prime_a)
    loc_b, _ = localize(B, rec.prime_b)
    T = [list(row) for row in rec.iso]
    if len(T) != B.ambient_rank or any(len(r) != A.ambient_rank for r in T):
        raise GluingError("iso matrix has the wrong shape")
    if A.torsion or B.torsion:
        raise GluingError("gluing with ambient torsion is not supported")
    _, D, _ = smith_normal_form(T)
    if any(d != 1 for d in diagonal_of(D)):
        raise GluingError("iso matrix is not a lattice isomorphism")
    Tinv = _int_inverse(T)
    for g in loc_a.generators:
        img = tuple(dot(row, g) for row in T)
        if not loc_b.contains(img):
            raise GluingError(f"iso does not map the overlap into chart {rec.chart_b}")
    for h in loc_b.generators:
        img = tuple(dot(row, h) for row in Tinv)
        if not loc_a.contains(img):
            raise GluingError(f"inverse iso does not map the overlap into chart {rec.chart_a}")


def _int_inverse(T):
    from .intlinalg import unimodular_inverse

    return unimodular_inverse(T)


def _gluing_point_pairs(charts, rec: GluingData):
    """Pairs (prime key of chart_a, prime key of chart_b) identified by the
    gluing: primes of the localized overlap, traced into both charts."""
    A, B = charts[rec.chart_a], charts[rec.chart_b]
    loc_a, _ = localize(A, rec.prime_a)
    T = [list(row) for row in rec.iso]
    pairs = []
    for r in primes(loc_a):
        comp = loc_a.face_submonoid(r.face)
        face_in_a = tuple(
            i for i, g in enumerate(A.generators) if comp.contains(g)
        )
        image_gens = [tuple(dot(row, g) for row in T) for g in
                      (loc_a.generators[i] for i in r.face)]
        image_monoid = AffineMonoid.make(B.ambient_rank, image_gens)
        face_in_b = tuple(
            j for j, h in enumerate(B.generators) if image_monoid.contains(h)
        )
        pairs.append((("face", face_in_a), ("face", face_in_b)))
    return pairs


# --- scheme-level operations ------------------------------------------------------

def global_sections(X: MScheme):
    """The equalizer of the chart sections over the overlaps."""
    if not X.charts:
        raise SchemeError("empty scheme")
    if len(X.charts) == 1:
        space, sheaf = X.chart_spectra()[0]
        return sheaf.sections(space.points)
    charts = X.charts
    if any(not isinstance(c, AffineMonoid) or c.torsion for c in charts):
        raise NotImplementedError("multi-chart sections need torsion-free affine charts")
    offsets = []
    total = 0
    for c in charts:
        offsets.append(total)
        total += c.ambient_rank

    # parametrize the product of the quotient groups by a block basis
    blocks = []
    for ci, c in enumerate(charts):
        from .intlinalg import column_lattice_basis

        basis = column_lattice_basis(transpose([list(g) for g in c.generators])) \
            if c.generators else []
        for b in basis:
            vec = [0] * total
            vec[offsets[ci]: offsets[ci] + c.ambient_rank] = b
            blocks.append(vec)
    # overlap constraints: T x_a = x_b
    constraint_rows = []
    for rec in X.gluings:
        T = [list(row) for row in rec.iso]
        for out_coord in range(charts[rec.chart_b].ambient_rank):
            row = [0] * total
            for in_coord in range(charts[rec.chart_a].ambient_rank):
                row[offsets[rec.chart_a] + in_coord] += T[out_coord][in_coord]
            row[offsets[rec.chart_b] + out_coord] -= 1
            constraint_rows.append(row)
    if constraint_rows and blocks:
        M = [[dot(row, b) for b in blocks] for row in constraint_rows]
        coeff_kernel = kernel_basis(M)
        lattice = [
            [sum(k[j] * blocks[j][i] for j in range(len(blocks))) for i in range(total)]
            for k in coeff_kernel
        ]
    else:
        lattice = blocks
    # cone condition per chart, pulled back through the lattice basis
    rows = []
    for ci, c in enumerate(charts):
        lin, rays = c.recession_cone._dual_data
        for u in rays:
            rows.append([sum(u[i] * b[offsets[ci] + i] for i in range(c.ambient_rank))
                         for b in lattice])
        for v in lin:
            r = [sum(v[i] * b[offsets[ci] + i] for i in range(c.ambient_rank))
                 for b in lattice]
            rows.append(r)
            rows.append([-x for x in r])
    if not lattice:
        return AffineMonoid.make(total, [])
    if rows:
        plin, prays = double_description(rows, len(lattice))
    else:
        plin = tuple(tuple(r) for r in
                     [[1 if j == i else 0 for j in range(len(lattice))]
                      for i in range(len(lattice))])
        prays = ()
    qcone = RationalCone(len(lattice), prays, plin)
    gens = []
    for h in _cones.lattice_monoid_generators(qcone):
        vec = tuple(
            sum(h[j] * lattice[j][i] for j in range(len(lattice))) for i in range(total)
        )
        if any(vec):
            gens.append(vec)
    result = AffineMonoid.make(total, gens, pointed=X.pointed)
    for g in result.generators:
        for ci, c in enumerate(charts):
            part = g[offsets[ci]: offsets[ci] + c.ambient_rank]
            if not c.contains(part):
                raise NotImplementedError(
                    "global sections over non-saturated charts are not supported")
    return result


def plus_zero(X: MScheme) -> MScheme:
    """The zero-adjoining functor on schemes: apply it chartwise.

    Primes (and hence gluing records) carry over unchanged up to
    re-owning, since the primes of A and of its pointed extension
    coincide.
    """
    import warnings as _warnings
    from .monoid import adjoin_zero

    with _warnings.catch_warnings():
        _warnings.simplefilter("ignore")
        charts = [adjoin_zero(c) for c in X.charts]
    records = []
    for rec in X.gluings:
        pa = PrimeIdeal(charts[rec.chart_a], face=rec.prime_a.face)
        pb = PrimeIdeal(charts[rec.chart_b], face=rec.prime_b.face)
        records.append(GluingData(rec.chart_a, pa, rec.chart_b, pb, rec.iso))
    return MScheme(tuple(charts), tuple(records), X.fan_data)


def classify(X: MScheme) -> dict:
    """Connectedness, integrality, finite type and exponent-1 flags.

    finite_type is recorded as always true: the chart representation can
    only express finitely generated stalks.
    """
    connected = len(X.connected_components) == 1
    integral = True
    exponent_one = True
    for pt in X.points:
        stalk = X.stalk(pt)
        if isinstance(stalk, TableMonoid):
            if not stalk.is_integral:
                integral = False
        u = stalk.units()
        if u.invariant_factors:
            exponent_one = False
    return {
        "connected": connected,
        "integral": integral,
        "finite_type": True,
        "exponent_one": exponent_one,
    }


def minimal_rank_points(X: MScheme) -> list[Point]:
    m = min(p.rank for p in X.points)
    return [p for p in X.points if p.rank == m]

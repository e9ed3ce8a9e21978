"""Exact rational polyhedral cones: duals, faces, Hilbert bases.

Cones are given by primitive integer ray generators plus an optional
lineality basis.  Duals are computed by the double description method
over exact rationals; Hilbert bases by a placing triangulation and
fundamental-parallelepiped enumeration.  Everything runs at desk scale:
the public dual/Hilbert operations enforce a lattice-rank cap of 4.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property

from .intlinalg import (
    dot,
    identity_matrix,
    kernel_basis,
    primitive_vector,
    rat_rank,
    rat_solve,
    smith_normal_form,
    transpose,
    unimodular_inverse,
)

RANK_CAP = 4


class ConeError(ValueError):
    pass


class ResourceCapError(ConeError):
    pass


def _canonical_rays(rays, rank):
    out = set()
    for r in rays:
        if len(r) != rank:
            raise ConeError(f"ray {r!r} has length {len(r)}, expected {rank}")
        if any(x != 0 for x in r):
            out.add(primitive_vector(r))
    return tuple(sorted(out))


@dataclass(frozen=True)
class RationalCone:
    """cone(rays) + span(lineality) in Q^rank, rays primitive and lex-sorted."""

    rank: int
    rays: tuple[tuple[int, ...], ...]
    lineality: tuple[tuple[int, ...], ...] = ()

    @staticmethod
    def make(rays, rank=None, lineality=()):
        rays = list(rays)
        if rank is None:
            if not rays and not lineality:
                raise ConeError("cannot infer rank of the zero cone; pass rank")
            rank = len(rays[0]) if rays else len(lineality[0])
        return RationalCone(rank, _canonical_rays(rays, rank),
                            tuple(tuple(v) for v in lineality))

    @cached_property
    def dim(self) -> int:
        vecs = [list(r) for r in self.rays] + [list(v) for v in self.lineality]
        return rat_rank(vecs) if vecs else 0

    @cached_property
    def simplicial(self) -> bool:
        return not self.lineality and rat_rank([list(r) for r in self.rays]) == len(self.rays)

    @cached_property
    def _dual_data(self):
        rows = [list(r) for r in self.rays]
        for v in self.lineality:
            rows.append(list(v))
            rows.append([-x for x in v])
        return double_description(rows, self.rank)

    @property
    def facet_normals(self) -> tuple[tuple[int, ...], ...]:
        return self._dual_data[1]

    @cached_property
    def effective_lineality(self) -> tuple[tuple[int, ...], ...]:
        """Lattice basis of {x in cone : -x in cone} (may exceed the declared one)."""
        lin, rays = self._dual_data
        rows = [list(u) for u in rays] + [list(v) for v in lin]
        if not rows:
            return tuple(tuple(v) for v in identity_matrix(self.rank))
        return tuple(tuple(v) for v in kernel_basis(rows))

    @property
    def pointed(self) -> bool:
        return not self.effective_lineality

    def contains(self, x) -> bool:
        if len(x) != self.rank:
            raise ConeError("dimension mismatch")
        lin, rays = self._dual_data
        return all(dot(u, x) >= 0 for u in rays) and all(dot(v, x) == 0 for v in lin)

    def relative_interior_contains(self, x) -> bool:
        lin, rays = self._dual_data
        return all(dot(u, x) > 0 for u in rays) and all(dot(v, x) == 0 for v in lin)

    def __str__(self):
        lin = f" + lines{list(self.lineality)}" if self.lineality else ""
        return f"cone{list(self.rays)}{lin}"


def cone(*rays, rank=None):
    return RationalCone.make(rays, rank=rank)


# --- double description ------------------------------------------------------

def double_description(ineq_rows: list, n: int):
    """V-representation of {x in Q^n : a.x >= 0 for all rows a}.

    Returns (lineality_basis, rays) as primitive integer vectors.  This is
    the classic incremental algorithm, run on the pointed quotient after
    the lineality space (the kernel of the inequality matrix) is split off.
    """
    rows = [list(r) for r in ineq_rows if any(x != 0 for x in r)]
    if not rows:
        return tuple(tuple(v) for v in identity_matrix(n)), ()
    lin = kernel_basis(rows)
    l = len(lin)
    d = n - l
    if d == 0:
        return tuple(tuple(v) for v in lin), ()

    # lattice coordinates splitting off the (saturated) kernel
    if l:
        B = transpose([list(v) for v in lin])  # n x l
        U, _, _ = smith_normal_form(B)
        Uinv = unimodular_inverse(U)
        lift_cols = [[Uinv[i][l + j] for i in range(n)] for j in range(d)]
    else:
        lift_cols = [[1 if i == j else 0 for i in range(n)] for j in range(d)]

    # inequalities in quotient coordinates: b.y >= 0 with b_j = a . lift_col_j
    ineqs = []
    for a in rows:
        b = tuple(dot(a, c) for c in lift_cols)
        if any(x != 0 for x in b) and b not in ineqs:
            ineqs.append(b)

    # initial simplicial cone from d independent inequalities
    chosen = []
    for b in ineqs:
        if rat_rank([list(x) for x in chosen + [b]]) > len(chosen):
            chosen.append(b)
        if len(chosen) == d:
            break
    assert len(chosen) == d, "pointed part must have a full-rank inequality system"
    rest = [b for b in ineqs if b not in chosen]

    # rays of {y : B0 y >= 0} are the columns of B0^{-1}
    b0_cols = transpose([list(c) for c in chosen])
    rays = []
    for j in range(d):
        e = [Fraction(int(i == j)) for i in range(d)]
        sol = rat_solve(b0_cols, e)
        assert sol is not None
        rays.append(primitive_vector(sol))
    processed = list(chosen)

    for b in rest:
        pos = [r for r in rays if dot(b, r) > 0]
        zero = [r for r in rays if dot(b, r) == 0]
        neg = [r for r in rays if dot(b, r) < 0]
        if neg:
            zerosets = {r: frozenset(i for i, a in enumerate(processed) if dot(a, r) == 0)
                        for r in rays}
            new_rays = []
            for rp, rn in itertools.product(pos, neg):
                common = zerosets[rp] & zerosets[rn]
                adjacent = not any(
                    r3 is not rp and r3 is not rn and common <= zerosets[r3] for r3 in rays
                )
                if adjacent:
                    comb = [dot(b, rp) * x - dot(b, rn) * y for x, y in zip(rn, rp)]
                    new_rays.append(primitive_vector(comb))
            rays = list(dict.fromkeys(pos + zero + new_rays))
        processed.append(b)

    lifted = sorted(
        primitive_vector([sum(lift_cols[j][i] * r[j] for j in range(d)) for i in range(n)])
        for r in rays
    )
    return tuple(tuple(v) for v in lin), tuple(lifted)


def dual_cone(sigma: RationalCone) -> RationalCone:
    """Dual cone {u : <u,v> >= 0 for all v in sigma}, lineality made explicit."""
    if sigma.rank > RANK_CAP:
        raise ResourceCapError(f"dual_cone capped at lattice rank {RANK_CAP}")
    return _dual_uncapped(sigma)


def _dual_uncapped(sigma: RationalCone) -> RationalCone:
    lin, rays = sigma._dual_data
    return RationalCone(sigma.rank, rays, lin)


def faces(sigma: RationalCone) -> list[RationalCone]:
    """All faces of sigma, including the minimal face and sigma itself."""
    if sigma.simplicial:
        subsets = itertools.chain.from_iterable(
            itertools.combinations(range(len(sigma.rays)), k)
            for k in range(len(sigma.rays) + 1)
        )
        return [RationalCone(sigma.rank, tuple(sigma.rays[i] for i in s)) for s in subsets]
    out = []
    for s in sorted(face_index_sets(sigma), key=lambda s: (len(s), sorted(s))):
        out.append(RationalCone(sigma.rank, tuple(sigma.rays[i] for i in sorted(s)),
                                sigma.effective_lineality))
    return out


def face_index_sets(sigma: RationalCone) -> set[frozenset[int]]:
    """Faces of sigma as subsets of ray indices (fixpoint of facet cuts)."""
    _, normals = sigma._dual_data
    full = frozenset(range(len(sigma.rays)))
    found = {full}
    queue = [full]
    while queue:
        s = queue.pop()
        for u in normals:
            cut = frozenset(i for i in s if dot(u, sigma.rays[i]) == 0)
            if cut not in found:
                found.add(cut)
                queue.append(cut)
    return found


# --- Hilbert bases -----------------------------------------------------------

@dataclass(frozen=True)
class HilbertBasis:
    cone: RationalCone
    vectors: tuple[tuple[int, ...], ...]


def _placing_triangulation(sigma: RationalCone) -> list[tuple[int, ...]]:
    """Cover a pointed cone by simplicial subcones (ray index tuples),
    inserting rays in lexicographic order (they are stored sorted)."""
    simplices: list[tuple[int, ...]] = []
    placed: list[int] = []
    for idx in range(len(sigma.rays)):
        v = sigma.rays[idx]
        if not placed:
            placed.append(idx)
            simplices = [(idx,)]
            continue
        current = RationalCone(sigma.rank, tuple(sigma.rays[i] for i in sorted(placed)))
        if current.contains(v):
            placed.append(idx)
            continue
        span_rank = rat_rank([list(sigma.rays[i]) for i in placed] + [list(v)])
        if span_rank > current.dim:
            # v leaves the linear span: cone every simplex over it
            simplices = [s + (idx,) for s in simplices]
        else:
            d = current.dim
            new = []
            for u in current.facet_normals:
                if dot(u, v) >= 0:
                    continue
                for s in simplices:
                    on_facet = tuple(i for i in s if dot(u, sigma.rays[i]) == 0)
                    if len(on_facet) == d - 1:
                        cand = on_facet + (idx,)
                        if cand not in new:
                            new.append(cand)
            simplices.extend(x for x in new if x not in simplices)
        placed.append(idx)
    return simplices


def _parallelepiped_points(vectors: list[tuple[int, ...]]) -> list[tuple[int, ...]]:
    """Lattice points of {sum t_i v_i : 0 <= t_i < 1} for independent v_i."""
    n = len(vectors[0])
    los = [0] * n
    his = [0] * n
    for coeffs in itertools.product((0, 1), repeat=len(vectors)):
        corner = [sum(c * v[i] for c, v in zip(coeffs, vectors)) for i in range(n)]
        los = [min(a, b) for a, b in zip(los, corner)]
        his = [max(a, b) for a, b in zip(his, corner)]
    cols = [list(v) for v in vectors]
    pts = []
    for candidate in itertools.product(*[range(lo, hi + 1) for lo, hi in zip(los, his)]):
        t = rat_solve(cols, list(candidate))
        if t is not None and all(0 <= x < 1 for x in t):
            pts.append(tuple(candidate))
    return pts


def hilbert_basis(sigma: RationalCone) -> HilbertBasis:
    """Minimal generating set of sigma cap Z^n for a pointed cone."""
    if sigma.rank > RANK_CAP:
        raise ResourceCapError(f"hilbert_basis capped at lattice rank {RANK_CAP}")
    if not sigma.pointed:
        raise ConeError("cone is not pointed; split off the lineality (unit) part first")
    return HilbertBasis(sigma, _hilbert_vectors(sigma))


def _hilbert_vectors(sigma: RationalCone) -> tuple[tuple[int, ...], ...]:
    if not sigma.rays:
        return ()
    candidates: set[tuple[int, ...]] = set(sigma.rays)
    for simplex in _placing_triangulation(sigma):
        vecs = [sigma.rays[i] for i in simplex]
        for p in _parallelepiped_points(vecs):
            if any(x != 0 for x in p):
                candidates.add(p)
    basis = []
    for h in sorted(candidates):
        reducible = False
        for c in candidates:
            if c == h:
                continue
            diff = tuple(a - b for a, b in zip(h, c))
            if any(x != 0 for x in diff) and sigma.contains(diff):
                reducible = True
                break
        if not reducible:
            basis.append(h)
    return tuple(sorted(basis))


def lattice_monoid_generators(sigma: RationalCone) -> tuple[tuple[int, ...], ...]:
    """Generators of the monoid sigma cap Z^n, lineality allowed.

    For a non-pointed cone: Hilbert basis of the pointed quotient, lifted
    back, plus +/- a lattice basis of the lineality.  Internal helper, no
    rank cap (callers such as the fan functor stay at fan rank).
    """
    n = sigma.rank
    lin = sigma.effective_lineality
    if not lin:
        return _hilbert_vectors(sigma)
    l = len(lin)
    B = transpose([list(v) for v in lin])
    U, _, _ = smith_normal_form(B)
    Uinv = unimodular_inverse(U)
    proj = [U[l + j] for j in range(n - l)]
    lift_cols = [[Uinv[i][l + j] for i in range(n)] for j in range(n - l)]
    gens = set()
    if n - l > 0:
        proj_rays = set()
        for r in sigma.rays:
            img = tuple(dot(p, r) for p in proj)
            if any(x != 0 for x in img):
                proj_rays.add(primitive_vector(img))
        if proj_rays:
            qcone = RationalCone.make(sorted(proj_rays), rank=n - l)
            for h in _hilbert_vectors(qcone):
                lift = tuple(
                    sum(lift_cols[j][i] * h[j] for j in range(n - l)) for i in range(n)
                )
                gens.add(lift)
    for v in lin:
        gens.add(tuple(v))
        gens.add(tuple(-x for x in v))
    return tuple(sorted(gens))

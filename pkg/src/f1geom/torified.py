"""Torifications and generalized torified triples.

A torification is a decomposition of a variety's points into split tori,
recorded as a multiset of torus ranks; its defining identity is
sum_i (q-1)^{d_i} = N(q), verified symbolically in the (q-1) basis.
Constructors cover torus-orbit decompositions of fan schemes, cell
decompositions on the pattern of Schubert cells, and the two-cell
decompositions of the desk-scale matrix groups.  Triples (pointed monoid
scheme, counting surrogate, per-field evaluation) realize the
correspondence with functor-of-points records and carry the rational
point bookkeeping down to counts of minimal-rank points.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from math import comb

from .counting import CountingFunction, counting_polynomial
from .monoid import AffineMonoid, group_monoid
from .spectrum import MScheme, glue, minimal_rank_points
from .zeta import CountingPolynomial, q_poly

SAMPLE_PRIME_POWERS = (2, 3, 4, 5, 7, 8, 9)


class TorifyError(ValueError):
    pass


@dataclass(frozen=True)
class Torification:
    """Multiset of torus ranks with optional labels and chart assignment.

    ``charts`` maps a chart id to the labels of the tori lying in it,
    together with the chart's own counting polynomial, which is what the
    affineness check needs.
    """

    ranks: tuple[int, ...]
    labels: tuple = ()
    charts: dict = field(default=None, compare=False)
    chart_counts: dict = field(default=None, compare=False)

    @staticmethod
    def make(ranks, labels=None, charts=None, chart_counts=None) -> "Torification":
        ranks = [int(d) for d in ranks]
        if any(d < 0 for d in ranks):
            raise TorifyError("torus ranks must be nonnegative")
        if labels is None:
            labels = list(range(len(ranks)))
        else:
            labels = list(labels)
            if len(labels) != len(ranks):
                raise TorifyError("need one label per torus")
            if len(set(labels)) != len(labels):
                raise TorifyError("torus labels must be unique")
        paired = sorted(zip(ranks, labels), key=lambda rl: (rl[0], str(rl[1])))
        return Torification(tuple(r for r, _ in paired),
                            tuple(l for _, l in paired), charts, chart_counts)

    def count_polynomial(self) -> CountingPolynomial:
        basis = [0] * (max(self.ranks, default=0) + 1)
        for d in self.ranks:
            basis[d] += 1
        return CountingPolynomial.from_qminus1_basis(basis)

    def count_rank(self, r: int) -> int:
        return sum(1 for d in self.ranks if d == r)

    @property
    def minimal_rank(self) -> int:
        return min(self.ranks)


@dataclass(frozen=True)
class CellComplex:
    """Affine cells over base tori: pairs (cell dimension, base torus rank).

    Schubert-style data has base rank 0 throughout; the matrix-group cells
    carry the rank of the diagonal torus.
    """

    cells: tuple[tuple[int, int], ...]

    @staticmethod
    def make(cells) -> "CellComplex":
        out = []
        for c in cells:
            d, base = int(c[0]), int(c[1])
            if d < 0 or base < 0:
                raise TorifyError("cell dimensions must be nonnegative")
            out.append((d, base))
        return CellComplex(tuple(sorted(out)))

    def torification(self) -> Torification:
        ranks, labels = [], []
        for idx, (d, base) in enumerate(self.cells):
            for seq, r in enumerate(torify_cell(d, base)):
                ranks.append(r)
                labels.append((idx, d, base, r, seq))
        return Torification.make(ranks, labels)

    def count_polynomial(self) -> CountingPolynomial:
        out = CountingPolynomial.make([])
        for d, base in self.cells:
            term = CountingPolynomial.from_qminus1_basis([0] * base + [1])
            qd = CountingPolynomial.make([0] * d + [1])
            out = out + term * qd
        return out


def verify_torification(T: Torification, N: CountingPolynomial) -> bool:
    """sum (q-1)^{d_i} == N(q), compared exactly in the (q-1) basis."""
    counts = {}
    for d in T.ranks:
        counts[d] = counts.get(d, 0) + 1
    target = N.to_qminus1_basis()
    want = {r: c for r, c in enumerate(target) if c}
    return counts == want


def is_affinely_torified(T: Torification):
    """Every chart's assigned tori must verify the chart's own counting
    polynomial.  Without an assignment the result is indeterminate."""
    if T.charts is None or T.chart_counts is None:
        return None, ["no chart assignment present; affineness is indeterminate"]
    by_label = dict(zip(T.labels, T.ranks))
    failures = []
    for chart_id, label_list in sorted(T.charts.items(), key=lambda kv: str(kv[0])):
        sub = Torification.make([by_label[l] for l in label_list])
        if not verify_torification(sub, T.chart_counts[chart_id]):
            failures.append(
                f"chart {chart_id}: tori sum to {sub.count_polynomial()}, "
                f"chart counts {T.chart_counts[chart_id]}")
    return (not failures), failures


# --- constructors ---------------------------------------------------------------

def orbit_torification(X: MScheme) -> Torification:
    """One torus per fan cone, of rank n - dim(cone); the chart assignment
    collects the faces of each maximal cone, so the torification is
    affine by construction."""
    if X.fan_data is None:
        raise TorifyError("orbit torification needs a fan-built scheme")
    fan = X.fan_data.fan
    n = fan.rank
    cone_key = {c: tuple(sorted(c)) for c in fan.cones}
    ranks, labels = [], []
    for c in fan.sorted_cones():
        ranks.append(n - fan.cone_dim(c))
        labels.append(cone_key[c])
    charts, chart_counts = {}, {}
    for mi, mc in enumerate(fan.maximal_cones):
        members = [cone_key[c] for c in fan.cones if c <= mc]
        charts[mi] = sorted(members)
        basis = [0] * (n + 1)
        for c in fan.cones:
            if c <= mc:
                basis[n - fan.cone_dim(c)] += 1
        chart_counts[mi] = CountingPolynomial.from_qminus1_basis(basis)
    return Torification.make(ranks, labels, charts, chart_counts)


def torify_cell(d: int, base: int = 0) -> list[int]:
    """Ranks of the subset decomposition of a d-cell over a rank-``base``
    torus: {base + |S| : S subset of [d]}, 2^d tori."""
    if d < 0 or base < 0:
        raise TorifyError("cell dimension and base rank must be nonnegative")
    out = []
    for k in range(d + 1):
        out.extend([base + k] * comb(d, k))
    return sorted(out)


def box_partitions(k: int, m: int):
    """Partitions fitting in a k x m box, sorted."""
    parts = set()

    def rec(prefix, remaining_rows, cap):
        parts.add(tuple(prefix))
        if remaining_rows == 0:
            return
        for x in range(1, cap + 1):
            rec(prefix + [x], remaining_rows - 1, x)

    rec([], k, m)
    return sorted(parts)


def schubert_torification(k: int, n: int, with_pivot_charts: bool = False):
    """Cell decomposition indexed by partitions in the k x (n-k) box; the
    counting polynomial is the Gaussian binomial.

    ``with_pivot_charts`` attaches the natural chart assignment sending
    each cell's tori to the coordinate chart of its pivot columns; every
    such chart is an affine space of dimension k(n-k), so the per-chart
    identity fails except on the dense cell and the assignment witnesses
    that this torification is not affine.
    """
    if not (0 <= k <= n <= 8):
        raise TorifyError("supported range is 0 <= k <= n <= 8")
    cells = [sum(p) for p in box_partitions(k, n - k)]
    ranks, labels = [], []
    for idx, d in enumerate(sorted(cells)):
        for seq, r in enumerate(torify_cell(d, 0)):
            ranks.append(r)
            labels.append((idx, d, r, seq))
    charts = chart_counts = None
    if with_pivot_charts:
        chart_poly = CountingPolynomial.make([0] * (k * (n - k)) + [1])  # q^{k(n-k)}
        charts, chart_counts = {}, {}
        for idx, d in enumerate(sorted(cells)):
            cid = f"pivot-{idx}"
            charts[cid] = [lbl for lbl in labels if lbl[0] == idx]
            chart_counts[cid] = chart_poly
    T = Torification.make(ranks, labels, charts, chart_counts)
    return T, gaussian_binomial(n, k)


def bruhat_torification(group: str):
    """Two-cell decompositions of the desk-scale groups: cells are
    T x A^d with T the diagonal torus."""
    data = {
        "SL2": (1, [1, 2], q_poly(1, 0, -1, 0)),          # q^3 - q
        "GL2": (2, [1, 2], q_poly(1, -1, -1, 1, 0)),      # q^4 - q^3 - q^2 + q
    }
    if group not in data:
        raise TorifyError(f"unsupported group {group!r}; choose from {sorted(data)}")
    base, cell_dims, N = data[group]
    ranks, labels = [], []
    for idx, d in enumerate(cell_dims):
        for seq, r in enumerate(torify_cell(d, base)):
            ranks.append(r)
            labels.append((idx, d, r, seq))
    T = Torification.make(ranks, labels)
    assert verify_torification(T, N)
    return T, N


def weyl_group_order(group: str) -> int:
    return {"SL2": 2, "GL2": 2}[group]


def gaussian_binomial(n: int, k: int) -> CountingPolynomial:
    """[n choose k]_q by the q-Pascal recurrence."""
    if not (0 <= k <= n <= 12):
        raise TorifyError("supported range is 0 <= k <= n <= 12")
    row = [q_poly(1)]
    for m in range(1, n + 1):
        new = [q_poly(1)]
        for j in range(1, m):
            qj = CountingPolynomial.make([0] * j + [1])  # q^j
            new.append(row[j - 1] + qj * row[j])
        new.append(q_poly(1))
        row = new
    return row[k]


# --- triples and the correspondence with functor-of-points records ---------------

@dataclass(frozen=True)
class GenTorifiedTriple:
    """(pointed monoid scheme, counting surrogate, per-field evaluation).

    The scheme surrogate is a counting function plus optional explicit
    point models over small fields; the evaluation data records, per q,
    the two point counts that the bijection condition equates.
    """

    mscheme: MScheme
    counting: CountingFunction
    point_models: dict = field(default=None, compare=False)
    name: str = ""

    def evaluation(self, qs=SAMPLE_PRIME_POWERS):
        from .counting import count_points

        out = []
        for q in qs:
            left = count_points(self.mscheme, q).count
            right = self.counting.evaluate(q)
            model = len(self.point_models[q]) if self.point_models and q in self.point_models else None
            out.append({"q": q, "scheme_side": left, "surrogate_side": right,
                        "model_points": model})
        return out


def f_functor(X: MScheme, name: str = "") -> GenTorifiedTriple:
    """Wrap a pointed monoid scheme as the triple with identity evaluation:
    the surrogate is the scheme's own base-extension count."""
    if not X.pointed:
        raise TorifyError("the triple functor expects a pointed monoid scheme")
    return GenTorifiedTriple(X, counting_polynomial(X), name=name)


def torification_mscheme(T: Torification) -> MScheme:
    """The disjoint union of pointed torus spectra with the torification's
    ranks: the monoid-scheme side of a torified variety."""
    from .spectrum import plus_zero

    charts = [group_monoid(d) for d in T.ranks]
    X = glue(charts, [])
    return plus_zero(X)


def triple_from_torification(T: Torification, N: CountingPolynomial,
                             point_models=None, name: str = "") -> GenTorifiedTriple:
    """Triple whose scheme side is the disjoint torus union and whose
    surrogate is the target variety's counting polynomial; valid exactly
    when the torification identity holds."""
    if not verify_torification(T, N):
        raise TorifyError("torification does not match the counting polynomial")
    X = torification_mscheme(T)
    terms = tuple(sorted((d, ()) for d in T.ranks))
    return GenTorifiedTriple(X, CountingFunction(terms), point_models, name)


@dataclass(frozen=True)
class CCRecord:
    """Functor-of-points form of a triple: per-field counts plus the
    verification of the bijection condition."""

    name: str
    counts: tuple  # tuples (q, scheme_side, surrogate_side)
    polynomial: CountingPolynomial = None
    verified: bool = True
    mismatches: tuple = ()
    scheme: MScheme = field(default=None, compare=False)
    point_models: dict = field(default=None, compare=False)


def to_cc(t: GenTorifiedTriple, qs=SAMPLE_PRIME_POWERS) -> CCRecord:
    """Evaluate the triple field-by-field and check the bijection
    condition; polynomial identity is recorded when both sides are
    polynomial (degree-bounded, so finitely many samples suffice)."""
    from .counting import count_points

    counts = []
    mismatches = []
    for q in qs:
        left = count_points(t.mscheme, q).count
        right = t.counting.evaluate(q)
        counts.append((q, left, right))
        if left != right:
            mismatches.append(f"q={q}: scheme side {left} != surrogate side {right}")
        if t.point_models and q in t.point_models:
            if len(t.point_models[q]) != right:
                mismatches.append(
                    f"q={q}: explicit model has {len(t.point_models[q])} points, "
                    f"count says {right}")
    poly = None
    scheme_cf = counting_polynomial(t.mscheme)
    if scheme_cf.is_polynomial and t.counting.is_polynomial:
        if scheme_cf.as_polynomial() != t.counting.as_polynomial():
            mismatches.append("symbolic counting polynomials differ")
        else:
            poly = scheme_cf.as_polynomial()
    return CCRecord(t.name, tuple(counts), poly, not mismatches,
                    tuple(mismatches), t.mscheme, t.point_models)


def from_cc(rec: CCRecord) -> GenTorifiedTriple:
    """The inverse representation: rebuild the triple from the record's
    geometric representative; round trip is the identity on stored data."""
    if rec.scheme is None:
        raise TorifyError("record lacks its geometric representative")
    counting = CountingFunction.of_scheme(rec.scheme)
    return GenTorifiedTriple(rec.scheme, counting, rec.point_models, rec.name)


def is_torified_cc(t: GenTorifiedTriple) -> bool:
    """True iff every stalk is integral with torsion-free units and every
    connected component is the spectrum of a group with zero, i.e. the
    scheme side is a disjoint union of split tori."""
    X = t.mscheme
    for pt in X.points:
        stalk = X.stalk(pt)
        if isinstance(stalk, AffineMonoid):
            if stalk.units().invariant_factors:
                return False
        else:
            if not stalk.is_integral or stalk.units().invariant_factors:
                return False
    for component in X.connected_components:
        if len(component) != 1:
            return False
        stalk = X.stalk(component[0])
        if isinstance(stalk, AffineMonoid):
            if not stalk.is_group:
                return False
        else:
            if set(stalk.unit_elements) != {a for a in stalk.elements if a != stalk.zero}:
                return False
    return True


def f1_points(t: GenTorifiedTriple) -> int:
    """Number of minimal-rank points of the scheme side.

    Each minimal-rank point with a free unit group admits exactly one
    strong morphism from the base point (homs from a free group to the
    trivial group form a singleton); torsion unit groups are refused.
    """
    X = t.mscheme
    for pt in X.points:
        if X.stalk(pt).units().invariant_factors:
            raise TorifyError(
                "stalk unit group has torsion; minimal-rank point counting "
                "is only defined for split-torus stalks here")
    return len(minimal_rank_points(X))

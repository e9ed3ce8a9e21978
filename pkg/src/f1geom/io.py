"""Reading and writing the description file formats.

Every input is JSON with a ``kind`` discriminator: monoid, table_monoid,
fan, torification, or cells.  Parsing returns the corresponding typed
object; syntax errors carry the line/column, semantic errors the
offending entry.  Emission is canonical (sorted keys) so that emit then
re-parse is the identity.
"""
from __future__ import annotations

import json

from .fans import Fan, make_fan
from .monoid import AffineMonoid, TableMonoid
from .torified import CellComplex, Torification
from .zeta import CountingPolynomial


class ParseError(ValueError):
    def __init__(self, message, line=None, column=None):
        self.line = line
        self.column = column
        where = f" (line {line}, column {column})" if line is not None else ""
        super().__init__(f"{message}{where}")


class ValidationError(ValueError):
    pass


def parse_input(path):
    """Read one description file into its typed object."""
    with open(path) as fh:
        text = fh.read()
    try:
        data = json.loads(text)
    except json.JSONDecodeError as e:
        raise ParseError(f"invalid JSON in {path}: {e.msg}", e.lineno, e.colno) from e
    return object_from_dict(data)


def object_from_dict(data):
    if not isinstance(data, dict) or "kind" not in data:
        raise ValidationError("input must be an object with a 'kind' field")
    kind = data["kind"]
    builders = {
        "monoid": _monoid_from_dict,
        "table_monoid": _table_monoid_from_dict,
        "fan": _fan_from_dict,
        "torification": _torification_from_dict,
        "cells": _cells_from_dict,
    }
    if kind not in builders:
        raise ValidationError(f"unknown kind {kind!r}; expected one of {sorted(builders)}")
    return builders[kind](data)


def _int_list(value, where):
    if not isinstance(value, list) or not all(isinstance(x, int) for x in value):
        raise ValidationError(f"{where} must be a list of integers")
    return value


def _monoid_from_dict(data) -> AffineMonoid:
    rank = data.get("ambient_rank")
    if not isinstance(rank, int) or rank < 0:
        raise ValidationError("'ambient_rank' must be a nonnegative integer")
    torsion = _int_list(data.get("torsion", []), "'torsion'")
    gens = data.get("generators", [])
    if not isinstance(gens, list):
        raise ValidationError("'generators' must be a list of vectors")
    width = rank + len(torsion)
    for i, g in enumerate(gens):
        _int_list(g, f"generators[{i}]")
        if len(g) != width:
            raise ValidationError(
                f"generators[{i}] has length {len(g)}, expected {width}")
    return AffineMonoid.make(rank, gens, torsion=torsion,
                             pointed=bool(data.get("pointed", False)))


def _table_monoid_from_dict(data) -> TableMonoid:
    elements = data.get("elements")
    if not isinstance(elements, list) or not elements:
        raise ValidationError("'elements' must be a nonempty list")
    table = data.get("table")
    n = len(elements)
    if not isinstance(table, list) or len(table) != n or \
            any(not isinstance(row, list) or len(row) != n for row in table):
        raise ValidationError(f"'table' must be a {n}x{n} matrix of elements")
    mapping = {}
    for i, a in enumerate(elements):
        for j, b in enumerate(elements):
            mapping[(a, b)] = table[i][j]
    identity = data.get("identity", elements[0])
    return TableMonoid.make(elements, mapping, identity=identity,
                            zero=data.get("zero"))


def _fan_from_dict(data) -> Fan:
    rank = data.get("rank")
    if not isinstance(rank, int) or rank < 1:
        raise ValidationError("'rank' must be a positive integer")
    rays = data.get("rays", [])
    for i, r in enumerate(rays):
        _int_list(r, f"rays[{i}]")
        if len(r) != rank:
            raise ValidationError(f"rays[{i}] has length {len(r)}, expected {rank}")
    cones = data.get("cones")
    if not isinstance(cones, list):
        raise ValidationError("'cones' must be a list of ray index lists")
    for i, c in enumerate(cones):
        _int_list(c, f"cones[{i}]")
    return make_fan(rank, rays, cones)


def _torification_from_dict(data) -> tuple:
    ranks = _int_list(data.get("ranks", []), "'ranks'")
    counting = None
    if "counting" in data:
        counting = CountingPolynomial.make(_int_list(data["counting"], "'counting'"))
    charts = None
    chart_counts = None
    if "charts" in data:
        charts, chart_counts = {}, {}
        if not isinstance(data["charts"], dict):
            raise ValidationError("'charts' must map chart ids to records")
        for cid, recdata in data["charts"].items():
            charts[cid] = [tuple(t) if isinstance(t, list) else t
                           for t in recdata["tori"]]
            chart_counts[cid] = CountingPolynomial.make(
                _int_list(recdata["counting"], f"charts[{cid}].counting"))
    labels = None
    if "labels" in data:
        labels = [tuple(l) if isinstance(l, list) else l for l in data["labels"]]
    T = Torification.make(ranks, labels, charts, chart_counts)
    return T, counting


def _cells_from_dict(data) -> CellComplex:
    cells = data.get("cells")
    if not isinstance(cells, list):
        raise ValidationError("'cells' must be a list of [dim, base] pairs")
    for i, c in enumerate(cells):
        _int_list(c, f"cells[{i}]")
        if len(c) != 2:
            raise ValidationError(f"cells[{i}] must be a [dim, base] pair")
    return CellComplex.make(cells)


# --- emission --------------------------------------------------------------------

def monoid_to_dict(A: AffineMonoid) -> dict:
    return {
        "kind": "monoid",
        "ambient_rank": A.ambient_rank,
        "torsion": list(A.torsion),
        "generators": [list(g) for g in A.generators],
        "pointed": A.pointed,
    }


def table_monoid_to_dict(M: TableMonoid) -> dict:
    out = {
        "kind": "table_monoid",
        "elements": list(M.elements),
        "table": [[M.op(a, b) for b in M.elements] for a in M.elements],
        "identity": M.identity,
    }
    if M.zero is not None:
        out["zero"] = M.zero
    return out


def fan_to_dict(fan: Fan) -> dict:
    return {
        "kind": "fan",
        "rank": fan.rank,
        "rays": [list(r) for r in fan.rays],
        "cones": [sorted(c) for c in fan.sorted_cones()],
    }


def torification_to_dict(T: Torification, counting: CountingPolynomial = None) -> dict:
    out = {
        "kind": "torification",
        "ranks": list(T.ranks),
        "labels": [list(l) if isinstance(l, tuple) else l for l in T.labels],
    }
    if counting is not None:
        out["counting"] = list(counting.coefficients)
    if T.charts is not None:
        out["charts"] = {
            str(cid): {
                "tori": [list(t) if isinstance(t, tuple) else t for t in tori],
                "counting": list(T.chart_counts[cid].coefficients),
            }
            for cid, tori in T.charts.items()
        }
    return out


def cells_to_dict(c: CellComplex) -> dict:
    return {"kind": "cells", "cells": [list(p) for p in c.cells]}


def object_to_dict(obj, counting=None) -> dict:
    if isinstance(obj, AffineMonoid):
        return monoid_to_dict(obj)
    if isinstance(obj, TableMonoid):
        return table_monoid_to_dict(obj)
    if isinstance(obj, Fan):
        return fan_to_dict(obj)
    if isinstance(obj, Torification):
        return torification_to_dict(obj, counting)
    if isinstance(obj, CellComplex):
        return cells_to_dict(obj)
    raise ValidationError(f"cannot emit {obj!r}")


def emit(obj, path, counting=None):
    with open(path, "w") as fh:
        json.dump(object_to_dict(obj, counting), fh, indent=2, sort_keys=True)
        fh.write("\n")

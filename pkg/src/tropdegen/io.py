"""JSON (de)serialization with schema validation.

Rationals travel as strings "p/q" (or "p"); integers outside the signed
64-bit range travel as decimal strings. Schema violations raise
:class:`SchemaError` carrying a JSON pointer to the offending value.
"""

from __future__ import annotations

import json
from fractions import Fraction
from functools import lru_cache
from importlib import resources
from typing import Any

import jsonschema

from .curves import DualGraphCurve
from .errors import SchemaError
from .gamma import GammaCover
from .lattice import format_rational, parse_rational
from .polyhedra import Polyhedron, PolyhedralComplex, validate_complex
from .refine import RefinementReport
from .spectral import SSPage, Summand
from .tropical import ValuedPolynomial, WeightedTropicalComplex

_INT64 = 2 ** 63


@lru_cache(maxsize=None)
def load_schema(name: str) -> dict:
    text = resources.files("tropdegen").joinpath("schemas", f"{name}.json").read_text()
    return json.loads(text)


def _pointer(path) -> str:
    parts = [str(p).replace("~", "~0").replace("/", "~1") for p in path]
    return "/" + "/".join(parts) if parts else ""


def check_schema(payload: Any, name: str) -> None:
    validator = jsonschema.Draft202012Validator(load_schema(name))
    errors = sorted(validator.iter_errors(payload), key=lambda e: (list(map(str, e.absolute_path)), e.message))
    if errors:
        err = jsonschema.exceptions.best_match(errors)
        raise SchemaError(err.message, _pointer(err.absolute_path))


def parse_int(value, path="") -> int:
    if isinstance(value, bool):
        raise SchemaError(f"expected integer, got {value!r}", path)
    if isinstance(value, int):
        return value
    if isinstance(value, str):
        try:
            return int(value)
        except ValueError:
            pass
    raise SchemaError(f"expected integer, got {value!r}", path)


def format_int(n: int):
    n = int(n)
    return n if -_INT64 <= n < _INT64 else str(n)


def dumps(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2) + "\n"


# ---------------------------------------------------------------------------
# complex.json
# ---------------------------------------------------------------------------

def parse_complex(payload: dict, *, check_complete: bool = False, fan: bool = False) -> PolyhedralComplex:
    check_schema(payload, "complex")
    return _complex_from(payload, check_complete=check_complete, fan=fan)


def _complex_from(payload, *, check_complete=False, fan=False):
    n = payload["ambient_dim"]
    points = []
    for i, p in enumerate(payload["points"]):
        if len(p) != n:
            raise SchemaError(f"point has {len(p)} coordinates, expected {n}", f"/points/{i}")
        points.append(tuple(parse_rational(x, f"/points/{i}/{k}") for k, x in enumerate(p)))
    rays = []
    for i, r in enumerate(payload.get("rays", [])):
        if len(r) != n:
            raise SchemaError(f"ray has {len(r)} coordinates, expected {n}", f"/rays/{i}")
        rays.append(tuple(parse_int(x, f"/rays/{i}/{k}") for k, x in enumerate(r)))
    cells = []
    for i, c in enumerate(payload["cells"]):
        base = f"/cells/{i}"
        for k, v in enumerate(c["vertices"]):
            if v >= len(points):
                raise SchemaError(f"unknown point id {v}", f"{base}/vertices/{k}")
        for k, v in enumerate(c.get("rays", [])):
            if v >= len(rays):
                raise SchemaError(f"unknown ray id {v}", f"{base}/rays/{k}")
        lin = []
        for k, l in enumerate(c.get("lineality", [])):
            if len(l) != n:
                raise SchemaError(f"lineality vector has {len(l)} coordinates, expected {n}", f"{base}/lineality/{k}")
            lin.append(tuple(parse_int(x, f"{base}/lineality/{k}/{m}") for m, x in enumerate(l)))
        P = Polyhedron([points[v] for v in c["vertices"]], [rays[v] for v in c.get("rays", [])], lin,
                       ambient_dim=n)
        if P in cells:
            raise SchemaError(f"cell repeats cell {cells.index(P)}", base)
        cells.append(P)
    return validate_complex(cells, add_faces=True, check_complete=check_complete, ambient_dim=n, fan=fan)


def serialize_complex(cx: PolyhedralComplex) -> dict:
    points = sorted({v for c in cx.cells for v in c.vertices})
    rays = sorted({r for c in cx.cells for r in c.rays})
    pid = {p: i for i, p in enumerate(points)}
    rid = {r: i for i, r in enumerate(rays)}
    cells = []
    for c in cx.cells:
        d = {"vertices": [pid[v] for v in c.vertices]}
        if c.rays:
            d["rays"] = [rid[r] for r in c.rays]
        if c.lineality:
            d["lineality"] = [[format_int(x) for x in l] for l in c.lineality]
        cells.append(d)
    return {
        "ambient_dim": cx.ambient_dim,
        "points": [[format_rational(x) for x in p] for p in points],
        "rays": [[format_int(x) for x in r] for r in rays],
        "cells": cells,
    }


# ---------------------------------------------------------------------------
# weighted complexes and gamma.json
# ---------------------------------------------------------------------------

def _weights_from(payload, ncells):
    out = {}
    for k, w in payload.get("weights", {}).items():
        if int(k) >= ncells:
            raise SchemaError(f"weight for unknown cell {k}", f"/weights/{k}")
        out[int(k)] = w
    return out


def parse_weighted(payload: dict) -> WeightedTropicalComplex:
    check_schema(payload, "weighted")
    cx = _complex_from({k: v for k, v in payload.items() if k != "weights"})
    return WeightedTropicalComplex(cx, _weights_from(payload, len(cx)))


def serialize_weighted(T: WeightedTropicalComplex) -> dict:
    out = serialize_complex(T.base)
    out["weights"] = {str(k): T.weights[k] for k in sorted(T.weights)}
    return out


def parse_gamma(payload: dict, *, check_weights: bool = True) -> GammaCover:
    check_schema(payload, "gamma")
    keys = ("ambient_dim", "points", "rays", "cells")
    cx = _complex_from({k: payload[k] for k in keys if k in payload})
    weights = _weights_from(payload, len(cx))
    comps = {}
    for k, names in payload["components"].items():
        if int(k) >= len(cx):
            raise SchemaError(f"components for unknown cell {k}", f"/components/{k}")
        comps[int(k)] = tuple(names)
    assign = {}
    for i, a in enumerate(payload["assignments"]):
        key = (a["cell"], a["component"], a["facet"])
        if key in assign:
            raise SchemaError("duplicate assignment", f"/assignments/{i}")
        assign[key] = a["image"]
    return GammaCover(cx, weights, comps, assign, check_weights=check_weights)


def serialize_gamma(cover: GammaCover) -> dict:
    out = serialize_complex(cover.base)
    out["weights"] = {str(k): cover.weights[k] for k in sorted(cover.weights)}
    out["components"] = {str(k): list(cover.components[k]) for k in sorted(cover.components)}
    out["assignments"] = [{"cell": P, "component": Y, "facet": F, "image": Z}
                          for (P, Y, F), Z in sorted(cover.assignments.items())]
    return out


# ---------------------------------------------------------------------------
# polynomial.json, curve.json
# ---------------------------------------------------------------------------

def parse_polynomial(payload: dict) -> ValuedPolynomial:
    check_schema(payload, "polynomial")
    n = payload["n"]
    terms = {}
    labels = {}
    for i, t in enumerate(payload["terms"]):
        if len(t["exp"]) != n:
            raise SchemaError(f"exponent has length {len(t['exp'])}, expected {n}", f"/terms/{i}/exp")
        a = tuple(parse_int(x, f"/terms/{i}/exp/{k}") for k, x in enumerate(t["exp"]))
        if a in terms:
            raise SchemaError(f"exponent {list(a)} appears twice", f"/terms/{i}/exp")
        terms[a] = parse_rational(t["val"], f"/terms/{i}/val")
        if "label" in t:
            labels[a] = t["label"]
    return ValuedPolynomial(n, terms, labels)


def serialize_polynomial(f: ValuedPolynomial) -> dict:
    terms = []
    for a in sorted(f.terms):
        t = {"exp": [format_int(x) for x in a], "val": format_rational(f.terms[a])}
        if a in f.labels:
            t["label"] = f.labels[a]
        terms.append(t)
    return {"n": f.n, "terms": terms}


def parse_curve(payload: dict) -> DualGraphCurve:
    check_schema(payload, "curve")
    edges = []
    for i, e in enumerate(payload["edges"]):
        a, b = e["ends"]
        edges.append((a, b, parse_rational(e["length"], f"/edges/{i}/length")))
    return DualGraphCurve([v["genus"] for v in payload["vertices"]], edges)


def serialize_curve(G: DualGraphCurve) -> dict:
    return {
        "vertices": [{"genus": g} for g in G.genera],
        "edges": [{"ends": [e.tail, e.head], "length": format_rational(e.length)} for e in G.edges],
    }


# ---------------------------------------------------------------------------
# page.json
# ---------------------------------------------------------------------------

def serialize_page(page: SSPage) -> dict:
    entries = [{"p": s.p, "q": s.q, "dim": s.dim, "weight": s.weight, "twist": s.twist, "kind": s.kind}
               for s in page.summands]
    diffs = [{"row": q, "from": p, "to": p + 1, "matrix": [[format_int(x) for x in row] for row in M]}
             for (q, p), M in sorted(page.differentials.items())]
    middle = [q for q in range(2 * page.d + 1) if q not in page.extreme_rows()]
    return {"d": page.d, "entries": entries, "differentials": diffs, "e2_upper_bound_rows": middle}


def parse_page(payload: dict) -> SSPage:
    check_schema(payload, "page")
    d = payload["d"]
    summands = []
    seen = set()
    for k, e in enumerate(payload["entries"]):
        p, q, tw = e["p"], e["q"], e["twist"]
        if (p, q, tw) in seen:
            raise SchemaError("entry repeats (p, q, twist)", f"/entries/{k}")
        seen.add((p, q, tw))
        if e["weight"] != q:
            raise SchemaError("weight label must equal q", f"/entries/{k}/weight")
        r = -p
        s = -tw - r
        j = 2 * s + r
        i = q - 2 * (r + s)
        if s < max(0, -r) or not 0 <= j <= d or not 0 <= i <= 2 * (d - j):
            raise SchemaError("entry does not index a summand of the page", f"/entries/{k}")
        if "kind" in e:
            kind = e["kind"]
        elif i in (0, 2 * (d - j)):
            kind = "synthesized"
        else:
            kind = "data"
        summands.append(Summand(p, q, r, s, j, i, e["dim"], kind))
    page = SSPage(d, summands)
    for k, m in enumerate(payload["differentials"]):
        path = f"/differentials/{k}"
        q, p = m["row"], m["from"]
        if m["to"] != p + 1:
            raise SchemaError("differentials go from column p to p + 1", path)
        if q not in page.extreme_rows():
            raise SchemaError(f"row {q} is not an extreme row", f"{path}/row")
        M = [[parse_int(x, f"{path}/matrix/{a}/{b}") for b, x in enumerate(row)] for a, row in enumerate(m["matrix"])]
        if len(M) != page.dim(p + 1, q) or any(len(row) != page.dim(p, q) for row in M):
            raise SchemaError(f"matrix must be {page.dim(p + 1, q)} x {page.dim(p, q)}", f"{path}/matrix")
        if (q, p) in page.differentials:
            raise SchemaError("differential given twice", path)
        page.differentials[(q, p)] = M
    return page


# ---------------------------------------------------------------------------
# refinement reports and small auxiliary payloads
# ---------------------------------------------------------------------------

def serialize_report(rep: RefinementReport) -> dict:
    vec = lambda v: [format_int(x) for x in v]
    return {
        "d": rep.d,
        "base_cones": [[vec(r) for r in c] for c in rep.base_cones],
        "stellar_steps": [{"cone": [vec(r) for r in c], "point": vec(p)} for c, p in rep.stellar_steps],
        "preserved_recession": rep.preserved_recession,
    }


def parse_report(payload: dict) -> RefinementReport:
    check_schema(payload, "report")
    vec = lambda v, path: tuple(parse_int(x, f"{path}/{k}") for k, x in enumerate(v))
    base = [[vec(r, f"/base_cones/{i}/{j}") for j, r in enumerate(c)] for i, c in enumerate(payload["base_cones"])]
    steps = [([vec(r, f"/stellar_steps/{i}/cone/{j}") for j, r in enumerate(s["cone"])],
              vec(s["point"], f"/stellar_steps/{i}/point")) for i, s in enumerate(payload["stellar_steps"])]
    return RefinementReport(payload["d"], base, steps, payload["preserved_recession"])


def parse_simplicial(payload: dict) -> list[tuple[int, ...]]:
    check_schema(payload, "simplicial")
    return [tuple(s) for s in payload["simplices"]]


def serialize_simplicial(simplices) -> dict:
    return {"simplices": [list(s) for s in simplices]}


def parse_correspondence(payload: dict) -> dict:
    check_schema(payload, "correspondence")
    out = {}
    for i, m in enumerate(payload["map"]):
        key = (m["cell"], m["component"])
        if key in out:
            raise SchemaError("cell mapped twice", f"/map/{i}")
        out[key] = (m["target_cell"], m["target_component"])
    return out


def serialize_correspondence(corr: dict) -> dict:
    return {"map": [{"cell": c, "component": y, "target_cell": tc, "target_component": ty}
                    for (c, y), (tc, ty) in sorted(corr.items())]}


def parse_matrix(payload: dict) -> list[list[int]]:
    check_schema(payload, "matrix")
    rows = [[parse_int(x, f"/matrix/{i}/{j}") for j, x in enumerate(r)] for i, r in enumerate(payload["matrix"])]
    if len({len(r) for r in rows}) > 1:
        raise SchemaError("matrix rows have different lengths", "/matrix")
    return rows


def serialize_matrix(M) -> dict:
    return {"matrix": [[format_int(x) for x in row] for row in M]}


def parse_cycles(payload: dict) -> tuple[dict, dict]:
    check_schema(payload, "cycles")
    out = []
    for name in ("z1", "z2"):
        z = {}
        for i, t in enumerate(payload[name]):
            key = (t["cell"], t["component"])
            if key in z:
                raise SchemaError("term given twice", f"/{name}/{i}")
            z[key] = parse_int(t["coeff"], f"/{name}/{i}/coeff")
        out.append(z)
    return out[0], out[1]


def serialize_cycles(z1: dict, z2: dict) -> dict:
    return {name: [{"cell": c, "component": y, "coeff": format_int(x)} for (c, y), x in sorted(z.items())]
            for name, z in (("z1", z1), ("z2", z2))}


def parse_betti(payload: dict) -> dict[tuple[int, int], int]:
    check_schema(payload, "betti")
    out = {}
    for i, b in enumerate(payload["betti"]):
        key = (b["stratum"], b["degree"])
        if key in out:
            raise SchemaError("entry given twice", f"/betti/{i}")
        out[key] = b["dim"]
    return out


def serialize_betti(betti: dict) -> dict:
    return {"betti": [{"stratum": r, "degree": k, "dim": n} for (r, k), n in sorted(betti.items())]}


def rational_str(q: Fraction) -> str:
    return format_rational(q)

"""Command line front end.

Every command reads JSON, writes one JSON document (sorted keys) to stdout
or ``--out``, and exits 0. Input and validation errors exit 1, unsupported
requests exit 2; both print an ``{"error": ...}`` object.

Tropical conventions are min-plus: Trop(f)(w) = min(val_a + <a, w>).
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import io
from .curves import betti_bound_check, curve_ss, tropical_jacobian, val_j
from .errors import SchemaError, TropDegenError, UnsupportedRequest
from .gamma import build_gamma, functoriality_check, gamma_refinement_check
from .homology import homology
from .lattice import format_rational
from .polyhedra import cone_over, rescale_to_integral, slice_fan
from .refine import nc_decomposition
from .spectral import monodromy_filtration, rz_e1_dimensions, volume_pairing
from .tropical import balancing_check, tropical_hypersurface


def _read(path):
    try:
        text = Path(path).read_text()
    except OSError as e:
        raise SchemaError(f"cannot read {path}: {e.strerror}", "")
    try:
        return json.loads(text)
    except json.JSONDecodeError as e:
        raise SchemaError(f"{path} is not JSON: {e.msg} at line {e.lineno}", "")


def _ints(text):
    try:
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise SchemaError(f"expected comma-separated integers, got {text!r}", "")


def _check(res):
    return {"ok": res.ok, "reasons": list(res.reasons)}


def cmd_validate(a):
    payload = _read(a.input)
    parsers = {
        "complex": io.parse_complex, "weighted": io.parse_weighted, "gamma": io.parse_gamma,
        "polynomial": io.parse_polynomial, "curve": io.parse_curve, "page": io.parse_page,
        "report": io.parse_report, "simplicial": io.parse_simplicial, "correspondence": io.parse_correspondence,
        "matrix": io.parse_matrix, "cycles": io.parse_cycles, "betti": io.parse_betti,
    }
    parsers[a.schema](payload)
    return {"valid": True, "schema": a.schema}


def cmd_cone(a):
    fan, deco = cone_over(io.parse_complex(_read(a.input)))
    return {"fan": io.serialize_complex(fan),
            "decoration": {str(k): v[0] for k, v in sorted(deco.tags.items())}}


def cmd_slice(a):
    return io.serialize_complex(slice_fan(io.parse_complex(_read(a.input), fan=True), a.height))


def cmd_rescale(a):
    d, cx = rescale_to_integral(io.parse_complex(_read(a.input)))
    return {"d": d, "complex": io.serialize_complex(cx)}


def cmd_nc(a):
    d, cx, rep = nc_decomposition(io.parse_complex(_read(a.input)), max_rounds=a.max_rounds)
    return {"d": d, "complex": io.serialize_complex(cx), "report": io.serialize_report(rep)}


def cmd_hypersurface(a):
    return io.serialize_weighted(tropical_hypersurface(io.parse_polynomial(_read(a.input))))


def cmd_balance(a):
    rep = balancing_check(io.parse_weighted(_read(a.input)))
    return {"balanced": rep.balanced, "violations": rep.violations}


def cmd_gamma(a):
    g = build_gamma(io.parse_gamma(_read(a.input)))
    full, bounded = g.homology(), g.bounded_homology()
    return {
        "cells": [{"cell": P, "component": Y, "dim": g.dim_of((P, Y))} for P, Y in g.cells],
        "dim": g.dim,
        "homology": full.to_dict(),
        "bounded_homology": bounded.to_dict(),
        "homotopy_flag": full.betti != bounded.betti,
        "euler_characteristic": g.euler_characteristic(),
    }


def cmd_refine_check(a):
    coarse = io.parse_gamma(_read(a.coarse))
    fine = io.parse_gamma(_read(a.fine))
    corr = io.parse_correspondence(_read(a.map)) if a.map else None
    return _check(gamma_refinement_check(coarse, fine, corr))


def cmd_functor_check(a):
    A = io.parse_matrix(_read(a.matrix))
    src = io.parse_gamma(_read(a.source))
    tgt = io.parse_gamma(_read(a.target))
    return _check(functoriality_check(A, src, tgt, io.parse_correspondence(_read(a.map))))


def cmd_homology(a):
    if a.gamma:
        g = build_gamma(io.parse_gamma(_read(a.gamma)))
        return g.bounded_homology().to_dict() if a.bounded else g.homology().to_dict()
    return homology(io.parse_simplicial(_read(a.input))).to_dict()


def cmd_rz(a):
    if a.middle_differentials:
        raise UnsupportedRequest("middle-row differentials need the geometry of the strata, not only their dual complex")
    g = build_gamma(io.parse_gamma(_read(a.gamma)))
    betti = io.parse_betti(_read(a.betti)) if a.betti else None
    page = rz_e1_dimensions(g, betti, default_middle=None if a.strict else 0)
    out = io.serialize_page(page)
    out["rows"] = {str(q): list(page.row(q)) for q in sorted(page.rows())}
    out["e2_extreme_rows"] = {str(q): list(page.e2_row(q)) for q in page.extreme_rows()}
    return out


def cmd_pairing(a):
    g = build_gamma(io.parse_gamma(_read(a.gamma)))
    z1, z2 = io.parse_cycles(_read(a.cycles))
    return {"pairing": format_rational(volume_pairing(g, z1, z2))}


def cmd_filtration(a):
    f = monodromy_filtration(_ints(a.blocks))
    return {"r": f.r, "blocks": list(f.blocks), "gr": list(f.gr_vector()),
            "dims": {str(i): f.dims[i] for i in sorted(f.dims)}, "axioms": f.axioms, "ok": f.ok}


def cmd_curve(a):
    rep = curve_ss(io.parse_curve(_read(a.input)))
    return {
        "page": io.serialize_page(rep.page),
        "graded_h1": list(rep.graded_h1),
        "total_h1": rep.total_h1,
        "cycle_basis": rep.cycle_basis,
        "gram": [[format_rational(x) for x in row] for row in rep.gram],
        "filtration_gr": list(rep.filtration.gr_vector()),
        "betti_gamma": list(rep.betti_gamma),
        "betti_x": list(rep.betti_x),
        "euler_rows_agree": rep.euler_rows_agree,
    }


def cmd_jacobian(a):
    J = tropical_jacobian(io.parse_curve(_read(a.input)))
    return {"dimension": J.dimension, "cycle_basis": J.cycle_basis,
            "gram": [[format_rational(x) for x in row] for row in J.gram],
            "positive_definite": J.positive_definite, "volume": format_rational(J.volume)}


def cmd_valj(a):
    return {"val_j": format_rational(val_j(io.parse_curve(_read(a.input))))}


def cmd_bound(a):
    if a.input:
        rep = curve_ss(io.parse_curve(_read(a.input)))
        bg, bx = rep.betti_gamma, rep.betti_x
    elif a.b_gamma is not None and a.b_x is not None:
        bg, bx = _ints(a.b_gamma), _ints(a.b_x)
        if len(bg) != len(bx):
            raise SchemaError("--b-gamma and --b-x must have the same length", "")
    else:
        raise SchemaError("give --in or both --b-gamma and --b-x", "")
    checks = betti_bound_check(bg, bx)
    return {"ok": all(c.ok for c in checks),
            "degrees": [{"r": c.r, "b_gamma": c.b_gamma, "b_x": c.b_x, "bound": format_rational(c.bound),
                         "ok": c.ok} for c in checks]}


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="tropdegen", description=__doc__,
                                formatter_class=argparse.RawDescriptionHelpFormatter)
    sub = p.add_subparsers(dest="command", required=True)

    def add(name, fn, help, inp=True):
        s = sub.add_parser(name, help=help)
        if inp:
            s.add_argument("--in", dest="input", required=True, help="input JSON file")
        s.add_argument("--out", help="write the result here instead of stdout")
        s.set_defaults(fn=fn)
        return s

    s = add("validate", cmd_validate, "check a file against a schema")
    s.add_argument("--schema", required=True, choices=["complex", "weighted", "gamma", "polynomial", "curve", "page",
                                                        "report", "simplicial", "correspondence", "matrix",
                                                        "cycles", "betti"])
    add("cone", cmd_cone, "fan over a complex in one more dimension")
    s = add("slice", cmd_slice, "slice a fan at a height")
    s.add_argument("--height", type=int, default=1)
    add("rescale", cmd_rescale, "smallest integer dilation making all vertices integral")
    s = add("nc", cmd_nc, "unimodular (normal crossings) refinement of a complex")
    s.add_argument("--max-rounds", type=int, default=8)
    add("hypersurface", cmd_hypersurface, "tropical hypersurface of a valued polynomial (min convention)")
    add("balance", cmd_balance, "check the balancing condition of a weighted complex")
    add("gamma", cmd_gamma, "build the parameterizing complex of a cover")
    s = add("refine-check", cmd_refine_check, "compare the parameterizing complexes of a cover and a refinement",
            inp=False)
    s.add_argument("--coarse", required=True)
    s.add_argument("--fine", required=True)
    s.add_argument("--map", help="correspondence JSON; defaults to carrier cell, same component name")
    s = add("functor-check", cmd_functor_check, "check a map of parameterizing complexes over a linear map",
            inp=False)
    s.add_argument("--matrix", required=True)
    s.add_argument("--source", required=True)
    s.add_argument("--target", required=True)
    s.add_argument("--map", required=True)
    s = add("homology", cmd_homology, "integral homology of a simplicial complex or a parameterizing complex",
            inp=False)
    s.add_argument("--in", dest="input")
    s.add_argument("--gamma")
    s.add_argument("--bounded", action="store_true", help="with --gamma: homology of the bounded cells only")
    s = add("rz", cmd_rz, "E_1 page of the weight spectral sequence with its extreme-row differentials", inp=False)
    s.add_argument("--gamma", required=True)
    s.add_argument("--betti", help="Betti numbers of the strata for the middle degrees")
    s.add_argument("--strict", action="store_true", help="fail instead of assuming 0 for missing middle data")
    s.add_argument("--middle-differentials", action="store_true", help="request middle-row differentials (unsupported)")
    s = add("pairing", cmd_pairing, "volume pairing of two top-degree cycles", inp=False)
    s.add_argument("--gamma", required=True)
    s.add_argument("--cycles", required=True)
    s = add("filtration", cmd_filtration, "monodromy filtration of a nilpotent map with given Jordan blocks",
            inp=False)
    s.add_argument("--blocks", required=True, help="comma-separated Jordan block sizes")
    add("curve", cmd_curve, "weight spectral sequence of a semistable curve from its dual graph")
    add("jacobian", cmd_jacobian, "tropical Jacobian of a dual graph")
    add("valj", cmd_valj, "valuation of the j-invariant of a genus-one curve with multiplicative reduction")
    s = add("bound", cmd_bound, "check b_r(Gamma) <= b_r(X) / (r + 1)", inp=False)
    s.add_argument("--in", dest="input", help="curve JSON")
    s.add_argument("--b-gamma")
    s.add_argument("--b-x")
    return p


def _emit(obj, out):
    text = io.dumps(obj)
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    if args.command == "homology" and not (args.input or args.gamma):
        _emit({"error": {"kind": "SchemaError", "message": "give --in or --gamma"}}, None)
        return 1
    try:
        result = args.fn(args)
    except UnsupportedRequest as e:
        _emit({"error": e.to_dict()}, None)
        return 2
    except TropDegenError as e:
        _emit({"error": e.to_dict()}, None)
        return 1
    except ValueError as e:
        _emit({"error": {"kind": "ValueError", "message": str(e)}}, None)
        return 1
    _emit(result, args.out)
    return 0


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())

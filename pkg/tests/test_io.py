import json
import random
from fractions import Fraction as Q

import pytest

from conftest import P, load, random_cover, random_graph, random_poly, random_simplicial_complex, segment_cover
from tropdegen import io
from tropdegen.curves import curve_page
from tropdegen.errors import SchemaError
from tropdegen.gamma import build_gamma
from tropdegen.polyhedra import cone, make_complex
from tropdegen.refine import nc_decomposition
from tropdegen.spectral import e1_from_strata, rz_e1_dimensions
from tropdegen.tropical import tropical_hypersurface


def same_json(a, b):
    return json.dumps(a, sort_keys=True) == json.dumps(b, sort_keys=True)


def test_complex_round_trip(complex_corpus):
    rng = random.Random(0)
    cxs = list(complex_corpus.values()) + [random_simplicial_complex(rng) for _ in range(5)]
    for cx in cxs:
        payload = io.serialize_complex(cx)
        back = io.parse_complex(json.loads(io.dumps(payload)))
        assert back.cells == cx.cells  # same cells, same indices
        assert same_json(io.serialize_complex(back), payload)


def test_weighted_round_trip():
    rng = random.Random(1)
    for _ in range(10):
        T = tropical_hypersurface(random_poly(rng))
        payload = io.serialize_weighted(T)
        back = io.parse_weighted(payload)
        assert back.base.cells == T.base.cells and back.weights == T.weights


def test_gamma_round_trip():
    rng = random.Random(2)
    for _ in range(10):
        cov = random_cover(rng, random_simplicial_complex(rng))
        payload = io.serialize_gamma(cov)
        back = io.parse_gamma(json.loads(io.dumps(payload)))
        assert back.base.cells == cov.base.cells
        assert (back.weights, back.components, back.assignments) == (cov.weights, cov.components, cov.assignments)
        assert same_json(io.serialize_gamma(back), payload)


def test_polynomial_round_trip():
    rng = random.Random(3)
    for _ in range(20):
        f = random_poly(rng)
        assert io.parse_polynomial(io.serialize_polynomial(f)) == f


def test_curve_round_trip():
    rng = random.Random(4)
    for _ in range(20):
        G = random_graph(rng)
        back = io.parse_curve(io.serialize_curve(G))
        assert back.genera == G.genera and back.edges == G.edges


def test_page_round_trip():
    rng = random.Random(5)
    pages = [curve_page(random_graph(rng)) for _ in range(10)]
    pages.append(rz_e1_dimensions(build_gamma(segment_cover([0, 1], [("a", "b")])), default_middle=0))
    pages.append(e1_from_strata(2, {0: 3, 1: 3, 2: 1}, {(0, 1): 0, (0, 2): 5, (0, 3): 0, (1, 1): 2}))
    for page in pages:
        payload = io.serialize_page(page)
        assert io.parse_page(json.loads(io.dumps(payload))) == page


def test_report_round_trip(complex_corpus):
    for name in ("cone13", "half_triangle", "square", "shifted_quadrant"):
        rep = nc_decomposition(complex_corpus[name])[2]
        back = io.parse_report(io.serialize_report(rep))
        assert back.d == rep.d and back.preserved_recession == rep.preserved_recession
        assert back.replay() == rep.replay()
        assert same_json(io.serialize_report(back), io.serialize_report(rep))


def test_small_payloads():
    assert io.parse_simplicial({"simplices": [[0, 1], [1, 2]]}) == [(0, 1), (1, 2)]
    corr = io.parse_correspondence({"map": [{"cell": 0, "component": "a", "target_cell": 2,
                                             "target_component": "b"}]})
    assert corr == {(0, "a"): (2, "b")}
    assert io.parse_matrix({"matrix": [[1, "-2"], [0, 3]]}) == [[1, -2], [0, 3]]
    z1, z2 = io.parse_cycles({"z1": [{"cell": 2, "component": "a", "coeff": 1}], "z2": []})
    assert z1 == {(2, "a"): 1} and z2 == {}
    assert io.parse_betti({"betti": [{"stratum": 0, "degree": 1, "dim": 4}]}) == {(0, 1): 4}


def test_golden_files_validate():
    io.parse_complex(load("complete_R1.json"), check_complete=True)
    io.parse_curve(load("loop5.json"))
    io.parse_gamma(load("banana.gamma.json"))
    io.parse_polynomial(load("line.polynomial.json"))


def test_zero_denominator():
    bad = {"ambient_dim": 1, "points": [["1/0"]], "cells": [{"vertices": [0]}]}
    with pytest.raises(SchemaError) as e:
        io.parse_complex(bad)
    assert e.value.path == "/points/0/0"


def test_unknown_field_is_named():
    bad = {"ambient_dim": 1, "points": [[0]], "cells": [{"vertices": [0], "colour": "red"}]}
    with pytest.raises(SchemaError) as e:
        io.parse_complex(bad)
    assert "colour" in e.value.message and e.value.path == "/cells/0"
    with pytest.raises(SchemaError) as e:
        io.parse_curve({"vertices": [{"genus": 0}], "edges": [], "note": 1})
    assert "note" in e.value.message


def test_error_paths():
    with pytest.raises(SchemaError) as e:
        io.parse_complex({"ambient_dim": 2, "points": [[0, 0]], "cells": [{"vertices": [0, 3]}]})
    assert e.value.path == "/cells/0/vertices/1"
    with pytest.raises(SchemaError) as e:
        io.parse_complex({"ambient_dim": 2, "points": [[0]], "cells": [{"vertices": [0]}]})
    assert e.value.path == "/points/0"
    with pytest.raises(SchemaError) as e:
        io.parse_polynomial({"n": 1, "terms": [{"exp": [1], "val": "0"}, {"exp": [1], "val": "2"}]})
    assert e.value.path == "/terms/1/exp"
    with pytest.raises(SchemaError) as e:
        io.parse_page({"d": 1, "entries": [], "differentials": [{"row": 1, "from": 0, "to": 1, "matrix": []}]})
    assert e.value.path == "/differentials/0/row"


def test_big_integers_become_strings():
    big = 2 ** 70
    cx = make_complex([cone([(big, 1)])])
    payload = io.serialize_complex(cx)
    assert str(big) in payload["rays"][0]
    assert io.parse_complex(json.loads(io.dumps(payload))).cells == cx.cells
    assert io.format_int(2 ** 63 - 1) == 2 ** 63 - 1 and io.format_int(2 ** 63) == str(2 ** 63)


def test_rationals_are_strings():
    cx = make_complex([P([(0,), (Q(7, 3),)])])
    assert io.serialize_complex(cx)["points"] == [["0"], ["7/3"]]

import random
from fractions import Fraction as Q

import pytest

from conftest import random_poly
from tropdegen.errors import SingleTerm
from tropdegen.lattice import lattice_volume
from tropdegen.tropical import ValuedPolynomial, balancing_check, initial_form, tropical_hypersurface


def test_tropical_line():
    f = ValuedPolynomial.from_pairs([((0, 0), 0), ((1, 0), 0), ((0, 1), 0)])
    T = tropical_hypersurface(f)
    rays = sorted(r for i in T.top_cells for r in T.base.cells[i].rays)
    assert rays == [(-1, -1), (0, 1), (1, 0)]
    assert all(w == 1 for w in T.weights.values())
    assert balancing_check(T)


def test_min_convention():
    f = ValuedPolynomial.from_pairs([((1,), 0), ((0,), 1)])  # x + pi
    T = tropical_hypersurface(f)
    assert [c.vertices for c in T.base.cells] == [((1,),)]
    assert f.tropical_value((5,)) == 1


def test_double_root_weight():
    f = ValuedPolynomial.from_pairs([((2,), 0), ((1,), 0), ((0,), 0)])
    T = tropical_hypersurface(f)
    (i,) = T.top_cells
    assert T.base.cells[i].vertices == ((0,),) and T.weights[i] == 2


def test_single_term():
    with pytest.raises(SingleTerm):
        tropical_hypersurface(ValuedPolynomial.from_pairs([((1, 1), 0)]))


def test_weights_are_dual_edge_lengths():
    rng = random.Random(3)
    for _ in range(20):
        T = tropical_hypersurface(random_poly(rng))
        for i in T.top_cells:
            assert T.weights[i] == lattice_volume(T.dual[i])


def test_support_matches_initial_forms():
    """w lies in Trop(f) exactly when the minimum is attained at least twice."""
    rng = random.Random(11)
    for _ in range(25):
        f = random_poly(rng)
        T = tropical_hypersurface(f)
        for i, c in enumerate(T.base.cells):
            w = c.relint_point
            assert initial_form(f, w) == frozenset(T.dual[i])
        for _ in range(10):
            w = (Q(rng.randint(-40, 40), 7), Q(rng.randint(-40, 40), 11))
            assert T.base.contains(w) == (len(initial_form(f, w)) >= 2)


def test_three_variables_balanced():
    rng = random.Random(5)
    for _ in range(5):
        T = tropical_hypersurface(random_poly(rng, n=3, max_terms=5, box=2))
        assert balancing_check(T)

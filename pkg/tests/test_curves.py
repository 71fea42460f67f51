import random
from fractions import Fraction as Q
from itertools import combinations
from math import prod

import networkx as nx
import pytest

from conftest import random_graph
from tropdegen.curves import (
    DualGraphCurve,
    betti_bound_check,
    curve_ss,
    cycle_basis,
    gram_matrix,
    is_positive_definite,
    length_pairing,
    tropical_jacobian,
    val_j,
)
from tropdegen.errors import InvalidGraph, NoCycles, NotACycle, NotGenusOneMultiplicative
from tropdegen.lattice import det, rank


def spanning_tree_sum(G):
    """Kirchhoff: det of the cycle Gram matrix is a sum over spanning trees of complement lengths."""
    n, m = G.n_vertices, len(G.edges)
    total = Q(0)
    for T in combinations(range(m), n - 1):
        H = nx.MultiGraph()
        H.add_nodes_from(range(n))
        H.add_edges_from((G.edges[k].tail, G.edges[k].head) for k in T)
        if nx.is_tree(H):
            total += prod((G.edges[k].length for k in range(m) if k not in T), start=Q(1))
    return total


def banana(lengths=(1, 1, 1)):
    return DualGraphCurve([0, 0], [(0, 1, l) for l in lengths])


def test_banana_page():
    rep = curve_ss(banana())
    assert rep.graded_h1 == (2, 0, 2) and rep.total_h1 == 4
    assert rep.page.rows() == {0: (0, 2, 3), 1: (0, 0, 0), 2: (3, 2, 0)}
    assert rep.gram == [[2, -1], [-1, 2]]
    assert rep.euler_rows_agree


@pytest.mark.parametrize("g", [1, 2, 3])
def test_single_vertex_of_genus_g(g):
    rep = curve_ss(DualGraphCurve([g], []))
    assert rep.graded_h1 == (0, 2 * g, 0)
    assert rep.total_h1 == 2 * g


def test_total_h1_dimension_count():
    rng = random.Random(4)
    for _ in range(40):
        G = random_graph(rng)
        rep = curve_ss(G)
        assert rep.total_h1 == 2 * G.total_vertex_genus + 2 * G.b1
        assert rep.graded_h1[0] == rep.graded_h1[2] == G.b1
        assert rep.euler_rows_agree
        assert rep.filtration.ok


def test_theta_gram_hand_expanded():
    rng = random.Random(8)
    for _ in range(10):
        l1, l2, l3 = (Q(rng.randint(1, 20), rng.randint(1, 5)) for _ in range(3))
        G = banana((l1, l2, l3))
        assert cycle_basis(G) == [[1, -1, 0], [0, 1, -1]]
        Qm = gram_matrix(G)
        assert Qm == [[l1 + l2, -l2], [-l2, l2 + l3]]
        assert is_positive_definite(Qm)


def test_gram_determinant_matches_kirchhoff():
    rng = random.Random(12)
    for _ in range(30):
        G = random_graph(rng)
        if G.b1 == 0:
            continue
        J = tropical_jacobian(G)
        assert J.positive_definite and J.dimension == G.b1
        assert J.volume == spanning_tree_sum(G)


def test_cycle_basis_spans_cycle_space():
    rng = random.Random(21)
    for _ in range(30):
        G = random_graph(rng)
        B = cycle_basis(G)
        assert len(B) == G.b1
        assert all(G.is_cycle(z) for z in B)
        assert rank(B) == G.b1 if B else True


def test_pairing_invariant_under_subdivision():
    rng = random.Random(30)
    for _ in range(15):
        G = random_graph(rng)
        if not G.edges:
            continue
        k = rng.randrange(len(G.edges))
        H, new = G.subdivide(k, Q(rng.randint(1, 4), 5))
        B = cycle_basis(G)
        lift = [z + [z[k]] for z in B]  # the second half carries the coefficient of the edge it came from
        assert all(H.is_cycle(z) for z in lift)
        assert gram_matrix(H, lift) == gram_matrix(G, B)
        if B:
            assert det(gram_matrix(H)) == det(gram_matrix(G))


def test_val_j():
    for a in (1, 3, 5, Q(7, 2)):
        assert val_j(DualGraphCurve([0], [(0, 0, a)])) == -a
    tri = DualGraphCurve([0, 0, 0], [(0, 1, 1), (1, 2, 1), (2, 0, 1)])
    assert val_j(tri) == -3
    with pytest.raises(NotGenusOneMultiplicative):
        val_j(DualGraphCurve([1], []))
    with pytest.raises(NotGenusOneMultiplicative):
        val_j(banana())


def test_bridge_does_not_pair():
    G = DualGraphCurve([0, 0], [(0, 0, 2), (0, 1, 4), (1, 1, 7)])
    assert gram_matrix(G) == [[2, 0], [0, 7]]


def test_betti_bound():
    rng = random.Random(40)
    for _ in range(30):
        rep = curve_ss(random_graph(rng))
        assert all(c.ok for c in betti_bound_check(rep.betti_gamma, rep.betti_x))
    flagged = betti_bound_check([1, 2], [1, 2])
    assert flagged[0].ok and not flagged[1].ok and flagged[1].bound == 1


def test_errors():
    with pytest.raises(InvalidGraph):
        DualGraphCurve([0, 0], [])
    with pytest.raises(InvalidGraph):
        DualGraphCurve([0], [(0, 0, 0)])
    with pytest.raises(NoCycles):
        tropical_jacobian(DualGraphCurve([0, 0], [(0, 1, 1)]))
    with pytest.raises(NotACycle):
        length_pairing(banana(), [1, 0, 0], [1, 0, 0])

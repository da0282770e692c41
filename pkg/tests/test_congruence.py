import random

import pytest

from lapdual import (IntMatrix, LoopCountMismatch, MultiGraph, NotSymmetric,
                     ShapeMismatch, UnimodularWitness, congruence_invariants,
                     decide_congruence, incidence, laplacian,
                     loose_row_equivalence, permute_vertices, property_x_report,
                     reduced_incidence, reduced_laplacian,
                     strict_row_equivalence)
from lapdual.congruence import block_reduction_witness
from lapdual.laplacians import ReductionSpec, reduced_dual_laplacian

from conftest import random_connected_multigraph, random_unimodular


def quadrupled(g):
    return MultiGraph.from_edges(g.num_vertices, [e for e in g.edges for _ in range(4)])


def test_invariants_separate_scaled_laplacians(k3):
    a = reduced_laplacian(k3)
    b = reduced_laplacian(quadrupled(k3))
    inv_a = congruence_invariants(a)
    inv_b = congruence_invariants(b)
    assert inv_a["det"] == 3 and inv_b["det"] == 48
    assert inv_a["snf"] == (1, 3)


def test_invariants_identical_for_identical_input(k4):
    a = reduced_laplacian(k4)
    assert congruence_invariants(a) == congruence_invariants(a)


def test_invariants_agree_for_example1_duals(example1):
    from lapdual import Orientation, ForestCertificate
    f = ForestCertificate.from_forest(example1, [0])
    spec = ReductionSpec.of([1])
    u1 = reduced_dual_laplacian(example1, Orientation.default(example1), f, spec).unreduced
    u2 = reduced_dual_laplacian(example1, Orientation.from_flips(example1, [2]), f,
                                spec).unreduced
    assert congruence_invariants(u1) == congruence_invariants(u2)


def test_invariants_require_symmetry():
    with pytest.raises(NotSymmetric):
        congruence_invariants(IntMatrix.from_rows([[0, 1], [2, 0]]))


def test_congruence_reflexive(k4):
    a = reduced_laplacian(k4)
    verdict = decide_congruence(a, a)
    assert verdict.status == "congruent"
    assert verdict.witness.u == IntMatrix.identity(3)


def test_congruence_of_example1_duals_with_witness(example1):
    from lapdual import Orientation, ForestCertificate
    f = ForestCertificate.from_forest(example1, [0])
    spec = ReductionSpec.of([1])
    u1 = reduced_dual_laplacian(example1, Orientation.default(example1), f, spec).unreduced
    u2 = reduced_dual_laplacian(example1, Orientation.from_flips(example1, [2]), f,
                                spec).unreduced
    verdict = decide_congruence(u1, u2)
    assert verdict.status == "congruent"
    w = verdict.witness.u
    assert w.mul(u1).mul(w.transpose()) == u2


def test_congruence_detects_scaling(k3):
    a = reduced_laplacian(k3)
    verdict = decide_congruence(a, a.scale(4))
    assert verdict.status == "not_congruent"
    assert verdict.separating_invariant[0] == "det"
    assert verdict.separating_invariant[1:] == (3, 48)


def test_congruence_unknown_for_separated_genus():
    # distinct classes with identical size/rank/det/inertia/SNF: the honest
    # answer is unknown, never a fabricated witness
    a = IntMatrix.from_rows([[1, 0], [0, 23]])
    b = IntMatrix.from_rows([[2, 1], [1, 12]])
    verdict = decide_congruence(a, b)
    assert verdict.status == "unknown"
    assert verdict.witness is None


def test_congruence_follows_random_witness():
    rng = random.Random(3)
    for _ in range(15):
        g = random_connected_multigraph(rng, max_n=4, max_m=6)
        a = reduced_laplacian(g)
        u = random_unimodular(rng, a.rows)
        b = u.mul(a).mul(u.transpose())
        verdict = decide_congruence(a, b)
        assert verdict.status == "congruent"
        w = verdict.witness.u
        assert w.mul(a).mul(w.transpose()) == b


def test_congruence_handles_psd_kernels(k4):
    # full Laplacians are only semidefinite; the kernel is split off exactly
    a = laplacian(k4)
    b_perm = laplacian(permute_vertices(k4, (2, 3, 0, 1)))
    verdict = decide_congruence(a, b_perm)
    assert verdict.status == "congruent"
    w = verdict.witness.u
    assert w.mul(a).mul(w.transpose()) == b_perm


def test_congruence_requires_symmetry():
    with pytest.raises(NotSymmetric):
        decide_congruence(IntMatrix.from_rows([[0, 1], [2, 0]]),
                          IntMatrix.identity(2))


def test_strict_row_equivalence_for_two_reductions(example2):
    n1 = reduced_incidence(example2, None, ReductionSpec.of([2]))
    n2 = reduced_incidence(example2, None, ReductionSpec.of([0]))
    u = strict_row_equivalence(n1, n2)
    assert u is not None
    assert u.u.mul(n1) == n2


def test_strict_row_equivalence_rejects_different_lattices():
    a = IntMatrix.from_rows([[1, 0]])
    b = IntMatrix.from_rows([[2, 0]])
    assert strict_row_equivalence(a, b) is None


def test_strict_row_equivalence_shape_mismatch():
    with pytest.raises(ShapeMismatch):
        strict_row_equivalence(IntMatrix.zeros(1, 2), IntMatrix.zeros(1, 3))


def test_loose_row_equivalence_with_zero_rows(k3):
    n = incidence(k3)
    padded = n.vstack(IntMatrix.zeros(2, 3))
    ok, witness = loose_row_equivalence(n, padded)
    assert ok
    assert witness.u.mul(n.vstack(IntMatrix.zeros(2, 3))) == padded


def test_loose_row_equivalence_full_vs_reduced(k3):
    # the deleted row is minus the sum of the others, so the lattices agree
    ok, _ = loose_row_equivalence(incidence(k3), reduced_incidence(k3))
    assert ok


def test_loose_row_equivalence_negative(example1, k3):
    ok, witness = loose_row_equivalence(incidence(k3), incidence(example1).vstack(
        IntMatrix.zeros(1, 3)))
    assert not ok and witness is None


def test_property_x_positive_pair(k4):
    relabeled = MultiGraph.from_edges(4, [k4.edges[(k + 2) % 6] for k in range(6)])
    report = property_x_report(k4, relabeled, budget=10**6)
    assert report.condition_statuses() == ("true", "true", "true", "true")
    assert report.consistent
    assert report.constructive["ok"]
    assert report.unreduced_proposition["agree"]
    assert report.unreduced_proposition["rank_matches_vertices_minus_components"]


def test_property_x_negative_pair():
    p3 = MultiGraph.from_edges(3, [(0, 1), (1, 2)])
    report = property_x_report(p3, quadrupled(p3), budget=10**6)
    assert report.condition_statuses() == ("false", "false", "false", "false")
    assert report.consistent


def test_property_x_rejects_loop_mismatch(k3):
    loopy = MultiGraph.from_edges(3, list(k3.edges) + [(0, 0)])
    with pytest.raises(LoopCountMismatch):
        property_x_report(k3, loopy)


def test_property_x_duals_are_not_two_isomorphic(example2, example2_dual):
    # drop the isthmus of example2 and the loop of its dual to equalize loop
    # counts; forests still have different sizes, so everything is false
    g1 = MultiGraph.from_edges(7, example2.edges[:3] + example2.edges[4:])
    g2 = MultiGraph.from_edges(4, [e for e in example2_dual.edges if e[0] != e[1]])
    report = property_x_report(g1, g2, budget=2 * 10**5)
    assert report.condition_statuses() == ("false", "false", "false", "false")
    assert report.consistent


def test_unreduced_proposition_witness(k4):
    relabeled = permute_vertices(k4, (1, 3, 2, 0))
    report = property_x_report(k4, relabeled, budget=10**6)
    lhs = report.unreduced_proposition["laplacian_congruence"]
    assert lhs.status == "congruent"
    w = lhs.witness.u
    assert w.mul(laplacian(k4)).mul(w.transpose()) == laplacian(relabeled)


def test_unreduced_proposition_vertex_count_matters(k3):
    # adding an isolated vertex keeps the graphs 2-isomorphic but changes the
    # Laplacian size, so the unreduced matrices cannot be congruent
    padded = MultiGraph.from_edges(4, k3.edges)
    report = property_x_report(k3, padded, budget=10**5)
    assert report.cond4_two_isomorphism.status == "two_isomorphic"
    lhs = report.unreduced_proposition["laplacian_congruence"]
    assert lhs.status == "not_congruent"
    assert lhs.separating_invariant[0] == "size"
    assert report.unreduced_proposition["two_iso_with_counts"] == "false"
    assert report.unreduced_proposition["agree"]


def test_block_reduction_witness_diagonalizes():
    rng = random.Random(9)
    for _ in range(10):
        g = random_connected_multigraph(rng, max_n=4, max_m=6)
        p = block_reduction_witness(g)
        conj = p.u.mul(laplacian(g)).mul(p.u.transpose())
        red = reduced_laplacian(g)
        for i in range(conj.rows):
            for j in range(conj.cols):
                expected = red.data[i][j] if i < red.rows and j < red.cols else 0
                assert conj.data[i][j] == expected

"""Coset graph structure and the two spectral oracles."""

import pytest

from orbitcodes.cosetgraph import (
    CosetGraph,
    char_sum_max,
    character_eigencheck,
    sample_walk_tv,
    sigma2_exact,
    sigma2_svd,
    spectral_bounds,
    two_step_counts,
    walk_matrix_matches_rule,
)
from orbitcodes.errors import BudgetError
from orbitcodes.gf import build_field
from orbitcodes.groupgeom import ScalingGroup, scaling_subgroup
from orbitcodes.numutil import divisors


def test_graph_shapes(inst1_p2, inst1_p3, inst2_p2):
    g = inst1_p2.graph
    assert (g.n_left, g.n_right, g.edge_count) == (12, 16, 48)
    assert (g.left_degree, g.right_degree) == (4, 3)
    g = inst2_p2.graph
    assert (g.n_left, g.n_right, g.edge_count) == (112, 64, 448)
    assert (g.left_degree, g.right_degree) == (4, 7)
    g = inst1_p3.graph
    assert (g.n_left, g.n_right, g.edge_count) == (72, 81, 648)
    assert (g.left_degree, g.right_degree) == (9, 8)


def test_graph_simple_and_biregular(all_instances):
    for inst in all_instances:
        g = inst.graph
        assert g.is_simple
        b = g.biadjacency()
        assert b.max() == 1
        assert (b.sum(axis=1) == g.left_degree).all()
        assert (b.sum(axis=0) == g.right_degree).all()
        assert b.sum() == g.edge_count == inst.n


def test_edge_coordinate_consistency(all_instances):
    # edge e corresponds to orbit point omega[e]; its left vertex groups the
    # G-orbit of that point and its right vertex the H-orbit
    for inst in all_instances:
        g = inst.graph
        by_left = {}
        by_right = {}
        for e, (l, r) in enumerate(g.edges):
            by_left.setdefault(l, set()).add(inst.omega[e])
            by_right.setdefault(r, set()).add(inst.omega[e])
        for pts in by_left.values():
            x = next(iter(pts))
            assert pts == {x + t for t in inst.G.points.points()}
        for pts in by_right.values():
            x = next(iter(pts))
            assert pts == {h * x for h in inst.H.elements()}


def test_sigma2_svd_complete_bipartite_is_zero():
    edges = tuple((l, r) for l in range(3) for r in range(4))
    graph = CosetGraph(
        n_left=3,
        n_right=4,
        left_degree=4,
        right_degree=3,
        edges=edges,
        left_reps=tuple(((i,), (1,)) for i in range(3)),
        right_elements=(),
        is_simple=True,
    )
    assert sigma2_svd(graph) == pytest.approx(0.0, abs=1e-12)


def test_sigma2_svd_budget_refusal():
    edges = tuple((l, 0) for l in range(6000))
    graph = CosetGraph(6000, 1, 1, 6000, edges, (), (), True)
    with pytest.raises(BudgetError):
        sigma2_svd(graph)


def test_sigma2_oracles_agree(all_instances):
    for inst in all_instances:
        exact = sigma2_exact(inst.G, inst.H, inst.S, inst.ambient)
        svd = sigma2_svd(inst.graph)
        assert abs(exact.value - svd) <= 1e-9
        assert 0 <= exact.lambda_max < 1
        assert exact.value == pytest.approx(float(exact.lambda_max) ** 0.5, abs=1e-12)


def test_sigma2_exact_values_regression(inst1_p2, inst1_p3, inst2_p2):
    from fractions import Fraction

    assert sigma2_exact(inst1_p2.G, inst1_p2.H, inst1_p2.S, inst1_p2.ambient).lambda_max == Fraction(1, 3)
    assert sigma2_exact(inst1_p3.G, inst1_p3.H, inst1_p3.S, inst1_p3.ambient).lambda_max == Fraction(1, 4)
    assert sigma2_exact(inst2_p2.G, inst2_p2.H, inst2_p2.S, inst2_p2.ambient).lambda_max == Fraction(3, 7)


def test_sigma2_exact_degenerate_one_step_walk(inst1_p2):
    # with H = {1} and S = G the eigenvalue set degenerates: every a outside
    # S^perp has lambda_a = [a in G^perp] and G^perp = S^perp, so sigma2 = 0;
    # feeding a larger S makes some a hit G^perp and sigma2 = 1
    ambient = inst1_p2.ambient
    trivial_h = ScalingGroup(ambient.one(), 1)
    g = inst1_p2.G
    assert sigma2_exact(g, trivial_h, g.points, ambient).value == 0.0
    assert sigma2_exact(g, trivial_h, inst1_p2.S, ambient).value == 1.0


def test_char_sum_max_full_multiplicative_group_is_one():
    # H = F_q^x inside F_q: orthogonality leaves |0 - chi_a(0)| = 1
    for p, k in ((2, 2), (3, 2), (2, 3)):
        ctx = build_field(p, k)
        h = scaling_subgroup(ctx, ctx.order - 1)
        res = char_sum_max(h, ctx)
        assert res.value == pytest.approx(1.0, abs=1e-12)
        if p <= 3:
            assert res.sq_exact == 1


def test_char_sum_max_index_two_subgroup_f9():
    f9 = build_field(3, 2)
    h = scaling_subgroup(f9, 4)  # index 2 in F_9^x
    res = char_sum_max(h, f9)
    assert res.value <= 3.0 + 1e-9  # Gauss bound sqrt(9)


@pytest.mark.parametrize("p,k", [(2, 3), (3, 2), (2, 4), (3, 3)])
def test_gauss_bound_all_subgroups(p, k):
    ctx = build_field(p, k)
    q = ctx.order
    for d in divisors(q - 1):
        h = scaling_subgroup(ctx, d)
        res = char_sum_max(h, ctx)
        assert res.value <= q**0.5 + 1e-9
        if p <= 3:
            assert res.sq_exact <= q


def test_spectral_bounds_formulas():
    bg, bi = spectral_bounds(2, 1.0, 3, 2, "I")
    assert bi == pytest.approx((5 / 6) ** 0.5, abs=1e-12)
    assert bg == pytest.approx((5 / 6) ** 0.5, abs=1e-12)
    _, bi5 = spectral_bounds(5, 1.0, 24, 2, "I")
    assert bi5 == pytest.approx((1 / 5 + 1 / 24) ** 0.5, abs=1e-12)
    _, bi_ii = spectral_bounds(2, 1.0, 7, 2, "II")
    assert bi_ii == pytest.approx((0.5 + 8**0.5 / 7) ** 0.5, abs=1e-12)


def test_sigma2_below_instance_bound(all_instances):
    for inst in all_instances:
        exact = sigma2_exact(inst.G, inst.H, inst.S, inst.ambient)
        m = char_sum_max(inst.H, inst.ambient)
        bg, bi = spectral_bounds(
            inst.config.p, m.value, inst.H.order, inst.config.m, inst.config.instantiation
        )
        assert exact.value <= bi + 1e-9
        assert exact.value <= bg + 1e-9


def test_character_vectors_diagonalize_two_step_operator(all_instances):
    for inst in all_instances:
        if inst.S.size <= 256:
            assert character_eigencheck(inst.graph, inst.G, inst.H, inst.S, inst.ambient)


def test_walk_identity_exact(all_instances):
    for inst in all_instances:
        assert walk_matrix_matches_rule(inst.graph, inst.G, inst.H, inst.S)


def test_walk_identity_monte_carlo(inst1_p2):
    tv = sample_walk_tv(inst1_p2.graph, inst1_p2.G, inst1_p2.H, inst1_p2.S, steps=100_000, seed=0)
    assert tv <= 0.02


def test_two_step_row_sums(inst1_p2):
    # every row of B^T B sums to |G| * |H| (total 2-path count from a vertex)
    btb = two_step_counts(inst1_p2.graph)
    assert (btb.sum(axis=1) == inst1_p2.G.size * inst1_p2.H.order).all()


def test_character_orthogonality_over_instance_closures(all_instances):
    # exhaustively over every a in the ambient field: the character sum over
    # the closure S vanishes unless a lies in the trace-dual of S
    from orbitcodes.gf import char_exponent

    for inst in all_instances:
        s_perp = inst.S.dual().point_set()
        p = inst.ambient.p
        pts = inst.S.points()
        for a in inst.ambient.elements():
            counts = [0] * p
            for s in pts:
                counts[char_exponent(a, s)] += 1
            if a in s_perp:
                assert counts[0] == inst.S.size
            else:
                assert len(set(counts)) == 1  # uniform histogram: the sum is 0

import random

import pytest

from liefusion.highmod import weyl_dimension
from liefusion.rootsys import AlgebraId, Weight, build_root_system, dual_weight, inner_product
from liefusion.tensor import (
    TensorQuery,
    weight_space_criterion,
    g2_tensor_graph,
    rank_route_multiplicity,
    tensor_decomposition,
    tensor_multiplicity,
)

G2 = AlgebraId("G", 2)


def W(aid, coords):
    return Weight.from_fundamental(aid, coords)


def q(aid, f1, f2, f3):
    return TensorQuery(W(aid, f1), W(aid, f2), W(aid, f3))


def test_vacuum_and_cartan_components():
    for aid in (AlgebraId("A", 2), AlgebraId("B", 2), G2):
        mu = W(aid, [1] * aid.rank)
        zero = W(aid, [0] * aid.rank)
        assert tensor_multiplicity(TensorQuery(zero, mu, mu)) == 1
        top = mu + mu
        assert tensor_multiplicity(TensorQuery(mu, mu, top)) == 1
        assert rank_route_multiplicity(TensorQuery(mu, mu, top)) == 1


def test_upper_bound_by_weight_space():
    rng = random.Random(5)
    for aid in (AlgebraId("A", 2), AlgebraId("C", 2), G2):
        from liefusion.highmod import weight_multiplicity

        for _ in range(30):
            f1 = [rng.randint(0, 1) for _ in range(aid.rank)]
            f2 = [rng.randint(0, 2) for _ in range(aid.rank)]
            f3 = [rng.randint(0, 2) for _ in range(aid.rank)]
            query = q(aid, f1, f2, f3)
            n = tensor_multiplicity(query)
            assert n <= weight_multiplicity(query.lam, query.nu - query.mu)


def test_dimension_conservation():
    for aid in (AlgebraId("A", 2), AlgebraId("B", 2), AlgebraId("C", 2), G2):
        lam = W(aid, [1, 0])
        mu = W(aid, [0, 1])
        dec = tensor_decomposition(lam, mu)
        total = sum(m * weyl_dimension(W(aid, list(k))) for k, m in dec.items())
        assert total == weyl_dimension(lam) * weyl_dimension(mu)


def test_symmetries():
    rng = random.Random(6)
    for aid in (AlgebraId("A", 2), AlgebraId("B", 2), G2):
        for _ in range(15):
            f = [[rng.randint(0, 1) for _ in range(aid.rank)] for _ in range(3)]
            lam, mu, nu = (W(aid, x) for x in f)
            a = tensor_multiplicity(TensorQuery(lam, mu, nu))
            assert a == tensor_multiplicity(TensorQuery(mu, lam, nu))
            assert a == tensor_multiplicity(TensorQuery(dual_weight(lam), nu, mu))
            assert a == tensor_multiplicity(
                TensorQuery(dual_weight(lam), dual_weight(mu), dual_weight(nu))
            )


def test_criterion_subcases_for_the_odd_orthogonal_series():
    # loop at a weight with vanishing last coordinate is forbidden
    b2 = AlgebraId("B", 2)
    v1 = W(b2, [1, 0])
    assert weight_space_criterion(TensorQuery(v1, v1, v1)) == 0
    # positive pairing against the short functional allows the loop
    mu = W(b2, [0, 1])
    assert weight_space_criterion(TensorQuery(v1, mu, mu)) == 1
    mu2 = W(b2, [1, 1])
    assert weight_space_criterion(TensorQuery(v1, mu2, mu2)) == 1
    # not-applicable stays distinct from zero
    far = W(b2, [3, 0])
    assert weight_space_criterion(TensorQuery(v1, W(b2, [0, 0]), far)) is None


def test_rank_route_matches_oracle_on_g2_low_heights():
    # exhaustive for the 7-dim charge over heights <= 4
    v1 = W(G2, [1, 0])
    nodes = [
        (a, b) for b in range(3) for a in range(5) if a + 2 * b <= 4
    ]
    for mu_f in nodes:
        for nu_f in nodes:
            query = q(G2, [1, 0], list(mu_f), list(nu_f))
            assert tensor_multiplicity(query) == rank_route_multiplicity(query)
            c = weight_space_criterion(query)
            if c is not None:
                assert c == tensor_multiplicity(query)


def test_g2_graph_structure():
    gr = g2_tensor_graph(4)
    rs = build_root_system(G2)
    short = set()
    for r in rs.positive_roots:
        if inner_product(r, r) != 2:
            f = tuple(int(x) for x in r.fundamental)
            short.add(f)
            short.add(tuple(-x for x in f))
    for mu in gr.nodes:
        for nu in gr.nodes:
            has = tuple(sorted((mu, nu))) in gr.edges
            if mu == nu:
                assert has == (mu[0] > 0)
            else:
                d = (nu[0] - mu[0], nu[1] - mu[1])
                assert has == (d in short)


def test_g2_graph_height_one_and_dot():
    gr = g2_tensor_graph(1)
    assert set(gr.nodes) == {(0, 0), (1, 0)}
    assert ((0, 0), (1, 0)) in gr.edges
    assert ((1, 0), (1, 0)) in gr.edges  # loop at the 7-dim weight
    dot = gr.to_dot()
    assert dot.startswith("graph") and '"1,0" -- "1,0"' in dot


def test_graph_rejects_bad_height():
    with pytest.raises(ValueError):
        g2_tensor_graph(0)

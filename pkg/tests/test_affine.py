from fractions import Fraction

import pytest

from liefusion.affine import (
    AffineWeight,
    FusionQuery,
    HypothesisViolation,
    admissible_weights,
    casimir_eigenvalue,
    conformal_weight,
    fusion_decomposition,
    generating_check,
    kac_walton_fusion,
    level_reduction_conditions,
    closed_form_fusion,
    large_level_check,
)
from liefusion.rootsys import AlgebraId, Weight, build_root_system, dual_weight, inner_product
from liefusion.tensor import TensorQuery, tensor_multiplicity

G2 = AlgebraId("G", 2)


def W(aid, coords):
    return Weight.from_fundamental(aid, coords)


def AW(aid, coords, level):
    return AffineWeight(W(aid, coords), level)


def test_admissible_weight_sets():
    d4 = AlgebraId("D", 4)
    adm = {str(w.finite_part) for w in admissible_weights(d4, 1)}
    assert adm == {"(0,0,0,0)", "(1,0,0,0)", "(0,0,1,0)", "(0,0,0,1)"}
    c3 = AlgebraId("C", 3)
    adm = {str(w.finite_part) for w in admissible_weights(c3, 1)}
    assert adm == {"(0,0,0)", "(1,0,0)", "(0,1,0)", "(0,0,1)"}
    for aid in (AlgebraId("A", 2), AlgebraId("B", 3), G2):
        assert len(admissible_weights(aid, 0)) == 1


def test_admissibility_enforced():
    with pytest.raises(ValueError, match="not admissible"):
        AW(G2, [0, 1], 1)  # the 14-dim weight pairs to 2 against theta


def test_conformal_weight_values_and_positivity():
    a1 = AlgebraId("A", 1)
    assert conformal_weight(AW(a1, [1], 1)) == Fraction(1, 4)
    assert conformal_weight(AW(a1, [0], 3)) == 0
    for aid in (a1, AlgebraId("A", 4), AlgebraId("B", 4), AlgebraId("C", 3),
                AlgebraId("D", 4), AlgebraId("F", 4), G2):
        for level in (1, 2, 3):
            for w in admissible_weights(aid, level):
                assert (conformal_weight(w) > 0) == (not w.finite_part.is_zero())


def test_conformal_weight_against_casimir_oracle():
    # the closed form is anchored to an independent trace-form computation
    for aid, f in ((AlgebraId("A", 1), [1]), (AlgebraId("B", 2), [0, 1]),
                   (AlgebraId("C", 2), [1, 0]), (G2, [1, 0])):
        lam = W(aid, f)
        rs = build_root_system(aid)
        closed = inner_product(lam, lam) + 2 * inner_product(lam, rs.weyl_vector)
        assert casimir_eigenvalue(lam) == closed
        for level in (1, 2):
            if inner_product(lam, rs.highest_root) <= level:
                dw = conformal_weight(AffineWeight(lam, level))
                assert dw == closed / (2 * (level + rs.dual_coxeter))


def test_vacuum_fusion():
    for aid in (AlgebraId("A", 2), AlgebraId("B", 2), G2):
        for level in (1, 2):
            vac = AW(aid, [0] * aid.rank, level)
            for mu in admissible_weights(aid, level):
                assert kac_walton_fusion(FusionQuery(vac, mu, mu)) == 1


def test_fusion_symmetries_exhaustive_small():
    for aid in (AlgebraId("A", 2), AlgebraId("B", 2), AlgebraId("C", 2), G2):
        for level in (1, 2):
            adm = admissible_weights(aid, level)
            for lam in adm:
                lam_bar = AffineWeight(dual_weight(lam.finite_part), level)
                for mu in adm:
                    mu_bar = AffineWeight(dual_weight(mu.finite_part), level)
                    for nu in adm:
                        nu_bar = AffineWeight(dual_weight(nu.finite_part), level)
                        n = kac_walton_fusion(FusionQuery(lam, mu, nu))
                        assert n == kac_walton_fusion(FusionQuery(mu, lam, nu))
                        assert n == kac_walton_fusion(FusionQuery(lam_bar, nu, mu))
                        assert n == kac_walton_fusion(FusionQuery(lam_bar, mu_bar, nu_bar))


def test_fusion_bounded_by_tensor_rule():
    for aid in (AlgebraId("B", 2), AlgebraId("C", 2), G2):
        for level in (1, 2, 3):
            adm = admissible_weights(aid, level)
            for lam in adm:
                for mu in adm:
                    for nu in adm:
                        n = kac_walton_fusion(FusionQuery(lam, mu, nu))
                        t = tensor_multiplicity(TensorQuery(
                            lam.finite_part, mu.finite_part, nu.finite_part
                        ))
                        assert n <= t


def test_saturation_at_large_level():
    for aid in (AlgebraId("B", 2), G2):
        rs = build_root_system(aid)
        adm1 = admissible_weights(aid, 2)
        for lam in adm1:
            for mu in adm1:
                need = int(inner_product(lam.finite_part, rs.highest_root)
                           + inner_product(mu.finite_part, rs.highest_root))
                dec = fusion_decomposition(lam.finite_part, mu.finite_part, need)
                from liefusion.tensor import tensor_decomposition

                assert dec == tensor_decomposition(lam.finite_part, mu.finite_part)


def test_g2_level_one_loop():
    q = FusionQuery(AW(G2, [1, 0], 1), AW(G2, [1, 0], 1), AW(G2, [1, 0], 1))
    assert kac_walton_fusion(q) == 1
    assert closed_form_fusion(q) == 1
    r = large_level_check(q)
    assert not r.applicable


def test_b_series_loop_exception():
    b2 = AlgebraId("B", 2)
    lvl = 2
    v1 = AW(b2, [1, 0], lvl)
    # vanishing last coordinate: loop forbidden
    q = FusionQuery(v1, v1, v1)
    assert closed_form_fusion(q) == 0 == kac_walton_fusion(q)
    # positive pairing against the short functional: loop allowed
    sp = AW(b2, [0, 1], lvl)
    q = FusionQuery(v1, sp, sp)
    assert closed_form_fusion(q) == 1 == kac_walton_fusion(q)


def test_unsupported_charge_is_distinct():
    q = FusionQuery(AW(G2, [0, 1], 2), AW(G2, [0, 0], 2), AW(G2, [0, 1], 2))
    assert closed_form_fusion(q) is None
    assert kac_walton_fusion(q) == 1


def test_paper_rule_matches_oracle_levels_1_to_3():
    cases = [
        (AlgebraId("B", 2), ([1, 0], [0, 1])),
        (AlgebraId("C", 2), ([1, 0],)),
        (AlgebraId("A", 2), ([1, 0],)),
        (AlgebraId("D", 4), ([1, 0, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1])),
        (G2, ([1, 0],)),
    ]
    for aid, charges in cases:
        for level in (1, 2, 3):
            adm = admissible_weights(aid, level)
            for ch in charges:
                chw = AW(aid, ch, level)
                for mu in adm:
                    for nu in adm:
                        q = FusionQuery(chw, mu, nu)
                        assert closed_form_fusion(q) == kac_walton_fusion(q)


def test_generating_families():
    b2, c2, d4 = AlgebraId("B", 2), AlgebraId("C", 2), AlgebraId("D", 4)
    for level in (1, 2, 3):
        ok, chains = generating_check([W(b2, [0, 1])], level)
        assert ok
        ok, _ = generating_check([W(c2, [1, 0])], level)
        assert ok
        ok, _ = generating_check([W(d4, [0, 0, 1, 0]), W(d4, [0, 0, 0, 1])], level)
        assert ok
        ok, _ = generating_check([W(G2, [1, 0])], level)
        assert ok
    # level zero: only the vacuum, trivially generating
    ok, chains = generating_check([], 0, algebra=b2)
    assert ok and chains == {}
    # the vector weight alone does not generate the spin sector at level 1
    ok, _ = generating_check([W(b2, [1, 0])], 1)
    assert not ok


def test_large_level_saturation_and_reporting():
    b2 = AlgebraId("B", 2)
    q = FusionQuery(AW(b2, [1, 0], 3), AW(b2, [0, 1], 3), AW(b2, [0, 1], 3))
    r = large_level_check(q)
    assert r.applicable and r.agree
    q2 = FusionQuery(AW(G2, [1, 0], 1), AW(G2, [1, 0], 1), AW(G2, [1, 0], 1))
    assert not large_level_check(q2).applicable
    assert large_level_check(q2).agree is None


def test_level_reduction_conditions():
    c2 = AlgebraId("C", 2)
    flags = level_reduction_conditions(
        W(c2, [1, 0]), W(c2, [1, 0]), W(c2, [2, 0]), W(c2, [1, 0]),
        W(c2, [0, 0]), W(c2, [1, 0]), level=2, a=1,
    )
    assert flags["a"]
    flags_g = level_reduction_conditions(
        W(G2, [1, 0]), W(G2, [2, 0]), W(G2, [0, 1]), W(G2, [1, 0]),
        W(G2, [1, 0]), W(G2, [1, 0]), level=2, a=1,
    )
    assert flags_g["b"] and not flags_g["a"]
    # hypothesis failures are named
    with pytest.raises(HypothesisViolation, match="maximal theta-pairing"):
        level_reduction_conditions(
            W(c2, [1, 0]), W(c2, [1, 0]), W(c2, [2, 0]), W(c2, [1, 0]),
            W(c2, [0, 0]), W(c2, [1, 0]), level=2, a=2,
        )
    with pytest.raises(HypothesisViolation, match="exceeds level - a"):
        level_reduction_conditions(
            W(c2, [1, 0]), W(c2, [1, 0]), W(c2, [2, 0]), W(c2, [2, 0]),
            W(c2, [0, 0]), W(c2, [1, 0]), level=2, a=1,
        )


def test_reduction_with_zero_shift_is_trivial():
    # shift 0 with matching data satisfies condition (a) immediately
    c2 = AlgebraId("C", 2)
    flags = level_reduction_conditions(
        W(c2, [1, 0]), W(c2, [0, 0]), W(c2, [1, 0]), W(c2, [0, 0]),
        W(c2, [0, 0]), W(c2, [1, 0]), level=1, a=1,
    )
    assert flags["a"]

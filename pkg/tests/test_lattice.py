import random
from fractions import Fraction

import pytest

from liefusion.lattice import (
    Cocycle,
    DualCocycle,
    IntegralLattice,
    build_cocycle,
    intertwiner_phase,
    intertwiner_phase_exponent,
    lattice_fusion,
    phase_value,
)
from liefusion.verify import random_even_lattice


def test_lattice_validation():
    with pytest.raises(ValueError, match="odd"):
        IntegralLattice.from_rows([[1]])
    with pytest.raises(ValueError, match="symmetric"):
        IntegralLattice.from_rows([[2, 1], [0, 2]])
    with pytest.raises(ValueError, match="degenerate"):
        IntegralLattice.from_rows([[2, 2], [2, 2]])
    lat = IntegralLattice.from_rows([[2, -1], [-1, 2]])
    assert lat.rank == 2
    assert lat.pairing([1, 0], [0, 1]) == -1


def test_dual_membership():
    lat = IntegralLattice.from_rows([[2]])
    assert lat.dual_contains([Fraction(1, 2)])
    assert not lat.dual_contains([Fraction(1, 3)])
    assert lat.contains([3]) and not lat.contains([Fraction(1, 2)])


def test_rank_one_cocycle_trivial():
    lat = IntegralLattice.from_rows([[2]])
    eps = build_cocycle(lat)
    assert eps.basis_values == [[1]]
    assert eps.commutator([1], [1]) == 1
    assert eps.value([5], [0]) == 1


def test_cocycle_identities_random():
    rng = random.Random(2)
    for _ in range(8):
        rank = rng.randint(1, 4)
        lat = random_even_lattice(rng, rank)
        eps = build_cocycle(lat)
        for _ in range(200):
            a = [rng.randint(-3, 3) for _ in range(rank)]
            b = [rng.randint(-3, 3) for _ in range(rank)]
            c = [rng.randint(-3, 3) for _ in range(rank)]
            bc = [x + y for x, y in zip(b, c)]
            ab = [x + y for x, y in zip(a, b)]
            assert eps.value(a, bc) * eps.value(b, c) == eps.value(a, b) * eps.value(ab, c)
            assert eps.value(a, b) == eps.commutator(a, b) * eps.value(b, a)
            assert eps.commutator(a, b) == (-1) ** (int(lat.pairing(a, b)) % 2)


def test_dual_cocycle_restriction():
    rng = random.Random(13)
    for _ in range(6):
        rank = rng.randint(1, 3)
        lat = random_even_lattice(rng, rank)
        dc = DualCocycle(lat)
        for _ in range(100):
            a = [rng.randint(-3, 3) for _ in range(rank)]
            b = [rng.randint(-3, 3) for _ in range(rank)]
            assert (dc.exponent(a, b) - dc.exponent(b, a)) % 2 == lat.pairing(a, b) % 2
            assert dc.exponent(a, [0] * rank) == 0


def test_fusion_membership_rule():
    lat = IntegralLattice.from_rows([[2]])
    h = Fraction(1, 2)
    assert lattice_fusion(lat, [h], [h], [1]) == 1
    assert lattice_fusion(lat, [h], [h], [0]) == 1  # differs from the sum by 1
    assert lattice_fusion(lat, [h], [0], [0]) == 0
    with pytest.raises(ValueError, match="dual"):
        lattice_fusion(lat, [Fraction(1, 3)], [0], [0])


def test_fusion_shift_invariance_and_symmetry():
    rng = random.Random(21)
    lat = random_even_lattice(rng, 3)
    db = lat.dual_basis()

    def rand_dual():
        out = [Fraction(0)] * 3
        for col in db:
            k = rng.randint(-2, 2)
            out = [o + k * c for o, c in zip(out, col)]
        return out

    for _ in range(50):
        lam, mu, nu = rand_dual(), rand_dual(), rand_dual()
        n = lattice_fusion(lat, lam, mu, nu)
        assert n == lattice_fusion(lat, mu, lam, nu)
        shift = [rng.randint(-2, 2) for _ in range(3)]
        lam2 = [x + s for x, s in zip(lam, shift)]
        assert n == lattice_fusion(lat, lam2, mu, nu)


def test_phase_at_base_point():
    lat = IntegralLattice.from_rows([[2, 0], [0, 4]])
    dc = DualCocycle(lat)
    db = lat.dual_basis()
    lam = [x + y for x, y in zip(db[0], db[1])]
    mu0 = db[1]
    t = intertwiner_phase_exponent(lat, dc, lam, mu0, mu0)
    assert t == dc.exponent(lam, mu0)
    val = intertwiner_phase(lat, dc, lam, mu0, mu0)
    assert abs(val - phase_value(t)) < 1e-12


def test_phase_consistency_relations():
    rng = random.Random(17)
    for _ in range(5):
        rank = rng.randint(1, 3)
        lat = random_even_lattice(rng, rank)
        dc = DualCocycle(lat)
        db = lat.dual_basis()

        def rand_dual():
            out = [Fraction(0)] * rank
            for col in db:
                k = rng.randint(-2, 2)
                out = [o + k * c for o, c in zip(out, col)]
            return out

        for _ in range(60):
            alpha = [rng.randint(-2, 2) for _ in range(rank)]
            mu0 = rand_dual()
            lam = rand_dual()
            mu = [m + rng.randint(-2, 2) for m in mu0]
            ka = intertwiner_phase_exponent(lat, dc, lam, mu, mu0)
            lam_mu = [x + y for x, y in zip(lam, mu)]
            lhs = (dc.exponent(alpha, lam_mu) + ka) % 2
            shifted = [Fraction(a) + x for a, x in zip(alpha, lam)]
            rhs = (dc.exponent(alpha, lam)
                   + intertwiner_phase_exponent(lat, dc, shifted, mu, mu0)) % 2
            assert lhs == rhs
            shifted_mu = [Fraction(a) + x for a, x in zip(alpha, mu)]
            rhs2 = (lat.pairing(alpha, lam)
                    + intertwiner_phase_exponent(lat, dc, lam, shifted_mu, mu0)
                    + dc.exponent(alpha, mu)) % 2
            assert lhs == rhs2


def test_phase_coset_mismatch_rejected():
    lat = IntegralLattice.from_rows([[2]])
    with pytest.raises(ValueError, match="coset"):
        intertwiner_phase(lat, DualCocycle(lat), [Fraction(1, 2)],
                          [0], [Fraction(1, 2)])

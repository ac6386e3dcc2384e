"""Coefficient-ring arithmetic, Frobenius, and small surjections."""

from __future__ import annotations

import random

import pytest

from flab.errors import InvalidInput, RingMismatch
from flab.rings import make_field, make_ring, make_small_surjection

Z25 = make_ring("witt", 5, 1, 2)
F9 = make_ring("witt", 3, 2, 1)
W9_3 = make_ring("witt", 3, 2, 3)
D5_2 = make_ring("dual_numbers", 5, 1, 2)
D9_2 = make_ring("dual_numbers", 3, 2, 2)


def sample_rings():
    return [Z25, F9, W9_3, D5_2, D9_2, make_field(4)]


# -- constructors ------------------------------------------------------------


def test_make_ring_rejects_bad_parameters():
    with pytest.raises(InvalidInput):
        make_ring("witt", 9, 1, 1)
    with pytest.raises(InvalidInput):
        make_ring("witt", 2, 1, 1)
    with pytest.raises(InvalidInput):
        make_ring("galois", 5, 1, 1)
    with pytest.raises(InvalidInput):
        make_ring("witt", 5, 0, 1)
    with pytest.raises(InvalidInput):
        make_ring("dual_numbers", 5, 1, 0)


def test_make_field_accepts_prime_powers_only():
    assert make_field(4).minimal_poly == (1, 1, 1)
    assert make_field(5).size == 5
    assert make_field(9) == F9
    with pytest.raises(InvalidInput):
        make_field(12)
    with pytest.raises(InvalidInput):
        make_field(1)


def test_minimal_polynomials_are_lex_smallest():
    assert F9.minimal_poly == (1, 0, 1)
    assert make_ring("witt", 5, 2, 1).minimal_poly == (2, 0, 1)
    assert make_ring("witt", 5, 1, 3).minimal_poly == (0, 1)
    assert make_field(8).minimal_poly == (1, 1, 0, 1)


def test_ring_identity_and_caching():
    assert make_ring("witt", 5, 1, 2) is Z25
    assert Z25 != D5_2
    assert Z25 != make_ring("witt", 5, 1, 3)


# -- arithmetic laws -----------------------------------------------------------


def test_ring_axioms_on_random_triples():
    rng = random.Random(7)
    for ring in sample_rings():
        for _ in range(60):
            a = ring.random_element(rng)
            b = ring.random_element(rng)
            c = ring.random_element(rng)
            assert (a + b) + c == a + (b + c)
            assert a + b == b + a
            assert (a * b) * c == a * (b * c)
            assert a * b == b * a
            assert a * (b + c) == a * b + a * c
            assert a + ring.zero == a
            assert a * ring.one == a
            assert a - a == ring.zero
            assert a + (-a) == ring.zero


def test_int_coercion():
    x = Z25.from_int(7)
    assert x + 3 == 10
    assert 3 + x == 10
    assert 2 * x == 14
    assert x - 30 == 2
    assert 30 - x == 23
    assert x**2 == 24
    assert bool(Z25.zero) is False
    assert bool(x) is True


def test_cross_ring_arithmetic_is_rejected():
    with pytest.raises(RingMismatch):
        Z25.one + F9.one
    assert (Z25.one == F9.one) is False


# -- units, inverses, square roots --------------------------------------------


def test_inverse_on_all_units_of_small_rings():
    for ring in [Z25, F9, D5_2]:
        for x in ring.elements():
            if ring.is_unit(x):
                assert x * ring.inv(x) == ring.one
            else:
                with pytest.raises(InvalidInput):
                    ring.inv(x)


def test_inverse_on_random_units():
    rng = random.Random(11)
    for ring in sample_rings():
        for _ in range(40):
            x = ring.random_unit(rng)
            assert x * ring.inv(x) == ring.one
            assert (ring.one / x) * x == ring.one


def test_unit_sqrt_frozen_values():
    assert Z25.unit_sqrt(Z25.from_int(6)) == 16
    t = D5_2.pi()
    assert D5_2.unit_sqrt(1 + t) == 1 + 3 * t


def test_unit_sqrt_squares_back():
    rng = random.Random(13)
    for ring in [Z25, F9, W9_3, D5_2, D9_2]:
        for _ in range(30):
            u = ring.random_unit(rng) ** 2
            s = ring.unit_sqrt(u)
            assert s * s == u


def test_unit_sqrt_rejects_nonsquares_and_nonunits():
    # 2 is not a square mod 5
    with pytest.raises(InvalidInput):
        Z25.unit_sqrt(Z25.from_int(2))
    with pytest.raises(InvalidInput):
        Z25.unit_sqrt(Z25.from_int(5))


# -- Frobenius -----------------------------------------------------------------


def test_frobenius_is_pth_power_on_residue_fields():
    for field, p in [(F9, 3), (make_field(4), 2), (make_field(8), 2)]:
        for x in field.elements():
            assert field.frobenius(x) == x**p


def test_frobenius_fixed_field_is_prime_field():
    fixed = [x for x in F9.elements() if F9.frobenius(x) == x]
    assert len(fixed) == 3
    assert F9.from_int(0) in fixed
    assert F9.from_int(1) in fixed
    assert F9.from_int(2) in fixed


def test_frobenius_is_ring_homomorphism():
    rng = random.Random(17)
    for ring in [W9_3, D9_2, make_ring("witt", 5, 2, 2)]:
        for _ in range(50):
            a = ring.random_element(rng)
            b = ring.random_element(rng)
            assert ring.frobenius(a + b) == ring.frobenius(a) + ring.frobenius(b)
            assert ring.frobenius(a * b) == ring.frobenius(a) * ring.frobenius(b)
        assert ring.frobenius(ring.one) == ring.one


def test_frobenius_order_divides_f():
    rng = random.Random(19)
    for ring in [W9_3, D9_2]:
        for _ in range(25):
            x = ring.random_element(rng)
            y = x
            for _ in range(ring.f):
                y = ring.frobenius(y)
            assert y == x


def test_frobenius_lifts_residue_frobenius():
    rng = random.Random(23)
    for ring in [W9_3, D9_2]:
        k = ring.residue_ring()
        for _ in range(25):
            x = ring.random_element(rng)
            assert ring.residue(ring.frobenius(x)) == k.frobenius(ring.residue(x))


# -- Teichmuller ---------------------------------------------------------------


def test_teichmuller_frozen_values():
    assert Z25.teichmuller(2) == 7
    assert Z25.teichmuller(1) == 1
    assert Z25.teichmuller(-1) == 24
    assert Z25.teichmuller(0) == 0


def test_teichmuller_is_multiplicative_section():
    k = W9_3.residue_ring()
    for x in k.elements():
        t = W9_3.teichmuller(x)
        assert W9_3.residue(t) == x
        assert t ** (3**2) == t
    for x in k.elements():
        for y in k.elements():
            if x.data <= y.data:
                lhs = W9_3.teichmuller(x * y)
                rhs = W9_3.teichmuller(x) * W9_3.teichmuller(y)
                assert lhs == rhs


def test_teichmuller_rejected_for_dual_numbers():
    with pytest.raises(InvalidInput):
        D5_2.teichmuller(1)


# -- valuations and enumeration --------------------------------------------------


def test_valuation_and_pi_pow():
    assert Z25.val(Z25.from_int(10)) == 1
    assert Z25.val(Z25.from_int(3)) == 0
    assert Z25.val(Z25.zero) == 2
    assert Z25.pi_pow(1) == 5
    assert Z25.pi_pow(2) == Z25.zero
    t = D9_2.pi()
    assert D9_2.val(t) == 1
    assert D9_2.val(D9_2.one + t) == 0
    assert D9_2.val(D9_2.zero) == 2
    assert D9_2.pi_pow(2) == D9_2.zero


def test_elements_enumeration_matches_size_and_encoding_order():
    for ring in [Z25, F9, D5_2, make_field(4)]:
        seen = list(ring.elements())
        assert len(seen) == ring.size
        encodings = [ring.encode(x) for x in seen]
        assert encodings == sorted(encodings)
        assert len(set(encodings)) == len(encodings)


# -- towers and small surjections -------------------------------------------------


def test_residue_reduce_lift_round_trip():
    rng = random.Random(29)
    for ring in [W9_3, D9_2]:
        k = ring.residue_ring()
        assert k.is_field()
        for _ in range(20):
            x = k.random_element(rng)
            assert ring.residue(ring.lift_from(x)) == x


def test_small_surjection_round_trip_and_kernel():
    rng = random.Random(31)
    for source in [Z25, W9_3, D5_2, D9_2]:
        surj = make_small_surjection(source)
        assert surj.target.level == source.level - 1
        assert surj.target.family == source.family
        for _ in range(25):
            x = surj.target.random_element(rng)
            assert surj.reduce(surj.lift(x)) == x
        # the kernel generator is killed by the maximal ideal
        assert surj.kernel_gen * source.pi() == source.zero
        assert surj.reduce(surj.kernel_gen) == surj.target.zero
        k = source.residue_ring()
        for _ in range(25):
            kappa = k.random_element(rng)
            emb = surj.embed_kernel(kappa)
            assert surj.reduce(emb) == surj.target.zero
            assert surj.kernel_coefficient(emb) == kappa
        with pytest.raises(InvalidInput):
            surj.kernel_coefficient(source.one)


def test_small_surjection_rejects_level_one():
    with pytest.raises(InvalidInput):
        make_small_surjection(F9)


def test_dual_numbers_residue_is_shared_witt_field():
    assert D9_2.residue_ring() is F9
    t = D9_2.pi()
    x = D9_2.lift_from(F9.from_int(2)) + t
    assert D9_2.residue(x) == F9.from_int(2)

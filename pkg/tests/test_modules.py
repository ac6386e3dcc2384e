"""Module validation, twists, tensor, dual, base change, and morphisms."""

from __future__ import annotations

import random
from types import SimpleNamespace

import pytest

from flab.errors import (
    BlockRankMismatch,
    InvalidInput,
    RangeViolation,
    RingMismatch,
    SingularPhi,
    WeightOutOfBounds,
)
from flab.linalg import Matrix
from flab.modules import (
    FLBlock,
    FLModule,
    base_change,
    contains_isomorphism,
    dual,
    hom_mf,
    is_morphism,
    phi_column,
    reduce,
    tate_twist,
    tensor,
    validate,
)
from flab.rings import make_field, make_ring, make_small_surjection
from flab.testing import random_fl_module, random_invertible_matrix


def rank1(ring, weight, scalar=1):
    return FLModule(
        ring, (weight, weight), [FLBlock((weight,), Matrix(ring, [[scalar]]))]
    )


def sample_rings():
    return [
        make_field(5),
        make_ring("witt", 5, 1, 2),
        make_ring("witt", 5, 2, 2),
        make_ring("dual_numbers", 7, 1, 3),
    ]


# -- validation ----------------------------------------------------------------


def test_validate_canonical_module(canon2):
    validate(canon2)


def test_validate_rejects_singular_phi(F5):
    m = FLModule(F5, (0, 1), [FLBlock((0, 1), Matrix(F5, [[1, 0], [0, 0]]))])
    with pytest.raises(SingularPhi, match="block 0"):
        validate(m)


def test_validate_rejects_weight_out_of_bounds(F5):
    m = FLModule(F5, (0, 1), [FLBlock((0, 4), Matrix.identity(F5, 2))])
    with pytest.raises(WeightOutOfBounds):
        validate(m)


def test_validate_rejects_rank_mismatch():
    F25 = make_field(25)
    m = FLModule(
        F25,
        (0, 1),
        [
            FLBlock((0, 1), Matrix.identity(F25, 2)),
            FLBlock((0,), Matrix.identity(F25, 1)),
        ],
    )
    with pytest.raises(BlockRankMismatch):
        validate(m)


def test_block_count_must_divide_ring_degree(F5):
    with pytest.raises(InvalidInput):
        FLModule(
            F5,
            (0, 1),
            [FLBlock((0,), Matrix.identity(F5, 1)) for _ in range(2)],
        )


def test_malformed_blocks_are_rejected(F5):
    with pytest.raises(InvalidInput):
        FLBlock((1, 0), Matrix.identity(F5, 2))
    with pytest.raises(InvalidInput):
        FLBlock((0,), Matrix.identity(F5, 2))
    with pytest.raises(InvalidInput):
        FLModule(F5, (1, 0), [FLBlock((0,), Matrix.identity(F5, 1))])


def test_reconstruction_identity():
    rng = random.Random(41)
    for ring in sample_rings():
        m = random_fl_module(rng, ring, 3, weight_range=(0, 3))
        for tau in range(m.witt_degree):
            for i, w in enumerate(m.block(tau).weights):
                for j in range(m.bounds[0], w):
                    lower = phi_column(m, tau, i, j)
                    upper = phi_column(m, tau, i, j + 1)
                    assert lower == tuple(ring.pi() * x for x in upper)
    with pytest.raises(InvalidInput):
        phi_column(m, 0, 0, m.block(0).weights[0] + 1)


# -- twist ----------------------------------------------------------------------


def test_tate_twist(canon2):
    t = tate_twist(canon2, 3)
    assert t.block(0).weights == (3, 4)
    assert t.bounds == (3, 4)
    assert t.block(0).phi == canon2.block(0).phi
    assert tate_twist(t, -3) == canon2
    assert tate_twist(canon2, 0) == canon2
    validate(t)


# -- tensor -----------------------------------------------------------------------


def test_tensor_canonical_square(canon2):
    t = tensor(canon2, canon2)
    assert t.rank == 4
    assert t.block(0).weights == (0, 1, 1, 2)
    assert t.bounds == (0, 2)
    validate(t)


def test_tensor_unit_object(F5, canon2):
    unit = rank1(F5, 0)
    assert tensor(canon2, unit) == canon2
    assert tensor(unit, canon2) == canon2


def test_tensor_rank_one(F5):
    t = tensor(rank1(F5, 1, 2), rank1(F5, 2, 3))
    assert t.block(0).weights == (3,)
    assert t.block(0).phi[0, 0] == 6


def test_tensor_range_violation(F5, canon2):
    wide = FLModule(F5, (0, 3), [FLBlock((0, 3), Matrix.identity(F5, 2))])
    with pytest.raises(RangeViolation):
        tensor(wide, canon2)


def test_tensor_ring_mismatch(canon2):
    other = rank1(make_field(7), 0)
    with pytest.raises(RingMismatch):
        tensor(canon2, other)


def test_tensor_weight_multiset():
    rng = random.Random(43)
    for ring in sample_rings():
        m1 = random_fl_module(rng, ring, 2, weight_range=(0, 1))
        m2 = random_fl_module(rng, ring, 3, weight_range=(0, 2))
        t = tensor(m1, m2)
        expected = sorted(
            w1 + w2 for w1 in m1.block(0).weights for w2 in m2.block(0).weights
        )
        assert list(t.block(0).weights) == expected
        validate(t)


# -- dual -------------------------------------------------------------------------


def l_data(ring, fprime, s, c=1):
    return SimpleNamespace(
        s=(s,) * fprime, c=(ring.from_int(c),) * fprime
    )


def test_dual_canonical(canon2, F5):
    d = dual(canon2, l_data(F5, 1, 1))
    assert d.block(0).weights == (0, 1)
    assert d.block(0).phi == Matrix.identity(F5, 2)
    assert d.bounds == (0, 1)


def test_dual_of_rank_one_twisting_module(F5):
    L = rank1(F5, 2, 3)
    d = dual(L, SimpleNamespace(s=(2,), c=(F5.from_int(3),)))
    assert d.block(0).weights == (0,)
    validate(d)


def test_dual_weight_multiset_and_involution():
    rng = random.Random(47)
    for ring in sample_rings():
        for _ in range(12):
            m = random_fl_module(rng, ring, 3, witt_degree=1, weight_range=(0, 3))
            L = SimpleNamespace(s=(4,), c=(ring.random_unit(rng),))
            d = dual(m, L)
            validate(d)
            assert sorted(d.block(0).weights) == sorted(
                4 - w for w in m.block(0).weights
            )
            assert dual(d, L) == m


def test_dual_multi_block():
    F25 = make_field(25)
    rng = random.Random(53)
    m = random_fl_module(rng, F25, 2, witt_degree=2, weight_range=(0, 2))
    L = SimpleNamespace(
        s=(3, 2), c=(F25.random_unit(rng), F25.random_unit(rng))
    )
    d = dual(m, L)
    validate(d)
    for tau in range(2):
        assert sorted(d.block(tau).weights) == sorted(
            L.s[tau] - w for w in m.block(tau).weights
        )
    assert dual(d, L) == m


# -- base change ---------------------------------------------------------------------


def test_base_change_round_trip(canon2, Z25):
    surj = make_small_surjection(Z25)
    lifted = base_change(canon2, surj)
    assert lifted.ring is Z25
    assert lifted.block(0).phi == Matrix.identity(Z25, 2)
    validate(lifted)
    assert reduce(lifted, surj) == canon2


def test_base_change_random_round_trip():
    rng = random.Random(59)
    for source in [make_ring("witt", 5, 2, 3), make_ring("dual_numbers", 5, 1, 2)]:
        surj = make_small_surjection(source)
        m = random_fl_module(rng, surj.target, 2, weight_range=(0, 2))
        lifted = base_change(m, surj)
        validate(lifted)
        assert reduce(lifted, surj) == m
    with pytest.raises(RingMismatch):
        reduce(m, surj)


# -- morphisms ----------------------------------------------------------------------


def test_hom_canonical_is_two_dimensional(canon2):
    space = hom_mf(canon2, canon2)
    assert space.dimension == 2
    for maps in space.basis:
        assert is_morphism(maps, canon2, canon2)
        assert maps[0][0, 1] == 0 and maps[0][1, 0] == 0
    assert contains_isomorphism(space)


def test_hom_weight_gap_kills_maps(F5):
    assert hom_mf(rank1(F5, 0), rank1(F5, 1)).dimension == 0
    assert hom_mf(rank1(F5, 1), rank1(F5, 0)).dimension == 0


def test_identity_is_always_a_morphism():
    rng = random.Random(61)
    for ring in sample_rings():
        m = random_fl_module(rng, ring, 3, weight_range=(0, 3))
        ident = [Matrix.identity(ring, 3) for _ in range(m.witt_degree)]
        assert is_morphism(ident, m, m)
        assert hom_mf(m, m).dimension >= 1


def test_hom_basis_elements_are_morphisms():
    rng = random.Random(67)
    rings = [make_field(5), make_field(25), make_ring("witt", 5, 1, 2)]
    for ring in rings:
        fprime = ring.f
        m1 = random_fl_module(rng, ring, 2, witt_degree=fprime, weight_range=(0, 2))
        m2 = random_fl_module(rng, ring, 3, witt_degree=fprime, weight_range=(0, 2))
        space = hom_mf(m1, m2)
        for maps in space.basis:
            assert is_morphism(maps, m1, m2)
            assert any(m[u, a] for m in maps for u in range(3) for a in range(2))


def test_tensor_commutes_up_to_isomorphism():
    rng = random.Random(71)
    F5 = make_field(5)
    for _ in range(5):
        m1 = random_fl_module(rng, F5, 2, weight_range=(0, 1))
        m2 = random_fl_module(rng, F5, 2, weight_range=(0, 2))
        t12 = tensor(m1, m2)
        t21 = tensor(m2, m1)
        space = hom_mf(t12, t21)
        assert contains_isomorphism(space)


def test_operations_preserve_validity_randomized():
    rng = random.Random(73)
    for ring in sample_rings():
        for _ in range(60):
            m = random_fl_module(
                rng, ring, rng.randint(1, 3), weight_range=(0, rng.randint(0, 2))
            )
            validate(m)
            validate(tate_twist(m, rng.randint(-3, 3)))
            n = random_fl_module(rng, ring, rng.randint(1, 2), weight_range=(0, 1))
            validate(tensor(m, n))
            L = SimpleNamespace(
                s=(rng.randint(0, 4),), c=(ring.random_unit(rng),)
            )
            validate(dual(m, L))

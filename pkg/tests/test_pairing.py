"""Pairing validation and standard-form normalization."""

from __future__ import annotations

import random

import pytest

from flab.errors import (
    FiltrationViolation,
    InvalidInput,
    MultiplicityNotFree,
    NotPerfect,
    OddRankSymplectic,
    PhiIncompatible,
    SymmetryViolation,
)
from flab.linalg import Matrix
from flab.modules import FLBlock, FLModule, validate
from flab.pairing import (
    LData,
    PairedFLModule,
    change_basis,
    gram_transform,
    normalize_standard,
    sign_function,
    standard_gram,
    validate_pairing,
)
from flab.rings import make_field, make_ring
from flab.testing import pcanon2, random_paired_module


def with_gram(paired, rows):
    ring = paired.module.ring
    return PairedFLModule(
        paired.module, paired.L, (Matrix(ring, rows, ncols=paired.module.rank),)
    )


# -- validation -----------------------------------------------------------------


def test_canonical_symplectic_pairing_is_valid():
    p = pcanon2()
    validate(p.module)
    validate_pairing(p)


def test_symmetry_violation():
    with pytest.raises(SymmetryViolation):
        validate_pairing(with_gram(pcanon2(), [[0, 1], [1, 0]]))


def test_filtration_violation_takes_precedence():
    # the (2,2) entry breaks both skew-symmetry and the filtration bound;
    # the filtration is reported
    with pytest.raises(FiltrationViolation):
        validate_pairing(with_gram(pcanon2(), [[0, 1], [-1, 1]]))


def test_not_perfect_singular_gram():
    with pytest.raises(NotPerfect):
        validate_pairing(with_gram(pcanon2(), [[0, 0], [0, 0]]))


def test_not_perfect_weights_not_self_dual():
    base = pcanon2()
    ring = base.module.ring
    shifted = PairedFLModule(
        base.module, LData(-1, (3,), (ring.one,)), base.gram
    )
    with pytest.raises(NotPerfect):
        validate_pairing(shifted)


def test_odd_rank_symplectic_rejected():
    ring = make_field(5)
    module = FLModule(ring, (0, 0), [FLBlock((0,), Matrix(ring, [[1]]))])
    paired = PairedFLModule(
        module, LData(-1, (0,), (ring.one,)), (Matrix(ring, [[1]]),)
    )
    with pytest.raises(OddRankSymplectic):
        validate_pairing(paired)


def test_phi_incompatible():
    base = pcanon2()
    ring = base.module.ring
    module = FLModule(
        ring, (0, 1), [FLBlock((0, 1), Matrix(ring, [[1, 0], [0, 2]]))]
    )
    with pytest.raises(PhiIncompatible):
        validate_pairing(PairedFLModule(module, base.L, base.gram))


def test_ldata_validation():
    ring = make_field(5)
    with pytest.raises(InvalidInput):
        LData(2, (0,), (ring.one,))
    with pytest.raises(InvalidInput):
        LData(1, (0,), (ring.zero,))
    with pytest.raises(InvalidInput):
        LData(1, (0, 1), (ring.one,))


def test_random_paired_modules_are_valid():
    rng = random.Random(83)
    rings = [
        make_field(5),
        make_ring("witt", 5, 1, 2),
        make_field(25),
        make_ring("dual_numbers", 7, 1, 3),
    ]
    for ring in rings:
        for epsilon, rank in [(-1, 2), (-1, 4), (1, 2), (1, 3)]:
            fprime = ring.f
            paired = random_paired_module(
                rng, ring, rank, epsilon, witt_degree=fprime
            )
            validate(paired.module)
            validate_pairing(paired)


# -- standard forms ----------------------------------------------------------------


def test_standard_gram_shapes():
    ring = make_field(5)
    sym = standard_gram(ring, 3, 1)
    assert all(sym[i, 2 - i] == 1 for i in range(3))
    assert sym.transpose() == sym
    alt = standard_gram(ring, 4, -1)
    assert alt[0, 3] == 1 and alt[1, 2] == 1
    assert alt[2, 1] == -1 and alt[3, 0] == -1
    assert alt.transpose() == -1 * alt
    with pytest.raises(OddRankSymplectic):
        standard_gram(ring, 3, -1)


def test_sign_function():
    assert sign_function(4, 1) == (1, 1, 1, 1)
    assert sign_function(4, -1) == (1, 1, -1, -1)
    with pytest.raises(OddRankSymplectic):
        sign_function(3, -1)


def test_gram_transform():
    ring = make_field(5)
    G = standard_gram(ring, 2, -1)
    assert gram_transform(G, Matrix.identity(ring, 2)) == G
    C = Matrix.diagonal(ring, [ring.from_int(2), ring.from_int(3)])
    assert gram_transform(G, C) == G
    with pytest.raises(InvalidInput):
        gram_transform(G, Matrix(ring, [[1, 0], [0, 0]]))


# -- normalization ------------------------------------------------------------------


def test_normalize_is_identity_on_standard_input():
    p = pcanon2()
    result = normalize_standard(p)
    assert result.omega == (p.module.ring.one,)
    assert result.change_of_basis[0] == Matrix.identity(p.module.ring, 2)
    assert result.pairing == p


def test_normalize_rescales_scaled_symplectic_gram():
    p = with_gram(pcanon2(), [[0, 2], [-2, 0]])
    validate_pairing(p)
    result = normalize_standard(p)
    ring = p.module.ring
    assert result.omega == (ring.one,)
    assert result.change_of_basis[0] == Matrix.diagonal(
        ring, [ring.from_int(3), ring.one]
    )
    assert result.pairing.gram[0] == standard_gram(ring, 2, -1)


def test_normalize_odd_orthogonal_over_f7():
    rng = random.Random(89)
    ring = make_field(7)
    for _ in range(20):
        paired = random_paired_module(rng, ring, 3, 1, s=2, weight_lo=0)
        result = normalize_standard(paired)
        omega = result.omega[0]
        assert ring.is_unit(omega)
        assert result.pairing.gram[0] == omega * standard_gram(ring, 3, 1)
        # exact congruence transform
        C = result.change_of_basis[0]
        assert gram_transform(paired.gram[0], C) == result.pairing.gram[0]
        # new basis vectors have unit leading coefficient at their own weight
        for a in range(3):
            assert ring.is_unit(C[a, a])
            for u in range(3):
                if paired.module.block(0).weights[u] < paired.module.block(0).weights[a]:
                    assert C[u, a] == ring.zero


def test_normalize_across_rings_and_signs():
    rng = random.Random(97)
    rings = [
        make_field(5),
        make_ring("witt", 5, 1, 2),
        make_ring("dual_numbers", 5, 1, 3),
        make_field(25),
    ]
    for ring in rings:
        for epsilon, rank in [(-1, 2), (-1, 4), (1, 2), (1, 3), (1, 4)]:
            paired = random_paired_module(
                rng, ring, rank, epsilon, witt_degree=ring.f
            )
            result = normalize_standard(paired)
            std = standard_gram(ring, rank, epsilon)
            for tau in range(ring.f):
                assert result.pairing.gram[tau] == result.omega[tau] * std
                assert gram_transform(
                    paired.gram[tau], result.change_of_basis[tau]
                ) == result.pairing.gram[tau]
                if rank % 2 == 0:
                    assert result.omega[tau] == ring.one
            validate_pairing(result.pairing)


def test_normalize_m_gram_matches_divided_new_gram():
    rng = random.Random(101)
    ring = make_ring("witt", 5, 1, 2)
    paired = random_paired_module(rng, ring, 3, 1)
    result = normalize_standard(paired)
    m = result.m_matrix(0)
    h = m.transpose() * paired.gram[0] * m
    expected = (paired.L.c[0] * result.omega[0]) * standard_gram(ring, 3, 1)
    assert h == expected


def test_normalize_requires_distinct_weights():
    ring = make_field(5)
    module = FLModule(
        ring, (0, 1), [FLBlock((0, 0, 1, 1), Matrix.identity(ring, 4))]
    )
    gram = standard_gram(ring, 4, -1)
    paired = PairedFLModule(module, LData(-1, (1,), (ring.one,)), (gram,))
    validate_pairing(paired)
    with pytest.raises(MultiplicityNotFree):
        normalize_standard(paired)


def test_normalize_unit_reduce_canonicalizes_omega():
    rng = random.Random(103)
    for ring in [make_ring("witt", 5, 1, 3), make_ring("dual_numbers", 5, 1, 2)]:
        for _ in range(10):
            paired = random_paired_module(rng, ring, 3, 1)
            result = normalize_standard(paired, unit_reduce=True)
            omega = result.omega[0]
            assert omega == ring.lift_from(ring.residue(omega))
            assert result.pairing.gram[0] == omega * standard_gram(ring, 3, 1)
            validate_pairing(result.pairing)


def test_change_basis_rejects_non_adapted():
    p = pcanon2()
    ring = p.module.ring
    bad = Matrix(ring, [[1, 1], [0, 1]])  # sends weight-0 vector into weight 1 slot
    with pytest.raises(InvalidInput):
        change_basis(p, [bad])

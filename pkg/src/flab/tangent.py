"""Tangent space of the paired deformation condition over the dual numbers.

Spaces of endomorphism data are represented as lists of elements, one
element being a tuple of per-block matrices over the residue field.  Three
nested spaces are computed by exact kernel calculations:

* delta_space: A_τ^T G_τ + G_τ A_τ = 0 (the pairing Lie condition);
* fil0_subspace: additionally weight-adapted (A[u,a] = 0 when w_u < w_a);
* end_mf_pairing: additionally commuting with the semilinear maps, which
  over k leaves only same-weight components, so for distinct weights the
  condition reads A_{στ} Φ_τ = Φ_τ · diag(A_τ).

The deformation space over k[t]/(t²) is the quotient of delta_space by the
coboundaries diag(α_τ) − Φ_τ^{-1} α_{στ} Φ_τ of Fil^0 elements, giving

    dim tangent = dim delta − dim fil0 + dim end

(the kernel of the coboundary map is exactly end_mf_pairing).
deformation_count returns |k|^dim and can cross-check it against a direct
orbit enumeration for small fields.
"""

from __future__ import annotations

import itertools

from .errors import (
    EnumerationTooLarge,
    InternalRankFailure,
    InvalidInput,
    MultiplicityNotFree,
    RangeViolation,
)
from .feasibility import GroupType, root_data
from .linalg import Matrix
from .modules import validate
from .pairing import normalize_standard, validate_pairing

SIZE_GUARD = 10**6


class TangentReport:
    """The four dimensions of the exact sequence plus the formula check."""

    __slots__ = (
        "dim_pairing_lie",
        "dim_fil0",
        "dim_end_mf_pairing",
        "dim_tangent",
        "formula_check",
    )

    def __init__(self, **fields):
        for name in self.__slots__:
            setattr(self, name, fields[name])

    def as_dict(self):
        return {name: getattr(self, name) for name in self.__slots__}

    def __repr__(self):
        return f"TangentReport({self.as_dict()})"


def _check_multiplicity_free(module):
    for tau, blk in enumerate(module.blocks):
        if len(set(blk.weights)) != blk.rank:
            raise MultiplicityNotFree(f"block {tau} has repeated weights")


def _zero_element(paired):
    kring = paired.module.ring
    return tuple(
        Matrix.zero(kring, blk.rank, blk.rank) for blk in paired.module.blocks
    )


def _combine(paired, basis, coeffs):
    acc = _zero_element(paired)
    for coeff, elem in zip(coeffs, basis):
        if not coeff:
            continue
        acc = tuple(x + coeff * m for x, m in zip(acc, elem))
    return acc


def delta_space(paired):
    """Basis of per-block matrices A with A^T G_τ + G_τ A = 0."""
    validate(paired.module)
    validate_pairing(paired)
    kring = paired.module.ring
    fprime = paired.module.witt_degree
    basis = []
    for tau in range(fprime):
        G = paired.gram[tau]
        r = G.nrows
        rows = []
        for i in range(r):
            for j in range(r):
                row = [kring.zero] * (r * r)
                for u in range(r):
                    row[u * r + i] = row[u * r + i] + G[u, j]
                    row[u * r + j] = row[u * r + j] + G[i, u]
                rows.append(row)
        system = Matrix(kring, rows, ncols=r * r)
        for vec in system.kernel_gens():
            mats = []
            for t2 in range(fprime):
                rk = paired.module.blocks[t2].rank
                if t2 == tau:
                    mats.append(
                        Matrix(
                            kring,
                            [[vec[u * r + a] for a in range(r)] for u in range(r)],
                            ncols=r,
                        )
                    )
                else:
                    mats.append(Matrix.zero(kring, rk, rk))
            basis.append(tuple(mats))
    return basis


def fil0_subspace(paired, delta_basis):
    """Sub-basis of the span of delta_basis preserving the filtration."""
    _check_multiplicity_free(paired.module)
    kring = paired.module.ring
    module = paired.module
    delta_basis = list(delta_basis)
    if not delta_basis:
        return []
    rows = []
    for tau in range(module.witt_degree):
        weights = module.blocks[tau].weights
        r = module.blocks[tau].rank
        for u in range(r):
            for a in range(r):
                if weights[u] < weights[a]:
                    rows.append([elem[tau][u, a] for elem in delta_basis])
    if not rows:
        return delta_basis
    system = Matrix(kring, rows, ncols=len(delta_basis))
    return [_combine(paired, delta_basis, combo) for combo in system.kernel_gens()]


def end_mf_pairing(paired):
    """Basis of Fil^0 pairing-Lie elements commuting with the semilinear
    structure (joint kernel of all three constraint families)."""
    validate(paired.module)
    validate_pairing(paired)
    _check_multiplicity_free(paired.module)
    module = paired.module
    kring = module.ring
    fprime = module.witt_degree
    ranks = [blk.rank for blk in module.blocks]
    offsets = []
    total = 0
    for r in ranks:
        offsets.append(total)
        total += r * r
    rows = []
    for tau in range(fprime):
        G = paired.gram[tau]
        r = ranks[tau]
        off = offsets[tau]
        weights = module.blocks[tau].weights
        for i in range(r):
            for j in range(r):
                row = [kring.zero] * total
                for u in range(r):
                    row[off + u * r + i] = row[off + u * r + i] + G[u, j]
                    row[off + u * r + j] = row[off + u * r + j] + G[i, u]
                rows.append(row)
        for u in range(r):
            for a in range(r):
                if weights[u] < weights[a]:
                    row = [kring.zero] * total
                    row[off + u * r + a] = kring.one
                    rows.append(row)
    for tau in range(fprime):
        stau = (tau + 1) % fprime
        phi = module.blocks[tau].phi
        r = ranks[tau]
        for i in range(r):
            for a in range(r):
                row = [kring.zero] * total
                for u in range(r):
                    idx = offsets[stau] + i * r + u
                    row[idx] = row[idx] + phi[u, a]
                idx = offsets[tau] + a * r + a
                row[idx] = row[idx] - phi[i, a]
                rows.append(row)
    system = Matrix(kring, rows, ncols=total)
    basis = []
    for vec in system.kernel_gens():
        mats = []
        for tau in range(fprime):
            r = ranks[tau]
            off = offsets[tau]
            mats.append(
                Matrix(
                    kring,
                    [[vec[off + u * r + a] for a in range(r)] for u in range(r)],
                    ncols=r,
                )
            )
        basis.append(tuple(mats))
    return basis


def _num_pos_roots(epsilon, rank):
    if epsilon == -1:
        return root_data(GroupType("GSp", rank)).num_pos_roots
    if rank < 2:
        return 0
    return root_data(GroupType("GO", rank)).num_pos_roots


def tangent_report(paired):
    """All four dimensions of the exact sequence plus the root-count check."""
    validate(paired.module)
    validate_pairing(paired)
    _check_multiplicity_free(paired.module)
    weights = [w for blk in paired.module.blocks for w in blk.weights]
    spread = max(weights) - min(weights)
    p = paired.module.ring.p
    if 2 * spread > p - 2:
        raise RangeViolation(
            f"weight spread {spread} exceeds (p-2)/2 for p = {p}"
        )
    delta = delta_space(paired)
    fil0 = fil0_subspace(paired, delta)
    end = end_mf_pairing(paired)
    fprime = paired.module.witt_degree
    dim_tangent = len(delta) - len(fil0) + len(end)
    npos = _num_pos_roots(paired.L.epsilon, paired.module.rank)
    return TangentReport(
        dim_pairing_lie=len(delta),
        dim_fil0=len(fil0),
        dim_end_mf_pairing=len(end),
        dim_tangent=dim_tangent,
        formula_check=(dim_tangent - len(end) == fprime * npos),
    )


def _enumerate_count(paired):
    norm = normalize_standard(paired).pairing
    kring = norm.module.ring
    delta = delta_space(norm)
    fil0 = fil0_subspace(norm, delta)
    if kring.size ** len(delta) > SIZE_GUARD:
        raise EnumerationTooLarge(
            f"{kring.size}^{len(delta)} delta values exceed {SIZE_GUARD}"
        )
    elems = list(kring.elements())

    def span(basis):
        return {
            _combine(norm, basis, coeffs)
            for coeffs in itertools.product(elems, repeat=len(basis))
        }

    delta_set = span(delta)
    fprime = norm.module.witt_degree
    phis = [blk.phi for blk in norm.module.blocks]
    inv = [
        phi.inverse(error=InternalRankFailure("singular Φ while enumerating"))
        for phi in phis
    ]
    image = set()
    for coeffs in itertools.product(elems, repeat=len(fil0)):
        alpha = _combine(norm, fil0, coeffs)
        cob = tuple(
            Matrix.diagonal(kring, [alpha[tau][a, a] for a in range(phis[tau].nrows)])
            - inv[tau] * alpha[(tau + 1) % fprime] * phis[tau]
            for tau in range(fprime)
        )
        image.add(cob)
    if not image <= delta_set:
        raise InternalRankFailure("coboundary image left the delta space")
    return len(delta_set) // len(image)


def deformation_count(paired, enumerate_check=False):
    """|k|^{dim tangent}, optionally cross-checked by orbit enumeration."""
    if not paired.module.ring.is_field():
        raise InvalidInput("deformation counting requires a residue-field module")
    report = tangent_report(paired)
    size = paired.module.ring.size
    count = size**report.dim_tangent
    if count > SIZE_GUARD:
        raise EnumerationTooLarge(
            f"{size}^{report.dim_tangent} exceeds {SIZE_GUARD}"
        )
    if enumerate_check:
        observed = _enumerate_count(paired)
        if observed != count:
            raise InternalRankFailure(
                f"enumeration found {observed} classes, formula gives {count}"
            )
    return count

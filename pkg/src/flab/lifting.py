"""Lifting paired modules through small surjections, one level at a time.

Given a valid paired module over R in standard form (Gram ω_τ · std) and a
small surjection R′ ↠ R with one-dimensional kernel I (I² = 0, m_{R′} I = 0),
a lift is Φ′_τ = C_τ + Δ_τ with C_τ the canonical entrywise lift and Δ_τ
supported in I.  The pairing axioms reduce to the exact matrix equation

    Δ_τ^T S C_τ + C_τ^T S Δ_τ = D_τ := λ′_τ S − C_τ^T S C_τ

per block, with S the standard form and λ′_τ = c′_τ ω′_τ / ω′_{στ} built
from canonical lifts.  D_τ lands in I because the base satisfies the axioms;
identifying I with the residue field k turns each block into a linear system
over k whose unknowns are the r² entries of Δ_τ.

Grouping equations by their first index a (descending) makes the system
block-triangular with full-row-rank diagonal blocks (rows are the
independent functionals S·C_b), so back-substitution always succeeds; for
orthogonal pairings the diagonal equations (a, a) are included, each with a
factor 2 (a unit, p odd).
"""

from __future__ import annotations

from .errors import (
    InternalRankFailure,
    InvalidInput,
    MultiplicityNotFree,
    RangeViolation,
    RingMismatch,
)
from .linalg import Matrix
from .modules import FLBlock, FLModule, validate
from .modules import reduce as reduce_module
from .pairing import (
    LData,
    PairedFLModule,
    normalize_standard,
    reduce_paired,
    sign_function,
    standard_gram,
    validate_pairing,
)
from .rings import make_ring, make_small_surjection


class LiftProblem:
    """A valid paired module plus the small surjection to lift through."""

    __slots__ = ("base", "surj", "kernel_elem")

    def __init__(self, base, surj):
        if base.module.ring != surj.target:
            raise RingMismatch("base must live over the target of the surjection")
        validate(base.module)
        validate_pairing(base)
        for tau, blk in enumerate(base.module.blocks):
            if len(set(blk.weights)) != blk.rank:
                raise MultiplicityNotFree(f"block {tau} has repeated weights")
        weights = [w for blk in base.module.blocks for w in blk.weights]
        spread = max(weights) - min(weights)
        p = base.module.ring.p
        if 2 * spread > p - 2:
            raise RangeViolation(
                f"weight spread {spread} exceeds (p-2)/2 for p = {p}"
            )
        self.base = base
        self.surj = surj
        self.kernel_elem = surj.kernel_gen


class CorrectionSystem:
    """The per-block linear systems determining the correction Δ.

    coeff[τ] holds the residue of the (normalized) Φ_τ -- initial-lift
    coefficients only matter through their residues since m_{R′} I = 0;
    defect[τ] holds the defect constants as residue-field scalars under the
    kernel identification; sign is the per-index ±1 of the standard form.
    """

    __slots__ = (
        "problem",
        "normalized",
        "lifts",
        "omega_lift",
        "c_lift",
        "lambda_lift",
        "defect",
        "coeff",
        "sign",
        "epsilon",
        "rank",
        "kring",
    )

    def __init__(self, **fields):
        for name in self.__slots__:
            setattr(self, name, fields[name])

    @property
    def witt_degree(self):
        return len(self.coeff)

    def equation_pairs(self):
        """Equation indices (a, b), grouped by first index a in descending
        order; orthogonal systems include the diagonal (a, a)."""
        pairs = []
        for a in range(self.rank - 1, -1, -1):
            start = a if self.epsilon == 1 else a + 1
            for b in range(start, self.rank):
                pairs.append((a, b))
        return pairs

    def _functionals(self, tau):
        # row a of the result is the functional x -> x^T S C_a on k^r
        std_k = standard_gram(self.kring, self.rank, self.epsilon)
        return std_k * self.coeff[tau]

    def diagonal_block(self, tau, a):
        """Matrix of the equations with first index a acting on Δ column a."""
        F = self._functionals(tau)
        rows = []
        start = a if self.epsilon == 1 else a + 1
        for b in range(start, self.rank):
            col = F.col(b)
            if b == a:
                rows.append([2 * x for x in col])
            else:
                rows.append(list(col))
        return Matrix(self.kring, rows, ncols=self.rank)

    def block_grid(self, tau):
        """T as position blocks: grid[i][j] maps Δ column a_j = r-1-j into the
        equation group with first index a_i = r-1-i."""
        k = self.kring
        r = self.rank
        eps = self.epsilon
        F = self._functionals(tau)
        zero_row = [k.zero] * r
        grid = []
        for i in range(r):
            a = r - 1 - i
            start = a if eps == 1 else a + 1
            height = r - start
            row_of_blocks = []
            for j in range(r):
                target = r - 1 - j
                rows = [list(zero_row) for _ in range(height)]
                for pos, b in enumerate(range(start, r)):
                    if target == a:
                        col = F.col(b)
                        rows[pos] = (
                            [2 * x for x in col] if b == a else list(col)
                        )
                    elif target == b and b != a:
                        rows[pos] = [eps * x for x in F.col(a)]
                row_of_blocks.append(Matrix(k, rows, ncols=r))
            grid.append(row_of_blocks)
        return grid


def build_correction_system(prob, initial_lift=None):
    """Normalize the base, lift canonically (or take the given lift), and
    assemble per-block defects and coefficients over the residue field."""
    surj = prob.surj
    upper = surj.source
    norm = normalize_standard(prob.base)
    base = norm.pairing
    module = base.module
    ring = module.ring
    fprime = module.witt_degree
    rank = module.rank
    eps = base.L.epsilon
    if initial_lift is None:
        lifts = tuple(
            blk.phi.map(upper.lift_from, ring=upper) for blk in module.blocks
        )
    else:
        lifts = tuple(initial_lift)
        if len(lifts) != fprime:
            raise InvalidInput("one initial lift per block required")
        for tau, C in enumerate(lifts):
            if C.ring != upper:
                raise RingMismatch(f"initial lift block {tau} over the wrong ring")
            reduced = C.map(lambda x: upper.reduce_to(x, ring), ring=ring)
            if reduced != module.blocks[tau].phi:
                raise InvalidInput(
                    f"initial lift block {tau} does not reduce to the normalized Φ"
                )
    omega_lift = tuple(upper.lift_from(w) for w in norm.omega)
    c_lift = tuple(upper.lift_from(c) for c in base.L.c)
    lambda_lift = tuple(
        c_lift[tau] * omega_lift[tau] * upper.inv(omega_lift[(tau + 1) % fprime])
        for tau in range(fprime)
    )
    std_upper = standard_gram(upper, rank, eps)
    kring = upper.residue_ring()
    defects = []
    coeffs = []
    for tau in range(fprime):
        C = lifts[tau]
        dmat = lambda_lift[tau] * std_upper - C.transpose() * std_upper * C
        if dmat.transpose() != eps * dmat:
            raise InternalRankFailure(f"defect of block {tau} lost ε-symmetry")
        rows = []
        for a in range(rank):
            row = []
            for b in range(rank):
                try:
                    row.append(surj.kernel_coefficient(dmat[a, b]))
                except InvalidInput as exc:
                    raise InternalRankFailure(
                        f"defect entry ({a + 1}, {b + 1}) of block {tau} "
                        "is not in the kernel"
                    ) from exc
            rows.append(row)
        defects.append(Matrix(kring, rows, ncols=rank))
        coeffs.append(module.blocks[tau].phi.map(ring.residue, ring=kring))
    return CorrectionSystem(
        problem=prob,
        normalized=base,
        lifts=lifts,
        omega_lift=omega_lift,
        c_lift=c_lift,
        lambda_lift=lambda_lift,
        defect=tuple(defects),
        coeff=tuple(coeffs),
        sign=sign_function(rank, eps),
        epsilon=eps,
        rank=rank,
        kring=kring,
    )


def _pair_value(sign, x, y):
    # x^T S y over the residue field, S the standard form
    r = len(x)
    acc = None
    for u in range(r):
        t = x[u] * y[r - 1 - u]
        if sign[u] == -1:
            t = -t
        acc = t if acc is None else acc + t
    return acc


def _solve_full_row_rank(kring, rows, rhs, width):
    """Gauss with first-solvable column pivots; free coordinates stay zero."""
    work = [list(row) + [val] for row, val in zip(rows, rhs)]
    pivots = []
    used = set()
    for col in range(width):
        sel = None
        for idx in range(len(work)):
            if idx not in used and work[idx][col]:
                sel = idx
                break
        if sel is None:
            continue
        inv = kring.inv(work[sel][col])
        work[sel] = [inv * v for v in work[sel]]
        for idx in range(len(work)):
            if idx != sel and work[idx][col]:
                c = work[idx][col]
                work[idx] = [v - c * w for v, w in zip(work[idx], work[sel])]
        used.add(sel)
        pivots.append((sel, col))
    if len(used) != len(work):
        raise InternalRankFailure("correction block lost full row rank")
    x = [kring.zero] * width
    for sel, col in pivots:
        x[col] = work[sel][width]
    return x


def solve_correction(system):
    """Per-block Δ over k with T(Δ) equal to the defects, by descending
    back-substitution on the column blocks."""
    k = system.kring
    r = system.rank
    eps = system.epsilon
    sign = system.sign
    deltas = []
    for tau in range(system.witt_degree):
        cbar = system.coeff[tau]
        dmat = system.defect[tau]
        F = system._functionals(tau)
        cols = {}
        for a in range(r - 1, -1, -1):
            rows = []
            rhs = []
            if eps == 1:
                rows.append([2 * x for x in F.col(a)])
                rhs.append(dmat[a, a])
            for b in range(a + 1, r):
                rows.append(list(F.col(b)))
                rhs.append(dmat[a, b] - _pair_value(sign, cbar.col(a), cols[b]))
            cols[a] = (
                _solve_full_row_rank(k, rows, rhs, r) if rows else [k.zero] * r
            )
        deltas.append(
            Matrix(k, [[cols[a][u] for a in range(r)] for u in range(r)], ncols=r)
        )
    return tuple(deltas)


def residual(system, deltas):
    """Per-block E(Δ) - D over k; all zero exactly when Δ solves the system."""
    k = system.kring
    r = system.rank
    sign = system.sign
    out = []
    for tau in range(system.witt_degree):
        cbar = system.coeff[tau]
        delta = deltas[tau]
        rows = []
        for a in range(r):
            row = []
            for b in range(r):
                e = _pair_value(sign, delta.col(a), cbar.col(b)) + _pair_value(
                    sign, cbar.col(a), delta.col(b)
                )
                row.append(e - system.defect[tau][a, b])
            rows.append(row)
        out.append(Matrix(k, rows, ncols=r))
    return tuple(out)


def lift_small(prob):
    """One-step lift: returns P′ over the source ring, in standard form, with
    reduce_paired(P′) equal to the normalized base bit-for-bit."""
    system = build_correction_system(prob)
    deltas = solve_correction(system)
    surj = prob.surj
    upper = surj.source
    base = system.normalized
    module = base.module
    rank = system.rank
    eps = system.epsilon
    blocks = []
    for tau in range(system.witt_degree):
        C = system.lifts[tau]
        delta = deltas[tau]
        rows = []
        for u in range(rank):
            row = []
            for a in range(rank):
                entry = C[u, a]
                d = delta[u, a]
                if d:
                    entry = entry + surj.embed_kernel(d)
                row.append(entry)
            rows.append(row)
        blocks.append(
            FLBlock(module.blocks[tau].weights, Matrix(upper, rows, ncols=rank))
        )
    lifted_module = FLModule(upper, module.bounds, blocks)
    std_upper = standard_gram(upper, rank, eps)
    lifted = PairedFLModule(
        lifted_module,
        LData(eps, base.L.s, system.c_lift),
        tuple(system.omega_lift[tau] * std_upper for tau in range(system.witt_degree)),
    )
    validate(lifted_module)
    validate_pairing(lifted)
    if reduce_paired(lifted, surj) != base:
        raise InternalRankFailure("lift does not reduce to the normalized base")
    return lifted


def _transport_level1(paired, new_ring):
    # between the residue field and a level-1 ring of either family
    module = paired.module
    blocks = [
        FLBlock(blk.weights, blk.phi.map(new_ring.lift_from, ring=new_ring))
        for blk in module.blocks
    ]
    new_module = FLModule(new_ring, module.bounds, blocks)
    L = LData(
        paired.L.epsilon,
        paired.L.s,
        tuple(new_ring.lift_from(c) for c in paired.L.c),
    )
    grams = tuple(g.map(new_ring.lift_from, ring=new_ring) for g in paired.gram)
    return PairedFLModule(new_module, L, grams)


def lift_tower(base, n, family="witt"):
    """Chain of lifts over levels 1..n of one ring family.

    The base must live over the residue field; it is normalized first, so the
    chain starts at its standard form and every successive reduction is exact.
    """
    if not isinstance(n, int) or n < 1:
        raise InvalidInput("tower depth must be a positive integer")
    if family not in ("witt", "dual_numbers"):
        raise InvalidInput(f"unknown ring family {family!r}")
    ring = base.module.ring
    if not ring.is_field():
        raise InvalidInput("tower base must live over the residue field")
    start = normalize_standard(base).pairing
    level1 = make_ring(family, ring.p, ring.f, 1)
    if level1 != ring:
        start = _transport_level1(start, level1)
    chain = [start]
    for level in range(2, n + 1):
        upper = make_ring(family, ring.p, ring.f, level)
        surj = make_small_surjection(upper)
        chain.append(lift_small(LiftProblem(chain[-1], surj)))
    return chain

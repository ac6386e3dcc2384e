"""Filtered semilinear modules with block decomposition.

An FLModule over a coefficient ring R stores, for each block τ ∈ Z/f′Z
(f′ must divide the degree f of R):

* an ascending weight list w_{τ,1} <= ... <= w_{τ,r} attached to an adapted
  basis e_{τ,1}, ..., e_{τ,r} -- the filtration step Fil^j of block τ is the
  span of the e_{τ,i} with w_{τ,i} >= j;
* an r x r matrix Φ_τ over R whose column i expresses φ^{w_{τ,i}}(e_{τ,i})
  in the adapted basis of block στ = τ + 1.

Lower divided maps are reconstructed, never stored: φ^j(e_{τ,i}) =
p^{w_{τ,i} - j} * (column i of Φ_τ) for j <= w_{τ,i}.  The semilinearity of φ
is exhausted by the τ -> τ+1 block shift, so each Φ_τ is an honest R-linear
matrix.

Operations: validation of the axioms, Tate twist, tensor product, dual
relative to a rank-1 twisting datum, base change along level maps, and
morphism spaces.
"""

from __future__ import annotations

from .errors import (
    BlockRankMismatch,
    InvalidInput,
    RangeViolation,
    RingMismatch,
    SingularPhi,
    WeightOutOfBounds,
)
from .linalg import Matrix
from .rings import Ring, SmallSurj


class FLBlock:
    """One τ-block: ascending weights plus the jump-map matrix Φ_τ."""

    __slots__ = ("weights", "phi")

    def __init__(self, weights, phi):
        weights = tuple(int(w) for w in weights)
        if not isinstance(phi, Matrix):
            raise InvalidInput("phi must be a Matrix")
        if phi.nrows != phi.ncols:
            raise InvalidInput("phi must be square")
        if phi.ncols == 0:
            raise InvalidInput("blocks must have positive rank")
        if len(weights) != phi.ncols:
            raise InvalidInput("one weight per basis vector required")
        if any(weights[i] > weights[i + 1] for i in range(len(weights) - 1)):
            raise InvalidInput("weights must be ascending")
        self.weights = weights
        self.phi = phi

    @property
    def rank(self):
        return self.phi.nrows

    def __eq__(self, other):
        if not isinstance(other, FLBlock):
            return NotImplemented
        return self.weights == other.weights and self.phi == other.phi

    def __hash__(self):
        return hash((self.weights, self.phi))

    def __repr__(self):
        return f"FLBlock(weights={self.weights}, phi={self.phi!r})"


class FLModule:
    """Filtered module in adapted form; immutable."""

    __slots__ = ("ring", "bounds", "blocks")

    def __init__(self, ring, bounds, blocks):
        blocks = tuple(blocks)
        if not blocks:
            raise InvalidInput("at least one block required")
        a, b = bounds
        a, b = int(a), int(b)
        if a > b:
            raise InvalidInput(f"empty weight interval [{a}, {b}]")
        if ring.f % len(blocks):
            raise InvalidInput(
                f"block count {len(blocks)} does not divide the ring degree f = {ring.f}"
            )
        for blk in blocks:
            if blk.phi.ring != ring:
                raise RingMismatch("block matrix over the wrong ring")
        self.ring = ring
        self.bounds = (a, b)
        self.blocks = blocks

    @property
    def witt_degree(self):
        return len(self.blocks)

    @property
    def rank(self):
        return self.blocks[0].rank

    def block(self, tau):
        return self.blocks[tau % len(self.blocks)]

    def __eq__(self, other):
        if not isinstance(other, FLModule):
            return NotImplemented
        return (
            self.ring == other.ring
            and self.bounds == other.bounds
            and self.blocks == other.blocks
        )

    def __hash__(self):
        return hash((self.ring, self.bounds, self.blocks))

    def __repr__(self):
        return (
            f"FLModule(ring={self.ring!r}, bounds={self.bounds}, "
            f"rank={self.rank}, blocks={self.witt_degree})"
        )


class MorphismSpace:
    """Solutions of the morphism equations between two modules.

    basis holds per-block matrix tuples; over a residue field it is a basis,
    over a higher-level ring a generating set of the Hom module.
    """

    __slots__ = ("domain", "codomain", "basis")

    def __init__(self, domain, codomain, basis):
        self.domain = domain
        self.codomain = codomain
        self.basis = tuple(basis)

    @property
    def dimension(self):
        return len(self.basis)

    def __repr__(self):
        return f"MorphismSpace(dimension={self.dimension})"


# ---------------------------------------------------------------------------
# validation and reconstruction


def validate(module):
    """Check all axioms; raise a specific error naming the first violation."""
    a, b = module.bounds
    rank = module.blocks[0].rank
    for tau, blk in enumerate(module.blocks):
        if blk.rank != rank:
            raise BlockRankMismatch(
                f"block {tau} has rank {blk.rank}, expected {rank}"
            )
    for tau, blk in enumerate(module.blocks):
        for w in blk.weights:
            if not a <= w <= b:
                raise WeightOutOfBounds(
                    f"block {tau} weight {w} outside [{a}, {b}]"
                )
    for tau, blk in enumerate(module.blocks):
        blk.phi.inverse(error=SingularPhi(f"block {tau}"))


def phi_column(module, tau, i, j):
    """Reconstructed φ^j(e_{τ,i}) in the basis of block στ, for j <= w_{τ,i}."""
    blk = module.block(tau)
    w = blk.weights[i]
    if j > w:
        raise InvalidInput(f"φ^{j} is not defined on a weight-{w} vector")
    scale = module.ring.pi_pow(w - j)
    return tuple(scale * x for x in blk.phi.col(i))


# ---------------------------------------------------------------------------
# twists, tensor, dual, base change


def tate_twist(module, s):
    """Shift the filtration: weights and bounds move by +s, Φ is unchanged."""
    s = int(s)
    blocks = [
        FLBlock(tuple(w + s for w in blk.weights), blk.phi) for blk in module.blocks
    ]
    a, b = module.bounds
    return FLModule(module.ring, (a + s, b + s), blocks)


def _pair_order(weights1, weights2):
    pairs = sorted(
        (weights1[i] + weights2[j], i, j)
        for i in range(len(weights1))
        for j in range(len(weights2))
    )
    return [(i, j) for _, i, j in pairs], [w for w, _, _ in pairs]


def tensor(m1, m2):
    """Tensor product, adapted basis sorted by total weight."""
    if m1.ring != m2.ring:
        raise RingMismatch("tensor factors over different rings")
    if m1.witt_degree != m2.witt_degree:
        raise InvalidInput("tensor factors with different block counts")
    ring = m1.ring
    a = m1.bounds[0] + m2.bounds[0]
    b = m1.bounds[1] + m2.bounds[1]
    if b - a > ring.p - 2:
        raise RangeViolation(
            f"weight interval length {b - a} exceeds p-2 = {ring.p - 2}"
        )
    fprime = m1.witt_degree
    orders = []
    sums = []
    for tau in range(fprime):
        order, weight_sums = _pair_order(
            m1.blocks[tau].weights, m2.blocks[tau].weights
        )
        orders.append(order)
        sums.append(weight_sums)
    blocks = []
    for tau in range(fprime):
        stau = (tau + 1) % fprime
        phi1 = m1.blocks[tau].phi
        phi2 = m2.blocks[tau].phi
        rows = []
        for u, v in orders[stau]:
            rows.append([phi1[u, i] * phi2[v, j] for i, j in orders[tau]])
        blocks.append(FLBlock(tuple(sums[tau]), Matrix(ring, rows, ncols=len(orders[tau]))))
    return FLModule(ring, (a, b), blocks)


def dual(module, L):
    """Dual relative to the rank-1 twisting datum L (shifts L.s, units L.c).

    Block τ gets weights {s_τ - w : w ∈ weights_τ}, and on the
    ascending-sorted dual basis Φ^∨_τ = J (c_τ (Φ_τ^{-1})^T) J with J the
    index reversal.  Output bounds are tight.
    """
    ring = module.ring
    fprime = module.witt_degree
    if len(L.s) != fprime or len(L.c) != fprime:
        raise InvalidInput("twisting datum has the wrong number of blocks")
    blocks = []
    seen = []
    for tau in range(fprime):
        blk = module.blocks[tau]
        r = blk.rank
        rev = Matrix.permutation(ring, tuple(range(r - 1, -1, -1)))
        inv = blk.phi.inverse(error=SingularPhi(f"block {tau}"))
        phi_dual = rev * (inv.transpose() * L.c[tau]) * rev
        weights = tuple(L.s[tau] - w for w in reversed(blk.weights))
        seen.extend(weights)
        blocks.append(FLBlock(weights, phi_dual))
    return FLModule(ring, (min(seen), max(seen)), blocks)


def base_change(module, target):
    """Lift canonically along a small surjection (or to a higher-level ring)."""
    if isinstance(target, SmallSurj):
        if module.ring != target.target:
            raise RingMismatch("module is not over the quotient of the surjection")
        upper = target.source
    elif isinstance(target, Ring):
        upper = target
    else:
        raise InvalidInput("base_change expects a SmallSurj or a ring")
    blocks = [
        FLBlock(blk.weights, blk.phi.map(upper.lift_from, ring=upper))
        for blk in module.blocks
    ]
    return FLModule(upper, module.bounds, blocks)


def reduce(module, surj):
    """Push a module down a small surjection by entrywise reduction."""
    if module.ring != surj.source:
        raise RingMismatch("module is not over the source of the surjection")
    target = surj.target
    blocks = [
        FLBlock(blk.weights, blk.phi.map(lambda x: surj.source.reduce_to(x, target), ring=target))
        for blk in module.blocks
    ]
    return FLModule(target, module.bounds, blocks)


# ---------------------------------------------------------------------------
# morphisms


def _filtration_ok(A, dom_weights, cod_weights):
    for u in range(A.nrows):
        for a in range(A.ncols):
            if cod_weights[u] < dom_weights[a] and A[u, a]:
                return False
    return True


def _divided_action(ring, A, dom_weights, cod_weights):
    """Entrywise p^{w_cod_u - w_dom_a} A[u,a]; zero where the exponent is negative."""
    rows = []
    for u in range(A.nrows):
        row = []
        for a in range(A.ncols):
            gap = cod_weights[u] - dom_weights[a]
            row.append(ring.pi_pow(gap) * A[u, a] if gap >= 0 else ring.zero)
        rows.append(row)
    return Matrix(ring, rows, ncols=A.ncols)


def is_morphism(maps, domain, codomain):
    """Check filtration preservation and φ-intertwining of per-block matrices."""
    if domain.ring != codomain.ring:
        raise RingMismatch("morphism between modules over different rings")
    fprime = domain.witt_degree
    if codomain.witt_degree != fprime or len(maps) != fprime:
        raise InvalidInput("block count mismatch")
    ring = domain.ring
    for tau in range(fprime):
        if not _filtration_ok(
            maps[tau], domain.blocks[tau].weights, codomain.blocks[tau].weights
        ):
            return False
    for tau in range(fprime):
        stau = (tau + 1) % fprime
        lhs = maps[stau] * domain.blocks[tau].phi
        divided = _divided_action(
            ring, maps[tau], domain.blocks[tau].weights, codomain.blocks[tau].weights
        )
        if lhs != codomain.blocks[tau].phi * divided:
            return False
    return True


def hom_mf(domain, codomain):
    """Solve the morphism equations; basis over a field, generators otherwise.

    Unknowns are the entries A_τ[u,a] with w^cod_{τ,u} >= w^dom_{τ,a} (all
    others vanish by filtration preservation); the equations are
    A_{στ} Φ^dom_τ = Φ^cod_τ · (p-power divided action of A_τ) per block.
    """
    if domain.ring != codomain.ring:
        raise RingMismatch("hom between modules over different rings")
    fprime = domain.witt_degree
    if codomain.witt_degree != fprime:
        raise InvalidInput("block count mismatch")
    ring = domain.ring
    rM = domain.rank
    rN = codomain.rank
    unknowns = []
    index = {}
    for tau in range(fprime):
        wM = domain.blocks[tau].weights
        wN = codomain.blocks[tau].weights
        for u in range(rN):
            for a in range(rM):
                if wN[u] >= wM[a]:
                    index[(tau, u, a)] = len(unknowns)
                    unknowns.append((tau, u, a))
    rows = []
    zero = ring.zero
    for tau in range(fprime):
        stau = (tau + 1) % fprime
        phiM = domain.blocks[tau].phi
        phiN = codomain.blocks[tau].phi
        wM = domain.blocks[tau].weights
        wN = codomain.blocks[tau].weights
        for v in range(rN):
            for a in range(rM):
                coeffs = [zero] * len(unknowns)
                for u in range(rM):
                    pos = index.get((stau, v, u))
                    if pos is not None and phiM[u, a]:
                        coeffs[pos] = coeffs[pos] + phiM[u, a]
                for u in range(rN):
                    pos = index.get((tau, u, a))
                    if pos is not None:
                        c = phiN[v, u] * ring.pi_pow(wN[u] - wM[a])
                        if c:
                            coeffs[pos] = coeffs[pos] - c
                rows.append(coeffs)
    system = Matrix(ring, rows, ncols=len(unknowns))
    basis = []
    for gen in system.kernel_gens():
        per_block = [
            [[zero for _ in range(rM)] for _ in range(rN)] for _ in range(fprime)
        ]
        for pos, (tau, u, a) in enumerate(unknowns):
            per_block[tau][u][a] = gen[pos]
        basis.append(
            tuple(Matrix(ring, m, ncols=rM) for m in per_block)
        )
    return MorphismSpace(domain, codomain, basis)


def contains_isomorphism(space):
    """Whether some k-combination of the basis is invertible in every block.

    Searches basis elements first, then random combinations; exact because a
    found witness is checked by is_morphism and inversion.
    """
    import random as _random

    domain, codomain = space.domain, space.codomain
    if domain.rank != codomain.rank:
        return False
    ring = domain.ring

    def invertible(maps):
        return all(m.is_invertible() for m in maps)

    for maps in space.basis:
        if invertible(maps):
            return True
    rng = _random.Random(0)
    fprime = domain.witt_degree
    for _ in range(200):
        combo = [Matrix.zero(ring, codomain.rank, domain.rank) for _ in range(fprime)]
        for maps in space.basis:
            c = ring.random_element(rng)
            combo = [acc + c * m for acc, m in zip(combo, maps)]
        if invertible(combo):
            return True
    return False

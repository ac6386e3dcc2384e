"""ε-symmetric perfect pairings valued in a rank-1 twisting module.

A PairedFLModule couples an FLModule with per-block Gram matrices G_τ
(recording ⟨e_{τ,i}, e_{τ,j}⟩ against a fixed basis vector of L_τ) and the
twisting datum LData: per-block weights s_τ, units c_τ = φ^{s_τ}_L on the
fixed bases, and the sign ε (+1 orthogonal, -1 symplectic).

The axioms checked by validate_pairing:

* filtration: G_τ[i,j] = 0 whenever w_{τ,i} + w_{τ,j} > s_τ;
* ε-symmetry: G_τ^T = ε G_τ;
* perfectness: G_τ invertible, which with the filtration support forces the
  weight multiset to be self-dual ({w} = {s_τ - w});
* Φ-compatibility: Φ_τ^T G_{στ} Φ_τ = c_τ · (p^{s_τ-w_i-w_j} G_τ[i,j])_{ij}.

normalize_standard turns any multiplicity-free valid pairing into an exact
unit multiple ω_τ of the standard anti-diagonal form by a weight-adapted
change of basis, clearing Gram entries with exact unit divisions so the
result holds over every level of the ring tower.
"""

from __future__ import annotations

from .errors import (
    FiltrationViolation,
    InternalRankFailure,
    InvalidInput,
    MultiplicityNotFree,
    NotPerfect,
    OddRankSymplectic,
    PhiIncompatible,
    RingMismatch,
    SymmetryViolation,
)
from .linalg import Matrix
from .modules import FLBlock, FLModule
from .modules import reduce as _reduce_module
from .rings import RingElem


class LData:
    """Twisting datum: per-block weight s_τ and unit c_τ, plus the sign ε."""

    __slots__ = ("epsilon", "s", "c")

    def __init__(self, epsilon, s, c):
        if epsilon not in (1, -1):
            raise InvalidInput("epsilon must be +1 or -1")
        s = tuple(int(x) for x in s)
        c = tuple(c)
        if len(s) != len(c) or not s:
            raise InvalidInput("s and c must be equal-length nonempty tuples")
        for unit in c:
            if not isinstance(unit, RingElem):
                raise InvalidInput("c entries must be ring elements")
            if not unit.ring.is_unit(unit):
                raise InvalidInput("c entries must be units")
        self.epsilon = epsilon
        self.s = s
        self.c = c

    def __eq__(self, other):
        if not isinstance(other, LData):
            return NotImplemented
        return (self.epsilon, self.s, self.c) == (other.epsilon, other.s, other.c)

    def __hash__(self):
        return hash((self.epsilon, self.s, self.c))

    def __repr__(self):
        return f"LData(epsilon={self.epsilon}, s={self.s})"


class PairedFLModule:
    """An FLModule together with per-block Gram matrices against L."""

    __slots__ = ("module", "L", "gram")

    def __init__(self, module, L, gram):
        gram = tuple(gram)
        fprime = module.witt_degree
        if len(L.s) != fprime:
            raise InvalidInput("twisting datum has the wrong number of blocks")
        if len(gram) != fprime:
            raise InvalidInput("one Gram matrix per block required")
        for tau, g in enumerate(gram):
            if not isinstance(g, Matrix):
                raise InvalidInput("gram entries must be matrices")
            if g.ring != module.ring:
                raise RingMismatch(f"Gram block {tau} over the wrong ring")
            r = module.blocks[tau].rank
            if (g.nrows, g.ncols) != (r, r):
                raise InvalidInput(f"Gram block {tau} must be {r}x{r}")
        for unit in L.c:
            if unit.ring != module.ring:
                raise RingMismatch("twisting units over the wrong ring")
        self.module = module
        self.L = L
        self.gram = gram

    def __eq__(self, other):
        if not isinstance(other, PairedFLModule):
            return NotImplemented
        return (
            self.module == other.module
            and self.L == other.L
            and self.gram == other.gram
        )

    def __hash__(self):
        return hash((self.module, self.L, self.gram))

    def __repr__(self):
        return f"PairedFLModule({self.module!r}, epsilon={self.L.epsilon})"


class NormalizationResult:
    """Output of normalize_standard.

    pairing is the re-assembled PairedFLModule in the new basis (Gram exactly
    omega_τ times the standard form); change_of_basis holds the per-block
    matrices V_τ whose columns are the new basis vectors in the old basis.
    """

    __slots__ = ("pairing", "change_of_basis", "omega", "_old_phi")

    def __init__(self, pairing, change_of_basis, omega, old_phi):
        self.pairing = pairing
        self.change_of_basis = tuple(change_of_basis)
        self.omega = tuple(omega)
        self._old_phi = tuple(old_phi)

    def basis(self, tau):
        return self.change_of_basis[tau].cols()

    def m_matrix(self, tau):
        """Coordinates of φ^{w_i}(new v_i) in the old basis of block στ."""
        module = self.pairing.module
        old_phi = self._old_phi[tau]
        weights = module.blocks[tau].weights
        return old_phi * _divided_adapted(self.change_of_basis[tau], weights)

    def __repr__(self):
        return f"NormalizationResult(omega={self.omega})"


# ---------------------------------------------------------------------------
# standard forms


def standard_gram(ring, rank, epsilon):
    """Antidiagonal ones for ε=+1; [[0, J],[-J, 0]] layout for ε=-1."""
    if epsilon not in (1, -1):
        raise InvalidInput("epsilon must be +1 or -1")
    if epsilon == -1 and rank % 2:
        raise OddRankSymplectic(f"rank {rank} is odd")
    rows = [[ring.zero] * rank for _ in range(rank)]
    for a in range(rank):
        value = ring.one
        if epsilon == -1 and a >= rank // 2:
            value = -ring.one
        rows[a][rank - 1 - a] = value
    return Matrix(ring, rows, ncols=rank)


def sign_function(rank, epsilon):
    """η_h = std[h, h*] as plain ±1 integers."""
    if epsilon == 1:
        return (1,) * rank
    if rank % 2:
        raise OddRankSymplectic(f"rank {rank} is odd")
    return tuple(1 if h < rank // 2 else -1 for h in range(rank))


def gram_transform(G, C):
    """Congruence transform C^T G C for an invertible change of basis C."""
    if not C.is_invertible():
        raise InvalidInput("change of basis must be invertible")
    return C.transpose() * G * C


def _divided_gram(ring, G, weights, s):
    """Entrywise p^{s - w_i - w_j} G[i,j]; entries must vanish where the
    exponent would be negative (validated beforehand)."""
    r = G.nrows
    rows = []
    for i in range(r):
        row = []
        for j in range(r):
            e = s - weights[i] - weights[j]
            entry = G[i, j]
            row.append(ring.pi_pow(e) * entry if (entry and e >= 0) else ring.zero)
        rows.append(row)
    return Matrix(ring, rows, ncols=r)


def _divided_adapted(V, weights):
    """W[u,a] = p^{w_u - w_a} V[u,a] for a weight-adapted V."""
    ring = V.ring
    rows = []
    for u in range(V.nrows):
        row = []
        for a in range(V.ncols):
            gap = weights[u] - weights[a]
            entry = V[u, a]
            row.append(ring.pi_pow(gap) * entry if (entry and gap >= 0) else ring.zero)
        rows.append(row)
    return Matrix(ring, rows, ncols=V.ncols)


# ---------------------------------------------------------------------------
# validation


def validate_pairing(paired):
    """Check all pairing axioms; module validity is the caller's precondition."""
    module = paired.module
    L = paired.L
    ring = module.ring
    eps = L.epsilon
    rank = module.rank
    if eps == -1 and rank % 2:
        raise OddRankSymplectic(f"rank {rank} is odd")
    for tau, blk in enumerate(module.blocks):
        G = paired.gram[tau]
        w = blk.weights
        s = L.s[tau]
        for i in range(rank):
            for j in range(rank):
                if w[i] + w[j] > s and G[i, j]:
                    raise FiltrationViolation(
                        f"block {tau} entry ({i + 1}, {j + 1}): "
                        f"weights {w[i]}+{w[j]} exceed s = {s}"
                    )
        for i in range(rank):
            for j in range(i, rank):
                if G[j, i] != eps * G[i, j]:
                    raise SymmetryViolation(
                        f"block {tau} entry ({j + 1}, {i + 1})"
                    )
        if sorted(s - x for x in w) != list(w):
            raise NotPerfect(f"block {tau} weights are not self-dual for s = {s}")
        G.inverse(error=NotPerfect(f"block {tau}"))
    for tau, blk in enumerate(module.blocks):
        stau = (tau + 1) % module.witt_degree
        G = paired.gram[tau]
        lhs = blk.phi.transpose() * paired.gram[stau] * blk.phi
        rhs = L.c[tau] * _divided_gram(ring, G, blk.weights, L.s[tau])
        if lhs != rhs:
            raise PhiIncompatible(f"block {tau}")


# ---------------------------------------------------------------------------
# basis change


def change_basis(paired, vs):
    """Re-express a paired module in new weight-adapted bases v'_a = V columns.

    Per block: Gram becomes V_τ^T G_τ V_τ and Φ becomes
    V_{στ}^{-1} Φ_τ W_τ with W_τ[u,a] = p^{w_u - w_a} V_τ[u,a].
    """
    module = paired.module
    ring = module.ring
    fprime = module.witt_degree
    vs = tuple(vs)
    if len(vs) != fprime:
        raise InvalidInput("one change of basis per block required")
    for tau, V in enumerate(vs):
        weights = module.blocks[tau].weights
        for u in range(V.nrows):
            for a in range(V.ncols):
                if V[u, a] and weights[u] < weights[a]:
                    raise InvalidInput(
                        f"block {tau} change of basis is not weight-adapted"
                    )
    inverses = [V.inverse(error=InvalidInput("change of basis must be invertible")) for V in vs]
    blocks = []
    grams = []
    for tau in range(fprime):
        stau = (tau + 1) % fprime
        blk = module.blocks[tau]
        W = _divided_adapted(vs[tau], blk.weights)
        blocks.append(FLBlock(blk.weights, inverses[stau] * (blk.phi * W)))
        grams.append(vs[tau].transpose() * paired.gram[tau] * vs[tau])
    new_module = FLModule(ring, module.bounds, blocks)
    return PairedFLModule(new_module, paired.L, grams)


def reduce_paired(paired, surj):
    """Push a paired module through a small surjection coefficientwise."""
    source = surj.source
    target = surj.target
    if paired.module.ring != source:
        raise RingMismatch("paired module must live over the source ring")

    def down(x):
        return source.reduce_to(x, target)

    module = _reduce_module(paired.module, surj)
    L = LData(paired.L.epsilon, paired.L.s, tuple(down(c) for c in paired.L.c))
    grams = tuple(g.map(down, ring=target) for g in paired.gram)
    return PairedFLModule(module, L, grams)


# ---------------------------------------------------------------------------
# normalization


def _col_update(G, V, target, source, coeff):
    # v_target <- v_target - coeff * v_source
    n = len(G)
    for x in range(n):
        G[x][target] = G[x][target] - coeff * G[x][source]
    for x in range(n):
        G[target][x] = G[target][x] - coeff * G[source][x]
    for x in range(n):
        V[x][target] = V[x][target] - coeff * V[x][source]


def _col_scale(G, V, target, unit):
    n = len(G)
    for x in range(n):
        G[x][target] = G[x][target] * unit
    for x in range(n):
        G[target][x] = G[target][x] * unit
    for x in range(n):
        V[x][target] = V[x][target] * unit


def normalize_standard(paired, unit_reduce=False):
    """Weight-adapted change of basis making each Gram exactly ω_τ · standard.

    Requires multiplicity-free weights per block.  The anti-triangular Gram
    support makes every anti-diagonal entry a unit, so the elimination order
    j = 1, ..., ceil(r/2) with exact coefficients G[j,h]/G[j,j*] clears all
    off-anti-diagonal entries at every ring level; even ranks rescale to
    ω_τ = 1, odd ranks keep the middle self-pairing as ω_τ.  With unit_reduce
    the odd-rank ω_τ is further scaled by a unit square to the canonical lift
    of its residue.
    """
    validate_pairing(paired)
    module = paired.module
    ring = module.ring
    eps = paired.L.epsilon
    rank = module.rank
    for tau, blk in enumerate(module.blocks):
        if len(set(blk.weights)) != rank:
            raise MultiplicityNotFree(f"block {tau} has repeated weights")
    vs = []
    omegas = []
    for tau, blk in enumerate(module.blocks):
        G = [list(row) for row in paired.gram[tau].rows]
        V = [list(row) for row in Matrix.identity(ring, rank).rows]
        for j in range((rank + 1) // 2):
            js = rank - 1 - j
            pivot = G[j][js]
            if eps == 1 and j != js and G[j][j]:
                mu = G[j][j] * ring.inv(2 * pivot)
                _col_update(G, V, j, js, mu)
            for h in range(j + 1, js):
                if G[j][h]:
                    _col_update(G, V, h, js, G[j][h] * ring.inv(pivot))
        if rank % 2 == 0:
            omega = ring.one
            for a in range(rank // 2):
                g = G[a][rank - 1 - a]
                if g != ring.one:
                    _col_scale(G, V, a, ring.inv(g))
        else:
            mid = rank // 2
            omega = G[mid][mid]
            if unit_reduce:
                canonical = ring.lift_from(ring.residue(omega))
                if canonical != omega:
                    lam = ring.unit_sqrt(canonical * ring.inv(omega))
                    _col_scale(G, V, mid, lam)
                    omega = G[mid][mid]
            for a in range(mid):
                g = G[a][rank - 1 - a]
                if g != omega:
                    _col_scale(G, V, a, omega * ring.inv(g))
        vs.append(Matrix(ring, V, ncols=rank))
        omegas.append(omega)
    normalized = change_basis(paired, vs)
    for tau in range(module.witt_degree):
        expected = omegas[tau] * standard_gram(ring, rank, eps)
        if normalized.gram[tau] != expected:
            raise InternalRankFailure(
                f"normalization of block {tau} missed the standard form"
            )
    validate_pairing(normalized)
    return NormalizationResult(
        normalized, vs, omegas, (blk.phi for blk in module.blocks)
    )

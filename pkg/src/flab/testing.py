"""Deterministic pseudorandom instance generators and canonical examples.

Everything takes an explicit random.Random so test suites stay reproducible.
"""

from __future__ import annotations

from .errors import InvalidInput
from .linalg import Matrix
from .modules import FLBlock, FLModule
from .pairing import LData, PairedFLModule, change_basis, standard_gram
from .rings import make_field


def random_invertible_matrix(ring, n, rng):
    while True:
        rows = [[ring.random_element(rng) for _ in range(n)] for _ in range(n)]
        m = Matrix(ring, rows, ncols=n)
        if m.is_invertible():
            return m


def random_fl_module(
    rng, ring, rank, witt_degree=1, weight_range=(0, 3), distinct_weights=False
):
    """Random valid module with tight bounds.

    Weights are drawn from weight_range per block (without replacement when
    distinct_weights is set); each Φ_τ is a uniformly retried invertible
    matrix.
    """
    lo, hi = weight_range
    if distinct_weights and hi - lo + 1 < rank:
        raise InvalidInput("weight range too small for distinct weights")
    blocks = []
    all_weights = []
    for _ in range(witt_degree):
        if distinct_weights:
            ws = sorted(rng.sample(range(lo, hi + 1), rank))
        else:
            ws = sorted(rng.randint(lo, hi) for _ in range(rank))
        all_weights.extend(ws)
        blocks.append(FLBlock(tuple(ws), random_invertible_matrix(ring, rank, rng)))
    return FLModule(ring, (min(all_weights), max(all_weights)), blocks)


def canon2(ring=None):
    """Rank-2 module with weights (0, 1) and identity Φ; default ring F_5."""
    ring = ring if ring is not None else make_field(5)
    return FLModule(ring, (0, 1), [FLBlock((0, 1), Matrix.identity(ring, 2))])


def pcanon2(ring=None):
    """canon2 with the standard symplectic pairing (s = 1, c = 1)."""
    module = canon2(ring)
    ring = module.ring
    return PairedFLModule(
        module,
        LData(-1, (1,), (ring.one,)),
        (standard_gram(ring, 2, -1),),
    )


# ---------------------------------------------------------------------------
# paired-module generators


def random_isometry(ring, std, rng):
    """Cayley transform (1+A)(1-A)^{-1} of a random std-skew A; exact isometry."""
    n = std.nrows
    ident = Matrix.identity(ring, n)
    std_inv = std.inverse()
    eps_sign = -1 if std.transpose() == -1 * std else 1
    while True:
        b_rows = [[ring.zero] * n for _ in range(n)]
        for i in range(n):
            for j in range(i, n):
                x = ring.random_element(rng)
                b_rows[i][j] = x
                b_rows[j][i] = -eps_sign * x
            if eps_sign == 1:
                b_rows[i][i] = ring.zero
        B = Matrix(ring, b_rows, ncols=n)
        A = std_inv * B
        try:
            inv = (ident - A).inverse()
        except InvalidInput:
            continue
        return (ident + A) * inv


def random_similitude(ring, std, multiplier, rng):
    """Random Q with Q^T std Q = multiplier * std (torus times Cayley isometry)."""
    n = std.nrows
    diag = []
    for a in range(n // 2):
        t = ring.random_unit(rng)
        diag.append(t)
    back = [multiplier * ring.inv(t) for t in reversed(diag)]
    if n % 2:
        diag.append(ring.unit_sqrt(multiplier))
    torus = Matrix.diagonal(ring, diag + back)
    return torus * random_isometry(ring, std, rng)


def self_dual_weights(rng, rank, s, lo):
    """Distinct ascending weights with w_i + w_{rank+1-i} = s, all in [lo, s-lo]."""
    half = rank // 2
    top = (s - 1) // 2
    if top - lo + 1 < half or (rank % 2 and s % 2):
        raise InvalidInput("no room for self-dual distinct weights")
    first = sorted(rng.sample(range(lo, top + 1), half))
    ws = first + ([s // 2] if rank % 2 else []) + [s - x for x in reversed(first)]
    return tuple(ws)


def random_weight_adapted(ring, weights, rng):
    """Random invertible V with V[u,a] = 0 unless w_u >= w_a, unit diagonal."""
    n = len(weights)
    rows = [[ring.zero] * n for _ in range(n)]
    for u in range(n):
        for a in range(n):
            if u == a:
                rows[u][a] = ring.random_unit(rng)
            elif weights[u] >= weights[a]:
                rows[u][a] = ring.random_element(rng)
    return Matrix(ring, rows, ncols=n)


def random_paired_module(
    rng,
    ring,
    rank,
    epsilon,
    witt_degree=1,
    s=None,
    weight_lo=0,
    scramble=True,
):
    """Random valid PairedFLModule built from similitudes of the standard form.

    Per block the Gram starts as ν_τ·standard on self-dual distinct weights and
    Φ_τ is a random similitude with multiplier λ_τ; the unit c_τ is derived as
    λ_τ ν_{στ} / ν_τ.  With scramble, a random weight-adapted change of basis
    hides the standard shape (the result stays valid by construction).
    """
    if s is None:
        s = rank if rank % 2 == 0 else 2 * rank
    std = standard_gram(ring, rank, epsilon)
    weights = [
        self_dual_weights(rng, rank, s, weight_lo) for _ in range(witt_degree)
    ]
    nus = [ring.random_unit(rng) for _ in range(witt_degree)]
    # odd-rank orthogonal similitudes always have square multiplier
    lams = [
        ring.random_unit(rng) ** 2 if rank % 2 else ring.random_unit(rng)
        for _ in range(witt_degree)
    ]
    cs = []
    blocks = []
    grams = []
    for tau in range(witt_degree):
        stau = (tau + 1) % witt_degree
        phi = random_similitude(ring, std, lams[tau], rng)
        blocks.append(FLBlock(weights[tau], phi))
        grams.append(nus[tau] * std)
        cs.append(lams[tau] * nus[stau] * ring.inv(nus[tau]))
    all_w = [w for ws in weights for w in ws]
    module = FLModule(ring, (min(all_w), max(all_w)), blocks)
    paired = PairedFLModule(module, LData(epsilon, (s,) * witt_degree, cs), grams)
    if scramble:
        paired = change_basis(
            paired,
            [
                random_weight_adapted(ring, weights[tau], rng)
                for tau in range(witt_degree)
            ],
        )
    return paired

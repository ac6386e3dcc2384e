"""Finite-field towers and the additive-polynomial nonvanishing search.

The tensor summand of period ``period`` inside a product of cyclic modules of
ranks ``h`` and ``h2`` contributes the additive polynomial

    P(X) = X + X^{q^period} + ... + X^{q^{(copies-1) period}},

with ``copies = lcm(h, h2) / period``, over F_{q^lcm}.  Because P is additive
its zero set is a proper F_q-subspace, while the products of units from the
two subfields F_{q^h} and F_{q^h2} span all of F_{q^lcm}; hence some product
evaluates to a nonzero value.  ``find_nonvanishing_pair`` locates the first
such product in a deterministic generator-power scan.

Subfields are realized inside the single ambient field F_{q^lcm}: the units of
F_{q^d} form the unique subgroup of order q^d - 1, generated by the matching
power of an ambient multiplicative generator, and the full subfield is the
fixed space of the d-fold q-power Frobenius.
"""

from __future__ import annotations

import itertools
import os
from functools import lru_cache
from math import lcm

from .errors import (
    InternalRankFailure,
    InvalidInput,
    SizeGuardExceeded,
)
from .linalg import Matrix
from .rings import _prime_factors, make_field

DEFAULT_SIZE_GUARD = 2**24
SIZE_GUARD_ENV = "FLAB_SIZE_GUARD"


def prime_power(q):
    """Split q = p^e with p prime; raise InvalidInput otherwise."""
    q = int(q)
    if q < 2:
        raise InvalidInput(f"{q} is not a prime power")
    p = 2
    while p * p <= q and q % p:
        p += 1 if p == 2 else 2
    if q % p:
        p = q
    n, e = q, 0
    while n % p == 0:
        n //= p
        e += 1
    if n != 1:
        raise InvalidInput(f"{q} is not a prime power")
    return p, e


def size_limit(size_guard=None):
    """Effective enumeration bound: explicit arg, else env override, else default."""
    if size_guard is not None:
        return int(size_guard)
    return int(os.environ.get(SIZE_GUARD_ENV, DEFAULT_SIZE_GUARD))


def _element_by_encoding(field, code):
    data = []
    for _ in range(field.f):
        data.append(code % field.p)
        code //= field.p
    return field.elem(tuple(data))


def _multiplicative_order_is(x, n):
    """True when x has exact multiplicative order n (n = full group order)."""
    one = x.ring.one
    if x**n != one:
        return False
    return all(x ** (n // ell) != one for ell in _prime_factors(n))


@lru_cache(maxsize=None)
def field_generator(field):
    """Smallest-encoding generator of the multiplicative group of a field."""
    if not field.is_field():
        raise InvalidInput("multiplicative generators require a field")
    n = field.size - 1
    if n == 1:
        return field.one
    for code in range(2, field.size):
        cand = _element_by_encoding(field, code)
        if _multiplicative_order_is(cand, n):
            return cand
    raise InternalRankFailure("no multiplicative generator found")


def _check_subfield_degree(big, q, d):
    p, e = prime_power(q)
    if not big.is_field() or big.p != p:
        raise InvalidInput("ambient ring is not a field of the right characteristic")
    if d < 1 or big.f % (e * d):
        raise InvalidInput(f"F_{q ** d} is not a subfield of F_{big.size}")
    return p, e


def subfield_generator(big, q, d):
    """Generator of the units of the copy of F_{q^d} inside the field big."""
    _check_subfield_degree(big, q, d)
    return field_generator(big) ** ((big.size - 1) // (q**d - 1))


def q_power_frobenius(x, q, times=1):
    """Apply x |-> x^{q^times} via the ring's p-power Frobenius."""
    p, e = prime_power(q)
    if x.ring.p != p:
        raise InvalidInput("element characteristic does not match q")
    for _ in range(e * times):
        x = x.ring.frobenius(x)
    return x


def subfield_elements(big, q, d):
    """All q^d elements of the copy of F_{q^d} inside big, ascending encoding.

    Computed independently of the generator route: the subfield is the kernel
    of the F_p-linear map x |-> x^{q^d} - x on a power basis of big.
    """
    p, e = _check_subfield_degree(big, q, d)
    n = big.f
    fp = make_field(p)
    columns = []
    for i in range(n):
        basis_vec = big.elem(tuple(1 if j == i else 0 for j in range(n)))
        diff = q_power_frobenius(basis_vec, q, d) - basis_vec
        columns.append(diff.data)
    mat = Matrix(
        fp,
        [[fp.from_int(columns[j][i]) for j in range(n)] for i in range(n)],
        ncols=n,
    )
    kernel = mat.kernel_gens()
    if len(kernel) != e * d:
        raise InternalRankFailure("subfield fixed space has the wrong dimension")
    gens = [big.elem(tuple(int(v.data[0]) for v in vec)) for vec in kernel]
    out = []
    for coeffs in itertools.product(range(p), repeat=len(gens)):
        acc = big.zero
        for c, gen in zip(coeffs, gens):
            if c:
                acc = acc + big.from_int(c) * gen
        out.append(acc)
    if len({x.data for x in out}) != q**d:
        raise InternalRankFailure("subfield enumeration produced collisions")
    return sorted(out, key=big.encode)


def embed_subfield(small, big):
    """Field embedding small -> big sending the power basis to powers of a root.

    The image generator is the smallest-encoding root in big of the defining
    polynomial of small, so the embedding is deterministic.
    """
    if not small.is_field() or not big.is_field() or small.p != big.p:
        raise InvalidInput("embeddings require fields of equal characteristic")
    if big.f % small.f:
        raise InvalidInput(f"F_{small.size} is not a subfield of F_{big.size}")
    coeffs = small.minimal_poly
    root = None
    for cand in subfield_elements(big, small.p, small.f):
        acc = big.zero
        for c in reversed(coeffs):
            acc = acc * cand + big.from_int(c)
        if not acc:
            root = cand
            break
    if root is None:
        raise InternalRankFailure("defining polynomial has no root in the big field")
    powers = [big.one]
    for _ in range(small.f - 1):
        powers.append(powers[-1] * root)

    def embed(x):
        if x.ring != small:
            raise InvalidInput("element is not in the source field")
        acc = big.zero
        for c, power in zip(x.data, powers):
            if c:
                acc = acc + big.from_int(c) * power
        return acc

    return embed


def p_polynomial_value(x, q, period, copies):
    """Evaluate P(X) = sum_{m=0}^{copies-1} X^{q^{m * period}} at x."""
    if period < 1 or copies < 1:
        raise InvalidInput("period and copies must be positive")
    acc = x
    term = x
    for _ in range(copies - 1):
        term = q_power_frobenius(term, q, period)
        acc = acc + term
    return acc


def find_nonvanishing_pair(q, h, h2, period, size_guard=None):
    """First pair (zeta, zeta2) of subfield units with P(zeta * zeta2) != 0.

    zeta ranges over F_{q^h}^x and zeta2 over F_{q^h2}^x, both realized inside
    the ambient field F_{q^lcm(h, h2)}; P is the additive polynomial for the
    given summand period.  The scan tries products g^a * g2^b with the first
    exponent varying fastest and returns the first hit, which exists by the
    degree argument.  Ambient fields larger than the size guard are refused.
    """
    q, h, h2, period = int(q), int(h), int(h2), int(period)
    prime_power(q)
    if h < 1 or h2 < 1:
        raise InvalidInput("tower degrees must be positive")
    big_deg = lcm(h, h2)
    if period < 1 or big_deg % period:
        raise InvalidInput(
            f"period {period} does not divide lcm({h}, {h2}) = {big_deg}"
        )
    limit = size_limit(size_guard)
    ambient = q**big_deg
    if ambient > limit:
        raise SizeGuardExceeded(
            f"ambient field size q^lcm = {ambient} exceeds the guard {limit}"
        )
    copies = big_deg // period
    big = make_field(ambient)
    g = subfield_generator(big, q, h)
    g2 = subfield_generator(big, q, h2)
    zeta2 = big.one
    for _ in range(q**h2 - 1):
        zeta = big.one
        for _ in range(q**h - 1):
            if p_polynomial_value(zeta * zeta2, q, period, copies):
                return zeta, zeta2
            zeta = zeta * g
        zeta2 = zeta2 * g2
    raise InternalRankFailure("no nonvanishing product exists")

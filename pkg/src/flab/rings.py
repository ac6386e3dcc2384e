"""Coefficient rings: truncated Witt rings and truncated dual numbers.

Two one-parameter families of finite local rings back every computation:

* ``witt``          W(k)/p^level, realized as (Z/p^level)[x]/(m(x)) with m a
                    monic lift of the lexicographically smallest irreducible
                    polynomial of degree f over F_p.  Elements are length-f
                    coefficient vectors over Z/p^level.
* ``dual_numbers``  k[t]/(t^level) with k = F_{p^f}.  Elements are length-level
                    vectors of residue-field elements.

Both families share one element interface (RingElem with operator
overloading) and provide Frobenius, Teichmueller lifts (witt only), unit
inversion, unit square roots, and one-step small surjections down the level
chain.  All values are immutable.
"""

from __future__ import annotations

import itertools
from functools import lru_cache

from .errors import (
    InternalRankFailure,
    InvalidInput,
    RingMismatch,
)

# ---------------------------------------------------------------------------
# polynomial helpers over F_p (plain int lists, lowest degree first)


def _poly_trim(a):
    while a and a[-1] == 0:
        a.pop()
    return a


def _poly_mul(a, b, p):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] = (out[i + j] + ai * bj) % p
    return _poly_trim(out)


def _poly_mod(a, g, p):
    # g must be monic
    a = list(a)
    dg = len(g) - 1
    while len(a) > dg:
        c = a.pop()
        if c:
            off = len(a) - dg
            for i in range(dg):
                a[off + i] = (a[off + i] - c * g[i]) % p
    return _poly_trim(a)


def _poly_mulmod(a, b, g, p):
    return _poly_mod(_poly_mul(a, b, p), g, p)


def _poly_powmod(a, e, g, p):
    result = [1]
    base = _poly_mod(list(a), g, p)
    while e:
        if e & 1:
            result = _poly_mulmod(result, base, g, p)
        base = _poly_mulmod(base, base, g, p)
        e >>= 1
    return result


def _poly_gcd(a, b, p):
    a = _poly_trim(list(a))
    b = _poly_trim(list(b))
    while b:
        inv_lead = pow(b[-1], p - 2, p)
        monic = [(c * inv_lead) % p for c in b]
        a, b = b, _poly_mod(a, monic, p)
    return a


def _prime_factors(n):
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


def _is_irreducible(g, p):
    degree = len(g) - 1
    if degree == 1:
        return True
    x = [0, 1]
    t = list(x)
    for _ in range(degree):
        t = _poly_powmod(t, p, g, p)
    diff = [(u - v) % p for u, v in itertools.zip_longest(t, x, fillvalue=0)]
    if _poly_trim(diff):
        return False
    for ell in _prime_factors(degree):
        t = list(x)
        for _ in range(degree // ell):
            t = _poly_powmod(t, p, g, p)
        diff = [(u - v) % p for u, v in itertools.zip_longest(t, x, fillvalue=0)]
        gcd = _poly_gcd(diff, g, p)
        if len(gcd) != 1:
            return False
    return True


def minimal_polynomial(p, f):
    """Lexicographically smallest monic irreducible of degree f over F_p.

    Candidates are ordered by the coefficient tuple (c_{f-1}, ..., c_0);
    returned lowest degree first, including the leading 1.
    """
    for tail in itertools.product(range(p), repeat=f):
        coeffs = list(tail[::-1]) + [1]
        if _is_irreducible(coeffs, p):
            return tuple(coeffs)
    raise InternalRankFailure("no irreducible polynomial found")


def _is_prime(n):
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


# ---------------------------------------------------------------------------
# elements


def _coerce(ring, value):
    if isinstance(value, RingElem):
        if value.ring is ring or value.ring == ring:
            return value
        raise RingMismatch(f"element of {value.ring} used in {ring}")
    if isinstance(value, int):
        return ring.from_int(value)
    return None


class RingElem:
    """Immutable element of a Ring; arithmetic dispatches to the ring."""

    __slots__ = ("ring", "data")

    def __init__(self, ring, data):
        self.ring = ring
        self.data = data

    def __add__(self, other):
        other = _coerce(self.ring, other)
        if other is None:
            return NotImplemented
        return RingElem(self.ring, self.ring._add(self.data, other.data))

    __radd__ = __add__

    def __sub__(self, other):
        other = _coerce(self.ring, other)
        if other is None:
            return NotImplemented
        return RingElem(self.ring, self.ring._sub(self.data, other.data))

    def __rsub__(self, other):
        other = _coerce(self.ring, other)
        if other is None:
            return NotImplemented
        return RingElem(self.ring, self.ring._sub(other.data, self.data))

    def __mul__(self, other):
        other = _coerce(self.ring, other)
        if other is None:
            return NotImplemented
        return RingElem(self.ring, self.ring._mul(self.data, other.data))

    __rmul__ = __mul__

    def __neg__(self):
        return RingElem(self.ring, self.ring._sub(self.ring.zero.data, self.data))

    def __truediv__(self, other):
        other = _coerce(self.ring, other)
        if other is None:
            return NotImplemented
        return self * self.ring.inv(other)

    def __pow__(self, exponent):
        if not isinstance(exponent, int):
            return NotImplemented
        if exponent < 0:
            return self.ring.inv(self) ** (-exponent)
        result = self.ring.one
        base = self
        while exponent:
            if exponent & 1:
                result = result * base
            base = base * base
            exponent >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, RingElem):
            if not (other.ring is self.ring or other.ring == self.ring):
                return False
            return self.data == other.data
        if isinstance(other, int):
            return self.data == self.ring.from_int(other).data
        return NotImplemented

    def __hash__(self):
        return hash((self.ring, self.data))

    def __bool__(self):
        return self.data != self.ring.zero.data

    def __repr__(self):
        return f"RingElem({self.ring!r}, {self.data!r})"


# ---------------------------------------------------------------------------
# ring descriptors


class Ring:
    """Common interface of both coefficient-ring families."""

    __slots__ = ("p", "f", "level", "minimal_poly", "_zero", "_one")

    family = "abstract"

    # -- identity ----------------------------------------------------------

    def _key(self):
        return (self.family, self.p, self.f, self.level)

    def __eq__(self, other):
        return isinstance(other, Ring) and self._key() == other._key()

    def __hash__(self):
        return hash(self._key())

    def __repr__(self):
        return f"{type(self).__name__}(p={self.p}, f={self.f}, level={self.level})"

    # -- basic elements ----------------------------------------------------

    @property
    def zero(self):
        return self._zero

    @property
    def one(self):
        return self._one

    def elem(self, data):
        """Wrap raw coefficient data after validating its shape."""
        self._check_data(data)
        return RingElem(self, data)

    @property
    def size(self):
        return self.p ** (self.f * self.level)

    @property
    def residue_size(self):
        return self.p**self.f

    def is_field(self):
        return self.level == 1 and self.family == "witt"

    # -- units ---------------------------------------------------------------

    def inv(self, x):
        x = _coerce(self, x)
        if not self.is_unit(x):
            raise InvalidInput("inverse of a non-unit")
        if self.level == 1 and self.family == "witt":
            return x ** (self.residue_size - 2)
        z = self.lift_from(self.residue_ring().inv(self.residue(x)))
        for _ in range(self.level.bit_length() + 2):
            if x * z == self._one:
                return z
            z = z * (2 - x * z)
        if x * z == self._one:
            return z
        raise InternalRankFailure("unit inversion did not converge")

    def divide(self, a, b):
        """Exact division a / b, defined when val(a) >= val(b).

        The result c satisfies c * b == a exactly in the truncated ring.
        """
        a = _coerce(self, a)
        b = _coerce(self, b)
        if self.is_unit(b):
            return a * self.inv(b)
        va, vb = self.val(a), self.val(b)
        if va < vb:
            raise InvalidInput("division with valuation drop")
        if not a:
            return self.zero
        return self.pi_pow(va - vb) * self.unit_part(a) * self.inv(self.unit_part(b))

    def unit_sqrt(self, u):
        """Deterministic square root of a unit.

        The residue root with the smallest canonical encoding is refined by
        Newton iteration (p odd makes 2 a unit).
        """
        u = _coerce(self, u)
        if not self.is_unit(u):
            raise InvalidInput("unit_sqrt requires a unit")
        kfield = self.residue_ring()
        ubar = self.residue(u)
        root = None
        for cand in kfield.elements():
            if cand * cand == ubar:
                root = cand
                break
        if root is None:
            raise InvalidInput("residue is not a square")
        s = self.lift_from(root)
        for _ in range(self.level.bit_length() + 2):
            if s * s == u:
                return s
            s = s - (s * s - u) / (2 * s)
        if s * s == u:
            return s
        raise InternalRankFailure("square-root iteration did not converge")

    # -- enumeration ---------------------------------------------------------

    def elements(self):
        """All elements in ascending canonical-encoding order."""
        for data in self._all_data():
            yield RingElem(self, data)

    def random_element(self, rng):
        """Uniform random element (rng is a random.Random)."""
        return RingElem(self, self._rand_data(rng))

    def random_unit(self, rng):
        while True:
            x = self.random_element(rng)
            if self.is_unit(x):
                return x


class WittRing(Ring):
    __slots__ = ("_modulus", "_frob_cols")

    family = "witt"

    def __init__(self, p, f, level, minimal_poly):
        self.p = p
        self.f = f
        self.level = level
        self.minimal_poly = minimal_poly
        self._modulus = p**level
        self._frob_cols = None
        self._zero = RingElem(self, (0,) * f)
        one = (1,) + (0,) * (f - 1)
        self._one = RingElem(self, one)

    # -- data layer ----------------------------------------------------------

    def _check_data(self, data):
        m = self._modulus
        if (
            not isinstance(data, tuple)
            or len(data) != self.f
            or not all(isinstance(c, int) and 0 <= c < m for c in data)
        ):
            raise InvalidInput(f"malformed witt element data {data!r}")

    def _add(self, a, b):
        m = self._modulus
        return tuple((x + y) % m for x, y in zip(a, b))

    def _sub(self, a, b):
        m = self._modulus
        return tuple((x - y) % m for x, y in zip(a, b))

    def _mul(self, a, b):
        m = self._modulus
        f = self.f
        if f == 1:
            return ((a[0] * b[0]) % m,)
        conv = [0] * (2 * f - 1)
        for i, ai in enumerate(a):
            if ai:
                for j, bj in enumerate(b):
                    conv[i + j] = (conv[i + j] + ai * bj) % m
        mp = self.minimal_poly
        for d in range(2 * f - 2, f - 1, -1):
            c = conv[d]
            if c:
                conv[d] = 0
                off = d - f
                for i in range(f):
                    conv[off + i] = (conv[off + i] - c * mp[i]) % m
        return tuple(conv[:f])

    def _all_data(self):
        m = self._modulus
        for rev in itertools.product(range(m), repeat=self.f):
            yield rev[::-1]

    def _rand_data(self, rng):
        m = self._modulus
        return tuple(rng.randrange(m) for _ in range(self.f))

    # -- structure -----------------------------------------------------------

    def from_int(self, n):
        return RingElem(self, (n % self._modulus,) + (0,) * (self.f - 1))

    def encode(self, x):
        x = _coerce(self, x)
        m = self._modulus
        total = 0
        for c in reversed(x.data):
            total = total * m + c
        return total

    def is_unit(self, x):
        x = _coerce(self, x)
        p = self.p
        return any(c % p for c in x.data)

    def val(self, x):
        """p-adic valuation, capped at the level for zero."""
        x = _coerce(self, x)
        best = self.level
        p = self.p
        for c in x.data:
            if c:
                v = 0
                while c % p == 0:
                    c //= p
                    v += 1
                best = min(best, v)
        return best

    def pi(self):
        return self.from_int(self.p)

    def pi_pow(self, v):
        if v >= self.level:
            return self._zero
        return self.from_int(self.p**v)

    def unit_part(self, x):
        """u with x == pi^val(x) * u exactly; one for x == 0."""
        x = _coerce(self, x)
        v = self.val(x)
        if v >= self.level:
            return self._one
        step = self.p**v
        return RingElem(self, tuple(c // step for c in x.data))

    def residue_ring(self):
        if self.level == 1:
            return self
        return _cached_ring("witt", self.p, self.f, 1)

    def residue(self, x):
        x = _coerce(self, x)
        if self.level == 1:
            return x
        k = self.residue_ring()
        p = self.p
        return RingElem(k, tuple(c % p for c in x.data))

    def lift_from(self, x):
        """Canonical lift of an element of a lower-level witt ring."""
        if not isinstance(x, RingElem) or x.ring.family != "witt":
            raise RingMismatch("lift_from expects a witt element")
        low = x.ring
        if (low.p, low.f) != (self.p, self.f) or low.level > self.level:
            raise RingMismatch("lift_from expects a lower level of the same tower")
        return RingElem(self, x.data)

    def reduce_to(self, x, target):
        x = _coerce(self, x)
        if (
            not isinstance(target, WittRing)
            or (target.p, target.f) != (self.p, self.f)
            or target.level > self.level
        ):
            raise RingMismatch("reduce_to expects a lower level of the same tower")
        m = target._modulus
        return RingElem(target, tuple(c % m for c in x.data))

    # -- Frobenius -----------------------------------------------------------

    def _frobenius_columns(self):
        if self._frob_cols is not None:
            return self._frob_cols
        f = self.f
        theta = RingElem(self, (0, 1) + (0,) * (f - 2))
        mp = list(self.minimal_poly)
        dmp = [(i * mp[i]) % self._modulus for i in range(1, len(mp))]
        y = theta**self.p
        for _ in range(self.level.bit_length() + 3):
            fy = self._eval_intpoly(mp, y)
            if not fy:
                break
            y = y - fy / self._eval_intpoly(dmp, y)
        if self._eval_intpoly(mp, y):
            raise InternalRankFailure("Frobenius root lift did not converge")
        cols = []
        power = self._one
        for _ in range(f):
            cols.append(power.data)
            power = power * y
        self._frob_cols = tuple(cols)
        return self._frob_cols

    def _eval_intpoly(self, coeffs, y):
        acc = self.zero
        for c in reversed(coeffs):
            acc = acc * y + c
        return acc

    def frobenius(self, x):
        x = _coerce(self, x)
        if self.f == 1:
            return x
        cols = self._frobenius_columns()
        m = self._modulus
        out = [0] * self.f
        for i, ai in enumerate(x.data):
            if ai:
                col = cols[i]
                for j in range(self.f):
                    out[j] = (out[j] + ai * col[j]) % m
        return RingElem(self, tuple(out))

    def teichmuller(self, x):
        """Multiplicative lift: the unique y = x mod p with y^{p^f} = y."""
        if isinstance(x, int):
            x = self.residue_ring().from_int(x)
        x = _coerce(self.residue_ring(), x) if x.ring != self else self.residue(x)
        y = self.lift_from(x)
        q = self.p**self.f
        for _ in range(self.level + 2):
            y_next = y**q
            if y_next == y:
                return y
            y = y_next
        raise InternalRankFailure("Teichmuller iteration did not stabilize")


class DualNumbersRing(Ring):
    __slots__ = ("_kring",)

    family = "dual_numbers"

    def __init__(self, p, f, level, minimal_poly):
        self.p = p
        self.f = f
        self.level = level
        self.minimal_poly = minimal_poly
        self._kring = _cached_ring("witt", p, f, 1)
        kzero = self._kring.zero.data
        self._zero = RingElem(self, (kzero,) * level)
        self._one = RingElem(self, (self._kring.one.data,) + (kzero,) * (level - 1))

    # -- data layer ----------------------------------------------------------

    def _check_data(self, data):
        if not isinstance(data, tuple) or len(data) != self.level:
            raise InvalidInput(f"malformed dual-numbers element data {data!r}")
        for coeff in data:
            self._kring._check_data(coeff)

    def _add(self, a, b):
        k = self._kring
        return tuple(k._add(x, y) for x, y in zip(a, b))

    def _sub(self, a, b):
        k = self._kring
        return tuple(k._sub(x, y) for x, y in zip(a, b))

    def _mul(self, a, b):
        k = self._kring
        n = self.level
        out = [k.zero.data] * n
        for i, ai in enumerate(a):
            if any(ai):
                for j in range(n - i):
                    bj = b[j]
                    if any(bj):
                        out[i + j] = k._add(out[i + j], k._mul(ai, bj))
        return tuple(out)

    def _all_data(self):
        for coeffs in itertools.product(self._kring._all_data(), repeat=self.level):
            yield coeffs[::-1]

    def _rand_data(self, rng):
        return tuple(self._kring._rand_data(rng) for _ in range(self.level))

    # -- structure -----------------------------------------------------------

    def from_int(self, n):
        k = self._kring
        return RingElem(
            self, (k.from_int(n).data,) + (k.zero.data,) * (self.level - 1)
        )

    def encode(self, x):
        x = _coerce(self, x)
        k = self._kring
        base = k.size
        total = 0
        for coeff in reversed(x.data):
            total = total * base + k.encode(RingElem(k, coeff))
        return total

    def is_unit(self, x):
        x = _coerce(self, x)
        return any(x.data[0])

    def val(self, x):
        x = _coerce(self, x)
        for i, coeff in enumerate(x.data):
            if any(coeff):
                return i
        return self.level

    def pi(self):
        return self.pi_pow(1)

    def pi_pow(self, v):
        if v >= self.level:
            return self._zero
        k = self._kring
        data = [k.zero.data] * self.level
        data[v] = k.one.data
        return RingElem(self, tuple(data))

    def unit_part(self, x):
        """u with x == pi^val(x) * u exactly; one for x == 0."""
        x = _coerce(self, x)
        v = self.val(x)
        if v >= self.level:
            return self._one
        return RingElem(self, x.data[v:] + (self._kring.zero.data,) * v)

    def residue_ring(self):
        return self._kring

    def residue(self, x):
        x = _coerce(self, x)
        return RingElem(self._kring, x.data[0])

    def lift_from(self, x):
        if not isinstance(x, RingElem):
            raise RingMismatch("lift_from expects a ring element")
        low = x.ring
        if low == self._kring:
            k = self._kring
            return RingElem(
                self, (x.data,) + (k.zero.data,) * (self.level - 1)
            )
        if (
            low.family == "dual_numbers"
            and (low.p, low.f) == (self.p, self.f)
            and low.level <= self.level
        ):
            k = self._kring
            pad = (k.zero.data,) * (self.level - low.level)
            return RingElem(self, x.data + pad)
        raise RingMismatch("lift_from expects a lower level of the same tower")

    def reduce_to(self, x, target):
        x = _coerce(self, x)
        if (
            not isinstance(target, DualNumbersRing)
            or (target.p, target.f) != (self.p, self.f)
            or target.level > self.level
        ):
            raise RingMismatch("reduce_to expects a lower level of the same tower")
        return RingElem(target, x.data[: target.level])

    def frobenius(self, x):
        x = _coerce(self, x)
        k = self._kring
        return RingElem(
            self, tuple(k.frobenius(RingElem(k, c)).data for c in x.data)
        )

    def teichmuller(self, x):
        raise InvalidInput("teichmuller requires the witt family")


# ---------------------------------------------------------------------------
# constructors


@lru_cache(maxsize=None)
def _cached_ring(family, p, f, level):
    minimal_poly = minimal_polynomial(p, f)
    if family == "witt":
        return WittRing(p, f, level, minimal_poly)
    return DualNumbersRing(p, f, level, minimal_poly)


def make_ring(family, p, f, level):
    """Build a coefficient-ring descriptor.

    family is "witt" (W(k)/p^level) or "dual_numbers" (k[t]/(t^level)) with
    k = F_{p^f}; p must be an odd prime.
    """
    if family not in ("witt", "dual_numbers"):
        raise InvalidInput(f"unknown ring family {family!r}")
    if not isinstance(p, int) or not _is_prime(p):
        raise InvalidInput(f"p = {p} is not prime")
    if p == 2:
        raise InvalidInput(
            "p odd required for unit square roots and pairing normalization"
        )
    if not isinstance(f, int) or f < 1:
        raise InvalidInput("f must be a positive integer")
    if not isinstance(level, int) or level < 1:
        raise InvalidInput("level must be a positive integer")
    return _cached_ring(family, p, f, level)


def make_field(q):
    """Finite field F_q as a level-1 ring, for any prime power q.

    Unlike make_ring this accepts p = 2; it backs the simple-module
    combinatorics, which never needs square roots or Witt levels above 1.
    """
    if not isinstance(q, int) or q < 2:
        raise InvalidInput(f"q = {q!r} is not a prime power")
    p = _prime_factors(q)[0] if q > 1 else 0
    e = 0
    n = q
    while n % p == 0:
        n //= p
        e += 1
    if n != 1:
        raise InvalidInput(f"q = {q} is not a prime power")
    return _cached_ring("witt", p, e, 1)


# ---------------------------------------------------------------------------
# small surjections


class SmallSurj:
    """One step down a level chain: source -> target with kernel (kernel_gen).

    The kernel is one-dimensional over the residue field k and killed by the
    maximal ideal of the source; kernel_coefficient / embed_kernel realize
    the k-module identification of the kernel.
    """

    __slots__ = ("source", "target", "kernel_gen")

    def __init__(self, source, target, kernel_gen):
        self.source = source
        self.target = target
        self.kernel_gen = kernel_gen

    def reduce(self, x):
        return self.source.reduce_to(x, self.target)

    def lift(self, x):
        if not isinstance(x, RingElem) or x.ring != self.target:
            raise RingMismatch("lift expects a target element")
        return self.source.lift_from(x)

    def embed_kernel(self, kappa):
        """Residue-field scalar kappa -> kappa * kernel_gen in the source."""
        k = self.source.residue_ring()
        kappa = _coerce(k, kappa)
        return self.source.lift_from(kappa) * self.kernel_gen

    def kernel_coefficient(self, x):
        """Inverse of embed_kernel on the kernel ideal."""
        x = _coerce(self.source, x)
        src = self.source
        k = src.residue_ring()
        shift = src.level - 1
        if src.family == "witt":
            step = src.p**shift
            coeffs = []
            for c in x.data:
                if c % step:
                    raise InvalidInput("element is not in the kernel")
                coeffs.append((c // step) % src.p)
            return RingElem(k, tuple(coeffs))
        if any(any(c) for c in x.data[:shift]):
            raise InvalidInput("element is not in the kernel")
        return RingElem(k, x.data[shift])

    def __repr__(self):
        return f"SmallSurj({self.source!r} -> {self.target!r})"


def make_small_surjection(source):
    """The canonical small surjection one level down the same family."""
    if not isinstance(source, Ring):
        raise InvalidInput("make_small_surjection expects a ring")
    if source.level < 2:
        raise InvalidInput("level-1 ring has no small quotient within its family")
    target = _cached_ring(source.family, source.p, source.f, source.level - 1)
    return SmallSurj(source, target, source.pi_pow(source.level - 1))

"""Exact scalar arithmetic: rationals, cyclotomic numbers and odd-parameter
affine forms.

Every quantity handled by the constraint engines is one of

* a ``Rational`` (an alias for :class:`fractions.Fraction`),
* a :class:`Cyclotomic`, an exact element of some cyclotomic field Q(zeta_n),
* an :class:`OddAffine`, a rational affine form ``a + b*m`` in a symbol ``m``
  that ranges over the odd positive integers.

Cyclotomic canonical form
-------------------------
A value of conductor ``n`` is stored as a sparse vector over the power basis
``1, zeta_n, ..., zeta_n^(phi(n)-1)`` of Q(zeta_n); higher powers are reduced
with the n-th cyclotomic polynomial.  After every operation the conductor is
minimised: the smallest divisor ``d`` of ``n`` (skipping ``d = 2 mod 4``,
whose field coincides with the one for ``d/2``) such that the value lies in
Q(zeta_d) is found by exact linear algebra, and the value is rewritten over
the power basis of Q(zeta_d).  Canonicalisation is idempotent and equality of
field elements is therefore structural equality.

All values are immutable and hashable; operations are pure functions, so
values may be shared freely between threads.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import gcd
from typing import Iterable, Optional, Union

Rational = Fraction

_ZERO = Fraction(0)
_ONE = Fraction(1)


# ---------------------------------------------------------------------------
# small number-theoretic helpers


def divisors(n: int) -> list[int]:
    """All positive divisors of n, ascending."""
    small, large = [], []
    d = 1
    while d * d <= n:
        if n % d == 0:
            small.append(d)
            if d != n // d:
                large.append(n // d)
        d += 1
    return small + large[::-1]


def euler_phi(n: int) -> int:
    result = n
    m = n
    p = 2
    while p * p <= m:
        if m % p == 0:
            while m % p == 0:
                m //= p
            result -= result // p
        p += 1
    if m > 1:
        result -= result // m
    return result


def moebius(n: int) -> int:
    if n == 1:
        return 1
    m, k = n, 0
    p = 2
    while p * p <= m:
        if m % p == 0:
            m //= p
            if m % p == 0:
                return 0
            k += 1
        p += 1
    if m > 1:
        k += 1
    return (-1) ** k


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


def factorize(n: int) -> dict[int, int]:
    """Prime factorisation of n by trial division (n is always small here)."""
    out: dict[int, int] = {}
    m = n
    p = 2
    while p * p <= m:
        while m % p == 0:
            out[p] = out.get(p, 0) + 1
            m //= p
        p += 1
    if m > 1:
        out[m] = out.get(m, 0) + 1
    return out


# ---------------------------------------------------------------------------
# cyclotomic polynomial machinery


@lru_cache(maxsize=None)
def _cyclotomic_poly(n: int) -> tuple[int, ...]:
    """Coefficients (constant first) of the n-th cyclotomic polynomial."""
    if n == 1:
        return (-1, 1)
    # divide x^n - 1 by the product of Phi_d for proper divisors d
    poly = [0] * (n + 1)
    poly[0], poly[n] = -1, 1
    for d in divisors(n)[:-1]:
        phi_d = _cyclotomic_poly(d)
        # exact division of integer polynomials
        out = [0] * (len(poly) - len(phi_d) + 1)
        rem = list(poly)
        for i in range(len(out) - 1, -1, -1):
            c = rem[i + len(phi_d) - 1]
            out[i] = c
            if c:
                for j, pc in enumerate(phi_d):
                    rem[i + j] -= c * pc
        assert all(c == 0 for c in rem[: len(phi_d) - 1])
        poly = out
    return tuple(poly)


@lru_cache(maxsize=None)
def _reduction_table(n: int) -> tuple[tuple[int, ...], ...]:
    """Row e in [0, n) holds the power-basis coordinates of zeta_n^e."""
    deg = euler_phi(n)
    phi = _cyclotomic_poly(n)
    rows: list[tuple[int, ...]] = []
    cur = [0] * deg
    cur[0] = 1
    rows.append(tuple(cur))
    for _ in range(1, n):
        nxt = [0] * deg
        for i, c in enumerate(cur):
            if not c:
                continue
            if i + 1 < deg:
                nxt[i + 1] += c
            else:
                # x^deg = -(phi[0] + phi[1] x + ...)
                for j in range(deg):
                    nxt[j] -= c * phi[j]
        rows.append(tuple(nxt))
        cur = nxt
    return tuple(rows)


@lru_cache(maxsize=None)
def _subfield_basis_echelon(n: int, d: int):
    """Echelonised basis of Q(zeta_d) inside the power basis of Q(zeta_n).

    Returns (pivots, rows, coeff_rows): rows are echelon vectors of length
    phi(n) over Q, coeff_rows track their expression in the zeta_d power
    basis so membership tests double as rewriting.
    """
    deg_n = euler_phi(n)
    deg_d = euler_phi(d)
    step = n // d
    table = _reduction_table(n)
    rows = [[Fraction(c) for c in table[(i * step) % n]] for i in range(deg_d)]
    coeff = [[_ONE if i == j else _ZERO for j in range(deg_d)] for i in range(deg_d)]
    pivots: list[int] = []
    r = 0
    for col in range(deg_n):
        piv = None
        for i in range(r, len(rows)):
            if rows[i][col]:
                piv = i
                break
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        coeff[r], coeff[piv] = coeff[piv], coeff[r]
        inv = 1 / rows[r][col]
        rows[r] = [v * inv for v in rows[r]]
        coeff[r] = [v * inv for v in coeff[r]]
        for i in range(len(rows)):
            if i != r and rows[i][col]:
                f = rows[i][col]
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[r])]
                coeff[i] = [a - f * b for a, b in zip(coeff[i], coeff[r])]
        pivots.append(col)
        r += 1
        if r == len(rows):
            break
    return tuple(pivots), tuple(tuple(v) for v in rows[:r]), tuple(tuple(v) for v in coeff[:r])


def _rewrite_in_subfield(n: int, d: int, dense: list[Fraction]) -> Optional[list[Fraction]]:
    """Coordinates of a conductor-n vector over the zeta_d power basis, or None."""
    pivots, rows, coeff = _subfield_basis_echelon(n, d)
    deg_d = euler_phi(d)
    residual = list(dense)
    out = [_ZERO] * deg_d
    for p, row, cf in zip(pivots, rows, coeff):
        f = residual[p]
        if f:
            for j in range(len(residual)):
                residual[j] -= f * row[j]
            for j in range(deg_d):
                out[j] += f * cf[j]
    if any(residual):
        return None
    return out


class Cyclotomic:
    """Exact element of a cyclotomic field, in canonical minimal-conductor form."""

    __slots__ = ("conductor", "terms", "_hash")

    def __init__(self, conductor: int, terms: tuple[tuple[int, Fraction], ...]):
        # private: use cyclo_make / E / from_rational, which canonicalise
        self.conductor = conductor
        self.terms = terms
        self._hash = hash((conductor, terms))

    # -- constructors ------------------------------------------------------

    @staticmethod
    def zero() -> "Cyclotomic":
        return _CYCLO_ZERO

    @staticmethod
    def from_rational(r) -> "Cyclotomic":
        r = Fraction(r)
        if r == 0:
            return _CYCLO_ZERO
        return Cyclotomic(1, ((0, r),))

    # -- predicates / conversions ------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def is_rational(self) -> bool:
        return self.conductor == 1

    def as_rational(self) -> Optional[Fraction]:
        """The value as a Rational if it lies in Q, else None."""
        if self.conductor != 1:
            return None
        return self.terms[0][1] if self.terms else _ZERO

    def rational_part(self) -> Fraction:
        """Coefficient of the basis element 1 (exponent 0)."""
        for e, c in self.terms:
            if e == 0:
                return c
        return _ZERO

    def _dense(self) -> list[Fraction]:
        deg = euler_phi(self.conductor)
        v = [_ZERO] * deg
        for e, c in self.terms:
            v[e] = c
        return v

    def _dense_at(self, big: int) -> list[Fraction]:
        """Coordinates after embedding into Q(zeta_big); big % conductor == 0."""
        step = big // self.conductor
        table = _reduction_table(big)
        deg = euler_phi(big)
        v = [_ZERO] * deg
        for e, c in self.terms:
            row = table[(e * step) % big]
            for j, t in enumerate(row):
                if t:
                    v[j] += c * t
        return v

    # -- arithmetic ---------------------------------------------------------

    def __add__(self, other) -> "Cyclotomic":
        other = _as_cyclo(other)
        if other is NotImplemented:
            return NotImplemented
        if self.is_zero():
            return other
        if other.is_zero():
            return self
        n = _merge_conductor(self.conductor, other.conductor)
        a = self._dense_at(n)
        b = other._dense_at(n)
        return _canonical(n, [x + y for x, y in zip(a, b)])

    __radd__ = __add__

    def __neg__(self) -> "Cyclotomic":
        return Cyclotomic(self.conductor, tuple((e, -c) for e, c in self.terms))

    def __sub__(self, other):
        other = _as_cyclo(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = _as_cyclo(other)
        if other is NotImplemented:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other) -> "Cyclotomic":
        other = _as_cyclo(other)
        if other is NotImplemented:
            return NotImplemented
        if self.is_zero() or other.is_zero():
            return _CYCLO_ZERO
        if len(self.terms) == 1 and len(other.terms) == 1:
            (e1, c1), (e2, c2) = self.terms[0], other.terms[0]
            n = _merge_conductor(self.conductor, other.conductor)
            e = e1 * (n // self.conductor) + e2 * (n // other.conductor)
            return _root_monomial(n, e, c1 * c2)
        n = _merge_conductor(self.conductor, other.conductor)
        a = self._dense_at(n)
        b = other._dense_at(n)
        deg = len(a)
        prod = [_ZERO] * (2 * deg - 1)
        for i, x in enumerate(a):
            if not x:
                continue
            for j, y in enumerate(b):
                if y:
                    prod[i + j] += x * y
        table = _reduction_table(n)
        out = prod[:deg] + [_ZERO] * (deg - len(prod[:deg]))
        for k in range(deg, len(prod)):
            c = prod[k]
            if not c:
                continue
            row = table[k % n]
            for j, t in enumerate(row):
                if t:
                    out[j] += c * t
        return _canonical(n, out)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "Cyclotomic":
        if k < 0:
            raise ValueError("negative powers are not supported")
        result = Cyclotomic.from_rational(1)
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    # -- Galois structure ----------------------------------------------------

    def galois(self, k: int) -> "Cyclotomic":
        """Image under zeta_n -> zeta_n^k; requires gcd(k, conductor) = 1."""
        n = self.conductor
        k %= n
        if gcd(k, n) != 1:
            raise ValueError(f"galois exponent {k} not coprime to conductor {n}")
        if n == 1 or k == 1:
            return self
        table = _reduction_table(n)
        deg = euler_phi(n)
        out = [_ZERO] * deg
        for e, c in self.terms:
            row = table[(e * k) % n]
            for j, t in enumerate(row):
                if t:
                    out[j] += c * t
        # a Galois automorphism preserves the conductor: no re-minimisation
        return Cyclotomic(n, _sparsify(out))

    def conjugate(self) -> "Cyclotomic":
        """Complex conjugation (the Galois map k = -1)."""
        return self.galois(self.conductor - 1) if self.conductor > 1 else self

    def trace(self) -> Fraction:
        """Sum over all Galois automorphisms of Q(zeta_n)/Q, as a Rational."""
        n = self.conductor
        phi_n = euler_phi(n)
        total = _ZERO
        for e, c in self.terms:
            d = n // gcd(e, n)  # zeta_n^e is a primitive d-th root
            total += c * moebius(d) * (phi_n // euler_phi(d))
        return total

    # -- dunder plumbing -----------------------------------------------------

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            other = Cyclotomic.from_rational(other)
        if not isinstance(other, Cyclotomic):
            return NotImplemented
        return self.conductor == other.conductor and self.terms == other.terms

    def __hash__(self):
        return self._hash

    def __bool__(self):
        return not self.is_zero()

    def __repr__(self) -> str:
        return f"Cyclotomic({self.literal()!r})"

    def literal(self) -> str:
        """Render in the E(n) literal grammar, e.g. ``1/2*E(8)^3 - 2``."""
        if self.is_zero():
            return "0"
        parts = []
        for e, c in self.terms:
            if e == 0:
                base = _frac_literal(abs(c))
            else:
                root = f"E({self.conductor})" + (f"^{e}" if e != 1 else "")
                if abs(c) == 1:
                    base = root
                else:
                    base = f"{_frac_literal(abs(c))}*{root}"
            sign = "-" if c < 0 else "+"
            parts.append((sign, base))
        first_sign, first = parts[0]
        text = ("-" if first_sign == "-" else "") + first
        for sign, base in parts[1:]:
            text += f" {sign} {base}"
        return text


def _frac_literal(f: Fraction) -> str:
    return str(f.numerator) if f.denominator == 1 else f"{f.numerator}/{f.denominator}"


def _sparsify(dense: list[Fraction]) -> tuple[tuple[int, Fraction], ...]:
    return tuple((e, c) for e, c in enumerate(dense) if c)


def _merge_conductor(a: int, b: int) -> int:
    # lcm; a conductor = 2 mod 4 can only arise as an intermediate and is
    # cleaned up by the final canonicalisation
    return a * b // gcd(a, b)


def _canonical(n: int, dense: list[Fraction]) -> Cyclotomic:
    if not any(dense):
        return _CYCLO_ZERO
    for d in divisors(n):
        if d % 4 == 2:
            continue
        if d == n:
            break
        rewritten = _rewrite_in_subfield(n, d, dense)
        if rewritten is not None:
            return Cyclotomic(d, _sparsify(rewritten))
    return Cyclotomic(n, _sparsify(dense))


def _root_monomial(n: int, e: int, c: Fraction) -> Cyclotomic:
    """Canonical form of c * zeta_n^e."""
    if c == 0:
        return _CYCLO_ZERO
    e %= n
    g = gcd(e, n)
    n, e = n // g, e // g
    if n % 4 == 2:
        # zeta_(2m)^e = (-1)^e * zeta_m^(e * inv(2) mod m), and e is odd here
        m = n // 2
        c = -c
        e = (e * ((m + 1) // 2)) % m
        n = m
        g2 = gcd(e, n) if n > 1 else 1
        n, e = n // g2, e // g2
    if n == 1:
        return Cyclotomic.from_rational(c)
    deg = euler_phi(n)
    if e < deg:
        return Cyclotomic(n, ((e, c),))
    row = _reduction_table(n)[e]
    return Cyclotomic(n, _sparsify([c * t for t in row]))


_CYCLO_ZERO = Cyclotomic(1, ())


def _as_cyclo(x) -> Cyclotomic:
    if isinstance(x, Cyclotomic):
        return x
    if isinstance(x, (int, Fraction)):
        return Cyclotomic.from_rational(x)
    return NotImplemented


# ---------------------------------------------------------------------------
# public cyclotomic API


def E(n: int, k: int = 1) -> Cyclotomic:
    """The root of unity zeta_n^k in canonical form."""
    if n < 1:
        raise ValueError("conductor must be a positive integer")
    return _root_monomial(n, k, _ONE)


def cyclo_make(conductor: int, raw_terms: Iterable[tuple[int, Union[int, Fraction]]]) -> Cyclotomic:
    """Canonical cyclotomic value from a raw list of (exponent, coefficient).

    Exponents are reduced mod the conductor; equal field elements always yield
    identical representations.
    """
    if conductor < 1:
        raise ValueError("conductor must be a positive integer")
    deg = euler_phi(conductor)
    table = _reduction_table(conductor)
    dense = [_ZERO] * deg
    for e, c in raw_terms:
        c = Fraction(c)
        if not c:
            continue
        row = table[e % conductor]
        for j, t in enumerate(row):
            if t:
                dense[j] += c * t
    return _canonical(conductor, dense)


def cyclo_add(a: Cyclotomic, b: Cyclotomic) -> Cyclotomic:
    return a + b


def cyclo_mul(a: Cyclotomic, b: Cyclotomic) -> Cyclotomic:
    return a * b


def galois_apply(z: Cyclotomic, k: int) -> Cyclotomic:
    return z.galois(k)


def rational_trace(z: Cyclotomic) -> Fraction:
    return z.trace()


def as_rational(z: Cyclotomic) -> Optional[Fraction]:
    return z.as_rational()


def cyclo_sum(values: Iterable) -> Cyclotomic:
    """Sum of many cyclotomic values with a single final canonicalisation.

    Semantically identical to repeated ``+`` but avoids re-minimising the
    conductor after every step; used by inner products over whole tables.
    """
    items = [_as_cyclo(v) for v in values]
    items = [v for v in items if not v.is_zero()]
    if not items:
        return _CYCLO_ZERO
    n = 1
    for v in items:
        n = _merge_conductor(n, v.conductor)
    acc = [_ZERO] * euler_phi(n)
    for v in items:
        for j, c in enumerate(v._dense_at(n)):
            if c:
                acc[j] += c
    return _canonical(n, acc)


# ---------------------------------------------------------------------------
# odd-parameter affine forms


@dataclass(frozen=True)
class OddAffine:
    """Rational affine form ``const + slope * m`` with m an odd positive integer."""

    const: Fraction = _ZERO
    slope: Fraction = _ZERO

    def __post_init__(self):
        object.__setattr__(self, "const", Fraction(self.const))
        object.__setattr__(self, "slope", Fraction(self.slope))

    # -- arithmetic (closed under + and scalar *) ---------------------------

    def __add__(self, other):
        other = _as_affine(other)
        if other is NotImplemented:
            return NotImplemented
        return OddAffine(self.const + other.const, self.slope + other.slope)

    __radd__ = __add__

    def __neg__(self):
        return OddAffine(-self.const, -self.slope)

    def __sub__(self, other):
        other = _as_affine(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = _as_affine(other)
        if other is NotImplemented:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        if isinstance(other, OddAffine):
            if other.slope == 0:
                other = other.const
            elif self.slope == 0:
                self, other = other, self.const
            else:
                raise TypeError("products of two odd-parameter forms are not defined")
        if isinstance(other, (int, Fraction)):
            return OddAffine(self.const * other, self.slope * other)
        return NotImplemented

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)) and other != 0:
            return OddAffine(self.const / other, self.slope / other)
        return NotImplemented

    # -- queries -------------------------------------------------------------

    def eval_at(self, m: int) -> Fraction:
        """Exact value at a concrete odd positive m."""
        if m < 1 or m % 2 == 0:
            raise ValueError("m must be an odd positive integer")
        return self.const + self.slope * m

    def is_constant(self) -> bool:
        return self.slope == 0

    def is_zero(self) -> bool:
        return self.const == 0 and self.slope == 0

    def __repr__(self):
        return f"OddAffine({self.literal()!r})"

    def literal(self) -> str:
        if self.slope == 0:
            return _frac_literal(self.const)
        m_part = "m" if abs(self.slope) == 1 else f"{_frac_literal(abs(self.slope))}*m"
        if self.slope < 0:
            m_part = "-" + m_part
        if self.const == 0:
            return m_part
        sign = "+" if self.slope > 0 else "-"
        tail = m_part if self.slope > 0 else m_part[1:]
        return f"{_frac_literal(self.const)} {sign} {tail}"


M = OddAffine(0, 1)


def _as_affine(x):
    if isinstance(x, OddAffine):
        return x
    if isinstance(x, (int, Fraction)):
        return OddAffine(Fraction(x), _ZERO)
    if isinstance(x, Cyclotomic):
        r = x.as_rational()
        if r is not None:
            return OddAffine(r, _ZERO)
    return NotImplemented


def as_odd_affine(x) -> OddAffine:
    """Coerce an int, Rational, rational Cyclotomic or OddAffine to OddAffine."""
    v = _as_affine(x)
    if v is NotImplemented:
        raise TypeError(f"cannot interpret {x!r} as an odd-parameter affine form")
    return v


# ---------------------------------------------------------------------------
# sets of admissible odd m


class OddMSet:
    """A set of odd positive integers m cut out by affine constraints.

    Canonical shape: an arithmetic-progression condition (``m mod modulus``
    lies in ``residues``) intersected with ``lo <= m <= hi``  (``hi`` may be
    None for unbounded).  Closed under intersection, which is how engines
    accumulate "the constraint holds at m" facts.
    """

    __slots__ = ("modulus", "residues", "lo", "hi")

    def __init__(self, modulus: int, residues: frozenset[int], lo: int = 1, hi: Optional[int] = None):
        self.modulus = modulus
        self.residues = frozenset(r % modulus for r in residues)
        self.lo = max(1, lo)
        if self.lo % 2 == 0:
            self.lo += 1
        self.hi = hi

    # -- constructors --------------------------------------------------------

    @staticmethod
    def all_odd() -> "OddMSet":
        return OddMSet(2, frozenset({1}))

    @staticmethod
    def empty() -> "OddMSet":
        return OddMSet(2, frozenset())

    @staticmethod
    def singleton(m: int) -> "OddMSet":
        return OddMSet(2, frozenset({1}), lo=m, hi=m)

    @staticmethod
    def integrality(value: OddAffine, denom: Union[int, Fraction] = 1) -> "OddMSet":
        """Odd m for which value(m)/denom is an integer."""
        denom = Fraction(denom)
        a = value.const / denom
        b = value.slope / denom
        lcm_den = a.denominator * b.denominator // gcd(a.denominator, b.denominator)
        if lcm_den == 1:
            return OddMSet.all_odd()
        ai = int(a * lcm_den)
        bi = int(b * lcm_den)
        # solve bi * m = -ai (mod lcm_den), m odd
        g = gcd(bi, lcm_den)
        if ai % g:
            return OddMSet.empty()
        mod = lcm_den // g
        b_red = (bi // g) % mod
        a_red = (-ai // g) % mod
        if mod == 1:
            return OddMSet.all_odd()
        root = (a_red * pow(b_red, -1, mod)) % mod
        full_mod = mod if mod % 2 == 0 else 2 * mod
        residues = frozenset(
            r for r in range(root % mod, full_mod, mod) if r % 2 == 1
        )
        return OddMSet(full_mod, residues)

    @staticmethod
    def nonneg(value: OddAffine) -> "OddMSet":
        """Odd m with value(m) >= 0."""
        a, b = value.const, value.slope
        if b == 0:
            return OddMSet.all_odd() if a >= 0 else OddMSet.empty()
        bound = -a / b
        if b > 0:
            lo = math.ceil(bound)
            return OddMSet(2, frozenset({1}), lo=max(1, lo))
        hi = math.floor(bound)
        if hi < 1:
            return OddMSet.empty()
        return OddMSet(2, frozenset({1}), hi=hi)

    @staticmethod
    def nonneg_integer(value: OddAffine, denom: Union[int, Fraction] = 1) -> "OddMSet":
        return OddMSet.integrality(value, denom) & OddMSet.nonneg(value)

    @staticmethod
    def even_integer(value: OddAffine) -> "OddMSet":
        """Odd m for which value(m) is an even integer."""
        return OddMSet.integrality(value, 2)

    # -- set algebra -----------------------------------------------------------

    def __and__(self, other: "OddMSet") -> "OddMSet":
        mod = self.modulus * other.modulus // gcd(self.modulus, other.modulus)
        residues = frozenset(
            r for r in range(1, mod, 2)
            if r % self.modulus in self.residues and r % other.modulus in other.residues
        )
        lo = max(self.lo, other.lo)
        if self.hi is None:
            hi = other.hi
        elif other.hi is None:
            hi = self.hi
        else:
            hi = min(self.hi, other.hi)
        return OddMSet(mod, residues, lo=lo, hi=hi)

    def contains(self, m: int) -> bool:
        if m < self.lo or m % 2 == 0 or m < 1:
            return False
        if self.hi is not None and m > self.hi:
            return False
        return m % self.modulus in self.residues

    def min_element(self) -> Optional[int]:
        if not self.residues:
            return None
        limit = self.hi if self.hi is not None else self.lo + 2 * self.modulus
        m = self.lo
        while m <= limit:
            if self.contains(m):
                return m
            m += 2
        return None

    def is_empty(self) -> bool:
        return self.min_element() is None

    def is_all_odd(self) -> bool:
        if self.lo > 1 or self.hi is not None:
            return False
        return all((r % self.modulus) in self.residues for r in range(1, self.modulus, 2))

    def __repr__(self):
        if self.is_empty():
            return "OddMSet(empty)"
        if self.is_all_odd():
            return "OddMSet(all odd m)"
        rng = f"{self.lo}..{self.hi if self.hi is not None else ''}"
        return f"OddMSet(m % {self.modulus} in {sorted(self.residues)}, {rng})"

    def __eq__(self, other):
        if not isinstance(other, OddMSet):
            return NotImplemented
        probe = 2 * self.modulus * other.modulus
        top = max(x for x in (self.hi, other.hi, self.lo, other.lo, probe) if x is not None) + probe
        return all(self.contains(m) == other.contains(m) for m in range(1, top + 1, 2))


# ---------------------------------------------------------------------------
# verdicts over all odd m


@dataclass(frozen=True)
class Verdict:
    """Outcome of a question asked for every odd m >= 1."""

    kind: str  # "always" | "never" | "depends"
    witness: Optional[int] = None  # a concrete odd m where the property holds

    @property
    def always(self) -> bool:
        return self.kind == "always"

    @property
    def never(self) -> bool:
        return self.kind == "never"


ALWAYS_HOLDS = Verdict("always")
NEVER_HOLDS = Verdict("never")


def verdict_of(mset: OddMSet) -> Verdict:
    if mset.is_all_odd():
        return ALWAYS_HOLDS
    m = mset.min_element()
    if m is None:
        return NEVER_HOLDS
    return Verdict("depends", witness=m)


def oddaffine_nonneg_integer(v: OddAffine, denom: int) -> Verdict:
    """Decide whether (const + slope*m)/denom is a non-negative integer for
    all / no / some odd m >= 1.
    """
    if denom < 1:
        raise ValueError("denominator must be a positive integer")
    return verdict_of(OddMSet.nonneg_integer(v, denom))


# ---------------------------------------------------------------------------
# the value literal grammar:  E(n), integers, rationals a/b, the symbol m,
# operators + - * ^ and parentheses; m may occur only linearly and only with
# rational coefficients.


class ValueSyntaxError(ValueError):
    pass


_TOKEN_RE = re.compile(r"\s*(?:(\d+)|(E)|(m)|([()+\-*^/]))")


def _tokenize(text: str):
    pos = 0
    out = []
    while pos < len(text):
        mt = _TOKEN_RE.match(text, pos)
        if not mt or mt.end() == pos:
            raise ValueSyntaxError(f"bad character at position {pos}: {text[pos:]!r}")
        if mt.group(1):
            out.append(("int", int(mt.group(1))))
        elif mt.group(2):
            out.append(("E", None))
        elif mt.group(3):
            out.append(("m", None))
        else:
            out.append((mt.group(4), None))
        pos = mt.end()
    return out


class _ValueParser:
    """Recursive-descent parser producing (const, slope) Cyclotomic pairs."""

    def __init__(self, tokens):
        self.tokens = tokens
        self.pos = 0

    def peek(self):
        return self.tokens[self.pos][0] if self.pos < len(self.tokens) else None

    def take(self, kind=None):
        if self.pos >= len(self.tokens):
            raise ValueSyntaxError("unexpected end of expression")
        tok = self.tokens[self.pos]
        if kind is not None and tok[0] != kind:
            raise ValueSyntaxError(f"expected {kind!r}, found {tok[0]!r}")
        self.pos += 1
        return tok

    def parse(self):
        v = self.expr()
        if self.pos != len(self.tokens):
            raise ValueSyntaxError("trailing input after expression")
        return v

    def expr(self):
        sign = 1
        while self.peek() in ("+", "-"):
            if self.take()[0] == "-":
                sign = -sign
        v = self.term()
        v = _pair_scale(v, sign)
        while self.peek() in ("+", "-"):
            op = self.take()[0]
            w = self.term()
            if op == "-":
                w = _pair_scale(w, -1)
            v = (v[0] + w[0], v[1] + w[1])
        return v

    def term(self):
        v = self.factor()
        while True:
            nxt = self.peek()
            if nxt == "*":
                self.take()
            elif nxt not in ("m", "E", "("):  # implicit products like 3m, 2E(4)
                break
            v = _pair_mul(v, self.factor())
        return v

    def factor(self):
        v = self.atom()
        if self.peek() == "^":
            self.take()
            neg = False
            while self.peek() in ("+", "-"):
                if self.take()[0] == "-":
                    neg = not neg
            k = self.take("int")[1]
            if neg:
                raise ValueSyntaxError("negative exponents are not supported")
            if not v[1].is_zero():
                if k == 0:
                    return (Cyclotomic.from_rational(1), _CYCLO_ZERO)
                if k == 1:
                    return v
                raise ValueSyntaxError("the symbol m may appear only linearly")
            return (v[0] ** k, _CYCLO_ZERO)
        return v

    def atom(self):
        kind = self.peek()
        if kind == "int":
            num = self.take("int")[1]
            if self.peek() == "/":
                self.take()
                den = self.take("int")[1]
                if den == 0:
                    raise ValueSyntaxError("zero denominator")
                return (Cyclotomic.from_rational(Fraction(num, den)), _CYCLO_ZERO)
            return (Cyclotomic.from_rational(num), _CYCLO_ZERO)
        if kind == "E":
            self.take()
            self.take("(")
            n = self.take("int")[1]
            self.take(")")
            if n < 1:
                raise ValueSyntaxError("E(n) needs a positive integer n")
            return (E(n), _CYCLO_ZERO)
        if kind == "m":
            self.take()
            return (_CYCLO_ZERO, Cyclotomic.from_rational(1))
        if kind == "(":
            self.take()
            v = self.expr()
            self.take(")")
            return v
        if kind == "-":
            self.take()
            return _pair_scale(self.atom(), -1)
        raise ValueSyntaxError(f"unexpected token {kind!r}")


def _pair_scale(v, s: int):
    return (v[0] * s, v[1] * s)


def _pair_mul(v, w):
    if not v[1].is_zero() and not w[1].is_zero():
        raise ValueSyntaxError("the symbol m may appear only linearly")
    const = v[0] * w[0]
    slope = v[0] * w[1] + v[1] * w[0]
    return (const, slope)


def parse_value(text: str) -> Union[Cyclotomic, OddAffine]:
    """Parse a value literal; returns a Cyclotomic, or an OddAffine if
    the odd symbol m occurs (its coefficients must then be rational)."""
    const, slope = _ValueParser(_tokenize(text)).parse()
    if slope.is_zero():
        return const
    cr, sr = const.as_rational(), slope.as_rational()
    if cr is None or sr is None:
        raise ValueSyntaxError("parametric values must have rational coefficients")
    return OddAffine(cr, sr)


def value_literal(v) -> str:
    """Inverse of parse_value for Cyclotomic / OddAffine / Rational values."""
    if isinstance(v, OddAffine):
        return v.literal()
    if isinstance(v, Cyclotomic):
        return v.literal()
    return _frac_literal(Fraction(v))

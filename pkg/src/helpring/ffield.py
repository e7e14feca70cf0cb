"""Finite fields F_{p^k} of odd characteristic.

Elements are coefficient tuples over F_p modulo a monic irreducible
polynomial; the modulus is always the lexicographically smallest monic
irreducible of the right degree (ordering constant coefficient first), so
field construction, primitive elements and discrete logarithms are
reproducible across runs.  Cardinality is capped at 10^6; everything the
representation engine needs lives far below that.
"""

from __future__ import annotations

from functools import lru_cache
from typing import Iterator, Optional

from .exactnum import factorize, is_prime

_CARD_CAP = 10**6


class FieldElement:
    """Element of a FiniteField; immutable, reduced coefficient tuple."""

    __slots__ = ("field", "coeffs", "_hash")

    def __init__(self, field: "FiniteField", coeffs: tuple[int, ...]):
        self.field = field
        self.coeffs = coeffs
        self._hash = hash((id(field), coeffs))

    def __add__(self, other):
        other = self.field.coerce(other)
        p = self.field.p
        return FieldElement(self.field, tuple((a + b) % p for a, b in zip(self.coeffs, other.coeffs)))

    def __sub__(self, other):
        other = self.field.coerce(other)
        p = self.field.p
        return FieldElement(self.field, tuple((a - b) % p for a, b in zip(self.coeffs, other.coeffs)))

    def __neg__(self):
        p = self.field.p
        return FieldElement(self.field, tuple((-a) % p for a in self.coeffs))

    def __mul__(self, other):
        other = self.field.coerce(other)
        return self.field._mul(self, other)

    __radd__ = __add__
    __rmul__ = __mul__

    def __rsub__(self, other):
        return self.field.coerce(other) - self

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        result = self.field.one
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def inverse(self) -> "FieldElement":
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero field element")
        return self ** (self.field.q - 2)

    def __truediv__(self, other):
        return self * self.field.coerce(other).inverse()

    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coeffs)

    def multiplicative_order(self) -> int:
        if self.is_zero():
            raise ValueError("zero has no multiplicative order")
        order = self.field.q - 1
        for prime in factorize(order):
            while order % prime == 0 and (self ** (order // prime)) == self.field.one:
                order //= prime
        return order

    def as_int(self) -> int:
        """Rank in the deterministic coefficient ordering (base-p value)."""
        total = 0
        for c in reversed(self.coeffs):
            total = total * self.field.p + c
        return total

    def __eq__(self, other):
        if isinstance(other, int):
            other = self.field.coerce(other)
        if not isinstance(other, FieldElement):
            return NotImplemented
        return self.field is other.field and self.coeffs == other.coeffs

    def __hash__(self):
        return self._hash

    def __repr__(self):
        return f"FieldElement({self.as_int()} in GF({self.field.q}))"


def _poly_mul_mod(a: tuple[int, ...], b: tuple[int, ...], modulus: tuple[int, ...], p: int) -> tuple[int, ...]:
    k = len(modulus) - 1
    prod = [0] * (2 * k - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                if y:
                    prod[i + j] = (prod[i + j] + x * y) % p
    for d in range(len(prod) - 1, k - 1, -1):
        c = prod[d]
        if c:
            prod[d] = 0
            for j in range(k):
                prod[d - k + j] = (prod[d - k + j] - c * modulus[j]) % p
    return tuple(prod[:k])


class FiniteField:
    """F_{p^k} for odd prime p, with deterministic modulus and generator."""

    def __init__(self, p: int, k: int, modulus: tuple[int, ...]):
        self.p = p
        self.k = k
        self.q = p**k
        self.modulus = modulus  # monic, constant coefficient first, length k+1
        self.zero = FieldElement(self, (0,) * k)
        self.one = FieldElement(self, (1,) + (0,) * (k - 1))
        self._primitive: Optional[FieldElement] = None
        self._dlog: Optional[dict[tuple[int, ...], int]] = None

    def _mul(self, a: FieldElement, b: FieldElement) -> FieldElement:
        return FieldElement(self, _poly_mul_mod(a.coeffs, b.coeffs, self.modulus, self.p))

    def coerce(self, x) -> FieldElement:
        if isinstance(x, FieldElement):
            if x.field is not self:
                raise ValueError("element belongs to a different field")
            return x
        if isinstance(x, int):
            return FieldElement(self, (x % self.p,) + (0,) * (self.k - 1))
        raise TypeError(f"cannot coerce {x!r} into GF({self.q})")

    def element_from_int(self, value: int) -> FieldElement:
        """Inverse of FieldElement.as_int."""
        coeffs = []
        for _ in range(self.k):
            coeffs.append(value % self.p)
            value //= self.p
        return FieldElement(self, tuple(coeffs))

    def elements(self) -> Iterator[FieldElement]:
        for value in range(self.q):
            yield self.element_from_int(value)

    def gen(self) -> FieldElement:
        """The residue class of x (a root of the modulus)."""
        if self.k == 1:
            return self.coerce(self.modulus[0] * -1)
        return FieldElement(self, (0, 1) + (0,) * (self.k - 2))

    def primitive_element(self) -> FieldElement:
        """Deterministic generator of the multiplicative group: the smallest
        element in the coefficient ordering of full order q - 1."""
        if self._primitive is None:
            for value in range(1, self.q):
                x = self.element_from_int(value)
                if x.multiplicative_order() == self.q - 1:
                    self._primitive = x
                    break
        return self._primitive

    def dlog(self, x: FieldElement) -> int:
        """Discrete log base the primitive element (full table, q is small)."""
        if self._dlog is None:
            table = {}
            g = self.primitive_element()
            acc = self.one
            for e in range(self.q - 1):
                table[acc.coeffs] = e
                acc = acc * g
            self._dlog = table
        if x.is_zero():
            raise ValueError("discrete log of zero")
        return self._dlog[x.coeffs]

    def __repr__(self):
        return f"GF({self.q})"


def _is_irreducible(poly: tuple[int, ...], p: int, irreducibles_by_degree) -> bool:
    """Trial division by all smaller-degree monic irreducibles."""
    k = len(poly) - 1
    for d in range(1, k // 2 + 1):
        for div in irreducibles_by_degree(d):
            # polynomial remainder of poly by div over F_p
            rem = list(poly)
            for top in range(k, d - 1, -1):
                c = rem[top]
                if c:
                    rem[top] = 0
                    for j in range(d):
                        rem[top - d + j] = (rem[top - d + j] - c * div[j]) % p
            if all(c == 0 for c in rem):
                return False
    return True


@lru_cache(maxsize=None)
def _monic_irreducibles(p: int, degree: int) -> tuple[tuple[int, ...], ...]:
    """All monic irreducibles of the given degree over F_p, ascending."""
    out = []
    for value in range(p**degree):
        coeffs = []
        v = value
        for _ in range(degree):
            coeffs.append(v % p)
            v //= p
        poly = tuple(coeffs) + (1,)
        if degree == 1 or _is_irreducible(poly, p, lambda d: _monic_irreducibles(p, d)):
            out.append(poly)
    return tuple(out)


@lru_cache(maxsize=None)
def field_make(p: int, k: int) -> FiniteField:
    """Construct F_{p^k} with the deterministic (lexicographically smallest)
    monic irreducible modulus.  p must be an odd prime and p^k <= 10^6."""
    if not is_prime(p) or p == 2:
        raise ValueError(f"{p} is not an odd prime")
    if k < 1 or p**k > _CARD_CAP:
        raise ValueError(f"field cardinality {p}^{k} out of range")
    if k == 1:
        return FiniteField(p, 1, (0, 1))  # modulus x
    for value in range(p**k):
        coeffs = []
        v = value
        for _ in range(k):
            coeffs.append(v % p)
            v //= p
        poly = tuple(coeffs) + (1,)
        if _is_irreducible(poly, p, lambda d: _monic_irreducibles(p, d)):
            return FiniteField(p, k, poly)
    raise AssertionError("no irreducible polynomial found")


def primitive_element(field: FiniteField) -> FieldElement:
    return field.primitive_element()


def frobenius(x: FieldElement, r: int) -> FieldElement:
    """The field automorphism y -> y^r; r must be a power of the characteristic."""
    p = x.field.p
    m = r
    while m % p == 0:
        m //= p
    if m != 1:
        raise ValueError(f"{r} is not a power of the characteristic {p}")
    return x**r


def max_2power_element(field: FiniteField) -> FieldElement:
    """An element of maximal 2-power multiplicative order 2^v with 2^v || q-1.

    The choice is deterministic (a power of the primitive element).  When
    q = r^2 is a square the relation between the order-2 automorphism
    sigma: x -> x^r and alpha is verified:  sigma(alpha) = -1/alpha for
    r = 3 mod 4 and sigma(alpha) = -alpha for r = 1 mod 4.
    """
    q = field.q
    two_part = 1
    rest = q - 1
    while rest % 2 == 0:
        rest //= 2
        two_part *= 2
    alpha = field.primitive_element() ** ((q - 1) // two_part)
    assert alpha.multiplicative_order() == two_part
    r = _integer_sqrt(q)
    if r is not None and r * r == q:
        sigma_alpha = alpha**r
        if r % 4 == 3:
            assert sigma_alpha == -(alpha.inverse()), "sigma(alpha) != -alpha^-1"
        else:
            assert sigma_alpha == -alpha, "sigma(alpha) != -alpha"
    return alpha


def _integer_sqrt(q: int) -> Optional[int]:
    r = int(q**0.5)
    for cand in (r - 1, r, r + 1):
        if cand >= 0 and cand * cand == q:
            return cand
    return None


@lru_cache(maxsize=None)
def subfield_embedding(small: FiniteField, big: FiniteField):
    """The canonical embedding F_{p^k} -> F_{p^(k*t)}: the generator of the
    small field is sent to the smallest root of its modulus in the big one.

    Returns a callable FieldElement -> FieldElement.
    """
    if small.p != big.p or big.k % small.k != 0:
        raise ValueError("no subfield embedding exists")
    if small is big:
        return lambda x: x
    root = None
    for value in range(big.q):
        cand = big.element_from_int(value)
        acc = big.zero
        power = big.one
        for c in small.modulus:
            if c:
                acc = acc + power * c
            power = power * cand
        if acc.is_zero():
            root = cand
            break
    assert root is not None, "modulus has no root in the extension"

    def embed(x: FieldElement) -> FieldElement:
        if x.field is not small:
            raise ValueError("element not in the source field")
        acc = big.zero
        power = big.one
        for c in x.coeffs:
            if c:
                acc = acc + power * c
            power = power * root
        return acc

    return embed

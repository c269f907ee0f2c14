"""Elements of the self-idealization R(D) = {[[a, b], [0, a]]} of a PID D."""

from __future__ import annotations

import enum
from dataclasses import dataclass, field

from .ring import INF, ZZ, DomainError, Ring


class Classification(enum.Enum):
    Zero = "Zero"
    Unit = "Unit"
    ZeroDivisorNonunit = "ZeroDivisorNonunit"
    RegularNonunit = "RegularNonunit"


class IrreducibleKind(enum.Enum):
    ZeroDivisorPrime = "ZeroDivisorPrime"  # (0, unit)
    PrimeNorm = "PrimeNorm"  # norm is a prime of D
    CoprimePrimePower = "CoprimePrimePower"  # norm u*p^n, n >= 2, b coprime to p


@dataclass(frozen=True)
class LocalProfile:
    p: object
    n: int
    k: object  # int or INF

    @property
    def k_infinite(self) -> bool:
        return self.k == INF


@dataclass(frozen=True)
class SIElement:
    """The matrix ``[[a, b], [0, a]]``; ``a`` is the norm, ``b`` the nilpotent part."""

    a: object
    b: object
    ring: Ring = field(default=ZZ, compare=False, repr=False)

    def __post_init__(self):
        object.__setattr__(self, "a", self.ring.coerce(self.a))
        object.__setattr__(self, "b", self.ring.coerce(self.b))

    def __mul__(self, other: SIElement) -> SIElement:
        if not isinstance(other, SIElement):
            return NotImplemented
        return SIElement(self.a * other.a, self.a * other.b + self.b * other.a, self.ring)

    def __add__(self, other: SIElement) -> SIElement:
        return SIElement(self.a + other.a, self.b + other.b, self.ring)

    def __sub__(self, other: SIElement) -> SIElement:
        return SIElement(self.a - other.a, self.b - other.b, self.ring)

    def __neg__(self) -> SIElement:
        return SIElement(-self.a, -self.b, self.ring)

    def __pow__(self, e: int) -> SIElement:
        result = one(self.ring)
        for _ in range(e):
            result = result * self
        return result

    @property
    def norm(self):
        return self.a

    @property
    def is_zero(self) -> bool:
        return self.ring.is_zero(self.a) and self.ring.is_zero(self.b)

    @property
    def is_zero_divisor(self) -> bool:
        return self.ring.is_zero(self.a)

    def sort_key(self):
        return (self.ring.sort_key(self.a), self.ring.sort_key(self.b))

    def __str__(self):
        return f"{self.ring.format(self.a)} ; {self.ring.format(self.b)}"

    def to_json(self) -> dict:
        return {"a": self.ring.format(self.a), "b": self.ring.format(self.b)}


def one(ring: Ring = ZZ) -> SIElement:
    return SIElement(ring.one, ring.zero, ring)


def embed(a, ring: Ring = ZZ) -> SIElement:
    """The diagonal copy ``(a, 0)`` of ``a`` in R(D)."""
    return SIElement(a, ring.zero, ring)


def mul(x: SIElement, y: SIElement) -> SIElement:
    return x * y


def norm(x: SIElement):
    return x.a


def product(elems, ring: Ring = ZZ) -> SIElement:
    result = one(ring)
    for e in elems:
        result = result * e
    return result


def parse_element(text: str, ring: Ring = ZZ) -> SIElement:
    """Parse ``"<a> ; <b>"`` using the ring's literal syntax."""
    parts = text.split(";")
    if len(parts) != 2:
        raise ValueError(f"expected '<a> ; <b>', got {text!r}")
    return SIElement(ring.parse(parts[0]), ring.parse(parts[1]), ring)


def from_json(obj: dict, ring: Ring = ZZ) -> SIElement:
    return SIElement(ring.parse(str(obj["a"])), ring.parse(str(obj["b"])), ring)


def classify(x: SIElement) -> Classification:
    R = x.ring
    if x.is_zero:
        return Classification.Zero
    if R.is_unit(x.a):
        return Classification.Unit
    if R.is_zero(x.a):
        return Classification.ZeroDivisorNonunit
    return Classification.RegularNonunit


def is_unit(x: SIElement) -> bool:
    return x.ring.is_unit(x.a)


def inverse(x: SIElement) -> SIElement:
    """Inverse of a unit: ``(u, -b u^2)`` with ``u = a^-1``."""
    R = x.ring
    if not R.is_unit(x.a):
        raise DomainError(f"({x}) is not a unit")
    u = R.unit_inverse(x.a)
    return SIElement(u, -x.b * u * u, R)


def canonicalize(x: SIElement) -> SIElement:
    """The fixed representative of the associate class of ``x``.

    Regular elements become ``(normalized norm, b * u^-1 mod norm)``; once the
    norm is fixed the only remaining freedom is adding multiples of it to ``b``.
    Zero divisors become ``(0, normalized b)``.
    """
    R = x.ring
    if R.is_zero(x.a):
        return SIElement(R.zero, R.normalize(x.b)[0], R)
    a_c, u = R.normalize(x.a)
    return SIElement(a_c, R.reduce_mod(x.b * R.unit_inverse(u), a_c), R)


def is_associate(x: SIElement, y: SIElement) -> bool:
    return canonicalize(x) == canonicalize(y)


def associating_unit(x: SIElement, y: SIElement) -> SIElement | None:
    """A unit ``theta`` with ``y == theta * x``, or None when the two are not associates."""
    R = x.ring
    if R.is_zero(x.a):
        if not R.is_zero(y.a):
            return None
        if R.is_zero(x.b):
            return one(R) if R.is_zero(y.b) else None
        u = R.divide_exact(y.b, x.b)
        if u is None or not R.is_unit(u):
            return None
        return SIElement(u, R.zero, R)
    u = R.divide_exact(y.a, x.a)
    if u is None or not R.is_unit(u):
        return None
    v = R.divide_exact(y.b - x.b * u, x.a)
    if v is None:
        return None
    return SIElement(u, v, R)


def _prime_power(R: Ring, a):
    """``(p, n)`` when ``a`` is a unit times ``p^n`` with ``n >= 1``, else None."""
    if R.is_zero(a) or R.is_unit(a):
        return None
    f = R.factor(a)
    if len(f.factors) != 1:
        return None
    return f.factors[0]


def classify_irreducible(x: SIElement) -> IrreducibleKind | None:
    R = x.ring
    if R.is_zero(x.a):
        return IrreducibleKind.ZeroDivisorPrime if R.is_unit(x.b) else None
    pp = _prime_power(R, x.a)
    if pp is None:
        return None
    p, n = pp
    if n == 1:
        return IrreducibleKind.PrimeNorm
    return IrreducibleKind.CoprimePrimePower if R.valuation(p, x.b) == 0 else None


def is_irreducible(x: SIElement) -> bool:
    return classify_irreducible(x) is not None


def is_prime(x: SIElement) -> bool:
    R = x.ring
    return R.is_zero(x.a) and R.is_unit(x.b)


def divides(d: SIElement, x: SIElement) -> SIElement | None:
    """Some ``q`` with ``x == d * q``, or None if ``d`` does not divide ``x``.

    Quotients by zero divisors are not unique; ``(x_b / c, 0)`` is returned.
    """
    R = d.ring
    if d.is_zero:
        raise DomainError("division by zero element")
    if R.is_zero(d.a):
        if not R.is_zero(x.a):
            return None
        q = R.divide_exact(x.b, d.b)
        return None if q is None else SIElement(q, R.zero, R)
    qa = R.divide_exact(x.a, d.a)
    if qa is None:
        return None
    qb = R.divide_exact(x.b - d.b * qa, d.a)
    if qb is None:
        return None
    return SIElement(qa, qb, R)


def local_profile(x: SIElement) -> LocalProfile | None:
    R = x.ring
    pp = _prime_power(R, x.a)
    if pp is None:
        return None
    p, n = pp
    return LocalProfile(p, n, R.valuation(p, x.b))

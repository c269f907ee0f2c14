"""Effective principal ideal domains: the integers and F_p[x].

Each ring object bundles the operations the rest of the package needs
(canonical associates, extended gcd, exact division, residue systems and
prime factorization).  Elements are plain Python values: ``int`` for the
integers and :class:`Poly` for polynomials, so ``+``, ``-``, ``*`` and
``==`` work directly on them.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import count, product
from typing import Iterator

INF = math.inf


class DomainError(ValueError):
    """An operation was called outside its domain (zero divisor, non-prime...)."""


@dataclass(frozen=True)
class BezoutCertificate:
    g: object
    s: object
    t: object


@dataclass(frozen=True)
class PrimeFactorization:
    unit: object
    factors: tuple  # ((prime, exponent), ...)

    def expand(self, ring):
        result = self.unit
        for p, e in self.factors:
            result = result * ring.power(p, e)
        return result

    @property
    def total_exponent(self) -> int:
        return sum(e for _, e in self.factors)


def is_small_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


class Ring:
    """Common behaviour of the shipped PIDs.  Subclasses fill in the primitives."""

    name = "ring"
    zero: object
    one: object

    def coerce(self, v):
        raise NotImplementedError

    def is_unit(self, x) -> bool:
        raise NotImplementedError

    def normalize(self, x):
        """Return ``(canonical, unit)`` with ``x == unit * canonical``."""
        raise NotImplementedError

    def unit_inverse(self, u):
        raise NotImplementedError

    def divmod(self, x, y):
        raise NotImplementedError

    def residues(self, m) -> list:
        raise NotImplementedError

    def quotient_size(self, m) -> int:
        raise NotImplementedError

    def primes(self) -> Iterator:
        """All canonical primes in a fixed increasing order."""
        raise NotImplementedError

    def sort_key(self, x):
        raise NotImplementedError

    def parse(self, text: str):
        raise NotImplementedError

    def format(self, x) -> str:
        raise NotImplementedError

    def units(self) -> list:
        raise NotImplementedError

    # derived operations

    def is_zero(self, x) -> bool:
        return x == self.zero

    def power(self, x, e: int):
        result = self.one
        for _ in range(e):
            result = result * x
        return result

    def divide_exact(self, x, y):
        """Return ``q`` with ``x == q * y``, or ``None`` when ``y`` does not divide ``x``."""
        if self.is_zero(y):
            raise DomainError("division by zero")
        q, r = self.divmod(x, y)
        return q if self.is_zero(r) else None

    def divides(self, y, x) -> bool:
        if self.is_zero(y):
            return self.is_zero(x)
        return self.divide_exact(x, y) is not None

    def reduce_mod(self, x, m):
        if self.is_zero(m):
            raise DomainError("reduction modulo zero")
        return self.divmod(x, m)[1]

    def gcd_ext(self, x, y) -> BezoutCertificate:
        if self.is_zero(x) and self.is_zero(y):
            raise DomainError("gcd of zero and zero")
        r0, s0, t0 = x, self.one, self.zero
        r1, s1, t1 = y, self.zero, self.one
        while not self.is_zero(r1):
            q, r = self.divmod(r0, r1)
            r0, r1 = r1, r
            s0, s1 = s1, s0 - q * s1
            t0, t1 = t1, t0 - q * t1
        g, u = self.normalize(r0)
        inv = self.unit_inverse(u)
        return BezoutCertificate(g, s0 * inv, t0 * inv)

    def gcd(self, x, y):
        return self.gcd_ext(x, y).g

    def is_associate(self, x, y) -> bool:
        return self.normalize(x)[0] == self.normalize(y)[0]

    def factor(self, x) -> PrimeFactorization:
        if self.is_zero(x):
            raise DomainError("cannot factor zero")
        rest, unit = self.normalize(x)
        factors = []
        for p in self.primes():
            if self.is_unit(rest):
                break
            if self._prime_too_large(p, rest):
                factors.append((rest, 1))
                break
            e = 0
            while True:
                q = self.divide_exact(rest, p)
                if q is None:
                    break
                rest, e = q, e + 1
            if e:
                factors.append((p, e))
        factors.sort(key=lambda pe: self.sort_key(pe[0]))
        return PrimeFactorization(unit, tuple(factors))

    def _prime_too_large(self, p, rest) -> bool:
        """True once no prime divisor of ``rest`` can be as large as ``p``."""
        raise NotImplementedError

    def is_prime_elem(self, x) -> bool:
        if self.is_zero(x) or self.is_unit(x):
            return False
        f = self.factor(x)
        return len(f.factors) == 1 and f.factors[0][1] == 1

    def valuation(self, p, x):
        if not self.is_prime_elem(p):
            raise DomainError(f"{self.format(p)} is not prime")
        if self.is_zero(x):
            return INF
        k = 0
        while True:
            q = self.divide_exact(x, p)
            if q is None:
                return k
            x, k = q, k + 1

    def __repr__(self):
        return self.name


class IntegerRing(Ring):
    """The integers with nonnegative canonical associates."""

    name = "Z"
    zero = 0
    one = 1

    def coerce(self, v):
        if isinstance(v, bool) or not isinstance(v, int):
            raise TypeError(f"integer expected, got {v!r}")
        return v

    def is_unit(self, x):
        return x in (1, -1)

    def normalize(self, x):
        return (-x, -1) if x < 0 else (x, 1)

    def unit_inverse(self, u):
        return u

    def units(self):
        return [1, -1]

    def divmod(self, x, y):
        # remainder in [0, |y|)
        q, r = divmod(x, y)
        if r < 0:
            q, r = q + 1, r - y
        return q, r

    def residues(self, m):
        if m == 0:
            raise DomainError("Z/0Z is infinite")
        return list(range(abs(m)))

    def quotient_size(self, m):
        if m == 0:
            raise DomainError("Z/0Z is infinite")
        return abs(m)

    def primes(self):
        yield 2
        for n in count(3, 2):
            if is_small_prime(n):
                yield n

    def _prime_too_large(self, p, rest):
        return p * p > rest

    def factor(self, x):
        # odd trial divisors need not be prime: composites never divide what is left
        if x == 0:
            raise DomainError("cannot factor zero")
        rest, unit = self.normalize(x)
        factors = []
        d = 2
        while d * d <= rest:
            e = 0
            while rest % d == 0:
                rest //= d
                e += 1
            if e:
                factors.append((d, e))
            d += 1 if d == 2 else 2
        if rest > 1:
            factors.append((rest, 1))
        return PrimeFactorization(unit, tuple(factors))

    def sort_key(self, x):
        return (abs(x), x < 0)

    def parse(self, text):
        try:
            return int(text.strip())
        except ValueError:
            raise ValueError(f"not an integer: {text!r}") from None

    def format(self, x):
        return str(x)


class Poly:
    """Polynomial over F_p, stored as a trimmed tuple of ascending coefficients."""

    __slots__ = ("p", "coeffs")

    def __init__(self, p: int, coeffs=()):
        cs = [c % p for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        self.p = p
        self.coeffs = tuple(cs)

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def lead(self) -> int:
        return self.coeffs[-1] if self.coeffs else 0

    def _lift(self, other):
        if isinstance(other, Poly):
            if other.p != self.p:
                raise ValueError("polynomials over different fields")
            return other
        if isinstance(other, int):
            return Poly(self.p, (other,))
        return NotImplemented

    def __add__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        a, b = self.coeffs, other.coeffs
        n = max(len(a), len(b))
        return Poly(self.p, [(a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0) for i in range(n)])

    __radd__ = __add__

    def __neg__(self):
        return Poly(self.p, [-c for c in self.coeffs])

    def __sub__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return Poly(self.p)
        out = [0] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    out[i + j] += x * y
        return Poly(self.p, out)

    __rmul__ = __mul__

    def __divmod__(self, other):
        other = self._lift(other)
        if not other.coeffs:
            raise ZeroDivisionError("polynomial division by zero")
        p = self.p
        inv = pow(other.lead, -1, p)
        rem = list(self.coeffs)
        dq = len(rem) - len(other.coeffs)
        if dq < 0:
            return Poly(p), self
        quot = [0] * (dq + 1)
        db = other.degree
        for i in range(dq, -1, -1):
            c = rem[i + db] * inv % p
            quot[i] = c
            if c:
                for j, y in enumerate(other.coeffs):
                    rem[i + j] = (rem[i + j] - c * y) % p
        return Poly(p, quot), Poly(p, rem[:db])

    def __eq__(self, other):
        if isinstance(other, int):
            other = Poly(self.p, (other,))
        if not isinstance(other, Poly):
            return NotImplemented
        return self.p == other.p and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.p, self.coeffs))

    def index(self) -> int:
        """Base-p integer encoding; orders by degree, then coefficients from the top."""
        return sum(c * self.p**i for i, c in enumerate(self.coeffs))

    def __repr__(self):
        return f"Poly({self.p}, {list(self.coeffs)})"

    def __str__(self):
        if not self.coeffs:
            return "0"
        terms = []
        for i in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[i]
            if not c:
                continue
            mono = "" if i == 0 else ("x" if i == 1 else f"x^{i}")
            if not mono:
                terms.append(str(c))
            else:
                terms.append(mono if c == 1 else f"{c}*{mono}")
        return " + ".join(terms)


class PolynomialRing(Ring):
    """F_p[x] with monic canonical associates."""

    def __init__(self, p: int):
        if not is_small_prime(p):
            raise DomainError(f"characteristic {p} is not prime")
        self.p = p
        self.name = f"F{p}[x]"
        self.zero = Poly(p)
        self.one = Poly(p, (1,))
        self.x = Poly(p, (0, 1))
        self._irreducibles: list[Poly] = []
        self._sieved_degree = 0

    def __eq__(self, other):
        return isinstance(other, PolynomialRing) and other.p == self.p

    def __hash__(self):
        return hash(("poly", self.p))

    def __call__(self, *coeffs):
        return Poly(self.p, coeffs)

    def coerce(self, v):
        if isinstance(v, Poly):
            if v.p != self.p:
                raise ValueError("polynomial over a different field")
            return v
        if isinstance(v, int) and not isinstance(v, bool):
            return Poly(self.p, (v,))
        if isinstance(v, (list, tuple)):
            return Poly(self.p, v)
        raise TypeError(f"polynomial expected, got {v!r}")

    def is_unit(self, x):
        return x.degree == 0

    def normalize(self, x):
        if not x.coeffs:
            return x, self.one
        lc = x.lead
        if lc == 1:
            return x, self.one
        return x * pow(lc, -1, self.p), Poly(self.p, (lc,))

    def unit_inverse(self, u):
        return Poly(self.p, (pow(u.lead, -1, self.p),))

    def units(self):
        return [Poly(self.p, (c,)) for c in range(1, self.p)]

    def divmod(self, x, y):
        return divmod(x, y)

    def from_index(self, i: int) -> Poly:
        cs = []
        while i:
            i, c = divmod(i, self.p)
            cs.append(c)
        return Poly(self.p, cs)

    def residues(self, m):
        if not m.coeffs:
            raise DomainError("F_p[x]/(0) is infinite")
        return [self.from_index(i) for i in range(self.p ** m.degree)]

    def quotient_size(self, m):
        if not m.coeffs:
            raise DomainError("F_p[x]/(0) is infinite")
        return self.p ** m.degree

    def monics(self, degree: int) -> Iterator[Poly]:
        for low in product(range(self.p), repeat=degree):
            yield Poly(self.p, tuple(reversed(low)) + (1,))

    def primes(self):
        # monic irreducibles by increasing degree; a monic survives when no
        # irreducible of at most half its degree divides it
        i = 0
        while True:
            while i >= len(self._irreducibles):
                self._extend_irreducibles()
            yield self._irreducibles[i]
            i += 1

    def _extend_irreducibles(self):
        self._sieved_degree += 1
        d = self._sieved_degree
        found = self._irreducibles
        small = [q for q in found if 2 * q.degree <= d]
        for f in self.monics(d):
            if all(self.divide_exact(f, q) is None for q in small):
                found.append(f)

    def _prime_too_large(self, p, rest):
        return 2 * p.degree > rest.degree

    def sort_key(self, x):
        return x.index()

    def parse(self, text):
        parts = text.split()
        if not parts:
            raise ValueError("empty polynomial literal")
        try:
            return Poly(self.p, [int(t) for t in parts])
        except ValueError:
            raise ValueError(f"not a coefficient list: {text!r}") from None

    def format(self, x):
        return " ".join(str(c) for c in x.coeffs) if x.coeffs else "0"


ZZ = IntegerRing()


def ring_from_spec(kind: str, characteristic: int | None = None) -> Ring:
    """Build a ring from the CLI spelling: ``z`` or ``fp`` plus a prime characteristic."""
    kind = kind.lower()
    if kind in ("z", "integers", "int"):
        if characteristic is not None:
            raise ValueError("--char only applies to polynomial rings")
        return ZZ
    if kind in ("fp", "poly-mod-p", "poly"):
        if characteristic is None:
            raise ValueError("polynomial ring needs a characteristic")
        return PolynomialRing(characteristic)
    raise ValueError(f"unknown ring kind {kind!r}")

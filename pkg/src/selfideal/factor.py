"""Factorizations into irreducibles: one constructive witness, or all of them.

Everything is done on canonical forms.  For a target ``(p^n, b)`` with
``b`` reduced mod ``p^n`` a multiset of canonical atoms ``(p^l_i, r_i)``
multiplies to ``(p^n, sum_i p^(n - l_i) r_i)``, so it is a factorization
exactly when that sum is congruent to ``b`` mod ``p^n``.
"""

from __future__ import annotations

import math
from collections import Counter, defaultdict
from dataclasses import dataclass
from itertools import combinations_with_replacement, product as cartesian

from .element import (
    SIElement,
    associating_unit,
    canonicalize,
    classify_irreducible,
    embed,
    is_unit,
    product,
)
from .ring import DomainError, Ring


@dataclass(frozen=True)
class Factorization:
    target: SIElement
    factors: tuple  # canonical atoms, sorted by sort_key

    @classmethod
    def of(cls, target: SIElement, factors) -> Factorization:
        return cls(target, tuple(sorted(factors, key=SIElement.sort_key)))

    @property
    def length(self) -> int:
        return len(self.factors)

    def __len__(self):
        return len(self.factors)

    def counter(self) -> Counter:
        return Counter(self.factors)

    def product(self) -> SIElement:
        return product(self.factors, self.target.ring)

    def exact_factors(self) -> tuple:
        """Factors whose product is exactly the target.

        The associating unit is absorbed into the zero-divisor factor if
        there is one, otherwise into the first factor.
        """
        theta = associating_unit(self.product(), self.target)
        if theta is None:
            raise DomainError("factor product is not associated to the target")
        fs = list(self.factors)
        fs[0] = theta * fs[0]
        return tuple(fs)

    def sort_key(self):
        return tuple(f.sort_key() for f in self.factors)

    def to_json(self) -> dict:
        return {
            "target": self.target.to_json(),
            "factors": [f.to_json() for f in self.factors],
            "length": self.length,
        }


@dataclass(frozen=True)
class FactorizationPattern:
    """Part sizes ``l`` with multiplicities, and the residue attached to each part."""

    parts: tuple  # ((l, m_l), ...) by descending l
    residues: tuple  # ((l, r), ...) one per factor

    @property
    def total(self) -> int:
        return sum(l * m for l, m in self.parts)


def pattern_of(fz: Factorization, p) -> FactorizationPattern:
    """Read the part/residue pattern off a factorization with norm a power of ``p``."""
    R = fz.target.ring
    sizes = []
    for f in fz.factors:
        l = R.valuation(p, f.a)
        sizes.append((l, f.b))
    mult = Counter(l for l, _ in sizes)
    return FactorizationPattern(
        tuple(sorted(mult.items(), reverse=True)),
        tuple(sorted(sizes, key=lambda lr: (-lr[0], R.sort_key(lr[1])))),
    )


def _require_nonzero_nonunit(x: SIElement):
    if x.is_zero:
        raise DomainError("zero has no factorization into irreducibles")
    if is_unit(x):
        raise DomainError(f"({x}) is a unit")


def coprime_split(x: SIElement, c, d) -> tuple[SIElement, SIElement]:
    """Split regular ``x`` with norm ``c*d`` (``c``, ``d`` coprime) as ``(c, e) * (d, f)``."""
    R = x.ring
    if R.is_zero(x.a):
        raise DomainError("coprime_split needs a regular element")
    if c * d != x.a:
        raise DomainError("norm of x is not c*d")
    cert = R.gcd_ext(c, d)
    if not R.is_unit(cert.g):
        raise DomainError("c and d are not coprime")
    # b = c*f + e*d from 1 = s*c + t*d
    ginv = R.unit_inverse(cert.g)
    f = x.b * cert.s * ginv
    e = x.b * cert.t * ginv
    return SIElement(c, e, R), SIElement(d, f, R)


def prime_power_decompose(x: SIElement) -> list[SIElement]:
    """Factors of pairwise coprime prime-power norm whose product is exactly ``x``.

    Components follow the order of the primes of the norm; the unit of the
    norm stays with the last component.
    """
    R = x.ring
    if R.is_zero(x.a):
        raise DomainError("zero divisors have no prime power decomposition")
    if R.is_unit(x.a):
        raise DomainError(f"({x}) is a unit")
    fac = R.factor(x.a)
    out = []
    cur = x
    for p, e in fac.factors[:-1]:
        c = R.power(p, e)
        gamma, cur = coprime_split(cur, c, R.divide_exact(cur.a, c))
        out.append(gamma)
    out.append(cur)
    return out


def factor_irreducibles(x: SIElement) -> Factorization:
    """One factorization into irreducibles, built from the prime factorizations in D."""
    _require_nonzero_nonunit(x)
    R = x.ring
    factors = []
    if R.is_zero(x.a):
        factors.append(SIElement(R.zero, R.one, R))
        for p, e in R.factor(x.b).factors:
            factors.extend([embed(p, R)] * e)
        return Factorization.of(x, factors)
    c = R.gcd(x.a, x.b)
    for p, e in R.factor(c).factors:
        factors.extend([embed(p, R)] * e)
    rest = SIElement(R.divide_exact(x.a, c), R.divide_exact(x.b, c), R)
    if not R.is_unit(rest.a):
        # norm and b of rest are coprime, so every component is an atom
        factors.extend(prime_power_decompose(rest))
    return Factorization.of(x, [canonicalize(f) for f in factors])


def partitions(n: int, largest: int | None = None):
    """Partitions of ``n`` as descending tuples, in descending lexicographic order."""
    if largest is None:
        largest = n
    if n == 0:
        yield ()
        return
    for first in range(min(n, largest), 0, -1):
        for rest in partitions(n - first, first):
            yield (first,) + rest


class _LocalAtoms:
    """Canonical atoms ``(p^l, r)`` for one canonical prime ``p``, cached by ``l``."""

    def __init__(self, R: Ring, p):
        self.R = R
        self.p = p
        self._pow = [R.one]
        self._adm = {}

    def power(self, l: int):
        while len(self._pow) <= l:
            self._pow.append(self._pow[-1] * self.p)
        return self._pow[l]

    def admissible(self, l: int) -> list:
        """Residues mod ``p^l`` that make ``(p^l, r)`` an atom, in residue order."""
        if l not in self._adm:
            R, p = self.R, self.p
            rs = R.residues(self.power(l))
            if l >= 2:
                rs = [r for r in rs if not R.divides(p, r)]
            self._adm[l] = rs
        return self._adm[l]

    def atom(self, l: int, r) -> SIElement:
        return SIElement(self.power(l), r, self.R)


def _local_solutions(atoms: _LocalAtoms, n: int, b):
    """Yield every factorization of canonical ``(p^n, b)`` as a tuple of (l, r) pairs.

    All but the largest part are chosen freely (non-decreasing residue index
    within equal part sizes); the last residue is solved from the congruence.
    """
    R = atoms.R
    modulus = atoms.power(n)
    for parts in partitions(n):
        ls = parts[::-1]  # ascending, so the largest part is solved
        t = len(ls)
        last = ls[-1]
        last_shift = atoms.power(n - last)
        last_mod = atoms.power(last)
        last_adm = atoms.admissible(last)
        last_index = {R.sort_key(r): i for i, r in enumerate(last_adm)}

        def rec(i, start, acc, chosen):
            l = ls[i]
            if i == t - 1:
                rem = R.reduce_mod(b - acc, modulus)
                q = R.divide_exact(rem, last_shift)
                if q is None:
                    return
                r = R.reduce_mod(q, last_mod)
                idx = last_index.get(R.sort_key(r))
                if idx is None:
                    return
                if t >= 2 and ls[i - 1] == l and idx < start:
                    return
                yield chosen + ((l, r),)
                return
            adm = atoms.admissible(l)
            shift = atoms.power(n - l)
            for j in range(start, len(adm)):
                r = adm[j]
                nxt = j if ls[i + 1] == l else 0
                yield from rec(i + 1, nxt, acc + shift * r, chosen + ((l, r),))

        yield from rec(0, 0, R.zero, ())


def _canonical_prime_power(x: SIElement):
    """For regular ``x`` with prime power norm: ``(p, n, canonical x)``."""
    R = x.ring
    fac = R.factor(x.a)
    (p, n), = fac.factors
    return p, n, canonicalize(x)


def _local_factorizations(x: SIElement) -> list[tuple]:
    p, n, xc = _canonical_prime_power(x)
    atoms = _LocalAtoms(x.ring, p)
    return [tuple(atoms.atom(l, r) for l, r in sol) for sol in _local_solutions(atoms, n, xc.b)]


def _zero_divisor_local(R: Ring, p, e: int) -> list[tuple]:
    """Atom multisets for one prime power ``p^e`` dividing the b-part of a zero divisor."""
    atoms = _LocalAtoms(R, p)
    out = []
    for parts in partitions(e):
        mult = Counter(parts)
        groups = [
            [tuple(atoms.atom(l, r) for r in combo) for combo in combinations_with_replacement(atoms.admissible(l), m)]
            for l, m in sorted(mult.items())
        ]
        for pick in cartesian(*groups):
            out.append(tuple(f for g in pick for f in g))
    return out


def _component_lists(x: SIElement) -> list[list[tuple]]:
    R = x.ring
    if R.is_zero(x.a):
        prime = SIElement(R.zero, R.one, R)
        comps = [[(prime,)]]
        for p, e in R.factor(x.b).factors:
            comps.append(_zero_divisor_local(R, p, e))
        return comps
    return [_local_factorizations(c) for c in prime_power_decompose(x)]


def enumerate_factorizations(x: SIElement) -> list[Factorization]:
    """All factorizations of ``x`` up to order and associates, canonically sorted."""
    _require_nonzero_nonunit(x)
    comps = _component_lists(x)
    out = [Factorization.of(x, [f for part in pick for f in part]) for pick in cartesian(*comps)]
    out.sort(key=Factorization.sort_key)
    return out


def count_factorizations(x: SIElement) -> int:
    """Number of factorizations, without building the cross product of components."""
    _require_nonzero_nonunit(x)
    R = x.ring
    if R.is_zero(x.a):
        total = 1
        for p, e in R.factor(x.b).factors:
            atoms = _LocalAtoms(R, p)
            local = 0
            for parts in partitions(e):
                term = 1
                for l, m in Counter(parts).items():
                    term *= math.comb(len(atoms.admissible(l)) + m - 1, m)
                local += term
            total *= local
        return total
    total = 1
    for comp in prime_power_decompose(x):
        p, n, xc = _canonical_prime_power(comp)
        atoms = _LocalAtoms(R, p)
        total *= sum(1 for _ in _local_solutions(atoms, n, xc.b))
    return total


def prime_power_table(R: Ring, p, n: int) -> dict:
    """Factorizations of every canonical ``(p^n, b)`` at once, keyed by ``b``.

    Every atom multiset of total exponent ``n`` is generated once and filed
    under the residue of its product, which makes whole-residue sweeps cheap.
    Serves as an independent route to :func:`enumerate_factorizations`.
    """
    atoms = _LocalAtoms(R, p)
    modulus = atoms.power(n)
    table = defaultdict(list)
    for parts in partitions(n):
        mult = sorted(Counter(parts).items())
        groups = [list(combinations_with_replacement(atoms.admissible(l), m)) for l, m in mult]
        for pick in cartesian(*groups):
            acc = R.zero
            factors = []
            for (l, _), combo in zip(mult, pick):
                shift = atoms.power(n - l)
                for r in combo:
                    acc = acc + shift * r
                    factors.append(atoms.atom(l, r))
            table[R.reduce_mod(acc, modulus)].append(tuple(factors))
    return {b: [Factorization.of(SIElement(modulus, b, R), fs) for fs in v] for b, v in table.items()}


def infinite_family(R: Ring, p, a) -> tuple[SIElement, SIElement]:
    """``(p, a)`` and ``(p, -a)``: their product is ``(p^2, 0)`` for every ``a``.

    When D/pD is infinite this yields infinitely many pairwise non-associated
    factorizations of ``(p^2, 0)``; nothing is enumerated in that case.
    """
    return SIElement(p, a, R), SIElement(p, -a, R)


def is_valid_factorization(fz: Factorization) -> bool:
    return all(
        classify_irreducible(f) is not None and canonicalize(f) == f for f in fz.factors
    ) and associating_unit(fz.product(), fz.target) is not None

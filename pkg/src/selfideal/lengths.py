"""Sets of lengths, their derived invariants, and the family they belong to."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from collections import Counter
from itertools import combinations

from networkx.utils import UnionFind

from .element import SIElement, embed, is_unit, local_profile, product
from .factor import Factorization, enumerate_factorizations, partitions, prime_power_decompose
from .ring import INF, ZZ, DomainError, PolynomialRing, Ring

LengthSet = frozenset


def _check_nonzero(x: SIElement):
    if x.is_zero:
        raise DomainError("the zero element has no set of lengths")


def _check_nonzero_nonunit(x: SIElement):
    _check_nonzero(x)
    if is_unit(x):
        raise DomainError(f"({x}) is a unit")


def sumset(A, B) -> frozenset:
    return frozenset(a + b for a in A for b in B)


def local_length_set(n: int, k, field_size: int = 3) -> frozenset:
    """Lengths of ``(p^n, b)`` with ``val_p(b) = k`` (``k`` may be INF).

    ``field_size`` is ``|D/pD|``.  Residue fields with two elements behave
    differently: two units always sum to a multiple of ``p`` there, which
    removes some lengths (see :func:`binary_local_length_set`).
    """
    if n < 1:
        raise ValueError("n must be positive")
    if k == 0 or n == 1:
        return frozenset({1})
    if field_size == 2:
        return binary_local_length_set(n, k)
    high = k >= n - 1
    top = n - 2 if high else k + 1
    out = set(range(3, top + 1))
    if n % 2 == 0 or 2 * k < n:
        out.add(2)
    if high:
        out.add(n)
    return frozenset(out)


def binary_local_length_set(n: int, k) -> frozenset:
    """Local lengths when ``|D/pD| = 2`` (p = 2 over Z, p = x or x + 1 over F_2[x]).

    Length 2 needs ``2k < n`` or ``n`` even with ``2k > n``; ``k = n/2`` is
    excluded.  Near the top the set thins out to ``[lo, n-3] + {n-1}`` for
    ``k = n - 2`` and ``[lo, n-4] + {n-2, n}`` for ``k >= n - 1``.  The
    single irregular case is ``(n, k) = (8, 5)``, where 3 is missing.
    """
    if k == 0 or n == 1:
        return frozenset({1})
    lo = 2 if (2 * k < n or (n % 2 == 0 and 2 * k > n)) else 3
    if k <= n - 3:
        out = set(range(lo, k + 2))
        if (n, k) == (8, 5):
            out.discard(3)
    elif k == n - 2:
        out = set(range(lo, n - 2)) | {n - 1}
    else:
        out = set(range(lo, n - 3)) | {n - 2, n}
    return frozenset(v for v in out if v >= 2)


def partition_length_set(n: int, k, field_size: int) -> frozenset:
    """Local lengths derived pattern by pattern, without touching residues.

    A part size ``l`` used ``m`` times contributes ``p^(n-l)`` times a sum of
    ``m`` atoms' residues.  For ``l >= 2`` that sum is a unit when it is
    forced (``m = 1``, or ``m`` odd over a two-element residue field) and
    otherwise ranges over all of ``p^e D`` (``e = 0``, or ``e = 1`` over a
    two-element field).  Parts of size 1 range over ``p^(n-1) D``.  The
    valuations reachable by a pattern follow from comparing the smallest
    forced valuation with the smallest free one.
    """
    lengths = set()
    for parts in partitions(n):
        mult = Counter(parts)
        forced, free = [], []
        for l, m in mult.items():
            if l == 1:
                free.append(n - 1)
            elif field_size == 2:
                (forced if m % 2 else free).append(n - l + (0 if m % 2 else 1))
            else:
                (forced if m == 1 else free).append(n - l)
        f = min(free, default=INF)
        if forced and min(forced) < f:
            ok = k == min(forced)
        else:
            ok = k == INF or k >= f
        if ok:
            lengths.add(len(parts))
    return frozenset(lengths)


def length_set(x: SIElement) -> frozenset:
    _check_nonzero(x)
    R = x.ring
    if is_unit(x):
        return frozenset({0})
    if R.is_zero(x.a):
        f = R.factor(x.b)
        return frozenset(range(1 + len(f.factors), 2 + f.total_exponent))
    out = frozenset({0})
    for comp in prime_power_decompose(x):
        prof = local_profile(comp)
        out = sumset(out, local_length_set(prof.n, prof.k, R.quotient_size(prof.p)))
    return out


def lengths_of(factorizations) -> frozenset:
    return frozenset(fz.length for fz in factorizations)


def length_set_oracle(x: SIElement) -> frozenset:
    """Brute-force lengths: read off the full list of factorizations."""
    return lengths_of(enumerate_factorizations(x))


def deltas(L) -> frozenset:
    s = sorted(L)
    return frozenset(b - a for a, b in zip(s, s[1:]))


def delta_set(x: SIElement) -> frozenset:
    _check_nonzero_nonunit(x)
    return deltas(length_set(x))


def elasticity(x: SIElement) -> Fraction:
    _check_nonzero_nonunit(x)
    L = length_set(x)
    return Fraction(max(L), min(L))


def distance(z1: Factorization, z2: Factorization) -> int:
    if z1.target != z2.target:
        raise DomainError("factorizations of different elements")
    common = sum((z1.counter() & z2.counter()).values())
    return max(z1.length - common, z2.length - common)


def catenary_of(factorizations) -> int:
    """Smallest N joining every pair of factorizations by steps of distance <= N.

    This is the bottleneck of a minimum spanning tree, found Kruskal-style.
    """
    fs = list(factorizations)
    if len(fs) <= 1:
        return 0
    counters = [f.counter() for f in fs]
    lens = [f.length for f in fs]
    edges = []
    for i, j in combinations(range(len(fs)), 2):
        common = sum((counters[i] & counters[j]).values())
        edges.append((max(lens[i] - common, lens[j] - common), i, j))
    edges.sort()
    uf = UnionFind(range(len(fs)))
    components = len(fs)
    for d, i, j in edges:
        if uf[i] != uf[j]:
            uf.union(i, j)
            components -= 1
            if components == 1:
                return d
    raise AssertionError("complete graph must connect")


def catenary_degree(x: SIElement) -> int:
    _check_nonzero_nonunit(x)
    return catenary_of(enumerate_factorizations(x))


# --- system of sets of lengths -------------------------------------------------


@dataclass(frozen=True)
class FamilyDescriptor:
    """One clause of the description of all sets of lengths.

    ``interval``: [m, n]; ``interval_plus_two``: [m, n] plus n+2;
    ``progression``: m, m+2, ..., m+2n.
    """

    clause: str
    m: int = 0
    n: int = 0

    def members(self) -> frozenset:
        if self.clause == "singleton0":
            return frozenset({0})
        if self.clause == "singleton1":
            return frozenset({1})
        if self.clause == "interval":
            return frozenset(range(self.m, self.n + 1))
        if self.clause == "interval_plus_two":
            return frozenset(range(self.m, self.n + 1)) | {self.n + 2}
        if self.clause == "progression":
            return frozenset(range(self.m, self.m + 2 * self.n + 1, 2))
        raise ValueError(f"unknown clause {self.clause!r}")

    def is_valid(self) -> bool:
        c, m, n = self.clause, self.m, self.n
        if c in ("singleton0", "singleton1"):
            return True
        if c == "interval":
            return 2 <= m <= n
        if c == "interval_plus_two":
            return (n % 2 == 0 and 2 <= m <= n) or (n % 2 == 1 and 3 <= m <= n)
        if c == "progression":
            return n >= 1 and m >= 2 * n
        return False

    def to_json(self) -> dict:
        return {"clause": self.clause, "m": self.m, "n": self.n}

    @classmethod
    def from_json(cls, obj: dict) -> FamilyDescriptor:
        clause = obj["clause"]
        m, n = obj.get("m", 0), obj.get("n", 0)
        if not isinstance(clause, str) or not isinstance(m, int) or not isinstance(n, int):
            raise ValueError("descriptor needs a string clause and integer m, n")
        if clause not in CLAUSES:
            raise ValueError(f"unknown clause {clause!r}")
        return cls(clause, m, n)


CLAUSES = ("singleton0", "singleton1", "interval", "interval_plus_two", "progression")


def family_classify(L) -> FamilyDescriptor | None:
    """The first matching clause (in ``CLAUSES`` order) for the set ``L``, if any."""
    s = sorted(L)
    if not s:
        return None
    if s == [0]:
        return FamilyDescriptor("singleton0")
    if s == [1]:
        return FamilyDescriptor("singleton1")
    lo, hi = s[0], s[-1]
    candidates = [FamilyDescriptor("interval", lo, hi)]
    if len(s) >= 2 and s[-2] == hi - 2:
        candidates.append(FamilyDescriptor("interval_plus_two", lo, hi - 2))
    if (hi - lo) % 2 == 0:
        candidates.append(FamilyDescriptor("progression", lo, (hi - lo) // 2))
    target = frozenset(s)
    for f in candidates:
        if f.is_valid() and f.members() == target:
            return f
    return None


class UnrealizableError(DomainError):
    pass


def _pick_primes(R: Ring, count: int, skip_binary: bool = False, avoid=()) -> list:
    out = []
    for p in R.primes():
        if len(out) == count:
            break
        if (skip_binary and R.quotient_size(p) == 2) or p in avoid:
            continue
        out.append(p)
    return out


def _interval_from_two(t: int) -> tuple[int, int]:
    """``(n, k)`` with local lengths exactly [2, t] (t >= 2) when ``|D/pD| >= 3``."""
    k = t - 1
    n = t + 1
    if not (n % 2 == 0 or 2 * k < n):
        n += 1
    return n, k


def witness_for(f: FamilyDescriptor, ring: Ring = ZZ, prime_budget: int = 64) -> SIElement:
    """An element whose set of lengths is exactly ``f.members()``.

    Built as a product over distinct primes of prime-power blocks with the
    right shape and ``s`` extra atoms ``(q, 0)``, each atom shifting the set
    by 1.  The ring's smallest primes are tried first; if the result is off
    (blocks over a two-element residue field lose lengths), the blocks move
    to primes with larger residue fields.  Plus-two sets of odd width only
    come from a block over a two-element residue field; rings without such a
    prime reject them.
    """
    if not f.is_valid():
        raise UnrealizableError(f"invalid descriptor {f}")
    R = ring
    c, m, n = f.clause, f.m, f.n
    if c == "singleton0":
        return SIElement(R.one, R.zero, R)
    if c == "singleton1":
        blocks, shift = [], 1
    elif c == "interval":
        blocks, shift = [_interval_from_two(n - m + 2)], m - 2
    elif c == "interval_plus_two":
        lo = 2 if n % 2 == 0 else 3
        shift = m - lo
        blocks = [(n - shift + 2, None)]
    else:
        blocks, shift = [(4, None)] * n, m - 2 * n
    if len(blocks) + shift > prime_budget:
        raise UnrealizableError(f"needs {len(blocks) + shift} distinct primes, budget is {prime_budget}")
    target = f.members()
    for skip_binary in (False, True):
        block_primes = _pick_primes(R, len(blocks), skip_binary)
        rest = _pick_primes(R, shift, avoid=block_primes)
        parts = []
        for (e, k), p in zip(blocks, block_primes):
            b = R.zero if k is None else R.power(p, k)
            parts.append(SIElement(R.power(p, e), b, R))
        parts.extend(embed(q, R) for q in rest)
        x = product(parts, R)
        if length_set(x) == target:
            return x
    x = _binary_witness(R, target, prime_budget)
    if x is None:
        raise UnrealizableError(f"{sorted(target)} is not a set of lengths over {R.name}")
    return x


def _binary_witness(R: Ring, target: frozenset, prime_budget: int) -> SIElement | None:
    """One block over a two-element residue field, shifted by atoms, if that hits ``target``."""
    if binary_prime_count(R) == 0:
        return None
    p = next(q for q in R.primes() if R.quotient_size(q) == 2)
    top = max(target)
    for shift in range(0, min(target) - 1):
        want = frozenset(v - shift for v in target)
        for n in range(2, top + 3):
            for k in range(1, n):
                if binary_local_length_set(n, k) == want and shift + 1 <= prime_budget:
                    parts = [SIElement(R.power(p, n), R.power(p, k), R)]
                    parts.extend(embed(q, R) for q in _pick_primes(R, shift, avoid=[p]))
                    return product(parts, R)
    return None


def binary_prime_count(R: Ring) -> int:
    """How many pairwise non-associated primes ``p`` have ``|D/pD| = 2``."""
    if isinstance(R, PolynomialRing):
        return 2 if R.p == 2 else 0
    return 1


def realizable_sets(bound: int, ring: Ring = ZZ) -> set[frozenset]:
    """Sets of lengths of nonzero elements of R(D), cut to [0, bound].

    Regular elements give sumsets of local blocks (exponent <= bound), one
    block per prime; primes with a two-element residue field are limited to
    the number the ring actually has.  Zero divisors give the intervals
    [m, M] with 2 <= m <= M.  Truncation is exact below ``bound`` because
    every block has minimum >= 1.
    """
    window = range(bound + 1)

    def cut(s):
        return frozenset(v for v in s if v in window)

    exps = [(n, k) for n in range(1, bound + 1) for k in [*range(0, n), INF]]
    wide = {cut(local_length_set(n, k)) for n, k in exps} - {frozenset()}
    binary = {cut(local_length_set(n, k, 2)) for n, k in exps} - {frozenset()}
    spare = binary_prime_count(ring)

    states = {(frozenset({0}), 0)}
    frontier = set(states)
    while frontier:
        new = set()
        for s, used in frontier:
            moves = [(blk, used) for blk in wide]
            if used < spare:
                moves += [(blk, used + 1) for blk in binary]
            for blk, u in moves:
                t = cut(sumset(s, blk))
                if t and (t, u) not in states:
                    new.add((t, u))
        states |= new
        frontier = new
    sets = {s for s, _ in states}
    for lo in range(2, bound + 1):
        for hi in range(lo, bound + 1):
            sets.add(frozenset(range(lo, hi + 1)))
    return sets


def union_lengths(k: int, bound: int, ring: Ring = ZZ) -> frozenset:
    """Union of the sets of lengths containing ``k``, restricted to [0, bound].

    A lower approximation of the true union, exact on the window once every
    contributing element has prime-power exponents at most ``bound``.
    """
    if k < 2:
        raise DomainError("k must be at least 2")
    if k > bound:
        return frozenset()
    out = set()
    for s in realizable_sets(bound, ring):
        if k in s:
            out |= s
    return frozenset(out)

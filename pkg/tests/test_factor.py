import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from selfideal.element import SIElement, canonicalize, is_associate
from selfideal.factor import (
    Factorization,
    coprime_split,
    count_factorizations,
    enumerate_factorizations,
    factor_irreducibles,
    infinite_family,
    is_valid_factorization,
    partitions,
    prime_power_decompose,
    prime_power_table,
)
from selfideal.ring import ZZ, DomainError, PolynomialRing

import oracles

F2 = PolynomialRing(2)
F3 = PolynomialRing(3)


def E(a, b):
    return SIElement(a, b)


def as_tuples(fz: Factorization):
    return tuple(sorted((f.a, f.b) for f in fz.factors))


def brute(x):
    return oracles.factorizations((x.a, x.b))


# --- examples ----------------------------------------------------------------


def test_coprime_split_examples():
    g, d = coprime_split(E(6, 1), 2, 3)
    assert g.a == 2 and d.a == 3 and g * d == E(6, 1)
    g, d = coprime_split(E(35, 0), 5, 7)
    assert (g, d) == (E(5, 0), E(7, 0))
    g, d = coprime_split(E(6, 1), 1, 6)
    assert g.a == 1 and g * d == E(6, 1)


def test_coprime_split_needs_coprime_factors():
    with pytest.raises(DomainError):
        coprime_split(E(12, 1), 2, 6)


def test_prime_power_decompose_examples():
    parts = prime_power_decompose(E(12, 1))
    assert [p.a for p in parts] == [4, 3]
    assert parts[0] * parts[1] == E(12, 1)
    assert prime_power_decompose(E(8, 5)) == [E(8, 5)]
    assert prime_power_decompose(E(6, 0)) == [E(2, 0), E(3, 0)]


def test_factor_irreducibles_examples():
    fz = factor_irreducibles(E(0, 12))
    assert as_tuples(fz) == ((0, 1), (2, 0), (2, 0), (3, 0))
    fz = factor_irreducibles(E(12, 2))
    assert fz.length == 3
    assert sorted(f.a for f in fz.factors) == [2, 2, 3]
    assert is_associate(fz.product(), E(12, 2))
    assert as_tuples(factor_irreducibles(E(8, 3))) == ((8, 3),)


def test_factor_rejects_zero_and_units():
    for x in (E(0, 0), E(1, 4), E(-1, 0)):
        with pytest.raises(DomainError):
            factor_irreducibles(x)
        with pytest.raises(DomainError):
            enumerate_factorizations(x)


def test_enumerate_examples():
    fs = enumerate_factorizations(E(4, 0))
    assert {as_tuples(f) for f in fs} == {((2, 0), (2, 0)), ((2, 1), (2, 1))}
    fs = enumerate_factorizations(E(0, 4))
    assert len(fs) == 5
    assert {as_tuples(f) for f in fs} == brute(E(0, 4))
    for b in range(-7, 8):
        fs = enumerate_factorizations(E(7, b))
        assert [as_tuples(f) for f in fs] == [((7, b % 7),)]


def test_count_examples():
    assert count_factorizations(E(4, 0)) == 2
    assert count_factorizations(E(8, 3)) == 1
    assert count_factorizations(E(0, 1)) == 1
    assert count_factorizations(E(0, 12)) == 15


def test_partitions_order():
    assert list(partitions(4)) == [(4,), (3, 1), (2, 2), (2, 1, 1), (1, 1, 1, 1)]
    assert [len(list(partitions(n))) for n in range(1, 9)] == [1, 2, 3, 5, 7, 11, 15, 22]


def test_enumeration_is_sorted_and_deterministic():
    x = E(48, 4)
    a = enumerate_factorizations(x)
    assert a == enumerate_factorizations(x)
    assert [f.sort_key() for f in a] == sorted(f.sort_key() for f in a)


def test_exact_factors_multiply_to_target():
    for x in (E(0, -12), E(12, 7), E(-16, 3), E(0, 8), E(-90, 1)):
        for fz in enumerate_factorizations(x):
            ef = fz.exact_factors()
            prod = E(1, 0)
            for f in ef:
                prod = prod * f
            assert prod == x
            if x.a == 0:
                # the adjustment lands on the zero-divisor factor
                assert ef[0].a == 0 and ef[1:] == fz.factors[1:]


def test_json_shape():
    fz = factor_irreducibles(E(0, 12))
    js = fz.to_json()
    assert js["target"] == {"a": "0", "b": "12"}
    assert js["length"] == 4
    assert js["factors"][0] == {"a": "0", "b": "1"}


def test_infinite_family_symbolic():
    for a in range(-5, 6):
        x, y = infinite_family(ZZ, 7, a)
        assert x * y == E(49, 0)


# --- oracle comparisons ------------------------------------------------------


SMALL_REGULAR = [(a, b) for a in (4, 8, 9, 12, 16, 18, 24, 27, 32, 36) for b in range(a)]
SMALL_ZD = [(0, b) for b in (2, 4, 6, 8, 9, 12, 16, 18, 24, 30, 36)]


@pytest.mark.parametrize("x", SMALL_REGULAR + SMALL_ZD)
def test_enumeration_matches_brute_force(x):
    fs = enumerate_factorizations(E(*x))
    got = [as_tuples(f) for f in fs]
    assert len(got) == len(set(got)), "duplicates in enumeration"
    assert set(got) == oracles.factorizations(x)
    assert count_factorizations(E(*x)) == len(got)


@pytest.mark.parametrize("x", SMALL_REGULAR[::7] + SMALL_ZD)
def test_factorizations_are_valid(x):
    for fz in enumerate_factorizations(E(*x)):
        assert is_valid_factorization(fz)


@pytest.mark.parametrize(
    "R,p,n",
    [(ZZ, 2, 6), (ZZ, 3, 4), (ZZ, 5, 3), (F2, F2(0, 1), 5), (F3, F3(0, 1), 3), (F2, F2(1, 1, 1), 2)],
    ids=str,
)
def test_table_matches_per_element(R, p, n):
    table = prime_power_table(R, p, n)
    mod = R.power(p, n)
    for b in R.residues(mod):
        x = SIElement(mod, b, R)
        if R.valuation(p, b) == 0 or n == 1:
            assert len(table[b]) == 1
            continue
        per = enumerate_factorizations(x)
        assert sorted(f.sort_key() for f in table.get(b, [])) == [f.sort_key() for f in per]
        assert count_factorizations(x) == len(per)


@pytest.mark.parametrize("R", [F2, F3], ids=lambda R: R.name)
def test_zero_divisor_counts_match_enumeration(R):
    for b in [R(0, 0, 1), R(0, 1, 1), R(1, 0, 1, 1), R(0, 0, 0, 1)]:
        x = SIElement(R.zero, b, R)
        assert count_factorizations(x) == len(enumerate_factorizations(x))


# --- properties --------------------------------------------------------------


nonunit = st.builds(
    SIElement,
    st.integers(-400, 400).filter(lambda a: abs(a) != 1),
    st.integers(-400, 400),
).filter(lambda x: not x.is_zero)


@settings(max_examples=150, deadline=None)
@given(nonunit)
def test_factor_irreducibles_is_a_factorization(x):
    fz = factor_irreducibles(x)
    assert is_valid_factorization(fz)
    assert all(canonicalize(f) == f for f in fz.factors)
    assert is_associate(fz.product(), x)


@settings(max_examples=60, deadline=None)
@given(st.integers(-200, 200).filter(lambda a: abs(a) > 1), st.integers(-200, 200))
def test_witness_is_among_enumerated(a, b):
    x = E(a, b)
    fz = factor_irreducibles(x)
    assert fz.sort_key() in {f.sort_key() for f in enumerate_factorizations(x)}


@settings(max_examples=60, deadline=None)
@given(
    st.integers(2, 30), st.integers(-30, 30), st.integers(2, 30), st.integers(-30, 30)
)
def test_concatenation_is_a_factorization_of_product(a, b, c, d):
    x, y = E(a, b), E(c, d)
    xy = x * y
    fx, fy = factor_irreducibles(x), factor_irreducibles(y)
    joined = Factorization.of(xy, fx.factors + fy.factors)
    assert is_valid_factorization(joined)
    assert joined.sort_key() in {f.sort_key() for f in enumerate_factorizations(xy)}


@settings(max_examples=80, deadline=None)
@given(st.integers(-3000, 3000).filter(lambda a: abs(a) > 1), st.integers(-3000, 3000))
def test_length_bounded_by_prime_count(a, b):
    # each atom contributes at least one prime to the norm
    omega = sum(e for _, e in oracles.factor_int(a))
    for fz in enumerate_factorizations(E(a, b)):
        assert fz.length <= omega

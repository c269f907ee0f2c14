"""Factorization theory of the self-idealization R(D) of a principal ideal domain D."""

from .element import (
    Classification,
    IrreducibleKind,
    LocalProfile,
    SIElement,
    canonicalize,
    classify,
    classify_irreducible,
    divides,
    is_associate,
    is_prime,
    local_profile,
    parse_element,
)
from .factor import (
    Factorization,
    coprime_split,
    count_factorizations,
    enumerate_factorizations,
    factor_irreducibles,
    prime_power_decompose,
)
from .lengths import (
    FamilyDescriptor,
    catenary_degree,
    delta_set,
    distance,
    elasticity,
    family_classify,
    length_set,
    length_set_oracle,
    sumset,
    union_lengths,
    witness_for,
)
from .ring import INF, ZZ, DomainError, IntegerRing, PolynomialRing

__version__ = "0.1.0"

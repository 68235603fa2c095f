"""Seeded random polynomials and derivations for identity checking.

Everything takes an explicit random.Random so that identical seeds rebuild
identical samples; coefficients are small rationals to keep the exact
arithmetic in the identity suites fast.
"""

from __future__ import annotations

import random
from fractions import Fraction

from .canonical import Which, generators
from .derivation import Derivation
from .polyring import Monomial, Polynomial


def random_monomial(rng: random.Random, n: int, max_degree: int) -> Monomial:
    exps = [0] * n
    for _ in range(rng.randint(0, max_degree)):
        exps[rng.randrange(n)] += 1
    return tuple(exps)


def random_coefficient(rng: random.Random, bound: int = 9) -> Fraction:
    num = rng.randint(1, bound) * rng.choice((1, -1))
    return Fraction(num, rng.randint(1, bound))


def random_polynomial(rng: random.Random, n: int, max_degree: int,
                      max_terms: int = 4) -> Polynomial:
    terms = {}
    for _ in range(rng.randint(0, max_terms)):
        terms[random_monomial(rng, n, max_degree)] = random_coefficient(rng)
    return Polynomial(n, terms)


def random_nonconstant_polynomial(rng: random.Random, n: int, max_degree: int,
                                  max_terms: int = 4) -> Polynomial:
    while True:
        f = random_polynomial(rng, n, max_degree, max_terms)
        if not f.is_constant():
            return f


def random_derivation(rng: random.Random, n: int, max_degree: int,
                      max_terms: int = 3) -> Derivation:
    return Derivation(
        n, [random_polynomial(rng, n, max_degree, max_terms) for _ in range(n)])


def random_subalgebra_element(rng: random.Random, which: Which, n: int,
                              degree_cap: int, max_terms: int = 4) -> Derivation:
    """Random rational combination of monomial generators of un or sn."""
    gens = generators(which, n, degree_cap)
    out = Derivation.zero(n)
    for _ in range(rng.randint(1, max_terms)):
        out = out + random_coefficient(rng) * rng.choice(gens)
    return out

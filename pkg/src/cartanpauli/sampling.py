"""Seeded random polynomials, forms and vector fields for the verification suites."""

from __future__ import annotations

import random
from fractions import Fraction
from typing import Sequence

from .exact_arith import Polynomial
from .forms import FormVector, VectorField
from .grassmann import basis_from_linear, dimension

COEFFICIENTS = tuple(Fraction(x) for x in ("-2", "-3/2", "-1", "-1/2", "1/3", "1/2", "1", "2", "3"))


def random_polynomial(
    rng: random.Random,
    nvars: int,
    max_degree: int = 3,
    max_terms: int = 4,
    min_degree: int = 0,
    coefficients: Sequence[Fraction] = COEFFICIENTS,
) -> Polynomial:
    """A nonzero polynomial with up to ``max_terms`` monomials of degree in ``[min_degree, max_degree]``."""
    terms = {}
    for _ in range(rng.randint(1, max_terms)):
        deg = rng.randint(min_degree, max_degree)
        exps = [0] * nvars
        for _ in range(deg):
            exps[rng.randrange(nvars)] += 1
        terms[tuple(exps)] = rng.choice(coefficients)
    return Polynomial(nvars, terms)


def random_hamiltonian(rng: random.Random, n: int, max_degree: int = 3) -> Polynomial:
    """A random Hamiltonian with at least one term of degree >= 2 (so its flow is non-trivial)."""
    while True:
        h = random_polynomial(rng, 2 * n, max_degree=max_degree, max_terms=4) + random_polynomial(
            rng, 2 * n, max_degree=max_degree, max_terms=1, min_degree=min(2, max_degree)
        )
        if h.degree() >= 2:
            return h


def random_form(rng: random.Random, n: int, degree: int | None = None, max_degree: int = 3) -> FormVector:
    """Random form; homogeneous of the given form degree when ``degree`` is set.

    At least one component of the requested degree is nonzero.
    """
    nvars = 2 * n
    slots = [i for i in range(dimension(n)) if degree is None or len(basis_from_linear(i, n).subset) == degree]
    comps = [Polynomial.zero(nvars) for _ in range(dimension(n))]
    chosen = [i for i in slots if rng.random() < 0.6] or [rng.choice(slots)]
    for i in chosen:
        comps[i] = random_polynomial(rng, nvars, max_degree=max_degree, max_terms=3)
    return FormVector(n, comps)


def random_vector_field(rng: random.Random, n: int, max_degree: int = 2) -> VectorField:
    return VectorField(tuple(random_polynomial(rng, 2 * n, max_degree=max_degree, max_terms=3) for _ in range(2 * n)))

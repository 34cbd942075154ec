from __future__ import annotations

from fractions import Fraction

from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from cartanpauli.exact_arith import GaussianRational, Polynomial

settings.register_profile("default", max_examples=60, deadline=None, suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")

small_fractions = st.fractions(min_value=-5, max_value=5, max_denominator=6)
gaussians = st.builds(GaussianRational, small_fractions, small_fractions)
real_gaussians = st.builds(GaussianRational, small_fractions)


def polynomials(nvars: int = 2, max_degree: int = 3, max_terms: int = 4, coeffs=gaussians):
    # each draw picks a variable to raise, or nvars for "none"; total degree stays <= max_degree
    exps = st.lists(st.integers(0, nvars), min_size=max_degree, max_size=max_degree).map(
        lambda picks: tuple(picks.count(k) for k in range(nvars))
    )
    return st.dictionaries(exps, coeffs, max_size=max_terms).map(lambda t: Polynomial(nvars, t))


def P(text: str, nvars: int = 2) -> Polynomial:
    return Polynomial.parse(text, nvars)


def F(x) -> Fraction:
    return Fraction(x)


# one line per acceptance criterion, echoed in the terminal summary so it shows without -s
ACCEPTANCE_LINES: list = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split("criterion ")[1].split(":")[0])):
            terminalreporter.write_line(line)

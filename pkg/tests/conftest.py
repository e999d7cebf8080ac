import pytest

from gnsbound.exponents import GnsProblem, LebesgueExponent


@pytest.fixture
def agmon_problem() -> GnsProblem:
    """||f||_inf <= C ||f'||_2^(1/2) ||f||_2^(1/2) on the line."""
    return GnsProblem(
        d=1,
        s=0.0,
        s1=1.0,
        s2=0.0,
        p=LebesgueExponent(0.0),
        p1=LebesgueExponent(0.5),
        p2=LebesgueExponent(0.5),
    )


@pytest.fixture
def fractional_problem() -> GnsProblem:
    """Half-derivative in L4 against full derivative and plain L2 norms."""
    return GnsProblem(
        d=1,
        s=0.5,
        s1=1.0,
        s2=0.0,
        p=LebesgueExponent(0.25),
        p1=LebesgueExponent(0.5),
        p2=LebesgueExponent(0.5),
    )

from fractions import Fraction

import pytest

from allocore.generators import (
    empty_core_game,
    large_gap_instance,
    steiner_counterexample_instance,
    subsidy_instance,
    tight_approximation_instance,
)


@pytest.fixture
def gap5():
    """c(N) = 0 while k = 5 is stably chargeable."""
    return large_gap_instance(5)


@pytest.fixture
def subsidy5():
    """Optimum 5 attained only with a subsidy of 5 to agent 1."""
    return subsidy_instance(5)


@pytest.fixture
def tight_quarter():
    """Tightness family member with detour weight 1/4."""
    return tight_approximation_instance(Fraction(1, 4))


@pytest.fixture
def steiner():
    """Pair {2,3} costs 2 until agent 1 is used as a Steiner node."""
    return steiner_counterexample_instance()


@pytest.fixture
def unbalanced3():
    """Explicit empty-core game: proper coalitions cost 1, the grand one 2."""
    return empty_core_game()

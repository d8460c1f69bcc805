import pytest

from proxbounds import solve_reference
from proxbounds.instances import random_box, random_lasso


@pytest.fixture(scope="session")
def ref_lasso():
    """Small random l1 instance with an attached high-accuracy reference."""
    problem, x0 = random_lasso(1001, 12)
    solve_reference(problem)
    return problem, x0


@pytest.fixture(scope="session")
def ref_box():
    """Small random box instance with an attached high-accuracy reference."""
    problem, x0 = random_box(1002, 10)
    solve_reference(problem)
    return problem, x0

import pytest

from agents.bound_agent import BoundAgent
from agents.family_agent import FamilyAgent
from agents.kernel_agent import KernelAgent
from agents.moment_agent import MomentAgent
from models.equations import make_system
from models.expansion import make_expansion, mask_of
from utils.settings import Settings

RUNNING_EXAMPLE_TEXT = "n 4\n2 1 2\n-3 2 3\n1 4\n"
SYSTEM_A_TEXT = "maxlin 3 3 1\n1 1 1 2\n1 -1 2 3\n1 1 1 3\n"


@pytest.fixture
def settings():
    return Settings(seed=0, dense_cap=16, float_cap=24, bruteforce_cap=24, convolution_cap=1 << 20)


@pytest.fixture
def moment_agent(settings):
    return MomentAgent(settings)


@pytest.fixture
def bound_agent(settings, moment_agent):
    return BoundAgent(settings, moment_agent)


@pytest.fixture
def family_agent(settings, moment_agent):
    return FamilyAgent(settings, moment_agent)


@pytest.fixture
def kernel_agent(settings):
    return KernelAgent(settings)


@pytest.fixture
def running_example():
    """f = 2 x1 x2 - 3 x2 x3 + x4"""
    return make_expansion(4, [(mask_of([1, 2]), 2), (mask_of([2, 3]), -3), (mask_of([4]), 1)])


@pytest.fixture
def system_a():
    """x1 x2 = 1, x2 x3 = -1, x1 x3 = 1, unit weights, k = 1"""
    return make_system(3, [(mask_of([1, 2]), 1, 1), (mask_of([2, 3]), -1, 1), (mask_of([1, 3]), 1, 1)], 1)

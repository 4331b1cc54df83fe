import random

import numpy as np
import pytest

from quatmod.qalg import QuatAlgebra


@pytest.fixture
def alg():
    return QuatAlgebra(-1, -3)


@pytest.fixture(params=[(-1, -1), (-1, -3), (-2, -5), (-3, -7)], ids=lambda ab: f"B({ab[0]},{ab[1]})")
def any_alg(request):
    return QuatAlgebra(*request.param)


@pytest.fixture
def rng():
    return random.Random(20240611)


@pytest.fixture
def nrng():
    return np.random.default_rng(20240611)

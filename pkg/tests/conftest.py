import random
from fractions import Fraction

import pytest
from hypothesis import HealthCheck, settings

from algint.linalg import SquareMatrix

settings.register_profile("default", deadline=None, max_examples=60,
                          suppress_health_check=[HealthCheck.too_slow])
settings.register_profile("ci", deadline=None, max_examples=25,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")


def rand_fraction(rng: random.Random, bound: int = 9) -> Fraction:
    return Fraction(rng.randint(-bound, bound), rng.randint(1, bound))


def rand_matrix(rng: random.Random, n: int, bound: int = 9) -> SquareMatrix:
    return SquareMatrix([[rand_fraction(rng, bound) for _ in range(n)] for _ in range(n)])


def rand_element(rng: random.Random, alg, bound: int = 9):
    F = alg.field
    if F.kind == "rational":
        return alg.element([rand_fraction(rng, bound) for _ in range(alg.dim)])
    from algint.scalars import Cyclotomic, euler_phi
    k = euler_phi(F.order)
    return alg.element([Cyclotomic(F.order, [rand_fraction(rng, bound) for _ in range(k)])
                        for _ in range(alg.dim)])


@pytest.fixture
def rng():
    return random.Random(20240611)

import random

import pytest


@pytest.fixture
def rng():
    return random.Random(20240817)


def random_coeff(rng, alg, names, deg=2, terms=2):
    """Random Laurent polynomial in the named generators."""
    out = alg.zero
    for _ in range(terms):
        mono = alg.one * rng.choice([1, -1, 2, 3])
        for name in names:
            e = rng.randint(-deg, deg)
            if e:
                mono = mono * alg.gens[name] ** e
        out = out + mono
    return out


def random_scalar(rng, alg, deg=2):
    num = random_coeff(rng, alg, alg.atom_names(), deg, 2)
    den = alg.zero
    while den == alg.zero:
        den = random_coeff(rng, alg, alg.atom_names(), 1, 1)
    return num / den

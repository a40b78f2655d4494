import random

import pytest

from towerdecomp import FormalProduct, TowerBuilder


@pytest.fixture
def tower_li():
    """log x, the logarithmic integral, log log x."""
    b = TowerBuilder(["t1", "t2", "t3"])
    t1 = b.gens[1]
    return b.log(b.x).prim(1 / t1).log(t1).build()


@pytest.fixture
def tower_nested():
    """log x, log(x*t1), log((x+1)(t1+1)t2)."""
    b = TowerBuilder(["t1", "t2", "t3"])
    x, t1, t2 = b.x, b.gens[1], b.gens[2]
    return (
        b.log(x)
        .log(FormalProduct([(x, 1), (t1, 1)]))
        .log(FormalProduct([(x + 1, 1), (t1 + 1, 1), (t2, 1)]))
        .build()
    )


@pytest.fixture
def tower_u():
    """log x, log(x+1), log u1."""
    b = TowerBuilder(["u1", "u2", "u3"])
    x, u1 = b.x, b.gens[1]
    return b.log(x).log(x + 1).log(u1).build()


def random_element(T, rng, max_terms=3, max_exp=2, coeff_range=5):
    """Small random element: sparse numerator over a sparse denominator."""
    gens = list(T.gens)

    def poly(allow_zero):
        out = T.F.zero
        for _ in range(rng.randint(1, max_terms)):
            c = rng.randint(-coeff_range, coeff_range)
            if not c:
                continue
            term = T.F.one * c
            for g in rng.sample(gens, rng.randint(0, min(2, len(gens)))):
                term *= g ** rng.randint(1, max_exp)
            out += term
        if not allow_zero and not out:
            out = T.F.one
        return out

    return poly(True) / poly(False)


def random_log_tower(rng, n):
    """A random validated logarithmic tower with n generators."""
    while True:
        b = TowerBuilder([f"t{i}" for i in range(1, n + 1)])
        x = b.x
        for i in range(n):
            choices = [x, x + 1, x + 2, x**2 + 1, 2 * x + 3]
            for g in b.gens[1 : i + 1]:
                choices.append(g)
                choices.append(g + 1)
                choices.append(g + x)
            factors = rng.sample(choices, rng.randint(1, min(2, len(choices))))
            product = FormalProduct([(f, rng.choice([1, 1, 2])) for f in factors])
            b.log(product)
        T = b.build()
        if T.validate_s_primitive().ok:
            return T


def random_s_primitive_tower(rng, n):
    """Random S-primitive tower mixing logarithmic and explicit generators."""
    while True:
        b = TowerBuilder([f"t{i}" for i in range(1, n + 1)])
        x = b.x
        try:
            for i in range(n):
                if rng.random() < 0.6 or i == 0:
                    pool = [x, x + 1, x + 2] + [
                        g for g in b.gens[1 : i + 1]
                    ] + [g + 1 for g in b.gens[1 : i + 1]]
                    b.log(rng.choice(pool))
                else:
                    # explicit primitive with a simple derivative
                    den = rng.choice([x, x + 1] + list(b.gens[1 : i + 1]))
                    num = rng.randint(1, 3)
                    b.prim(num / den)
            T = b.build()
        except Exception:
            continue
        if T.validate_s_primitive().ok:
            return T


@pytest.fixture
def rng():
    return random.Random(20250825)

import random

import pytest

from ordcalc import ordinal as o
from ordcalc.fincode import FinOrdSet

W = o.OMEGA
N = o.from_int
W1 = o.ord_sum(W, N(1))
W2 = o.shift_mul(W, N(2))
W3 = o.shift_mul(W, N(3))
WW = o.nat_prod(W, W)          # w^2
WW_W = o.nat_sum(WW, W)        # w^2 + w
WW2 = o.shift_mul(o.nat_sum(W2, o.ZERO), N(1))  # placeholder, unused

# exponent pool mixing finite and infinite values
EXP_POOL = [o.ZERO, N(1), N(2), N(3), N(5), W, W1, o.ord_sum(W, N(2)),
            W2, o.ord_sum(W2, N(1)), WW, o.nat_sum(WW, W)]

# limit-or-zero keys for ring values
LIMIT_POOL = [o.ZERO, W, W2, W3, WW, o.nat_sum(WW, W), o.nat_sum(WW, W2),
              o.nat_prod(WW, W), o.nat_prod(W2, W2)]


def random_ordinal(rng: random.Random, pool=None, max_terms: int = 4) -> o.Ordinal:
    pool = pool or EXP_POOL
    k = rng.randint(0, max_terms)
    return o.from_exponents([rng.choice(pool) for _ in range(k)])


@pytest.fixture
def rng():
    return random.Random(20260810)

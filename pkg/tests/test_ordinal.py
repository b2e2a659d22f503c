import pytest
from hypothesis import given, settings, strategies as st

from ordcalc import ordinal as o
from ordcalc.errors import BudgetExceeded, PreconditionError

from conftest import EXP_POOL, N, W, W1, W2, WW, random_ordinal

ords = st.builds(
    o.from_exponents,
    st.lists(st.sampled_from(EXP_POOL), max_size=4),
)


def test_zero_is_empty_sum():
    assert o.from_exponents([]) is o.ZERO
    assert str(o.ZERO) == "0"


def test_from_exponents_carry():
    assert o.from_exponents([N(2), N(1), N(0), N(0)]) == N(8)


def test_from_exponents_omega_fixed_point():
    assert o.from_exponents([W]) is W
    assert o.pow2(W) is W


def test_pow2_finite():
    for k in range(10):
        assert o.pow2(N(k)) == N(1 << k)


def test_compare_examples():
    assert o.compare(N(5), N(5)) == 0
    assert o.compare(W, N(1000000)) > 0
    assert o.compare(W1, W2) < 0  # w+1 < w*2


def test_nat_sum_examples():
    assert o.nat_sum(N(3), N(5)) == N(8)
    assert o.nat_sum(W, W) == W2
    lhs = o.nat_sum(o.ord_sum(W, N(3)), o.nat_sum(WW, W))
    rhs = o.ord_sum(o.ord_sum(WW, W2), N(3))  # w^2 + w*2 + 3
    assert lhs == rhs


def test_nat_prod_examples():
    x = o.ord_sum(W2, N(7))
    assert o.nat_prod(o.ONE, x) == x
    assert o.nat_prod(W, W) == WW
    assert o.nat_prod(N(2), W1) == o.ord_sum(W2, N(2))


def test_ord_sum_examples():
    a = o.ord_sum(WW, N(4))
    assert o.ord_sum(a, o.ZERO) == a
    assert o.ord_sum(N(3), W) == W
    assert o.ord_sum(W1, W1) == o.ord_sum(W2, N(1))


def test_shift_mul_examples():
    assert o.shift_mul(W, N(3)) == o.from_blocks([(W, 3)])
    assert o.shift_mul(W, o.ONE) is W
    assert o.shift_mul(o.ZERO, N(5)) == N(5)


def test_split_examples():
    g, d = o.split(o.ord_sum(W, N(5)), W)
    assert (g, d) == (o.ONE, N(5))
    g, d = o.split(N(7), N(3))
    assert (g, d) == (o.ZERO, N(7))
    g, d = o.split(o.ord_sum(W2, N(1)), W)
    assert (g, d) == (N(2), N(1))


def test_limit_split_examples():
    assert o.limit_split(N(5)) == (o.ZERO, 5)
    assert o.limit_split(W) == (W, 0)
    assert o.limit_split(o.ord_sum(W, N(3))) == (W, 3)


def test_roundtrip_exponents():
    for a in [o.ZERO, N(13), W, W1, W2, WW, o.ord_sum(WW, N(9))]:
        assert o.from_exponents(a.exponents) == a


def test_depth_guard():
    a = N(2)
    with pytest.raises(BudgetExceeded):
        for _ in range(12):
            a = o.pow2(a)


def test_semiring_laws_small_exhaustive():
    pool = [o.from_exponents(list(c)) for c in _subsets([o.ZERO, N(1), W, W1])]
    for a in pool:
        for b in pool:
            assert o.nat_sum(a, b) == o.nat_sum(b, a)
            assert o.nat_prod(a, b) == o.nat_prod(b, a)
            for c in pool:
                assert o.nat_sum(o.nat_sum(a, b), c) == o.nat_sum(a, o.nat_sum(b, c))
                assert o.nat_prod(o.nat_prod(a, b), c) == o.nat_prod(a, o.nat_prod(b, c))
                assert o.nat_prod(a, o.nat_sum(b, c)) == o.nat_sum(o.nat_prod(a, b), o.nat_prod(a, c))


def _subsets(pool):
    for mask in range(1 << len(pool)):
        yield [pool[i] for i in range(len(pool)) if mask >> i & 1]


def test_naturals_agreement(rng):
    for _ in range(500):
        x, y = rng.randrange(1024), rng.randrange(1024)
        assert o.nat_sum(N(x), N(y)) == N(x + y)
        assert o.nat_prod(N(x), N(y)) == N(x * y)
        assert o.ord_sum(N(x), N(y)) == N(x + y)


@settings(max_examples=80)
@given(ords, ords)
def test_nat_sum_commutes(a, b):
    assert o.nat_sum(a, b) == o.nat_sum(b, a)


@settings(max_examples=80)
@given(ords, ords, ords)
def test_nat_prod_distributes(a, b, c):
    assert o.nat_prod(a, o.nat_sum(b, c)) == o.nat_sum(o.nat_prod(a, b), o.nat_prod(a, c))


@settings(max_examples=80)
@given(ords, ords, ords)
def test_ord_sum_associative(a, b, c):
    assert o.ord_sum(o.ord_sum(a, b), c) == o.ord_sum(a, o.ord_sum(b, c))


@settings(max_examples=80)
@given(ords, ords, ords)
def test_strict_monotonicity(a, b, c):
    if o.compare(a, b) < 0:
        assert o.compare(o.nat_sum(a, c), o.nat_sum(b, c)) < 0


@settings(max_examples=80)
@given(ords, st.sampled_from([o.ZERO, N(1), N(2), W, W1]))
def test_split_shift_inverse(a, theta):
    g, d = o.split(a, theta)
    assert o.ord_sum(o.shift_mul(theta, g), d) == a
    assert o.compare(d, o.pow2(theta)) < 0


def test_render_parse_stability():
    samples = [o.ZERO, N(7), W, W1, W2, WW, o.ord_sum(o.ord_sum(WW, W2), N(3)),
               o.pow2(o.shift_mul(W, W)), o.nat_prod(WW, W)]
    from ordcalc.parse import parse_ordinal
    for a in samples:
        assert parse_ordinal(str(a)) == a


def test_universe_validation():
    u = o.Universe(o.pow2(W2), 4096)
    assert u.contains(W1)
    assert not u.contains(o.pow2(W2))
    with pytest.raises(PreconditionError):
        o.Universe(N(3))
    with pytest.raises(BudgetExceeded):
        u.check_enum(5000)


def test_left_sub_partial():
    assert o.ord_left_sub(o.ONE, W) is W
    assert o.ord_left_sub(W, o.ord_sum(W, N(1))) == N(1)
    with pytest.raises(PreconditionError):
        o.ord_left_sub(W, N(3))

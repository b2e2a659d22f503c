import pytest
from hypothesis import given, settings, strategies as st

from ordcalc import euclid as eu, fincode as f, ordinal as o, sequence as sq
from ordcalc.errors import PreconditionError

from conftest import LIMIT_POOL, N, W, W1, W2, W3, WW


def delta_of(*exps):
    return f.encode(f.FinOrdSet(exps))


eints = st.builds(
    lambda pairs: eu.EuclidInt(pairs),
    st.lists(st.tuples(st.sampled_from(LIMIT_POOL), st.integers(-50, 50)), max_size=4),
)


def test_psi_examples():
    assert eu.psi(N(5)) == eu.from_integer(5)
    assert eu.psi(W1) == eu.EuclidInt([(W, 1), (o.ZERO, 1)])
    assert eu.psi(W2) == eu.EuclidInt([(W, 2)])
    assert eu.psi(WW) == eu.EuclidInt([(W2, 1)])


def test_psi_strictly_monotone(rng):
    for _ in range(200):
        from conftest import random_ordinal
        a, b = random_ordinal(rng), random_ordinal(rng)
        rel, _ = eu.compare(eu.psi(a), eu.psi(b))
        assert rel == o.compare(a, b)


def test_ring_op_examples():
    assert eu.mul(eu.psi(W), eu.psi(W)) == eu.psi(WW)
    assert eu.mul(eu.psi(W1), eu.UNIT) == eu.psi(W1)
    assert eu.add(eu.psi(W), eu.neg(eu.psi(W))) == eu.ZERO_E


def test_key_validation():
    with pytest.raises(PreconditionError):
        eu.EuclidInt([(W1, 1)])  # successor ordinal is not a valid key


def test_sign_examples():
    s, wit = eu.sign(eu.from_integer(-7))
    assert (s, wit.theta) == (-1, o.ZERO)
    s, wit = eu.sign(eu.psi(W) - 1000000)
    assert s == 1
    assert len(wit.theta.exponents) == 20  # 2^20 > 10^6
    s, _ = eu.sign(3 * eu.psi(W) - eu.psi(WW))
    assert s == -1
    assert eu.sign(eu.ZERO_E)[0] == 0


def test_compare_examples():
    rel, _ = eu.compare(eu.psi(W1), eu.psi(W2))
    assert rel < 0
    a = 2 * eu.psi(W) - 3
    assert eu.compare(a, a)[0] == 0
    for n in (0, 1, 10, 10**9):
        assert eu.compare(eu.psi(W), eu.from_integer(n))[0] > 0


def test_partial_sum_examples():
    assert eu.partial_sum(eu.UNIT, delta_of(W, N(5))) == 1
    assert eu.partial_sum(eu.psi(W), delta_of(W, N(3), N(1))) == 4
    assert eu.partial_sum(eu.psi(WW), delta_of(W1, W, N(2))) == 8


def test_partial_sum_matches_counting_on_representative():
    z = eu.EuclidInt([(W, 3), (o.ZERO, -2)])
    x = sq.linear_combo(3, sq.chi(o.ZERO, W), -2, sq.chi(o.ZERO, N(1)))
    for delta in [o.ZERO, N(7), delta_of(W, N(2)), delta_of(W2, W, N(0))]:
        assert eu.partial_sum(z, delta) == sq.counting(x, delta)


def test_from_step_examples():
    assert eu.from_step(sq.chi(o.ZERO, W)) == eu.psi(W)
    assert eu.from_step(sq.chi(W, W2)) == eu.EuclidInt([(W, 1)])
    assert eu.from_step(sq.chi(N(3), W)) == eu.psi(W) - 3
    with_override = sq.StepSequence([(o.ZERO, W, 1)], {N(2): 5})
    assert eu.from_step(with_override) == eu.psi(W) + 4


def test_cone_witness_values():
    assert eu.cone_witness(N(3)) == N(3)
    assert eu.cone_witness(W) == o.ZERO
    assert eu.cone_witness(W2) == W
    assert eu.cone_witness(WW) == o.ZERO


def test_from_step_coherence_beyond_witness(rng):
    pts = [o.ZERO, N(1), N(3), N(6), W, o.ord_sum(W, N(4)), W2, o.ord_sum(W2, N(2)), WW]
    for _ in range(25):
        cuts = sorted(rng.sample(pts, 4), key=o.ord_key)
        x = sq.StepSequence(
            [(cuts[0], cuts[1], rng.randint(-3, 3)), (cuts[2], cuts[3], rng.randint(-3, 3))],
            {rng.choice(pts): rng.randint(-3, 3)},
        )
        z = eu.from_step(x)
        wit = eu.fold_witness(x)
        extra = [N(9), o.nat_sum(WW, W)]
        E = f.FinOrdSet(list(wit.exponents) + extra)
        if len(E) > 14:
            continue
        seen = 0
        for delta in f.enumerate_universe(E):
            if f.formal_subset(wit, delta):
                assert eu.partial_sum(z, delta) == sq.counting(x, delta)
                seen += 1
        assert seen >= 4  # the two padding exponents guarantee indexes above the witness


@settings(max_examples=60)
@given(eints, eints, eints)
def test_ring_laws(a, b, c):
    assert a + b == b + a
    assert (a + b) + c == a + (b + c)
    assert a * b == b * a
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a + eu.ZERO_E == a
    assert a * eu.UNIT == a
    assert a + (-a) == eu.ZERO_E


@settings(max_examples=60)
@given(eints, eints, eints)
def test_order_laws(a, b, c):
    rel_ab = eu.compare(a, b)[0]
    assert rel_ab == -eu.compare(b, a)[0]
    if rel_ab < 0:
        assert eu.compare(a + c, b + c)[0] < 0
        if eu.sign(c)[0] > 0:
            assert eu.compare(a * c, b * c)[0] < 0


@settings(max_examples=40)
@given(eints)
def test_sign_witness_is_sound(z):
    s, wit = eu.sign(z)
    padding = [N(11), N(13), o.nat_prod(WW, WW)]
    E = f.FinOrdSet(list(wit.theta.exponents) + padding)
    if len(E) > 16:
        return
    checked = eu.check_sign_on(z, wit, E, s)
    assert checked >= 1


def test_linear_independence(rng):
    from conftest import random_ordinal
    for _ in range(50):
        ks = rng.sample(LIMIT_POOL, rng.randint(1, 3))
        z = eu.EuclidInt([(k, rng.choice([-9, -1, 1, 3, 17])) for k in ks])
        if z.is_zero:
            continue
        assert eu.compare(z, eu.ZERO_E)[0] != 0


def test_psi_embedding_full(rng):
    from conftest import random_ordinal
    for _ in range(300):
        a, b = random_ordinal(rng), random_ordinal(rng)
        assert eu.psi(o.nat_sum(a, b)) == eu.psi(a) + eu.psi(b)
        assert eu.psi(o.nat_prod(a, b)) == eu.psi(a) * eu.psi(b)


# -- symbolic expressions ------------------------------------------------------


def test_expr_eval_examples():
    from ordcalc.numerosity import PointSet
    X = PointSet.interval(o.ZERO, W)
    e = eu.PsPow2(eu.PsCount(X))
    assert eu.expr_eval(e, delta_of(W, N(3), N(1))) == 16
    assert eu.expr_eval(eu.PsConst(42) - eu.PsConst(2) * eu.PsConst(4), o.ZERO) == 34


def test_expr_compare_syntactic_eq():
    e = eu.PsConst(3)
    assert eu.expr_compare_sampled(e, eu.PsConst(3), []) == "EQ"


def test_expr_compare_clear_verdict():
    from ordcalc.numerosity import PointSet
    big = eu.PsPow2(eu.PsCount(PointSet.interval(o.ZERO, W)))
    small = eu.PsCount(PointSet.interval(o.ZERO, W))
    chains = [f.cofinal_chain(f.FinOrdSet([N(0), N(1), N(2), W])),
              f.cofinal_chain(f.FinOrdSet([N(0), N(2), W, W1]))]
    assert eu.expr_compare_sampled(big, small, chains) == "GT"


def test_expr_compare_conflicting_chains_unknown():
    # counts of [0,w) and [w, w*2) agree on indexes containing w but
    # differ on purely finite ones, so mixed chains cannot vote
    from ordcalc.numerosity import PointSet
    low = eu.PsCount(PointSet.interval(o.ZERO, W))
    high = eu.PsCount(PointSet.interval(W, W2))
    finite_chain = f.cofinal_chain(f.FinOrdSet([N(0), N(1), N(2)]))
    mirror_chain = f.cofinal_chain(f.FinOrdSet([W, N(0)]))
    verdict = eu.expr_compare_sampled(low, high, [finite_chain, mirror_chain])
    assert verdict == "UNKNOWN"

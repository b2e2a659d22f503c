import pytest

from ordcalc import fincode as f, ordinal as o
from ordcalc.errors import BudgetExceeded, PreconditionError

from conftest import N, W, W1, W2, WW


def test_decode_examples():
    assert f.decode(o.ZERO) == f.FinOrdSet()
    assert f.decode(N(6)) == f.FinOrdSet([N(2), N(1)])
    assert f.decode(W) == f.FinOrdSet([W])


def test_encode_decode_inverse_small():
    E = f.FinOrdSet([N(0), N(1), N(2), W, W1])
    for a in f.enumerate_universe(E):
        assert f.encode(f.decode(a)) == a


def test_formal_subset_examples():
    for b in [o.ZERO, N(9), W, WW]:
        assert f.formal_subset(o.ZERO, b)
    assert not f.formal_subset(N(5), N(6), strict=True)
    assert f.formal_member(N(2), N(6))
    assert not f.formal_member(N(0), N(6))
    # member iff the power is formally included
    assert f.formal_member(N(2), N(6)) == f.formal_subset(o.pow2(N(2)), N(6))


def test_join_meet_examples():
    assert f.join(N(5), N(6)) == N(7)
    assert f.join(W, W) is W
    assert f.join(W, N(1)) == W1
    assert f.meet(N(5), N(6)) == N(4)


def test_order_isomorphism():
    E = f.FinOrdSet([N(0), N(1), N(2), N(3)])
    codes = list(f.enumerate_universe(E))
    for a in codes:
        for b in codes:
            assert f.formal_subset(a, b) == (f.decode(a) <= f.decode(b))
            if f.formal_subset(a, b, strict=True):
                assert o.compare(a, b) < 0


def test_counting_laws_small():
    # E is code-closed (every element is itself a code over E), so the
    # membership count within the universe is the full exponent count
    E = f.FinOrdSet([N(0), N(1), N(2), W])
    codes = list(f.enumerate_universe(E))
    for a in codes:
        below = [b for b in codes if f.formal_subset(b, a)]
        members = [b for b in codes if f.formal_member(b, a)]
        assert len(below) == 1 << len(f.decode(a))
        assert len(members) == len(f.decode(a))


def test_pair_law():
    # for distinct a, b: both are members of g iff the two-element code
    # sits under g; at a == b the natural sum carries to 2^(a+1) and the
    # law degenerates to plain membership of the single power
    E = f.FinOrdSet([N(0), N(1), N(2)])
    codes = list(f.enumerate_universe(E))
    probes = [N(i) for i in range(5)]
    for g in codes:
        for a in probes:
            for b in probes:
                if a == b:
                    assert f.formal_member(a, g) == f.formal_subset(o.pow2(a), g)
                    continue
                lhs = f.formal_member(a, g) and f.formal_member(b, g)
                rhs = f.formal_subset(o.nat_sum(o.pow2(a), o.pow2(b)), g)
                assert lhs == rhs


def test_criterion_preconditions():
    with pytest.raises(PreconditionError):
        f.criterion_C(N(1), N(0), N(5), N(9))
    with pytest.raises(PreconditionError):
        f.criterion_D(N(1), N(0), N(3), N(0), N(0))


def test_criterion_C_small_sweep():
    for t in range(4):
        for a in range(8):
            for b in range(1 << t):
                for d in range(32):
                    assert f.criterion_C(N(t), N(a), N(b), N(d))


def test_criterion_C_infinite_instances():
    for theta in [W, W1]:
        for alpha in [o.ZERO, N(1), N(3), W]:
            for beta in [o.ZERO, N(1), N(6)]:
                for delta in [o.ZERO, N(7), W, o.ord_sum(WW, N(5)), o.nat_sum(WW, W2)]:
                    assert f.criterion_C(theta, alpha, beta, delta)


def test_criterion_D_small_sweep():
    for e in range(3):
        for a in range(8):
            for x in range(1 << e):
                for g in range(1 << e):
                    for b in range(1 << e):
                        assert f.criterion_D(N(e), N(a), N(x), N(g), N(b))


def test_filter_base_examples():
    assert f.FilterBaseSet.cone(o.ZERO).contains(N(12))
    assert f.FilterBaseSet.cone(N(6)).contains(N(7))
    assert not f.FilterBaseSet.cone(N(6)).contains(N(5))
    assert not f.FilterBaseSet.d(N(1)).contains(N(5))
    assert f.FilterBaseSet.d(N(1)).contains(N(7))
    assert f.FilterBaseSet.d(N(1)).contains(o.ZERO)
    dc = f.FilterBaseSet.dcone(N(1), N(2))
    assert dc.contains(N(7))  # 7 = 4+2+1 is in D(1) and above {1}
    assert not dc.contains(N(4))


def test_d_membership_matches_construction(rng):
    for _ in range(100):
        eta = rng.choice([N(0), N(1), N(2), W])
        alpha = rng.choice([o.ZERO, N(1), N(5), W])
        bound = o.pow2(eta)
        xs = [x for x in [o.ZERO, N(1), N(2), N(3), N(9), W] if o.compare(x, bound) < 0]
        xi = rng.choice(xs)
        delta = f.d_member(eta, alpha, xi)
        assert f.in_filter_base(f.FilterBaseSet.d(eta), delta)


def test_enumerate_universe_examples():
    assert [x for x in f.enumerate_universe(f.FinOrdSet())] == [o.ZERO]
    E = f.FinOrdSet([N(1), N(0)])
    assert list(f.enumerate_universe(E)) == [N(0), N(1), N(2), N(3)]
    with pytest.raises(BudgetExceeded):
        list(f.enumerate_universe(f.FinOrdSet([N(i) for i in range(30)])))


def test_enumeration_is_increasing():
    E = f.FinOrdSet([N(0), N(2), W, W1])
    codes = list(f.enumerate_universe(E))
    assert all(o.compare(a, b) < 0 for a, b in zip(codes, codes[1:]))


def test_hat_example():
    E = f.FinOrdSet([W, N(0)])
    finite = list(f.hat(lambda a: o.compare(a, W) < 0, E))
    assert finite == [N(0), N(1)]


def test_cofinal_chain_examples():
    assert f.cofinal_chain(f.FinOrdSet()) == [o.ZERO]
    assert f.cofinal_chain(f.FinOrdSet([N(1), N(0)])) == [o.ZERO, N(1), N(3)]
    assert f.cofinal_chain(f.FinOrdSet([W])) == [o.ZERO, W]
    chain = f.cofinal_chain(f.FinOrdSet([N(0), N(2), W]))
    for a, b in zip(chain, chain[1:]):
        assert f.formal_subset(a, b, strict=True)


def test_count_codes_below_brute_force():
    pool = f.FinOrdSet([N(0), N(1), N(3), W, W1, WW])
    codes = list(f.enumerate_universe(pool))
    bounds = [o.ZERO, N(1), N(3), N(7), W, o.ord_sum(W, N(5)), W2, WW,
              o.pow2(W2), o.nat_sum(WW, W)]
    for d in codes:
        hat_d = [b for b in codes if f.formal_subset(b, d)]
        for bd in bounds:
            brute = sum(1 for b in hat_d if o.compare(b, bd) < 0)
            assert f.count_codes_below(d, bd) == brute

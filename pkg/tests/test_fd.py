"""Store, propagators, and search on the finite-domain core."""

import itertools
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from topoplan.fd import (
    CheckFn,
    Guard,
    LexLess,
    LinearEq,
    Ne,
    OffsetLe,
    Prod,
    PropStatus,
    ScaledLe,
    Store,
    Sum,
    dom_range,
    dom_values,
    label,
    minimize,
)


def _dom(v):
    return list(dom_values(v.dom))


# -- bounds propagation on the two coordinate constraints every space carries


def test_sum_reduces_endpoint_bounds():
    s = Store()
    x1 = s.intvar("x1", 0, 10)
    ln = s.intvar("len", 2, 6)
    x2 = s.intvar("x2", 0, 10)
    assert s.post(Sum(x2, x1, ln)) is PropStatus.FIXPOINT
    # x2 = x1 + len pulls both endpoints inward
    assert (x1.lb, x1.ub) == (0, 8)
    assert (x2.lb, x2.ub) == (2, 10)
    assert (ln.lb, ln.ub) == (2, 6)


def test_prod_area_floor_lifts_sides():
    s = Store()
    ln = s.intvar("len", 2, 6)
    wd = s.intvar("wid", 2, 6)
    ar = s.intvar("area", 13, 36)
    assert s.post(Prod(ar, ln, wd)) is PropStatus.FIXPOINT
    # area >= 13 with the other side at most 6 forces both sides >= 3
    assert (ln.lb, ln.ub) == (3, 6)
    assert (wd.lb, wd.ub) == (3, 6)
    assert (ar.lb, ar.ub) == (13, 36)


def test_sum_grounding_chain():
    s = Store()
    x = s.intvar("x", 0, 20)
    y = s.intvar("y", 0, 20)
    z = s.intvar("z", 0, 20)
    s.post(Sum(y, x, s.const(1)))
    s.post(Sum(z, y, s.const(1)))
    assert s.tell_eq(x, 3)
    assert s.propagate() is PropStatus.FIXPOINT
    assert y.value == 4
    assert z.value == 5


def test_linear_eq_signed_coefficients():
    s = Store()
    a = s.intvar("a", 0, 5)
    b = s.intvar("b", 0, 5)
    y = s.intvar("y", -100, 100)
    s.post(LinearEq(y, [(2, a), (-3, b)]))
    assert (y.lb, y.ub) == (-15, 10)
    assert s.tell_eq(y, 10)
    assert s.propagate() is PropStatus.FIXPOINT
    assert a.value == 5
    assert b.value == 0


def test_offset_le():
    s = Store()
    x = s.intvar("x", 0, 10)
    y = s.intvar("y", 0, 10)
    s.post(OffsetLe(x, y, 3))
    assert x.ub == 7
    assert y.lb == 3


def test_scaled_le_ratio_band():
    s = Store()
    p1 = s.intvar("p1", 1, 100)
    p2 = s.intvar("p2", 10, 10)
    # 2/5 <= p1/p2 <= 1/2, i.e. 2*p2 <= 5*p1 and 2*p1 <= 1*p2... scaled both ways
    s.post(ScaledLe(2, p2, 5, p1))
    s.post(ScaledLe(2, p1, 1, p2))
    assert (p1.lb, p1.ub) == (4, 5)


def test_ne_waits_for_instantiation():
    s = Store()
    x = s.intvar("x", 0, 3)
    y = s.intvar("y", 0, 3)
    s.post(Ne(x, y))
    assert x.size == 4 and y.size == 4
    assert s.assign(y, 2)
    assert _dom(x) == [0, 1, 3]


def test_ne_with_offset():
    s = Store()
    x = s.intvar("x", 0, 5)
    y = s.intvar("y", 2, 2)
    s.post(Ne(x, y, 1))  # x != y + 1
    s.propagate()
    assert _dom(x) == [0, 1, 2, 4, 5]


def test_fail_is_a_value_and_pop_clears_it():
    s = Store()
    x = s.intvar("x", 0, 5)
    m = s.push()
    assert not s.tell_bounds(x, 7, 9)
    assert s.failed
    s.pop(m)
    assert not s.failed
    assert (x.lb, x.ub) == (0, 5)


def test_push_pop_restores_exactly():
    s = Store()
    x = s.intvar("x", 0, 9)
    y = s.intvar("y", 0, 9)
    s.post(Sum(y, x, s.const(2)))
    before = s.snapshot()
    m = s.push()
    assert s.assign(x, 4)
    assert y.value == 6
    s.pop(m)
    assert s.snapshot() == before


def test_pop_retracts_propagators_posted_past_mark():
    s = Store()
    x = s.intvar("x", 0, 9)
    y = s.intvar("y", 0, 9)
    m = s.push()
    s.post(OffsetLe(x, y, 5))
    assert x.ub == 4
    s.pop(m)
    assert x.ub == 9
    assert s.props == []
    # watcher lists must be clean too: re-telling x wakes nothing stale
    assert s.assign(x, 9)
    assert y.ub == 9


def test_guard_fires_once_then_revives_on_backtrack():
    s = Store()
    x = s.intvar("x", 0, 9)
    trig = s.intvar("t", 0, 1)
    fired = []

    def action(store):
        fired.append(trig.value)
        return store.tell_bounds(x, 5, 9)

    s.post(Guard([trig], action))
    assert x.lb == 0
    m = s.push()
    assert s.assign(trig, 1)
    assert fired == [1]
    assert x.lb == 5
    # further tells must not re-fire the dissolved guard
    assert s.assign(x, 7)
    assert fired == [1]
    s.pop(m)
    assert x.lb == 0
    # revived: fires again on the other branch
    assert s.assign(trig, 0)
    assert fired == [1, 0]


def test_guard_waits_for_all_triggers():
    s = Store()
    a = s.intvar("a", 0, 1)
    b = s.intvar("b", 0, 1)
    fired = []
    s.post(Guard([a, b], lambda st: fired.append(1) or True))
    s.assign(a, 0)
    assert fired == []
    s.assign(b, 1)
    assert fired == [1]


def test_check_fn_tristate():
    s = Store()
    x = s.intvar("x", 0, 9)

    def chk(store):
        if x.ub < 5:
            return True
        if x.lb > 5:
            return False
        return None

    p = CheckFn([x], chk)
    s.post(p)
    assert p.alive
    m = s.push()
    assert not s.assign(x, 7)
    s.pop(m)
    assert p.alive
    assert s.assign(x, 2)
    assert not p.alive  # entailed, dissolved


def test_check_fn_fails_branch():
    s = Store()
    x = s.intvar("x", 0, 9)
    s.post(CheckFn([x], lambda store: None if not x.instantiated else x.value % 2 == 0))
    m = s.push()
    assert not s.assign(x, 3)
    s.pop(m)
    assert s.assign(x, 4)


def test_lex_less_basic():
    s = Store()
    ax = s.intvar("ax", 0, 5)
    ay = s.intvar("ay", 0, 5)
    bx = s.intvar("bx", 0, 5)
    by = s.intvar("by", 0, 5)
    s.post(LexLess(ax, ay, bx, by))
    assert s.assign(ax, 3)
    assert bx.lb == 3
    assert s.assign(bx, 3)
    # equal x: y must be strict
    assert ay.ub == 4
    assert by.lb == 1
    assert s.assign(ay, 4)
    assert by.value == 5


def test_lex_less_contrapositive():
    s = Store()
    ax = s.intvar("ax", 0, 5)
    ay = s.intvar("ay", 4, 5)
    bx = s.intvar("bx", 0, 5)
    by = s.intvar("by", 0, 4)
    s.post(LexLess(ax, ay, bx, by))
    # y cannot be strictly increasing, so x must be
    assert bx.lb >= ax.lb + 1 or ax.ub <= bx.ub - 1


def test_lex_less_enumeration_is_exact():
    s = Store()
    ax = s.intvar("ax", 0, 2)
    ay = s.intvar("ay", 0, 2)
    bx = s.intvar("bx", 0, 2)
    by = s.intvar("by", 0, 2)
    s.post(LexLess(ax, ay, bx, by))
    got = {(t["ax"], t["ay"], t["bx"], t["by"]) for t in label(s, [ax, ay, bx, by])}
    want = {
        (a, b, c, d)
        for a, b, c, d in itertools.product(range(3), repeat=4)
        if (a, b) < (c, d)
    }
    assert got == want


def test_discrete_var_roundtrip():
    s = Store()
    d = s.discrete("rel", ("E", "W", "N", "S"))
    assert d.values() == ["E", "W", "N", "S"]
    assert s.d_remove(d, "W")
    assert d.values() == ["E", "N", "S"]
    m = s.push()
    assert s.d_assign(d, "N")
    assert d.value == "N"
    s.pop(m)
    assert d.values() == ["E", "N", "S"]
    assert s.d_restrict(d, ["N", "S"])
    assert d.values() == ["N", "S"]


def test_post_during_propagation_is_picked_up():
    s = Store()
    x = s.intvar("x", 0, 9)
    y = s.intvar("y", 0, 9)
    t = s.intvar("t", 0, 1)
    s.post(Guard([t], lambda store: store.post(OffsetLe(x, y, 6)) is not PropStatus.FAILED))
    assert s.assign(t, 1)
    assert x.ub == 3  # the guard's post propagated within the same drain


# -- search vs an independent brute force


def _brute(domains, preds):
    names = list(domains)
    out = []
    for combo in itertools.product(*(domains[n] for n in names)):
        env = dict(zip(names, combo))
        if all(p(env) for p in preds):
            out.append(tuple(env[n] for n in names))
    return sorted(out)


def _random_csp(seed):
    rng = random.Random(seed)
    n = rng.randint(2, 4)
    names = [f"v{i}" for i in range(n)]
    domains = {}
    for nm in names:
        lo = rng.randint(0, 4)
        hi = lo + rng.randint(0, 5)
        domains[nm] = list(range(lo, hi + 1))
    cons = []
    for _ in range(rng.randint(1, 3)):
        kind = rng.choice(["sum", "le", "ne", "lin"])
        a, b = rng.sample(names, 2)
        if kind == "sum" and n >= 3:
            c = rng.choice([x for x in names if x not in (a, b)])
            cons.append(("sum", c, a, b))
        elif kind == "le":
            cons.append(("le", a, b, rng.randint(0, 3)))
        elif kind == "ne":
            cons.append(("ne", a, b, rng.randint(-1, 1)))
        else:
            cons.append(("lin", a, b, rng.randint(1, 3), rng.randint(-2, 2)))
    return names, domains, cons


def _post_csp(s, names, domains, cons):
    vs = {nm: s.intvar(nm, domains[nm][0], domains[nm][-1]) for nm in names}
    preds = []
    for c in cons:
        if c[0] == "sum":
            _, z, x, y = c
            s.post(Sum(vs[z], vs[x], vs[y]))
            preds.append(lambda e, z=z, x=x, y=y: e[z] == e[x] + e[y])
        elif c[0] == "le":
            _, x, y, k = c
            s.post(OffsetLe(vs[x], vs[y], k))
            preds.append(lambda e, x=x, y=y, k=k: e[x] + k <= e[y])
        elif c[0] == "ne":
            _, x, y, k = c
            s.post(Ne(vs[x], vs[y], k))
            preds.append(lambda e, x=x, y=y, k=k: e[x] != e[y] + k)
        else:
            _, y, x, a, b = c
            s.post(LinearEq(vs[y], [(a, vs[x]), (b, s.const(1))]))
            preds.append(lambda e, y=y, x=x, a=a, b=b: e[y] == a * e[x] + b)
    return vs, preds


@pytest.mark.parametrize("seed", range(30))
def test_label_matches_brute_force(seed):
    names, domains, cons = _random_csp(seed)
    s = Store()
    vs, preds = _post_csp(s, names, domains, cons)
    got = sorted(tuple(t[nm] for nm in names) for t in label(s, [vs[nm] for nm in names]))
    assert got == _brute(domains, preds)


@pytest.mark.parametrize("seed", range(30, 50))
def test_minimize_matches_brute_force(seed):
    names, domains, cons = _random_csp(seed)
    s = Store()
    vs, preds = _post_csp(s, names, domains, cons)
    cost = s.intvar("cost", -100, 100)
    s.post(LinearEq(cost, [(1, vs[names[0]]), (2, vs[names[-1]])]))
    res = minimize(s, cost, [vs[nm] for nm in names], collect_all=True)
    sols = _brute(domains, preds)
    if not sols:
        assert res is None
        return
    costs = [t[0] + 2 * t[-1] for t in sols]
    assert res.best == min(costs)
    want = sorted(t for t, c in zip(sols, costs) if c == res.best)
    got = sorted(tuple(t[nm] for nm in names) for t in res.optima)
    assert got == want
    # the store is left untouched by the search
    assert not s.failed


def test_minimize_records_first_and_best():
    s = Store()
    x = s.intvar("x", 0, 9)
    cost = s.intvar("c", 0, 9)
    s.post(Sum(cost, x, s.const(0)))
    res = minimize(s, cost, [x])
    assert res.best == 0
    assert res.first_cost == 0
    assert res.steps_to_first <= res.steps_to_best or res.first_cost != res.best


def test_label_leaves_store_restored():
    s = Store()
    x = s.intvar("x", 0, 3)
    y = s.intvar("y", 0, 3)
    s.post(Ne(x, y))
    before = s.snapshot()
    _ = list(label(s, [x, y]))
    assert s.snapshot() == before


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 10_000))
def test_propagation_never_drops_solutions(seed):
    # every brute-force solution must survive propagation when assigned
    names, domains, cons = _random_csp(seed)
    s = Store()
    vs, preds = _post_csp(s, names, domains, cons)
    if s.failed:
        assert _brute(domains, preds) == []
        return
    for sol in _brute(domains, preds):
        m = s.push()
        ok = True
        for nm, v in zip(names, sol):
            if not s.assign(vs[nm], v):
                ok = False
                break
        assert ok, f"solution {sol} rejected"
        s.pop(m)

"""Finite-domain integer constraint core.

Domains are ordered unions of disjoint closed integer intervals.  A Store
owns variables, propagators and a trail; telling a variable a tighter
domain wakes the propagators watching it, and a FIFO queue runs them to a
fixpoint.  Choice points are trail markers: ``pop(mark)`` restores every
domain (and retracts every propagator posted past the marker) exactly.

Failure is a value, not a fault: an emptied domain marks the store failed
and the current propagation round stops; ``pop`` clears the flag.

On top of the store live two searches: ``label`` (depth-first value
enumeration with a dynamic variable heuristic) and ``minimize``
(branch-and-bound; each incumbent posts a non-retractable ``cost <
incumbent`` bound, and an optional final pass collects every solution at
the optimum).
"""

from __future__ import annotations

from collections import deque
from enum import Enum


class PropStatus(Enum):
    FIXPOINT = "fixpoint"
    FAILED = "failed"


# ---------------------------------------------------------------------------
# interval-union domains
#
# A domain is a tuple of (lo, hi) int pairs, sorted, disjoint, and with a
# gap of at least 2 between consecutive intervals (adjacent ones merge).


def dom_range(lo, hi):
    return ((lo, hi),) if lo <= hi else ()


def dom_from_values(values):
    out = []
    for v in sorted(set(values)):
        if out and v <= out[-1][1] + 1:
            out[-1] = (out[-1][0], v)
        else:
            out.append((v, v))
    return tuple(out)


def dom_min(d):
    return d[0][0]


def dom_max(d):
    return d[-1][1]


def dom_size(d):
    return sum(hi - lo + 1 for lo, hi in d)


def dom_contains(d, v):
    for lo, hi in d:
        if lo <= v <= hi:
            return True
        if v < lo:
            return False
    return False


def dom_values(d):
    for lo, hi in d:
        yield from range(lo, hi + 1)


def dom_clamp(d, lo, hi):
    """Intersect with [lo, hi]."""
    if not d:
        return d
    if lo <= d[0][0] and hi >= d[-1][1]:
        return d
    out = []
    for a, b in d:
        a2 = a if a >= lo else lo
        b2 = b if b <= hi else hi
        if a2 <= b2:
            out.append((a2, b2))
    return tuple(out)


def dom_remove_value(d, v):
    out = []
    for a, b in d:
        if v < a or v > b:
            out.append((a, b))
        else:
            if a <= v - 1:
                out.append((a, v - 1))
            if v + 1 <= b:
                out.append((v + 1, b))
    return tuple(out)


def dom_intersect(d, e):
    out = []
    i = j = 0
    while i < len(d) and j < len(e):
        a = max(d[i][0], e[j][0])
        b = min(d[i][1], e[j][1])
        if a <= b:
            out.append((a, b))
        if d[i][1] < e[j][1]:
            i += 1
        else:
            j += 1
    return tuple(out)


def dom_union(d, e):
    if not d:
        return e
    if not e:
        return d
    ivs = sorted(d + e)
    out = [ivs[0]]
    for a, b in ivs[1:]:
        if a <= out[-1][1] + 1:
            if b > out[-1][1]:
                out[-1] = (out[-1][0], b)
        else:
            out.append((a, b))
    return tuple(out)


def dom_difference(d, e):
    """Values of d not in e."""
    out = []
    for a, b in d:
        cur = a
        for lo, hi in e:
            if hi < cur:
                continue
            if lo > b:
                break
            if lo > cur:
                out.append((cur, lo - 1))
            cur = max(cur, hi + 1)
            if cur > b:
                break
        if cur <= b:
            out.append((cur, b))
    return tuple(out)


def ceil_div(a, b):
    return -(-a // b)


# ---------------------------------------------------------------------------
# variables


class FDVar:
    __slots__ = ("store", "idx", "name", "dom", "watchers", "inst_watchers", "instantiated")

    def __init__(self, store, idx, name, dom):
        self.store = store
        self.idx = idx
        self.name = name
        self.dom = dom
        self.watchers = []
        self.inst_watchers = []
        self.instantiated = len(dom) == 1 and dom[0][0] == dom[0][1]

    @property
    def lb(self):
        return self.dom[0][0]

    @property
    def ub(self):
        return self.dom[-1][1]

    @property
    def value(self):
        if self.instantiated:
            return self.dom[0][0]
        return None

    @property
    def size(self):
        return dom_size(self.dom)

    def __repr__(self):
        return f"{self.name}{list(self.dom)}"


class DiscreteVar:
    """A variable over a small ordered alphabet, backed by an FDVar of indexes."""

    __slots__ = ("alphabet", "var")

    def __init__(self, alphabet, var):
        self.alphabet = tuple(alphabet)
        self.var = var

    @property
    def name(self):
        return self.var.name

    @property
    def instantiated(self):
        return self.var.instantiated

    @property
    def value(self):
        v = self.var.value
        return None if v is None else self.alphabet[v]

    def values(self):
        return [self.alphabet[i] for i in dom_values(self.var.dom)]

    def index_of(self, value):
        return self.alphabet.index(value)

    def __repr__(self):
        return f"{self.var.name}{self.values()}"


# ---------------------------------------------------------------------------
# propagators


class Propagator:
    """Base propagator; subclasses implement setup (watch registration) and run."""

    __slots__ = ("alive", "queued")

    def __init__(self):
        self.alive = True
        self.queued = False

    def setup(self, s):
        """Register watchers.  Called once when posted."""

    def run(self, s):
        """Propagate; return False on inconsistency."""
        raise NotImplementedError

    def dissolve(self, s):
        """Entailed: stop waking.  Retracted on backtrack past the post."""
        self.alive = False
        s.trail.append(self._revive)

    def _revive(self):
        self.alive = True


class Sum(Propagator):
    """z = x + y (bounds)."""

    __slots__ = ("z", "x", "y")

    def __init__(self, z, x, y):
        super().__init__()
        self.z, self.x, self.y = z, x, y

    def setup(self, s):
        s.watch(self.z, self)
        s.watch(self.x, self)
        s.watch(self.y, self)

    def run(self, s):
        z, x, y = self.z, self.x, self.y
        if not s.tell_bounds(z, x.lb + y.lb, x.ub + y.ub):
            return False
        if not s.tell_bounds(x, z.lb - y.ub, z.ub - y.lb):
            return False
        return s.tell_bounds(y, z.lb - x.ub, z.ub - x.lb)


class Prod(Propagator):
    """z = x * y for positive x, y (bounds)."""

    __slots__ = ("z", "x", "y")

    def __init__(self, z, x, y):
        super().__init__()
        self.z, self.x, self.y = z, x, y

    def setup(self, s):
        s.tell_bounds(self.x, 1, self.x.ub)
        s.tell_bounds(self.y, 1, self.y.ub)
        s.watch(self.z, self)
        s.watch(self.x, self)
        s.watch(self.y, self)

    def run(self, s):
        z, x, y = self.z, self.x, self.y
        if not s.tell_bounds(z, x.lb * y.lb, x.ub * y.ub):
            return False
        if not s.tell_bounds(x, ceil_div(z.lb, y.ub), z.ub // y.lb):
            return False
        return s.tell_bounds(y, ceil_div(z.lb, x.ub), z.ub // x.lb)


class LinearEq(Propagator):
    """y = sum(c_i * x_i) for integer coefficients (bounds)."""

    __slots__ = ("y", "terms")

    def __init__(self, y, terms):
        super().__init__()
        self.y = y
        self.terms = tuple(terms)

    def setup(self, s):
        s.watch(self.y, self)
        for _, x in self.terms:
            s.watch(x, self)

    def run(self, s):
        lo = hi = 0
        contrib = []
        for c, x in self.terms:
            if c >= 0:
                a, b = c * x.lb, c * x.ub
            else:
                a, b = c * x.ub, c * x.lb
            contrib.append((a, b))
            lo += a
            hi += b
        if not s.tell_bounds(self.y, lo, hi):
            return False
        ylo, yhi = self.y.lb, self.y.ub
        for (c, x), (a, b) in zip(self.terms, contrib):
            if c == 0:
                continue
            rest_lo = lo - a
            rest_hi = hi - b
            # c*x in [ylo - rest_hi, yhi - rest_lo]
            tlo, thi = ylo - rest_hi, yhi - rest_lo
            if c > 0:
                if not s.tell_bounds(x, ceil_div(tlo, c), thi // c):
                    return False
            else:
                if not s.tell_bounds(x, ceil_div(thi, c), tlo // c):
                    return False
        return True


class OffsetLe(Propagator):
    """x + c <= y (bounds)."""

    __slots__ = ("x", "y", "c")

    def __init__(self, x, y, c=0):
        super().__init__()
        self.x, self.y, self.c = x, y, c

    def setup(self, s):
        s.watch(self.x, self)
        s.watch(self.y, self)

    def run(self, s):
        xd = self.x.dom
        yd = self.y.dom
        hi = yd[-1][1] - self.c
        if xd[-1][1] > hi:
            if not s.tell_bounds(self.x, xd[0][0], hi):
                return False
            xd = self.x.dom
        lo = xd[0][0] + self.c
        if yd[0][0] < lo:
            return s.tell_bounds(self.y, lo, yd[-1][1])
        return True


class ScaledLe(Propagator):
    """a*x <= b*y for positive integer a, b (bounds)."""

    __slots__ = ("a", "x", "b", "y")

    def __init__(self, a, x, b, y):
        super().__init__()
        self.a, self.x, self.b, self.y = a, x, b, y

    def setup(self, s):
        s.watch(self.x, self)
        s.watch(self.y, self)

    def run(self, s):
        if not s.tell_bounds(self.x, self.x.lb, (self.b * self.y.ub) // self.a):
            return False
        return s.tell_bounds(self.y, ceil_div(self.a * self.x.lb, self.b), self.y.ub)


class Eq(Propagator):
    """x = y + c (full domain intersection, not just bounds)."""

    __slots__ = ("x", "y", "c")

    def __init__(self, x, y, c=0):
        super().__init__()
        self.x, self.y, self.c = x, y, c

    def setup(self, s):
        s.watch(self.x, self)
        s.watch(self.y, self)

    def run(self, s):
        c = self.c
        shifted = tuple((lo + c, hi + c) for lo, hi in self.y.dom)
        if not s.tell_dom(self.x, shifted):
            return False
        back = tuple((lo - c, hi - c) for lo, hi in self.x.dom)
        return s.tell_dom(self.y, back)


class Ne(Propagator):
    """x != y + c; prunes once either side is instantiated."""

    __slots__ = ("x", "y", "c")

    def __init__(self, x, y, c=0):
        super().__init__()
        self.x, self.y, self.c = x, y, c

    def setup(self, s):
        s.watch(self.x, self, inst=True)
        s.watch(self.y, self, inst=True)

    def run(self, s):
        yv = self.y.value
        if yv is not None:
            if not s.tell_remove(self.x, yv + self.c):
                return False
            self.dissolve(s)
            return True
        xv = self.x.value
        if xv is not None:
            if not s.tell_remove(self.y, xv - self.c):
                return False
            self.dissolve(s)
        return True


class Guard(Propagator):
    """Runs an action (usually further posts) once all triggers are instantiated."""

    __slots__ = ("triggers", "action")

    def __init__(self, triggers, action):
        super().__init__()
        self.triggers = tuple(t.var if isinstance(t, DiscreteVar) else t for t in triggers)
        self.action = action

    def setup(self, s):
        for t in self.triggers:
            s.watch(t, self, inst=True)

    def run(self, s):
        if any(not t.instantiated for t in self.triggers):
            return True
        self.dissolve(s)
        return self.action(s)


class CheckFn(Propagator):
    """Generic check: fn(store) -> True (entailed), False (violated), None (unknown)."""

    __slots__ = ("watched", "fn")

    def __init__(self, watched, fn):
        super().__init__()
        self.watched = tuple(w.var if isinstance(w, DiscreteVar) else w for w in watched)
        self.fn = fn

    def setup(self, s):
        for w in self.watched:
            s.watch(w, self)

    def run(self, s):
        r = self.fn(s)
        if r is False:
            return False
        if r is True:
            self.dissolve(s)
        return True


class LexLess(Propagator):
    """(ax, ay) lexicographically before (bx, by): ax < bx, or ax = bx and ay < by."""

    __slots__ = ("ax", "ay", "bx", "by")

    def __init__(self, ax, ay, bx, by):
        super().__init__()
        self.ax, self.ay, self.bx, self.by = ax, ay, bx, by

    def setup(self, s):
        for v in (self.ax, self.ay, self.bx, self.by):
            s.watch(v, self)

    def run(self, s):
        ax, ay, bx, by = self.ax, self.ay, self.bx, self.by
        if not s.tell_bounds(ax, ax.lb, bx.ub):
            return False
        if not s.tell_bounds(bx, ax.lb, bx.ub):
            return False
        if ax.instantiated and bx.instantiated and ax.value == bx.value:
            if not s.tell_bounds(ay, ay.lb, by.ub - 1):
                return False
            return s.tell_bounds(by, ay.lb + 1, by.ub)
        if ay.lb >= by.ub:
            # y order forces strict x order
            if not s.tell_bounds(ax, ax.lb, bx.ub - 1):
                return False
            return s.tell_bounds(bx, ax.lb + 1, bx.ub)
        return True


# ---------------------------------------------------------------------------
# store


class Store:
    def __init__(self):
        self.vars = []
        self.props = []
        self.trail = []
        self.failed = False
        self._queue = deque()
        self._draining = False
        self._consts = {}
        self.stats_tells = 0
        self.stats_nodes = 0

    # -- construction

    def intvar(self, name, lo, hi=None, dom=None):
        if dom is None:
            dom = dom_range(lo, hi if hi is not None else lo)
        if not dom:
            raise ValueError(f"empty initial domain for {name}")
        v = FDVar(self, len(self.vars), name, tuple(dom))
        self.vars.append(v)
        return v

    def const(self, value):
        v = self._consts.get(value)
        if v is None:
            v = self.intvar(f"#{value}", value, value)
            self._consts[value] = v
        return v

    def discrete(self, name, alphabet, allowed=None):
        alphabet = tuple(alphabet)
        if allowed is None:
            d = dom_range(0, len(alphabet) - 1)
        else:
            d = dom_from_values(alphabet.index(a) for a in allowed)
        return DiscreteVar(alphabet, self.intvar(name, 0, dom=d))

    # -- propagator plumbing

    def watch(self, var, prop, inst=False):
        lst = var.inst_watchers if inst else var.watchers
        lst.append(prop)
        self.trail.append(lst.pop)

    def post(self, prop):
        """Add a propagator and propagate.  Inside a propagation round the
        new propagator is only queued; the outer drain picks it up."""
        self.props.append(prop)
        self.trail.append(self._pop_prop)
        prop.setup(self)
        if self.failed:
            return PropStatus.FAILED
        self._enqueue(prop)
        if self._draining:
            return PropStatus.FIXPOINT
        return self.propagate()

    def _pop_prop(self):
        self.props.pop()

    def _enqueue(self, prop):
        if prop.alive and not prop.queued:
            prop.queued = True
            self._queue.append(prop)

    def propagate(self):
        if self.failed:
            return PropStatus.FAILED
        if self._draining:
            return PropStatus.FIXPOINT
        self._draining = True
        try:
            q = self._queue
            while q:
                p = q.popleft()
                p.queued = False
                if not p.alive:
                    continue
                if not p.run(self):
                    self.fail()
                    return PropStatus.FAILED
                if self.failed:
                    return PropStatus.FAILED
            return PropStatus.FIXPOINT
        finally:
            self._draining = False

    def fail(self):
        self.failed = True
        for p in self._queue:
            p.queued = False
        self._queue.clear()

    # -- tells

    def _set_dom(self, var, nd):
        self.trail.append((var, var.dom))
        var.dom = nd
        self.stats_tells += 1
        inst = len(nd) == 1 and nd[0][0] == nd[0][1]
        var.instantiated = inst
        for p in var.watchers:
            if p.alive and not p.queued:
                p.queued = True
                self._queue.append(p)
        if inst:
            for p in var.inst_watchers:
                if p.alive and not p.queued:
                    p.queued = True
                    self._queue.append(p)

    def tell_bounds(self, var, lo, hi):
        d = var.dom
        if lo <= d[0][0] and hi >= d[-1][1]:
            return True
        nd = dom_clamp(d, lo, hi)
        if not nd:
            self.fail()
            return False
        if nd != d:
            self._set_dom(var, nd)
        return True

    def tell_dom(self, var, allowed):
        nd = dom_intersect(var.dom, allowed)
        if not nd:
            self.fail()
            return False
        if nd != var.dom:
            self._set_dom(var, nd)
        return True

    def tell_remove(self, var, v):
        d = var.dom
        if not dom_contains(d, v):
            return True
        nd = dom_remove_value(d, v)
        if not nd:
            self.fail()
            return False
        self._set_dom(var, nd)
        return True

    def tell_eq(self, var, v):
        return self.tell_bounds(var, v, v)

    # discrete views
    def d_assign(self, dvar, value):
        return self.tell_eq(dvar.var, dvar.alphabet.index(value))

    def d_remove(self, dvar, value):
        return self.tell_remove(dvar.var, dvar.alphabet.index(value))

    def d_restrict(self, dvar, allowed):
        return self.tell_dom(dvar.var, dom_from_values(dvar.alphabet.index(a) for a in allowed))

    # -- choice points

    def push(self):
        return len(self.trail)

    def pop(self, mark):
        trail = self.trail
        while len(trail) > mark:
            e = trail.pop()
            if type(e) is tuple:
                v, d = e
                v.dom = d
                v.instantiated = len(d) == 1 and d[0][0] == d[0][1]
            else:
                e()
        for p in self._queue:
            p.queued = False
        self._queue.clear()
        self.failed = False

    def assign(self, var, value):
        """Tell var = value (index for discrete vars' alphabet values handled
        by d_assign) and propagate; returns False on failure."""
        if isinstance(var, DiscreteVar):
            if not self.d_assign(var, value):
                return False
        else:
            if not self.tell_eq(var, value):
                return False
        return self.propagate() is PropStatus.FIXPOINT

    # -- inspection

    def snapshot(self, vars=None):
        """Deterministic dump of domains; exact equality means exact restore."""
        vs = self.vars if vars is None else [v.var if isinstance(v, DiscreteVar) else v for v in vars]
        return tuple((v.name, v.dom) for v in vs)


# ---------------------------------------------------------------------------
# search


def _pick_smallest(variables):
    best = None
    best_size = None
    for v in variables:
        fv = v.var if isinstance(v, DiscreteVar) else v
        if fv.instantiated:
            continue
        sz = fv.size
        if best is None or sz < best_size:
            best, best_size = fv, sz
            if sz == 2:
                break
    return best


def label(store, variables, var_choice=None, val_order=None):
    """Depth-first enumeration of all solutions over `variables`.

    Yields {name: value} dicts.  The variable heuristic is dynamic
    (re-evaluated at every node); values are tried in ascending order
    unless val_order supplies another permutation of the current domain.
    """
    if var_choice is None:
        var_choice = _pick_smallest
    if store.propagate() is PropStatus.FAILED:
        return

    fvars = [v.var if isinstance(v, DiscreteVar) else v for v in variables]

    def rec():
        v = var_choice(fvars)
        if v is None:
            yield {fv.name: fv.value for fv in fvars}
            return
        values = list(dom_values(v.dom))
        if val_order is not None:
            values = val_order(v, values)
        store.stats_nodes += 1
        for val in values:
            m = store.push()
            if store.tell_eq(v, val) and store.propagate() is PropStatus.FIXPOINT:
                yield from rec()
            store.pop(m)

    yield from rec()


class MinimizeResult:
    __slots__ = ("best", "witness", "optima", "first_cost", "steps_to_first", "steps_to_best")

    def __init__(self, best, witness, optima, first_cost, steps_to_first, steps_to_best):
        self.best = best
        self.witness = witness
        self.optima = optima
        self.first_cost = first_cost
        self.steps_to_first = steps_to_first
        self.steps_to_best = steps_to_best

    def __repr__(self):
        n = "-" if self.optima is None else len(self.optima)
        return f"MinimizeResult(best={self.best}, optima={n})"


def minimize(store, cost, variables, collect_all=False, var_choice=None):
    """Branch-and-bound minimization of `cost` over `variables`.

    Phase 1 performs depth-first search; each incumbent posts the bound
    cost < incumbent, which is kept through backtracking.  With
    collect_all, a second pass gathers every solution at the optimum,
    ordered lexicographically by variable values.  Returns None when no
    solution exists.
    """
    if var_choice is None:
        var_choice = _pick_smallest
    base = store.push()
    try:
        if store.propagate() is PropStatus.FAILED:
            return None
        fvars = [v.var if isinstance(v, DiscreteVar) else v for v in variables]
        best = [None]
        witness = [None]
        first_cost = [None]
        steps = [0]
        steps_first = [None]
        steps_best = [None]

        def rec():
            v = var_choice(fvars)
            if v is None:
                cv = cost.value
                if cv is None:
                    raise RuntimeError("cost not fixed at leaf; include its inputs in the labeling set")
                best[0] = cv
                witness[0] = {fv.name: fv.value for fv in fvars}
                if first_cost[0] is None:
                    first_cost[0] = cv
                    steps_first[0] = steps[0]
                steps_best[0] = steps[0]
                return
            for val in list(dom_values(v.dom)):
                steps[0] += 1
                m = store.push()
                ok = store.tell_eq(v, val)
                if ok and best[0] is not None:
                    ok = store.tell_bounds(cost, cost.lb, best[0] - 1)
                if ok and store.propagate() is PropStatus.FIXPOINT:
                    rec()
                store.pop(m)

        rec()
        if best[0] is None:
            return None
        optima = None
        if collect_all:
            m = store.push()
            optima = []
            if store.tell_eq(cost, best[0]) and store.propagate() is PropStatus.FIXPOINT:
                for sol in label(store, fvars, var_choice=var_choice):
                    optima.append(sol)
            store.pop(m)
            optima.sort(key=lambda s: tuple(s[fv.name] for fv in fvars))
        return MinimizeResult(best[0], witness[0], optima, first_cost[0], steps_first[0], steps_best[0])
    finally:
        store.pop(base)

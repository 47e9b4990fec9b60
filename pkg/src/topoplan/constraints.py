"""Relative-position variables, adjacency overlays, and layout building.

Every unordered pair of spaces on a floor carries one relation variable
over (E, W, N, S): where the later-declared space sits relative to the
earlier one.  The four values partition all non-overlapping placements:

  N: b.y1 >= a.y2                 (any x; diagonals count as N/S)
  S: b.y2 <= a.y1
  E: b.x1 >= a.x2 and the y-spans overlap by at least 1
  W: b.x2 <= a.x1 and the y-spans overlap by at least 1

Nothing geometric is posted until a relation variable is instantiated;
a guard then walks the pair's overlay stack and posts the geometry of
the chosen value.  The base overlay is plain separation (gap >= 0 along
the relation axis).  Explicit adjacency constraints push further
overlays: a separation band, a required contact length along the
perpendicular axis, or a restriction of the allowed values.  Overlays
added later (say inside a chosen or-branch) apply immediately when the
relation is already decided.

Contact length is only constrained by explicit overlays.  The base
overlay must not touch it: in a valid tiling, diagonal neighbours have
negative "contact", and forcing it to 0 would cut real solutions.
"""

from __future__ import annotations

from .fd import (
    CheckFn,
    DiscreteVar,
    Eq,
    Guard,
    Ne,
    OffsetLe,
    Propagator,
    PropStatus,
    ScaledLe,
    dom_contains,
    label,
)
from .model import (
    DEFAULT_SWITCHES,
    Problem,
    SpaceDef,
    make_space,
    orientation_branches,
    stairs_box,
    stairs_configs,
    stairs_edges,
)

REL_VALUES = ("E", "W", "N", "S")
INVERSE_REL = {"E": "W", "W": "E", "N": "S", "S": "N"}
SIDES = ("N", "S", "E", "W")


def rel_of(a, b):
    """Relation value for two fully placed boxes; None if they overlap."""
    if b.y1.value >= a.y2.value:
        return "N"
    if b.y2.value <= a.y1.value:
        return "S"
    if b.x1.value >= a.x2.value:
        return "E"
    if b.x2.value <= a.x1.value:
        return "W"
    return None


def _axis(pair_a, pair_b, value):
    """(first, second, perp) endpoint variables for a relation value.

    The separation along the relation axis is second - first >= 0; perp
    is (a.p1, a.p2, b.p1, b.p2, a.dim, b.dim) on the other axis.
    """
    a, b = pair_a, pair_b
    if value == "E":
        return a.x2, b.x1, (a.y1, a.y2, b.y1, b.y2, a.width, b.width)
    if value == "W":
        return b.x2, a.x1, (a.y1, a.y2, b.y1, b.y2, a.width, b.width)
    if value == "N":
        return a.y2, b.y1, (a.x1, a.x2, b.x1, b.x2, a.length, b.length)
    return b.y2, a.y1, (a.x1, a.x2, b.x1, b.x2, a.length, b.length)


class Overlay:
    __slots__ = ("allowed", "d2lo", "d2hi", "d1lo", "d1hi", "explicit")

    def __init__(self, allowed=None, d2lo=0, d2hi=None, d1lo=0, d1hi=None, explicit=False):
        self.allowed = None if allowed is None else frozenset(allowed)
        self.d2lo = d2lo
        self.d2hi = d2hi
        self.d1lo = d1lo
        self.d1hi = d1hi
        self.explicit = explicit


class PairConstraint:
    __slots__ = ("a", "b", "rel", "overlays", "applied", "has_explicit", "dmin", "recovery")

    def __init__(self, store, a, b):
        self.a = a
        self.b = b
        self.rel = store.discrete(f"rel:{a.name}/{b.name}", REL_VALUES)
        self.overlays = [Overlay()]  # base separation
        self.applied = False
        self.has_explicit = False
        self.dmin = None  # static: min dimension any third space can take
        self.recovery = False

    def add_overlay(self, store, ov):
        self.overlays.append(ov)
        store.trail.append(self.overlays.pop)
        if ov.explicit:
            self.has_explicit = True
        if ov.allowed is not None:
            if not store.d_restrict(self.rel, ov.allowed):
                return False
        if self.applied:
            return self._apply_overlay(store, ov, self.rel.value)
        return True

    def apply_current(self, store):
        """Post the geometry of the chosen relation value."""
        v = self.rel.value
        self.applied = True
        store.trail.append(self._reset_applied)
        for ov in list(self.overlays):
            if not self._apply_overlay(store, ov, v):
                return False
        if self.recovery and (self.dmin is None or self.dmin >= 2):
            if store.post(GapProp(self, v)) is PropStatus.FAILED:
                return False
        return True

    def _reset_applied(self):
        self.applied = False

    def _apply_overlay(self, store, ov, v):
        if ov.allowed is not None and v not in ov.allowed:
            return False
        a, b = self.a, self.b
        first, second, perp = _axis(a, b, v)
        if store.post(OffsetLe(first, second, ov.d2lo)) is PropStatus.FAILED:
            return False
        if ov.d2hi is not None:
            if store.post(OffsetLe(second, first, -ov.d2hi)) is PropStatus.FAILED:
                return False
        if v in ("E", "W"):
            # relation definition: the y-spans overlap
            pa1, pa2, pb1, pb2, da, db = perp
            if store.post(OffsetLe(pb1, pa2, 1)) is PropStatus.FAILED:
                return False
            if store.post(OffsetLe(pa1, pb2, 1)) is PropStatus.FAILED:
                return False
        if ov.explicit and (ov.d1lo > 0 or ov.d2hi == 0):
            pa1, pa2, pb1, pb2, da, db = perp
            m = ov.d1lo
            if store.post(OffsetLe(pb1, pa2, m)) is PropStatus.FAILED:
                return False
            if store.post(OffsetLe(pa1, pb2, m)) is PropStatus.FAILED:
                return False
            if m > 0:
                if not s_ge(store, da, m) or not s_ge(store, db, m):
                    return False
        if ov.explicit and ov.d1hi is not None:
            pa1, pa2, pb1, pb2, _, _ = perp
            cap = ov.d1hi

            def chk(st, pa1=pa1, pa2=pa2, pb1=pb1, pb2=pb2, cap=cap):
                omin = min(pa2.lb, pb2.lb) - max(pa1.ub, pb1.ub)
                if omin > cap:
                    return False
                if all(x.instantiated for x in (pa1, pa2, pb1, pb2)):
                    return min(pa2.lb, pb2.lb) - max(pa1.ub, pb1.ub) <= cap
                return None

            if store.post(CheckFn([pa1, pa2, pb1, pb2], chk)) is PropStatus.FAILED:
                return False
        return True


def s_ge(store, var, m):
    return store.tell_bounds(var, max(var.lb, m), var.ub)


class RelRefute(Propagator):
    """Removes relation values refuted by current coordinate bounds."""

    __slots__ = ("pair",)

    def __init__(self, pair):
        super().__init__()
        self.pair = pair

    def setup(self, s):
        a, b = self.pair.a, self.pair.b
        for v in (a.x1, a.x2, a.y1, a.y2, b.x1, b.x2, b.y1, b.y2):
            s.watch(v, self)
        s.watch(self.pair.rel.var, self, inst=True)

    def run(self, s):
        pair = self.pair
        rv = pair.rel.var
        if rv.instantiated:
            self.dissolve(s)
            return True
        a, b = pair.a, pair.b
        y_open = (
            min(a.y2.dom[-1][1], b.y2.dom[-1][1]) - max(a.y1.dom[0][0], b.y1.dom[0][0]) >= 1
        )
        # alphabet order: E=0, W=1, N=2, S=3
        if not (y_open and b.x1.dom[-1][1] >= a.x2.dom[0][0]):
            if not s.tell_remove(rv, 0):
                return False
        if not (y_open and a.x1.dom[-1][1] >= b.x2.dom[0][0]):
            if not s.tell_remove(rv, 1):
                return False
        if b.y1.dom[-1][1] < a.y2.dom[0][0]:
            if not s.tell_remove(rv, 2):
                return False
        if a.y1.dom[-1][1] < b.y2.dom[0][0]:
            if not s.tell_remove(rv, 3):
                return False
        if rv.instantiated:
            self.dissolve(s)
        return True


class GapProp(Propagator):
    """Separation gap must be 0 or at least the static minimum room size.

    Active only under total recovery.  When the perpendicular spans
    certainly overlap, the strip between the two spaces must be tiled by
    other rooms, and no other room is thinner than dmin; so a gap
    strictly between 0 and dmin is impossible.  dmin of None means no
    third space exists at all and the gap must close.  Diagonal pairs
    (no perpendicular overlap) are exempt.
    """

    __slots__ = ("pair", "value")

    def __init__(self, pair, value):
        super().__init__()
        self.pair = pair
        self.value = value

    def setup(self, s):
        first, second, perp = _axis(self.pair.a, self.pair.b, self.value)
        for v in (first, second, perp[0], perp[1], perp[2], perp[3]):
            s.watch(v, self)

    def run(self, s):
        first, second, perp = _axis(self.pair.a, self.pair.b, self.value)
        pa1, pa2, pb1, pb2, _, _ = perp
        po_min = min(pa2.lb, pb2.lb) - max(pa1.ub, pb1.ub)
        d = self.pair.dmin
        if po_min >= 1:
            if d is None:
                if not s.tell_bounds(second, first.lb, first.ub):
                    return False
                if not s.tell_bounds(first, second.lb, second.ub):
                    return False
            else:
                g_lb = second.lb - first.ub
                g_ub = second.ub - first.lb
                if g_lb >= 1:
                    if not s.tell_bounds(second, first.lb + d, second.ub):
                        return False
                    if not s.tell_bounds(first, first.lb, second.ub - d):
                        return False
                elif g_ub < d:
                    if not s.tell_bounds(second, second.lb, first.ub):
                        return False
                    if not s.tell_bounds(first, second.lb, first.ub):
                        return False
        vars_ = (first, second, pa1, pa2, pb1, pb2)
        if all(v.instantiated for v in vars_):
            po = min(pa2.lb, pb2.lb) - max(pa1.ub, pb1.ub)
            if po >= 1:
                g = second.lb - first.lb
                if g != 0 and (d is None or g < d):
                    return False
            self.dissolve(s)
        return True


# ---------------------------------------------------------------------------
# contour sides


def side_vars(space, contour, side):
    if side == "N":
        return space.y2, contour.y2
    if side == "S":
        return space.y1, contour.y1
    if side == "W":
        return space.x1, contour.x1
    return space.x2, contour.x2


class ContourConstraint:
    """Space must sit on one of the listed contour sides.

    The selection variable takes the first listed side whose edge
    equality holds, making the value a function of the placement.
    """

    __slots__ = ("space", "contour", "sides", "var")

    def __init__(self, store, space, contour, sides, tag):
        self.space = space
        self.contour = contour
        self.sides = tuple(sides)
        self.var = store.discrete(f"side:{tag}:{space.name}", self.sides)

    def apply_current(self, store):
        v = self.var.value
        k = self.sides.index(v)
        sv, cv = side_vars(self.space, self.contour, v)
        if store.post(Eq(sv, cv)) is PropStatus.FAILED:
            return False
        for u in self.sides[:k]:
            su, cu = side_vars(self.space, self.contour, u)
            if store.post(Ne(su, cu)) is PropStatus.FAILED:
                return False
        return True

    def holds(self):
        if not self.space.placed():
            return None
        for u in self.sides:
            su, cu = side_vars(self.space, self.contour, u)
            if su.value == cu.value:
                return True
        return False


class ContourRefute(Propagator):
    __slots__ = ("con",)

    def __init__(self, con):
        super().__init__()
        self.con = con

    def setup(self, s):
        con = self.con
        seen = set()
        for u in con.sides:
            sv, cv = side_vars(con.space, con.contour, u)
            for v in (sv, cv):
                if id(v) not in seen:
                    seen.add(id(v))
                    s.watch(v, self)
        s.watch(con.var.var, self, inst=True)

    def run(self, s):
        con = self.con
        if con.var.instantiated:
            self.dissolve(s)
            return True
        for k, u in enumerate(con.sides):
            if not dom_contains_convert(con.var, u):
                continue
            sv, cv = side_vars(con.space, con.contour, u)
            feasible = sv.lb <= cv.ub and cv.lb <= sv.ub
            if feasible:
                # an earlier side certainly on the wall wins the selection
                for w in con.sides[:k]:
                    sw, cw = side_vars(con.space, con.contour, w)
                    if sw.instantiated and cw.instantiated and sw.value == cw.value:
                        feasible = False
                        break
            if not feasible and not s.d_remove(con.var, u):
                return False
        if con.var.instantiated:
            self.dissolve(s)
        return True


def dom_contains_convert(dvar, value):
    return dom_contains(dvar.var.dom, dvar.alphabet.index(value))


# ---------------------------------------------------------------------------
# compiled constraint units (usable directly or inside or-branches)


class AdjacencyUnit:
    def __init__(self, layout, rec):
        self.a = layout.space(rec["a"])
        self.b = layout.space(rec["b"])
        d1 = rec.get("d1") or [0, None]
        d2 = rec.get("d2") or [0, 0]
        self.d1lo, self.d1hi = d1[0], d1[1]
        self.d2lo, self.d2hi = d2[0], d2[1]
        self.allowed = tuple(rec["allowed"]) if rec.get("allowed") else None
        self.pair, self.flipped = layout.pair(self.a.name, self.b.name)
        self.parts = (self.a.name, self.b.name)

    def post(self, store):
        allowed = self.allowed
        if allowed is not None and self.flipped:
            allowed = tuple(INVERSE_REL[v] for v in allowed)
        ov = Overlay(allowed, self.d2lo, self.d2hi, self.d1lo, self.d1hi, explicit=True)
        return self.pair.add_overlay(store, ov)

    def holds(self):
        if not (self.a.placed() and self.b.placed()):
            return None
        v = rel_of(self.a, self.b)
        if v is None:
            return False
        if self.allowed is not None and v not in self.allowed:
            return False
        first, second, perp = _axis(self.a, self.b, v)
        sep = second.value - first.value
        if sep < self.d2lo or (self.d2hi is not None and sep > self.d2hi):
            return False
        pa1, pa2, pb1, pb2, _, _ = perp
        contact = min(pa2.value, pb2.value) - max(pa1.value, pb1.value)
        if contact < self.d1lo or (self.d1hi is not None and contact > self.d1hi):
            return False
        return True


class OnSideUnit:
    def __init__(self, layout, rec, tag):
        self.space = layout.space(rec["space"])
        self.contour = layout.contours[self.space.floor]
        self.sides = tuple(rec["sides"])
        self.tag = tag
        self.con = None
        self.parts = (self.space.name,)

    def post(self, store):
        self.con = ContourConstraint(store, self.space, self.contour, self.sides, self.tag)
        ok = store.post(ContourRefute(self.con)) is not PropStatus.FAILED
        if not ok:
            return False
        con = self.con
        g = Guard([con.var], lambda st: con.apply_current(st))
        return store.post(g) is not PropStatus.FAILED

    def holds(self):
        if not self.space.placed():
            return None
        for u in self.sides:
            su, cu = side_vars(self.space, self.contour, u)
            if not (su.instantiated and cu.instantiated):
                return None
            if su.value == cu.value:
                return True
        return False


class BoundUnit:
    """Clamp one space attribute to a closed interval."""

    def __init__(self, layout, rec):
        self.var = layout.attr_var(rec["var"])
        self.lo = rec.get("min")
        self.hi = rec.get("max")
        if self.lo is None and self.hi is None:
            raise ValueError("bound record needs min or max")
        self.parts = (rec["var"][0],)

    def post(self, store):
        lo = self.var.lb if self.lo is None else max(self.var.lb, int(self.lo))
        hi = self.var.ub if self.hi is None else min(self.var.ub, int(self.hi))
        return store.tell_bounds(self.var, lo, hi)

    def holds(self):
        if not self.var.instantiated:
            return None
        v = self.var.value
        if self.lo is not None and v < int(self.lo):
            return False
        if self.hi is not None and v > int(self.hi):
            return False
        return True


class ContourTouch(Propagator):
    """Constructive disjunction: some edge coincides with a contour wall."""

    __slots__ = ("space", "contour")

    def __init__(self, space, contour):
        super().__init__()
        self.space = space
        self.contour = contour

    def setup(self, s):
        sp = self.space
        for v in (sp.x1, sp.x2, sp.y1, sp.y2):
            s.watch(v, self)

    def run(self, s):
        sp, c = self.space, self.contour
        open_sides = []
        for u in SIDES:
            sv, cv = side_vars(sp, c, u)
            w = cv.value
            if sv.instantiated and sv.value == w:
                self.dissolve(s)
                return True
            if dom_contains(sv.dom, w):
                open_sides.append((sv, w))
        if not open_sides:
            return False
        if len(open_sides) == 1:
            sv, w = open_sides[0]
            if not s.tell_bounds(sv, w, w):
                return False
            self.dissolve(s)
        return True


class LitUnit:
    """Space keeps at least one edge on the floor contour.

    Unlike the side constraints this is not a choice point: which wall
    provides the light is no part of a class identity.
    """

    def __init__(self, layout, rec):
        self.space = layout.space(rec["space"])
        self.contour = layout.contours[self.space.floor]
        self.parts = (self.space.name,)

    def post(self, store):
        return store.post(ContourTouch(self.space, self.contour)) is not PropStatus.FAILED

    def holds(self):
        if not self.space.placed():
            return None
        for u in SIDES:
            sv, cv = side_vars(self.space, self.contour, u)
            if sv.value == cv.value:
                return True
        return False


class RatioUnit:
    def __init__(self, layout, rec):
        self.va = layout.attr_var(rec["a"])
        self.vb = layout.attr_var(rec["b"])
        self.a1, self.b1 = rec["low"]
        self.a2, self.b2 = rec["high"]
        if self.a1 * self.b2 > self.a2 * self.b1:
            raise ValueError("empty ratio band")
        self.parts = (rec["a"][0], rec["b"][0])

    def post(self, store):
        if store.post(ScaledLe(self.a1, self.vb, self.b1, self.va)) is PropStatus.FAILED:
            return False
        return store.post(ScaledLe(self.b2, self.va, self.a2, self.vb)) is not PropStatus.FAILED

    def holds(self):
        if not (self.va.instantiated and self.vb.instantiated):
            return None
        av, bv = self.va.value, self.vb.value
        return self.a1 * bv <= self.b1 * av and self.b2 * av <= self.a2 * bv


class StairsAdjacentUnit:
    """A space covers the full entry (or exit) edge of a staircase."""

    def __init__(self, layout, rec):
        self.stairs = layout.space(rec["stairs"])
        self.space = layout.space(rec["space"])
        self.end = rec.get("end", "entry")
        self.pair, self.flipped = layout.pair(self.stairs.name, self.space.name)
        self.parts = (self.stairs.name, self.space.name)

    def _edge(self):
        cfg = self.stairs.config.value
        if cfg is None:
            return None
        deg, _ = cfg
        entry, exit_ = stairs_edges(deg, self.stairs.style)
        return entry if self.end == "entry" else exit_

    def post(self, store):
        unit = self

        def action(st):
            return unit._post_edge(st)

        return store.post(Guard([self.stairs.config], action)) is not PropStatus.FAILED

    def _post_edge(self, store):
        edge = self._edge()
        st, sp = self.stairs, self.space
        if edge == "W":
            posts = [(Eq(sp.x2, st.x1),), (OffsetLe(sp.y1, st.y1, 0),), (OffsetLe(st.y2, sp.y2, 0),)]
            rel_sp = "W"
        elif edge == "E":
            posts = [(Eq(sp.x1, st.x2),), (OffsetLe(sp.y1, st.y1, 0),), (OffsetLe(st.y2, sp.y2, 0),)]
            rel_sp = "E"
        elif edge == "S":
            posts = [(Eq(sp.y2, st.y1),), (OffsetLe(sp.x1, st.x1, 0),), (OffsetLe(st.x2, sp.x2, 0),)]
            rel_sp = "S"
        else:
            posts = [(Eq(sp.y1, st.y2),), (OffsetLe(sp.x1, st.x1, 0),), (OffsetLe(st.x2, sp.x2, 0),)]
            rel_sp = "N"
        for (p,) in posts:
            if store.post(p) is PropStatus.FAILED:
                return False
        # rel_sp is the space's position relative to the stairs
        if self.pair.a is self.stairs:
            value = rel_sp
        else:
            value = INVERSE_REL[rel_sp]
        return store.d_assign(self.pair.rel, value)

    def holds(self):
        if not (self.stairs.placed() and self.space.placed() and self.stairs.config.instantiated):
            return None
        edge = self._edge()
        st, sp = self.stairs, self.space
        if edge == "W":
            return sp.x2.value == st.x1.value and sp.y1.value <= st.y1.value and sp.y2.value >= st.y2.value
        if edge == "E":
            return sp.x1.value == st.x2.value and sp.y1.value <= st.y1.value and sp.y2.value >= st.y2.value
        if edge == "S":
            return sp.y2.value == st.y1.value and sp.x1.value <= st.x1.value and sp.x2.value >= st.x2.value
        return sp.y1.value == st.y2.value and sp.x1.value <= st.x1.value and sp.x2.value >= st.x2.value


class StairsLinkUnit:
    """Two staircases on different floors form one stairwell: same box,
    same climb configuration."""

    def __init__(self, layout, rec):
        self.a = layout.space(rec["a"])
        self.b = layout.space(rec["b"])
        self.parts = (self.a.name, self.b.name)

    def post(self, store):
        a, b = self.a, self.b
        for pa, pb in ((a.x1, b.x1), (a.y1, b.y1), (a.x2, b.x2), (a.y2, b.y2)):
            if store.post(Eq(pa, pb)) is PropStatus.FAILED:
                return False
        return store.post(Eq(a.config.var, b.config.var)) is not PropStatus.FAILED

    def holds(self):
        a, b = self.a, self.b
        if not (a.placed() and b.placed() and a.config.instantiated and b.config.instantiated):
            return None
        return a.coords() == b.coords() and a.config.value == b.config.value


class OrConstraint:
    """Inclusive disjunction, branched as a partition: branch 1 states
    the first alternative; branch 2 states the second plus the negation
    of the first, so no placement is reachable through both."""

    def __init__(self, layout, rec, tag):
        self.branch1 = [compile_unit(layout, r, f"{tag}.1") for r in rec["branches"][0]]
        self.branch2 = [compile_unit(layout, r, f"{tag}.2") for r in rec["branches"][1]]
        for u in self.branch1 + self.branch2:
            if isinstance(u, (OnSideUnit, OrConstraint)):
                raise ValueError("side and nested or constraints are not allowed inside or-branches")
        self.sel = layout.store.discrete(f"or:{tag}", (1, 2))
        self.parts = tuple({n for u in self.branch1 + self.branch2 for n in u.parts})

    def post(self, store):
        con = self

        def action(st):
            if con.sel.value == 1:
                return all(u.post(st) for u in con.branch1)
            for u in con.branch2:
                if not u.post(st):
                    return False
            watched = []
            for u in con.branch1:
                for nm in u.parts:
                    sp = con._layout.space(nm)
                    watched.extend([sp.x1, sp.y1, sp.x2, sp.y2])
                    if sp.config is not None:
                        watched.append(sp.config)

            def neg(st2):
                vals = [u.holds() for u in con.branch1]
                if any(v is False for v in vals):
                    return True
                if all(v is True for v in vals):
                    return False
                return None

            return st.post(CheckFn(watched, neg)) is not PropStatus.FAILED

        return store.post(Guard([self.sel], action)) is not PropStatus.FAILED

    def holds(self):
        v1 = [u.holds() for u in self.branch1]
        v2 = [u.holds() for u in self.branch2]
        if all(v is True for v in v1) or all(v is True for v in v2):
            return True
        if any(v is None for v in v1 + v2):
            return None
        return False


def compile_unit(layout, rec, tag):
    t = rec["type"]
    if t == "adjacent":
        return AdjacencyUnit(layout, rec)
    if t == "on_side":
        return OnSideUnit(layout, rec, tag)
    if t == "lit":
        return LitUnit(layout, rec)
    if t == "bound":
        return BoundUnit(layout, rec)
    if t == "ratio":
        return RatioUnit(layout, rec)
    if t == "stairs_adjacent":
        return StairsAdjacentUnit(layout, rec)
    if t == "stairs_link":
        return StairsLinkUnit(layout, rec)
    if t == "or":
        con = OrConstraint(layout, rec, tag)
        con._layout = layout
        return con
    raise ValueError(f"unknown constraint type {t!r}")


# ---------------------------------------------------------------------------
# layout


class Layout:
    def __init__(self, problem):
        self.problem = problem
        self.store = None
        self.contours = []
        self.spaces = []
        self._by_name = {}
        self.pairs = {}
        self.pair_list = []
        self.orient_vars = []  # (space, dvar, {tag: (ldom, wdom)})
        self.config_vars = []  # (space, dvar)
        self.contour_units = []
        self.or_units = []
        self.units = []
        self.sig_items = []  # (label, DiscreteVar)
        self.adj_partners = {}
        self.contour_count = {}
        self.switches = dict(DEFAULT_SWITCHES)

    def space(self, name):
        sp = self._by_name.get(name)
        if sp is None:
            raise KeyError(f"unknown space {name!r}")
        return sp

    def attr_var(self, ref):
        name, attr = ref
        if attr not in ("length", "width", "area", "x1", "y1", "x2", "y2"):
            raise ValueError(f"unknown attribute {attr!r}")
        return getattr(self.space(name), attr)

    def pair(self, na, nb):
        """(pair, flipped): flipped when (na, nb) is not declaration order."""
        a, b = self.space(na), self.space(nb)
        if a.floor != b.floor:
            raise ValueError(f"no relation between floors: {na}, {nb}")
        key = (min(a.index, b.index), max(a.index, b.index))
        return self.pairs[key], a.index > b.index

    def children_of_floor(self, floor):
        return [s for s in self.spaces if s.floor == floor]

    def signature(self):
        return tuple(dv.value for _, dv in self.sig_items)

    def signature_dict(self):
        return {label: dv.value for label, dv in self.sig_items}

    def apply_signature(self, values):
        st = self.store
        for (label, dv), v in zip(self.sig_items, values):
            if v is None:
                continue
            try:
                ok = st.d_assign(dv, tuple(v) if isinstance(v, list) else v)
            except ValueError:
                return False
            if not ok:
                return False
        return st.propagate() is PropStatus.FIXPOINT

    def geom_vars(self):
        out = []
        for sp in self.spaces:
            out.extend([sp.x1, sp.y1, sp.length, sp.width])
        for _, dv in self.config_vars:
            out.append(dv)
        return out

    def domains(self):
        """Current per-space attribute domains, JSON-friendly."""
        out = {}
        for sp in self.spaces:
            d = {}
            for attr in ("x1", "y1", "x2", "y2", "length", "width", "area"):
                d[attr] = [list(iv) for iv in getattr(sp, attr).dom]
            if sp.config is not None:
                d["config"] = [list(v) for v in sp.config.values()]
            out[sp.name] = d
        return out

    def solution(self):
        """Placement dict for a fully labeled store."""
        out = {}
        for sp in self.spaces:
            out[sp.name] = {
                "x1": sp.x1.value,
                "y1": sp.y1.value,
                "x2": sp.x2.value,
                "y2": sp.y2.value,
            }
            if sp.config is not None and sp.config.instantiated:
                deg, step = sp.config.value
                out[sp.name]["climb"] = deg
                if step:
                    out[sp.name]["first_step"] = step
        return out


def build_layout(problem: Problem) -> Layout:
    from . import reduction
    from .fd import Store

    lay = Layout(problem)
    lay.switches.update(problem.switches)
    st = Store()
    lay.store = st

    for i, cdef in enumerate(problem.contours):
        span_x = _span(cdef.length)
        span_y = _span(cdef.width)
        c = make_space(st, cdef, -1 - i, span_x, span_y, at_origin=True)
        lay.contours.append(c)
        lay._by_name[c.name] = c

    for idx, sdef in enumerate(problem.spaces):
        contour = lay.contours[sdef.floor]
        sp = make_space(st, sdef, idx, contour.x2.ub, contour.y2.ub)
        lay.spaces.append(sp)
        lay._by_name[sp.name] = sp
        if not contour.placed():
            st.post(OffsetLe(contour.x1, sp.x1, 0))
            st.post(OffsetLe(sp.x2, contour.x2, 0))
            st.post(OffsetLe(contour.y1, sp.y1, 0))
            st.post(OffsetLe(sp.y2, contour.y2, 0))
        lay.adj_partners[sp.name] = set()
        lay.contour_count[sp.name] = 0

    if st.failed:
        return lay

    # orientation choice points and the box-membership safety net
    for sp, sdef in zip(lay.spaces, problem.spaces):
        if sp.kind == "stairs":
            cfgs = stairs_configs(sp.style)
            dv = st.discrete(f"cfg:{sp.name}", cfgs)
            sp.config = dv
            lay.config_vars.append((sp, dv))
            climb, across = sp.decl_length, sp.decl_width
            _post_config_guard(st, sp, dv, climb, across)
            _post_box_membership(st, sp, climb, across)
        elif sp.rotatable:
            branches = orientation_branches(sp.decl_length, sp.decl_width)
            if len(branches) > 1:
                tags = tuple(t for t, _, _ in branches)
                dv = st.discrete(f"orient:{sp.name}", tags)
                sp.orient = dv
                doms = {t: (ld, wd) for t, ld, wd in branches}
                lay.orient_vars.append((sp, dv, doms))
                _post_orient_guard(st, sp, dv, doms)
            _post_box_membership(st, sp, sp.decl_length, sp.decl_width)

    # relation variable per same-floor pair; static strip minima must be in
    # place before any relation can instantiate and post its geometry
    for fl in range(len(lay.contours)):
        kids = lay.children_of_floor(fl)
        for i in range(len(kids)):
            for j in range(i + 1, len(kids)):
                a, b = kids[i], kids[j]
                pair = PairConstraint(st, a, b)
                pair.recovery = lay.switches["total_recovery"]
                lay.pairs[(a.index, b.index)] = pair
                lay.pair_list.append(pair)
    reduction.static_dmins(lay)
    for pair in lay.pair_list:
        st.post(RelRefute(pair))
        st.post(Guard([pair.rel], lambda s2, p=pair: p.apply_current(s2)))

    # explicit constraints
    for ridx, rec in enumerate(problem.constraints):
        unit = compile_unit(lay, rec, str(ridx))
        lay.units.append(unit)
        if isinstance(unit, OnSideUnit):
            lay.contour_units.append(unit)
            lay.contour_count[unit.space.name] += 1
        elif isinstance(unit, OrConstraint):
            lay.or_units.append(unit)
            for u in unit.branch1 + unit.branch2:
                if isinstance(u, AdjacencyUnit):
                    lay.adj_partners[u.a.name].add(u.b.name)
                    lay.adj_partners[u.b.name].add(u.a.name)
        elif isinstance(unit, AdjacencyUnit):
            lay.adj_partners[unit.a.name].add(unit.b.name)
            lay.adj_partners[unit.b.name].add(unit.a.name)
        elif isinstance(unit, StairsAdjacentUnit):
            lay.adj_partners[unit.stairs.name].add(unit.space.name)
            lay.adj_partners[unit.space.name].add(unit.stairs.name)
        if not unit.post(st):
            st.fail()
            return lay

    reduction.install(lay)

    # stable signature order: relations, then contour sides, then or-selections
    for pair in lay.pair_list:
        lay.sig_items.append((f"rel:{pair.a.name}/{pair.b.name}", pair.rel))
    for unit in lay.contour_units:
        lay.sig_items.append((f"side:{unit.tag}:{unit.space.name}", unit.con.var))
    for unit in lay.or_units:
        lay.sig_items.append((unit.sel.name, unit.sel))

    st.propagate()
    return lay


def _span(spec):
    if isinstance(spec, int):
        return spec
    if spec and isinstance(spec[0], (list, tuple)):
        return max(int(p[1]) for p in spec)
    return int(spec[1])


def _post_orient_guard(st, sp, dv, doms):
    def action(s2, sp=sp, dv=dv, doms=doms):
        ld, wd = doms[dv.value]
        return s2.tell_dom(sp.length, ld) and s2.tell_dom(sp.width, wd)

    st.post(Guard([dv], action))


def _post_config_guard(st, sp, dv, climb, across):
    def action(s2, sp=sp, dv=dv):
        deg, _ = dv.value
        ld, wd = stairs_box(deg, climb, across)
        return s2.tell_dom(sp.length, ld) and s2.tell_dom(sp.width, wd)

    st.post(Guard([dv], action))


def _post_box_membership(st, sp, adom, bdom):
    def chk(s2, sp=sp, adom=adom, bdom=bdom):
        if not (sp.length.instantiated and sp.width.instantiated):
            return None
        l, w = sp.length.value, sp.width.value
        return (dom_contains(adom, l) and dom_contains(bdom, w)) or (
            dom_contains(bdom, l) and dom_contains(adom, w)
        )

    st.post(CheckFn([sp.length, sp.width], chk))


def check_consistency(layout):
    """First geometric solution of the current store, or None."""
    st = layout.store
    if st.failed:
        return None
    mark = st.push()
    sol = None
    for _ in label(st, layout.geom_vars()):
        sol = layout.solution()
        break
    st.pop(mark)
    return sol

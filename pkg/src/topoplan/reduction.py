"""Search-space reductions layered onto a built layout.

All of these are optional switches.  Soundness stance: a reduction may
remove topological candidates that cannot carry any geometric solution,
and it may pick one canonical member per symmetry orbit, but it must
never lose a whole class of solutions.

Total recovery (children tile the contour exactly) unlocks the strip
arguments: any region between a space and a wall, or between two
spaces, has to be tiled by other rooms, and no other room is thinner
than the smallest declared side.  So gaps strictly between 0 and that
minimum are impossible.  The static part carves those impossible
coordinate values out of domains at build time; the dynamic part checks
wall strips of placed spaces against the thinnest still-unplaced room,
failing only when no placed space reaches into the strip at all.
"""

from __future__ import annotations

from .fd import (
    Guard,
    LexLess,
    LinearEq,
    Propagator,
    PropStatus,
    dom_difference,
    dom_range,
)

NINETY = ("90", "90a", "90b")


def static_dmins(lay):
    for pair in lay.pair_list:
        others = [
            s
            for s in lay.children_of_floor(pair.a.floor)
            if s is not pair.a and s is not pair.b
        ]
        if others:
            pair.dmin = min(min(s.length.lb, s.width.lb) for s in others)
        else:
            pair.dmin = None


def install(lay):
    st = lay.store
    if lay.switches["total_recovery"]:
        for fl, contour in enumerate(lay.contours):
            kids = lay.children_of_floor(fl)
            if kids:
                st.post(LinearEq(contour.area, [(1, k.area) for k in kids]))
        if lay.switches["eliminate_incoherent"]:
            _static_holes(lay)
            for fl, contour in enumerate(lay.contours):
                kids = lay.children_of_floor(fl)
                if len(kids) >= 2:
                    st.post(StripWatch(contour, kids))
    if lay.switches["symmetry"]:
        for group in _symmetry_groups(lay):
            _post_group(lay, group)
    if lay.switches["topological_reduction"]:
        _install_topological(lay)
    if lay.switches["orientation_propagation"]:
        _install_ns_closure(lay)


# ---------------------------------------------------------------------------
# strips


def _static_holes(lay):
    st = lay.store
    for sp in lay.spaces:
        contour = lay.contours[sp.floor]
        if not contour.placed():
            continue
        ex1, ey1, ex2, ey2 = contour.coords()
        others = [o for o in lay.children_of_floor(sp.floor) if o is not sp]
        if not others:
            st.tell_eq(sp.x1, ex1)
            st.tell_eq(sp.y1, ey1)
            st.tell_eq(sp.x2, ex2)
            st.tell_eq(sp.y2, ey2)
            continue
        d = min(min(o.length.lb, o.width.lb) for o in others)
        if d < 2:
            continue
        for var, lo, hi in (
            (sp.x1, ex1 + 1, ex1 + d - 1),
            (sp.x2, ex2 - d + 1, ex2 - 1),
            (sp.y1, ey1 + 1, ey1 + d - 1),
            (sp.y2, ey2 - d + 1, ey2 - 1),
        ):
            holes = dom_range(lo, hi)
            if holes:
                allowed = dom_difference(((var.lb, var.ub),), holes)
                st.tell_dom(var, allowed)
    st.propagate()


class StripWatch(Propagator):
    """Fails a branch whose wall gaps are too thin for any unplaced room.

    Conservative: a wall strip of a placed space is condemned only when
    no other placed space reaches into it, so nothing feasible is cut;
    exactness at the leaves comes from the recovery area equation.
    """

    __slots__ = ("contour", "kids")

    def __init__(self, contour, kids):
        super().__init__()
        self.contour = contour
        self.kids = kids

    def setup(self, s):
        for k in self.kids:
            for v in (k.x1, k.y1, k.x2, k.y2):
                s.watch(v, self, inst=True)

    def run(self, s):
        if not self.contour.placed():
            return True
        ex1, ey1, ex2, ey2 = self.contour.coords()
        placed = [k for k in self.kids if k.placed()]
        unplaced = [k for k in self.kids if not k.placed()]
        if not unplaced:
            self.dissolve(s)
            return True
        dmin = min(min(k.length.lb, k.width.lb) for k in unplaced)
        for sp in placed:
            x1, y1, x2, y2 = sp.coords()
            strips = (
                (x1 - ex1, (ex1, y1, x1, y2)),
                (ex2 - x2, (x2, y1, ex2, y2)),
                (y1 - ey1, (x1, ey1, x2, y1)),
                (ey2 - y2, (x1, y2, x2, ey2)),
            )
            for gap, rect in strips:
                if 0 < gap < dmin and not self._reached(rect, sp, placed):
                    return False
        return True

    @staticmethod
    def _reached(rect, sp, placed):
        rx1, ry1, rx2, ry2 = rect
        for o in placed:
            if o is sp:
                continue
            ox1, oy1, ox2, oy2 = o.coords()
            if min(ox2, rx2) - max(ox1, rx1) > 0 and min(oy2, ry2) - max(oy1, ry1) > 0:
                return True
        return False


# ---------------------------------------------------------------------------
# interchangeable spaces


def _refs(rec):
    t = rec["type"]
    if t == "adjacent":
        return {rec["a"], rec["b"]}
    if t in ("on_side", "lit"):
        return {rec["space"]}
    if t == "bound":
        return {rec["var"][0]}
    if t == "ratio":
        return {rec["a"][0], rec["b"][0]}
    if t == "or":
        out = set()
        for br in rec["branches"]:
            for r in br:
                out |= _refs(r)
        return out
    if t == "stairs_adjacent":
        return {rec["stairs"], rec["space"]}
    if t == "stairs_link":
        return {rec["a"], rec["b"]}
    return set()


def _descriptor(rec, name):
    t = rec["type"]
    if t == "adjacent":
        role = "a" if rec["a"] == name else "b"
        other = rec["b"] if role == "a" else rec["a"]
        return (
            "adjacent",
            role,
            other,
            tuple(rec.get("d1") or (0, None)),
            tuple(rec.get("d2") or (0, 0)),
            tuple(rec.get("allowed") or ()),
        )
    if t == "on_side":
        return ("side", tuple(rec["sides"]))
    if t == "lit":
        return ("lit",)
    if t == "bound":
        return ("bound", rec["var"][1], rec.get("min"), rec.get("max"))
    if t == "ratio":
        (asp, aattr), (bsp, battr) = rec["a"], rec["b"]
        return (
            "ratio",
            ("*" if asp == name else asp, aattr),
            ("*" if bsp == name else bsp, battr),
            tuple(rec["low"]),
            tuple(rec["high"]),
        )
    if t == "or":
        return ("or", tuple(tuple(_descriptor(r, name) for r in br) for br in rec["branches"]))
    return (t, tuple(sorted((k, str(v)) for k, v in rec.items())))


def _symmetry_groups(lay):
    """Spaces with identical domains and identical constraint footprints."""
    if lay.problem.symmetry_groups is not None:
        return [[lay.space(n) for n in g] for g in lay.problem.symmetry_groups]
    footprints = {}
    for sp in lay.spaces:
        descs = sorted(
            str(_descriptor(rec, sp.name))
            for rec in lay.problem.constraints
            if sp.name in _refs(rec)
        )
        key = (
            sp.kind,
            sp.rotatable,
            sp.floor,
            sp.style if sp.kind == "stairs" else "",
            sp.decl_length,
            sp.decl_width,
            sp.area.dom,
            sp.x1.dom,
            sp.y1.dom,
            sp.x2.dom,
            sp.y2.dom,
            tuple(descs),
        )
        footprints.setdefault(key, []).append(sp)
    groups = []
    for members in footprints.values():
        if len(members) < 2:
            continue
        names = {m.name for m in members}
        clean = True
        for rec in lay.problem.constraints:
            if len(_refs(rec) & names) >= 2:
                clean = False
                break
        if clean:
            groups.append(sorted(members, key=lambda m: m.index))
    return groups


def _orient_var(lay, sp):
    for s, dv, _ in lay.orient_vars:
        if s is sp:
            return dv
    return None


def _klass(tag):
    return 0 if tag == "0" else 1


def _post_group(lay, group):
    st = lay.store
    use_gen = lay.switches["gen_symmetry"] and all(m.rotatable for m in group)
    for a, b in zip(group, group[1:]):
        if not use_gen:
            st.post(LexLess(a.x1, a.y1, b.x1, b.y1))
            continue
        va, vb = _orient_var(lay, a), _orient_var(lay, b)
        if va is None and vb is None:
            st.post(LexLess(a.x1, a.y1, b.x1, b.y1))
        elif va is None:
            # a is always unrotated; positions order only within equal class
            def when_b(s2, a=a, b=b, vb=vb):
                if _klass(vb.value) == 0:
                    return s2.post(LexLess(a.x1, a.y1, b.x1, b.y1)) is not PropStatus.FAILED
                return True

            st.post(Guard([vb], when_b))
        elif vb is None:
            # b is always unrotated, so a must be too, and positions order
            if not st.d_restrict(va, ("0",)):
                return
            st.post(LexLess(a.x1, a.y1, b.x1, b.y1))
        else:

            def a_rotated(s2, va=va, vb=vb):
                if _klass(va.value) == 1:
                    fam = tuple(t for t in vb.alphabet if t != "0")
                    return s2.d_restrict(vb, fam)
                return True

            def b_plain(s2, va=va, vb=vb):
                if _klass(vb.value) == 0:
                    return s2.d_restrict(va, ("0",))
                return True

            def both_known(s2, a=a, b=b, va=va, vb=vb):
                if _klass(va.value) == _klass(vb.value):
                    return s2.post(LexLess(a.x1, a.y1, b.x1, b.y1)) is not PropStatus.FAILED
                return True

            st.post(Guard([va], a_rotated))
            st.post(Guard([vb], b_plain))
            st.post(Guard([va, vb], both_known))


# ---------------------------------------------------------------------------
# wall-side and vertical-order inference

INVERSE = {"E": "W", "W": "E", "N": "S", "S": "N"}


def _install_topological(lay):
    st = lay.store
    for unit in lay.contour_units:
        sp = unit.space

        def action(s2, unit=unit, sp=sp):
            v = unit.con.var.value
            for o in lay.children_of_floor(sp.floor):
                if o is sp:
                    continue
                key = (min(sp.index, o.index), max(sp.index, o.index))
                pair = lay.pairs[key]
                drop = v if pair.a is sp else INVERSE[v]
                if not s2.d_remove(pair.rel, drop):
                    return False
            return True

        st.post(Guard([unit.con.var], action))


def _install_ns_closure(lay):
    """A north-of B and B north-of C forces A north-of C.

    Only the N/S values carry pure one-axis meaning, so only they chain.
    Derived assignments fire the same machinery, closing longer paths.
    """
    st = lay.store
    edges = []  # (below_index, above_index)

    def assign_above(s2, lo, hi):
        if lo == hi:
            return False
        key = (min(lo, hi), max(lo, hi))
        pair = lay.pairs.get(key)
        if pair is None:
            return True
        value = "N" if lo < hi else "S"
        return s2.d_assign(pair.rel, value)

    def add_edge(s2, lo, hi):
        derived = []
        for u, w in edges:
            if w == lo:
                derived.append((u, hi))
            if hi == u:
                derived.append((lo, w))
        edges.append((lo, hi))
        s2.trail.append(edges.pop)
        for u, w in derived:
            if not assign_above(s2, u, w):
                return False
        return True

    for pair in lay.pair_list:

        def action(s2, pair=pair):
            v = pair.rel.value
            if v == "N":
                return add_edge(s2, pair.a.index, pair.b.index)
            if v == "S":
                return add_edge(s2, pair.b.index, pair.a.index)
            return True

        st.post(Guard([pair.rel], action))

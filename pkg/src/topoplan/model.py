"""Problem description and per-space variable bundles.

A problem is a declarative record: a contour per floor, the child spaces
with their dimension domains, a constraint list, reduction switches and
an optional cost specification.  Building a problem turns every space
into seven finite-domain variables (x1, y1, x2, y2, length, width, area)
tied together by x2 = x1 + length, y2 = y1 + width, area = length * width.

Rotatable rooms branch over orientation.  The branches partition the set
of (length, width) pairs reachable by rotation, so enumerating branch
values never produces the same box twice:

  - equal declared domains: rotation changes nothing, one branch
  - disjoint domains: plain 0 and 90 branches
  - overlapping domains A (length) and B (width) with I = A & B:
    0 covers A x B, a first 90 branch covers (B - I) x A, a second
    covers I x (A - I); together that is exactly (A x B) | (B x A).
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .fd import Store, Sum, Prod, dom_difference, dom_intersect, dom_range, dom_union


def as_dom(spec, cap):
    """Normalize a dimension spec to an interval-union domain.

    Accepts an int, a (lo, hi) pair (hi of None meaning unbounded), or a
    list of such pairs.  `cap` bounds any open upper end.
    """
    if spec is None:
        return dom_range(1, cap)
    if isinstance(spec, int):
        return dom_range(spec, spec)
    if isinstance(spec, (list, tuple)) and spec and isinstance(spec[0], (list, tuple)):
        out = ()
        for pair in spec:
            out = dom_union(out, as_dom(tuple(pair), cap))
        return out
    lo, hi = spec
    if hi is None:
        hi = cap
    return dom_range(int(lo), int(hi))


@dataclass
class SpaceDef:
    """Declarative description of one rectangular space."""

    name: str
    kind: str = "room"  # room | corridor | stairs | contour
    length: object = None
    width: object = None
    area: object = None
    x1: object = None
    y1: object = None
    x2: object = None
    y2: object = None
    rotatable: bool = False
    floor: int = 0
    style: str = "simple"  # stairs only: simple | double


@dataclass
class Problem:
    name: str
    contours: list
    spaces: list
    constraints: list = field(default_factory=list)
    switches: dict = field(default_factory=dict)
    cost: dict = None
    module: float = 1.0
    symmetry_groups: list = None  # explicit override of the detected groups

    def __post_init__(self):
        if isinstance(self.contours, SpaceDef):
            self.contours = [self.contours]
        seen = set()
        for d in list(self.contours) + list(self.spaces):
            if d.name in seen:
                raise ValueError(f"duplicate space name {d.name!r}")
            seen.add(d.name)
        for i, c in enumerate(self.contours):
            c.kind = "contour"
            c.floor = i
        nfloors = len(self.contours)
        for d in self.spaces:
            if not 0 <= d.floor < nfloors:
                raise ValueError(f"space {d.name!r} on unknown floor {d.floor}")

    def switch(self, name, default=False):
        return bool(self.switches.get(name, default))

    def space_names(self):
        return [d.name for d in self.spaces]


DEFAULT_SWITCHES = {
    "total_recovery": False,
    "symmetry": True,
    "gen_symmetry": True,
    "topological_reduction": True,
    "orientation_propagation": True,
    "eliminate_incoherent": True,
    "corridor_alignment": False,
}


class Space:
    """Built variable bundle for one space."""

    __slots__ = (
        "name",
        "kind",
        "index",
        "floor",
        "rotatable",
        "style",
        "x1",
        "y1",
        "x2",
        "y2",
        "length",
        "width",
        "area",
        "decl_length",
        "decl_width",
        "orient",
        "config",
    )

    def __init__(self, name, kind, index, floor):
        self.name = name
        self.kind = kind
        self.index = index
        self.floor = floor
        self.rotatable = False
        self.style = "simple"
        self.orient = None
        self.config = None

    def coords(self):
        return (self.x1.value, self.y1.value, self.x2.value, self.y2.value)

    def placed(self):
        return all(v.instantiated for v in (self.x1, self.y1, self.x2, self.y2))

    def __repr__(self):
        return f"<Space {self.name}>"


def make_space(store: Store, defn: SpaceDef, index: int, span_x: int, span_y: int,
               at_origin: bool = False) -> Space:
    """Create the variable bundle and post the intra-space constraints."""
    sp = Space(defn.name, defn.kind, index, defn.floor)
    sp.rotatable = bool(defn.rotatable)
    sp.style = defn.style
    n = defn.name
    ldom = as_dom(defn.length, span_x)
    wdom = as_dom(defn.width, span_y)
    sp.decl_length = ldom
    sp.decl_width = wdom
    if sp.rotatable or defn.kind == "stairs":
        # either dimension may end up on either axis
        both = dom_union(ldom, wdom)
        ldom = wdom = both
    def coord_dom(spec, cap):
        if spec is None:
            return dom_range(0, cap)
        return dom_intersect(as_dom(spec, cap), dom_range(0, cap))

    if at_origin:
        sp.x1 = store.intvar(f"{n}.x1", 0, 0)
        sp.y1 = store.intvar(f"{n}.y1", 0, 0)
    else:
        sp.x1 = store.intvar(f"{n}.x1", 0, dom=coord_dom(defn.x1, span_x))
        sp.y1 = store.intvar(f"{n}.y1", 0, dom=coord_dom(defn.y1, span_y))
    sp.x2 = store.intvar(f"{n}.x2", 0, dom=coord_dom(defn.x2, span_x))
    sp.y2 = store.intvar(f"{n}.y2", 0, dom=coord_dom(defn.y2, span_y))
    sp.length = store.intvar(f"{n}.length", 0, dom=ldom)
    sp.width = store.intvar(f"{n}.width", 0, dom=wdom)
    amax = sp.length.ub * sp.width.ub
    sp.area = store.intvar(f"{n}.area", 0, dom=as_dom(defn.area, amax))
    store.post(Sum(sp.x2, sp.x1, sp.length))
    store.post(Sum(sp.y2, sp.y1, sp.width))
    store.post(Prod(sp.area, sp.length, sp.width))
    return sp


def orientation_branches(ldom, wdom):
    """Partition of the rotated box set into branch restrictions.

    Returns [(tag, length_dom, width_dom), ...]; a single entry means the
    space needs no orientation choice point.
    """
    if ldom == wdom:
        return [("0", ldom, wdom)]
    inter = dom_intersect(ldom, wdom)
    if not inter:
        return [("0", ldom, wdom), ("90", wdom, ldom)]
    out = [("0", ldom, wdom)]
    w_only = dom_difference(wdom, inter)
    l_only = dom_difference(ldom, inter)
    if w_only:
        out.append(("90a", w_only, ldom))
    if l_only:
        out.append(("90b", inter, l_only))
    return out


# -- stairs
#
# A staircase climbs toward one of the four compass directions.  Entry is
# the edge where the bottom step sits; for the simple style the exit is
# the opposite edge, for the double (switchback) style both entry and
# exit share the open-end edge and the first-step side doubles the
# configuration count without changing the box geometry.

CLIMB_ENTRY = {0: "W", 90: "S", 180: "E", 270: "N"}
OPPOSITE_SIDE = {"W": "E", "E": "W", "S": "N", "N": "S"}


def stairs_configs(style):
    degs = (0, 90, 180, 270)
    if style == "double":
        return tuple((d, fs) for d in degs for fs in ("left", "right"))
    return tuple((d, None) for d in degs)


def stairs_edges(deg, style):
    """(entry_edge, exit_edge) for a climb direction."""
    entry = CLIMB_ENTRY[deg]
    if style == "double":
        return entry, entry
    return entry, OPPOSITE_SIDE[entry]


def stairs_box(deg, climb_dom, across_dom):
    """(length_dom, width_dom) of the bounding box for a climb direction."""
    if deg in (0, 180):
        return climb_dom, across_dom
    return across_dom, climb_dom

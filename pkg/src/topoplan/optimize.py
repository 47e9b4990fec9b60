"""Geometric optimization of a fixed topology class.

A topology pins every relation and selection; what remains is a pure
numeric problem over positions and dimensions.  The cost is a weighted
sum of built-in criteria, scaled to integers so the solver can bound it
exactly, and branch-and-bound collects either one witness or the full
set of optimal placements.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from math import gcd

from . import fd
from .constraints import build_layout
from .enumerate import replay

CRITERIA = ("corridor_area", "internal_wall", "external_wall", "combined_wall", "extra_space")


def parse_cost(spec):
    """Normalize a cost spec into (name, num, den) rows plus the common scale."""
    if not spec or "criteria" not in spec or not spec["criteria"]:
        raise ValueError("cost specification needs a non-empty criteria list")
    rows = []
    scale = 1
    for c in spec["criteria"]:
        name = c.get("name")
        if name not in CRITERIA:
            raise ValueError(f"unknown cost criterion {name!r}")
        w = c.get("weight", [1, 1])
        if isinstance(w, int):
            num, den = w, 1
        else:
            num, den = int(w[0]), int(w[1])
        if den <= 0:
            raise ValueError("criterion weight denominator must be positive")
        rows.append((name, num, den))
        scale = scale * den // gcd(scale, den)
    return rows, scale


@dataclass
class CostModel:
    var: object
    scale: int
    rows: list

    def value(self, scaled):
        """Scaled integer cost back to the user's units."""
        if scaled is None:
            return None
        if scaled % self.scale == 0:
            return scaled // self.scale
        return scaled / self.scale


def build_cost(layout, spec=None):
    """Post cost = weighted criteria over the layout's variables."""
    spec = spec if spec is not None else layout.problem.cost
    rows, scale = parse_cost(spec)
    st = layout.store
    children = [sp for sp in layout.spaces]
    corridors = [sp for sp in children if sp.kind == "corridor"]

    acc = {}

    def add(coef, var):
        if coef:
            acc[var] = acc.get(var, 0) + coef

    for name, num, den in rows:
        iw = num * (scale // den)
        if name == "corridor_area":
            if not corridors:
                if iw > 0:
                    raise ValueError("corridor_area criterion with no corridor spaces")
                continue
            for sp in corridors:
                add(iw, sp.area)
        elif name == "internal_wall":
            for sp in children:
                add(iw, sp.length)
                add(iw, sp.width)
            for ct in layout.contours:
                add(-iw, ct.length)
                add(-iw, ct.width)
        elif name == "external_wall":
            for ct in layout.contours:
                add(2 * iw, ct.length)
                add(2 * iw, ct.width)
        elif name == "combined_wall":
            for sp in children:
                add(iw, sp.length)
                add(iw, sp.width)
            for ct in layout.contours:
                add(iw, ct.length)
                add(iw, ct.width)
        elif name == "extra_space":
            for ct in layout.contours:
                add(iw, ct.area)
            for sp in children:
                add(-iw, sp.area)

    terms = [(c, v) for v, c in acc.items() if c]
    lo = sum(min(c * v.lb, c * v.ub) for c, v in terms)
    hi = sum(max(c * v.lb, c * v.ub) for c, v in terms)
    cvar = st.intvar("cost", lo, hi)
    if terms:
        st.post(fd.LinearEq(cvar, terms))
    else:
        st.tell_eq(cvar, 0)
    return CostModel(cvar, scale, rows)


@dataclass
class OptimizedTopology:
    """One topology class with its optimal placements."""

    topology: object
    cost: object
    scaled_cost: int
    solutions: list
    first_cost: object
    steps_to_first: int
    steps_to_best: int
    elapsed: float = 0.0

    def best(self):
        return self.solutions[0] if self.solutions else None


def _decode(layout, sol):
    out = {}
    for sp in layout.spaces:
        n = sp.name
        x1 = sol[f"{n}.x1"]
        y1 = sol[f"{n}.y1"]
        l = sol[f"{n}.length"]
        w = sol[f"{n}.width"]
        out[n] = {"x1": x1, "y1": y1, "x2": x1 + l, "y2": y1 + w}
        if sp.config is not None:
            deg, step = sp.config.alphabet[sol[f"cfg:{n}"]]
            out[n]["climb"] = deg
            if step:
                out[n]["first_step"] = step
    return out


def optimize_topology(problem, topology, cost_spec=None, collect_all=True):
    """Minimal-cost placements within one topology class."""
    layout = replay(problem, topology.signature)
    if layout is None:
        return None
    cm = build_cost(layout, cost_spec)
    t0 = time.perf_counter()
    res = fd.minimize(layout.store, cm.var, layout.geom_vars(), collect_all=collect_all)
    elapsed = time.perf_counter() - t0
    if res is None:
        return None
    if collect_all:
        sols = [_decode(layout, s) for s in res.optima]
        if layout.switches.get("corridor_alignment"):
            sols = merge_slides(problem, sols)
    else:
        sols = [_decode(layout, res.witness)]
    return OptimizedTopology(
        topology=topology,
        cost=cm.value(res.best),
        scaled_cost=res.best,
        solutions=sols,
        first_cost=cm.value(res.first_cost),
        steps_to_first=res.steps_to_first,
        steps_to_best=res.steps_to_best,
        elapsed=elapsed,
    )


def optimize_all(problem, topologies, cost_spec=None, collect_all=True, progress=None):
    out = []
    for t in topologies:
        r = optimize_topology(problem, t, cost_spec, collect_all=collect_all)
        if r is not None:
            out.append(r)
        if progress is not None:
            progress(len(out), t)
    return out


def rank(results):
    """Stable order: cheapest first, topology index breaking ties."""
    return sorted(results, key=lambda r: (r.scaled_cost, r.topology.index))


# -- corridor slide merging
#
# Two corridors meeting end to end with equal cross-section can trade
# length without changing their union or any cost criterion built from
# dimension sums.  Those placements describe the same plan, so only the
# representative with the shortest first segment is kept.


def _slide_key(sol, a, b):
    A, B = sol[a], sol[b]
    if A["y1"] == B["y1"] and A["y2"] == B["y2"] and A["x2"] == B["x1"]:
        masked = ((a, A["x1"], A["y1"], None, A["y2"]), (b, None, B["y1"], B["x2"], B["y2"]))
        left_extent = A["x2"] - A["x1"]
    elif A["x1"] == B["x1"] and A["x2"] == B["x2"] and A["y2"] == B["y1"]:
        masked = ((a, A["x1"], A["y1"], A["x2"], None), (b, B["x1"], None, B["x2"], B["y2"]))
        left_extent = A["y2"] - A["y1"]
    else:
        return None, None
    rest = tuple(
        sorted((n, tuple(sorted(c.items()))) for n, c in sol.items() if n not in (a, b))
    )
    return (rest, masked), left_extent


def merge_slides(problem, sols):
    corridors = [s.name for s in problem.spaces if s.kind == "corridor"]
    for i in range(len(corridors)):
        for j in range(len(corridors)):
            if i == j:
                continue
            a, b = corridors[i], corridors[j]
            keep = []
            groups = {}
            for sol in sols:
                key, extent = _slide_key(sol, a, b)
                if key is None:
                    keep.append(sol)
                    continue
                prev = groups.get(key)
                if prev is None:
                    groups[key] = [extent, len(keep)]
                    keep.append(sol)
                elif extent < prev[0]:
                    prev[0] = extent
                    keep[prev[1]] = sol
            sols = keep
    return sols

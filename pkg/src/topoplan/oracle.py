"""Independent brute-force reference for small instances.

Everything here is written against the problem description alone, on
purpose: placements are enumerated recursively space by space, each
constraint is re-evaluated from raw coordinates, and class signatures
are recomputed from scratch.  None of the propagation machinery is
imported, so an agreement between this module and the search engine is
evidence, not tautology.

The search cost is bounded up front: the product of per-space candidate
counts must stay under a cap or the oracle refuses, rather than running
for hours.
"""

from __future__ import annotations

import random


class OracleRefusal(Exception):
    pass


# -- tiny local normalizers (deliberately not imported from the engine)


def _values(spec, cap):
    if spec is None:
        return list(range(1, cap + 1))
    if isinstance(spec, int):
        return [spec]
    if isinstance(spec, (list, tuple)) and spec and isinstance(spec[0], (list, tuple)):
        out = set()
        for pair in spec:
            out.update(_values(tuple(pair), cap))
        return sorted(out)
    lo, hi = spec
    if hi is None:
        hi = cap
    return list(range(int(lo), int(hi) + 1))


def _coord_values(spec, cap):
    if spec is None:
        return list(range(0, cap + 1))
    return [v for v in _values(spec, cap) if 0 <= v <= cap]


_ENTRY = {0: "W", 90: "S", 180: "E", 270: "N"}
_OPP = {"W": "E", "E": "W", "S": "N", "N": "S"}


def _configs(style):
    if style == "double":
        return [(d, fs) for d in (0, 90, 180, 270) for fs in ("left", "right")]
    return [(d, None) for d in (0, 90, 180, 270)]


def _edge_of(cfg, style, end):
    entry = _ENTRY[cfg[0]]
    if end == "entry":
        return entry
    return entry if style == "double" else _OPP[entry]


def rel_value(a, b):
    """Partition value for two non-overlapping boxes (x1, y1, x2, y2)."""
    if b[1] >= a[3]:
        return "N"
    if b[3] <= a[1]:
        return "S"
    if b[0] >= a[2]:
        return "E"
    return "W"


def _sep_contact(a, b, v):
    if v == "E":
        sep = b[0] - a[2]
    elif v == "W":
        sep = a[0] - b[2]
    elif v == "N":
        sep = b[1] - a[3]
    else:
        sep = a[1] - b[3]
    if v in ("E", "W"):
        contact = min(a[3], b[3]) - max(a[1], b[1])
    else:
        contact = min(a[2], b[2]) - max(a[0], b[0])
    return sep, contact


def _overlap(a, b):
    return min(a[2], b[2]) > max(a[0], b[0]) and min(a[3], b[3]) > max(a[1], b[1])


# -- constraint predicates on a full placement


def _adj_holds(rec, boxes):
    a, b = boxes[rec["a"]][0], boxes[rec["b"]][0]
    if _overlap(a, b):
        return False
    v = rel_value(a, b)
    allowed = rec.get("allowed")
    if allowed and v not in allowed:
        return False
    d1 = rec.get("d1") or (0, None)
    d2 = rec.get("d2") or (0, 0)
    sep, contact = _sep_contact(a, b, v)
    if sep < d2[0] or (d2[1] is not None and sep > d2[1]):
        return False
    if contact < d1[0] or (d1[1] is not None and contact > d1[1]):
        return False
    return True


def _side_ok(space_box, contour_box, side):
    if side == "N":
        return space_box[3] == contour_box[3]
    if side == "S":
        return space_box[1] == contour_box[1]
    if side == "W":
        return space_box[0] == contour_box[0]
    return space_box[2] == contour_box[2]


def _on_side_selection(rec, boxes, contour_boxes, floors):
    sp = rec["space"]
    box = boxes[sp][0]
    cbox = contour_boxes[floors[sp]]
    for side in rec["sides"]:
        if _side_ok(box, cbox, side):
            return side
    return None


def _ratio_holds(rec, boxes, dims):
    def val(ref):
        name, attr = ref
        box = boxes[name][0]
        if attr == "length":
            return box[2] - box[0]
        if attr == "width":
            return box[3] - box[1]
        if attr == "area":
            return (box[2] - box[0]) * (box[3] - box[1])
        return {"x1": box[0], "y1": box[1], "x2": box[2], "y2": box[3]}[attr]

    av, bv = val(rec["a"]), val(rec["b"])
    a1, b1 = rec["low"]
    a2, b2 = rec["high"]
    return a1 * bv <= b1 * av and b2 * av <= a2 * bv


def _stairs_adj_holds(rec, boxes, styles):
    st_box, st_cfg = boxes[rec["stairs"]]
    sp_box, _ = boxes[rec["space"]]
    edge = _edge_of(st_cfg, styles[rec["stairs"]], rec.get("end", "entry"))
    if edge == "W":
        return sp_box[2] == st_box[0] and sp_box[1] <= st_box[1] and sp_box[3] >= st_box[3]
    if edge == "E":
        return sp_box[0] == st_box[2] and sp_box[1] <= st_box[1] and sp_box[3] >= st_box[3]
    if edge == "S":
        return sp_box[3] == st_box[1] and sp_box[0] <= st_box[0] and sp_box[2] >= st_box[2]
    return sp_box[1] == st_box[3] and sp_box[0] <= st_box[0] and sp_box[2] >= st_box[2]


def _link_holds(rec, boxes):
    ba, ca = boxes[rec["a"]]
    bb, cb = boxes[rec["b"]]
    return ba == bb and ca == cb


def _holds(rec, ctx):
    t = rec["type"]
    if t == "adjacent":
        return _adj_holds(rec, ctx["boxes"])
    if t == "on_side":
        return _on_side_selection(rec, ctx["boxes"], ctx["contours"], ctx["floors"]) is not None
    if t == "lit":
        box = ctx["boxes"][rec["space"]][0]
        cbox = ctx["contours"][ctx["floors"][rec["space"]]]
        return any(_side_ok(box, cbox, side) for side in ("N", "S", "E", "W"))
    if t == "bound":
        name, attr = rec["var"]
        box = ctx["boxes"][name][0]
        vals = {
            "x1": box[0], "y1": box[1], "x2": box[2], "y2": box[3],
            "length": box[2] - box[0], "width": box[3] - box[1],
            "area": (box[2] - box[0]) * (box[3] - box[1]),
        }
        v = vals[attr]
        if rec.get("min") is not None and v < int(rec["min"]):
            return False
        if rec.get("max") is not None and v > int(rec["max"]):
            return False
        return True
    if t == "ratio":
        return _ratio_holds(rec, ctx["boxes"], None)
    if t == "stairs_adjacent":
        return _stairs_adj_holds(rec, ctx["boxes"], ctx["styles"])
    if t == "stairs_link":
        return _link_holds(rec, ctx["boxes"])
    if t == "or":
        b1 = all(_holds(r, ctx) for r in rec["branches"][0])
        b2 = all(_holds(r, ctx) for r in rec["branches"][1])
        return b1 or b2
    raise OracleRefusal(f"unknown constraint type {t!r}")


def boxes_of(witness):
    """Box table for a placement dict as the engine emits them."""
    out = {}
    for name, b in witness.items():
        cfg = (b["climb"], b.get("first_step")) if "climb" in b else None
        out[name] = ((b["x1"], b["y1"], b["x2"], b["y2"]), cfg)
    return out


def record_holds(rec, boxes, problem):
    """Pure-geometry truth of one record against placed boxes.

    Shares nothing with the propagation engine, so it doubles as an
    independent check on emitted witnesses.
    """
    contour_boxes = []
    for c in problem.contours:
        el = _values(c.length, 10**6)[-1]
        ew = _values(c.width, 10**6)[-1]
        contour_boxes.append((0, 0, el, ew))
    ctx = {
        "boxes": boxes,
        "contours": contour_boxes,
        "floors": {s.name: s.floor for s in problem.spaces},
        "styles": {s.name: s.style for s in problem.spaces},
    }
    return _holds(rec, ctx)


# -- cost criteria, recomputed from raw boxes


def _criterion(name, problem, boxes, contour_dims):
    kinds = {s.name: s.kind for s in problem.spaces}
    total_lw = 0
    total_area = 0
    corridor_area = 0
    for nm, (box, _) in boxes.items():
        l, w = box[2] - box[0], box[3] - box[1]
        total_lw += l + w
        total_area += l * w
        if kinds[nm] == "corridor":
            corridor_area += l * w
    e_lw = sum(el + ew for el, ew in contour_dims)
    e_area = sum(el * ew for el, ew in contour_dims)
    if name == "corridor_area":
        return corridor_area
    if name == "internal_wall":
        return total_lw - e_lw
    if name == "external_wall":
        return 2 * e_lw
    if name == "combined_wall":
        return total_lw + e_lw
    if name == "extra_space":
        return e_area - total_area
    raise OracleRefusal(f"unknown cost criterion {name!r}")


def _lcm(a, b):
    from math import gcd

    return a * b // gcd(a, b)


def _weight_pair(w):
    if isinstance(w, int):
        return w, 1
    return int(w[0]), int(w[1])


def placement_cost(problem, boxes, contour_dims):
    crits = problem.cost["criteria"]
    scale = 1
    for c in crits:
        scale = _lcm(scale, _weight_pair(c.get("weight", 1))[1])
    total = 0
    for c in crits:
        num, den = _weight_pair(c.get("weight", 1))
        total += num * (scale // den) * _criterion(c["name"], problem, boxes, contour_dims)
    return total


# -- symmetry groups and canonicalization (re-derived from the description)


def _rec_refs(rec):
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
                out |= _rec_refs(r)
        return out
    if t == "stairs_adjacent":
        return {rec["stairs"], rec["space"]}
    if t == "stairs_link":
        return {rec["a"], rec["b"]}
    return set()


def _rec_desc(rec, name):
    t = rec["type"]
    if t == "adjacent":
        role = "a" if rec["a"] == name else "b"
        other = rec["b"] if role == "a" else rec["a"]
        return str(("adjacent", role, other, rec.get("d1"), rec.get("d2"), rec.get("allowed")))
    if t == "on_side":
        return str(("side", tuple(rec["sides"])))
    if t == "lit":
        return str(("lit",))
    if t == "bound":
        return str(("bound", rec["var"][1], rec.get("min"), rec.get("max")))
    if t == "ratio":
        (asp, aattr), (bsp, battr) = rec["a"], rec["b"]
        return str(
            (
                "ratio",
                ("*" if asp == name else asp, aattr),
                ("*" if bsp == name else bsp, battr),
                tuple(rec["low"]),
                tuple(rec["high"]),
            )
        )
    if t == "or":
        return str(("or", tuple(tuple(_rec_desc(r, name) for r in br) for br in rec["branches"])))
    return str((t, tuple(sorted((k, str(v)) for k, v in rec.items()))))


def symmetry_groups(problem):
    if problem.symmetry_groups is not None:
        return [list(g) for g in problem.symmetry_groups]
    buckets = {}
    for sdef in problem.spaces:
        descs = sorted(
            _rec_desc(rec, sdef.name)
            for rec in problem.constraints
            if sdef.name in _rec_refs(rec)
        )
        key = (
            sdef.kind,
            sdef.rotatable,
            sdef.floor,
            sdef.style if sdef.kind == "stairs" else "",
            str(sdef.length),
            str(sdef.width),
            str(sdef.area),
            str((sdef.x1, sdef.y1, sdef.x2, sdef.y2)),
            tuple(descs),
        )
        buckets.setdefault(key, []).append(sdef.name)
    groups = []
    for names in buckets.values():
        if len(names) < 2:
            continue
        nameset = set(names)
        if any(len(_rec_refs(rec) & nameset) >= 2 for rec in problem.constraints):
            continue
        groups.append(names)
    return groups


def canonicalize(problem, boxes, groups):
    """Relabel interchangeable spaces so members follow (x1, y1) order."""
    if not groups:
        return boxes
    out = dict(boxes)
    for g in groups:
        entries = sorted((out[n] for n in g), key=lambda e: (e[0][0], e[0][1]))
        for n, e in zip(g, entries):
            out[n] = e
    return out


# -- the enumeration itself


def signature_labels(problem):
    labels = []
    pair_keys = []
    names = [s.name for s in problem.spaces]
    for fl in range(len(problem.contours)):
        kids = [i for i, s in enumerate(problem.spaces) if s.floor == fl]
        for a in range(len(kids)):
            for b in range(a + 1, len(kids)):
                i, j = kids[a], kids[b]
                labels.append(f"rel:{names[i]}/{names[j]}")
                pair_keys.append((i, j))
    side_recs = []
    or_recs = []
    for ridx, rec in enumerate(problem.constraints):
        if rec["type"] == "on_side":
            labels.append(f"side:{ridx}:{rec['space']}")
            side_recs.append(rec)
        elif rec["type"] == "or":
            labels.append(f"or:{ridx}")
            or_recs.append(rec)
    return labels, pair_keys, side_recs, or_recs


def _signature(problem, boxes, pair_keys, side_recs, or_recs, ctx):
    names = [s.name for s in problem.spaces]
    sig = []
    for i, j in pair_keys:
        sig.append(rel_value(boxes[names[i]][0], boxes[names[j]][0]))
    for rec in side_recs:
        sig.append(_on_side_selection(rec, boxes, ctx["contours"], ctx["floors"]))
    for rec in or_recs:
        b1 = all(_holds(r, ctx) for r in rec["branches"][0])
        sig.append(1 if b1 else 2)
    return tuple(sig)


def solve(problem, cap=10**8, node_cap=5 * 10**6):
    """All tilings, grouped into canonical signature classes.

    Returns {signature: {"count", "min_cost", "example"}} plus labels,
    via an OracleResult.

    Total-recovery problems use a cell-driven recursion: the first
    uncovered grid cell (row-major) must be the lower-left corner of
    the next rectangle, which every exact cover satisfies, so each
    tiling is generated exactly once.  Other problems fall back to
    declaration-order placement, refused up front when the raw product
    of per-space candidate counts exceeds the cap.  Both modes abort
    once the number of visited nodes passes node_cap.
    """
    contour_dims = []
    contour_boxes = []
    for c in problem.contours:
        el = _values(c.length, 10**6)[-1]
        ew = _values(c.width, 10**6)[-1]
        if not isinstance(c.length, int) or not isinstance(c.width, int):
            if len(_values(c.length, 10**6)) != 1 or len(_values(c.width, 10**6)) != 1:
                raise OracleRefusal("oracle needs fixed contour dimensions")
        contour_dims.append((el, ew))
        contour_boxes.append((0, 0, el, ew))

    floors = {s.name: s.floor for s in problem.spaces}
    styles = {s.name: s.style for s in problem.spaces}
    recovery = bool(problem.switches.get("total_recovery", False))

    candidates = []
    for sdef in problem.spaces:
        el, ew = contour_dims[sdef.floor]
        dims = set()
        if sdef.kind == "stairs":
            climb = _values(sdef.length, el)
            across = _values(sdef.width, ew)
            dimsets = []
            for cfg in _configs(sdef.style):
                if cfg[0] in (0, 180):
                    dimsets.append((cfg, climb, across))
                else:
                    dimsets.append((cfg, across, climb))
        else:
            ls = _values(sdef.length, el)
            ws = _values(sdef.width, ew)
            dimsets = [(None, ls, ws)]
            if sdef.rotatable:
                dimsets.append((None, ws, ls))
        areas = set(_values(sdef.area, el * ew)) if sdef.area is not None else None
        cands = []
        seen = set()
        for cfg, ls, ws in dimsets:
            for l in ls:
                for w in ws:
                    if areas is not None and l * w not in areas:
                        continue
                    for x1 in _coord_values(sdef.x1, el - l):
                        for y1 in _coord_values(sdef.y1, ew - w):
                            box = (x1, y1, x1 + l, y1 + w)
                            if sdef.x2 is not None and box[2] not in _coord_values(sdef.x2, el):
                                continue
                            if sdef.y2 is not None and box[3] not in _coord_values(sdef.y2, ew):
                                continue
                            key = (box, cfg)
                            if key not in seen:
                                seen.add(key)
                                cands.append(key)
        candidates.append(cands)

    raw = 1
    for c in candidates:
        raw *= max(len(c), 1)
        if raw > cap and not recovery:
            raise OracleRefusal(f"raw search space exceeds cap ({cap})")
    if any(not c for c in candidates):
        raw = 0

    labels, pair_keys, side_recs, or_recs = signature_labels(problem)
    groups = (
        symmetry_groups(problem)
        if problem.switches.get("symmetry", True)
        else []
    )
    for g in groups:
        for n in g:
            sdef = next(s for s in problem.spaces if s.name == n)
            if sdef.rotatable and sdef.length != sdef.width:
                raise OracleRefusal(
                    "canonicalization over rotatable interchangeable spaces is not supported"
                )

    names = [s.name for s in problem.spaces]
    n = len(names)
    floor_of = [s.floor for s in problem.spaces]
    group_prev = {}
    for g in groups:
        idxs = [names.index(nm) for nm in g]
        for a, b in zip(idxs, idxs[1:]):
            group_prev[b] = a

    classes = {}
    nodes = [0]

    def bump():
        nodes[0] += 1
        if nodes[0] > node_cap:
            raise OracleRefusal(f"node budget exceeded ({node_cap})")

    def leaf_ok(boxes, ctx):
        if recovery:
            for fl, (el, ew) in enumerate(contour_dims):
                s = sum(
                    (b[2] - b[0]) * (b[3] - b[1])
                    for nm, (b, _) in boxes.items()
                    if floors[nm] == fl
                )
                if s != el * ew:
                    return False
        for rec in problem.constraints:
            if not _holds(rec, ctx):
                return False
        return True

    def record(boxes):
        ctx = {"boxes": boxes, "contours": contour_boxes, "floors": floors, "styles": styles}
        if not leaf_ok(boxes, ctx):
            return
        cboxes = canonicalize(problem, boxes, groups)
        ctx2 = {"boxes": cboxes, "contours": contour_boxes, "floors": floors, "styles": styles}
        sig = _signature(problem, cboxes, pair_keys, side_recs, or_recs, ctx2)
        cost = placement_cost(problem, cboxes, contour_dims) if problem.cost else None
        cls = classes.get(sig)
        if cls is None:
            classes[sig] = {
                "count": 1,
                "min_cost": cost,
                "example": {nm: e[0] for nm, e in cboxes.items()},
            }
        else:
            cls["count"] += 1
            if cost is not None and cost < cls["min_cost"]:
                cls["min_cost"] = cost

    if recovery:
        # cell-driven exact cover, floor after floor
        by_corner = []
        for cands in candidates:
            d = {}
            for box, cfg in cands:
                d.setdefault((box[0], box[1]), []).append((box, cfg))
            by_corner.append(d)
        grids = [bytearray(el * ew) for el, ew in contour_dims]
        assigned = {}

        def first_empty(fl):
            el, ew = contour_dims[fl]
            g = grids[fl]
            for i in range(el * ew):
                if not g[i]:
                    return (i % el, i // el)
            return None

        def paint(fl, box, v):
            el, _ = contour_dims[fl]
            g = grids[fl]
            for y in range(box[1], box[3]):
                row = y * el
                for x in range(box[0], box[2]):
                    g[row + x] = v

        def free(fl, box):
            el, _ = contour_dims[fl]
            g = grids[fl]
            for y in range(box[1], box[3]):
                row = y * el
                for x in range(box[0], box[2]):
                    if g[row + x]:
                        return False
            return True

        def fill(fl):
            if fl == len(contour_dims):
                record({names[i]: assigned[i] for i in range(n)})
                return
            cell = first_empty(fl)
            if cell is None:
                if all(i in assigned for i in range(n) if floor_of[i] == fl):
                    fill(fl + 1)
                return
            for k in range(n):
                if floor_of[k] != fl or k in assigned:
                    continue
                prev = group_prev.get(k)
                if prev is not None and prev not in assigned:
                    continue
                for box, cfg in by_corner[k].get(cell, ()):
                    bump()
                    if not free(fl, box):
                        continue
                    paint(fl, box, 1)
                    assigned[k] = (box, cfg)
                    fill(fl)
                    del assigned[k]
                    paint(fl, box, 0)

        if raw and all(fl < len(contour_dims) for fl in floor_of):
            fill(0)
    else:
        placed = []

        def rec_place(k):
            if k == n:
                record({names[i]: placed[i] for i in range(n)})
                return
            fl = floor_of[k]
            for box, cfg in candidates[k]:
                bump()
                ok = True
                for i in range(k):
                    if floor_of[i] == fl and _overlap(placed[i][0], box):
                        ok = False
                        break
                if not ok:
                    continue
                placed.append((box, cfg))
                rec_place(k + 1)
                placed.pop()

        if raw:
            rec_place(0)

    return OracleResult(problem, labels, classes, raw, nodes[0])


class OracleResult:
    def __init__(self, problem, labels, classes, raw, nodes=0):
        self.problem = problem
        self.labels = labels
        self.classes = classes
        self.raw_size = raw
        self.nodes = nodes

    @property
    def n_classes(self):
        return len(self.classes)

    def signatures(self):
        return set(self.classes)


class Verdict:
    def __init__(self, ok, missing, extra, duplicates, cost_mismatches):
        self.ok = ok
        self.missing = missing
        self.extra = extra
        self.duplicates = duplicates
        self.cost_mismatches = cost_mismatches

    def __repr__(self):
        if self.ok:
            return "<Verdict ok>"
        return (
            f"<Verdict missing={len(self.missing)} extra={len(self.extra)} "
            f"dup={len(self.duplicates)} cost={len(self.cost_mismatches)}>"
        )


def compare(oracle_result, topologies, engine_costs=None):
    """Engine output vs oracle: same classes, emitted once, same minima."""
    engine_sigs = [t.signature for t in topologies]
    seen = set()
    duplicates = [s for s in engine_sigs if s in seen or seen.add(s)]
    eng = set(engine_sigs)
    orc = oracle_result.signatures()
    missing = sorted(orc - eng)
    extra = sorted(eng - orc)
    cost_mismatches = []
    if engine_costs is not None:
        for sig, cost in engine_costs.items():
            cls = oracle_result.classes.get(sig)
            if cls is not None and cls["min_cost"] is not None and cls["min_cost"] != cost:
                cost_mismatches.append((sig, cost, cls["min_cost"]))
    ok = not missing and not extra and not duplicates and not cost_mismatches
    return Verdict(ok, missing, extra, duplicates, cost_mismatches)


# -- seeded instances with a known tiling


def random_instance(seed):
    """A solvable tiling problem built by guillotine splits.

    The split cells themselves form one witness tiling, so the instance
    is feasible by construction; the sprinkled constraints are all
    satisfied by that witness.
    """
    from .model import Problem, SpaceDef

    rng = random.Random(seed)
    el = rng.randint(6, 11)
    ew = rng.randint(5, 10)
    cells = [(0, 0, el, ew)]
    target = rng.randint(3, 4)
    while len(cells) < target:
        idx = max(range(len(cells)), key=lambda i: (cells[i][2] - cells[i][0]) * (cells[i][3] - cells[i][1]))
        x1, y1, x2, y2 = cells.pop(idx)
        w, h = x2 - x1, y2 - y1
        if w >= 4 and (h < 4 or rng.random() < 0.5):
            cut = rng.randint(x1 + 2, x2 - 2)
            cells += [(x1, y1, cut, y2), (cut, y1, x2, y2)]
        elif h >= 4:
            cut = rng.randint(y1 + 2, y2 - 2)
            cells += [(x1, y1, x2, cut), (x1, cut, x2, y2)]
        else:
            cells.append((x1, y1, x2, y2))
            break

    spaces = []
    for i, (x1, y1, x2, y2) in enumerate(cells):
        w, h = x2 - x1, y2 - y1
        slack = rng.choice([0, 1])
        spaces.append(
            SpaceDef(
                f"r{i}",
                length=[max(1, w - slack), min(el, w + slack)],
                width=[max(1, h - slack), min(ew, h + slack)],
            )
        )

    constraints = []
    for i in range(len(cells)):
        for j in range(i + 1, len(cells)):
            a, b = cells[i], cells[j]
            if _overlap(a, b):
                continue
            v = rel_value(a, b)
            sep, contact = _sep_contact(a, b, v)
            if sep == 0 and contact >= 1 and rng.random() < 0.5:
                constraints.append(
                    {"type": "adjacent", "a": f"r{i}", "b": f"r{j}", "d1": [1, None], "d2": [0, 0]}
                )
    for i, cell in enumerate(cells):
        cbox = (0, 0, el, ew)
        on = [s for s in ("S", "W", "N", "E") if _side_ok(cell, cbox, s)]
        if on and rng.random() < 0.5:
            constraints.append({"type": "on_side", "space": f"r{i}", "sides": on})
            break

    return Problem(
        name=f"rand{seed}",
        contours=SpaceDef("contour", length=el, width=ew),
        spaces=spaces,
        constraints=constraints,
        switches={"total_recovery": True},
        cost={"criteria": [{"name": "internal_wall", "weight": [1, 1]}]},
    )

"""Problem and solution files.

Problems are stored as `layout-problem/1` JSON documents; enumeration
output as `layout-solutions/1`.  Saving is canonical (sorted keys, two
space indent, trailing newline) so files diff cleanly and their sha256
identifies the problem a solution file belongs to.
"""

from __future__ import annotations

import hashlib
import json

from .model import DEFAULT_SWITCHES, Problem, SpaceDef

PROBLEM_FORMAT = "layout-problem/1"
SOLUTIONS_FORMAT = "layout-solutions/1"

_SPACE_FIELDS = ("length", "width", "area", "x1", "y1", "x2", "y2")


def _space_to_dict(sdef: SpaceDef):
    d = {"name": sdef.name}
    if sdef.kind != "room":
        d["kind"] = sdef.kind
    for f in _SPACE_FIELDS:
        v = getattr(sdef, f)
        if v is not None:
            d[f] = list(v) if isinstance(v, tuple) else v
    if sdef.rotatable:
        d["rotatable"] = True
    if sdef.floor:
        d["floor"] = sdef.floor
    if sdef.kind == "stairs" and sdef.style != "simple":
        d["style"] = sdef.style
    return d


def _space_from_dict(d) -> SpaceDef:
    def norm(v):
        if isinstance(v, list):
            return [norm(x) for x in v]
        return v

    kw = {f: norm(d[f]) for f in _SPACE_FIELDS if f in d}
    return SpaceDef(
        d["name"],
        kind=d.get("kind", "room"),
        rotatable=bool(d.get("rotatable", False)),
        floor=int(d.get("floor", 0)),
        style=d.get("style", "simple"),
        **kw,
    )


def problem_to_dict(problem: Problem):
    d = {
        "format": PROBLEM_FORMAT,
        "name": problem.name,
        "module": problem.module,
        "contours": [_space_to_dict(c) for c in problem.contours],
        "spaces": [_space_to_dict(s) for s in problem.spaces],
        "constraints": problem.constraints,
        "switches": {k: v for k, v in problem.switches.items() if DEFAULT_SWITCHES.get(k) != v},
    }
    if problem.cost:
        d["cost"] = problem.cost
    if problem.symmetry_groups is not None:
        d["symmetry_groups"] = [list(g) for g in problem.symmetry_groups]
    return d


def problem_from_dict(d) -> Problem:
    if d.get("format", PROBLEM_FORMAT) != PROBLEM_FORMAT:
        raise ValueError(f"not a {PROBLEM_FORMAT} document")
    contours = d.get("contours", d.get("contour"))
    if isinstance(contours, dict):
        contours = [contours]
    return Problem(
        name=d.get("name", "unnamed"),
        contours=[_space_from_dict(c) for c in contours],
        spaces=[_space_from_dict(s) for s in d.get("spaces", [])],
        constraints=d.get("constraints", []),
        switches=d.get("switches", {}),
        cost=d.get("cost"),
        module=d.get("module", 1.0),
        symmetry_groups=d.get("symmetry_groups"),
    )


def canonical_json(d) -> str:
    return json.dumps(d, sort_keys=True, indent=2) + "\n"


def problem_hash(problem: Problem) -> str:
    return hashlib.sha256(canonical_json(problem_to_dict(problem)).encode()).hexdigest()


def save_problem(problem: Problem, path):
    with open(path, "w") as fh:
        fh.write(canonical_json(problem_to_dict(problem)))


def load_problem(source) -> Problem:
    if isinstance(source, dict):
        return problem_from_dict(source)
    with open(source) as fh:
        return problem_from_dict(json.load(fh))


# -- enumeration output


def _sig_entry(value):
    if isinstance(value, tuple):
        return list(value)
    return value


def solutions_to_dict(problem, result, optimized=None):
    """Serializable record of an enumeration (and optional optimization).

    `optimized` maps topology index -> OptimizedTopology.
    """
    topos = []
    for t in result.topologies:
        entry = {
            "index": t.index,
            "signature": {lab: _sig_entry(v) for lab, v in zip(t.labels, t.signature)},
            "witness": t.witness,
        }
        if optimized and t.index in optimized:
            opt = optimized[t.index]
            entry["cost"] = opt.cost
            entry["solutions"] = opt.solutions
        topos.append(entry)
    return {
        "format": SOLUTIONS_FORMAT,
        "problem": {"name": problem.name, "sha256": problem_hash(problem)},
        "counts": {
            "candidates": result.candidates,
            "n1": result.n1,
            "n2": result.n2,
            "nodes": result.nodes,
            "elapsed": round(result.elapsed, 3),
        },
        "aborted": result.aborted,
        "topologies": topos,
    }


def save_solutions(problem, result, path, optimized=None):
    with open(path, "w") as fh:
        fh.write(canonical_json(solutions_to_dict(problem, result, optimized)))


def load_solutions(path):
    with open(path) as fh:
        d = json.load(fh)
    if d.get("format") != SOLUTIONS_FORMAT:
        raise ValueError(f"not a {SOLUTIONS_FORMAT} document")
    return d


# -- grid rescaling
#
# All coordinates live on an integer grid whose physical pitch is the
# module.  Refining the grid k-fold multiplies every linear quantity by
# k and every area by k*k; it is an explicit operation, never applied
# behind the user's back.


def _scale_spec(spec, k, power=1):
    if spec is None:
        return None
    f = k**power
    if isinstance(spec, int):
        return spec * f
    if spec and isinstance(spec[0], (list, tuple)):
        return [_scale_spec(list(p), k, power) for p in spec]
    lo, hi = spec
    return [lo * f, None if hi is None else hi * f]


def _scale_space(sdef: SpaceDef, k) -> SpaceDef:
    return SpaceDef(
        sdef.name,
        kind=sdef.kind,
        length=_scale_spec(sdef.length, k),
        width=_scale_spec(sdef.width, k),
        area=_scale_spec(sdef.area, k, power=2),
        x1=_scale_spec(sdef.x1, k),
        y1=_scale_spec(sdef.y1, k),
        x2=_scale_spec(sdef.x2, k),
        y2=_scale_spec(sdef.y2, k),
        rotatable=sdef.rotatable,
        floor=sdef.floor,
        style=sdef.style,
    )


def _scale_record(rec, k):
    out = dict(rec)
    for key in ("d1", "d2"):
        if out.get(key) is not None:
            lo, hi = out[key]
            out[key] = [lo * k, None if hi is None else hi * k]
    if rec["type"] == "or":
        out["branches"] = [[_scale_record(r, k) for r in br] for br in rec["branches"]]
    if rec["type"] == "bound":
        f = k**2 if rec["var"][1] == "area" else k
        for key in ("min", "max"):
            if out.get(key) is not None:
                out[key] = out[key] * f
    return out


def rescale(problem: Problem, k: int) -> Problem:
    """The same problem on a grid k times finer."""
    if not isinstance(k, int) or k < 1:
        raise ValueError("rescale factor must be a positive integer")
    return Problem(
        name=problem.name,
        contours=[_scale_space(c, k) for c in problem.contours],
        spaces=[_scale_space(s, k) for s in problem.spaces],
        constraints=[_scale_record(r, k) for r in problem.constraints],
        switches=dict(problem.switches),
        cost=problem.cost,
        module=problem.module / k,
        symmetry_groups=problem.symmetry_groups,
    )

"""Staged enumeration of topological solution classes.

A topological solution is a full assignment of the discrete decision
variables that survive into a class signature: every pair relation,
every contour-side selection, every or-branch selection.  Orientation
and staircase configurations are branched during the search (they steer
propagation) but stay out of the signature, so one class covers all
rotations of its members; a signature reached again under a different
orientation context is re-checked rather than re-counted.

Stage order:

  A. staircase configurations, declaration order
  B. room orientations, declaration order
  C. or-branch selections, declaration order
  D. spaces one at a time: the next space is the one tied to the most
     already-placed or contour constraints (ties: smaller dimension
     domain product, then declaration order); its contour selections
     branch first, then its relations to placed spaces, adjacency
     pairs before plain ones.

Each leaf yields a candidate signature.  A first-seen signature is
checked for geometric consistency (first solution found becomes the
witness); consistent signatures are emitted in discovery order.
"""

from __future__ import annotations

import time

from .constraints import Layout, build_layout, check_consistency
from .fd import PropStatus


class EnumAborted(Exception):
    pass


class Topology:
    __slots__ = ("index", "signature", "labels", "witness")

    def __init__(self, index, signature, labels, witness):
        self.index = index
        self.signature = signature
        self.labels = labels
        self.witness = witness

    def signature_dict(self):
        return dict(zip(self.labels, self.signature))

    def __repr__(self):
        return f"<Topology {self.index}>"


class EnumResult:
    def __init__(self, layout):
        self.layout = layout
        self.problem = layout.problem
        self.topologies = []
        self.candidates = 0
        self.n1 = 0
        self.n2 = 0
        self.nodes = 0
        self.elapsed = 0.0
        self.aborted = False

    def summary(self):
        return {
            "problem": self.problem.name,
            "spaces": len(self.problem.spaces),
            "candidates": self.candidates,
            "n1": self.n1,
            "n2": self.n2,
            "nodes": self.nodes,
            "elapsed": round(self.elapsed, 3),
            "aborted": self.aborted,
        }


def enumerate_topologies(source, progress=None, max_classes=None):
    """Run the staged search.  `source` is a Problem or a fresh Layout.

    `progress` is called after every candidate with the running result;
    returning False aborts.  `max_classes` stops after that many
    consistent classes.
    """
    lay = source if isinstance(source, Layout) else build_layout(source)
    st = lay.store
    result = EnumResult(lay)
    t0 = time.monotonic()
    if st.failed:
        return result
    labels = tuple(label for label, _ in lay.sig_items)
    seen = {}

    pre_vars = [dv for _, dv in lay.config_vars]
    pre_vars += [dv for _, dv, _ in lay.orient_vars]

    # or-selections branch at the first point all referenced spaces are
    # placed: early enough for the branch constraints to prune the rest
    # of the placement, late enough not to multiply the whole tree
    or_ready = [(u.sel, frozenset(u.parts)) for u in lay.or_units]

    space_units = {
        sp.name: [u for u in lay.contour_units if u.space is sp] for sp in lay.spaces
    }

    def leaf():
        result.candidates += 1
        sig = lay.signature()
        status = seen.get(sig)
        if status is None:
            result.n1 += 1
        if status is not True:
            sol = check_consistency(lay)
            if sol is not None:
                result.topologies.append(Topology(len(result.topologies), sig, labels, sol))
                result.n2 += 1
                seen[sig] = True
            else:
                seen[sig] = False
        if progress is not None and progress(result) is False:
            raise EnumAborted
        if max_classes is not None and result.n2 >= max_classes:
            raise EnumAborted

    def branch(dv, cont):
        if dv.instantiated:
            cont()
            return
        for v in dv.values():
            result.nodes += 1
            m = st.push()
            if st.d_assign(dv, v) and st.propagate() is PropStatus.FIXPOINT:
                cont()
            st.pop(m)

    def stage_pre(i):
        if i == len(pre_vars):
            stage_place([])
        else:
            branch(pre_vars[i], lambda: stage_pre(i + 1))

    def pick_next(placed_names):
        best = None
        best_key = None
        for sp in lay.spaces:
            if sp.name in placed_names:
                continue
            score = lay.contour_count[sp.name] + len(
                lay.adj_partners[sp.name] & placed_names
            )
            key = (-score, sp.length.size * sp.width.size, sp.index)
            if best is None or key < best_key:
                best, best_key = sp, key
        return best

    def stage_place(placed):
        if len(placed) == len(lay.spaces):
            leaf()
            return
        placed_names = {p.name for p in placed}
        s = pick_next(placed_names)
        items = [u.con.var for u in space_units[s.name]]
        pairs = []
        for p in placed:
            if p.floor != s.floor:
                continue
            key = (min(s.index, p.index), max(s.index, p.index))
            pairs.append(lay.pairs[key])
        pairs.sort(key=lambda pr: 0 if pr.has_explicit else 1)
        items += [pr.rel for pr in pairs]

        now_placed = placed_names | {s.name}
        sels = [
            sel
            for sel, parts in or_ready
            if not sel.instantiated and parts <= now_placed
        ]
        items += sels

        def walk(k):
            if k == len(items):
                stage_place(placed + [s])
            else:
                branch(items[k], lambda: walk(k + 1))

        walk(0)

    try:
        stage_pre(0)
    except EnumAborted:
        result.aborted = True
    result.elapsed = time.monotonic() - t0
    return result


# ---------------------------------------------------------------------------
# working with emitted classes


def diff_topologies(a: Topology, b: Topology):
    """Signature entries where two classes disagree."""
    out = {}
    for lbl, va, vb in zip(a.labels, a.signature, b.signature):
        if va != vb:
            out[lbl] = (va, vb)
    return out


def filter_topologies(topologies, wanted: dict):
    """Classes whose signature matches every (label, value) in `wanted`."""
    out = []
    for t in topologies:
        d = t.signature_dict()
        if all(d.get(k) == v for k, v in wanted.items()):
            out.append(t)
    return out


def hypothetical_filter(problem, topologies, records):
    """Indices of the classes still consistent under extra constraints.

    Hypothetical: every class is re-checked on a fresh layout, nothing
    about the enumeration state changes.
    """
    out = []
    for t in topologies:
        _, witness = refine(problem, t, records)
        if witness is not None:
            out.append(t.index)
    return out


def replay(problem, signature):
    """Fresh layout with a class signature applied; None if inconsistent."""
    lay = build_layout(problem)
    if lay.store.failed:
        return None
    if not lay.apply_signature(signature):
        return None
    return lay


def refine(problem, topology: Topology, extra_constraints):
    """Re-check one class under additional constraints.

    Returns (layout, witness): the layout carries the extended problem
    with the class signature applied by label; witness is None when the
    refined class is empty.  Selection variables introduced by the new
    constraints are labeled along with the geometry.
    """
    import copy

    from .fd import label as fd_label

    p2 = copy.deepcopy(problem)
    p2.constraints = list(p2.constraints) + list(extra_constraints)
    lay = build_layout(p2)
    if lay.store.failed:
        return lay, None
    by_label = topology.signature_dict()
    st = lay.store
    for lbl, dv in lay.sig_items:
        v = by_label.get(lbl)
        if v is None:
            continue
        if not st.d_assign(dv, tuple(v) if isinstance(v, list) else v):
            return lay, None
    if st.propagate() is PropStatus.FAILED:
        return lay, None
    new_sel = [dv for lbl, dv in lay.sig_items if lbl not in by_label]
    mark = st.push()
    witness = None
    for _ in fd_label(st, new_sel + lay.geom_vars()):
        witness = lay.solution()
        break
    st.pop(mark)
    return lay, witness

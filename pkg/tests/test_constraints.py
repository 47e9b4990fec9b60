"""Constraint unit semantics on small hand-checkable instances."""

import pytest

from topoplan.constraints import build_layout, check_consistency
from topoplan.enumerate import enumerate_topologies, refine
from topoplan.model import Problem, SpaceDef


def _prob(spaces, cons, el=4, ew=3, **kw):
    kw.setdefault("switches", {"symmetry": False})
    return Problem("t", SpaceDef("f", length=el, width=ew), spaces, constraints=cons, **kw)


def _classes(p, **kw):
    return enumerate_topologies(p, **kw)


# -- pair relations


def test_fixed_boxes_get_the_expected_relation_value():
    p = _prob(
        [
            SpaceDef("a", length=2, width=3, x1=0, y1=0),
            SpaceDef("b", length=2, width=3, x1=2, y1=0),
        ],
        [],
    )
    r = _classes(p)
    assert r.n2 == 1
    # the value names where b sits relative to a
    assert r.topologies[0].signature_dict()["rel:a/b"] == "E"


def test_adjacency_contact_length_band():
    # b can slide one module up; an exact contact of 1 forces it
    p = _prob(
        [
            SpaceDef("a", length=2, width=2, x1=0, y1=0),
            SpaceDef("b", length=2, width=2),
        ],
        [{"type": "adjacent", "a": "a", "b": "b", "d1": [1, 1], "d2": [0, 0]}],
    )
    r = _classes(p)
    assert r.n2 == 1
    w = r.topologies[0].witness
    assert w["b"] == {"x1": 2, "y1": 1, "x2": 4, "y2": 3}


def test_adjacency_distance_band_keeps_a_gap():
    p = _prob(
        [
            SpaceDef("a", length=2, width=2, x1=0, y1=0),
            SpaceDef("b", length=2, width=2, y1=0),
        ],
        [{"type": "adjacent", "a": "a", "b": "b", "d1": [1, None], "d2": [1, 1]}],
        el=5,
        ew=2,
    )
    r = _classes(p)
    assert r.n2 == 1
    assert r.topologies[0].witness["b"]["x1"] == 3


# -- side constraints: ordered selection


def test_on_side_tries_sides_in_listed_order():
    p = _prob(
        [SpaceDef("a", length=2, width=(1, 3))],
        [{"type": "on_side", "space": "a", "sides": ["N", "S"]}],
    )
    r = _classes(p)
    by_side = {}
    for t in r.topologies:
        side = next(v for k, v in t.signature_dict().items() if k.startswith("side:"))
        by_side[side] = t.witness["a"]
    assert set(by_side) == {"N", "S"}
    assert by_side["N"]["y2"] == 3
    # S selected only where N failed, so the box may not reach the north wall
    assert by_side["S"]["y1"] == 0 and by_side["S"]["y2"] < 3


def test_lit_is_satisfied_on_any_wall_and_adds_no_class():
    p = _prob(
        [SpaceDef("a", length=2, width=2)],
        [{"type": "lit", "space": "a"}],
        el=4,
        ew=4,
    )
    r = _classes(p)
    assert (r.n1, r.n2) == (1, 1)
    w = r.topologies[0].witness["a"]
    assert (
        w["x1"] == 0 or w["y1"] == 0 or w["x2"] == 4 or w["y2"] == 4
    )


def test_lit_fails_for_a_box_pinned_to_the_interior():
    p = _prob(
        [SpaceDef("a", length=2, width=2, x1=1, y1=1)],
        [{"type": "lit", "space": "a"}],
        el=4,
        ew=4,
    )
    assert _classes(p).n2 == 0


def test_contour_touch_forces_the_last_feasible_wall():
    # x-range keeps it off east and west, a floor bound keeps it off south
    p = _prob(
        [SpaceDef("a", length=2, width=2, x1=1)],
        [
            {"type": "lit", "space": "a"},
            {"type": "bound", "var": ["a", "y1"], "min": 1},
        ],
        el=5,
        ew=5,
    )
    lay = build_layout(p)
    sp = lay.space("a")
    assert (sp.y1.value, sp.y2.value) == (3, 5)


# -- attribute clamps and ratio bands


def test_bound_clamps_during_propagation_and_rejects_empty_records():
    p = _prob(
        [SpaceDef("a", length=(2, 5), width=2)],
        [{"type": "bound", "var": ["a", "length"], "min": 3, "max": 4}],
        el=6,
        ew=2,
    )
    lay = build_layout(p)
    assert (lay.space("a").length.lb, lay.space("a").length.ub) == (3, 4)
    bad = _prob([SpaceDef("a", area=2)], [{"type": "bound", "var": ["a", "area"]}])
    with pytest.raises(ValueError, match="bound"):
        build_layout(bad)


def test_ratio_band_prunes_the_slack_dimension():
    p = _prob(
        [SpaceDef("a", length=(1, 6), width=2)],
        [{"type": "ratio", "a": ["a", "length"], "b": ["a", "width"],
          "low": [1, 1], "high": [2, 1]}],
        el=6,
        ew=2,
    )
    lay = build_layout(p)
    assert (lay.space("a").length.lb, lay.space("a").length.ub) == (2, 4)
    bad = dict(p.constraints[0], low=[3, 1], high=[2, 1])
    with pytest.raises(ValueError, match="ratio"):
        build_layout(_prob([SpaceDef("a", length=(1, 6), width=2)], [bad], el=6, ew=2))


# -- disjunction as a partition


def test_or_second_branch_carries_the_negation_of_the_first():
    p = _prob(
        [
            SpaceDef("a", length=2, width=2, x1=0, y1=0),
            SpaceDef("b", length=2, width=2),
            SpaceDef("c", length=2, width=2),
        ],
        [
            {
                "type": "or",
                "branches": [
                    [{"type": "adjacent", "a": "b", "b": "a", "d1": [1, None], "d2": [0, 0]}],
                    [{"type": "adjacent", "a": "c", "b": "a", "d1": [1, None], "d2": [0, 0]}],
                ],
            }
        ],
        el=6,
        ew=2,
        switches={"symmetry": False, "total_recovery": True},
    )
    r = _classes(p)
    found = set()
    for t in r.topologies:
        sel = next(v for k, v in t.signature_dict().items() if k.startswith("or:"))
        found.add(sel)
        mid = {name: box for name, box in t.witness.items() if box["x1"] == 2}
        if sel == 2:
            # b adjacent-to-a placements must go through branch 1 only
            assert list(mid) == ["c"]
    assert found == {1, 2}


def test_or_rejects_side_records_inside_branches():
    rec = {
        "type": "or",
        "branches": [
            [{"type": "on_side", "space": "a", "sides": ["N"]}],
            [{"type": "on_side", "space": "a", "sides": ["S"]}],
        ],
    }
    with pytest.raises(ValueError, match="not allowed"):
        build_layout(_prob([SpaceDef("a", length=2, width=2)], [rec]))


# -- layout plumbing


def test_attr_var_and_space_lookup_validation():
    lay = build_layout(_prob([SpaceDef("a", length=2, width=2)], []))
    with pytest.raises(ValueError, match="attribute"):
        lay.attr_var(["a", "perimeter"])
    with pytest.raises(KeyError):
        lay.space("nope")


def test_pairs_do_not_cross_floors():
    p = Problem(
        "t",
        [SpaceDef("f0", length=4, width=3), SpaceDef("f1", length=4, width=3)],
        [SpaceDef("a", length=2, width=2), SpaceDef("b", length=2, width=2, floor=1)],
        constraints=[{"type": "adjacent", "a": "a", "b": "b", "d2": [0, 0]}],
        switches={"symmetry": False},
    )
    with pytest.raises(ValueError, match="floors"):
        build_layout(p)


def test_domains_snapshot_covers_every_attribute():
    lay = build_layout(_prob([SpaceDef("a", length=2, width=(1, 2))], []))
    d = lay.domains()
    assert set(d) == {"a"}
    assert set(d["a"]) == {"x1", "y1", "x2", "y2", "length", "width", "area"}
    assert d["a"]["length"] == [[2, 2]]


# -- stairs


def _stairs_problem():
    return Problem(
        "t",
        [SpaceDef("f0", length=4, width=3), SpaceDef("f1", length=4, width=3)],
        [
            SpaceDef("s0", kind="stairs", length=2, width=1),
            SpaceDef("hall", length=(1, 4), width=(1, 3)),
            SpaceDef("s1", kind="stairs", length=2, width=1, floor=1),
        ],
        constraints=[
            {"type": "stairs_adjacent", "stairs": "s0", "space": "hall", "end": "entry"},
            {"type": "stairs_link", "a": "s0", "b": "s1"},
        ],
        switches={"symmetry": False},
    )


def test_stairwell_boxes_align_across_floors():
    r = _classes(_stairs_problem())
    assert r.n2 > 0
    for t in r.topologies:
        w = t.witness
        assert w["s0"]["x1"] == w["s1"]["x1"]
        assert w["s0"]["y2"] == w["s1"]["y2"]
        assert w["s0"]["climb"] == w["s1"]["climb"]


def test_stairs_entry_edge_fully_covered_by_the_serving_space():
    r = _classes(_stairs_problem())
    seen_degs = set()
    for t in r.topologies:
        w = t.witness
        deg = w["s0"]["climb"]
        seen_degs.add(deg)
        s, h = w["s0"], w["hall"]
        if deg == 0:  # climbs east, entry on the west edge
            assert h["x2"] == s["x1"] and h["y1"] <= s["y1"] and h["y2"] >= s["y2"]
        elif deg == 180:
            assert h["x1"] == s["x2"] and h["y1"] <= s["y1"] and h["y2"] >= s["y2"]
        elif deg == 90:
            assert h["y2"] == s["y1"] and h["x1"] <= s["x1"] and h["x2"] >= s["x2"]
        else:
            assert h["y1"] == s["y2"] and h["x1"] <= s["x1"] and h["x2"] >= s["x2"]
    assert len(seen_degs) > 1


# -- refinement rebuilds


def test_refine_reapplies_a_signature_with_extra_records():
    p = _prob(
        [SpaceDef("a", length=2, width=(1, 3)), SpaceDef("b", length=2, width=(1, 3))],
        [{"type": "adjacent", "a": "a", "b": "b", "d1": [1, None], "d2": [0, 0]}],
        el=4,
        ew=3,
    )
    r = _classes(p)
    t = r.topologies[0]
    lay, witness = refine(p, t, [{"type": "bound", "var": ["a", "width"], "min": 3}])
    assert witness is None or witness["a"]["y2"] - witness["a"]["y1"] >= 3
    assert lay is not None

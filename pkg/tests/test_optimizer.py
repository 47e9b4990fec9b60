"""Per-class geometric minimization and ranking."""

from topoplan.enumerate import enumerate_topologies
from topoplan.model import Problem, SpaceDef
from topoplan.optimize import merge_slides, optimize_all, optimize_topology, rank
from topoplan.oracle import boxes_of, placement_cost


def _strip(cost=None):
    return Problem(
        "strip",
        SpaceDef("f", length=6, width=2),
        [SpaceDef(f"r{i}", length=2, width=2) for i in range(3)],
        switches={"symmetry": False, "total_recovery": True},
        cost=cost or {"criteria": [{"name": "internal_wall", "weight": 1}]},
    )


def test_every_class_reaches_the_partition_wall_minimum():
    p = _strip()
    r = enumerate_topologies(p)
    opts = optimize_all(p, r.topologies)
    assert len(opts) == 6
    assert all(o.cost == 4 for o in opts)
    for o in opts:
        for sol in o.solutions:
            assert placement_cost(p, boxes_of(sol), [(6, 2)]) == o.scaled_cost


def test_fractional_weights_scale_back_to_user_units():
    p = _strip(cost={"criteria": [{"name": "internal_wall", "weight": [1, 2]}]})
    r = enumerate_topologies(p)
    o = optimize_topology(p, r.topologies[0])
    assert o.cost == 2
    assert o.scaled_cost == 4


def test_search_statistics_are_coherent():
    p = _strip()
    r = enumerate_topologies(p)
    o = optimize_topology(p, r.topologies[0])
    assert 0 <= o.steps_to_first <= o.steps_to_best
    assert o.first_cost >= o.cost
    assert o.elapsed >= 0.0


def test_rank_breaks_cost_ties_by_class_index():
    p = _strip()
    r = enumerate_topologies(p)
    ordered = rank(optimize_all(p, r.topologies))
    assert [o.topology.index for o in ordered] == list(range(6))


def test_optimize_returns_none_once_the_class_empties():
    p = _strip()
    r = enumerate_topologies(p)
    p.constraints = [{"type": "bound", "var": ["r0", "width"], "min": 3}]
    assert optimize_topology(p, r.topologies[0]) is None


def _two_corridors(alignment):
    return Problem(
        "cc",
        SpaceDef("f", length=6, width=2),
        [
            SpaceDef("c1", kind="corridor", length=(1, 5), width=2),
            SpaceDef("c2", kind="corridor", length=(1, 5), width=2),
        ],
        switches={
            "symmetry": False,
            "total_recovery": True,
            "corridor_alignment": alignment,
        },
        cost={"criteria": [{"name": "internal_wall", "weight": 1}]},
    )


def test_corridor_slides_collapse_to_one_representative():
    p = _two_corridors(False)
    r = enumerate_topologies(p)
    t = next(
        t for t in r.topologies if t.signature_dict()["rel:c1/c2"] == "E"
    )
    plain = optimize_topology(p, t)
    # the shared seam can sit anywhere: every split has the same wall cost
    assert len(plain.solutions) == 5

    pa = _two_corridors(True)
    ra = enumerate_topologies(pa)
    ta = next(
        t for t in ra.topologies if t.signature_dict()["rel:c1/c2"] == "E"
    )
    merged = optimize_topology(pa, ta)
    assert len(merged.solutions) == 1
    first = merged.solutions[0]["c1"]
    assert first["x2"] - first["x1"] == 1


def test_merge_slides_leaves_unrelated_solutions_alone():
    p = _two_corridors(True)
    sols = [
        {
            "c1": {"x1": 0, "y1": 0, "x2": 3, "y2": 2},
            "c2": {"x1": 3, "y1": 1, "x2": 6, "y2": 2},
        }
    ]
    assert merge_slides(p, list(sols)) == sols

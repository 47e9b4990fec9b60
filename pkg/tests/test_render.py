"""SVG output: structure, determinism, and the diff overlay."""

from topoplan.enumerate import enumerate_topologies
from topoplan.model import Problem, SpaceDef
from topoplan.render import render_diff, render_sketch, render_solution


def _problem():
    return Problem(
        "r",
        SpaceDef("f", length=4, width=3),
        [
            SpaceDef("a", length=2, width=(1, 3)),
            SpaceDef("b", length=2, width=(1, 3)),
        ],
        constraints=[
            {"type": "adjacent", "a": "a", "b": "b", "d1": [1, None], "d2": [0, 0]}
        ],
        switches={"symmetry": False, "total_recovery": True},
    )


def _result():
    p = _problem()
    return p, enumerate_topologies(p)


def test_solution_svg_has_a_rect_and_label_per_space():
    p, r = _result()
    svg = render_solution(p, r.topologies[0].witness)
    assert svg.startswith("<svg") and svg.rstrip().endswith("</svg>")
    # contour plus two spaces
    assert svg.count("<rect") >= 3
    assert ">a</text>" in svg and ">b</text>" in svg


def test_render_is_deterministic():
    p, r = _result()
    w = r.topologies[0].witness
    assert render_solution(p, w) == render_solution(p, w)
    assert render_sketch(p, r.topologies[0]) == render_sketch(p, r.topologies[0])


def test_highlight_recolors_the_named_space():
    p, r = _result()
    w = r.topologies[0].witness
    plain = render_solution(p, w)
    lit = render_solution(p, w, highlight=["a"])
    assert plain != lit
    assert "#c0392b" in lit and "#c0392b" not in plain


def test_sketch_draws_domain_boxes_translucently():
    p, r = _result()
    svg = render_sketch(p, r.topologies[0])
    assert "fill-opacity" in svg


def test_caption_text_is_emitted():
    p, r = _result()
    svg = render_solution(p, r.topologies[0].witness, caption="cost 4")
    assert "cost 4" in svg


def test_diff_overlays_both_classes():
    p, r = _result()
    assert r.n2 >= 2
    svg = render_diff(p, r.topologies[0], r.topologies[1])
    assert svg.startswith("<svg")
    assert svg.count("<rect") >= 3


def test_two_floor_plans_sit_side_by_side():
    p = Problem(
        "two",
        [SpaceDef("f0", length=4, width=3), SpaceDef("f1", length=4, width=3)],
        [
            SpaceDef("a", length=4, width=3),
            SpaceDef("b", length=4, width=3, floor=1),
        ],
        switches={"symmetry": False},
    )
    r = enumerate_topologies(p)
    svg = render_solution(p, r.topologies[0].witness)
    assert svg.count('width="4.00"') == 0  # scaled coordinates, not raw modules
    assert svg.count("<rect") >= 4
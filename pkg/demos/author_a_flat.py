"""Author a small flat from scratch and explore it.

Builds the problem in code (the JSON document would say the same),
enumerates its topological solutions, and picks the cheapest layout.

    python demos/author_a_flat.py
"""

from topoplan.enumerate import enumerate_topologies
from topoplan.model import Problem, SpaceDef
from topoplan.optimize import optimize_all, rank

problem = Problem(
    "flat",
    SpaceDef("shell", length=7, width=5),
    [
        SpaceDef("living", length=(3, 4), width=(3, 4), area=(9, 14)),
        SpaceDef("bedroom", length=(3, 4), width=(2, 3)),
        SpaceDef("bath", length=2, width=2),
        SpaceDef("hall", kind="corridor", length=(1, 7), width=(1, 2)),
    ],
    constraints=[
        {"type": "adjacent", "a": "living", "b": "hall", "d1": [1, None], "d2": [0, 0]},
        {"type": "adjacent", "a": "bedroom", "b": "hall", "d1": [1, None], "d2": [0, 0]},
        {"type": "adjacent", "a": "bath", "b": "hall", "d1": [1, None], "d2": [0, 0]},
        {"type": "lit", "space": "living"},
        {"type": "lit", "space": "bedroom"},
    ],
    switches={"total_recovery": True},
)

result = enumerate_topologies(problem)
print(f"{result.n2} consistent arrangements "
      f"({result.candidates} candidates, {result.n1} potential)")

problem.cost = {"criteria": [{"name": "internal_wall", "weight": 1}]}
ordered = rank(optimize_all(problem, result.topologies, problem.cost))
for o in ordered[:5]:
    w = o.best()
    hall = w["hall"]
    shape = f"{hall['x2'] - hall['x1']}x{hall['y2'] - hall['y1']}"
    print(f"  #{o.topology.index:2d} cost {o.cost:2d}  hall {shape}")

"""End-to-end tour: enumerate a bundled puzzle, optimize, write sketches.

Run from the repository root:

    python demos/walkthrough.py [out_dir]
"""

import pathlib
import sys

from topoplan import benchmarks, render
from topoplan.optimize import optimize_all, rank

out = pathlib.Path(sys.argv[1] if len(sys.argv) > 1 else "out/demo")
out.mkdir(parents=True, exist_ok=True)

problem = benchmarks.load_benchmark("pfefferkorn")
print(f"{problem.name}: {len(problem.spaces)} spaces on a "
      f"{problem.contours[0].length}x{problem.contours[0].width} contour")

result = benchmarks.run_benchmark("pfefferkorn")
print(f"candidates {result.candidates}, potential {result.n1}, "
      f"consistent {result.n2}")

first = result.topologies[0]
pairs = ", ".join(f"{k}={v}" for k, v in list(first.signature_dict().items())[:4])
print(f"class 0 signature starts: {pairs} ...")

problem.cost = {"criteria": [{"name": "internal_wall", "weight": 1}]}
optimized = optimize_all(problem, result.topologies, problem.cost)
ordered = rank(optimized)
best = ordered[0]
print(f"cheapest class #{best.topology.index}: cost {best.cost}, "
      f"{len(best.solutions)} tied optimum(s), "
      f"steps to first {best.steps_to_first}, to best {best.steps_to_best}")

for o in ordered[:3]:
    path = out / f"{problem.name}.t{o.topology.index:03d}.svg"
    path.write_text(render.render_solution(problem, o.best(), caption=f"cost {o.cost}"))
print(f"wrote 3 sketches under {out}/")

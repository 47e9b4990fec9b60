"""Regenerate the JSON fixtures the vitest suite replays.

Drives the real exploration service over HTTP (in-process) on the small
strip problem and freezes every response the UI consumes.  Run from the
repository root:

    python frontend/test/capture_fixtures.py
"""

import json
import pathlib
import time

from fastapi.testclient import TestClient

from topoplan import enumerate as enum_mod
from topoplan import io
from topoplan.model import Problem, SpaceDef
from topoplan.optimize import optimize_all
from topoplan.service import create_app

HERE = pathlib.Path(__file__).parent
OUT = HERE / "fixtures"


def _problem():
    return Problem(
        "svc",
        SpaceDef("f", length=6, width=2),
        [
            SpaceDef("a", length=2, width=2),
            SpaceDef("b", length=2, width=2),
            SpaceDef("c", kind="corridor", length=2, width=2),
        ],
        switches={"symmetry": False, "total_recovery": True},
        cost={"criteria": [{"name": "internal_wall", "weight": 1}]},
    )


def _loose_problem():
    # two spare columns keep per-class domains open, so a refinement
    # genuinely narrows what the panel displays and undo has work to do
    return Problem(
        "svc-loose",
        SpaceDef("f", length=8, width=2),
        [
            SpaceDef("a", length=2, width=2),
            SpaceDef("b", length=2, width=2),
            SpaceDef("c", kind="corridor", length=2, width=2),
        ],
        switches={"symmetry": False},
    )


def _wait(client, sid, jid):
    deadline = time.monotonic() + 60
    while time.monotonic() < deadline:
        j = client.get(f"/sessions/{sid}/jobs/{jid}").json()
        if j["status"] != "running":
            return j
        time.sleep(0.02)
    raise RuntimeError("job did not finish")


def _dump(name, obj):
    (OUT / name).write_text(json.dumps(obj, indent=1, sort_keys=True) + "\n")
    print("wrote", name)


def main():
    OUT.mkdir(exist_ok=True)
    problem = _problem()

    # the solution document the CLI would write for the same problem
    result = enum_mod.enumerate_topologies(problem)
    optimized = optimize_all(problem, result.topologies, problem.cost)
    by_index = {o.topology.index: o for o in optimized}
    _dump("solutions.json", io.solutions_to_dict(problem, result, by_index))

    client = TestClient(create_app())
    _dump("benchmarks.json", client.get("/problems").json())

    doc = io.problem_to_dict(problem)
    created = client.post("/sessions", json={"problem": doc}).json()
    sid = created["session"]
    job = client.post(f"/sessions/{sid}/enumerate", json={}).json()
    _dump("job_created.json", job)
    _dump("job_done.json", _wait(client, sid, job["job"]))
    _dump("session.json", client.get(f"/sessions/{sid}").json())
    _dump(
        "topologies.json",
        client.get(f"/sessions/{sid}/topologies", params={"limit": 100}).json(),
    )
    _dump("detail0.json", client.get(f"/sessions/{sid}/topologies/0").json())
    _dump("detail1.json", client.get(f"/sessions/{sid}/topologies/1").json())
    _dump("diff01.json", client.get(f"/sessions/{sid}/diff", params={"a": 0, "b": 1}).json())

    filter_req = {"constraints": [{"type": "bound", "var": ["c", "x1"], "max": 0}]}
    _dump(
        "filter.json",
        {
            "request": filter_req,
            "response": client.post(f"/sessions/{sid}/filter", json=filter_req).json(),
        },
    )

    loose = client.post(
        "/sessions", json={"problem": io.problem_to_dict(_loose_problem())}
    ).json()
    lid = loose["session"]
    ljob = client.post(f"/sessions/{lid}/enumerate", json={}).json()
    _wait(client, lid, ljob["job"])
    detail = client.get(f"/sessions/{lid}/topologies/0").json()
    before = detail["domains"]
    lo, hi = before["a"]["x1"][0][0], before["a"]["x1"][-1][-1]
    if lo == hi:
        raise RuntimeError("loose problem left no slack; refine fixture is a no-op")
    refine_req = {"constraints": [{"type": "bound", "var": ["a", "x1"], "max": lo}]}
    refined = client.post(
        f"/sessions/{lid}/topologies/0/refine", json=refine_req
    ).json()
    after = client.get(f"/sessions/{lid}/topologies/0").json()
    undo = client.post(f"/sessions/{lid}/topologies/0/undo").json()
    restored = client.get(f"/sessions/{lid}/topologies/0").json()["domains"]
    _dump(
        "refine.json",
        {
            "detail": detail,
            "before_domains": before,
            "request": refine_req,
            "refined": refined,
            "after_detail": after,
            "undo": undo,
            "restored_domains": restored,
        },
    )

    _dump("optimize0.json", client.post(f"/sessions/{sid}/topologies/0/optimize").json())
    all_job = client.post(f"/sessions/{sid}/optimize").json()
    _wait(client, sid, all_job["job"])
    _dump("ranking.json", client.get(f"/sessions/{sid}/ranking").json())
    _dump("layouts0.json", client.get(f"/sessions/{sid}/topologies/0/layouts").json())

    echo = client.put(
        f"/sessions/{sid}/cost",
        json={"criteria": [{"name": "corridor_area", "weight": 1}]},
    ).json()
    _dump("cost_echo.json", echo)


if __name__ == "__main__":
    main()

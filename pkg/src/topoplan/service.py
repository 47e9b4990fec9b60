"""Exploration service: sessions, jobs, and the solutions-manager verbs.

Sessions are in-memory.  Whatever mutates one session goes through its
lock, so requests apply in arrival order; reads work on the snapshot
they find.  Enumerations and whole-set optimizations run as background
jobs with a polled progress record, everything else answers inline.
"""

from __future__ import annotations

import threading
import time
import uuid

from fastapi import FastAPI, HTTPException
from fastapi.responses import Response

from . import benchmarks, io, render
from .enumerate import (
    diff_topologies,
    enumerate_topologies,
    hypothetical_filter,
    refine,
)
from .optimize import optimize_topology, parse_cost, rank


class Job:
    def __init__(self, kind):
        self.id = uuid.uuid4().hex[:12]
        self.kind = kind
        self.status = "running"
        self.progress = {}
        self.error = None
        self.started = time.time()
        self.finished = None

    def to_dict(self):
        d = {
            "job": self.id,
            "kind": self.kind,
            "status": self.status,
            "progress": self.progress,
        }
        if self.error is not None:
            d["error"] = self.error
        return d


class SessionState:
    def __init__(self, problem):
        self.id = uuid.uuid4().hex[:12]
        self.problem = problem
        self.lock = threading.Lock()
        self.result = None
        self.jobs = {}
        self.cost_spec = problem.cost
        self.optimized = {}
        self.refinements = {}  # topology index -> list of applied record lists

    def topology(self, index):
        if self.result is None:
            raise HTTPException(409, "no enumeration has completed")
        try:
            return self.result.topologies[index]
        except IndexError:
            raise HTTPException(404, f"no topology {index}") from None

    def summary(self):
        d = {
            "session": self.id,
            "problem": self.problem.name,
            "sha256": io.problem_hash(self.problem),
            "spaces": len(self.problem.spaces),
            "jobs": {j.id: j.status for j in self.jobs.values()},
        }
        if self.result is not None:
            d["counts"] = {
                "candidates": self.result.candidates,
                "n1": self.result.n1,
                "n2": self.result.n2,
                "elapsed": round(self.result.elapsed, 3),
            }
            d["aborted"] = self.result.aborted
        return d


def _parse_problem(body):
    if "benchmark" in body:
        try:
            return benchmarks.load_benchmark(body["benchmark"])
        except KeyError:
            raise HTTPException(404, f"unknown benchmark {body['benchmark']!r}") from None
    if "problem" in body:
        try:
            return io.load_problem(body["problem"])
        except (KeyError, ValueError, TypeError) as e:
            raise HTTPException(422, f"bad problem document: {e}") from None
    raise HTTPException(422, "body needs 'problem' or 'benchmark'")


def _refined(session, index, records):
    """(layout, witness) for a topology under its current refinement stack."""
    topo = session.topology(index)
    lay, witness = refine(session.problem, topo, records)
    return lay, witness


def create_app(ui_dir=None) -> FastAPI:
    """Service app; `ui_dir` optionally mounts a built browser UI at /."""
    app = FastAPI(title="topoplan", version="0.1.0")
    sessions: dict[str, SessionState] = {}

    def get_session(sid) -> SessionState:
        s = sessions.get(sid)
        if s is None:
            raise HTTPException(404, f"unknown session {sid!r}")
        return s

    @app.get("/problems")
    def problems():
        return {"benchmarks": benchmarks.list_benchmarks()}

    @app.post("/sessions")
    def create_session(body: dict):
        problem = _parse_problem(body)
        s = SessionState(problem)
        sessions[s.id] = s
        return s.summary()

    @app.get("/sessions/{sid}")
    def session_info(sid: str):
        return get_session(sid).summary()

    @app.delete("/sessions/{sid}")
    def drop_session(sid: str):
        get_session(sid)
        del sessions[sid]
        return {"deleted": sid}

    @app.post("/sessions/{sid}/enumerate")
    def start_enumeration(sid: str, body: dict = None):
        s = get_session(sid)
        body = body or {}
        max_classes = body.get("max_classes")
        with s.lock:
            if any(j.status == "running" for j in s.jobs.values()):
                raise HTTPException(409, "a job is already running")
            job = Job("enumerate")
            s.jobs[job.id] = job

        def work():
            def prog(res):
                job.progress = {
                    "candidates": res.candidates,
                    "n1": res.n1,
                    "n2": res.n2,
                }

            try:
                res = enumerate_topologies(
                    s.problem, progress=prog, max_classes=max_classes
                )
                with s.lock:
                    s.result = res
                    s.optimized = {}
                    s.refinements = {}
                    job.progress = {
                        "candidates": res.candidates,
                        "n1": res.n1,
                        "n2": res.n2,
                    }
                    job.status = "done"
            except Exception as e:  # surfaced through the job record
                job.error = f"{type(e).__name__}: {e}"
                job.status = "failed"
            finally:
                job.finished = time.time()

        threading.Thread(target=work, daemon=True).start()
        return job.to_dict()

    @app.get("/sessions/{sid}/jobs/{jid}")
    def job_info(sid: str, jid: str):
        s = get_session(sid)
        job = s.jobs.get(jid)
        if job is None:
            raise HTTPException(404, f"unknown job {jid!r}")
        d = job.to_dict()
        if job.kind == "enumerate" and job.status == "done" and s.result is not None:
            d["counts"] = {
                "candidates": s.result.candidates,
                "n1": s.result.n1,
                "n2": s.result.n2,
                "elapsed": round(s.result.elapsed, 3),
            }
        return d

    @app.get("/sessions/{sid}/topologies")
    def topologies(sid: str, offset: int = 0, limit: int = 100):
        s = get_session(sid)
        if s.result is None:
            raise HTTPException(409, "no enumeration has completed")
        items = [
            {"index": t.index, "signature": t.signature_dict()}
            for t in s.result.topologies[offset : offset + limit]
        ]
        return {"n1": s.result.n1, "n2": s.result.n2, "items": items}

    @app.get("/sessions/{sid}/topologies/{index}")
    def topology(sid: str, index: int):
        s = get_session(sid)
        t = s.topology(index)
        lay, witness = _refined(s, index, _stack(s, index))
        return {
            "index": t.index,
            "signature": t.signature_dict(),
            "witness": t.witness,
            "refinements": s.refinements.get(index, []),
            "consistent": witness is not None,
            "domains": lay.domains() if lay is not None else {},
            "sketch": render.render_sketch(s.problem, t),
        }

    @app.get("/sessions/{sid}/topologies/{index}/sketch.svg")
    def sketch(sid: str, index: int):
        s = get_session(sid)
        t = s.topology(index)
        return Response(
            render.render_sketch(s.problem, t), media_type="image/svg+xml"
        )

    @app.get("/sessions/{sid}/diff")
    def diff(sid: str, a: int, b: int):
        s = get_session(sid)
        ta, tb = s.topology(a), s.topology(b)
        return {
            "a": a,
            "b": b,
            "differences": {
                k: list(v) for k, v in diff_topologies(ta, tb).items()
            },
            "sketch": render.render_diff(s.problem, ta, tb),
        }

    @app.post("/sessions/{sid}/filter")
    def filter_classes(sid: str, body: dict):
        s = get_session(sid)
        if s.result is None:
            raise HTTPException(409, "no enumeration has completed")
        records = body.get("constraints")
        if not isinstance(records, list) or not records:
            raise HTTPException(422, "body needs a non-empty 'constraints' list")
        try:
            survivors = hypothetical_filter(s.problem, s.result.topologies, records)
        except (KeyError, ValueError) as e:
            raise HTTPException(422, f"bad constraint record: {e}") from None
        return {"survivors": survivors}

    @app.post("/sessions/{sid}/topologies/{index}/refine")
    def refine_topology(sid: str, index: int, body: dict):
        s = get_session(sid)
        records = body.get("constraints")
        if not isinstance(records, list) or not records:
            raise HTTPException(422, "body needs a non-empty 'constraints' list")
        with s.lock:
            stack = s.refinements.setdefault(index, [])
            try:
                lay, witness = _refined(s, index, _flat(stack) + records)
            except (KeyError, ValueError) as e:
                raise HTTPException(422, f"bad constraint record: {e}") from None
            stack.append(records)
            return {
                "index": index,
                "depth": len(stack),
                "consistent": witness is not None,
                "witness": witness,
                "domains": lay.domains() if lay is not None else {},
            }

    @app.post("/sessions/{sid}/topologies/{index}/undo")
    def undo_refinement(sid: str, index: int):
        s = get_session(sid)
        with s.lock:
            stack = s.refinements.get(index) or []
            if not stack:
                raise HTTPException(409, "nothing to undo")
            stack.pop()
            lay, witness = _refined(s, index, _flat(stack))
            return {
                "index": index,
                "depth": len(stack),
                "consistent": witness is not None,
                "witness": witness,
                "domains": lay.domains() if lay is not None else {},
            }

    @app.put("/sessions/{sid}/cost")
    def set_cost(sid: str, body: dict):
        s = get_session(sid)
        try:
            rows, scale = parse_cost(body)
        except (KeyError, ValueError, TypeError) as e:
            raise HTTPException(422, f"bad cost spec: {e}") from None
        with s.lock:
            s.cost_spec = body
            s.optimized = {}
        return {
            "criteria": [{"name": n, "weight": [num, den]} for n, num, den in rows],
            "scale": scale,
        }

    @app.post("/sessions/{sid}/topologies/{index}/optimize")
    def optimize_one(sid: str, index: int):
        s = get_session(sid)
        t = s.topology(index)
        with s.lock:
            opt = s.optimized.get(index)
            if opt is None:
                try:
                    opt = optimize_topology(s.problem, t, s.cost_spec)
                except ValueError as e:
                    raise HTTPException(422, f"bad cost spec: {e}") from None
                if opt is None:
                    raise HTTPException(500, "class could not be optimized")
                s.optimized[index] = opt
        return _opt_payload(s, index, opt)

    @app.post("/sessions/{sid}/optimize")
    def optimize_everything(sid: str):
        s = get_session(sid)
        if s.result is None:
            raise HTTPException(409, "no enumeration has completed")
        try:
            parse_cost(s.cost_spec)
        except (KeyError, ValueError, TypeError) as e:
            raise HTTPException(422, f"bad cost spec: {e}") from None
        with s.lock:
            if any(j.status == "running" for j in s.jobs.values()):
                raise HTTPException(409, "a job is already running")
            job = Job("optimize")
            s.jobs[job.id] = job

        def work():
            try:
                done = 0
                for t in s.result.topologies:
                    with s.lock:
                        if t.index not in s.optimized:
                            opt = optimize_topology(s.problem, t, s.cost_spec)
                            if opt is None:
                                raise RuntimeError(
                                    f"topology {t.index} could not be optimized"
                                )
                            s.optimized[t.index] = opt
                    done += 1
                    job.progress = {"optimized": done, "total": s.result.n2}
                job.status = "done"
            except Exception as e:
                job.error = f"{type(e).__name__}: {e}"
                job.status = "failed"
            finally:
                job.finished = time.time()

        threading.Thread(target=work, daemon=True).start()
        return job.to_dict()

    @app.get("/sessions/{sid}/ranking")
    def ranking(sid: str):
        s = get_session(sid)
        if s.result is None:
            raise HTTPException(409, "no enumeration has completed")
        missing = [t.index for t in s.result.topologies if t.index not in s.optimized]
        if missing:
            raise HTTPException(
                409, f"{len(missing)} topologies not optimized yet; run optimize first"
            )
        ordered = rank(s.optimized.values())
        return {
            "ranking": [
                {"index": o.topology.index, "cost": o.cost} for o in ordered
            ]
        }

    @app.get("/sessions/{sid}/topologies/{index}/layouts")
    def layouts(sid: str, index: int):
        s = get_session(sid)
        s.topology(index)
        opt = s.optimized.get(index)
        if opt is None:
            raise HTTPException(409, "topology not optimized yet")
        return _opt_payload(s, index, opt)

    def _opt_payload(s, index, opt):
        return {
            "index": index,
            "cost": opt.cost,
            "solutions": opt.solutions,
            "count": len(opt.solutions),
            "first_cost": opt.first_cost,
            "steps_to_first": opt.steps_to_first,
            "steps_to_best": opt.steps_to_best,
            "sketches": [
                render.render_solution(s.problem, sol) for sol in opt.solutions[:8]
            ],
        }

    if ui_dir is not None:
        from fastapi.staticfiles import StaticFiles

        # declared API routes win; everything else falls through to the UI
        app.mount("/", StaticFiles(directory=ui_dir, html=True), name="ui")

    return app


def _stack(session, index):
    return _flat(session.refinements.get(index) or [])


def _flat(stack):
    out = []
    for records in stack:
        out.extend(records)
    return out


app = create_app()

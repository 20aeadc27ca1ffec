"""HTTP facade over the solvers for the designer workbench.

Problems live as one JSON file per id in a data directory, wrapped with a
monotonically increasing revision for optimistic concurrency.  Solve
endpoints never write; what-if overrides never persist.  Error mapping:
400 schema violation, 404 unknown id, 409 stale revision, 422 infeasible
instance (with the blocking zero-compatibility pairs as diagnostics).
"""

from __future__ import annotations

import json
import os
import tempfile
import threading
import uuid
from importlib import resources
from pathlib import Path
from typing import Any, Mapping, Sequence

from fastapi import FastAPI, Request
from fastapi.exceptions import RequestValidationError
from fastapi.responses import FileResponse, HTMLResponse, JSONResponse
from fastapi.staticfiles import StaticFiles
from pydantic import BaseModel, Field

from . import solve
from .document import ProblemDocument, parse_problem, problem_schema, serialize_problem
from .errors import DocumentError, InfeasibleError

__all__ = ["create_app", "ProblemStore"]


class StoredProblem:
    def __init__(self, problem_id: str, document: ProblemDocument, revision: int):
        self.id = problem_id
        self.document = document
        self.revision = revision


class ProblemStore:
    """One wrapper file per problem: {"revision": int, "document": {...}}.

    Writes are atomic (tempfile + rename) and serialized per problem, so a
    concurrent reader sees either the old or the new complete revision.
    """

    def __init__(self, data_dir: Path):
        self.data_dir = Path(data_dir)
        self.data_dir.mkdir(parents=True, exist_ok=True)
        self._lock = threading.Lock()
        self._problems: dict[str, StoredProblem] = {}
        for path in sorted(self.data_dir.glob("*.json")):
            wrapped = json.loads(path.read_text(encoding="utf-8"))
            document = parse_problem(json.dumps(wrapped["document"]))
            self._problems[path.stem] = StoredProblem(path.stem, document, wrapped["revision"])

    def list(self) -> list[StoredProblem]:
        with self._lock:
            return sorted(self._problems.values(), key=lambda p: p.id)

    def get(self, problem_id: str) -> StoredProblem:
        with self._lock:
            try:
                return self._problems[problem_id]
            except KeyError:
                raise KeyError(problem_id) from None

    def create(self, document: ProblemDocument, problem_id: str | None = None) -> StoredProblem:
        with self._lock:
            if problem_id is None:
                problem_id = uuid.uuid4().hex[:8]
            if problem_id in self._problems:
                raise FileExistsError(problem_id)
            stored = StoredProblem(problem_id, document, 1)
            self._write(stored)
            self._problems[problem_id] = stored
            return stored

    def update(self, problem_id: str, document: ProblemDocument, revision: int) -> StoredProblem:
        with self._lock:
            current = self._problems.get(problem_id)
            if current is None:
                raise KeyError(problem_id)
            if revision != current.revision:
                raise RevisionConflict(current.revision)
            stored = StoredProblem(problem_id, document, current.revision + 1)
            self._write(stored)
            self._problems[problem_id] = stored
            return stored

    def _write(self, stored: StoredProblem) -> None:
        payload = {
            "revision": stored.revision,
            "document": json.loads(serialize_problem(stored.document)),
        }
        text = json.dumps(payload, indent=2, ensure_ascii=False) + "\n"
        fd, tmp = tempfile.mkstemp(dir=self.data_dir, suffix=".tmp")
        try:
            with os.fdopen(fd, "w", encoding="utf-8") as fh:
                fh.write(text)
            os.replace(tmp, self.data_dir / f"{stored.id}.json")
        finally:
            if os.path.exists(tmp):
                os.unlink(tmp)


class RevisionConflict(Exception):
    def __init__(self, current: int):
        super().__init__(f"stale revision; current is {current}")
        self.current = current


class CreateProblemBody(BaseModel):
    id: str | None = None
    document: dict


class UpdateProblemBody(BaseModel):
    revision: int
    document: dict


class RankBody(BaseModel):
    scenario: str | None = None
    node: str | None = None
    method: str | None = None


class ComposeBody(BaseModel):
    scenario: str | None = None
    node: str | None = None


class KnapsackBody(BaseModel):
    budget: int


class TrajectoryBody(BaseModel):
    thresholds: list[int] | None = None


class CompatibilityOverride(BaseModel):
    parts: list[str] = Field(min_length=2, max_length=2)
    alternatives: list[str] = Field(min_length=2, max_length=2)
    value: int


class WhatIfBody(BaseModel):
    scenario: str | None = None
    node: str | None = None
    compatibility: list[CompatibilityOverride] = Field(default_factory=list)
    priorities: dict[str, dict[str, int]] = Field(default_factory=dict)


def seed_data_dir(data_dir: Path) -> None:
    """Copy the bundled fixtures into an empty data directory."""
    data_dir.mkdir(parents=True, exist_ok=True)
    if any(data_dir.glob("*.json")):
        return
    fixtures = resources.files("morphdesign").joinpath("fixtures")
    for entry in sorted(fixtures.iterdir()):
        if entry.name.endswith(".json"):
            document = json.loads(entry.read_text(encoding="utf-8"))
            wrapped = {"revision": 1, "document": document}
            target = data_dir / entry.name
            target.write_text(json.dumps(wrapped, indent=2, ensure_ascii=False) + "\n", encoding="utf-8")


def create_app(
    data_dir: Path | str = "problems",
    seed_fixtures: bool = False,
    ui_dir: Path | str | None = None,
) -> FastAPI:
    data_dir = Path(data_dir)
    if seed_fixtures:
        seed_data_dir(data_dir)
    store = ProblemStore(data_dir)
    app = FastAPI(title="morphdesign", version="0.1.0")

    @app.exception_handler(RequestValidationError)
    async def invalid_request(_req: Request, exc: RequestValidationError):
        return JSONResponse(status_code=400, content={"detail": exc.errors()})

    @app.exception_handler(DocumentError)
    async def invalid_document(_req: Request, exc: DocumentError):
        return JSONResponse(status_code=400, content={"detail": str(exc)})

    @app.exception_handler(KeyError)
    async def unknown_key(_req: Request, exc: KeyError):
        return JSONResponse(status_code=404, content={"detail": str(exc.args[0]) if exc.args else "not found"})

    @app.exception_handler(RevisionConflict)
    async def stale_revision(_req: Request, exc: RevisionConflict):
        return JSONResponse(status_code=409, content={"detail": str(exc), "revision": exc.current})

    @app.exception_handler(InfeasibleError)
    async def infeasible(_req: Request, exc: InfeasibleError):
        return JSONResponse(
            status_code=422,
            content={"detail": str(exc), "diagnostics": [list(d) for d in exc.diagnostics]},
        )

    @app.exception_handler(ValueError)
    async def bad_value(_req: Request, exc: ValueError):
        return JSONResponse(status_code=400, content={"detail": str(exc)})

    @app.get("/api/schema")
    def get_schema():
        return problem_schema()

    @app.get("/api/problems")
    def list_problems():
        return {
            "problems": [
                {"id": p.id, "name": p.document.name, "revision": p.revision} for p in store.list()
            ]
        }

    @app.post("/api/problems", status_code=201)
    def create_problem(body: CreateProblemBody):
        document = parse_problem(json.dumps(body.document))
        try:
            stored = store.create(document, body.id)
        except FileExistsError as exc:
            return JSONResponse(status_code=409, content={"detail": f"problem {exc} already exists"})
        return {"id": stored.id, "revision": stored.revision}

    @app.get("/api/problems/{problem_id}")
    def get_problem(problem_id: str):
        stored = store.get(problem_id)
        return {
            "id": stored.id,
            "revision": stored.revision,
            "document": json.loads(serialize_problem(stored.document)),
        }

    @app.put("/api/problems/{problem_id}")
    def put_problem(problem_id: str, body: UpdateProblemBody):
        document = parse_problem(json.dumps(body.document))
        stored = store.update(problem_id, document, body.revision)
        return {"id": stored.id, "revision": stored.revision}

    @app.post("/api/problems/{problem_id}/rank")
    def rank_problem(problem_id: str, body: RankBody):
        stored = store.get(problem_id)
        payload = solve.rank_payload(stored.document, body.scenario, body.node, body.method)
        return {"revision": stored.revision, **payload}

    @app.post("/api/problems/{problem_id}/compose")
    def compose_problem(problem_id: str, body: ComposeBody):
        stored = store.get(problem_id)
        payload = solve.compose_payload(stored.document, body.scenario, body.node)
        return {"revision": stored.revision, **payload}

    @app.post("/api/problems/{problem_id}/knapsack")
    def knapsack_problem(problem_id: str, body: KnapsackBody):
        stored = store.get(problem_id)
        payload = solve.knapsack_payload(stored.document, body.budget)
        return {"revision": stored.revision, **payload}

    @app.post("/api/problems/{problem_id}/trajectory")
    def trajectory_problem(problem_id: str, body: TrajectoryBody | None = None):
        stored = store.get(problem_id)
        thresholds = body.thresholds if body else None
        payload = solve.trajectory_payload(stored.document, thresholds)
        return {"revision": stored.revision, **payload}

    @app.post("/api/problems/{problem_id}/whatif")
    def whatif_problem(problem_id: str, body: WhatIfBody):
        stored = store.get(problem_id)
        payload = solve.whatif_payload(
            stored.document,
            body.scenario,
            [o.model_dump() for o in body.compatibility],
            body.priorities,
            body.node,
        )
        return {"revision": stored.revision, **payload}

    _mount_ui(app, ui_dir)
    return app


def _default_ui_dir() -> Path | None:
    override = os.environ.get("MORPHDESIGN_UI_DIR")
    if override:
        return Path(override)
    candidate = Path(__file__).resolve().parents[2] / "frontend" / "dist"
    return candidate if candidate.is_dir() else None


_FALLBACK_PAGE = """<!doctype html>
<html><head><title>morphdesign</title></head>
<body>
<h1>morphdesign service</h1>
<p>The workbench UI is not built. API lives under <code>/api</code>;
see <a href="/docs">/docs</a> for the interactive reference.</p>
</body></html>
"""


def _mount_ui(app: FastAPI, ui_dir: Path | str | None) -> None:
    ui_path = Path(ui_dir) if ui_dir else _default_ui_dir()
    if ui_path and ui_path.is_dir():
        index = ui_path / "index.html"

        @app.get("/", include_in_schema=False)
        def ui_index():
            return FileResponse(index)

        app.mount("/", StaticFiles(directory=ui_path), name="ui")
    else:

        @app.get("/", include_in_schema=False)
        def placeholder():
            return HTMLResponse(_FALLBACK_PAGE)

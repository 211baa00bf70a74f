"""HTTP facade: JSON API under /v1, one engine per process."""

from __future__ import annotations

from fastapi import FastAPI, Request, Response
from fastapi.exceptions import RequestValidationError
from fastapi.responses import JSONResponse
from pydantic import BaseModel, ConfigDict, Field

from ..config import ServiceConfig
from ..errors import (
    ConflictError,
    GraphError,
    NotFoundError,
    PoolExhaustedError,
    ProviderError,
    StageError,
    ValidationError,
)
from ..util import canonical_json
from .engine import CorruptedSessionError, ExplorationEngine


class _Body(BaseModel):
    model_config = ConfigDict(extra="forbid")


class CreateSessionBody(_Body):
    topic: str
    seed: int | None = None


class CreateBlockBody(_Body):
    property: str
    direction: str
    typicality: int = Field(ge=1, le=5)
    parent: str | None = None
    anchor_result_item: str | None = None


class RefineBody(_Body):
    mode: str
    anchor: str | None = None


class RecommendBody(_Body):
    property: str


class CopyBlockBody(_Body):
    source_block_id: str
    parent: str | None = None


class CopyPathBody(_Body):
    mode: str
    path: list[str]
    target_parent: str | None = None
    choice: str | None = None


class PropertiesBody(_Body):
    action: str
    name: str
    kind: str | None = None


def create_app(config: ServiceConfig) -> FastAPI:
    engine = ExplorationEngine(config)
    app = FastAPI(title="intentblocks", version="0.1.0", openapi_url="/v1/spec")
    app.state.engine = engine

    @app.exception_handler(RequestValidationError)
    async def on_body_error(request: Request, exc: RequestValidationError):
        return JSONResponse(status_code=422, content={"detail": exc.errors()})

    @app.exception_handler(ValidationError)
    async def on_validation(request: Request, exc: ValidationError):
        return JSONResponse(status_code=422, content={"detail": str(exc)})

    @app.exception_handler(NotFoundError)
    async def on_not_found(request: Request, exc: NotFoundError):
        return JSONResponse(status_code=404, content={"detail": str(exc)})

    @app.exception_handler(GraphError)
    async def on_graph(request: Request, exc: GraphError):
        return JSONResponse(status_code=409, content={"detail": str(exc)})

    @app.exception_handler(ConflictError)
    async def on_conflict(request: Request, exc: ConflictError):
        return JSONResponse(status_code=409, content={"detail": str(exc)})

    @app.exception_handler(PoolExhaustedError)
    async def on_exhausted(request: Request, exc: PoolExhaustedError):
        return JSONResponse(status_code=409, content={"detail": str(exc)})

    @app.exception_handler(CorruptedSessionError)
    async def on_corrupted(request: Request, exc: CorruptedSessionError):
        return JSONResponse(
            status_code=409, content={"detail": f"session store corrupted: {exc}"}
        )

    @app.exception_handler(ProviderError)
    async def on_provider(request: Request, exc: ProviderError):
        return JSONResponse(
            status_code=502,
            content={"detail": str(exc), "stage": exc.stage, "raw": exc.raw},
        )

    @app.exception_handler(StageError)
    async def on_stage(request: Request, exc: StageError):
        status = 502 if isinstance(exc.cause, ProviderError) else (
            404 if isinstance(exc.cause, NotFoundError) else (
                409 if isinstance(exc.cause, (GraphError, ConflictError, PoolExhaustedError))
                else 422
            )
        )
        return JSONResponse(
            status_code=status, content={"detail": str(exc), "stage": exc.stage}
        )

    # ----------------------------------------------------------------- health

    @app.get("/health")
    def health():
        return engine.health()

    # --------------------------------------------------------------- sessions

    @app.post("/v1/sessions", status_code=201)
    def create_session(body: CreateSessionBody):
        session = engine.create_session(body.topic, body.seed)
        return {
            "session_id": session.id,
            "topic": session.topic,
            "seed": session.seed,
            "properties": [p.to_dict() for p in session.properties],
        }

    @app.get("/v1/sessions/{session_id}")
    def get_session(session_id: str):
        session = engine.get_session(session_id)
        # Canonical bytes so responses are identical across restarts.
        return Response(content=session.canonical(), media_type="application/json")

    @app.get("/v1/sessions/{session_id}/analytics")
    def get_analytics(session_id: str):
        return engine.analytics(session_id)

    @app.post("/v1/sessions/{session_id}/blocks", status_code=201)
    def create_block(session_id: str, body: CreateBlockBody):
        return engine.create_block(
            session_id,
            body.property,
            body.direction,
            body.typicality,
            parent=body.parent,
            anchor_result_item=body.anchor_result_item,
        )

    @app.post("/v1/sessions/{session_id}/properties")
    def mutate_properties(session_id: str, body: PropertiesBody):
        if body.action not in ("add", "remove"):
            raise ValidationError(f"unknown action {body.action!r}")
        return {"properties": engine.mutate_properties(session_id, body.action, body.name, body.kind)}

    @app.post("/v1/sessions/{session_id}/copy-block", status_code=201)
    def copy_block(session_id: str, body: CopyBlockBody):
        return engine.copy_block(session_id, body.source_block_id, body.parent)

    @app.post("/v1/sessions/{session_id}/copy-path")
    def copy_path(session_id: str, body: CopyPathBody, response: Response):
        result = engine.copy_path(
            session_id, body.path, body.mode, body.target_parent, body.choice
        )
        if "applied" in result:
            response.status_code = 201
        return result

    # ----------------------------------------------------------------- layout

    @app.get("/v1/sessions/{session_id}/layout")
    def get_layout(session_id: str):
        engine.get_session(session_id)
        return engine.store.load_layout(session_id)

    @app.put("/v1/sessions/{session_id}/layout")
    async def put_layout(session_id: str, request: Request):
        engine.get_session(session_id)
        layout = await request.json()  # opaque client geometry
        if not isinstance(layout, dict):
            raise ValidationError("layout must be a JSON object")
        engine.store.save_layout(session_id, layout)
        return {"ok": True}

    @app.get("/v1/sessions/{session_id}/images/{image_hash}")
    def get_image(session_id: str, image_hash: str):
        engine.get_session(session_id)
        data = engine.store.image_store(session_id).get_bytes(image_hash)
        return Response(content=data, media_type="image/png")

    # ----------------------------------------------------------------- blocks

    @app.post("/v1/blocks/{block_id}/suggestions:refine")
    def refine(block_id: str, body: RefineBody):
        return engine.refine(block_id, body.mode, body.anchor)

    @app.post("/v1/blocks/{block_id}/results", status_code=201)
    def results(block_id: str):
        return engine.realize(block_id)

    @app.post("/v1/blocks/{block_id}/recommend")
    def recommend(block_id: str, body: RecommendBody):
        return engine.recommend(block_id, body.property)

    return app


def canonical_response(payload: dict) -> Response:
    return Response(content=canonical_json(payload), media_type="application/json")

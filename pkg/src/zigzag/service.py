"""Local HTTP service exposing one workspace to the browser UI.

Single-writer: the service owns the workspace; every mutation is an
Action POSTed here, so the UI never holds diagram state.  Scene
responses carry the SVG text plus the raw hit-region table so clicks
can be mapped back to diagram coordinates client-side.
"""

from typing import Optional

from fastapi import FastAPI
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import JSONResponse
from pydantic import BaseModel

from .diagram import KernelError, diagram_dimension, diagram_source, diagram_target
from .embed import find_embeddings
from .globe import attach
from .interner import current_interner
from .layout import layout
from .render import scene_elements, emit_svg
from .workspace import (
    Workspace,
    WorkspaceError,
    action_from_json,
    load_workspace,
    resolve_view,
    save_workspace,
)


class SignatureEntryOut(BaseModel):
    id: int
    name: str
    dimension: int
    color: str
    shape: str
    invertible: bool


class SignatureOut(BaseModel):
    entries: list[SignatureEntryOut]


class SceneOut(BaseModel):
    svg: Optional[str]
    elements: Optional[dict]
    view: str
    dims: int
    diagram_dimension: Optional[int]
    singular_height: Optional[int]
    log_length: int


class SessionOut(BaseModel):
    log: str


class SessionIn(BaseModel):
    log: str


class StatsOut(BaseModel):
    live: int
    dead: int
    memo: int
    memo_hits: int
    memo_misses: int
    interned_total: int


class AttachmentOptionOut(BaseModel):
    id: int
    name: str
    offsets: list[int]


class AttachmentsOut(BaseModel):
    boundary: str
    items: list[AttachmentOptionOut]


def _signature_payload(ws: Workspace) -> SignatureOut:
    return SignatureOut(entries=[
        SignatureEntryOut(
            id=e.generator.id,
            name=e.name,
            dimension=e.generator.dimension,
            color=e.color,
            shape=e.shape,
            invertible=e.invertible,
        )
        for e in ws.signature
    ])


def _scene_payload(ws: Workspace) -> SceneOut:
    svg = elements = None
    n = height = None
    if ws.current is not None:
        n = diagram_dimension(ws.current)
        height = 0 if n == 0 else len(ws.current.cospans)
        if ws.view.dims <= 2:
            d = resolve_view(ws.current, ws.view)
            l = layout(d, ws.view.dims)
            svg = emit_svg(d, l, ws.signature)
            elements = scene_elements(d, l)
    return SceneOut(
        svg=svg,
        elements=elements,
        view=str(ws.view),
        dims=ws.view.dims,
        diagram_dimension=n,
        singular_height=height,
        log_length=len(ws.log),
    )


def create_app(workspace: Optional[Workspace] = None) -> FastAPI:
    app = FastAPI(title="zigzag workspace")
    # the browser UI is served from a separate static origin during development
    app.add_middleware(CORSMiddleware, allow_origins=["*"], allow_methods=["*"], allow_headers=["*"])
    ws_box = {"ws": workspace if workspace is not None else Workspace()}

    @app.exception_handler(KernelError)
    async def _domain_error(request, exc):
        return JSONResponse(status_code=400, content={"error": str(exc)})

    @app.get("/signature", response_model=SignatureOut)
    def signature():
        return _signature_payload(ws_box["ws"])

    @app.get("/scene", response_model=SceneOut)
    def scene():
        return _scene_payload(ws_box["ws"])

    @app.post("/actions", response_model=SceneOut)
    def post_action(action: dict):
        try:
            a = action_from_json(action)
        except ValueError as e:
            raise WorkspaceError(str(e)) from e
        ws_box["ws"].apply(a)
        return _scene_payload(ws_box["ws"])

    @app.post("/undo", response_model=SceneOut)
    def undo():
        ws_box["ws"].undo()
        return _scene_payload(ws_box["ws"])

    @app.post("/redo", response_model=SceneOut)
    def redo():
        ws_box["ws"].redo()
        return _scene_payload(ws_box["ws"])

    @app.get("/session", response_model=SessionOut)
    def get_session():
        return SessionOut(log=save_workspace(ws_box["ws"]))

    @app.put("/session", response_model=SceneOut)
    def put_session(body: SessionIn):
        ws_box["ws"] = load_workspace(body.log)
        return _scene_payload(ws_box["ws"])

    @app.get("/attachments", response_model=AttachmentsOut)
    def attachments(boundary: str):
        ws = ws_box["ws"]
        if boundary not in ("source", "target"):
            raise WorkspaceError("attach boundary must be source or target")
        if ws.current is None:
            raise WorkspaceError("no diagram is selected")
        d = ws.current
        items = []
        if diagram_dimension(d) >= 1:
            n = diagram_dimension(d)
            face = diagram_source(d) if boundary == "source" else diagram_target(d)
            for e in ws.signature:
                if e.generator.dimension != n:
                    continue
                piece = ws.signature.globe(e.generator)
                opposite = (
                    diagram_target(piece)
                    if boundary == "source"
                    else diagram_source(piece)
                )
                good = []
                for emb in find_embeddings(opposite, face):
                    if emb.path:
                        continue
                    try:
                        attach(d, boundary, piece, emb.offset)
                    except KernelError:
                        continue
                    good.append(emb.offset)
                if good:
                    items.append(
                        AttachmentOptionOut(
                            id=e.generator.id, name=e.name, offsets=sorted(set(good))
                        )
                    )
        return AttachmentsOut(boundary=boundary, items=items)

    @app.get("/stats", response_model=StatsOut)
    def stats():
        return StatsOut(**current_interner().stats())

    return app


app = create_app()

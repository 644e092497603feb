"""REST surface over the store: triage queries, annotation, pipeline runs,
training, reports, CSV export, and user administration."""

from __future__ import annotations

import json
from datetime import date
from pathlib import Path

from fastapi import Depends, FastAPI, Header, Request, Response
from fastapi.exceptions import RequestValidationError
from fastapi.responses import JSONResponse
from fastapi.staticfiles import StaticFiles
from pydantic import BaseModel

from ..config import AppConfig
from ..errors import AuthError, ScopeError, StoreError
from ..ingest import FixtureFetcher, HttpFetcher, SourceDescriptor, SourceKind, SourceRegistry
from ..labels import ActionabilityLabel, ApplicabilityLabel, Task, parse_label
from .auth import Role, UserProfile, authenticate, make_user
from .pipeline import run_pipeline
from .store import AnnotationRecord, QueryFilter, Store, Verdict
from .training import load_store_models, train_and_evaluate


class ApiError(Exception):
    def __init__(self, status_code: int, error: str, detail: str):
        self.status_code = status_code
        self.error = error
        self.detail = detail
        super().__init__(detail)


class AnnotationBody(BaseModel):
    verdict: str
    corrected_actionability: str | None = None
    corrected_applicability: str | None = None
    reason: str = ""


class TrainBody(BaseModel):
    task: str = "actionability"
    algo: str = "lr"
    mode: str = "hierarchical"


class UserBody(BaseModel):
    user_id: str
    display_name: str = ""
    role: str = "Officer"
    region_scopes: list[str] = []
    token: str


class CompositeFetcher:
    """Routes each source to the fixture reader or the HTTP client."""

    def __init__(self, config: AppConfig):
        self.fixture = FixtureFetcher(day=config.ingest.day)
        self.http = HttpFetcher(
            timeout_secs=config.ingest.timeout_secs, user_agent=config.ingest.user_agent
        )
        root = config.resolve(config.ingest.fixture_root) or config.base_dir
        self.fixture_root = Path(root)

    def __call__(self, descriptor: SourceDescriptor):
        if descriptor.kind is SourceKind.FILE_FIXTURE:
            locator = Path(descriptor.locator)
            if not locator.is_absolute():
                descriptor = SourceDescriptor(
                    source_id=descriptor.source_id,
                    region=descriptor.region,
                    kind=descriptor.kind,
                    locator=str(self.fixture_root / locator),
                    notes=descriptor.notes,
                )
            return self.fixture(descriptor)
        return self.http(descriptor)


def _parse_task(raw: str) -> Task:
    try:
        return Task(raw)
    except ValueError:
        raise ApiError(400, "validation", f"unknown task {raw!r}") from None


def _parse_filter(
    region: str | None = None,
    actionability: str | None = None,
    applicability: str | None = None,
    effective_from: str | None = None,
    effective_to: str | None = None,
    q: str | None = None,
) -> QueryFilter:
    try:
        return QueryFilter(
            region=region or None,
            actionability=(
                parse_label(ActionabilityLabel, actionability) if actionability else None
            ),
            applicability=(
                parse_label(ApplicabilityLabel, applicability) if applicability else None
            ),
            effective_from=date.fromisoformat(effective_from) if effective_from else None,
            effective_to=date.fromisoformat(effective_to) if effective_to else None,
            text_query=q or None,
        )
    except ValueError as exc:
        raise ApiError(400, "validation", str(exc)) from None


def create_app(store: Store, config: AppConfig | None = None) -> FastAPI:
    config = config or AppConfig()
    store.seed_users(config.users)
    app = FastAPI(title="regtrack", docs_url=None, redoc_url=None)

    def current_user(authorization: str | None = Header(default=None)) -> UserProfile:
        if not authorization or not authorization.startswith("Bearer "):
            raise ApiError(401, "auth", "missing bearer token")
        token = authorization[len("Bearer ") :].strip()
        try:
            return authenticate(store.users, token)
        except AuthError as exc:
            raise ApiError(401, "auth", str(exc)) from None

    @app.exception_handler(ApiError)
    async def _api_error(request: Request, exc: ApiError):
        return JSONResponse(
            status_code=exc.status_code, content={"error": exc.error, "detail": exc.detail}
        )

    @app.exception_handler(RequestValidationError)
    async def _validation_error(request: Request, exc: RequestValidationError):
        return JSONResponse(
            status_code=400, content={"error": "validation", "detail": str(exc.errors())}
        )

    def announcement_payload(ann, include_body: bool = True) -> dict:
        doc = ann.to_json_dict()
        if not include_body:
            doc.pop("body")
        doc["confidence"] = store.prediction_for(ann.id)
        doc["annotation_count"] = len(store.annotations_for(ann.id))
        return doc

    @app.get("/healthz")
    def healthz():
        return {"status": "ok", "announcements": len(store)}

    @app.get("/session")
    def session(user: UserProfile = Depends(current_user)):
        """Who am I: lets the dashboard scope its filters and admin page."""
        return {
            "user_id": user.user_id,
            "display_name": user.display_name,
            "role": user.role.value,
            "region_scopes": list(user.region_scopes),
        }

    @app.get("/announcements")
    def list_announcements(
        user: UserProfile = Depends(current_user),
        region: str | None = None,
        actionability: str | None = None,
        applicability: str | None = None,
        effective_from: str | None = None,
        effective_to: str | None = None,
        q: str | None = None,
    ):
        flt = _parse_filter(region, actionability, applicability, effective_from, effective_to, q)
        try:
            rows = store.query(flt, user)
        except ScopeError as exc:
            raise ApiError(403, "scope", str(exc)) from None
        return {"count": len(rows), "items": [announcement_payload(a) for a in rows]}

    @app.get("/announcements/{announcement_id}")
    def get_announcement(announcement_id: str, user: UserProfile = Depends(current_user)):
        ann = store.get(announcement_id)
        if ann is None:
            raise ApiError(404, "missing", f"announcement {announcement_id!r} not found")
        if not user.can_see_region(ann.region):
            raise ApiError(403, "scope", f"region {ann.region!r} is outside your scope")
        payload = announcement_payload(ann)
        payload["annotations"] = [a.to_json_dict() for a in store.annotations_for(ann.id)]
        return payload

    @app.post("/announcements/{announcement_id}/annotation")
    def annotate(
        announcement_id: str,
        body: AnnotationBody,
        user: UserProfile = Depends(current_user),
    ):
        existing = store.get(announcement_id)
        if existing is None:
            raise ApiError(404, "missing", f"announcement {announcement_id!r} not found")
        if not user.can_see_region(existing.region):
            raise ApiError(403, "scope", f"region {existing.region!r} is outside your scope")
        try:
            record = AnnotationRecord(
                announcement_id=announcement_id,
                user_id=user.user_id,
                verdict=Verdict(body.verdict),
                corrected_actionability=(
                    parse_label(ActionabilityLabel, body.corrected_actionability)
                    if body.corrected_actionability
                    else None
                ),
                corrected_applicability=(
                    parse_label(ApplicabilityLabel, body.corrected_applicability)
                    if body.corrected_applicability
                    else None
                ),
                reason=body.reason,
            )
            updated = store.record_annotation(record)
        except ValueError as exc:
            raise ApiError(400, "validation", str(exc)) from None
        except StoreError as exc:
            raise ApiError(404, "missing", str(exc)) from None
        return announcement_payload(updated)

    @app.post("/pipeline/run")
    def pipeline_run(user: UserProfile = Depends(current_user)):
        registry_path = config.resolve(config.ingest.registry)
        if registry_path is None or not Path(registry_path).exists():
            raise ApiError(400, "validation", "no source registry configured")
        registry = SourceRegistry.load(registry_path)
        summary = run_pipeline(
            store,
            registry,
            CompositeFetcher(config),
            models=load_store_models(store),
            workers=config.ingest.workers,
        )
        return summary.to_json_dict()

    @app.post("/train")
    def train(body: TrainBody, user: UserProfile = Depends(current_user)):
        task = _parse_task(body.task)
        try:
            report = train_and_evaluate(
                store, task, algo=body.algo, mode=body.mode, cfg=config.model
            )
        except ValueError as exc:
            raise ApiError(400, "validation", str(exc)) from None
        return report.to_json_dict()

    @app.get("/reports/latest")
    def latest_report(task: str = "actionability", user: UserProfile = Depends(current_user)):
        path = store.report_path(_parse_task(task))
        if not path.exists():
            raise ApiError(404, "missing", f"no report stored for task {task!r}")
        return json.loads(path.read_text(encoding="utf-8"))

    @app.get("/export.csv")
    def export_csv(
        user: UserProfile = Depends(current_user),
        region: str | None = None,
        actionability: str | None = None,
        applicability: str | None = None,
        effective_from: str | None = None,
        effective_to: str | None = None,
        q: str | None = None,
    ):
        flt = _parse_filter(region, actionability, applicability, effective_from, effective_to, q)
        try:
            payload = store.export_csv(flt, user)
        except ScopeError as exc:
            raise ApiError(403, "scope", str(exc)) from None
        return Response(
            content=payload,
            media_type="text/csv",
            headers={"Content-Disposition": "attachment; filename=announcements.csv"},
        )

    @app.post("/admin/users")
    def add_user(body: UserBody, user: UserProfile = Depends(current_user)):
        if user.role is not Role.ADMIN:
            raise ApiError(403, "scope", "only admins manage users")
        try:
            profile = make_user(
                body.user_id, body.display_name, body.role, body.region_scopes, body.token
            )
        except ValueError as exc:
            raise ApiError(400, "validation", str(exc)) from None
        store.add_user(profile)
        return {
            "user_id": profile.user_id,
            "display_name": profile.display_name,
            "role": profile.role.value,
            "region_scopes": list(profile.region_scopes),
        }

    static_dir = config.resolve(config.server.static_dir)
    if static_dir and Path(static_dir).is_dir():
        app.mount("/", StaticFiles(directory=str(static_dir), html=True), name="dashboard")

    return app

import logging
from typing import Annotated

from fastapi import APIRouter, Depends, File, HTTPException, Request, UploadFile

from .config import MobyConfig
from .repository.FileSystemRepository import FileSystemRepository
from .services.PipelineManager import PipelineManager

logger = logging.getLogger(__name__)

router = APIRouter()


# --- Dependency Providers ---
def get_app_config(request: Request) -> MobyConfig:
    """Provides the MobyConfig instance from app.state."""
    return request.app.state.config


def get_repository(
    app_config: Annotated[MobyConfig, Depends(get_app_config)],
) -> FileSystemRepository:
    """Provides a FileSystemRepository instance configured with the app_config."""
    return FileSystemRepository(app_config)


def get_pipeline_manager(
    repo: Annotated[FileSystemRepository, Depends(get_repository)],
    app_config: Annotated[MobyConfig, Depends(get_app_config)],
) -> PipelineManager:
    """Provides a PipelineManager instance configured with the repository."""
    return PipelineManager(repo, app_config)


async def _text(upload: UploadFile) -> str:
    try:
        return (await upload.read()).decode("utf-8")
    except UnicodeDecodeError:
        raise HTTPException(status_code=400, detail=f"{upload.filename} is not UTF-8 text")


# --- Routes ---


@router.get("/config")
async def get_config(
    app_config: Annotated[MobyConfig, Depends(get_app_config)],
):
    """Effective configuration."""
    return {
        "workspace_path": str(app_config.workspace_path) if app_config.workspace_path else None,
        "solver": app_config.solver.model_dump(),
        "log_level": app_config.log_level,
    }


@router.post("/check")
async def check_modes(
    manager: Annotated[PipelineManager, Depends(get_pipeline_manager)],
    spec: UploadFile = File(...),
    modes: UploadFile = File(...),
):
    report = manager.check(await _text(spec), await _text(modes))
    return report.to_dict()


@router.post("/project")
async def project(
    manager: Annotated[PipelineManager, Depends(get_pipeline_manager)],
    spec: UploadFile = File(...),
    modes: UploadFile = File(...),
):
    """Projections are written to the workspace and returned as TLSF text."""
    if manager.repo.base_path is None:
        raise HTTPException(status_code=409, detail="Workspace not configured")
    try:
        manifest, _ = manager.project(await _text(spec), await _text(modes))
    except ValueError as e:
        raise HTTPException(status_code=400, detail=str(e))
    projections = {m.projection: manager.repo.load_text(m.projection) for m in manifest.modes}
    return {"manifest": manifest.model_dump(), "projections": projections}


@router.post("/synth")
async def synth(
    manager: Annotated[PipelineManager, Depends(get_pipeline_manager)],
    spec: UploadFile = File(...),
):
    result = manager.synthesize(await _text(spec))
    return {
        "verdict": result.verdict,
        "machine": result.machine.to_document().model_dump() if result.machine else None,
        "stats": result.stats.model_dump(),
    }


@router.post("/verify")
async def verify(
    manager: Annotated[PipelineManager, Depends(get_pipeline_manager)],
    machine: UploadFile = File(...),
    spec: UploadFile = File(...),
):
    try:
        counterexample = manager.verify(await _text(machine), await _text(spec))
    except ValueError as e:
        raise HTTPException(status_code=400, detail=f"Invalid machine: {e}")
    return {
        "passed": counterexample is None,
        "counterexample": counterexample.to_document().model_dump() if counterexample else None,
    }

import asyncio
import concurrent.futures
import logging
import uuid
from typing import Annotated

from fastapi import APIRouter, BackgroundTasks, HTTPException, Query, UploadFile
from fastapi.responses import JSONResponse, Response

from app.config import get_settings
from .helpers import scene_helper, svg_helper
from .helpers.oracle_helper import DEFAULT_BAND
from .responses import cors_options_response, geometry_errors
from .state import shared_state

logger = logging.getLogger(__name__)

router = APIRouter(
    #router tags
    prefix="/scene_module",
    #documentation tags
    tags=['Scene Module'],
    responses={
        200: {"description": "Success"},
        400: {"description": "Bad Request"},
        404: {"description": "Not Found"},
        500: {"description": "Internal Server Error"}
    }
)

ACCEPTED_CONTENT_TYPES = ("text/plain", "application/octet-stream")

# Task status storage
task_status = {}

# Thread pool for grid scans started from verify_async
thread_pool = concurrent.futures.ThreadPoolExecutor(max_workers=2)


@router.options("/upload/")
async def options_upload():
    return cors_options_response("POST, OPTIONS")


@router.options("/status/{task_id}")
async def options_status(task_id: str):
    return cors_options_response()


def _current_scene() -> scene_helper.Scene:
    if shared_state.scene is None:
        raise HTTPException(status_code=404, detail="No scene uploaded yet")
    return shared_state.scene


@router.post("/upload/")
async def upload_scene(file: UploadFile):
    if file.content_type not in ACCEPTED_CONTENT_TYPES:
        raise HTTPException(status_code=400, detail="Invalid file type, only plain text scenes are accepted")
    try:
        source = (await file.read()).decode("utf-8")
    except UnicodeDecodeError:
        raise HTTPException(status_code=400, detail="Scene file must be UTF-8 text") from None

    with geometry_errors():
        scene = scene_helper.parse_scene(source)
    shared_state.scene = scene
    shared_state.scene_name = file.filename
    logger.info(f"stored scene {file.filename} with {len(scene.directives)} directives")
    return {
        "filename": file.filename,
        "points": len(scene.points),
        "directives": len(scene.directives),
        "canonical": scene_helper.format_scene(scene),
    }


@router.get("/")
def get_scene():
    scene = _current_scene()
    return {"filename": shared_state.scene_name, "scene": scene.model_dump()}


@router.get("/render/")
def render_scene(size: int | None = None):
    settings = get_settings()
    scene = _current_scene()
    with geometry_errors():
        outcomes = scene_helper.evaluate_scene(scene, settings.tolerance())
        svg = svg_helper.render_svg(scene, outcomes, size or settings.svg_size)
    return Response(content=svg, media_type="image/svg+xml")


def verify_sync(scene: scene_helper.Scene, grid_step: float | None, band: float) -> dict:
    settings = get_settings()
    checks = scene_helper.verify_scene(
        scene,
        settings.tolerance(),
        grid_step=grid_step,
        band=band,
        sample_cap=settings.grid_sample_cap,
        workers=settings.scan_workers,
    )
    return {
        "passed": all(check.passed for check in checks),
        "checks": [check.model_dump(mode="json") for check in checks],
    }


GridStep = Annotated[float | None, Query(gt=0, description="Grid step, 0.05 AB by default")]
Band = Annotated[float, Query(ge=0, description="In-band distance tolerance in units of AB")]


@router.get("/verify/")
def verify_scene(grid_step: GridStep = None, band: Band = DEFAULT_BAND):
    scene = _current_scene()
    with geometry_errors():
        return verify_sync(scene, grid_step, band)


async def verify_background(scene: scene_helper.Scene, grid_step: float | None, band: float, task_id: str):
    """Runs the verification in the thread pool and records its outcome under task_id."""
    task_status[task_id]["message"] = "Scanning grids..."
    try:
        loop = asyncio.get_running_loop()
        result = await loop.run_in_executor(thread_pool, verify_sync, scene, grid_step, band)
    except Exception as e:
        logger.exception(f"verification task {task_id} failed: {e}")
        task_status[task_id] = {
            "status": "failed",
            "progress": 100,
            "message": f"Verification failed: {e}",
            "error": f"{type(e).__name__}: {e}",
        }
        return
    task_status[task_id] = {
        "status": "completed",
        "progress": 100,
        "message": "Verification completed",
        "result": result,
    }
    logger.info(f"verification task {task_id} completed, passed={result['passed']}")


@router.post("/verify_async/")
async def verify_scene_async(background_tasks: BackgroundTasks, grid_step: GridStep = None, band: Band = DEFAULT_BAND):
    scene = _current_scene()
    task_id = str(uuid.uuid4())
    task_status[task_id] = {"status": "processing", "progress": 0, "message": "Queued"}
    background_tasks.add_task(verify_background, scene, grid_step, band, task_id)
    return {"message": "Verification started", "task_id": task_id, "status": "processing"}


@router.get("/status/{task_id}")
async def get_task_status(task_id: str):
    """Get the status of a background verification task"""
    if task_id not in task_status:
        raise HTTPException(status_code=404, detail=f"Unknown task {task_id}")
    return JSONResponse(content=task_status[task_id])

import logging
from contextlib import contextmanager

from fastapi import HTTPException
from fastapi.responses import Response
from pydantic import ValidationError

from .helpers.errors import GeometryError, SceneParseError

logger = logging.getLogger(__name__)


# Helper function for CORS OPTIONS responses
def cors_options_response(methods: str = "GET, OPTIONS"):
    return Response(
        status_code=200,
        headers={
            "Access-Control-Allow-Origin": "*",
            "Access-Control-Allow-Methods": methods,
            "Access-Control-Allow-Headers": "*",
            "Access-Control-Max-Age": "3600",
        },
    )


@contextmanager
def geometry_errors():
    """Turn domain errors and invalid values (such as non-finite coordinates) raised inside the block into 400 responses."""
    try:
        yield
    except (GeometryError, SceneParseError, ValidationError) as e:
        logger.error(f"{type(e).__name__}: {e}")
        raise HTTPException(status_code=400, detail=f"{type(e).__name__}: {e}") from e

import logging
import os
from functools import lru_cache

from dotenv import load_dotenv
from pydantic import BaseModel, ConfigDict, PositiveFloat, PositiveInt

from app.routers.helpers.geometry_helper import ToleranceProfile

load_dotenv()

ENV_PREFIX = "GEOLOCI_"


class Settings(BaseModel):
    """Runtime settings, read from the environment (and .env) once per process."""

    model_config = ConfigDict(frozen=True)

    abs_eps: PositiveFloat = 1e-9
    rel_eps: PositiveFloat = 1e-9
    degeneracy_eps: PositiveFloat = 1e-12
    grid_sample_cap: PositiveInt = 10_000_000
    scan_workers: PositiveInt = 4
    svg_size: PositiveInt = 600
    log_level: str = "INFO"
    cors_origins: list[str] = [
        "http://localhost:3000",
        "http://localhost:5173",
        "http://127.0.0.1:3000",
        "http://127.0.0.1:5173",
    ]

    def tolerance(self) -> ToleranceProfile:
        return ToleranceProfile(
            abs_eps=self.abs_eps,
            rel_eps=self.rel_eps,
            degeneracy_eps=self.degeneracy_eps,
        )


def _from_environment() -> dict:
    values = {}
    for field in Settings.model_fields:
        raw = os.environ.get(ENV_PREFIX + field.upper())
        if raw is None or raw == "":
            continue
        if field == "cors_origins":
            values[field] = [origin.strip() for origin in raw.split(",") if origin.strip()]
        else:
            values[field] = raw
    return values


@lru_cache
def get_settings() -> Settings:
    return Settings(**_from_environment())


def configure_logging(level: str | None = None) -> None:
    logging.basicConfig(
        level=(level or get_settings().log_level).upper(),
        format="%(asctime)s %(levelname)s %(name)s: %(message)s",
    )

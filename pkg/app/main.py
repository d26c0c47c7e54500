from fastapi import FastAPI
from fastapi.middleware.cors import CORSMiddleware

from app.config import configure_logging, get_settings
from app.routers.harmonic import router as harmonic
from app.routers.loci import router as loci
from app.routers.scene import router as scene
from app.routers.triangle import router as triangle

configure_logging()

app = FastAPI(title="geoloci", description="Two-point loci, harmonic division and triangle identities")

# Explicitly allow only the configured frontend URLs
app.add_middleware(
    CORSMiddleware,
    allow_origins=get_settings().cors_origins,
    allow_credentials=True,
    allow_methods=["*"],
    allow_headers=["*"],
    expose_headers=["*"],
    max_age=3600,                 # Cache preflight request for 1 hour
)

# Routers
app.include_router(loci)
app.include_router(harmonic)
app.include_router(triangle)
app.include_router(scene)


@app.get("/")
def read_root():
    return {"service": "geoloci", "status": "ok"}

"""
FastAPI application serving the notched square isoperimetric profile
JSON endpoints for constants, profile values, sweeps and oracle comparisons
"""

import logging
from typing import Any

from fastapi import FastAPI

from app.config import settings
from app.routers import profile
from app.services.solvers import get_breakpoints

# Configure logging with settings
logging.basicConfig(
    level=getattr(logging, settings.log_level),
    format="%(asctime)s - %(name)s - %(levelname)s - %(message)s",
)
logger = logging.getLogger(__name__)

# Create FastAPI application
app = FastAPI(
    title="Notched square isoperimetric profile",
    description="Relative isoperimetric profile of the unit square with a square notch",
    version="1.0.0",
)

# Include routers
app.include_router(profile.router)


@app.get("/health")
async def health_check() -> dict[str, Any]:
    """Health check endpoint"""
    return {
        "status": "ok",
        "service": "isoprofile",
        "theta_max": get_breakpoints(settings.solver_config()).theta_max,
    }


if __name__ == "__main__":
    import uvicorn

    logger.info("Starting FastAPI server...")
    logger.info(f"Open http://localhost:{settings.port}/docs in your browser")

    uvicorn.run(
        "main:app",
        host=settings.host,
        port=settings.port,
        reload=settings.reload,
        log_level=settings.log_level.lower(),
    )

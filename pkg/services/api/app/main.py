"""
API Entrypoint
--------------
Creates the FastAPI app, exposes a health check, redirects "/" -> "/docs",
and mounts the router modules explicitly (elements, points, graphs).

Notes
-----
- PORT comes from the environment; local dev defaults to 8080.
- No global `app` at import time. Use the factory instead.
"""

from fastapi import FastAPI
from fastapi.responses import RedirectResponse
import importlib
import logging
import os

from forest_skein import __version__, config

logger = logging.getLogger("api")
config.configure_logging()


# --- Application factory -------------------------------------------------------
def create_app() -> FastAPI:
    """Create and configure the FastAPI application.

    Returns:
        FastAPI: Configured app with:
            - GET /health -> {"status": "ok"}
            - GET /       -> redirects to /docs
            - Routers mounted from app.routers.[elements, points, graphs].
    """
    app = FastAPI(title="Forest-Skein Groups API", version=__version__)

    @app.get("/health")
    def health():
        """Liveness endpoint used by containers."""
        return {"status": "ok"}

    @app.get("/")
    def index():
        return RedirectResponse(url="/docs")

    routers = ["elements", "points", "graphs"]
    for mod in routers:
        full = f"app.routers.{mod}"
        logger.info("Mounting router: %s", full)
        m = importlib.import_module(full)
        app.include_router(m.router)

    for r in app.router.routes:
        logger.debug("ROUTE %s %s", getattr(r, "path", "?"), sorted(getattr(r, "methods", None) or []))

    logger.info("API startup complete.")
    return app


# --- Local dev entrypoint ------------------------------------------------------
# `python -m uvicorn app.main:create_app --factory --reload` from services/api
if __name__ == "__main__":
    import uvicorn

    port = int(os.getenv("PORT", "8080"))
    uvicorn.run("app.main:create_app", host="0.0.0.0", port=port, factory=True, reload=True)

import logging
import sys

from fastapi import FastAPI, Request
from fastapi.responses import JSONResponse

from .api import router as api_router
from .config import MobyConfig
from .core.exceptions import (
    CompositionError,
    MobyException,
    ModeError,
    ProjectionError,
    SpecError,
)

logger = logging.getLogger(__name__)


def configure_logging(log_level: str = "INFO"):
    """Configure application-wide logging on stderr."""
    logging.basicConfig(
        level=log_level,
        format="%(asctime)s - %(name)s - %(levelname)s - %(message)s",
        handlers=[logging.StreamHandler(sys.stderr)],
        force=True,
    )

    logging.getLogger("moby").setLevel(log_level)

    # Reduce noise from third-party libraries
    logging.getLogger("uvicorn.access").setLevel(logging.WARNING)
    logging.getLogger("graphviz").setLevel(logging.WARNING)

    logger.debug(f"Logging configured with level: {log_level}")


def create_app(config: MobyConfig | None = None) -> FastAPI:
    app = FastAPI(title="moby")

    @app.exception_handler(MobyException)
    async def moby_exception_handler(request: Request, exc: MobyException):
        """
        Handles all custom application exceptions and returns a standardized JSON response.
        """
        status_code = 500
        content = {"message": f"Internal error: {exc}"}

        if isinstance(exc, (SpecError, ModeError, ProjectionError, CompositionError)):
            # The client sent a specification, modes file or machine we cannot use
            status_code = 400
            content = {"message": f"Invalid input: {exc}"}

        logger.error(f"Application exception: {exc}", exc_info=status_code == 500)

        return JSONResponse(status_code=status_code, content=content)

    app.state.config = config if config is not None else MobyConfig()
    app.include_router(api_router, prefix="/api")
    return app


def main():
    from .cli import dispatch

    sys.exit(dispatch(sys.argv[1:]))


if __name__ == "__main__":
    main()

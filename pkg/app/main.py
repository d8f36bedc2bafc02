from contextlib import asynccontextmanager

from fastapi import FastAPI, Request, status
from fastapi.exceptions import RequestValidationError
from fastapi.responses import JSONResponse
from prometheus_fastapi_instrumentator import Instrumentator

from app.exceptions import (
    CensusError,
    CertificateFormatError,
    DissectionError,
    InternalInvariantViolation,
    InvalidParameter,
    NoHostFace,
    NotFeasible,
    StructuralError,
)
from app.middleware.logging_middleware import RequestLoggingMiddleware
from app.services.logger import setup_logger

# Routers
from app.controller.census_controller import census_router
from app.controller.certificate_controller import certificate_router
from app.controller.oracle_controller import oracle_router

logger = setup_logger("app")

instrumentator = Instrumentator()

# ------------------------------------------------------------
# LIFESPAN
# ------------------------------------------------------------
@asynccontextmanager
async def lifespan(app: FastAPI):
    logger.info("🚀 API Dissection de S² démarrée")
    yield
    logger.info("🛑 API Dissection de S² arrêtée")


# ------------------------------------------------------------
# FASTAPI APP
# ------------------------------------------------------------
app = FastAPI(
    title="API Dissection de S²",
    description="Décision, planification, réalisation et vérification des dissections de S² par immersions.",
    version="1.0.0",
    docs_url="/docs",
    redoc_url="/redoc",
    lifespan=lifespan,
)


# ------------------------------------------------------------
# MIDDLEWARES
# ------------------------------------------------------------
app.add_middleware(RequestLoggingMiddleware)


# ------------------------------------------------------------
# ERROR HANDLERS
# ------------------------------------------------------------
@app.exception_handler(RequestValidationError)
async def validation_exception_handler(request: Request, exc: RequestValidationError):
    logger.warning(f"Erreur validation {request.url.path}: {exc.errors()}")
    return JSONResponse(
        status_code=status.HTTP_422_UNPROCESSABLE_ENTITY,
        content={"detail": "Erreur de validation", "errors": jsonable_errors(exc)},
    )


@app.exception_handler(DissectionError)
async def dissection_exception_handler(request: Request, exc: DissectionError):
    if isinstance(exc, (CensusError, InvalidParameter, CertificateFormatError, StructuralError)):
        status_code = status.HTTP_400_BAD_REQUEST
    elif isinstance(exc, (NotFeasible, NoHostFace)):
        status_code = status.HTTP_422_UNPROCESSABLE_ENTITY
    else:
        status_code = status.HTTP_500_INTERNAL_SERVER_ERROR

    content = {"detail": type(exc).__name__, "message": str(exc)}
    if isinstance(exc, NotFeasible):
        content["reason"] = exc.reason

    if isinstance(exc, InternalInvariantViolation):
        logger.error(f"Invariant interne rompu sur {request.url.path}: {exc}")
    else:
        logger.warning(f"Requête refusée sur {request.url.path}: {exc}")
    return JSONResponse(status_code=status_code, content=content)


@app.exception_handler(Exception)
async def general_exception_handler(request: Request, exc: Exception):
    logger.error(f"Erreur serveur sur {request.url.path}: {exc}")
    return JSONResponse(
        status_code=status.HTTP_500_INTERNAL_SERVER_ERROR,
        content={"detail": "Erreur interne", "message": "Erreur inattendue"},
    )


def jsonable_errors(exc: RequestValidationError) -> list:
    """Erreurs de validation sans le contexte non sérialisable."""
    return [{key: value for key, value in error.items() if key != "ctx"} for error in exc.errors()]


# ------------------------------------------------------------
# ROUTES
# ------------------------------------------------------------
@app.get("/")
async def root():
    return {
        "message": "API Dissection de S²",
        "version": "1.0.0",
        "health": "/health",
        "metrics": "/metrics",
        "docs": "/docs",
    }


@app.get("/health")
async def health_check_endpoint():
    return {"status": "healthy"}


instrumentator.instrument(app).expose(app, endpoint="/metrics")

# Routers
app.include_router(census_router, tags=["Recensements"])
app.include_router(certificate_router, tags=["Certificats"])
app.include_router(oracle_router, tags=["Oracle"])

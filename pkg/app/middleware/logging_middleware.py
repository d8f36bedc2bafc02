import logging
import time
import uuid

from fastapi import Request
from starlette.middleware.base import BaseHTTPMiddleware

logger = logging.getLogger(__name__)


class RequestLoggingMiddleware(BaseHTTPMiddleware):
    """Journalise chaque requête avec un identifiant et sa durée."""

    async def dispatch(self, request: Request, call_next):
        request_id = request.headers.get("x-request-id") or uuid.uuid4().hex[:12]
        start_time = time.perf_counter()

        request_data = {
            "request_id": request_id,
            "method": request.method,
            "url": request.url.path,
        }
        logger.debug(f"Requête reçue: {request.method} {request.url.path}", extra=request_data)

        response = await call_next(request)

        process_time = time.perf_counter() - start_time
        response_data = {
            **request_data,
            "status_code": response.status_code,
            "process_time": f"{process_time:.4f}s",
        }

        # 4xx: entrée refusée; 5xx: invariant interne rompu
        if response.status_code >= 500:
            log_level = logger.error
        elif response.status_code >= 400:
            log_level = logger.warning
        else:
            log_level = logger.info
        log_level(
            f"{request.method} {request.url.path} - {response.status_code} ({process_time:.4f}s)",
            extra=response_data,
        )

        response.headers["X-Process-Time"] = f"{process_time:.4f}"
        response.headers["X-Request-ID"] = request_id
        return response

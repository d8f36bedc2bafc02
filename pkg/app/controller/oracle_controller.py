"""Contrôleur de l'oracle d'énumération."""

from fastapi import APIRouter, Query

from app.schema.api_schema import EnumerateReponse
from app.services.oracle_service import enumerate_n0, sorted_censuses

oracle_router = APIRouter(
    prefix="/oracle",
    tags=["Oracle"],
    responses={400: {"description": "Borne invalide"}}
)


@oracle_router.get(
    "/n0",
    response_model=EnumerateReponse,
    summary="Recensements sans point triple",
    description="Énumère les recensements donnés par au plus max_circles cercles emboîtés."
)
def enumerer_n0(max_circles: int = Query(8, description="Nombre maximal de cercles (pair)")) -> EnumerateReponse:
    """
    Énumère les recensements du cas n = 0.

    - **max_circles**: Nombre maximal de cercles, pair
    """
    censuses = sorted_censuses(enumerate_n0(max_circles))
    return EnumerateReponse(max_circles=max_circles, censuses=[c.to_text() for c in censuses])

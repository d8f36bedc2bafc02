"""Contrôleur pour la décision et la planification des recensements."""

import logging

from fastapi import APIRouter
from fastapi.responses import Response

from app.config import settings
from app.exceptions import InvalidParameter
from app.schema.api_schema import FeasibilityReponse
from app.services.census_service import check_feasibility, parse_census, pieces, total_faces, triple_points
from app.services.export_service import plan_to_json
from app.services.planner_service import plan_reduction

logger = logging.getLogger(__name__)

census_router = APIRouter(
    prefix="/census",
    tags=["Recensements"],
    responses={
        400: {"description": "Recensement illisible ou trop grand"},
        422: {"description": "Recensement non réalisable"},
    }
)


@census_router.get(
    "/{census_text}/feasibility",
    response_model=FeasibilityReponse,
    summary="Décider la réalisabilité",
    description="Teste les restrictions (E) et (P) d'un recensement a1,a2,..."
)
def decider_realisabilite(census_text: str) -> FeasibilityReponse:
    """
    Décide si un recensement est réalisable.

    - **census_text**: Recensement "a1,a2,..."

    Returns:
        FeasibilityReponse: Verdict, n et détail des pièces
    """
    census = parse_census(census_text)
    verdict = check_feasibility(census)
    return FeasibilityReponse(
        census=census.to_text(),
        feasible=verdict.feasible,
        n=verdict.n,
        reason=verdict.reason.value if verdict.reason else None,
        triple_points=triple_points(verdict),
        pieces=pieces(census),
    )


@census_router.get(
    "/{census_text}/plan",
    summary="Plan de chirurgie",
    description="Retourne le plan de réduction: gabarit de base, étapes et trace."
)
def planifier(census_text: str) -> Response:
    """
    Construit le plan de chirurgie d'un recensement réalisable.

    - **census_text**: Recensement "a1,a2,..."

    Example de réponse:
    ```json
    {"base": {"kind": "Annulus", "n": 1},
     "steps": [{"kind": "F1a", "m": 3}, {"kind": "F1a", "m": 4}],
     "trace": ["8,1", "9,1,1", "11,0,1,1"]}
    ```
    """
    census = parse_census(census_text)
    if total_faces(census) > settings.max_api_faces:
        raise InvalidParameter(f"{total_faces(census)} pièces, limite {settings.max_api_faces}")

    plan = plan_reduction(census)
    return Response(content=plan_to_json(plan), media_type="application/json")

"""Contrôleur pour la réalisation, la vérification et l'export des certificats."""

import logging

from fastapi import APIRouter, status
from fastapi.responses import PlainTextResponse

from app.config import settings
from app.exceptions import InvalidParameter
from app.schema.api_schema import RealizeReponse, RealizeSchema
from app.schema.certificate_schema import CertificateDocument
from app.schema.report_schema import VerifyReport
from app.services.census_service import parse_census, total_faces
from app.services.complex_service import certificate_summary, verify
from app.services.export_service import certificate_to_dot
from app.services.surgery_service import realize

logger = logging.getLogger(__name__)

certificate_router = APIRouter(
    prefix="/certificates",
    tags=["Certificats"],
    responses={
        400: {"description": "Données invalides"},
        422: {"description": "Recensement non réalisable"},
        500: {"description": "Erreur interne du serveur"}
    }
)


@certificate_router.post(
    "/realize",
    response_model=RealizeReponse,
    status_code=status.HTTP_201_CREATED,
    summary="Réaliser un recensement",
    description="Construit un certificat de dissection auto-vérifié."
)
def realiser(request: RealizeSchema) -> RealizeReponse:
    """
    Réalise un recensement.

    - **census**: Recensement "a1,a2,..."

    Returns:
        RealizeReponse: Résumé et document sd-cert/1
    """
    census = parse_census(request.census)
    if total_faces(census) > settings.max_api_faces:
        raise InvalidParameter(f"{total_faces(census)} pièces, limite {settings.max_api_faces}")

    cert = realize(census)
    return RealizeReponse(
        summary=certificate_summary(cert),
        certificate=CertificateDocument.from_certificate(cert),
    )


@certificate_router.post(
    "/verify",
    response_model=VerifyReport,
    summary="Vérifier un certificat",
    description="Rejoue tous les contrôles et recalcule le recensement."
)
def verifier(document: CertificateDocument) -> VerifyReport:
    """
    Vérifie un document sd-cert/1.

    Returns:
        VerifyReport: Contrôles, recensement et n
    """
    report = verify(document.to_certificate())
    logger.info(f"Vérification: {'succès' if report.ok else 'échec'}")
    return report


@certificate_router.post(
    "/export/dot",
    response_class=PlainTextResponse,
    summary="Exporter en DOT",
    description="Export DOT déterministe d'un certificat valide."
)
def exporter_dot(document: CertificateDocument) -> str:
    """
    Exporte un certificat valide en DOT.

    Returns:
        str: Texte DOT
    """
    return certificate_to_dot(document.to_certificate())

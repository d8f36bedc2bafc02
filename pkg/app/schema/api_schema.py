"""Schémas Pydantic des requêtes et réponses de l'API."""

from typing import List, Optional

from pydantic import BaseModel, ConfigDict, Field, field_validator

from app.schema.census_schema import PieceRow
from app.schema.certificate_schema import CertificateDocument
from app.schema.report_schema import CertificateSummary


class FeasibilityReponse(BaseModel):
    """
    Réponse de décision de réalisabilité.

    Attributes:
        census: Recensement normalisé
        feasible: Vrai si (E) et (P) sont satisfaites
        n: Moitié du nombre de points triples
        reason: Restriction violée ("E" ou "P")
        triple_points: 2n
        pieces: Détail des pièces
    """
    model_config = ConfigDict(from_attributes=True)

    census: str = Field(..., examples=["8,1"])
    feasible: bool = Field(..., examples=[True])
    n: Optional[int] = Field(default=None, examples=[1])
    reason: Optional[str] = Field(default=None, examples=["P"])
    triple_points: int = Field(default=0, examples=[2])
    pieces: List[PieceRow] = Field(default_factory=list)


class RealizeSchema(BaseModel):
    """
    Requête de réalisation.

    Attributes:
        census: Recensement "a1,a2,..."
    """
    model_config = ConfigDict(str_strip_whitespace=True)

    census: str = Field(..., description='Recensement "a1,a2,..."', examples=["11,0,1,1"])

    @field_validator("census")
    @classmethod
    def validate_census(cls, value: str) -> str:
        """Refuse un texte vide avant tout calcul."""
        if not value:
            raise ValueError("le recensement ne peut pas être vide")
        return value


class RealizeReponse(BaseModel):
    """
    Réponse de réalisation.

    Attributes:
        summary: Résumé du certificat
        certificate: Document sd-cert/1
    """
    summary: CertificateSummary
    certificate: CertificateDocument


class EnumerateReponse(BaseModel):
    """
    Recensements sans point triple.

    Attributes:
        max_circles: Borne utilisée
        censuses: Recensements triés
    """
    max_circles: int = Field(..., examples=[8])
    censuses: List[str] = Field(default_factory=list, examples=[["2,1", "2,3"]])

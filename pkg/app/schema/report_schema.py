"""Schémas Pydantic pour les rapports de vérification."""

from enum import Enum
from typing import List, Optional

from pydantic import BaseModel, ConfigDict, Field, computed_field, field_serializer

from app.schema.census_schema import Census


class CheckStatus(str, Enum):
    """Issue d'un contrôle."""
    PASS = "pass"
    FAIL = "fail"
    SKIP = "skip"


class CheckResult(BaseModel):
    """
    Résultat d'un contrôle du vérificateur.

    Attributes:
        name: Nom stable du contrôle
        status: pass, fail ou skip (contrôle dépendant d'un échec antérieur)
        detail: Explication courte
    """
    model_config = ConfigDict(frozen=True)

    name: str = Field(..., examples=["even circle count"])
    status: CheckStatus = Field(..., examples=["pass"])
    detail: str = Field(default="", examples=["2 cercle(s)"])

    @property
    def passed(self) -> bool:
        return self.status == CheckStatus.PASS

    def to_line(self) -> str:
        line = f"{self.status.value.upper():4} {self.name}"
        return f"{line}: {self.detail}" if self.detail else line


class VerifyReport(BaseModel):
    """
    Rapport du vérificateur.

    census et n ne sont renseignés que si tous les contrôles passent.

    Attributes:
        census: Recensement recalculé
        n: V / 6
        checks: Contrôles dans l'ordre d'exécution
    """
    census: Optional[Census] = None
    n: Optional[int] = None
    checks: List[CheckResult] = Field(default_factory=list)

    @computed_field
    @property
    def ok(self) -> bool:
        return bool(self.checks) and all(check.passed for check in self.checks)

    def check(self, name: str) -> Optional[CheckResult]:
        for result in self.checks:
            if result.name == name:
                return result
        return None

    def failures(self) -> List[CheckResult]:
        return [check for check in self.checks if check.status == CheckStatus.FAIL]

    @field_serializer("census")
    def serialize_census(self, census: Optional[Census]) -> Optional[str]:
        return census.to_text() if census is not None else None


class CertificateSummary(BaseModel):
    """
    Résumé d'un certificat.

    Attributes:
        n: Moitié du nombre de points triples
        triple_points: 2n
        vertices: V = 6n
        edges: E = 12n
        circles: Nombre de cercles libres (2s)
        double_circles: s
        components: Nombre de composantes
        euler_characteristic: chi(G) = V - E
        census: Recensement des pièces
    """
    n: int
    triple_points: int
    vertices: int
    edges: int
    circles: int
    double_circles: int
    components: int
    euler_characteristic: int
    census: Census

    @field_serializer("census")
    def serialize_census(self, census: Census) -> str:
        return census.to_text()

    def to_line(self) -> str:
        return (
            f"n={self.n} V={self.vertices} E={self.edges} circles={self.circles} "
            f"census={self.census.to_text()}"
        )

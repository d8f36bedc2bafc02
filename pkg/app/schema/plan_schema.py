"""Schémas Pydantic pour les gabarits de base et les plans de chirurgie."""

from enum import Enum
from typing import Optional, Tuple

from pydantic import BaseModel, ConfigDict, Field, field_serializer, model_validator

from app.schema.census_schema import Census


class TemplateKind(str, Enum):
    """Famille de gabarit de base."""
    CIRCLES = "Circles"
    DISCS = "Discs"
    ANNULUS = "Annulus"


class BaseTemplate(BaseModel):
    """
    Gabarit de base d'une réalisation.

    Circles (n=0) donne {a1:2, a2:1}; Discs{n} donne {a1:2+6n};
    Annulus{n} donne {a1:2+6n, a2:1}.

    Attributes:
        kind: Famille du gabarit
        n: Moitié du nombre de points triples
    """
    model_config = ConfigDict(frozen=True)

    kind: TemplateKind = Field(..., description="Famille du gabarit", examples=["Discs"])
    n: int = Field(default=0, ge=0, description="Moitié du nombre de points triples", examples=[1])

    @classmethod
    def circles(cls) -> "BaseTemplate":
        return cls(kind=TemplateKind.CIRCLES, n=0)

    @classmethod
    def discs(cls, n: int) -> "BaseTemplate":
        return cls(kind=TemplateKind.DISCS, n=n)

    @classmethod
    def annulus(cls, n: int) -> "BaseTemplate":
        return cls(kind=TemplateKind.ANNULUS, n=n)

    def census(self) -> Census:
        """Recensement produit par le gabarit."""
        if self.kind == TemplateKind.CIRCLES:
            return Census.of({1: 2, 2: 1})
        if self.kind == TemplateKind.DISCS:
            return Census.of({1: 2 + 6 * self.n})
        return Census.of({1: 2 + 6 * self.n, 2: 1})

    def label(self) -> str:
        if self.kind == TemplateKind.CIRCLES:
            return "Circles"
        return f"{self.kind.value}{{{self.n}}}"


class StepKind(str, Enum):
    """Type de chirurgie."""
    F1A = "F1a"
    F1B = "F1b"


class SurgeryStep(BaseModel):
    """
    Une étape de chirurgie.

    F1a{m} insère deux cercles côte à côte dans une pièce C_{m-2};
    F1b insère deux cercles emboîtés dans un disque.

    Attributes:
        kind: F1a ou F1b
        m: Indice m de l'étape de réduction inversée (F1a seulement)
    """
    model_config = ConfigDict(frozen=True)

    kind: StepKind = Field(..., description="Type de chirurgie", examples=["F1a"])
    m: Optional[int] = Field(default=None, ge=3, description="Indice m (F1a seulement)", examples=[3])

    @model_validator(mode="after")
    def check_m(self) -> "SurgeryStep":
        if self.kind == StepKind.F1A and self.m is None:
            raise ValueError("une étape F1a porte un m >= 3")
        if self.kind == StepKind.F1B and self.m is not None:
            raise ValueError("une étape F1b ne porte pas de m")
        return self

    @classmethod
    def f1a(cls, m: int) -> "SurgeryStep":
        return cls(kind=StepKind.F1A, m=m)

    @classmethod
    def f1b(cls) -> "SurgeryStep":
        return cls(kind=StepKind.F1B)

    def label(self) -> str:
        return f"F1a{{{self.m}}}" if self.kind == StepKind.F1A else "F1b"


class SurgeryPlan(BaseModel):
    """
    Plan de réalisation: un gabarit de base et des chirurgies ordonnées.

    Attributes:
        base: Gabarit de départ
        steps: Étapes dans l'ordre d'exécution (depuis la base)
        trace: Recensements intermédiaires; trace[0] est celui de la base,
            trace[i+1] celui obtenu après steps[i]
    """
    model_config = ConfigDict(frozen=True)

    base: BaseTemplate
    steps: Tuple[SurgeryStep, ...] = ()
    trace: Tuple[Census, ...] = ()

    @model_validator(mode="after")
    def check_trace(self) -> "SurgeryPlan":
        if len(self.trace) != len(self.steps) + 1:
            raise ValueError("la trace compte une entrée de plus que les étapes")
        return self

    @field_serializer("trace")
    def serialize_trace(self, trace: Tuple[Census, ...]) -> list:
        return [census.to_text() for census in trace]

    @property
    def target(self) -> Census:
        """Recensement final du plan."""
        return self.trace[-1]

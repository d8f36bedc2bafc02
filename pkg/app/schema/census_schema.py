"""Schémas Pydantic pour les recensements de pièces."""

import re
from enum import Enum
from typing import Any, Dict, Iterable, Mapping, Optional, Tuple

from pydantic import BaseModel, ConfigDict, Field, model_validator

from app.exceptions import CensusError, CensusParseError, CountOverflow

# Bornes des comptes: arithmétique vérifiée, jamais de repli modulo 2^64
MAX_COUNT = 2**63 - 1
MAX_TOTAL = 2**64 - 1

_COUNT_PATTERN = re.compile(r"^[0-9]+$")


def _text_counts(text: str) -> Dict[int, int]:
    counts = {}
    for position, field in enumerate(text.split(","), start=1):
        field = field.strip()
        if not _COUNT_PATTERN.match(field):
            raise CensusParseError(f"a_{position}={field!r} n'est pas un entier non négatif")
        counts[position] = int(field)
    return counts


class Census(BaseModel):
    """
    Recensement a_1, a_2, ... des pièces C_k d'une dissection de S².

    Les entrées sont stockées triées par k, sans compte nul, de sorte que
    deux recensements égaux ont la même représentation.

    Attributes:
        entries: Couples (k, a_k) avec k >= 1 et a_k >= 1, triés par k
    """
    model_config = ConfigDict(frozen=True)

    entries: Tuple[Tuple[int, int], ...] = Field(
        default=(),
        description="Couples (k, a_k) triés, comptes nuls exclus",
        examples=[((1, 8), (2, 1))]
    )

    @model_validator(mode="before")
    @classmethod
    def normalize_entries(cls, data: Any) -> Any:
        """
        Normalise les entrées: accepte la forme textuelle "a1,a2,...", un
        dictionnaire ou des couples, supprime les zéros et vérifie les bornes.
        """
        if isinstance(data, str):
            data = {"entries": _text_counts(data)}
        if not isinstance(data, Mapping) or "entries" not in data:
            return data

        raw = data["entries"]
        items: Iterable = raw.items() if isinstance(raw, Mapping) else raw

        merged: Dict[int, int] = {}
        for item in items:
            k, count = int(item[0]), item[1]
            if isinstance(count, bool) or not isinstance(count, int):
                raise CensusError(f"compte a_{k}={count!r} n'est pas un entier")
            if k < 1:
                raise CensusError(f"indice k={k} invalide, k doit être >= 1")
            if count < 0:
                raise CensusError(f"compte a_{k}={count} négatif")
            merged[k] = merged.get(k, 0) + count

        for k, count in merged.items():
            if count > MAX_COUNT:
                raise CountOverflow(f"a_{k} dépasse 2^63-1")
        if sum(merged.values()) > MAX_TOTAL:
            raise CountOverflow("le nombre total de pièces dépasse 2^64-1")

        return {"entries": tuple(sorted((k, c) for k, c in merged.items() if c > 0))}

    @classmethod
    def of(cls, counts: Optional[Mapping[int, int]] = None) -> "Census":
        """Construit un recensement depuis un dictionnaire k -> a_k."""
        return cls(entries=dict(counts or {}))

    def get(self, k: int) -> int:
        """Retourne a_k (0 si absent)."""
        for index, count in self.entries:
            if index == k:
                return count
        return 0

    def as_dict(self) -> Dict[int, int]:
        return dict(self.entries)

    def as_sequence(self) -> Tuple[int, ...]:
        """Suite dense a_1..a_m, zéros intérieurs compris."""
        return tuple(self.get(k) for k in range(1, self.max_index + 1))

    @property
    def max_index(self) -> int:
        """Le plus grand k avec a_k != 0 (0 pour le recensement vide)."""
        return self.entries[-1][0] if self.entries else 0

    @property
    def total(self) -> int:
        """Nombre total de pièces r = somme des a_k."""
        return sum(count for _, count in self.entries)

    def to_text(self) -> str:
        """Forme textuelle "a1,a2,..." sans zéros de fin."""
        if not self.entries:
            return "0"
        return ",".join(str(c) for c in self.as_sequence())

    def __str__(self) -> str:
        return self.to_text()


class InfeasibilityReason(str, Enum):
    """Restriction violée par un recensement."""
    E_VIOLATION = "E"
    P_VIOLATION = "P"


class FeasibilityVerdict(BaseModel):
    """
    Verdict de réalisabilité d'un recensement.

    Attributes:
        feasible: Vrai si (E) et (P) sont satisfaites
        n: Moitié du nombre de points triples (si réalisable)
        reason: Restriction violée (si non réalisable)
    """
    model_config = ConfigDict(frozen=True)

    feasible: bool = Field(..., description="Vrai si (E) et (P) sont satisfaites")
    n: Optional[int] = Field(default=None, ge=0, description="Nombre de paires de points triples")
    reason: Optional[InfeasibilityReason] = Field(default=None, description="Restriction violée")

    @model_validator(mode="after")
    def check_shape(self) -> "FeasibilityVerdict":
        if self.feasible and (self.n is None or self.reason is not None):
            raise ValueError("un verdict réalisable porte n et aucune raison")
        if not self.feasible and (self.reason is None or self.n is not None):
            raise ValueError("un verdict non réalisable porte une raison et pas de n")
        return self

    @classmethod
    def feasible_with(cls, n: int) -> "FeasibilityVerdict":
        return cls(feasible=True, n=n)

    @classmethod
    def infeasible_by(cls, reason: InfeasibilityReason) -> "FeasibilityVerdict":
        return cls(feasible=False, reason=reason)

    def to_line(self) -> str:
        """Ligne de verdict de la commande check."""
        if self.feasible:
            return f"feasible n={self.n}"
        return f"infeasible reason={self.reason.value}"


class PieceRow(BaseModel):
    """
    Une ligne du détail des pièces.

    Attributes:
        k: Nombre de composantes de bord
        count: Nombre de pièces C_k
        euler_characteristic: chi(C_k) = 2 - k
    """
    model_config = ConfigDict(frozen=True)

    k: int = Field(..., ge=1)
    count: int = Field(..., ge=1)
    euler_characteristic: int

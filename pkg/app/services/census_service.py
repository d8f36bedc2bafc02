"""Service pour l'arithmétique des recensements et la décision de réalisabilité."""

import logging
from typing import List, Mapping

from app.exceptions import CensusParseError, NegativeCount
from app.schema.census_schema import (
    Census,
    FeasibilityVerdict,
    InfeasibilityReason,
    PieceRow,
)

logger = logging.getLogger(__name__)


def parse_census(text: str) -> Census:
    """
    Lit la forme textuelle "a1,a2,a3,..." d'un recensement.

    Args:
        text: Comptes séparés par des virgules, a_1 en premier

    Returns:
        Census: Le recensement normalisé

    Raises:
        CensusParseError: Si un champ n'est pas un entier non négatif
    """
    if text is None or not text.strip():
        raise CensusParseError("recensement vide")
    return Census.model_validate(text)


def euler_sum(census: Census) -> int:
    """
    Calcule la somme des (2 - k) a_k.

    Args:
        census: Le recensement

    Returns:
        int: La somme signée (peut être négative)
    """
    return sum((2 - k) * count for k, count in census.entries)


def total_faces(census: Census) -> int:
    """Nombre total de pièces r = somme des a_k."""
    return census.total


def check_feasibility(census: Census) -> FeasibilityVerdict:
    """
    Décide si le recensement satisfait les restrictions (E) et (P).

    (E): la somme des (2 - k) a_k vaut 2 + 6n pour un n >= 0.
    (P): si n = 0, le nombre total de pièces est impair.

    Args:
        census: Le recensement à tester

    Returns:
        FeasibilityVerdict: Réalisable avec n, ou la restriction violée
    """
    excess = euler_sum(census) - 2
    if excess < 0 or excess % 6 != 0:
        logger.debug(f"Recensement {census} rejeté par (E): somme - 2 = {excess}")
        return FeasibilityVerdict.infeasible_by(InfeasibilityReason.E_VIOLATION)

    n = excess // 6
    if n == 0 and census.total % 2 == 0:
        logger.debug(f"Recensement {census} rejeté par (P): {census.total} pièces")
        return FeasibilityVerdict.infeasible_by(InfeasibilityReason.P_VIOLATION)

    return FeasibilityVerdict.feasible_with(n)


def triple_points(verdict: FeasibilityVerdict) -> int:
    """Nombre de points triples 2n d'un verdict réalisable (0 sinon)."""
    return 2 * verdict.n if verdict.feasible else 0


def census_add(census: Census, k: int, delta: int) -> Census:
    """
    Ajoute delta au compte a_k.

    Args:
        census: Le recensement de départ
        k: Indice de la pièce C_k
        delta: Variation signée

    Returns:
        Census: Le nouveau recensement normalisé

    Raises:
        NegativeCount: Si a_k + delta < 0
    """
    current = census.get(k)
    if current + delta < 0:
        raise NegativeCount(k, current, delta)

    counts = census.as_dict()
    counts[k] = current + delta
    return Census.of(counts)


def census_sub(census: Census, k: int, delta: int) -> Census:
    """
    Retire |delta| au compte a_k; le signe de delta est ignoré.

    Raises:
        NegativeCount: Si le compte deviendrait négatif
    """
    return census_add(census, k, -abs(delta))


def apply_delta(census: Census, delta: Mapping[int, int]) -> Census:
    """Applique une variation k -> delta_k, dans l'ordre croissant des k."""
    result = census
    for k in sorted(delta):
        result = census_add(result, k, delta[k])
    return result


def census_difference(after: Census, before: Census) -> dict:
    """Variation after - before, sans les termes nuls."""
    keys = set(after.as_dict()) | set(before.as_dict())
    diff = {k: after.get(k) - before.get(k) for k in sorted(keys)}
    return {k: d for k, d in diff.items() if d != 0}


def pieces(census: Census) -> List[PieceRow]:
    """
    Détaille les pièces: une ligne par k avec chi(C_k) = 2 - k.

    Args:
        census: Le recensement

    Returns:
        List[PieceRow]: Les lignes triées par k
    """
    return [PieceRow(k=k, count=count, euler_characteristic=2 - k) for k, count in census.entries]

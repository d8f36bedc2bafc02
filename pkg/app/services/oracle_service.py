"""Service oracle: énumération exhaustive du cas n = 0 et générateurs aléatoires."""

import logging
import random
from functools import lru_cache
from typing import List, Set, Tuple

from app.config import settings
from app.exceptions import InternalInvariantViolation, InvalidParameter
from app.model.certificate_model import Certificate
from app.model.nesting_forest_model import NestingForest
from app.schema.census_schema import Census
from app.schema.plan_schema import BaseTemplate, SurgeryStep
from app.services.census_service import check_feasibility
from app.services.surgery_service import DissectionBuilder, instantiate_base

logger = logging.getLogger(__name__)

# Plus grand k tiré pour les pièces C_k, k >= 3, des recensements aléatoires
RANDOM_MAX_K = 12


def forest_census(forest: NestingForest) -> Census:
    """
    Recensement des pièces découpées par des cercles disjoints.

    L'intérieur de chaque cercle est une pièce bordée par ce cercle et ses
    enfants (k = 1 + enfants); la face extérieure est bordée par les
    racines (k = nombre de racines). Il y a donc c + 1 pièces.

    Args:
        forest: La forêt d'emboîtement

    Returns:
        Census: Le recensement
    """
    counts = {forest.root_count: 1}
    for children in forest.children_counts():
        counts[1 + children] = counts.get(1 + children, 0) + 1
    return Census.of(counts)


@lru_cache(maxsize=None)
def forest_shapes(size: int) -> Tuple[Tuple, ...]:
    """
    Formes canoniques des forêts enracinées non étiquetées à size nœuds.

    Une forme est un tuple trié d'arbres, un arbre étant la forme de la
    forêt de ses enfants; deux forêts isomorphes ont la même forme.
    """
    if size == 0:
        return ((),)

    shapes = set()
    for first in range(1, size + 1):
        for tree in forest_shapes(first - 1):
            for rest in forest_shapes(size - first):
                shapes.add(tuple(sorted((tree,) + rest)))
    return tuple(sorted(shapes))


def _census_partition(circles: int) -> Set[Census]:
    return {forest_census(NestingForest.from_shape(shape)) for shape in forest_shapes(circles)}


def enumerate_n0(max_circles: int) -> Set[Census]:
    """
    Tous les recensements donnés par c cercles emboîtés, c pair, 2 <= c <= max_circles.

    Chaque taille c est une partition indépendante; les résultats sont
    réunis par union d'ensembles.

    Args:
        max_circles: Nombre maximal de cercles (pair)

    Returns:
        Set[Census]: Recensements distincts

    Raises:
        InvalidParameter: Si max_circles est impair, < 2 ou au-delà de la borne configurée
        InternalInvariantViolation: Si une forêt donne un recensement qui viole (E) ou (P)
    """
    if max_circles < 2 or max_circles % 2:
        raise InvalidParameter(f"max_circles doit être pair et >= 2, reçu {max_circles}")
    if max_circles > settings.max_enum_circles:
        raise InvalidParameter(f"max_circles limité à {settings.max_enum_circles}, reçu {max_circles}")

    result: Set[Census] = set()
    for circles in range(2, max_circles + 1, 2):
        result |= _census_partition(circles)

    rejected = [census for census in result if not is_feasible_n0(census)]
    if rejected:
        raise InternalInvariantViolation(f"recensement de cercles non réalisable: {rejected[0]}")

    logger.info(f"Énumération n=0 jusqu'à {max_circles} cercles: {len(result)} recensement(s)")
    return result


def sorted_censuses(censuses: Set[Census]) -> List[Census]:
    """Ordre stable: nombre de pièces, puis suite a_1, a_2, ..."""
    return sorted(censuses, key=lambda c: (c.total, c.as_sequence()))


def random_feasible_census(rng: random.Random, max_faces: int) -> Census:
    """
    Tire un recensement réalisable d'au plus max_faces pièces.

    On tire n, puis a_2 et des pièces C_k (k >= 3); a_1 est fixé par (E)
    et a_2 est ajusté de 1 si (P) l'exige.

    Args:
        rng: Générateur pseudo-aléatoire
        max_faces: Nombre maximal de pièces (>= 3)

    Returns:
        Census: Un recensement réalisable

    Raises:
        InvalidParameter: Si max_faces < 3
    """
    if max_faces < 3:
        raise InvalidParameter(f"max_faces doit valoir au moins 3, reçu {max_faces}")

    while True:
        n = rng.randint(0, (max_faces - 2) // 6)
        budget = max_faces - (2 + 6 * n)

        counts = {}
        spare = rng.randint(0, budget)
        while spare >= 2 and rng.random() < 0.7:
            # Une pièce C_k coûte k - 1 pièces: elle-même et k - 2 disques de plus
            k = rng.randint(3, min(RANDOM_MAX_K, spare + 1))
            counts[k] = counts.get(k, 0) + 1
            spare -= k - 1

        high = sum(counts.values())
        counts[1] = 2 + 6 * n + sum((k - 2) * c for k, c in counts.items())
        counts[2] = rng.randint(0, max_faces - counts[1] - high)

        if n == 0 and (counts[1] + counts[2] + high) % 2 == 0:
            if counts[2] > 0:
                counts[2] -= 1
            elif counts[1] + high < max_faces:
                counts[2] = 1
            else:
                continue

        return Census.of(counts)


def random_certificate(seed: int, max_faces: int = 20, max_n: int = 2) -> Certificate:
    """
    Certificat aléatoire valide, déterministe en seed.

    Un gabarit de base est tiré, puis des chirurgies applicables au hasard
    tant que le nombre de pièces reste <= max_faces.

    Args:
        seed: Graine
        max_faces: Nombre maximal de pièces (>= 3)
        max_n: Plus grand n du gabarit

    Returns:
        Certificate: Un certificat qui passe la vérification

    Raises:
        InvalidParameter: Si les bornes sont incohérentes
    """
    if max_faces < 3 or max_n < 0:
        raise InvalidParameter(f"bornes invalides: max_faces={max_faces}, max_n={max_n}")

    rng = random.Random(seed)
    n = rng.randint(0, min(max_n, (max_faces - 2) // 6))
    if n == 0:
        template = BaseTemplate.circles()
    elif rng.random() < 0.5 and 3 + 6 * n <= max_faces:
        template = BaseTemplate.annulus(n)
    else:
        template = BaseTemplate.discs(n)

    builder = DissectionBuilder(instantiate_base(template))
    census = builder.census()
    while census.total + 2 <= max_faces and rng.random() < 0.85:
        options = [SurgeryStep.f1b()] if census.get(1) else []
        options += [SurgeryStep.f1a(k + 2) for k, _ in census.entries]
        builder.apply(rng.choice(options))
        census = builder.census()

    return builder.build()


def is_feasible_n0(census: Census) -> bool:
    """Vrai si census est réalisable sans point triple."""
    verdict = check_feasibility(census)
    return verdict.feasible and verdict.n == 0

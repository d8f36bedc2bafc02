"""Service de planification: réduction récursive d'un recensement vers un gabarit de base."""

import logging
from typing import Dict, List

from app.exceptions import InternalInvariantViolation, NotFeasible
from app.schema.census_schema import Census
from app.schema.plan_schema import BaseTemplate, StepKind, SurgeryPlan, SurgeryStep
from app.services.census_service import apply_delta, check_feasibility

logger = logging.getLogger(__name__)


def step_delta(step: SurgeryStep) -> Dict[int, int]:
    """
    Variation du recensement produite par une chirurgie.

    F1a{m >= 4}: {a1:+2, a_{m-2}:-1, a_m:+1}; F1a{3}: {a1:+1, a3:+1};
    F1b: {a2:+2}.

    Args:
        step: L'étape de chirurgie

    Returns:
        Dict[int, int]: Variation k -> delta, sans terme nul
    """
    if step.kind == StepKind.F1B:
        return {2: 2}

    m = step.m
    delta: Dict[int, int] = {1: 2, m: 1}
    delta[m - 2] = delta.get(m - 2, 0) - 1
    return {k: d for k, d in sorted(delta.items()) if d != 0}


def reduction_measure(census: Census) -> int:
    """Mesure 2 * somme_{k>=3} (k-2) a_k + a_2, strictement décroissante par réduction."""
    return 2 * sum((k - 2) * c for k, c in census.entries if k >= 3) + census.get(2)


def _base_for(census: Census, n: int) -> BaseTemplate:
    if n == 0:
        if census != Census.of({1: 2, 2: 1}):
            raise InternalInvariantViolation(f"réduction n=0 terminée sur {census}, attendu 2,1")
        return BaseTemplate.circles()

    if census == Census.of({1: 2 + 6 * n}):
        return BaseTemplate.discs(n)
    if census == Census.of({1: 2 + 6 * n, 2: 1}):
        return BaseTemplate.annulus(n)
    raise InternalInvariantViolation(f"réduction terminée sur {census}, aucun gabarit pour n={n}")


def plan_reduction(census: Census) -> SurgeryPlan:
    """
    Construit le plan de chirurgie d'un recensement réalisable.

    On retire d'abord le plus grand m >= 3 (inverse de F1a{m}) tant qu'il
    existe, puis on retire 2 de a_2 (inverse de F1b) tant que a_2 >= 2.
    Le recensement restant est celui d'un gabarit de base. Les étapes sont
    rendues dans l'ordre d'exécution, inverse de l'ordre de réduction.

    Args:
        census: Recensement cible

    Returns:
        SurgeryPlan: Le plan, avec tous les recensements intermédiaires

    Raises:
        NotFeasible: Si le recensement viole (E) ou (P)
        InternalInvariantViolation: Si le plan ne se rejoue pas jusqu'à la cible
    """
    verdict = check_feasibility(census)
    if not verdict.feasible:
        raise NotFeasible(verdict.reason.value, f"recensement {census}")

    n = verdict.n
    reduced: List[SurgeryStep] = []
    chain: List[Census] = [census]
    current = census

    while current.max_index >= 3:
        step = SurgeryStep.f1a(current.max_index)
        current = _undo(current, step)
        reduced.append(step)
        chain.append(current)

    while current.get(2) >= 2:
        step = SurgeryStep.f1b()
        current = _undo(current, step)
        reduced.append(step)
        chain.append(current)

    base = _base_for(current, n)
    plan = SurgeryPlan(base=base, steps=tuple(reversed(reduced)), trace=tuple(reversed(chain)))
    measure = reduction_measure(census)
    if len(plan.steps) > measure:
        raise InternalInvariantViolation(f"{len(plan.steps)} étapes pour {census}, mesure {measure}")
    if replay(plan)[-1] != census:
        raise InternalInvariantViolation(f"le plan de {census} ne se rejoue pas jusqu'à la cible")

    logger.info(
        f"Plan établi pour {census}: base {base.label()}, {len(plan.steps)} étape(s)",
        extra={"census": census.to_text(), "n": n, "steps": len(plan.steps)},
    )
    return plan


def _undo(census: Census, step: SurgeryStep) -> Census:
    """Étape de réduction: retire la variation de la chirurgie."""
    inverse = {k: -d for k, d in step_delta(step).items()}
    return apply_delta(census, inverse)


def replay(plan: SurgeryPlan) -> List[Census]:
    """
    Rejoue les variations du plan depuis le recensement de sa base.

    Returns:
        List[Census]: Recensements successifs, base comprise
    """
    current = plan.base.census()
    replayed = [current]
    for step in plan.steps:
        current = apply_delta(current, step_delta(step))
        replayed.append(current)
    return replayed


def explain(plan: SurgeryPlan) -> List[str]:
    """
    Décrit la chaîne de réalisation, une ligne par étape.

    Returns:
        List[str]: Lignes "avant --étape--> après"
    """
    lines = [f"base {plan.base.label()}: {plan.trace[0]}"]
    for step, before, after in zip(plan.steps, plan.trace, plan.trace[1:]):
        lines.append(f"{before} --{step.label()}--> {after}")
    return lines

"""Service de chirurgie: gabarits de base, chirurgies F1a/F1b et réalisation."""

import heapq
import logging
from collections import Counter
from typing import Dict, List, Optional

from app.config import settings
from app.exceptions import (
    DissectionError,
    InternalInvariantViolation,
    InvalidParameter,
    NoHostFace,
    NotFeasible,
)
from app.model.certificate_model import (
    SIDE_INNER,
    SIDE_OUTER,
    Attachment,
    Certificate,
    Component,
    FreeCircle,
)
from app.model.comb_map_model import DEGREE, CombMap
from app.schema.census_schema import Census
from app.schema.plan_schema import BaseTemplate, StepKind, SurgeryStep, TemplateKind
from app.services.census_service import check_feasibility
from app.services.complex_service import LocalFace, global_faces, verify
from app.services.planner_service import plan_reduction

logger = logging.getLogger(__name__)

# Face locale des gabarits où se fait l'inclusion de l'anneau
ANNULUS_HOST_FACE = 0


def doubled_cycle(length: int) -> CombMap:
    """
    Cycle doublé: length sommets en cycle, deux arêtes parallèles entre
    sommets consécutifs.

    Au sommet i, les brins 4i..4i+3 sont, dans le sens trigonométrique:
    avant-intérieur, arrière-intérieur, arrière-extérieur, avant-extérieur.
    La carte a length lentilles, une face intérieure et une face
    extérieure, soit length + 2 faces, toutes des disques.

    Args:
        length: Nombre de sommets (>= 2)

    Returns:
        CombMap: La carte, V = length, E = 2 length

    Raises:
        InvalidParameter: Si length < 2
    """
    if length < 2:
        raise InvalidParameter(f"un cycle doublé a au moins 2 sommets, reçu {length}")

    alpha = [0] * (DEGREE * length)
    for i in range(length):
        following = (i + 1) % length
        inner_forward, outer_forward = DEGREE * i, DEGREE * i + 3
        inner_backward, outer_backward = DEGREE * following + 1, DEGREE * following + 2
        alpha[inner_forward], alpha[inner_backward] = inner_backward, inner_forward
        alpha[outer_forward], alpha[outer_backward] = outer_backward, outer_forward

    return CombMap(
        vertex_count=length,
        sigma=CombMap.standard_rotation(length),
        alpha=tuple(alpha),
    )


def instantiate_base(template: BaseTemplate) -> Certificate:
    """
    Construit le certificat d'un gabarit de base.

    Circles: deux cercles, le second dans side1 du premier.
    Discs{n}: un cycle doublé de longueur 6n, 6n + 2 disques.
    Annulus{n}: un cycle doublé de longueur 2 inclus dans une face d'un
    cycle doublé de longueur 6n - 2; les deux faces fusionnées forment
    l'unique anneau.

    Args:
        template: Le gabarit

    Returns:
        Certificate: Le certificat de base

    Raises:
        InvalidParameter: Si n ne convient pas au gabarit
    """
    if template.kind == TemplateKind.CIRCLES:
        if template.n != 0:
            raise InvalidParameter("le gabarit Circles n'existe que pour n = 0")
        return Certificate(
            components=(FreeCircle(), FreeCircle()),
            root=0,
            attachments=(Attachment(child=1, parent=0, parent_face=SIDE_INNER, outward_face=SIDE_OUTER),),
        )

    if template.n < 1:
        raise InvalidParameter(f"le gabarit {template.kind.value} exige n >= 1, reçu {template.n}")

    if template.kind == TemplateKind.DISCS:
        return Certificate(components=(doubled_cycle(6 * template.n),), root=0)

    return Certificate(
        components=(doubled_cycle(6 * template.n - 2), doubled_cycle(2)),
        root=0,
        attachments=(
            Attachment(child=1, parent=0, parent_face=ANNULUS_HOST_FACE, outward_face=ANNULUS_HOST_FACE),
        ),
    )


class DissectionBuilder:
    """
    Certificat en construction, avec l'index de ses faces globales.

    Les faces globales sont fusionnées une seule fois, à la création. Une
    chirurgie ne touche qu'une classe hôte et ouvre des classes formées
    de faces des nouveaux cercles: l'index est mis à jour sur place, sans
    refusionner. Une classe est désignée par sa plus petite face locale,
    qui ne change plus une fois la classe créée.
    """

    def __init__(self, cert: Certificate) -> None:
        self._components: List[Component] = list(cert.components)
        self._attachments: List[Attachment] = list(cert.attachments)
        self._root = cert.root
        self._sizes: Dict[LocalFace, int] = {}
        self._by_size: Dict[int, List[LocalFace]] = {}
        self._counts: Counter = Counter()
        for face in global_faces(cert):
            self._open(face.members[0], face.k)

    def census(self) -> Census:
        """Recensement courant, lu sur les tailles de classes."""
        return Census.of(self._counts)

    def find_host(self, k: int) -> LocalFace:
        """
        Face hôte d'une chirurgie: la plus petite face locale (composante
        puis face) dont la classe est de type C_k.

        Raises:
            NoHostFace: Si aucune pièce C_k n'existe
        """
        heap = self._by_size.get(k, [])
        # Les tailles ne font que croître: une entrée périmée ne redevient jamais valide
        while heap and self._sizes[heap[0]] != k:
            heapq.heappop(heap)
        if not heap:
            raise NoHostFace(k)
        return heap[0]

    def f1a(self, m: int) -> None:
        if m < 3:
            raise InvalidParameter(f"F1a exige m >= 3, reçu {m}")

        host = self.find_host(m - 2)
        first = len(self._components)
        for child in (first, first + 1):
            self._add_circle(
                Attachment(child=child, parent=host.component, parent_face=host.face, outward_face=SIDE_OUTER)
            )
            self._open(LocalFace(child, SIDE_INNER), 1)
        self._grow(host, 2)

    def f1b(self) -> None:
        host = self.find_host(1)
        outer = len(self._components)
        self._add_circle(
            Attachment(child=outer, parent=host.component, parent_face=host.face, outward_face=SIDE_OUTER)
        )
        self._add_circle(
            Attachment(child=outer + 1, parent=outer, parent_face=SIDE_INNER, outward_face=SIDE_OUTER)
        )
        self._grow(host, 1)
        # Anneau entre les deux cercles, puis disque intérieur
        self._open(LocalFace(outer, SIDE_INNER), 2)
        self._open(LocalFace(outer + 1, SIDE_INNER), 1)

    def apply(self, step: SurgeryStep) -> None:
        """Applique une étape de plan."""
        if step.kind == StepKind.F1A:
            self.f1a(step.m)
        else:
            self.f1b()

    def build(self) -> Certificate:
        return Certificate(
            components=tuple(self._components),
            root=self._root,
            attachments=tuple(self._attachments),
        )

    def _add_circle(self, attachment: Attachment) -> None:
        self._components.append(FreeCircle())
        self._attachments.append(attachment)

    def _open(self, face: LocalFace, size: int) -> None:
        self._sizes[face] = size
        self._counts[size] += 1
        heapq.heappush(self._by_size.setdefault(size, []), face)

    def _grow(self, face: LocalFace, extra: int) -> None:
        size = self._sizes[face]
        self._counts[size] -= 1
        if not self._counts[size]:
            del self._counts[size]
        self._open(face, size + extra)


def apply_f1a(cert: Certificate, m: int) -> Certificate:
    """
    Chirurgie F1a{m}: deux cercles côte à côte dans une pièce C_{m-2}.

    La pièce hôte devient une C_m et chaque cercle borde un nouveau disque.

    Args:
        cert: Certificat valide
        m: Indice m >= 3

    Returns:
        Certificate: Le nouveau certificat (V inchangé, deux cercles de plus)

    Raises:
        InvalidParameter: Si m < 3
        NoHostFace: Si aucune pièce C_{m-2} n'existe
    """
    builder = DissectionBuilder(cert)
    builder.f1a(m)
    return builder.build()


def apply_f1b(cert: Certificate) -> Certificate:
    """
    Chirurgie F1b: deux cercles emboîtés dans un disque.

    Le disque hôte devient un anneau, l'espace entre les cercles un
    second anneau, et l'intérieur du cercle interne un disque.

    Raises:
        NoHostFace: Si aucun disque n'existe
    """
    builder = DissectionBuilder(cert)
    builder.f1b()
    return builder.build()


def realize(census: Census, check_each_step: Optional[bool] = None) -> Certificate:
    """
    Réalise un recensement par un certificat de dissection.

    Enchaîne décision de réalisabilité, plan de réduction, gabarit de base
    et chirurgies. Les faces globales du gabarit sont fusionnées une fois,
    puis suivies pas à pas; le recensement lu après chaque chirurgie est
    comparé à la trace du plan, et le certificat final est vérifié depuis
    zéro par verify.

    Args:
        census: Le recensement à réaliser
        check_each_step: Contrôle après chaque étape (défaut: configuration)

    Returns:
        Certificate: Un certificat dont le recensement est census

    Raises:
        NotFeasible: Si census viole (E) ou (P)
        InternalInvariantViolation: Si un auto-contrôle échoue
    """
    if check_each_step is None:
        check_each_step = settings.check_each_step

    verdict = check_feasibility(census)
    if not verdict.feasible:
        logger.warning(f"Recensement {census} non réalisable: restriction {verdict.reason.value}")
        raise NotFeasible(verdict.reason.value, f"recensement {census}")

    plan = plan_reduction(census)
    try:
        builder = DissectionBuilder(instantiate_base(plan.base))
        if check_each_step:
            _expect(builder.census(), plan.trace[0], plan.base.label())

        for step, expected in zip(plan.steps, plan.trace[1:]):
            builder.apply(step)
            if check_each_step:
                _expect(builder.census(), expected, step.label())
        cert = builder.build()
    except InternalInvariantViolation:
        raise
    except DissectionError as e:
        logger.error(f"Échec de chirurgie pour {census}: {e}")
        raise InternalInvariantViolation(f"chirurgie impossible pendant la réalisation de {census}: {e}")

    report = verify(cert)
    if not report.ok or report.census != census or report.n != verdict.n:
        logger.error(f"Vérification finale en échec pour {census}")
        raise InternalInvariantViolation(f"le certificat réalisé ne vérifie pas {census}")

    logger.info(
        f"Recensement {census} réalisé: V={cert.vertex_count}, {cert.circle_count} cercle(s)",
        extra={
            "census": census.to_text(),
            "n": verdict.n,
            "vertices": cert.vertex_count,
            "circles": cert.circle_count,
            "steps": len(plan.steps),
        },
    )
    return cert


def _expect(actual: Census, expected: Census, label: str) -> None:
    if actual != expected:
        logger.error(f"Recensement {actual} après {label}, attendu {expected}")
        raise InternalInvariantViolation(f"après {label}: recensement {actual}, attendu {expected}")

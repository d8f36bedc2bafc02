"""Service d'export: JSON sd-cert/1, JSON des plans, lignes JSON et DOT."""

import logging
from typing import Iterable, List, Union

import orjson
from pydantic import ValidationError

from app.exceptions import CertificateFormatError
from app.model.certificate_model import Certificate, FreeCircle
from app.schema.census_schema import Census
from app.schema.certificate_schema import CertificateDocument
from app.schema.plan_schema import SurgeryPlan
from app.services.complex_service import certificate_summary, trace_faces

logger = logging.getLogger(__name__)

_JSON_OPTIONS = orjson.OPT_INDENT_2 | orjson.OPT_SORT_KEYS | orjson.OPT_APPEND_NEWLINE


def dump_certificate(cert: Certificate) -> bytes:
    """Sérialise un certificat en JSON sd-cert/1 (octets stables)."""
    document = CertificateDocument.from_certificate(cert)
    return orjson.dumps(document.model_dump(mode="json"), option=_JSON_OPTIONS)


def load_certificate(data: Union[bytes, str]) -> Certificate:
    """
    Lit un document sd-cert/1.

    Seule la forme du document est contrôlée ici; la validité structurelle
    relève du vérificateur.

    Raises:
        CertificateFormatError: Si le JSON ou le schéma est invalide
    """
    try:
        payload = orjson.loads(data)
    except orjson.JSONDecodeError as e:
        raise CertificateFormatError(f"JSON invalide: {e}")

    try:
        return CertificateDocument.model_validate(payload).to_certificate()
    except ValidationError as e:
        logger.warning(f"Document de certificat rejeté: {e.error_count()} erreur(s) de schéma")
        raise CertificateFormatError(f"document sd-cert/1 invalide: {e.errors()[0]['msg']}")


def plan_to_json(plan: SurgeryPlan) -> bytes:
    """Sérialise un plan: base, étapes, trace des recensements."""
    return orjson.dumps(plan.model_dump(mode="json", exclude_none=True), option=_JSON_OPTIONS)


def censuses_to_json_lines(censuses: Iterable[Census]) -> str:
    """Un recensement par ligne: {"census": "2,1", "counts": {"1": 2, "2": 1}}."""
    lines = []
    for census in censuses:
        payload = {"census": census.to_text(), "counts": {str(k): c for k, c in census.entries}}
        lines.append(orjson.dumps(payload, option=orjson.OPT_SORT_KEYS).decode())
    return "".join(f"{line}\n" for line in lines)


def certificate_to_dot(cert: Certificate) -> str:
    """
    Export DOT d'un certificat valide.

    Un nœud par sommet, une arête par orbite de alpha, chaque cercle en
    cycle de deux nœuds étiquetés; faces et attaches en commentaires.

    Raises:
        StructuralError: Si le certificat ne passe pas la vérification
    """
    summary = certificate_summary(cert)
    lines: List[str] = [
        "graph certificate {",
        f"  // sd-cert/1 n={summary.n} V={summary.vertices} E={summary.edges} "
        f"circles={summary.circles} census={summary.census.to_text()}",
    ]

    for index, component in enumerate(cert.components):
        if isinstance(component, FreeCircle):
            lines.append(f"  // component {index}: circle")
            lines.append(f'  c{index}_a [label="c{index}"];')
            lines.append(f'  c{index}_b [label="c{index}"];')
            lines.append(f"  c{index}_a -- c{index}_b;")
            lines.append(f"  c{index}_b -- c{index}_a;")
            continue

        faces = trace_faces(component)
        lines.append(f"  // component {index}: map V={component.vertex_count} faces={len(faces)}")
        for face_id, face in enumerate(faces):
            lines.append(f"  //   face {face_id}: darts {' '.join(str(d) for d in face)}")
        for vertex in range(component.vertex_count):
            lines.append(f'  m{index}_v{vertex} [label="{index}.{vertex}"];')
        for dart, partner in enumerate(component.alpha):
            if dart < partner:
                lines.append(f"  m{index}_v{dart // 4} -- m{index}_v{partner // 4};")

    for attachment in cert.attachments:
        lines.append(
            f"  // attach {attachment.child} in face {attachment.parent_face} of {attachment.parent}"
            f" (outward face {attachment.outward_face})"
        )
    lines.append("}")
    return "\n".join(lines) + "\n"


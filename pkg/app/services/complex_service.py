"""Service du complexe de dissection: traçage des faces, faces globales, vérification."""

import logging
from functools import lru_cache
from typing import Callable, List, NamedTuple, Optional, Tuple

from app.exceptions import (
    Disconnected,
    NotSpherical,
    StructuralError,
)
from app.model.certificate_model import Certificate, FreeCircle
from app.model.comb_map_model import DEGREE, CombMap
from app.schema.census_schema import Census
from app.schema.report_schema import (
    CertificateSummary,
    CheckResult,
    CheckStatus,
    VerifyReport,
)
from app.services.census_service import euler_sum
from app.services.union_find import UnionFind

logger = logging.getLogger(__name__)

CHECK_PERMUTATIONS = "dart-permutation validity"
CHECK_REGULARITY = "4-regularity"
CHECK_SPHERICITY = "connectivity and sphericity"
CHECK_FOREST = "forest validity"
CHECK_OUTWARD = "outward-face validity"
CHECK_CIRCLES = "even circle count"
CHECK_VERTICES = "vertex count divisible by 6"
CHECK_EULER_G = "euler characteristic of G"
CHECK_IDENTITY = "identity (E)"
CHECK_PARITY = "parity (P)"

CIRCLE_FACE_COUNT = 2


class LocalFace(NamedTuple):
    """Face locale: (indice de composante, indice de face)."""
    component: int
    face: int


class GlobalFace(NamedTuple):
    """Composante connexe de S² - G, réunion de faces locales."""
    members: Tuple[LocalFace, ...]

    @property
    def k(self) -> int:
        """Nombre de composantes de bord: la pièce est de type C_k."""
        return len(self.members)


# ------------------------------------------------------------
# CARTES
# ------------------------------------------------------------

def _permutation_problem(comb_map: CombMap) -> Optional[str]:
    darts = DEGREE * comb_map.vertex_count
    if len(comb_map.sigma) != darts or len(comb_map.alpha) != darts:
        return f"{darts} brins attendus, sigma en a {len(comb_map.sigma)}, alpha {len(comb_map.alpha)}"

    for name, perm in (("sigma", comb_map.sigma), ("alpha", comb_map.alpha)):
        if sorted(perm) != list(range(darts)):
            return f"{name} n'est pas une permutation de 0..{darts - 1}"

    alpha = comb_map.alpha
    for dart in range(darts):
        if alpha[dart] == dart:
            return f"alpha fixe le brin {dart}"
        if alpha[alpha[dart]] != dart:
            return f"alpha n'est pas une involution au brin {dart}"
    return None


def _regularity_problem(comb_map: CombMap) -> Optional[str]:
    sigma = comb_map.sigma
    for vertex in range(comb_map.vertex_count):
        block = range(DEGREE * vertex, DEGREE * (vertex + 1))
        if any(sigma[d] not in block for d in block):
            return f"sigma sort des brins du sommet {vertex}"

        start, length, dart = block[0], 1, sigma[block[0]]
        while dart != start:
            dart = sigma[dart]
            length += 1
        if length != DEGREE:
            return f"sigma n'est pas un 4-cycle au sommet {vertex}"
    return None


def _is_connected(comb_map: CombMap) -> bool:
    darts = comb_map.dart_count
    if darts == 0:
        return True
    seen = {0}
    stack = [0]
    while stack:
        dart = stack.pop()
        for image in (comb_map.sigma[dart], comb_map.alpha[dart]):
            if image not in seen:
                seen.add(image)
                stack.append(image)
    return len(seen) == darts


def _face_orbits(comb_map: CombMap) -> List[Tuple[int, ...]]:
    sigma, alpha = comb_map.sigma, comb_map.alpha
    visited = [False] * comb_map.dart_count
    faces = []
    for start in range(comb_map.dart_count):
        if visited[start]:
            continue
        face = []
        dart = start
        while not visited[dart]:
            visited[dart] = True
            face.append(dart)
            dart = sigma[alpha[dart]]
        faces.append(tuple(face))
    return faces


@lru_cache(maxsize=4096)
def trace_faces(comb_map: CombMap) -> Tuple[Tuple[int, ...], ...]:
    """
    Trace les faces locales d'une carte: orbites de phi = sigma o alpha.

    Chaque face commence par son plus petit brin et les faces sont rangées
    par plus petit brin; l'indice d'une face dans ce résultat est son
    identifiant de face locale.

    Args:
        comb_map: La carte

    Returns:
        Tuple[Tuple[int, ...], ...]: Les faces, V_c + 2 pour une carte sphérique

    Raises:
        StructuralError: Si sigma/alpha ne sont pas valides ou pas 4-réguliers
        Disconnected: Si l'orbite d'un brin n'est pas l'ensemble des brins
        NotSpherical: Si V_c - E_c + F_c != 2
    """
    problem = _permutation_problem(comb_map)
    if problem:
        raise StructuralError(CHECK_PERMUTATIONS, problem)
    problem = _regularity_problem(comb_map)
    if problem:
        raise StructuralError(CHECK_REGULARITY, problem)
    if not _is_connected(comb_map):
        raise Disconnected("l'orbite du brin 0 ne couvre pas tous les brins")

    faces = _face_orbits(comb_map)
    euler = comb_map.vertex_count - comb_map.edge_count + len(faces)
    if euler != 2:
        raise NotSpherical(f"V - E + F = {euler}, attendu 2")
    return tuple(faces)


def local_face_count(component) -> int:
    """Nombre de faces locales d'une composante (2 pour un cercle)."""
    if isinstance(component, FreeCircle):
        return CIRCLE_FACE_COUNT
    return len(trace_faces(component))


# ------------------------------------------------------------
# FORÊT D'INCLUSION ET FACES GLOBALES
# ------------------------------------------------------------

def _forest_problem(cert: Certificate) -> Optional[str]:
    size = len(cert.components)
    if size == 0:
        return "aucune composante"
    if not 0 <= cert.root < size:
        return f"racine {cert.root} hors limites"

    parent_of = {}
    for attachment in cert.attachments:
        child, parent = attachment.child, attachment.parent
        if not 0 <= child < size or not 0 <= parent < size:
            return f"attache {child} -> {parent} hors limites"
        if child == cert.root:
            return "la racine est attachée à une autre composante"
        if child in parent_of:
            return f"la composante {child} a plusieurs parents"
        parent_of[child] = parent

    # Chaque nœud n'est remonté qu'une fois: les chemins résolus sont mémorisés
    reaches_root = {cert.root}
    for node in range(size):
        if node in reaches_root:
            continue
        if node not in parent_of:
            return f"la composante {node} n'est pas attachée"
        path, on_path, current = [], set(), node
        while current not in reaches_root:
            if current in on_path or current not in parent_of:
                return f"la composante {node} n'atteint pas la racine"
            path.append(current)
            on_path.add(current)
            current = parent_of[current]
        reaches_root.update(path)
    return None


def _outward_problem(cert: Certificate, face_counts: List[int]) -> Optional[str]:
    for attachment in cert.attachments:
        if not 0 <= attachment.parent_face < face_counts[attachment.parent]:
            return f"face {attachment.parent_face} absente de la composante {attachment.parent}"
        if not 0 <= attachment.outward_face < face_counts[attachment.child]:
            return f"face {attachment.outward_face} absente de la composante {attachment.child}"
    return None


def _merge_faces(cert: Certificate, face_counts: List[int]) -> List[GlobalFace]:
    offsets = [0]
    for count in face_counts:
        offsets.append(offsets[-1] + count)
    owners = [
        LocalFace(component, face)
        for component, count in enumerate(face_counts)
        for face in range(count)
    ]

    union_find = UnionFind(offsets[-1])
    for attachment in cert.attachments:
        union_find.unite(
            offsets[attachment.child] + attachment.outward_face,
            offsets[attachment.parent] + attachment.parent_face,
        )

    return [
        GlobalFace(members=tuple(owners[element] for element in members))
        for members in union_find.classes()
    ]


def global_faces(cert: Certificate) -> List[GlobalFace]:
    """
    Partitionne les faces locales en faces globales (composantes de S² - G).

    Chaque attache fusionne la face extérieure de l'enfant avec la face de
    l'hôte qui le contient; une classe de taille k est une pièce C_k.
    Les classes sont rangées par plus petite face locale.

    Args:
        cert: Le certificat

    Returns:
        List[GlobalFace]: Les faces globales

    Raises:
        StructuralError: Si une carte, la forêt ou une face est invalide
    """
    problem = _forest_problem(cert)
    if problem:
        raise StructuralError(CHECK_FOREST, problem)

    face_counts = [local_face_count(component) for component in cert.components]
    problem = _outward_problem(cert, face_counts)
    if problem:
        raise StructuralError(CHECK_OUTWARD, problem)

    return _merge_faces(cert, face_counts)


# ------------------------------------------------------------
# INVARIANTS DE G
# ------------------------------------------------------------

def euler_characteristic_of_multiplicity_set(cert: Certificate) -> int:
    """chi(G) = V - E; les cercles lisses contribuent 0."""
    return cert.vertex_count - cert.edge_count


def double_circle_count(cert: Certificate) -> int:
    """s: chaque cercle double de l'image a deux cercles antécédents."""
    return cert.circle_count // 2


# ------------------------------------------------------------
# VÉRIFICATEUR
# ------------------------------------------------------------

def _first_map_problem(cert: Certificate, find_problem: Callable[[CombMap], Optional[str]]) -> Optional[str]:
    for index, component in enumerate(cert.components):
        if isinstance(component, CombMap):
            problem = find_problem(component)
            if problem:
                return f"composante {index}: {problem}"
    return None


def _sphericity_problem(comb_map: CombMap) -> Optional[str]:
    try:
        trace_faces(comb_map)
    except StructuralError as e:
        return e.detail
    return None


def verify(cert: Certificate) -> VerifyReport:
    """
    Vérifie un certificat sans rien supposer de sa provenance.

    Les contrôles s'exécutent dans l'ordre: validité des permutations,
    4-régularité, connexité et sphéricité de chaque carte, forêt, faces
    extérieures, parité des cercles, V divisible par 6, chi(G) = -6n; puis
    le recensement est recalculé par fusion des faces et l'identité
    somme (2-k) a_k = V + 2 est contrôlée, ainsi que la parité du nombre de
    pièces quand V = 0. Un contrôle qui dépend d'un échec est marqué skip.

    Args:
        cert: Le certificat à vérifier

    Returns:
        VerifyReport: Le rapport; census et n ne sont remplis que si tout passe
    """
    checks: List[CheckResult] = []

    def record(name: str, problem: Optional[str], ok_detail: str = "") -> bool:
        if problem:
            checks.append(CheckResult(name=name, status=CheckStatus.FAIL, detail=problem))
            return False
        checks.append(CheckResult(name=name, status=CheckStatus.PASS, detail=ok_detail))
        return True

    def skip(name: str) -> None:
        checks.append(CheckResult(name=name, status=CheckStatus.SKIP, detail="contrôle précédent en échec"))

    maps_ok = record(CHECK_PERMUTATIONS, _first_map_problem(cert, _permutation_problem))
    if maps_ok:
        maps_ok = record(CHECK_REGULARITY, _first_map_problem(cert, _regularity_problem))
    else:
        skip(CHECK_REGULARITY)
    if maps_ok:
        maps_ok = record(CHECK_SPHERICITY, _first_map_problem(cert, _sphericity_problem))
    else:
        skip(CHECK_SPHERICITY)

    forest_ok = record(CHECK_FOREST, _forest_problem(cert))

    face_counts: List[int] = []
    if maps_ok and forest_ok:
        face_counts = [local_face_count(component) for component in cert.components]
        outward_ok = record(CHECK_OUTWARD, _outward_problem(cert, face_counts))
    else:
        skip(CHECK_OUTWARD)
        outward_ok = False

    circles = cert.circle_count
    circles_ok = record(
        CHECK_CIRCLES,
        f"{circles} cercle(s), nombre impair" if circles % 2 else None,
        f"{circles} cercle(s)",
    )

    vertices = cert.vertex_count
    vertices_ok = record(
        CHECK_VERTICES,
        f"V = {vertices} n'est pas multiple de 6" if vertices % 6 else None,
        f"V = {vertices}",
    )

    if maps_ok and vertices_ok:
        chi = euler_characteristic_of_multiplicity_set(cert)
        euler_ok = record(
            CHECK_EULER_G,
            f"chi(G) = {chi}, attendu {-vertices}" if chi != -vertices else None,
            f"chi(G) = {chi}",
        )
    else:
        skip(CHECK_EULER_G)
        euler_ok = False

    structural_ok = maps_ok and forest_ok and outward_ok and circles_ok and vertices_ok and euler_ok
    if not structural_ok:
        skip(CHECK_IDENTITY)
        skip(CHECK_PARITY)
        logger.warning(
            f"Certificat rejeté: {len([c for c in checks if c.status == CheckStatus.FAIL])} contrôle(s) en échec",
            extra={"vertices": vertices, "circles": circles},
        )
        return VerifyReport(checks=checks)

    counts = {}
    for face in _merge_faces(cert, face_counts):
        counts[face.k] = counts.get(face.k, 0) + 1
    census = Census.of(counts)

    total = euler_sum(census)
    identity_ok = record(
        CHECK_IDENTITY,
        f"somme (2-k) a_k = {total}, attendu V + 2 = {vertices + 2}" if total != vertices + 2 else None,
        f"somme (2-k) a_k = {total} = V + 2",
    )

    if vertices == 0:
        parity_ok = record(
            CHECK_PARITY,
            f"{census.total} pièces, nombre pair" if census.total % 2 == 0 else None,
            f"{census.total} pièces",
        )
    else:
        parity_ok = record(CHECK_PARITY, None, "sans objet: n > 0")

    if not (identity_ok and parity_ok):
        logger.warning(f"Certificat rejeté: identité non satisfaite pour {census}")
        return VerifyReport(checks=checks)

    return VerifyReport(census=census, n=vertices // 6, checks=checks)


def certificate_summary(cert: Certificate) -> CertificateSummary:
    """
    Résume un certificat valide.

    Raises:
        StructuralError: Si le certificat ne passe pas la vérification
    """
    report = verify(cert)
    if not report.ok:
        failure = report.failures()[0]
        raise StructuralError(failure.name, failure.detail)

    return CertificateSummary(
        n=report.n,
        triple_points=2 * report.n,
        vertices=cert.vertex_count,
        edges=cert.edge_count,
        circles=cert.circle_count,
        double_circles=double_circle_count(cert),
        components=len(cert.components),
        euler_characteristic=euler_characteristic_of_multiplicity_set(cert),
        census=report.census,
    )

"""Modèle d'une carte combinatoire 4-régulière."""

from typing import Literal, Sequence, Tuple

from pydantic import BaseModel, ConfigDict, Field

from app.exceptions import InvalidParameter

DEGREE = 4


class CombMap(BaseModel):
    """
    Carte combinatoire connexe 4-régulière plongée dans S².

    Les brins 4v..4v+3 appartiennent au sommet v. sigma tourne dans le sens
    trigonométrique autour de chaque sommet, alpha échange les deux brins
    d'une arête; les faces sont les orbites de phi = sigma o alpha,
    c'est-à-dire phi(d) = sigma[alpha[d]].

    Aucune validation structurelle n'est faite ici: une carte lue depuis un
    fichier peut être invalide, c'est le vérificateur qui le constate.

    Attributes:
        kind: Discriminant "map"
        vertex_count: Nombre de sommets V_c
        sigma: Rotation des brins autour des sommets
        alpha: Involution des arêtes
    """
    model_config = ConfigDict(frozen=True)

    kind: Literal["map"] = "map"
    vertex_count: int = Field(..., ge=0, description="Nombre de sommets V_c", examples=[6])
    sigma: Tuple[int, ...] = Field(..., description="Permutation de rotation (brin -> brin)")
    alpha: Tuple[int, ...] = Field(..., description="Involution des arêtes (brin -> brin)")

    @property
    def dart_count(self) -> int:
        return len(self.sigma)

    @property
    def edge_count(self) -> int:
        """Nombre d'arêtes E_c (alpha supposée involution sans point fixe)."""
        return len(self.alpha) // 2

    @staticmethod
    def standard_rotation(vertex_count: int) -> Tuple[int, ...]:
        """Rotation 4v -> 4v+1 -> 4v+2 -> 4v+3 -> 4v en chaque sommet."""
        return tuple(DEGREE * (d // DEGREE) + (d + 1) % DEGREE for d in range(DEGREE * vertex_count))

    @classmethod
    def from_rotation_system(cls, rotations: Sequence[Sequence[int]]) -> "CombMap":
        """
        Construit une carte depuis les listes de voisins de chaque sommet.

        rotations[v] donne les quatre voisins de v dans le sens
        trigonométrique; le brin 4v+i pointe vers rotations[v][i]. Le graphe
        doit être simple (pas de boucle ni d'arête multiple).

        Args:
            rotations: Voisins de chaque sommet, dans l'ordre de rotation

        Returns:
            CombMap: La carte correspondante

        Raises:
            InvalidParameter: Si un sommet n'est pas de degré 4 ou si une
                adjacence n'est pas réciproque
        """
        alpha = [0] * (DEGREE * len(rotations))
        for v, neighbours in enumerate(rotations):
            if len(neighbours) != DEGREE or len(set(neighbours)) != DEGREE:
                raise InvalidParameter(f"le sommet {v} n'a pas quatre voisins distincts")
            for i, u in enumerate(neighbours):
                if not 0 <= u < len(rotations) or u == v or v not in rotations[u]:
                    raise InvalidParameter(f"l'adjacence {v}-{u} n'est pas réciproque")
                alpha[DEGREE * v + i] = DEGREE * u + list(rotations[u]).index(v)

        return cls(
            vertex_count=len(rotations),
            sigma=cls.standard_rotation(len(rotations)),
            alpha=tuple(alpha),
        )

    def __repr__(self) -> str:
        return f"<CombMap(V={self.vertex_count}, darts={self.dart_count})>"

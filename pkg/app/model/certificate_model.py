"""Modèle du certificat de dissection de S²."""

from typing import Annotated, Literal, Tuple, Union

from pydantic import BaseModel, ConfigDict, Field

from app.model.comb_map_model import CombMap

# Faces locales d'un cercle libre
SIDE_OUTER = 0
SIDE_INNER = 1


class FreeCircle(BaseModel):
    """
    Cercle lisse de G, sans sommet ni brin.

    Il a exactement deux faces locales: side0 (0) et side1 (1). Par
    convention les chirurgies l'attachent par side0.
    """
    model_config = ConfigDict(frozen=True)

    kind: Literal["circle"] = "circle"

    def __repr__(self) -> str:
        return "<FreeCircle>"


Component = Annotated[Union[CombMap, FreeCircle], Field(discriminator="kind")]


class Attachment(BaseModel):
    """
    Arête de la forêt d'inclusion.

    Attributes:
        child: Indice de la composante incluse
        parent: Indice de la composante hôte
        parent_face: Face locale de l'hôte qui contient l'enfant
        outward_face: Face locale de l'enfant tournée vers l'hôte
    """
    model_config = ConfigDict(frozen=True)

    child: int = Field(..., description="Indice de la composante incluse", examples=[1])
    parent: int = Field(..., description="Indice de la composante hôte", examples=[0])
    parent_face: int = Field(..., description="Face locale de l'hôte", examples=[1])
    outward_face: int = Field(..., description="Face locale extérieure de l'enfant", examples=[0])


class Certificate(BaseModel):
    """
    Certificat de dissection: composantes de G et forêt d'inclusion.

    Attributes:
        components: Cartes combinatoires et cercles libres
        root: Indice de la composante racine
        attachments: Une attache par composante non racine
    """
    model_config = ConfigDict(frozen=True)

    components: Tuple[Component, ...] = Field(default=(), description="Composantes de G")
    root: int = Field(default=0, description="Indice de la composante racine")
    attachments: Tuple[Attachment, ...] = Field(default=(), description="Forêt d'inclusion")

    @property
    def maps(self) -> Tuple[CombMap, ...]:
        return tuple(c for c in self.components if isinstance(c, CombMap))

    @property
    def vertex_count(self) -> int:
        """V = somme des V_c."""
        return sum(m.vertex_count for m in self.maps)

    @property
    def edge_count(self) -> int:
        return sum(m.edge_count for m in self.maps)

    @property
    def circle_count(self) -> int:
        return sum(1 for c in self.components if isinstance(c, FreeCircle))

    def __repr__(self) -> str:
        return (
            f"<Certificate(components={len(self.components)}, V={self.vertex_count}, "
            f"circles={self.circle_count})>"
        )

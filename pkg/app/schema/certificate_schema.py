"""Schémas Pydantic du document de certificat sd-cert/1."""

from typing import Annotated, List, Literal, Union

from pydantic import BaseModel, ConfigDict, Field

from app.model.certificate_model import Attachment, Certificate, FreeCircle
from app.model.comb_map_model import CombMap

CERTIFICATE_VERSION = "sd-cert/1"


class MapDocument(BaseModel):
    """
    Composante carte d'un document.

    Attributes:
        type: "map"
        vertices: Nombre de sommets
        sigma: Rotation, brin par brin
        alpha: Involution des arêtes, brin par brin
    """
    model_config = ConfigDict(extra="forbid")

    type: Literal["map"] = "map"
    vertices: int = Field(..., ge=0, examples=[6])
    sigma: List[int] = Field(..., examples=[[1, 2, 3, 0]])
    alpha: List[int] = Field(..., examples=[[5, 4, 7, 6]])


class CircleDocument(BaseModel):
    """Composante cercle d'un document."""
    model_config = ConfigDict(extra="forbid")

    type: Literal["circle"] = "circle"


ComponentDocument = Annotated[Union[MapDocument, CircleDocument], Field(discriminator="type")]


class AttachmentDocument(BaseModel):
    """Attache de la forêt d'inclusion."""
    model_config = ConfigDict(extra="forbid", from_attributes=True)

    child: int = Field(..., examples=[1])
    parent: int = Field(..., examples=[0])
    parent_face: int = Field(..., examples=[1])
    outward_face: int = Field(..., examples=[0])


class CertificateDocument(BaseModel):
    """
    Document JSON d'un certificat.

    Les identifiants de faces locales sont les indices dans l'ordre du
    traçage des faces (cercles: 0 = side0, 1 = side1).

    Attributes:
        version: "sd-cert/1"
        root: Indice de la composante racine
        components: Cartes et cercles
        attachments: Forêt d'inclusion
    """
    model_config = ConfigDict(extra="forbid")

    version: Literal["sd-cert/1"] = Field(default=CERTIFICATE_VERSION, examples=[CERTIFICATE_VERSION])
    root: int = Field(default=0, examples=[0])
    components: List[ComponentDocument] = Field(default_factory=list)
    attachments: List[AttachmentDocument] = Field(default_factory=list)

    @classmethod
    def from_certificate(cls, cert: Certificate) -> "CertificateDocument":
        components = []
        for component in cert.components:
            if isinstance(component, FreeCircle):
                components.append(CircleDocument())
            else:
                components.append(MapDocument(
                    vertices=component.vertex_count,
                    sigma=list(component.sigma),
                    alpha=list(component.alpha),
                ))
        return cls(
            root=cert.root,
            components=components,
            attachments=[AttachmentDocument.model_validate(a) for a in cert.attachments],
        )

    def to_certificate(self) -> Certificate:
        components = []
        for component in self.components:
            if isinstance(component, CircleDocument):
                components.append(FreeCircle())
            else:
                components.append(CombMap(
                    vertex_count=component.vertices,
                    sigma=tuple(component.sigma),
                    alpha=tuple(component.alpha),
                ))
        return Certificate(
            components=tuple(components),
            root=self.root,
            attachments=tuple(Attachment(**a.model_dump()) for a in self.attachments),
        )

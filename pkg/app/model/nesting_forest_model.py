"""Modèle d'une forêt d'emboîtement de cercles disjoints sur S²."""

from typing import List, Optional, Tuple

from pydantic import BaseModel, ConfigDict, Field, model_validator

from app.exceptions import InvalidParameter


class NestingForest(BaseModel):
    """
    Emboîtement de c cercles disjoints (cas sans point triple).

    parents[i] est le cercle qui entoure directement le cercle i, ou None
    si i est une racine (il borde la face extérieure).

    Attributes:
        parents: Parent de chaque cercle
    """
    model_config = ConfigDict(frozen=True)

    parents: Tuple[Optional[int], ...] = Field(..., description="Parent de chaque cercle", examples=[(None, 0)])

    @model_validator(mode="after")
    def check_forest(self) -> "NestingForest":
        size = len(self.parents)
        if size < 2 or size % 2:
            raise InvalidParameter(f"une forêt d'emboîtement a un nombre pair >= 2 de cercles, reçu {size}")

        for node, parent in enumerate(self.parents):
            if parent is not None and not 0 <= parent < size:
                raise InvalidParameter(f"parent {parent} du cercle {node} hors limites")

        # Chaque remontée doit atteindre une racine en moins de c pas
        for node in range(size):
            current, steps = node, 0
            while self.parents[current] is not None:
                current = self.parents[current]
                steps += 1
                if steps > size:
                    raise InvalidParameter(f"cycle d'emboîtement passant par le cercle {node}")
        return self

    @property
    def size(self) -> int:
        return len(self.parents)

    def children_counts(self) -> List[int]:
        counts = [0] * self.size
        for parent in self.parents:
            if parent is not None:
                counts[parent] += 1
        return counts

    @property
    def root_count(self) -> int:
        return sum(1 for parent in self.parents if parent is None)

    @classmethod
    def from_shape(cls, shape: Tuple) -> "NestingForest":
        """
        Construit la forêt depuis sa forme canonique.

        Une forme est un tuple trié d'arbres; un arbre est la forme de la
        forêt de ses enfants.
        """
        parents: List[Optional[int]] = []

        def place(tree: Tuple, parent: Optional[int]) -> None:
            index = len(parents)
            parents.append(parent)
            for child in tree:
                place(child, index)

        for tree in shape:
            place(tree, None)
        return cls(parents=tuple(parents))

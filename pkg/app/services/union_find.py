"""Structure union-find utilisée pour fusionner les faces locales."""

from typing import Dict, List


class UnionFind:
    """Partition de 0..n-1 avec union par rang et compression de chemin."""

    def __init__(self, size: int) -> None:
        self.parent = list(range(size))
        self.rank = [0] * size

    def find(self, element: int) -> int:
        """Représentant de la classe de element."""
        root = element
        while self.parent[root] != root:
            root = self.parent[root]

        while self.parent[element] != root:
            self.parent[element], element = root, self.parent[element]
        return root

    def unite(self, first: int, second: int) -> bool:
        """
        Fusionne les classes de first et second.

        Returns:
            bool: False si les deux éléments étaient déjà dans la même classe
        """
        rep_first = self.find(first)
        rep_second = self.find(second)
        if rep_first == rep_second:
            return False

        if self.rank[rep_first] < self.rank[rep_second]:
            rep_first, rep_second = rep_second, rep_first
        self.parent[rep_second] = rep_first
        if self.rank[rep_first] == self.rank[rep_second]:
            self.rank[rep_first] += 1
        return True

    def classes(self) -> List[List[int]]:
        """Classes triées, chacune triée, ordonnées par plus petit élément."""
        grouped: Dict[int, List[int]] = {}
        for element in range(len(self.parent)):
            grouped.setdefault(self.find(element), []).append(element)
        return sorted(grouped.values(), key=lambda members: members[0])

"""Exceptions du domaine de la dissection de S²."""

from typing import Optional


class DissectionError(Exception):
    """Classe de base de toutes les erreurs du service."""


class CensusError(DissectionError):
    """Erreur sur un recensement de pièces."""


class CensusParseError(CensusError):
    """Le texte d'un recensement n'est pas une liste d'entiers non négatifs."""


class NegativeCount(CensusError):
    """Une soustraction ferait passer un compte a_k sous zéro."""

    def __init__(self, k: int, count: int, delta: int) -> None:
        self.k = k
        self.count = count
        self.delta = delta
        super().__init__(f"a_{k} = {count} ne peut pas recevoir {delta:+d}")


class CountOverflow(CensusError):
    """Un compte ou le total des pièces dépasse les bornes 64 bits."""


class NotFeasible(DissectionError):
    """Le recensement viole la restriction (E) ou (P)."""

    def __init__(self, reason: str, detail: Optional[str] = None) -> None:
        self.reason = reason
        message = f"recensement non réalisable (restriction {reason})"
        if detail:
            message = f"{message}: {detail}"
        super().__init__(message)


class InvalidParameter(DissectionError):
    """Paramètre de gabarit, de forêt ou de borne invalide."""


class StructuralError(DissectionError):
    """Structure de certificat invalide."""

    def __init__(self, check: str, detail: str) -> None:
        self.check = check
        self.detail = detail
        super().__init__(f"{check}: {detail}")


class NotSpherical(StructuralError):
    """Une composante ne vérifie pas V - E + F = 2."""

    def __init__(self, detail: str) -> None:
        super().__init__("sphericity", detail)


class Disconnected(StructuralError):
    """L'orbite d'un brin sous <sigma, alpha> n'est pas l'ensemble des brins."""

    def __init__(self, detail: str) -> None:
        super().__init__("connectivity", detail)


class NoHostFace(DissectionError):
    """Aucune face globale de type C_k ne peut accueillir la chirurgie."""

    def __init__(self, k: int) -> None:
        self.k = k
        super().__init__(f"aucune face hôte de type C_{k}")


class CertificateFormatError(DissectionError):
    """Document sd-cert/1 mal formé."""


class InternalInvariantViolation(DissectionError):
    """Un auto-contrôle du pipeline a échoué; signale un bogue."""

"""Configuration du service de dissection."""

import logging
import os

from dotenv import load_dotenv

logger = logging.getLogger(__name__)

# Charger les variables d'environnement
load_dotenv()

_LOG_LEVELS = {"DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL"}
_TRUE_VALUES = {"true", "1", "yes", "on"}
_FALSE_VALUES = {"false", "0", "no", "off"}


class Settings:
    """Configuration centralisée lue depuis l'environnement."""

    def __init__(self) -> None:
        """Initialise la configuration et valide les valeurs."""
        self.log_level: str = os.getenv("SD_LOG_LEVEL", "INFO").upper()
        self.log_file: str = os.getenv("SD_LOG_FILE", "")
        self.max_api_faces: int = self._read_int("SD_MAX_API_FACES", 10000)
        self.max_enum_circles: int = self._read_int("SD_MAX_ENUM_CIRCLES", 12)
        self.check_each_step: bool = self._read_bool("SD_CHECK_EACH_STEP", True)

        if self.log_level not in _LOG_LEVELS:
            raise ValueError(f"SD_LOG_LEVEL doit être l'un de {sorted(_LOG_LEVELS)}")
        if self.max_api_faces < 3:
            raise ValueError("SD_MAX_API_FACES doit valoir au moins 3")
        if self.max_enum_circles < 2 or self.max_enum_circles % 2:
            raise ValueError("SD_MAX_ENUM_CIRCLES doit être pair et au moins 2")

    @staticmethod
    def _read_bool(name: str, default: bool) -> bool:
        raw = os.getenv(name)
        if raw is None or raw.strip() == "":
            return default
        value = raw.strip().lower()
        if value in _TRUE_VALUES:
            return True
        if value in _FALSE_VALUES:
            return False
        raise ValueError(f"{name} doit être un booléen (true/false, 1/0, yes/no, on/off), reçu {raw!r}")

    @staticmethod
    def _read_int(name: str, default: int) -> int:
        raw = os.getenv(name)
        if raw is None or raw == "":
            return default
        try:
            return int(raw)
        except ValueError:
            raise ValueError(f"{name} doit être un entier, reçu {raw!r}")


# Configuration globale
settings = Settings()

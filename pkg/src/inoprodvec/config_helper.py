import configparser
import logging
import os
from dataclasses import dataclass, fields, replace
from pathlib import Path

logger = logging.getLogger(__name__)

CONFIG_ENV = "PRODVEC_CONFIG"
DEFAULT_CONFIG_PATH = Path("configs/prodvec.ini")


@dataclass(frozen=True)
class Tolerances:
    """Every numeric threshold of the counting and classification pipeline."""

    tol_conj: float = 1e-8
    conj_band: float = 10.0
    tol_rank: float = 1e-8
    tol_minor: float = 1e-8
    minor_band: float = 10.0
    residual: float = 1e-9
    dedup: float = 1e-6
    zero_rel: float = 1e-12
    cluster: float = 1e-6

    def override(self, **values) -> "Tolerances":
        """Copy with the given non-None values replaced."""
        return replace(self, **{k: float(v) for k, v in values.items() if v is not None})

    def to_json(self) -> dict:
        return {f.name: getattr(self, f.name) for f in fields(self)}


class InoConfigHelper:
    def __init__(self, path=DEFAULT_CONFIG_PATH, load_from: Path = None):
        self.debug = False
        self.path = Path(path)
        self.config = configparser.ConfigParser()
        if load_from is not None:
            self.config.read(load_from)

        self._load()

    @classmethod
    def discover(cls, explicit: str | Path | None = None) -> "InoConfigHelper":
        """explicit path, else $PRODVEC_CONFIG, else configs/prodvec.ini (missing files give defaults)."""
        if explicit:
            path = Path(explicit)
            if not path.is_file():
                raise FileNotFoundError(f"❌ Config file not found: {path}")
        elif os.environ.get(CONFIG_ENV):
            path = Path(os.environ[CONFIG_ENV])
        else:
            path = DEFAULT_CONFIG_PATH
        return cls(path)

    def _load(self):
        self.config.read(self.path)

    def get(self, section, key, fallback=None):
        try:
            value = self.config.get(section, key, fallback=fallback)
            if self.debug:
                logger.debug(f"🔎 Raw value for [{section}][{key}] = {value} ({type(value)})")
            if value is not None and isinstance(value, str):
                value = value.strip()
            return value
        except Exception as e:
            logger.warning(f"❌ Failed to get str for [{section}][{key}]: {e}")
            return fallback

    def get_float(self, section, key, fallback: float = 0.0) -> float:
        try:
            return self.config.getfloat(section, key, fallback=fallback)
        except ValueError as e:
            logger.warning(f"❌ Failed to get float for [{section}][{key}]: {e}")
            return fallback

    def get_int(self, section, key, fallback: int = 0) -> int:
        try:
            return self.config.getint(section, key, fallback=fallback)
        except ValueError as e:
            logger.warning(f"❌ Failed to get int for [{section}][{key}]: {e}")
            return fallback

    def tolerances(self) -> Tolerances:
        defaults = Tolerances()
        values = {
            f.name: self.get_float("tolerances", f.name, getattr(defaults, f.name))
            for f in fields(Tolerances)
        }
        return Tolerances(**values)

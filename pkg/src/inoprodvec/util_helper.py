import hashlib
import os

from typing import Any, Dict, Optional

def ino_ok(msg: str = "success", **extra: Any) -> Dict[str, Any]:
    return {"success": True, "msg": msg, **extra}

def ino_err(msg: str = "error", **extra: Any) -> Dict[str, Any]:
    return {"success": False, "msg": msg, **extra}

def ino_is_err(res: Any):
    if isinstance(res, tuple):
        if all(i is not None for i in res):
            res = res[0]
        else:
            return True
    if isinstance(res, dict):
        return not res.get("success", False)

    return False


class ProdVecError(ValueError):
    """Base class for errors raised by the algebra layer."""


SEED_ENV = "PRODVEC_SEED"


class InoUtilHelper:
    @staticmethod
    def hash_string(s: str, algo: str = "sha256", length: int = 16) -> str:
        h = hashlib.new(algo)
        h.update(s.encode("utf-8"))
        return h.hexdigest()[:length]

    @staticmethod
    def resolve_seed(seed: Optional[int] = None, env_var: str = SEED_ENV) -> Optional[int]:
        """
        Returns the explicit seed when given, otherwise the integer stored in
        the environment variable (PRODVEC_SEED by default), otherwise None.
        Seeds are reduced to 64 bits.
        """
        if seed is None:
            raw = os.environ.get(env_var, "").strip()
            if not raw:
                return None
            try:
                seed = int(raw, 0)
            except ValueError:
                raise ProdVecError(f"❌ {env_var} is not an integer: {raw!r}")
        return int(seed) & 0xFFFF_FFFF_FFFF_FFFF

    @staticmethod
    def error_kind(exc: BaseException) -> str:
        """Maps an algebra-layer exception to the error_kind tag used in ino_err results."""
        return getattr(exc, "kind", None) or "validation"

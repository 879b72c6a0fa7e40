"""Size guardrails. Defaults can be overridden through environment variables."""

import os
from dataclasses import dataclass

from .errors import BoundExceeded

ENV_PREFIX = "PARTSET_"


def _env_int(name: str, default: int) -> int:
    raw = os.environ.get(ENV_PREFIX + name)
    if raw is None or raw.strip() == "":
        return default
    try:
        return int(float(raw))
    except ValueError:
        raise ValueError(f"{ENV_PREFIX}{name} must be an integer, got {raw!r}") from None


@dataclass(frozen=True)
class Bounds:
    max_object_size: int = 6
    max_candidates: int = 10**6
    max_hom: int = 10**5

    @classmethod
    def from_env(cls) -> "Bounds":
        return cls(
            max_object_size=_env_int("MAX_OBJECT_SIZE", cls.max_object_size),
            max_candidates=_env_int("MAX_CANDIDATES", cls.max_candidates),
            max_hom=_env_int("MAX_HOM", cls.max_hom),
        )


def bounds() -> Bounds:
    return Bounds.from_env()


def ensure_within(count: int, limit: int, what: str) -> None:
    if count > limit:
        raise BoundExceeded(f"{what}: {count} exceeds the bound {limit}")

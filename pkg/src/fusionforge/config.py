"""Size caps shared by every enumeration routine."""

from __future__ import annotations

import logging
import os
from dataclasses import dataclass, replace

log = logging.getLogger(__name__)

ENV_MAX_ORDER = "FUSIONFORGE_MAX_ORDER"

# Full multiplication tables are built below this order; larger groups multiply
# through their factors.
TABLE_LIMIT = 4096


class SizeLimitError(ValueError):
    """A group or product is larger than the configured cap."""


@dataclass(frozen=True)
class Limits:
    max_s_order: int = 128
    max_g_order: int = 1024
    max_pair_order: int = 2 ** 14
    max_subgroup_enum: int = 10 ** 4

    def check(self, kind: str, order: int) -> None:
        cap = getattr(self, kind)
        if order > cap:
            raise SizeLimitError(f"order {order} exceeds {kind}={cap}")


def _from_env() -> Limits:
    limits = Limits()
    raw = os.environ.get(ENV_MAX_ORDER)
    if raw:
        try:
            value = int(raw)
        except ValueError:
            log.warning("ignoring non-integer %s=%r", ENV_MAX_ORDER, raw)
            return limits
        log.warning("%s=%d overrides the default group-order caps", ENV_MAX_ORDER, value)
        limits = replace(limits, max_s_order=value, max_g_order=value,
                         max_subgroup_enum=max(value, limits.max_subgroup_enum))
    return limits


LIMITS = _from_env()


def set_limits(**changes) -> Limits:
    """Replace the process-wide caps; returns the previous value."""
    global LIMITS
    old = LIMITS
    for key, value in changes.items():
        if getattr(old, key) != value:
            log.warning("size cap %s changed from %d to %d", key, getattr(old, key), value)
    LIMITS = replace(old, **changes)
    return old


def get_limits() -> Limits:
    return LIMITS

"""Size budgets that gate every potentially explosive enumeration.

All limits can be overridden per call, via CLI flags, or via environment
variables (WREATHCOUNT_MAX_ORDER, WREATHCOUNT_MAX_COLORINGS,
WREATHCOUNT_MAX_LIFT_DEGREE, WREATHCOUNT_MAX_SUBGROUP_ORDER).
"""

from __future__ import annotations

import os
from dataclasses import dataclass, replace


@dataclass(frozen=True)
class Budgets:
    # element closure / brute-force group materialization
    max_group_order: int = 1_000_000
    # size of the coloring space k**n a visited table may span
    max_coloring_space: int = 1 << 27
    # degree of a lifted action (subsets, product action)
    max_lift_degree: int = 100_000
    # subgroup-lattice walks (exact e(H)) refuse larger groups
    max_subgroup_order: int = 2_000
    # safety cap on distinct subgroups enumerated in a lattice walk
    max_subgroup_count: int = 20_000
    # normal-subgroup enumeration refuses larger groups
    max_normal_order: int = 100_000
    # fixed-subset counting formula refuses larger subset sizes
    max_partition_size: int = 64

    def with_overrides(self, **kw) -> "Budgets":
        kw = {k: v for k, v in kw.items() if v is not None}
        return replace(self, **kw) if kw else self


_ENV_KEYS = {
    "WREATHCOUNT_MAX_ORDER": "max_group_order",
    "WREATHCOUNT_MAX_COLORINGS": "max_coloring_space",
    "WREATHCOUNT_MAX_LIFT_DEGREE": "max_lift_degree",
    "WREATHCOUNT_MAX_SUBGROUP_ORDER": "max_subgroup_order",
}


def from_env(base: Budgets | None = None) -> Budgets:
    """Budgets with environment-variable overrides applied."""
    b = base or Budgets()
    kw = {}
    for env, field in _ENV_KEYS.items():
        raw = os.environ.get(env)
        if raw is None:
            continue
        try:
            kw[field] = int(raw)
        except ValueError:
            raise ValueError(f"{env} must be an integer, got {raw!r}")
    return b.with_overrides(**kw)


DEFAULT = from_env()

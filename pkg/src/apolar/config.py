"""Run configuration shared by the CLI and the paperbook."""
from __future__ import annotations

import os
from dataclasses import dataclass

from .apolarity import CONTRACTION, DIFFERENTIATION, ActionKind
from .errors import ConfigError
from .scalars import QQ, FieldSpec

SEED_ENV = "APOLAR_SEED"


def default_seed() -> int:
    raw = os.environ.get(SEED_ENV)
    if raw is None:
        return 0
    try:
        return int(raw)
    except ValueError:
        raise ConfigError(f"{SEED_ENV} must be an integer, got {raw!r}") from None


@dataclass(frozen=True)
class RunConfig:
    field: FieldSpec = QQ
    action: ActionKind = CONTRACTION
    samples: int = 8
    seed: int = 0
    exhaustive: bool | None = None
    output: str = "table"

    def __post_init__(self):
        if self.samples < 1:
            raise ConfigError("need at least one λ sample")
        if self.output not in ("table", "json"):
            raise ConfigError(f"unknown output format {self.output!r}")
        if self.exhaustive and not self.field.is_finite:
            raise ConfigError("--exhaustive needs a finite field")

    def check_pencil(self) -> None:
        """Field-size guard for anything that sweeps a pencil."""
        fld = self.field
        if fld.is_finite and fld.p <= 2 * self.samples:
            raise ConfigError(
                f"GF({fld.p}) is too small for {self.samples} λ samples; need p > {2 * self.samples}"
            )

    def check_action(self, degree: int, action: ActionKind | None = None) -> None:
        action = action or self.action
        p = self.field.characteristic()
        if action is DIFFERENTIATION and p and p <= degree:
            raise ConfigError(
                f"differentiation needs characteristic 0 or above {degree}; GF({p}) is not"
            )

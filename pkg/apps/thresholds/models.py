# models for thresholds app
from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from typing import Optional, Tuple

from core.exceptions import ConfigError


@dataclass(frozen=True)
class Assertions:
    """Hypotheses the user vouches for; they are echoed in every report"""

    complete_intersection: bool = False
    normal: bool = False
    quasi_gorenstein: bool = False
    sfr_punctured: bool = False

    def asserted(self) -> Tuple[str, ...]:
        return tuple(name for name in ("complete_intersection", "normal", "quasi_gorenstein", "sfr_punctured") if getattr(self, name))

    @property
    def gorenstein(self) -> bool:
        # complete intersections are Gorenstein
        return self.complete_intersection


@dataclass(frozen=True)
class DigitSequence:
    """Eventually periodic sequence n_0, n_1, ... of positive integers"""

    preperiod: Tuple[int, ...] = ()
    period: Tuple[int, ...] = (1,)

    def __post_init__(self):
        object.__setattr__(self, "preperiod", tuple(self.preperiod))
        object.__setattr__(self, "period", tuple(self.period))
        if not self.period:
            raise ConfigError("the periodic part must be nonempty")
        if any(n < 1 for n in self.preperiod + self.period):
            raise ConfigError("digit sources must be >= 1")


class PptKind(str, Enum):
    EXACT = "exact"
    INTERVAL = "interval"
    UPPER_BOUND_ONLY = "upper_bound_only"
    UNKNOWN = "unknown"


class Justification(str, Enum):
    FFINFTY_EXACT = "ffinfty-exact"
    CALABI_YAU_EXACT = "calabi-yau-exact"
    HEIGHT_INTERVAL = "height-interval"
    NON_QUASI_F_SPLIT_BOUND = "non-quasi-f-split-bound"
    INCONCLUSIVE = "inconclusive-height"
    MISSING_ASSUMPTION = "missing-complete-intersection"


@dataclass(frozen=True)
class PptResult:
    kind: PptKind
    justification: Justification
    value: Optional[Fraction] = None
    lo: Optional[Fraction] = None
    hi: Optional[Fraction] = None
    notes: Tuple[str, ...] = ()
    assumptions: Tuple[str, ...] = field(default=())

    def __post_init__(self):
        for r in (self.value, self.lo, self.hi):
            if r is not None and not 0 <= r <= 1:
                raise ValueError(f"threshold {r} outside [0, 1]")
        if self.lo is not None and self.hi is not None and self.lo > self.hi:
            raise ValueError(f"empty interval [{self.lo}, {self.hi}]")

# models for graded app
from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Tuple

from core.exceptions import ConfigError


@dataclass(frozen=True)
class Grading:
    """Positive weights of the variables and the weighted degrees of f_1..f_r"""

    weights: Tuple[int, ...]
    degrees: Tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "weights", tuple(self.weights))
        object.__setattr__(self, "degrees", tuple(self.degrees))
        if any(w < 1 for w in self.weights) or any(d < 1 for d in self.degrees):
            raise ConfigError("weights and degrees must be positive")


class Regime(str, Enum):
    POSITIVE = "positive"
    CALABI_YAU = "calabi-yau"
    FANO = "fano"


@dataclass(frozen=True)
class Conclusion:
    """A report statement, the result it rests on and the assertions it needs"""

    statement: str
    basis: str
    depends_on: Tuple[str, ...] = ()
    conditional: bool = False


@dataclass(frozen=True)
class GradedReport:
    a_invariant: int
    regime: Regime
    conclusions: Tuple[Conclusion, ...] = ()

    def __post_init__(self):
        expected = Regime.POSITIVE if self.a_invariant > 0 else Regime.CALABI_YAU if self.a_invariant == 0 else Regime.FANO
        if self.regime != expected:
            raise ValueError(f"regime {self.regime.value} does not match a-invariant {self.a_invariant}")

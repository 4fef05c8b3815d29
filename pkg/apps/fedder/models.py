# models for fedder app
from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from typing import Optional, Tuple

from core.exceptions import ConfigError, ContextMismatchError, PrecisionError

from apps.groebner.models import GroebnerBasis, GroebnerLimits
from apps.polyarith.models import IdealGens, Poly, PrimeContext


@dataclass(frozen=True)
class CIInput:
    """Integer lifts f_1..f_r of a complete intersection, plus chain limits"""

    ctx: PrimeContext
    lifts: Tuple[Poly, ...]
    max_height: int = 12
    sigma_budget: int = 64
    gb_limits: GroebnerLimits = field(default_factory=GroebnerLimits)

    def __post_init__(self):
        lifts = tuple(self.lifts)
        object.__setattr__(self, "lifts", lifts)
        if not lifts:
            raise ConfigError("at least one lift is required")
        if len(lifts) > self.ctx.nvars:
            raise ConfigError(f"{len(lifts)} lifts exceed the {self.ctx.nvars} variables")
        for i, f in enumerate(lifts):
            if f.ctx != self.ctx:
                raise ContextMismatchError(f"lift {i + 1} uses a different context")
            if f.precision is not None and f.precision < 2:
                raise PrecisionError(f"lift {i + 1} must be given at precision >= 2")
            if all(c % self.ctx.p == 0 for c in f.terms.values()):
                raise ConfigError(f"lift {i + 1} vanishes mod p={self.ctx.p}")
        if self.max_height < 1:
            raise ConfigError("max_height must be >= 1")
        if self.sigma_budget < 1:
            raise ConfigError("sigma_budget must be >= 1")

    @property
    def p(self) -> int:
        return self.ctx.p


class ChainKind(str, Enum):
    I_CHAIN = "I-chain"
    J_DESCENT = "J-descent"
    IPRIME_CHAIN = "Iprime-chain"


@dataclass(frozen=True)
class ChainLevel:
    """One computed ideal: raw generators and, when computed, its reduced basis"""

    index: int
    generators: IdealGens
    basis: Optional[GroebnerBasis] = None


@dataclass(frozen=True)
class IdealChain:
    kind: ChainKind
    levels: Tuple[ChainLevel, ...] = ()
    stabilized_at: Optional[int] = None
    inconclusive: bool = False
    reason: str = ""

    @property
    def ideals(self) -> Tuple[IdealGens, ...]:
        return tuple(level.generators for level in self.levels)

    def level(self, index: int) -> ChainLevel:
        for lvl in self.levels:
            if lvl.index == index:
                return lvl
        raise KeyError(index)


class HeightKind(str, Enum):
    FINITE = "finite"
    INFINITE = "infinite"
    INCONCLUSIVE = "inconclusive"


@dataclass(frozen=True)
class StabilizationCertificate:
    """I_index = I_(index+1) as reduced bases, with I_index inside m^[p]"""

    index: int
    basis: GroebnerBasis


@dataclass(frozen=True)
class HeightResult:
    kind: HeightKind
    value: Optional[int] = None
    witness: Optional[Poly] = None
    witness_mod_frobenius: Optional[Poly] = None
    certificate: Optional[StabilizationCertificate] = None
    at_least: Optional[int] = None
    reason: str = ""
    chain: Optional[IdealChain] = field(default=None, compare=False)

    @property
    def is_finite(self) -> bool:
        return self.kind == HeightKind.FINITE

    def describe(self) -> str:
        if self.kind == HeightKind.FINITE:
            return str(self.value)
        if self.kind == HeightKind.INFINITE:
            return "infinite"
        return f"inconclusive (height >= {self.at_least})"


@dataclass(frozen=True)
class FFinftyResult:
    """Quasi-(F,F^infty)-splitting decision; value None when height is unknown"""

    value: Optional[bool]
    chain: Optional[IdealChain] = field(default=None, compare=False)
    witness: Optional[Poly] = None

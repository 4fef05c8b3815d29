# models for witt app
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, Tuple

from core.exceptions import ContextMismatchError, PrecisionError

from apps.polyarith.models import Poly, PrimeContext


def _check_components(ctx: PrimeContext, components: Tuple[Poly, ...], exact: bool = True) -> None:
    if not components:
        raise ValueError("Witt vectors have length >= 1")
    for c in components:
        if c.ctx != ctx:
            raise ContextMismatchError("Witt component from a different context")
        if exact and c.precision is not None:
            raise PrecisionError("Witt components are exact integer polynomials")


@dataclass(frozen=True)
class WittVector:
    """(a_0, ..., a_{n-1}) in W_n(Z[x_1..x_N])"""

    ctx: PrimeContext
    components: Tuple[Poly, ...]

    def __post_init__(self):
        object.__setattr__(self, "components", tuple(self.components))
        _check_components(self.ctx, self.components)

    @property
    def length(self) -> int:
        return len(self.components)

    @property
    def p(self) -> int:
        return self.ctx.p

    def __len__(self) -> int:
        return len(self.components)

    def __getitem__(self, i: int) -> Poly:
        return self.components[i]

    def __iter__(self) -> Iterator[Poly]:
        return iter(self.components)

    def is_zero(self) -> bool:
        return all(c.is_zero() for c in self.components)


@dataclass(frozen=True)
class GhostVector:
    """Ghost components (w_0, ..., w_{n-1}); only built by ghost()"""

    ctx: PrimeContext
    components: Tuple[Poly, ...]

    def __post_init__(self):
        object.__setattr__(self, "components", tuple(self.components))
        _check_components(self.ctx, self.components)

    def __len__(self) -> int:
        return len(self.components)

    def __getitem__(self, i: int) -> Poly:
        return self.components[i]

    def __iter__(self) -> Iterator[Poly]:
        return iter(self.components)


@dataclass(frozen=True)
class ModPWittVector:
    """Coordinates of a Witt vector reduced mod p"""

    ctx: PrimeContext
    components: Tuple[Poly, ...]

    def __post_init__(self):
        object.__setattr__(self, "components", tuple(self.components))
        _check_components(self.ctx, self.components, exact=False)

    def __len__(self) -> int:
        return len(self.components)

    def __getitem__(self, i: int) -> Poly:
        return self.components[i]


@dataclass(frozen=True)
class PropertyResult:
    name: str
    passed: int = 0
    failed: int = 0
    first_failure: str = ""


@dataclass(frozen=True)
class SelftestSummary:
    p: int
    n: int
    trials: int
    seed: int
    results: Tuple[PropertyResult, ...]

    @property
    def ok(self) -> bool:
        return all(r.failed == 0 for r in self.results)

    @property
    def failures(self) -> int:
        return sum(r.failed for r in self.results)

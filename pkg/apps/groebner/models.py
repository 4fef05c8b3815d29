# models for groebner app
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterator, Tuple

from apps.polyarith.models import IdealGens, Poly, PrimeContext


@dataclass(frozen=True)
class GroebnerLimits:
    """Per-computation budgets; exceeding either raises GroebnerBudgetExceeded"""

    step_budget: int = 1_000_000
    pair_budget: int = 200_000


@dataclass(frozen=True)
class GroebnerStats:
    reduction_steps: int = 0
    pairs_processed: int = 0
    zero_reductions: int = 0


@dataclass(frozen=True)
class GroebnerBasis:
    """Reduced, monic degrevlex Groebner basis, sorted by descending leading monomial"""

    ctx: PrimeContext
    basis: Tuple[Poly, ...] = ()
    stats: GroebnerStats = field(default=GroebnerStats(), compare=False)

    def __len__(self) -> int:
        return len(self.basis)

    def __iter__(self) -> Iterator[Poly]:
        return iter(self.basis)

    @property
    def is_zero_ideal(self) -> bool:
        return not self.basis

    @property
    def is_unit_ideal(self) -> bool:
        return len(self.basis) == 1 and self.basis[0].is_constant()

    def as_ideal(self) -> IdealGens:
        return IdealGens(self.ctx, self.basis)

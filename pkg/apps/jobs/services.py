# services for jobs app
"""
The job pipeline: a validated JobConfig becomes a CIInput, runs through the
height, stable-ideal, FF-infinity, threshold and graded stages and comes
back as a Report.
"""
from __future__ import annotations

import logging
import time
from contextlib import contextmanager
from dataclasses import dataclass
from typing import Dict, Iterator, List, Optional

from core.config import settings
from core.exceptions import EXIT_BUG, EXIT_INCONCLUSIVE, EXIT_OK, BudgetExceeded
from core.sentry_utils import add_breadcrumb

from apps.fedder.models import CIInput, HeightKind, HeightResult, IdealChain
from apps.fedder.services import FedderService
from apps.graded.models import GradedReport, Grading
from apps.graded.services import STABLE_IDEAL_NOTE, a_invariant, graded_dispatch, grading_for
from apps.groebner.models import GroebnerLimits
from apps.polyarith.models import IdealGens, Poly, PrimeContext
from apps.polyarith.parser import parse_poly
from apps.polyarith.services import render
from apps.thresholds.models import Assertions, PptResult
from apps.thresholds.services import ppt_report, render_decimal
from apps.witt.models import SelftestSummary

from .schemas import (
    ChainLevelSchema,
    ChainSchema,
    ConclusionSchema,
    GradedSchema,
    HeightSchema,
    JobConfig,
    PptSchema,
    Report,
    StableIdealSchema,
    WittPropertySchema,
    WittSelftestSchema,
)

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class ResolvedLimits:
    """Limits after layering settings, the job file and command-line flags"""

    max_height: int
    sigma_budget: int
    gb_step_budget: int
    gb_pair_budget: int

    @classmethod
    def resolve(cls, config: JobConfig, overrides: Optional[Dict[str, Optional[int]]] = None) -> "ResolvedLimits":
        overrides = {k: v for k, v in (overrides or {}).items() if v is not None}
        job = config.limits
        return cls(
            max_height=overrides.get("max_height", job.max_height or settings.max_height),
            sigma_budget=overrides.get("sigma_budget", job.sigma_budget or settings.sigma_budget),
            gb_step_budget=overrides.get("gb_budget", job.gb_budget or settings.gb_step_budget),
            gb_pair_budget=overrides.get("gb_pair_budget", job.gb_pair_budget or settings.gb_pair_budget),
        )


def build_input(config: JobConfig, limits: ResolvedLimits) -> CIInput:
    ctx = PrimeContext(config.p, tuple(config.variables))
    lifts = tuple(parse_poly(text, ctx, 2) for text in config.lifts)
    return CIInput(
        ctx,
        lifts,
        max_height=limits.max_height,
        sigma_budget=limits.sigma_budget,
        gb_limits=GroebnerLimits(limits.gb_step_budget, limits.gb_pair_budget),
    )


def build_assertions(config: JobConfig) -> Assertions:
    return Assertions(**config.assertions.model_dump())


# domain objects -> report schemas

def _rendered(ideal: IdealGens) -> List[str]:
    return [render(g) for g in ideal]


def _maybe(f: Optional[Poly]) -> Optional[str]:
    return render(f) if f is not None else None


def height_schema(result: HeightResult) -> HeightSchema:
    certificate = result.certificate
    return HeightSchema(
        kind=result.kind.value,
        value=result.value,
        witness=_maybe(result.witness),
        witness_mod_frobenius=_maybe(result.witness_mod_frobenius),
        certificate_index=certificate.index if certificate else None,
        certificate_basis=_rendered(certificate.basis.as_ideal()) if certificate else None,
        at_least=result.at_least,
        reason=result.reason or None,
    )


def chain_schema(chain: IdealChain) -> ChainSchema:
    return ChainSchema(
        kind=chain.kind.value,
        stabilized_at=chain.stabilized_at,
        inconclusive=chain.inconclusive,
        reason=chain.reason,
        levels=[
            ChainLevelSchema(
                index=level.index,
                generators=_rendered(level.generators),
                basis=_rendered(level.basis.as_ideal()) if level.basis is not None else None,
            )
            for level in chain.levels
        ],
    )


def ppt_schema(result: PptResult, digits: Optional[int] = None) -> PptSchema:
    digits = digits or settings.decimal_digits
    shown = result.value if result.value is not None else result.hi
    return PptSchema(
        kind=result.kind.value,
        justification=result.justification.value,
        value=str(result.value) if result.value is not None else None,
        lo=str(result.lo) if result.lo is not None else None,
        hi=str(result.hi) if result.hi is not None else None,
        decimal=render_decimal(shown, digits) if shown is not None else None,
        notes=list(result.notes),
        assumptions=list(result.assumptions),
    )


def graded_schema(grading: Grading, report: GradedReport) -> GradedSchema:
    return GradedSchema(
        weights=list(grading.weights),
        degrees=list(grading.degrees),
        a_invariant=report.a_invariant,
        regime=report.regime.value,
        conclusions=[
            ConclusionSchema(
                statement=c.statement,
                basis=c.basis,
                depends_on=list(c.depends_on),
                conditional=c.conditional,
            )
            for c in report.conclusions
        ],
    )


def selftest_schema(summary: SelftestSummary) -> WittSelftestSchema:
    return WittSelftestSchema(
        p=summary.p,
        n=summary.n,
        trials=summary.trials,
        seed=summary.seed,
        ok=summary.ok,
        properties=[
            WittPropertySchema(name=r.name, passed=r.passed, failed=r.failed, first_failure=r.first_failure)
            for r in summary.results
        ],
    )


class JobService:
    """Runs one job through the pipeline stages"""

    def __init__(self, config: JobConfig, overrides: Optional[Dict[str, Optional[int]]] = None):
        self.config = config
        self.limits = ResolvedLimits.resolve(config, overrides)
        self.data = build_input(config, self.limits)
        self.assertions = build_assertions(config)
        self.fedder = FedderService(self.data)
        self.timing: Dict[str, float] = {}

    @contextmanager
    def _stage(self, name: str) -> Iterator[None]:
        add_breadcrumb(f"stage {name}", category="pipeline", data={"job": self.config.name})
        start = time.perf_counter()
        try:
            yield
        finally:
            self.timing[name] = round(time.perf_counter() - start, 6)
            logger.debug(f"stage {name} took {self.timing[name]:.3f}s")

    def _report(self, command: str, **fields) -> Report:
        return Report(
            tool_version=settings.app_version,
            command=command,
            config=self.config,
            assertions=list(self.assertions.asserted()),
            timing=dict(self.timing),
            **fields,
        )

    def run_height(self) -> Report:
        with self._stage("delta"):
            delta = self.fedder.delta_term
            f_pure = self.fedder.is_f_pure()
        with self._stage("height"):
            result = self.fedder.height()
        exit_code = EXIT_INCONCLUSIVE if result.kind == HeightKind.INCONCLUSIVE else EXIT_OK
        return self._report(
            "height",
            delta_term=render(delta),
            f_pure=f_pure,
            height=height_schema(result),
            exit_code=exit_code,
        )

    def run_ppt(self) -> Report:
        with self._stage("delta"):
            delta = self.fedder.delta_term
            f_pure = self.fedder.is_f_pure()
        with self._stage("height"):
            height = self.fedder.height()

        stable: Optional[IdealGens] = None
        with self._stage("stable_ideal"):
            try:
                stable = self.fedder.stable_ideal()
            except BudgetExceeded as exc:
                logger.warning(f"stable ideal not reached: {exc.detail}")

        ffinfty: Optional[bool] = None
        witness: Optional[Poly] = None
        with self._stage("ffinfty"):
            if height.kind != HeightKind.FINITE or stable is not None:
                decision = self.fedder.is_qf_finfty(height, stable)
                ffinfty, witness = decision.value, decision.witness

        graded = None
        a = None
        if self.config.weights is not None:
            with self._stage("graded"):
                grading = grading_for(self.fedder.lifts_mod_p, self.config.weights)
                a = a_invariant(grading)
                graded = graded_schema(grading, graded_dispatch(a, height, self.assertions, self.data.p))

        with self._stage("ppt"):
            ppt = ppt_report(self.data.p, height, ffinfty, a, self.assertions)

        exit_code = EXIT_INCONCLUSIVE if height.kind == HeightKind.INCONCLUSIVE else EXIT_OK
        return self._report(
            "ppt",
            delta_term=render(delta),
            f_pure=f_pure,
            height=height_schema(height),
            stable_ideal=StableIdealSchema(generators=_rendered(stable), note=STABLE_IDEAL_NOTE) if stable is not None else None,
            ffinfty=ffinfty,
            ffinfty_witness=_maybe(witness),
            ppt=ppt_schema(ppt),
            graded=graded,
            exit_code=exit_code,
        )

    def run_chain_dump(self, levels: Optional[int] = None) -> Report:
        levels = settings.dump_levels if levels is None else levels
        chains: List[IdealChain] = []
        if levels > 0:
            with self._stage("I-chain"):
                chains.append(self.fedder.chain_I(levels))
            with self._stage("J-descent"):
                descent = self.fedder.descent_J()
                chains.append(descent)
            if not descent.inconclusive:
                stable = descent.level(descent.stabilized_at).basis.as_ideal()
                with self._stage("Iprime-chain"):
                    chains.append(self.fedder.chain_I_prime(stable, levels, chains[0]))
        inconclusive = any(c.inconclusive for c in chains)
        return self._report(
            "chain",
            delta_term=render(self.fedder.delta_term),
            chains=[chain_schema(c) for c in chains],
            exit_code=EXIT_INCONCLUSIVE if inconclusive else EXIT_OK,
        )


def witt_selftest_report(summary: SelftestSummary, timing: Dict[str, float]) -> Report:
    return Report(
        tool_version=settings.app_version,
        command="witt-selftest",
        witt_selftest=selftest_schema(summary),
        exit_code=EXIT_OK if summary.ok else EXIT_BUG,
        timing=timing,
    )

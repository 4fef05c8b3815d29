# services for graded app
from __future__ import annotations

import logging
from typing import List, Sequence

from core.exceptions import ConfigError, ConsistencyFailure, InhomogeneousError

from apps.fedder.models import HeightKind, HeightResult
from apps.polyarith.models import Poly
from apps.polyarith.services import render
from apps.thresholds.models import Assertions
from apps.thresholds.services import ppt_exact_cy

from .models import Conclusion, GradedReport, Grading, Regime

logger = logging.getLogger(__name__)

STABLE_IDEAL_NOTE = (
    "I' is the image of the iterated traces u^e(F^e_*(f^(p^e-1))) in the ambient ring; "
    "it is reported for comparison with the stable image of the trace maps, not as a "
    "certificate of strong F-regularity"
)


def weighted_degree(mon, weights: Sequence[int]) -> int:
    return sum(a * w for a, w in zip(mon, weights))


def check_homogeneous(f: Poly, weights: Sequence[int]) -> int:
    """Common weighted degree of the monomials of f"""
    if len(weights) != f.ctx.nvars:
        raise ConfigError(f"{len(weights)} weights for {f.ctx.nvars} variables")
    if f.is_zero():
        raise InhomogeneousError("the zero polynomial has no degree")
    terms = f.sorted_terms()
    first = terms[0][0]
    degree = weighted_degree(first, weights)
    for mon, _ in terms[1:]:
        d = weighted_degree(mon, weights)
        if d != degree:
            a = render(Poly.monomial(f.ctx, first))
            b = render(Poly.monomial(f.ctx, mon))
            raise InhomogeneousError(
                f"{a} has weighted degree {degree} but {b} has {d}",
                {"monomials": [a, b]},
            )
    return degree


def grading_for(polys: Sequence[Poly], weights: Sequence[int]) -> Grading:
    return Grading(tuple(weights), tuple(check_homogeneous(f, weights) for f in polys))


def a_invariant(grading: Grading) -> int:
    """sum of degrees minus sum of weights"""
    return sum(grading.degrees) - sum(grading.weights)


def regime_for(a: int) -> Regime:
    if a > 0:
        return Regime.POSITIVE
    if a == 0:
        return Regime.CALABI_YAU
    return Regime.FANO


def graded_dispatch(a: int, height: HeightResult, assertions: Assertions, p: int) -> GradedReport:
    """Conclusions available for the sign of the a-invariant"""
    regime = regime_for(a)
    conclusions: List[Conclusion] = [
        Conclusion(
            "ht(R) <= ht(R mod p)",
            "mixed-characteristic height bounds the special fiber's",
        )
    ]
    ci = ("complete_intersection",)

    if regime == Regime.POSITIVE:
        if height.kind == HeightKind.FINITE:
            raise ConsistencyFailure(
                f"finite height {height.value} with a-invariant {a} > 0",
                {"a_invariant": a, "height": height.value},
            )
        conclusions.append(
            Conclusion("not quasi-F-split", "quasi-F-split graded rings have a <= 0")
        )

    elif regime == Regime.CALABI_YAU:
        conclusions.append(
            Conclusion(
                "ht(R) = ht(R mod p)",
                "Gorenstein with a = 0",
                depends_on=ci,
                conditional=not assertions.complete_intersection,
            )
        )
        if height.kind == HeightKind.FINITE:
            value = ppt_exact_cy(p, height.value)
            conclusions.append(
                Conclusion(
                    f"ppt(R; div(p)) = {value}",
                    "Calabi-Yau threshold formula",
                    depends_on=ci,
                    conditional=not assertions.complete_intersection,
                )
            )

    else:
        fano_hypotheses = ("normal", "quasi_gorenstein", "sfr_punctured")
        all_given = all(getattr(assertions, name) for name in fano_hypotheses)
        if height.kind == HeightKind.FINITE:
            conclusions.append(
                Conclusion(
                    "perfectoid BCM-regular",
                    "quasi-F-split Fano cones are perfectoid BCM-regular",
                    depends_on=fano_hypotheses,
                    conditional=not all_given,
                )
            )
        elif height.kind == HeightKind.INFINITE and p == 2:
            conclusions.append(
                Conclusion(
                    "NOT perfectoid BCM-regular",
                    "for p = 2 perfectoid BCM-regular Fano cones are quasi-F-split",
                    depends_on=fano_hypotheses + ("gorenstein",),
                    conditional=not (all_given and assertions.gorenstein),
                )
            )

    logger.debug(f"graded dispatch: a={a}, regime={regime.value}, {len(conclusions)} conclusions")
    return GradedReport(a, regime, tuple(conclusions))

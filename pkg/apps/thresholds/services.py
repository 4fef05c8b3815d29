# services for thresholds app
"""
Exact perfectoid pure thresholds from height data. All values are
fractions.Fraction; decimals are produced for display only.
"""
from __future__ import annotations

import logging
from decimal import Context, Decimal
from fractions import Fraction
from typing import Optional, Tuple

from apps.fedder.models import HeightKind, HeightResult

from .models import Assertions, DigitSequence, Justification, PptKind, PptResult

logger = logging.getLogger(__name__)


def i_n(p: int, n: int) -> Fraction:
    """1/p + ... + 1/p^n"""
    if n < 0:
        raise ValueError("n must be >= 0")
    return Fraction(p ** n - 1, p ** n * (p - 1))


def range_threshold(p: int) -> Fraction:
    """(p-2)/(p-1), the common limit of the interval endpoints"""
    return Fraction(p - 2, p - 1)


def ppt_exact_ffinfty(p: int, n: int) -> Fraction:
    return 1 - i_n(p, n - 1)


def ppt_exact_cy(p: int, n: int) -> Fraction:
    """1 - (p + ... + p^(n-1)) / (p^n - 1)"""
    if n < 1:
        raise ValueError("n must be >= 1")
    return 1 - Fraction(sum(p ** k for k in range(1, n)), p ** n - 1)


def ppt_bounds(p: int, n: int) -> Tuple[Fraction, Fraction]:
    if n < 1:
        raise ValueError("n must be >= 1")
    return ppt_exact_cy(p, n), ppt_exact_ffinfty(p, n)


def ppt_upper_bound_from_height_at_least(p: int, n: int) -> Fraction:
    """ppt <= 1 - i_n once the height is known to exceed n"""
    return 1 - i_n(p, n)


def ppt_from_digits(p: int, seq: DigitSequence) -> Fraction:
    """
    sum_m a_m / p^m with a_m = p-1 when m is a partial sum n_0 + ... + n_r
    and p-2 otherwise, i.e. (p-2)/(p-1) + sum_r p^(-S_r).
    """
    total = range_threshold(p)
    s = 0
    for n in seq.preperiod:
        s += n
        total += Fraction(1, p ** s)
    cycle = sum(seq.period)
    tail = Fraction(0)
    for n in seq.period:
        s += n
        tail += Fraction(1, p ** s)
    return total + tail / (1 - Fraction(1, p ** cycle))


def height_from_ppt(p: int, value: Fraction) -> Optional[int]:
    """The n whose interval contains value, or None"""
    value = Fraction(value)
    if value <= range_threshold(p) or value > 1:
        return None
    n = 1
    while True:
        lo, hi = ppt_bounds(p, n)
        if lo <= value <= hi:
            return n
        if hi < value:
            return None
        n += 1


def render_decimal(r: Fraction, digits: int = 12) -> str:
    ctx = Context(prec=digits)
    d = ctx.divide(Decimal(r.numerator), Decimal(r.denominator))
    text = format(d, "f")
    if "." in text:
        text = text.rstrip("0").rstrip(".")
    return text


def ppt_report(
    p: int,
    height: HeightResult,
    ffinfty: Optional[bool],
    a_invariant: Optional[int],
    assertions: Assertions,
) -> PptResult:
    """Pick the strongest statement the height data and the assertions allow"""
    assumed = assertions.asserted()
    if not assertions.complete_intersection:
        return PptResult(
            PptKind.UNKNOWN,
            Justification.MISSING_ASSUMPTION,
            notes=("threshold statements need the complete-intersection assertion",),
            assumptions=assumed,
        )
    if height.kind == HeightKind.INCONCLUSIVE:
        notes = ()
        if height.at_least and height.at_least > 1:
            bound = ppt_upper_bound_from_height_at_least(p, height.at_least - 1)
            notes = (f"height >= {height.at_least}, so ppt <= {bound} if perfectoid pure",)
        return PptResult(PptKind.UNKNOWN, Justification.INCONCLUSIVE, notes=notes, assumptions=assumed)
    if height.kind == HeightKind.INFINITE:
        return PptResult(
            PptKind.UPPER_BOUND_ONLY,
            Justification.NON_QUASI_F_SPLIT_BOUND,
            hi=range_threshold(p),
            notes=("if perfectoid pure at all",),
            assumptions=assumed,
        )
    n = height.value
    if ffinfty:
        logger.debug(f"ppt exact from quasi-(F,F^infty)-splitting at height {n}")
        return PptResult(PptKind.EXACT, Justification.FFINFTY_EXACT, value=ppt_exact_ffinfty(p, n), assumptions=assumed)
    if a_invariant == 0:
        logger.debug(f"ppt exact from the Calabi-Yau formula at height {n}")
        return PptResult(
            PptKind.EXACT,
            Justification.CALABI_YAU_EXACT,
            value=ppt_exact_cy(p, n),
            assumptions=assumed + ("graded", "a_invariant=0"),
        )
    lo, hi = ppt_bounds(p, n)
    return PptResult(PptKind.INTERVAL, Justification.HEIGHT_INTERVAL, lo=lo, hi=hi, assumptions=assumed)

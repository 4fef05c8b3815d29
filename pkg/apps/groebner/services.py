# services for groebner app
"""
Buchberger's algorithm over F_p in degrevlex.

The main loop follows the improved Buchberger algorithm of Becker and
Weispfenning (GROEBNERNEWS2): normal selection strategy and the
Gebauer-Moeller update for pruning critical pairs. Polynomials are kept
as plain {monomial: coefficient} dicts while the basis is built.
"""
from __future__ import annotations

import logging
from typing import Dict, List, Optional, Sequence, Tuple

from core.config import settings
from core.exceptions import ContextMismatchError, GroebnerBudgetExceeded, PrecisionError

from apps.polyarith.models import (
    IdealGens,
    Monomial,
    Poly,
    PrimeContext,
    degrevlex_key,
    monomial_div,
    monomial_divides,
    monomial_lcm,
    monomial_mul,
)

from .models import GroebnerBasis, GroebnerLimits, GroebnerStats

logger = logging.getLogger(__name__)

Terms = Dict[Monomial, int]


def default_limits() -> GroebnerLimits:
    return GroebnerLimits(step_budget=settings.gb_step_budget, pair_budget=settings.gb_pair_budget)


class _Budget:
    def __init__(self, limits: GroebnerLimits):
        self.limits = limits
        self.steps = 0
        self.pairs = 0
        self.zero_reductions = 0

    def step(self) -> None:
        self.steps += 1
        if self.steps > self.limits.step_budget:
            raise GroebnerBudgetExceeded(
                f"Groebner reduction budget of {self.limits.step_budget} steps exhausted",
                {"steps": self.steps},
            )

    def pair(self) -> None:
        self.pairs += 1
        if self.pairs > self.limits.pair_budget:
            raise GroebnerBudgetExceeded(
                f"Groebner pair budget of {self.limits.pair_budget} exhausted",
                {"pairs": self.pairs},
            )

    def stats(self) -> GroebnerStats:
        return GroebnerStats(self.steps, self.pairs, self.zero_reductions)


class _Entry:
    __slots__ = ("lm", "terms")

    def __init__(self, lm: Monomial, terms: Terms):
        self.lm = lm
        self.terms = terms


def _leading(terms: Terms) -> Monomial:
    return max(terms, key=degrevlex_key)


def _monic(terms: Terms, p: int) -> _Entry:
    lm = _leading(terms)
    inv = pow(terms[lm], -1, p)
    if inv == 1:
        return _Entry(lm, terms)
    return _Entry(lm, {m: c * inv % p for m, c in terms.items()})


def _reduce(terms: Terms, divisors: Sequence[_Entry], p: int, budget: Optional[_Budget]) -> Terms:
    """Full reduction of `terms` by `divisors`; returns the remainder"""
    f = dict(terms)
    remainder: Terms = {}
    while f:
        lm = _leading(f)
        c = f[lm]
        for g in divisors:
            if monomial_divides(g.lm, lm):
                q = monomial_div(lm, g.lm)
                for m, gc in g.terms.items():
                    mm = monomial_mul(m, q)
                    v = (f.get(mm, 0) - c * gc) % p
                    if v:
                        f[mm] = v
                    else:
                        f.pop(mm, None)
                if budget is not None:
                    budget.step()
                break
        else:
            remainder[lm] = c
            del f[lm]
    return remainder


def _spoly(a: _Entry, b: _Entry, p: int) -> Terms:
    lcm = monomial_lcm(a.lm, b.lm)
    qa = monomial_div(lcm, a.lm)
    qb = monomial_div(lcm, b.lm)
    out: Terms = {}
    for m, c in a.terms.items():
        out[monomial_mul(m, qa)] = c
    for m, c in b.terms.items():
        mm = monomial_mul(m, qb)
        v = (out.get(mm, 0) - c) % p
        if v:
            out[mm] = v
        else:
            out.pop(mm, None)
    return out


def _check_gens(gens: IdealGens) -> None:
    for g in gens:
        if g.precision != 1:
            raise PrecisionError("Groebner bases are computed over F_p only")


def buchberger(gens: IdealGens, limits: Optional[GroebnerLimits] = None) -> GroebnerBasis:
    """Reduced Groebner basis of the ideal generated by `gens`"""
    _check_gens(gens)
    ctx = gens.ctx
    p = ctx.p
    budget = _Budget(limits or default_limits())

    f: List[_Entry] = []
    seen: Dict[Tuple, int] = {}

    def register(entry: _Entry) -> int:
        key = tuple(sorted(entry.terms.items()))
        if key not in seen:
            seen[key] = len(f)
            f.append(entry)
        return seen[key]

    # interreduce the input against every other entry until it is stable
    current = [_monic(dict(g.terms), p) for g in gens if not g.is_zero()]
    changed = True
    while changed:
        changed = False
        for i, entry in enumerate(current):
            others = current[:i] + current[i + 1:]
            r = _reduce(entry.terms, others, p, budget)
            if r != entry.terms:
                current = others + ([_monic(r, p)] if r else [])
                changed = True
                break
    if not current:
        return GroebnerBasis(ctx, (), budget.stats())
    if any(not any(e.lm) for e in current):
        return GroebnerBasis(ctx, (Poly.constant(ctx, 1),), budget.stats())

    pending = sorted((register(e) for e in current), key=lambda i: degrevlex_key(f[i].lm))
    G: List[int] = []
    pairs: Dict[Tuple[int, int], int] = {}
    counter = [0]

    def add_pairs(new_pairs):
        for pair in new_pairs:
            if pair not in pairs:
                pairs[pair] = counter[0]
                counter[0] += 1

    def update(ih: int) -> None:
        """Gebauer-Moeller update of G and the pair set with f[ih]"""
        nonlocal G
        mh = f[ih].lm

        C = list(G)
        D: List[Tuple[int, int]] = []
        while C:
            ig = C.pop(0)
            mg = f[ig].lm
            lcm_hg = monomial_lcm(mh, mg)

            def lcm_divides(ip: int) -> bool:
                return monomial_divides(monomial_lcm(mh, f[ip].lm), lcm_hg)

            if monomial_mul(mh, mg) == lcm_hg or (
                not any(lcm_divides(ipx) for ipx in C) and not any(lcm_divides(pr[1]) for pr in D)
            ):
                D.append((ih, ig))

        E = [(a, b) for a, b in D if monomial_mul(mh, f[b].lm) != monomial_lcm(mh, f[b].lm)]

        for pair in list(pairs):
            ig1, ig2 = pair
            lcm12 = monomial_lcm(f[ig1].lm, f[ig2].lm)
            if monomial_divides(mh, lcm12) and (
                monomial_lcm(f[ig1].lm, mh) != lcm12 and monomial_lcm(f[ig2].lm, mh) != lcm12
            ):
                del pairs[pair]
        add_pairs(E)

        G = [ig for ig in G if not monomial_divides(mh, f[ig].lm)]
        G.append(ih)

    for ih in pending:
        update(ih)

    while pairs:
        pair = min(
            pairs,
            key=lambda pr: (degrevlex_key(monomial_lcm(f[pr[0]].lm, f[pr[1]].lm)), pairs[pr]),
        )
        del pairs[pair]
        budget.pair()
        h = _spoly(f[pair[0]], f[pair[1]], p)
        divisors = sorted((f[i] for i in G), key=lambda e: degrevlex_key(e.lm))
        r = _reduce(h, divisors, p, budget)
        if r:
            update(register(_monic(r, p)))
        else:
            budget.zero_reductions += 1

    # keep a minimal basis, then reduce the tails
    minimal: List[_Entry] = []
    for entry in sorted((f[i] for i in G), key=lambda e: degrevlex_key(e.lm)):
        if not any(monomial_divides(k.lm, entry.lm) for k in minimal):
            minimal.append(entry)
    final: List[_Entry] = []
    for i, entry in enumerate(minimal):
        r = _reduce(entry.terms, minimal[:i] + minimal[i + 1:], p, budget)
        if r:
            final.append(_monic(r, p))
    final.sort(key=lambda e: degrevlex_key(e.lm), reverse=True)

    basis = tuple(Poly(ctx, e.terms, 1, normalized=True) for e in final)
    stats = budget.stats()
    logger.debug(
        f"Groebner basis with {len(basis)} elements from {len(gens)} generators "
        f"({stats.pairs_processed} pairs, {stats.reduction_steps} reduction steps)"
    )
    return GroebnerBasis(ctx, basis, stats)


def _entries(gb: GroebnerBasis) -> List[_Entry]:
    return sorted(
        (_Entry(g.leading_monomial(), dict(g.terms)) for g in gb.basis),
        key=lambda e: degrevlex_key(e.lm),
    )


def _check_context(ctx: PrimeContext, other: PrimeContext) -> None:
    if ctx != other:
        raise ContextMismatchError("basis and polynomial live in different contexts")


def normal_form(f: Poly, gb: GroebnerBasis) -> Poly:
    """Remainder of f on division by gb; zero iff f lies in the ideal"""
    _check_context(gb.ctx, f.ctx)
    if f.precision != 1:
        raise PrecisionError("normal forms are computed over F_p only")
    r = _reduce(dict(f.terms), _entries(gb), gb.ctx.p, None)
    return Poly(f.ctx, r, 1, normalized=True)


def ideal_member(f: Poly, gb: GroebnerBasis) -> bool:
    return normal_form(f, gb).is_zero()


def ideal_contains(big: GroebnerBasis, small: IdealGens) -> bool:
    """True when every generator of `small` lies in the ideal of `big`"""
    _check_context(big.ctx, small.ctx)
    entries = _entries(big)
    p = big.ctx.p
    return all(not _reduce(dict(g.terms), entries, p, None) for g in small)


def ideal_equal(a: IdealGens, b: IdealGens, limits: Optional[GroebnerLimits] = None) -> bool:
    """Mutual containment"""
    gb_a = buchberger(a, limits)
    gb_b = buchberger(b, limits)
    return ideal_contains(gb_a, b) and ideal_contains(gb_b, a)


def same_ideal(a: GroebnerBasis, b: GroebnerBasis) -> bool:
    """Reduced bases are unique, so equal ideals have identical bases"""
    return a.ctx == b.ctx and a.basis == b.basis

# services for polyarith app
from __future__ import annotations

import logging
import random
from functools import reduce
from typing import Dict, Iterable, List, Optional, Sequence

from core.exceptions import NondivisibleError, PrecisionError

from .models import (
    IdealGens,
    Monomial,
    Poly,
    Precision,
    PrimeContext,
    monomial_divides,
)

logger = logging.getLogger(__name__)


# ring operations

def add(f: Poly, g: Poly) -> Poly:
    return f + g


def sub(f: Poly, g: Poly) -> Poly:
    return f - g


def negate(f: Poly) -> Poly:
    return -f


def mul(f: Poly, g: Poly) -> Poly:
    return f * g


def product(polys: Sequence[Poly]) -> Poly:
    """Product of a nonempty sequence"""
    return reduce(lambda a, b: a * b, polys)


# precision changes

def reduce_precision(f: Poly, precision: int) -> Poly:
    """Image of f in Z/p^precision"""
    if f.precision is not None and precision > f.precision:
        raise PrecisionError(f"cannot raise precision from {f.precision} to {precision}")
    return Poly(f.ctx, f.terms, precision)


def reduce_mod_p(f: Poly) -> Poly:
    return reduce_precision(f, 1)


def lift_exact(f: Poly) -> Poly:
    """Canonical residues read as integers"""
    return Poly(f.ctx, f.terms, None, normalized=True)


def divide_exact(f: Poly, s: int) -> Poly:
    """Divide every coefficient by p^s; precision drops by s for modular input"""
    if s == 0:
        return f
    q = f.ctx.p ** s
    precision = f.precision
    if precision is not None:
        if precision <= s:
            raise PrecisionError(f"precision {precision} too small to divide by p^{s}")
        precision -= s
    out = {}
    for mon, coef in f.terms.items():
        quotient, rest = divmod(coef, q)
        if rest:
            raise NondivisibleError(
                f"coefficient {coef} of {mon} not divisible by {q}",
                {"monomial": list(mon), "coefficient": coef},
            )
        out[mon] = quotient
    return Poly(f.ctx, out, precision)


# Frobenius and the delta operators

def frobenius_substitute(f: Poly, e: int = 1) -> Poly:
    """x_i -> x_i^(p^e), coefficients untouched"""
    q = f.ctx.p ** e
    return Poly(f.ctx, {tuple(a * q for a in mon): c for mon, c in f.terms.items()}, f.precision)


def delta1(f: Poly) -> Poly:
    """(f^p - phi(f)) / p, taking precision k to k-1 (exact input stays exact)"""
    if f.precision is not None and f.precision < 2:
        raise PrecisionError("delta1 needs a lift at precision >= 2")
    p = f.ctx.p
    return divide_exact(f ** p - frobenius_substitute(f, 1), 1)


def delta_n(f: Poly, n: int) -> Poly:
    """Delta_n(f) mod p, through Delta_1(f^(p^(n-1))) / p^(n-1)"""
    if n < 1:
        raise ValueError("n must be >= 1")
    if f.precision is not None and f.precision < n + 1:
        raise PrecisionError(f"delta_{n} needs precision >= {n + 1}, got {f.precision}")
    g = reduce_precision(f, n + 1)
    h = delta1(g ** (f.ctx.p ** (n - 1)))
    return reduce_mod_p(divide_exact(h, n - 1))


# trace operator

def _require_mod_p(f: Poly) -> None:
    if f.precision != 1:
        raise PrecisionError("operation is defined over F_p only")


def cartier_u(f: Poly) -> Poly:
    """Keep monomials with all exponents = p-1 mod p and take their p-th roots"""
    _require_mod_p(f)
    p = f.ctx.p
    top = p - 1
    out = {}
    for mon, coef in f.terms.items():
        if all(a % p == top for a in mon):
            out[tuple((a - top) // p for a in mon)] = coef
    return Poly(f.ctx, out, 1, normalized=True)


def cartier_ue(f: Poly, e: int) -> Poly:
    for _ in range(e):
        f = cartier_u(f)
    return f


def frobenius_root_components(f: Poly, q: Optional[int] = None) -> Dict[Monomial, Poly]:
    """
    Write f = sum_c x^c * g_c^q with c in {0..q-1}^N and return {c: g_c}.

    cartier_u(f * x^b) is g_c for c = (p-1) - b, so the g_c generate the
    image of the trace on f times the whole ring. q defaults to p; q = p^e
    does the same for the e-fold trace.
    """
    _require_mod_p(f)
    q = f.ctx.p if q is None else q
    buckets: Dict[Monomial, Dict[Monomial, int]] = {}
    for mon, coef in f.terms.items():
        cls = tuple(a % q for a in mon)
        buckets.setdefault(cls, {})[tuple(a // q for a in mon)] = coef
    return {cls: Poly(f.ctx, terms, 1, normalized=True) for cls, terms in sorted(buckets.items())}


# monomial ideals

def maximal_ideal_frobenius_power(ctx: PrimeContext, q: Optional[int] = None) -> List[Monomial]:
    """Generators x_i^q of m^[q]; q defaults to p"""
    q = ctx.p if q is None else q
    return [tuple(q if j == i else 0 for j in range(ctx.nvars)) for i in range(ctx.nvars)]


def monomial_ideal_member(f: Poly, gens: Iterable[Monomial]) -> bool:
    gens = list(gens)
    return all(any(monomial_divides(g, mon) for g in gens) for mon in f.terms)


def reduce_mod_monomial_ideal(f: Poly, gens: Iterable[Monomial]) -> Poly:
    """The terms of f that no generator divides"""
    gens = list(gens)
    kept = {m: c for m, c in f.terms.items() if not any(monomial_divides(g, m) for g in gens)}
    return Poly(f.ctx, kept, f.precision, normalized=True)


def frobenius_power_ideal(ideal: IdealGens, q: int) -> IdealGens:
    """I^[q] for q a power of p"""
    return IdealGens(ideal.ctx, tuple(g ** q for g in ideal))


# rendering

def _render_monomial(ctx: PrimeContext, mon: Monomial) -> str:
    parts = []
    for name, e in zip(ctx.names, mon):
        if e == 1:
            parts.append(name)
        elif e:
            parts.append(f"{name}^{e}")
    return "*".join(parts)


def render(f: Poly) -> str:
    """Canonical text form; parse_poly(render(f)) == f"""
    if f.is_zero():
        return "0"
    chunks: List[str] = []
    for mon, coef in f.sorted_terms():
        sign = "-" if coef < 0 else "+"
        c = abs(coef)
        body = _render_monomial(f.ctx, mon)
        if not body:
            text = str(c)
        elif c == 1:
            text = body
        else:
            text = f"{c}*{body}"
        if not chunks:
            chunks.append(text if sign == "+" else f"-{text}")
        else:
            chunks.append(f" {sign} {text}")
    return "".join(chunks)


# random inputs for property checks

def random_poly(
    rng: random.Random,
    ctx: PrimeContext,
    max_degree: int = 3,
    max_terms: int = 4,
    coeff_bound: int = 5,
    precision: Precision = None,
) -> Poly:
    """Small random polynomial; never zero"""
    while True:
        terms = {}
        for _ in range(rng.randint(1, max_terms)):
            degree = rng.randint(0, max_degree)
            mon = [0] * ctx.nvars
            for _ in range(degree):
                mon[rng.randrange(ctx.nvars)] += 1
            c = rng.randint(-coeff_bound, coeff_bound)
            if c:
                terms[tuple(mon)] = c
        f = Poly(ctx, terms, precision)
        if f:
            return f

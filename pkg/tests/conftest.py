"""
Test configuration, fixtures and independent oracles
"""
import itertools
import os
import random
import sys
from typing import Dict, Iterator, List, Sequence

import pytest
import sympy

# Add the project root to the Python path
sys.path.append(os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

from apps.polyarith.models import IdealGens, Monomial, Poly, PrimeContext
from apps.polyarith.parser import parse_poly


@pytest.fixture
def ctx2():
    """x, y, z over F_2"""
    return PrimeContext(2, ("x", "y", "z"))


@pytest.fixture
def ctx3():
    return PrimeContext(3, ("x", "y", "z"))


@pytest.fixture
def ctx5():
    return PrimeContext(5, ("x", "y", "z"))


@pytest.fixture
def quartic_ctx():
    return PrimeContext(2, ("x", "y", "z", "w"))


@pytest.fixture
def rng():
    """Seeded generator so randomized tests are reproducible"""
    return random.Random(20240517)


def P(ctx: PrimeContext, text: str, precision=1) -> Poly:
    return parse_poly(text, ctx, precision)


def ideal(ctx: PrimeContext, *texts: str) -> IdealGens:
    return IdealGens(ctx, tuple(parse_poly(t, ctx) for t in texts))


# sympy as an independent Groebner engine

def _symbols(ctx: PrimeContext):
    return sympy.symbols(ctx.names)


def to_sympy(f: Poly):
    syms = _symbols(f.ctx)
    expr = sympy.Integer(0)
    for mon, coef in f.terms.items():
        term = sympy.Integer(coef)
        for s, e in zip(syms, mon):
            term *= s ** e
        expr += term
    return expr


def from_sympy(ctx: PrimeContext, expr) -> Poly:
    poly = sympy.Poly(expr, *_symbols(ctx), modulus=ctx.p)
    return Poly(ctx, {tuple(m): int(c) for m, c in poly.as_dict().items()}, 1)


def sympy_groebner(gens: IdealGens) -> List[Poly]:
    """Reduced basis from sympy, grevlex with the declared variable order"""
    ctx = gens.ctx
    if not len(gens):
        return []
    G = sympy.groebner([to_sympy(g) for g in gens], *_symbols(ctx), modulus=ctx.p, order="grevlex")
    return [from_sympy(ctx, g) for g in G.exprs]


# brute-force oracles

def monomials_of_degree(n: int, d: int) -> Iterator[Monomial]:
    if n == 1:
        yield (d,)
        return
    for a in range(d, -1, -1):
        for rest in monomials_of_degree(n - 1, d - a):
            yield (a,) + rest


def span_member(f: Poly, gens: Sequence[Poly]) -> bool:
    """
    Macaulay-matrix membership test for homogeneous f and homogeneous
    generators: f is in the ideal iff it lies in the F_p-span of the
    multiples m*g of degree deg(f).
    """
    if f.is_zero():
        return True
    ctx, p = f.ctx, f.ctx.p
    d = f.total_degree()
    pivots: Dict[Monomial, Dict[Monomial, int]] = {}
    order: List[Monomial] = []

    def reduce(row: Dict[Monomial, int]) -> Dict[Monomial, int]:
        row = dict(row)
        for m in order:
            c = row.get(m)
            if not c:
                continue
            for mm, cc in pivots[m].items():
                v = (row.get(mm, 0) - c * cc) % p
                if v:
                    row[mm] = v
                else:
                    row.pop(mm, None)
        return row

    for g in gens:
        dg = g.total_degree()
        if dg > d:
            continue
        for m in monomials_of_degree(ctx.nvars, d - dg):
            row = reduce((g * Poly.monomial(ctx, m)).terms)
            if not row:
                continue
            lead = min(row)
            inv = pow(row[lead], -1, p)
            pivots[lead] = {mm: (cc * inv) % p for mm, cc in row.items()}
            order.append(lead)
    return not reduce(f.terms)


def brute_force_trace(gens: IdealGens, multiplier: Poly) -> IdealGens:
    """u(F_*(multiplier * g * x^b)) for every generator g and every b in {0..p-1}^N"""
    ctx, p = multiplier.ctx, multiplier.ctx.p
    out = []
    for g in gens:
        h = multiplier * g
        for b in itertools.product(range(p), repeat=ctx.nvars):
            shifted = h * Poly.monomial(ctx, b)
            terms = {}
            for mon, c in shifted.terms.items():
                if all(a % p == p - 1 for a in mon):
                    terms[tuple(a // p for a in mon)] = c
            root = Poly(ctx, terms, 1)
            if root:
                out.append(root)
    return IdealGens(ctx, tuple(out))


def random_homogeneous(rng: random.Random, ctx: PrimeContext, degree: int, max_terms: int = 3) -> Poly:
    """Nonzero homogeneous polynomial over F_p"""
    monomials = list(monomials_of_degree(ctx.nvars, degree))
    while True:
        terms = {rng.choice(monomials): rng.randrange(1, ctx.p) for _ in range(rng.randint(1, max_terms))}
        f = Poly(ctx, terms, 1)
        if f:
            return f

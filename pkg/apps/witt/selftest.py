"""
Randomized property suite for the Witt vector kernel.

Each property draws small random integer polynomials in two variables and
returns None on success or a short description of the counterexample.
"""
from __future__ import annotations

import logging
import random
from typing import Callable, Dict, List, Optional

from core.exceptions import LimitExceededError, QfsError

from apps.polyarith.models import Poly, PrimeContext
from apps.polyarith.services import delta1, delta_n, random_poly, reduce_mod_p

from .models import PropertyResult, SelftestSummary, WittVector
from .services import (
    delta_n_congruence,
    delta_s_witt,
    delta_W,
    frobenius,
    ghost,
    psi_decompose,
    psi_recursive,
    s_phi,
    sphi_phi_mod_p,
    teichmuller,
    teichmuller_decomposition,
    verschiebung,
    verschiebung_power,
    witt_add,
    witt_mul,
    witt_scalar,
)

logger = logging.getLogger(__name__)

# longest supported length per prime; other primes stop at 2
LENGTH_LIMITS = {2: 4, 3: 3, 5: 3}
DEFAULT_LENGTH_LIMIT = 2

Property = Callable[[random.Random, PrimeContext, int], Optional[str]]


def length_limit(p: int) -> int:
    return LENGTH_LIMITS.get(p, DEFAULT_LENGTH_LIMIT)


def check_limits(p: int, n: int) -> None:
    if n < 2:
        raise LimitExceededError(f"selftest needs n >= 2, got {n}")
    if n > length_limit(p):
        raise LimitExceededError(f"n={n} exceeds the supported length {length_limit(p)} for p={p}")


def _poly(rng: random.Random, ctx: PrimeContext, n: int) -> Poly:
    return random_poly(rng, ctx, max_degree=2 if n <= 3 else 1, max_terms=3, coeff_bound=3, precision=None)


def _vector(rng: random.Random, ctx: PrimeContext, n: int) -> WittVector:
    return WittVector(ctx, tuple(_poly(rng, ctx, n) for _ in range(n)))


def ghost_is_additive(rng, ctx, n):
    u, v = _vector(rng, ctx, n), _vector(rng, ctx, n)
    lhs = ghost(witt_add(u, v)).components
    rhs = tuple(a + b for a, b in zip(ghost(u), ghost(v)))
    return None if lhs == rhs else f"ghost(u+v) != ghost(u)+ghost(v) for u={u}, v={v}"


def ghost_is_multiplicative(rng, ctx, n):
    u, v = _vector(rng, ctx, n), _vector(rng, ctx, n)
    lhs = ghost(witt_mul(u, v)).components
    rhs = tuple(a * b for a, b in zip(ghost(u), ghost(v)))
    return None if lhs == rhs else f"ghost(uv) != ghost(u)ghost(v) for u={u}, v={v}"


def ring_axioms(rng, ctx, n):
    u, v, w = (_vector(rng, ctx, n) for _ in range(3))
    if witt_add(witt_add(u, v), w) != witt_add(u, witt_add(v, w)):
        return "addition is not associative"
    if witt_mul(u, v) != witt_mul(v, u):
        return "multiplication is not commutative"
    if witt_mul(u, witt_add(v, w)) != witt_add(witt_mul(u, v), witt_mul(u, w)):
        return "distributivity fails"
    return None


def verschiebung_product(rng, ctx, n):
    """V(a)V(b) = p V(ab)"""
    alpha, beta = _vector(rng, ctx, n - 1), _vector(rng, ctx, n - 1)
    lhs = witt_mul(verschiebung(alpha), verschiebung(beta))
    rhs = witt_scalar(verschiebung(witt_mul(alpha, beta)), ctx.p)
    return None if lhs == rhs else "V(a)V(b) != pV(ab)"


def teichmuller_times_verschiebung(rng, ctx, n):
    """[a] V^m([b]) = V^m([a^(p^m) b])"""
    a, b = _poly(rng, ctx, n), _poly(rng, ctx, n)
    for m in range(1, n):
        lhs = witt_mul(teichmuller(a, n), verschiebung_power(teichmuller(b, n - m), m))
        rhs = verschiebung_power(teichmuller(a ** (ctx.p ** m) * b, n - m), m)
        if lhs != rhs:
            return f"[a]V^{m}([b]) != V^{m}([a^(p^{m}) b]) for a={a}, b={b}"
    return None


def delta_W_kills_section(rng, ctx, n):
    a = _poly(rng, ctx, n)
    return None if delta_W(s_phi(a, n)).is_zero() else f"delta_W(s_phi(a)) != 0 for a={a}"


def delta_W_inverts_verschiebung(rng, ctx, n):
    alpha = _vector(rng, ctx, n - 1)
    return None if delta_W(verschiebung(alpha)) == alpha else "delta_W(V(a)) != a"


def delta_W_is_additive(rng, ctx, n):
    u, v = _vector(rng, ctx, n), _vector(rng, ctx, n)
    lhs = delta_W(witt_add(u, v))
    rhs = witt_add(delta_W(u), delta_W(v))
    return None if lhs == rhs else "delta_W(u+v) != delta_W(u)+delta_W(v)"


def delta_W_product_rule(rng, ctx, n):
    """delta_W(ab) = s_phi(phi(b0)) delta_W(a) + s_phi(phi(a0)) delta_W(b) + p delta_W(a) delta_W(b)"""
    alpha, beta = _vector(rng, ctx, n), _vector(rng, ctx, n)
    da, db = delta_W(alpha), delta_W(beta)
    m = n - 1
    rhs = witt_add(
        witt_add(
            witt_mul(s_phi(frobenius(beta[0]), m), da),
            witt_mul(s_phi(frobenius(alpha[0]), m), db),
        ),
        witt_scalar(witt_mul(da, db), ctx.p),
    )
    lhs = delta_W(witt_mul(alpha, beta))
    return None if lhs == rhs else "product rule for delta_W fails"


def frobenius_power_expansion(rng, ctx, n):
    """a^(p^k) = sum_s p^s phi^(k-s)(Delta_s(a)) for k < n"""
    a = _poly(rng, ctx, n)
    p = ctx.p
    for k in range(1, n):
        total = Poly.zero(ctx, None)
        for s in range(k + 1):
            total = total + frobenius(delta_s_witt(a, s), k - s).scale(p ** s)
        if total != a ** (p ** k):
            return f"a^(p^{k}) expansion fails for a={a}"
    return None


def delta_division_route(rng, ctx, n):
    """Delta_k via iterated delta_W, via Delta_1(a^(p^(k-1)))/p^(k-1), and the closed congruence"""
    a = _poly(rng, ctx, n)
    p = ctx.p
    for k in range(1, n):
        witt_value = delta_s_witt(a, k)
        exact = delta1(a ** (p ** (k - 1)))
        if exact != witt_value.scale(p ** (k - 1)):
            return f"Delta_1(a^(p^{k - 1})) != p^{k - 1} Delta_{k}(a) for a={a}"
        mod_p = reduce_mod_p(witt_value)
        if mod_p != delta_n(a, k):
            return f"modular Delta_{k} disagrees for a={a}"
        if mod_p != delta_n_congruence(a, k):
            return f"congruence for Delta_{k} fails for a={a}"
    return None


def teichmuller_expansion(rng, ctx, n):
    """[a] = s_phi(a) + V s_phi(Delta_1 a) + ... + V^k [Delta_k a] at length k+1"""
    a = _poly(rng, ctx, n)
    k = n - 1
    return None if teichmuller_decomposition(a, k) == teichmuller(a, k + 1) else f"decomposition of [a] fails for a={a}"


def psi_properties(rng, ctx, n):
    u, v = _vector(rng, ctx, n), _vector(rng, ctx, n)
    if psi_decompose(u) != psi_recursive(u):
        return "closed and recursive Psi disagree"
    lhs = psi_decompose(witt_add(u, v))
    rhs = tuple(a + b for a, b in zip(psi_decompose(u), psi_decompose(v)))
    if lhs != rhs:
        return "Psi is not additive"
    a = _poly(rng, ctx, n)
    zero = Poly.zero(ctx, None)
    if psi_decompose(s_phi(a, n)) != (a,) + (zero,) * (n - 1):
        return f"Psi(s_phi(a)) != (a, 0, ..., 0) for a={a}"
    return None


def section_of_frobenius(rng, ctx, n):
    a = _poly(rng, ctx, n)
    try:
        sphi_phi_mod_p(a, n)
    except QfsError as exc:
        return f"{exc.detail} for a={a}"
    return None


PROPERTIES: Dict[str, Property] = {
    "ghost_additive": ghost_is_additive,
    "ghost_multiplicative": ghost_is_multiplicative,
    "ring_axioms": ring_axioms,
    "verschiebung_product": verschiebung_product,
    "teichmuller_verschiebung": teichmuller_times_verschiebung,
    "delta_W_section": delta_W_kills_section,
    "delta_W_verschiebung": delta_W_inverts_verschiebung,
    "delta_W_additive": delta_W_is_additive,
    "delta_W_product": delta_W_product_rule,
    "frobenius_power_expansion": frobenius_power_expansion,
    "delta_division_route": delta_division_route,
    "teichmuller_expansion": teichmuller_expansion,
    "psi": psi_properties,
    "section_of_frobenius": section_of_frobenius,
}


def run_selftest(p: int, n: int, trials: int = 100, seed: int = 0, names: Optional[List[str]] = None) -> SelftestSummary:
    """Run every property `trials` times; deterministic for a given seed"""
    check_limits(p, n)
    ctx = PrimeContext(p, ("x", "y"))
    results = []
    for name, prop in PROPERTIES.items():
        if names and name not in names:
            continue
        rng = random.Random(f"{seed}:{p}:{n}:{name}")
        passed = failed = 0
        first_failure = ""
        for _ in range(trials):
            try:
                message = prop(rng, ctx, n)
            except QfsError as exc:
                message = f"{type(exc).__name__}: {exc.detail}"
            if message is None:
                passed += 1
            else:
                failed += 1
                first_failure = first_failure or message
        if failed:
            logger.warning(f"Witt property {name} failed {failed}/{trials} times: {first_failure}")
        else:
            logger.debug(f"Witt property {name} passed {trials} trials")
        results.append(PropertyResult(name, passed, failed, first_failure))
    return SelftestSummary(p=p, n=n, trials=trials, seed=seed, results=tuple(results))

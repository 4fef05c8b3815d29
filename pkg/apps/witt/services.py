# services for witt app
"""
Truncated Witt vectors over Z[x_1..x_N] with the Frobenius lift x_i -> x_i^p.

Every ring operation is carried out on ghost components and pulled back
coordinate by coordinate. The base ring has no p-torsion, so the ghost map
is injective and each pull-back division by p^r is exact; a remainder
means a bug and raises NondivisibleError.
"""
from __future__ import annotations

import logging
from typing import List, Sequence, Tuple

from core.exceptions import ContextMismatchError, InvariantViolation, PrecisionError

from apps.polyarith.models import Poly, PrimeContext
from apps.polyarith.services import (
    delta1,
    divide_exact,
    frobenius_substitute,
    reduce_mod_p,
)

from .models import GhostVector, ModPWittVector, WittVector

logger = logging.getLogger(__name__)


def _exact(a: Poly) -> Poly:
    if a.precision is not None:
        raise PrecisionError("Witt arithmetic needs exact integer polynomials")
    return a


def _zero(ctx: PrimeContext) -> Poly:
    return Poly.zero(ctx, None)


def _check_pair(u: WittVector, v: WittVector) -> None:
    if u.ctx != v.ctx:
        raise ContextMismatchError("Witt vectors live in different contexts")
    if u.length != v.length:
        raise ContextMismatchError(f"length mismatch: {u.length} vs {v.length}")


# ghost map

def ghost(w: WittVector) -> GhostVector:
    """w_r = sum_{i<=r} p^i a_i^(p^(r-i))"""
    p = w.p
    powers: List[Poly] = []
    out: List[Poly] = []
    for r, a in enumerate(w.components):
        powers = [x ** p for x in powers]
        powers.append(a)
        total = _zero(w.ctx)
        for i, x in enumerate(powers):
            total = total + x.scale(p ** i)
        out.append(total)
    return GhostVector(w.ctx, tuple(out))


def from_ghost(ctx: PrimeContext, ghosts: Sequence[Poly]) -> WittVector:
    """The unique Witt vector with the given ghost components"""
    p = ctx.p
    powers: List[Poly] = []
    coords: List[Poly] = []
    for r, g in enumerate(ghosts):
        powers = [x ** p for x in powers]
        rest = _exact(g)
        for i, x in enumerate(powers):
            rest = rest - x.scale(p ** i)
        c = divide_exact(rest, r)
        coords.append(c)
        powers.append(c)
    return WittVector(ctx, tuple(coords))


# ring structure

def witt_add(u: WittVector, v: WittVector) -> WittVector:
    _check_pair(u, v)
    gu, gv = ghost(u), ghost(v)
    return from_ghost(u.ctx, [a + b for a, b in zip(gu, gv)])


def witt_mul(u: WittVector, v: WittVector) -> WittVector:
    _check_pair(u, v)
    gu, gv = ghost(u), ghost(v)
    return from_ghost(u.ctx, [a * b for a, b in zip(gu, gv)])


def witt_neg(u: WittVector) -> WittVector:
    return from_ghost(u.ctx, [-a for a in ghost(u)])


def witt_sub(u: WittVector, v: WittVector) -> WittVector:
    _check_pair(u, v)
    gu, gv = ghost(u), ghost(v)
    return from_ghost(u.ctx, [a - b for a, b in zip(gu, gv)])


def witt_scalar(u: WittVector, m: int) -> WittVector:
    """m * u for an integer m"""
    return from_ghost(u.ctx, [a.scale(m) for a in ghost(u)])


def witt_zero(ctx: PrimeContext, n: int) -> WittVector:
    return WittVector(ctx, tuple(_zero(ctx) for _ in range(n)))


# coordinate operations

def teichmuller(a: Poly, n: int) -> WittVector:
    """[a] = (a, 0, ..., 0) of length n"""
    _exact(a)
    return WittVector(a.ctx, (a,) + tuple(_zero(a.ctx) for _ in range(n - 1)))


def verschiebung(w: WittVector) -> WittVector:
    """V(a_0, ..., a_{n-1}) = (0, a_0, ..., a_{n-1})"""
    return WittVector(w.ctx, (_zero(w.ctx),) + w.components)


def verschiebung_power(w: WittVector, m: int) -> WittVector:
    for _ in range(m):
        w = verschiebung(w)
    return w


def restriction(w: WittVector) -> WittVector:
    if w.length < 2:
        raise ValueError("cannot restrict a Witt vector of length 1")
    return WittVector(w.ctx, w.components[:-1])


def frobenius(a: Poly, e: int = 1) -> Poly:
    return frobenius_substitute(_exact(a), e)


# the section s_phi and the delta operators

def s_phi(a: Poly, n: int) -> WittVector:
    """Ring section A -> W_n(A) with ghost components phi^r(a)"""
    _exact(a)
    ghosts = []
    current = a
    for _ in range(n):
        ghosts.append(current)
        current = frobenius(current)
    return from_ghost(a.ctx, ghosts)


def delta_W(w: WittVector) -> WittVector:
    """V(delta_W(w)) = w - s_phi(a_0)"""
    if w.length < 2:
        raise ValueError("delta_W needs length >= 2")
    d = witt_sub(w, s_phi(w[0], w.length))
    if not d[0].is_zero():
        raise InvariantViolation(
            "first coordinate of w - s_phi(a_0) is nonzero",
            {"coordinate": str(d[0])},
        )
    return WittVector(w.ctx, d.components[1:])


def delta_s_witt(a: Poly, s: int) -> Poly:
    """Delta_s(a) as delta_W_2 o ... o delta_W_{s+1} applied to [a]; Delta_0 = id"""
    if s == 0:
        return _exact(a)
    w = teichmuller(a, s + 1)
    for _ in range(s):
        w = delta_W(w)
    return w[0]


def psi_decompose(w: WittVector) -> Tuple[Poly, ...]:
    """Component r is a_r + sum_{j<r} Delta_{r-j}(a_j)"""
    out = []
    for r in range(w.length):
        total = w[r]
        for j in range(r):
            total = total + delta_s_witt(w[j], r - j)
        out.append(total)
    return tuple(out)


def psi_recursive(w: WittVector) -> Tuple[Poly, ...]:
    """Psi_n(w) = (a_0, Psi_{n-1}(delta_W(w)))"""
    if w.length == 1:
        return (w[0],)
    return (w[0],) + psi_recursive(delta_W(w))


def sphi_phi_mod_p(a: Poly, n: int) -> ModPWittVector:
    """
    Class of s_phi(phi(a)) in W_n(A)/pW_n(A), in Psi_n coordinates.

    It must agree with the class of [a^p]: the difference lies in pW_n(A),
    i.e. every Psi_n coordinate of it is divisible by p. The plain Witt
    coordinates need not vanish mod p.
    """
    v = s_phi(frobenius(a), n)
    difference = psi_decompose(witt_sub(v, teichmuller(a ** a.ctx.p, n)))
    offending = [r for r, c in enumerate(difference) if not reduce_mod_p(c).is_zero()]
    if offending:
        raise InvariantViolation(
            "s_phi(phi(a)) - [a^p] is not in pW_n",
            {"coordinates": offending},
        )
    return ModPWittVector(a.ctx, tuple(reduce_mod_p(c) for c in psi_decompose(v)))


def delta_n_congruence(a: Poly, n: int) -> Poly:
    """Closed form of Delta_n(a) mod p in terms of a and Delta_1(a)"""
    p = a.ctx.p
    a_bar = reduce_mod_p(a)
    d1 = reduce_mod_p(delta1(a))
    result = a_bar ** (p ** n - p) * d1
    if p == 2 and n >= 2:
        result = result + a_bar ** (p ** n - 2 * p) * d1 ** p
    return result


def teichmuller_decomposition(a: Poly, n: int) -> WittVector:
    """s_phi(a) + V s_phi(Delta_1 a) + ... + V^(n-1) s_phi(Delta_(n-1) a) + V^n [Delta_n a], length n+1"""
    total = s_phi(a, n + 1)
    for s in range(1, n):
        total = witt_add(total, verschiebung_power(s_phi(delta_s_witt(a, s), n + 1 - s), s))
    total = witt_add(total, verschiebung_power(teichmuller(delta_s_witt(a, n), 1), n))
    return total

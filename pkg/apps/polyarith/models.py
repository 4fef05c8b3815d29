# models for polyarith app
from __future__ import annotations

import operator
import re
from dataclasses import dataclass
from types import MappingProxyType
from typing import Dict, Iterable, Iterator, Mapping, Optional, Tuple, Union

from core.exceptions import (
    ConfigError,
    ContextMismatchError,
    ExponentOverflowError,
    PrecisionError,
)

Monomial = Tuple[int, ...]

MIN_PRIME = 2
MAX_PRIME = 97
MAX_MODULAR_PRECISION = 8
EXPONENT_LIMIT = 2 ** 32

IDENTIFIER = re.compile(r"^[A-Za-z_][A-Za-z0-9_]*$")


def is_prime(n: int) -> bool:
    """Deterministic trial division, enough for the supported range"""
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


def degrevlex_key(m: Monomial) -> Tuple[int, Tuple[int, ...]]:
    """Sort key: larger key means larger monomial in degrevlex"""
    return sum(m), tuple(-e for e in reversed(m))


def monomial_divides(a: Monomial, b: Monomial) -> bool:
    return all(x <= y for x, y in zip(a, b))


def monomial_mul(a: Monomial, b: Monomial) -> Monomial:
    return tuple(map(operator.add, a, b))


def monomial_div(a: Monomial, b: Monomial) -> Monomial:
    return tuple(map(operator.sub, a, b))


def monomial_lcm(a: Monomial, b: Monomial) -> Monomial:
    return tuple(map(max, a, b))


@dataclass(frozen=True)
class PrimeContext:
    """The fixed prime together with the declared variables"""

    p: int
    names: Tuple[str, ...]

    def __post_init__(self):
        if not isinstance(self.p, int) or not is_prime(self.p):
            raise ConfigError(f"p={self.p} is not prime")
        if not MIN_PRIME <= self.p <= MAX_PRIME:
            raise ConfigError(f"p={self.p} outside supported range {MIN_PRIME}..{MAX_PRIME}")
        names = tuple(self.names)
        object.__setattr__(self, "names", names)
        if not names:
            raise ConfigError("at least one variable is required")
        for name in names:
            if not IDENTIFIER.match(name):
                raise ConfigError(f"invalid variable name '{name}'")
        if len(set(names)) != len(names):
            raise ConfigError("variable names must be distinct")

    @property
    def nvars(self) -> int:
        return len(self.names)

    def index(self, name: str) -> int:
        return self.names.index(name)

    def unit(self, i: int) -> Monomial:
        return tuple(1 if j == i else 0 for j in range(self.nvars))

    @property
    def one(self) -> Monomial:
        return (0,) * self.nvars


Precision = Optional[int]  # None stands for exact integers


def modulus_for(p: int, precision: Precision) -> Optional[int]:
    return None if precision is None else p ** precision


class Poly:
    """
    Sparse polynomial with coefficients in Z/p^k (canonical residues) or,
    for precision None, in the integers. Immutable once built.
    """

    __slots__ = ("ctx", "precision", "_terms", "_hash")

    def __init__(
        self,
        ctx: PrimeContext,
        terms: Union[Mapping[Monomial, int], Iterable[Tuple[Monomial, int]]] = (),
        precision: Precision = 1,
        *,
        normalized: bool = False,
    ):
        if precision is not None and not 1 <= precision <= MAX_MODULAR_PRECISION:
            raise PrecisionError(f"precision {precision} outside 1..{MAX_MODULAR_PRECISION}")
        self.ctx = ctx
        self.precision = precision
        self._hash: Optional[int] = None
        if normalized:
            self._terms: Dict[Monomial, int] = dict(terms)
            return
        modulus = modulus_for(ctx.p, precision)
        items = terms.items() if isinstance(terms, Mapping) else terms
        out: Dict[Monomial, int] = {}
        n = ctx.nvars
        for mon, coef in items:
            mon = tuple(mon)
            if len(mon) != n:
                raise ContextMismatchError(f"monomial {mon} has {len(mon)} exponents, expected {n}")
            out[mon] = out.get(mon, 0) + coef
        self._terms = {}
        for mon, coef in out.items():
            if modulus is not None:
                coef %= modulus
            if coef:
                _check_exponents(mon)
                self._terms[mon] = coef

    # constructors

    @classmethod
    def zero(cls, ctx: PrimeContext, precision: Precision = 1) -> "Poly":
        return cls(ctx, {}, precision, normalized=True)

    @classmethod
    def constant(cls, ctx: PrimeContext, c: int, precision: Precision = 1) -> "Poly":
        return cls(ctx, {ctx.one: c}, precision)

    @classmethod
    def variable(cls, ctx: PrimeContext, name: str, precision: Precision = 1) -> "Poly":
        return cls(ctx, {ctx.unit(ctx.index(name)): 1}, precision)

    @classmethod
    def monomial(cls, ctx: PrimeContext, exponents: Monomial, coef: int = 1, precision: Precision = 1) -> "Poly":
        return cls(ctx, {tuple(exponents): coef}, precision)

    # accessors

    @property
    def terms(self) -> Mapping[Monomial, int]:
        return MappingProxyType(self._terms)

    @property
    def modulus(self) -> Optional[int]:
        return modulus_for(self.ctx.p, self.precision)

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __len__(self) -> int:
        return len(self._terms)

    def __iter__(self) -> Iterator[Tuple[Monomial, int]]:
        return iter(self.sorted_terms())

    def sorted_terms(self):
        """Terms in descending degrevlex order"""
        return sorted(self._terms.items(), key=lambda t: degrevlex_key(t[0]), reverse=True)

    def leading_monomial(self) -> Optional[Monomial]:
        if not self._terms:
            return None
        return max(self._terms, key=degrevlex_key)

    def total_degree(self) -> int:
        return max((sum(m) for m in self._terms), default=-1)

    def is_constant(self) -> bool:
        return all(not any(m) for m in self._terms)

    def coefficient(self, mon: Monomial) -> int:
        return self._terms.get(tuple(mon), 0)

    # comparison

    def __eq__(self, other: object) -> bool:
        if isinstance(other, int):
            return self == Poly.constant(self.ctx, other, self.precision)
        if not isinstance(other, Poly):
            return NotImplemented
        return self.ctx == other.ctx and self.precision == other.precision and self._terms == other._terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.ctx, self.precision, frozenset(self._terms.items())))
        return self._hash

    # arithmetic

    def _coerce(self, other: Union["Poly", int]) -> "Poly":
        if isinstance(other, int):
            return Poly.constant(self.ctx, other, self.precision)
        if not isinstance(other, Poly):
            raise TypeError(f"cannot combine Poly with {type(other).__name__}")
        if other.ctx != self.ctx:
            raise ContextMismatchError("polynomials live in different contexts")
        if other.precision != self.precision:
            raise ContextMismatchError(
                f"precision mismatch: {_fmt_precision(self.precision)} vs {_fmt_precision(other.precision)}"
            )
        return other

    def __add__(self, other):
        other = self._coerce(other)
        modulus = self.modulus
        out = dict(self._terms)
        for mon, coef in other._terms.items():
            c = out.get(mon, 0) + coef
            if modulus is not None:
                c %= modulus
            if c:
                out[mon] = c
            else:
                out.pop(mon, None)
        return Poly(self.ctx, out, self.precision, normalized=True)

    __radd__ = __add__

    def __neg__(self):
        modulus = self.modulus
        if modulus is None:
            out = {m: -c for m, c in self._terms.items()}
        else:
            out = {m: modulus - c for m, c in self._terms.items()}
        return Poly(self.ctx, out, self.precision, normalized=True)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        if isinstance(other, int):
            return self.scale(other)
        other = self._coerce(other)
        if not self._terms or not other._terms:
            return Poly.zero(self.ctx, self.precision)
        _check_product_exponents(self, other)
        modulus = self.modulus
        out: Dict[Monomial, int] = {}
        get = out.get
        add = operator.add
        for ma, ca in self._terms.items():
            for mb, cb in other._terms.items():
                mon = tuple(map(add, ma, mb))
                out[mon] = get(mon, 0) + ca * cb
        if modulus is None:
            terms = {m: c for m, c in out.items() if c}
        else:
            terms = {}
            for m, c in out.items():
                c %= modulus
                if c:
                    terms[m] = c
        return Poly(self.ctx, terms, self.precision, normalized=True)

    __rmul__ = __mul__

    def scale(self, c: int) -> "Poly":
        modulus = self.modulus
        out = {}
        for mon, coef in self._terms.items():
            v = coef * c
            if modulus is not None:
                v %= modulus
            if v:
                out[mon] = v
        return Poly(self.ctx, out, self.precision, normalized=True)

    def __pow__(self, e: int) -> "Poly":
        if not isinstance(e, int) or e < 0:
            raise ValueError(f"exponent must be a nonnegative integer, got {e!r}")
        result = Poly.constant(self.ctx, 1, self.precision)
        base = self
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    def __str__(self) -> str:
        from apps.polyarith.services import render
        return render(self)

    def __repr__(self) -> str:
        return f"Poly({str(self)!r}, p={self.ctx.p}, precision={_fmt_precision(self.precision)})"


@dataclass(frozen=True)
class IdealGens:
    """Generators of an ideal of F_p[x_1..x_N]; zeros are dropped on construction"""

    ctx: PrimeContext
    generators: Tuple[Poly, ...] = ()

    def __post_init__(self):
        gens = tuple(self.generators)
        for g in gens:
            if g.ctx != self.ctx:
                raise ContextMismatchError("generator from a different context")
            if g.precision != 1:
                raise PrecisionError("ideal generators must be reduced mod p")
        object.__setattr__(self, "generators", tuple(g for g in gens if g))

    def __len__(self) -> int:
        return len(self.generators)

    def __iter__(self) -> Iterator[Poly]:
        return iter(self.generators)

    def deduplicated(self) -> "IdealGens":
        seen = dict.fromkeys(self.generators)
        return IdealGens(self.ctx, tuple(seen))

    def __add__(self, other: "IdealGens") -> "IdealGens":
        if other.ctx != self.ctx:
            raise ContextMismatchError("ideals live in different contexts")
        return IdealGens(self.ctx, self.generators + other.generators).deduplicated()


def _fmt_precision(precision: Precision) -> str:
    return "inf" if precision is None else str(precision)


def _check_exponents(mon: Monomial) -> None:
    for e in mon:
        if e < 0:
            raise ContextMismatchError(f"negative exponent in {mon}")
        if e >= EXPONENT_LIMIT:
            raise ExponentOverflowError(f"exponent {e} exceeds the 32-bit limit")


def _check_product_exponents(a: Poly, b: Poly) -> None:
    n = a.ctx.nvars
    for i in range(n):
        top = max(m[i] for m in a._terms) + max(m[i] for m in b._terms)
        if top >= EXPONENT_LIMIT:
            raise ExponentOverflowError(f"product exponent {top} in variable {a.ctx.names[i]} exceeds the 32-bit limit")

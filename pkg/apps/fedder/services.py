# services for fedder app
"""
Ideal chains for the quasi-F-splitting height of a complete intersection
R = Z_(p)[x]/(f_1, ..., f_r), all carried out in F_p[x]:

    I_1  = (f^(p-1)) + I^[p]
    I_n  = u(F_*(Delta_1(f^(p-1)) I_(n-1))) + I_1
    J_0  = (1),  J_(e+1) = u(F_*(f^(p-1) J_e))          (stable ideal I')
    I'_1 = f^(p-1) I' + I^[p]
    I'_n = u(F_*(Delta_1(f^(p-1)) I'_(n-1))) + (f^(p-1)) + I^[p]

where f = f_1 ... f_r and u is the trace dual to x_1^(p-1) ... x_N^(p-1).
The height is the first n with I_n not inside m^[p].
"""
from __future__ import annotations

import itertools
import logging
from dataclasses import dataclass
from typing import Dict, List, Optional

from core.exceptions import (
    BudgetExceeded,
    GroebnerBudgetExceeded,
    InvariantViolation,
    SigmaBudgetExceeded,
)

from apps.groebner.models import GroebnerBasis
from apps.groebner.services import buchberger, ideal_contains, same_ideal
from apps.polyarith.models import IdealGens, Poly
from apps.polyarith.services import (
    cartier_u,
    delta1,
    frobenius_root_components,
    maximal_ideal_frobenius_power,
    monomial_ideal_member,
    product,
    reduce_mod_monomial_ideal,
    reduce_mod_p,
    reduce_precision,
)

from .models import (
    ChainKind,
    ChainLevel,
    CIInput,
    FFinftyResult,
    HeightKind,
    HeightResult,
    IdealChain,
    StabilizationCertificate,
)

logger = logging.getLogger(__name__)


def trace_ideal(J: IdealGens, multiplier: Poly) -> IdealGens:
    """Generators of u(F_*(multiplier * J)) via Frobenius-root components"""
    gens: List[Poly] = []
    for g in J:
        gens.extend(frobenius_root_components(multiplier * g).values())
    return IdealGens(J.ctx, tuple(gens)).deduplicated()


def trace_ideal_expanded(J: IdealGens, multiplier: Poly) -> IdealGens:
    """Same ideal as trace_ideal, spelled out as u(multiplier * g * x^b) for b in {0..p-1}^N"""
    ctx = J.ctx
    gens: List[Poly] = []
    for g in J:
        h = multiplier * g
        for b in itertools.product(range(ctx.p), repeat=ctx.nvars):
            gens.append(cartier_u(h * Poly.monomial(ctx, b)))
    return IdealGens(ctx, tuple(gens)).deduplicated()


@dataclass
class _ChainRun:
    chain: IdealChain
    witness_level: Optional[int] = None
    witness: Optional[Poly] = None


class FedderService:
    """Chains, height and stable ideal for one complete-intersection input"""

    def __init__(self, data: CIInput):
        self.data = data
        self.ctx = data.ctx
        self.p = data.ctx.p
        self.lifts_mod_p = tuple(reduce_mod_p(f) for f in data.lifts)
        self.f_bar = product(self.lifts_mod_p)
        self.f_power = self.f_bar ** (self.p - 1)
        self.frobenius_gens = IdealGens(self.ctx, tuple(g ** self.p for g in self.lifts_mod_p))
        self.m_frobenius = maximal_ideal_frobenius_power(self.ctx)
        self._delta_term: Optional[Poly] = None

    # building blocks

    @property
    def delta_term(self) -> Poly:
        """Delta_1((f_1...f_r)^(p-1)) from the given lifts, reduced mod p"""
        if self._delta_term is None:
            f = product([reduce_precision(g, 2) for g in self.data.lifts])
            self._delta_term = reduce_mod_p(delta1(f ** (self.p - 1)))
            logger.debug(f"Delta term has {len(self._delta_term)} terms, degree {self._delta_term.total_degree()}")
        return self._delta_term

    def first_ideal(self) -> IdealGens:
        return IdealGens(self.ctx, (self.f_power,) + self.frobenius_gens.generators).deduplicated()

    def in_frobenius_power(self, f: Poly) -> bool:
        return monomial_ideal_member(f, self.m_frobenius)

    def outside_frobenius_power(self, ideal: IdealGens) -> Optional[Poly]:
        """First generator not in m^[p], if any"""
        for g in ideal:
            if not self.in_frobenius_power(g):
                return g
        return None

    def is_f_pure(self) -> bool:
        return not self.in_frobenius_power(self.f_power)

    def groebner(self, ideal: IdealGens) -> GroebnerBasis:
        return buchberger(ideal, self.data.gb_limits)

    def theta(self, a: Poly) -> Poly:
        """u(F_*(a * Delta_1(f^(p-1))))"""
        return cartier_u(a * self.delta_term)

    def theta_orbit(self, start: Poly, steps: int) -> List[Poly]:
        orbit = [start]
        for _ in range(steps):
            orbit.append(self.theta(orbit[-1]))
        return orbit

    # the I-chain

    def _run_chain_I(self, max_levels: int, stop_on_witness: bool) -> _ChainRun:
        first = self.first_ideal()
        levels: List[ChainLevel] = []
        run = _ChainRun(IdealChain(ChainKind.I_CHAIN))
        stabilized_at = None
        inconclusive = False
        reason = ""
        previous: Optional[GroebnerBasis] = None
        gens = first
        for n in range(1, max_levels + 1):
            outside = self.outside_frobenius_power(gens)
            if outside is not None and run.witness is None:
                run.witness_level, run.witness = n, outside
                logger.info(f"I_{n} leaves m^[p] ({len(gens)} generators)")
                if stop_on_witness:
                    levels.append(ChainLevel(n, gens))
                    break
            try:
                basis = self.groebner(gens)
            except GroebnerBudgetExceeded as exc:
                levels.append(ChainLevel(n, gens))
                inconclusive, reason = True, exc.detail
                logger.warning(f"I-chain stopped at level {n}: {exc.detail}")
                break
            levels.append(ChainLevel(n, gens, basis))
            if previous is not None:
                if not ideal_contains(basis, previous.as_ideal()):
                    raise InvariantViolation(f"I_{n - 1} is not contained in I_{n}", {"level": n})
                if same_ideal(basis, previous):
                    stabilized_at = n - 1
                    logger.info(f"I-chain stabilized: I_{n - 1} = I_{n}")
                    break
            logger.debug(f"I_{n}: {len(gens)} generators, basis of {len(basis)}")
            previous = basis
            if n < max_levels:
                gens = trace_ideal(basis.as_ideal(), self.delta_term) + first
        run.chain = IdealChain(ChainKind.I_CHAIN, tuple(levels), stabilized_at, inconclusive, reason)
        return run

    def chain_I(self, levels: Optional[int] = None) -> IdealChain:
        """The I-chain; stops at the first level outside m^[p], at stabilization or at max_height"""
        if levels is None:
            return self._run_chain_I(self.data.max_height, stop_on_witness=True).chain
        return self._run_chain_I(levels, stop_on_witness=False).chain

    def height(self) -> HeightResult:
        max_height = self.data.max_height
        run = self._run_chain_I(max_height, stop_on_witness=True)
        chain = run.chain
        if run.witness is not None:
            residue = reduce_mod_monomial_ideal(run.witness, self.m_frobenius)
            logger.info(f"height = {run.witness_level}")
            return HeightResult(
                HeightKind.FINITE,
                value=run.witness_level,
                witness=run.witness,
                witness_mod_frobenius=residue,
                chain=chain,
            )
        if chain.stabilized_at is not None:
            level = chain.level(chain.stabilized_at)
            logger.info(f"height = infinite (stable from I_{chain.stabilized_at})")
            return HeightResult(
                HeightKind.INFINITE,
                certificate=StabilizationCertificate(chain.stabilized_at, level.basis),
                chain=chain,
            )
        checked = chain.levels[-1].index if chain.levels else 0
        reason = chain.reason or f"no decision within max_height={max_height}"
        logger.info(f"height inconclusive: {reason}")
        return HeightResult(
            HeightKind.INCONCLUSIVE,
            value=checked,
            at_least=checked + 1,
            reason=reason,
            chain=chain,
        )

    # the stable ideal

    def descent_J(self) -> IdealChain:
        """J_0 = (1), J_(e+1) = u(F_*(f^(p-1) J_e)) until two consecutive terms agree"""
        unit = IdealGens(self.ctx, (Poly.constant(self.ctx, 1),))
        previous = self.groebner(unit)
        levels = [ChainLevel(0, unit, previous)]
        for e in range(1, self.data.sigma_budget + 1):
            gens = trace_ideal(previous.as_ideal(), self.f_power)
            if not ideal_contains(previous, gens):
                raise InvariantViolation(f"J_{e} is not contained in J_{e - 1}", {"level": e})
            try:
                basis = self.groebner(gens)
            except GroebnerBudgetExceeded as exc:
                levels.append(ChainLevel(e, gens))
                return IdealChain(ChainKind.J_DESCENT, tuple(levels), None, True, exc.detail)
            levels.append(ChainLevel(e, gens, basis))
            if same_ideal(basis, previous):
                logger.info(f"stable ideal reached at J_{e - 1}")
                return IdealChain(ChainKind.J_DESCENT, tuple(levels), e - 1)
            previous = basis
        reason = f"J-descent did not stabilize within sigma_budget={self.data.sigma_budget}"
        return IdealChain(ChainKind.J_DESCENT, tuple(levels), None, True, reason)

    def stable_ideal(self) -> IdealGens:
        """I' as a reduced Groebner basis"""
        chain = self.descent_J()
        if chain.inconclusive:
            raise SigmaBudgetExceeded(chain.reason)
        return chain.level(chain.stabilized_at).basis.as_ideal()

    def trace_power_direct(self, e: int) -> IdealGens:
        """u^e(F^e_*(f^(p^e - 1))) computed in one go"""
        q = self.p ** e
        h = self.f_bar ** (q - 1)
        return IdealGens(self.ctx, tuple(frobenius_root_components(h, q).values())).deduplicated()

    # the I'-chain and the FF^infty decision

    def _chain_I_bases(self, levels: int, reference: Optional[IdealChain]) -> Dict[int, GroebnerBasis]:
        """Bases of I_1..I_levels, as far as the budgets allow"""
        chain = reference if reference is not None else self._run_chain_I(levels, stop_on_witness=False).chain
        bases: Dict[int, GroebnerBasis] = {}
        for lvl in chain.levels:
            if lvl.index > levels:
                break
            if lvl.basis is not None:
                bases[lvl.index] = lvl.basis
                continue
            try:
                bases[lvl.index] = self.groebner(lvl.generators)
            except GroebnerBudgetExceeded:
                logger.warning(f"I_{lvl.index} has no basis, I'_{lvl.index} is not checked against it")
        if chain.stabilized_at is not None:
            stable_basis = chain.level(chain.stabilized_at).basis
            for n in range(chain.stabilized_at, levels + 1):
                bases.setdefault(n, stable_basis)
        return bases

    def chain_I_prime(self, stable: IdealGens, levels: int, reference: Optional[IdealChain] = None) -> IdealChain:
        """
        I'_1..I'_levels; each level is checked to lie inside I_n, taken from
        `reference` when given and recomputed otherwise.
        """
        i_bases = self._chain_I_bases(levels, reference)
        base = IdealGens(self.ctx, (self.f_power,) + self.frobenius_gens.generators)
        gens = IdealGens(self.ctx, tuple(self.f_power * g for g in stable)) + self.frobenius_gens
        out: List[ChainLevel] = []
        for n in range(1, levels + 1):
            if n in i_bases and not ideal_contains(i_bases[n], gens):
                raise InvariantViolation(f"I'_{n} is not contained in I_{n}", {"level": n})
            try:
                basis = self.groebner(gens)
            except GroebnerBudgetExceeded as exc:
                out.append(ChainLevel(n, gens))
                return IdealChain(ChainKind.IPRIME_CHAIN, tuple(out), None, True, exc.detail)
            out.append(ChainLevel(n, gens, basis))
            if n < levels:
                gens = trace_ideal(basis.as_ideal(), self.delta_term) + base
        return IdealChain(ChainKind.IPRIME_CHAIN, tuple(out))

    def is_qf_finfty(self, height: Optional[HeightResult] = None, stable: Optional[IdealGens] = None) -> FFinftyResult:
        height = height or self.height()
        if height.kind == HeightKind.INFINITE:
            return FFinftyResult(False)
        if height.kind == HeightKind.INCONCLUSIVE:
            return FFinftyResult(None)
        try:
            stable = stable if stable is not None else self.stable_ideal()
        except BudgetExceeded as exc:
            logger.warning(f"FF-infinity undecided: {exc.detail}")
            return FFinftyResult(None)
        chain = self.chain_I_prime(stable, height.value, height.chain)
        last = chain.levels[-1]
        if last.index != height.value:
            return FFinftyResult(None, chain)
        witness = self.outside_frobenius_power(last.generators)
        logger.info(f"I'_{height.value} {'leaves' if witness is not None else 'stays inside'} m^[p]")
        return FFinftyResult(witness is not None, chain, witness)


# functional entry points

def delta_term(data: CIInput) -> Poly:
    return FedderService(data).delta_term


def chain_I(data: CIInput) -> IdealChain:
    return FedderService(data).chain_I()


def height(data: CIInput) -> HeightResult:
    return FedderService(data).height()


def stable_ideal(data: CIInput) -> IdealGens:
    return FedderService(data).stable_ideal()


def is_qf_finfty(data: CIInput) -> FFinftyResult:
    return FedderService(data).is_qf_finfty()


def is_f_pure(data: CIInput) -> bool:
    return FedderService(data).is_f_pure()

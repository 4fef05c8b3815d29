import pytest

from core.exceptions import ConfigError, InvariantViolation, PrecisionError, SigmaBudgetExceeded
from apps.fedder.models import CIInput, ChainKind, ChainLevel, HeightKind, IdealChain
from apps.fedder.services import (
    FedderService,
    height,
    is_f_pure,
    trace_ideal,
    trace_ideal_expanded,
)
from apps.groebner.models import GroebnerLimits
from apps.groebner.services import buchberger, ideal_contains, ideal_equal, same_ideal
from apps.polyarith.models import PrimeContext
from apps.polyarith.services import maximal_ideal_frobenius_power, reduce_mod_monomial_ideal
from tests.conftest import P, brute_force_trace, ideal


def ci(ctx, *lifts, **kwargs):
    return CIInput(ctx, tuple(P(ctx, f, 2) for f in lifts), **kwargs)


E8 = "z^2 + x^3 + y^5"
PLAIN_QUARTIC = "w^2 + x*y*z*(x + y + z)"
TWISTED_QUARTIC = "w^2 + x*y*z*(x + y + z) + 2*(x*y + x*z + y*z)*w"


class TestCIInput:
    """Validation of the lifts and limits"""

    def test_lifts_need_precision_two(self, ctx2):
        with pytest.raises(PrecisionError):
            CIInput(ctx2, (P(ctx2, E8),))

    def test_lift_vanishing_mod_p(self, ctx2):
        with pytest.raises(ConfigError):
            ci(ctx2, "2*x")

    def test_too_many_lifts(self):
        ctx = PrimeContext(2, ("x",))
        with pytest.raises(ConfigError):
            ci(ctx, "x", "x^2")

    def test_max_height_positive(self, ctx2):
        with pytest.raises(ConfigError):
            ci(ctx2, E8, max_height=0)


class TestTheta:
    """theta(a) = u(F_*(a * Delta_1(f^(p-1))))"""

    def test_e8_first_step(self, ctx2):
        service = FedderService(ci(ctx2, E8))
        assert service.theta(P(ctx2, "z") * service.f_bar) == P(ctx2, "x*y^2*z")

    def test_twisted_quartic(self, quartic_ctx):
        service = FedderService(ci(quartic_ctx, TWISTED_QUARTIC))
        a = P(quartic_ctx, "x*w^2 + x^2*y^2*z + x^2*y*z^2 + x^2*y*w + x^2*z*w")
        assert service.theta(a) == P(quartic_ctx, "x*z*w + x*y*w")

    def test_twisted_quartic_first_step(self, quartic_ctx):
        service = FedderService(ci(quartic_ctx, TWISTED_QUARTIC))
        expected = P(quartic_ctx, "x*w^2 + x^2*y^2*z + x^2*y*z^2 + x^2*y*w + x^2*z*w")
        assert service.theta(P(quartic_ctx, "x*w") * service.f_bar) == expected

    def test_plain_quartic(self, quartic_ctx):
        service = FedderService(ci(quartic_ctx, PLAIN_QUARTIC))
        value = service.theta(P(quartic_ctx, "z*w") * service.f_bar)
        assert value == P(quartic_ctx, "z*w^2 + x*y*z*w + x^2*y*z^2 + x*y^2*z^2")
        residue = reduce_mod_monomial_ideal(value, maximal_ideal_frobenius_power(quartic_ctx))
        assert residue == P(quartic_ctx, "x*y*z*w")

    def test_orbit(self, ctx2):
        service = FedderService(ci(ctx2, E8))
        orbit = service.theta_orbit(P(ctx2, "z") * service.f_bar, 2)
        assert len(orbit) == 3
        assert orbit[1] == P(ctx2, "x*y^2*z")
        assert orbit[2] == service.theta(orbit[1])

    def test_delta_term_depends_on_the_lift(self, quartic_ctx):
        plain = FedderService(ci(quartic_ctx, PLAIN_QUARTIC))
        twisted = FedderService(ci(quartic_ctx, TWISTED_QUARTIC))
        assert plain.f_bar == twisted.f_bar
        assert plain.delta_term != twisted.delta_term


class TestTraceIdeal:
    """u(F_*(multiplier * J)) against the per-b expansion"""

    def test_grouped_and_expanded_agree(self, ctx3):
        J = ideal(ctx3, "x + y^2", "z*x")
        m = P(ctx3, "x^2 + y*z")
        assert ideal_equal(trace_ideal(J, m), trace_ideal_expanded(J, m))

    def test_matches_brute_force(self, ctx2):
        J = ideal(ctx2, "x*y + z", "y^3")
        m = P(ctx2, "x^3 + y*z + z^2")
        assert ideal_equal(trace_ideal(J, m), brute_force_trace(J, m))

    def test_unit_ideal_and_fermat(self, ctx2):
        unit = ideal(ctx2, "1")
        assert ideal_equal(trace_ideal(unit, P(ctx2, "x^3 + y^3 + z^3")), ideal(ctx2, "x", "y", "z"))


class TestHeight:
    """Fedder-type chains and the height"""

    def test_f_pure_is_height_one(self, ctx2):
        data = ci(ctx2, "x*y + z^2")
        assert is_f_pure(data)
        result = height(data)
        assert result.kind == HeightKind.FINITE
        assert result.value == 1

    def test_fermat_cubic(self, ctx2):
        data = ci(ctx2, "x^3 + y^3 + z^3")
        assert not is_f_pure(data)
        result = height(data)
        assert result.value == 2
        assert result.witness_mod_frobenius is not None
        assert not result.witness_mod_frobenius.is_zero()

    def test_e8_witness(self, ctx2):
        result = height(ci(ctx2, E8))
        assert result.value == 4
        assert result.chain.kind == ChainKind.I_CHAIN
        assert [lvl.index for lvl in result.chain.levels] == [1, 2, 3, 4]

    def test_inconclusive_at_max_height(self, ctx2):
        result = height(ci(ctx2, E8, max_height=2))
        assert result.kind == HeightKind.INCONCLUSIVE
        assert result.value == 2
        assert result.at_least == 3
        assert "max_height=2" in result.reason

    def test_inconclusive_on_groebner_budget(self, ctx2):
        result = height(ci(ctx2, E8, gb_limits=GroebnerLimits(step_budget=1, pair_budget=1)))
        assert result.kind == HeightKind.INCONCLUSIVE
        assert "budget" in result.reason

    def test_chain_is_monotone(self, ctx2):
        chain = FedderService(ci(ctx2, E8)).chain_I(3)
        bases = [buchberger(level.generators) for level in chain.levels]
        for smaller, bigger in zip(bases, bases[1:]):
            assert ideal_contains(bigger, smaller.as_ideal())

    def test_fixed_level_dump_keeps_going(self, ctx2):
        chain = FedderService(ci(ctx2, "x*y + z^2")).chain_I(2)
        assert chain.levels[0].index == 1
        assert len(chain.levels) <= 2


class TestStableIdeal:
    """J-descent and the stable ideal I'"""

    @pytest.mark.parametrize(
        "p, expected",
        [(2, ("x", "y^2", "z")), (3, ("x", "y^3", "z")), (5, ("x", "y", "z"))],
    )
    def test_e8(self, p, expected):
        ctx = PrimeContext(p, ("x", "y", "z"))
        stable = FedderService(ci(ctx, E8)).stable_ideal()
        assert same_ideal(buchberger(stable), buchberger(ideal(ctx, *expected)))

    def test_descent_starts_at_the_unit_ideal(self, ctx2):
        chain = FedderService(ci(ctx2, "x^3 + y^3 + z^3")).descent_J()
        assert chain.kind == ChainKind.J_DESCENT
        assert chain.levels[0].basis.is_unit_ideal
        assert chain.stabilized_at == 1

    def test_descent_matches_direct_trace(self, ctx2):
        service = FedderService(ci(ctx2, "x^3 + y^3 + z^3"))
        chain = service.descent_J()
        assert ideal_equal(chain.level(2).generators, service.trace_power_direct(2))

    def test_sigma_budget(self, ctx2):
        service = FedderService(ci(ctx2, E8, sigma_budget=1))
        with pytest.raises(SigmaBudgetExceeded):
            service.stable_ideal()


class TestFFinfty:
    """Quasi-(F,F^infty)-splitting from the I'-chain"""

    def test_e8_p2_is_ffinfty(self, ctx2):
        assert FedderService(ci(ctx2, E8)).is_qf_finfty().value is True

    def test_fermat_cubic_is_not(self, ctx2):
        decision = FedderService(ci(ctx2, "x^3 + y^3 + z^3")).is_qf_finfty()
        assert decision.value is False
        assert decision.witness is None

    def test_undecided_when_height_is_unknown(self, ctx2):
        service = FedderService(ci(ctx2, E8, max_height=1))
        assert service.is_qf_finfty().value is None

    def test_chain_has_height_levels(self, ctx2):
        decision = FedderService(ci(ctx2, E8)).is_qf_finfty()
        assert decision.chain.kind == ChainKind.IPRIME_CHAIN
        assert decision.chain.levels[-1].index == 4
        assert decision.witness is not None


class TestPrimeChainInclusion:
    """I'_n sits inside I_n"""

    @pytest.mark.parametrize("lift, levels", [("x^3 + y^3 + z^3", 2), (E8, 4)])
    def test_levels_are_contained(self, ctx2, lift, levels):
        service = FedderService(ci(ctx2, lift))
        chain = service.chain_I(levels)
        prime = service.chain_I_prime(service.stable_ideal(), levels)
        assert [lvl.index for lvl in prime.levels] == list(range(1, levels + 1))
        for lvl in prime.levels:
            if lvl.index <= chain.levels[-1].index:
                assert ideal_contains(chain.level(lvl.index).basis, lvl.generators)

    def test_reference_chain_is_reused(self, ctx2):
        service = FedderService(ci(ctx2, E8))
        chain = service.chain_I(2)
        prime = service.chain_I_prime(service.stable_ideal(), 2, chain)
        assert not prime.inconclusive

    def test_violation_is_reported(self, ctx2):
        service = FedderService(ci(ctx2, E8))
        small = ideal(ctx2, "x^4")
        bogus = IdealChain(ChainKind.I_CHAIN, (ChainLevel(1, small, buchberger(small)),))
        with pytest.raises(InvariantViolation) as exc:
            service.chain_I_prime(service.stable_ideal(), 1, bogus)
        assert exc.value.context == {"level": 1}

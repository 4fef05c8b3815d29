import pytest

from core.exceptions import ContextMismatchError, GroebnerBudgetExceeded
from apps.groebner.models import GroebnerLimits
from apps.groebner.services import (
    buchberger,
    ideal_contains,
    ideal_equal,
    ideal_member,
    normal_form,
    same_ideal,
)
from apps.polyarith.models import IdealGens, Poly, PrimeContext
from tests.conftest import P, ideal, random_homogeneous, sympy_groebner


class TestBuchberger:
    """Reduced Groebner bases over F_p"""

    def test_matches_sympy(self, ctx3):
        gens = ideal(ctx3, "x^2 - y", "x*y - 1")
        gb = buchberger(gens)
        assert set(gb.basis) == set(sympy_groebner(gens))

    def test_cyclic_three_matches_sympy(self, ctx5):
        gens = ideal(ctx5, "x + y + z", "x*y + y*z + z*x", "x*y*z - 1")
        assert set(buchberger(gens).basis) == set(sympy_groebner(gens))

    def test_basis_is_monic_and_sorted(self, ctx5):
        gb = buchberger(ideal(ctx5, "2*x^2 + y", "3*x*y + z^2"))
        for g in gb:
            assert g.coefficient(g.leading_monomial()) == 1
        leads = [g.leading_monomial() for g in gb]
        assert leads == sorted(leads, key=lambda m: (sum(m), tuple(-e for e in reversed(m))), reverse=True)

    def test_unit_ideal(self, ctx2):
        gb = buchberger(ideal(ctx2, "x", "x + 1"))
        assert gb.is_unit_ideal
        assert gb.basis == (Poly.constant(ctx2, 1),)

    def test_zero_ideal(self, ctx2):
        gb = buchberger(IdealGens(ctx2, ()))
        assert gb.is_zero_ideal

    def test_later_generator_divides_earlier_lead(self):
        ctx = PrimeContext(2, ("x", "y"))
        gb = buchberger(ideal(ctx, "x^2 + y", "x"))
        assert set(gb.basis) == {P(ctx, "x"), P(ctx, "y")}

    @pytest.mark.parametrize(
        "texts",
        [
            ("x^2 + y", "x"),
            ("x", "x^2 + y"),
            ("x^3 + y*z", "x^2", "x*y + z"),
            ("x*y + z", "x^2", "x^3 + y*z"),
            ("y^2 + x*z", "y", "y + x*z"),
        ],
    )
    def test_non_minimal_input_matches_sympy(self, ctx3, texts):
        gens = ideal(ctx3, *texts)
        assert set(buchberger(gens).basis) == set(sympy_groebner(gens))

    def test_generators_in_any_order(self, ctx3):
        a = buchberger(ideal(ctx3, "x^2 + y*z", "y^2 - x", "z^3"))
        b = buchberger(ideal(ctx3, "z^3", "y^2 - x", "x^2 + y*z"))
        assert same_ideal(a, b)


class TestBudgets:
    """Per-computation step and pair budgets"""

    def test_step_budget(self, ctx5):
        gens = ideal(ctx5, "x + y + z", "x*y + y*z + z*x", "x*y*z - 1")
        with pytest.raises(GroebnerBudgetExceeded):
            buchberger(gens, GroebnerLimits(step_budget=1))

    def test_pair_budget(self, ctx3):
        gens = ideal(ctx3, "x^2 - y", "x*y - 1")
        with pytest.raises(GroebnerBudgetExceeded) as exc:
            buchberger(gens, GroebnerLimits(pair_budget=1))
        assert exc.value.context["pairs"] == 2

    def test_stats_are_recorded(self, ctx3):
        gb = buchberger(ideal(ctx3, "x^2 - y", "x*y - 1"))
        assert gb.stats.pairs_processed >= 2
        assert gb.stats.reduction_steps > 0
        assert gb.stats.zero_reductions >= 1

    def test_coprime_leads_need_no_pairs(self, ctx5):
        gb = buchberger(ideal(ctx5, "x + y + z", "x*y + y*z + z*x", "x*y*z - 1"))
        assert gb.stats.pairs_processed == 0


class TestMembership:
    """Normal forms and ideal comparison"""

    def test_normal_form_of_member_is_zero(self, ctx3):
        gb = buchberger(ideal(ctx3, "x^2 - y", "x*y - 1"))
        f = P(ctx3, "(x^2 - y)*(z + 1) + (x*y - 1)*x^3")
        assert normal_form(f, gb).is_zero()
        assert ideal_member(f, gb)

    def test_non_member(self, ctx3):
        gb = buchberger(ideal(ctx3, "x^2", "y^2"))
        assert not ideal_member(P(ctx3, "x*y"), gb)
        assert normal_form(P(ctx3, "x^2*z + x*y"), gb) == P(ctx3, "x*y")

    def test_ideal_equal(self, ctx3, ctx2):
        assert ideal_equal(ideal(ctx3, "x + y", "x - y"), ideal(ctx3, "x", "y"))
        assert not ideal_equal(ideal(ctx2, "x + y", "x - y"), ideal(ctx2, "x", "y"))

    def test_ideal_equal_is_reflexive_and_symmetric(self, ctx3, rng):
        for _ in range(10):
            a = IdealGens(ctx3, tuple(random_homogeneous(rng, ctx3, rng.randint(1, 3)) for _ in range(2)))
            b = IdealGens(ctx3, tuple(random_homogeneous(rng, ctx3, rng.randint(1, 3)) for _ in range(2)))
            assert ideal_equal(a, a)
            assert ideal_equal(a, b) == ideal_equal(b, a)
        same = (ideal(ctx3, "x + y", "x - y"), ideal(ctx3, "y", "x"))
        assert ideal_equal(*same) and ideal_equal(*reversed(same))

    def test_ideal_contains(self, ctx2):
        big = buchberger(ideal(ctx2, "x", "y^2"))
        assert ideal_contains(big, ideal(ctx2, "x*z", "y^3 + x"))
        assert not ideal_contains(big, ideal(ctx2, "y"))

    def test_context_mismatch(self, ctx2, ctx3):
        gb = buchberger(ideal(ctx2, "x"))
        with pytest.raises(ContextMismatchError):
            normal_form(P(ctx3, "x"), gb)

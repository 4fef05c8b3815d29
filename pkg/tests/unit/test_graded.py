import pytest

from core.exceptions import ConfigError, ConsistencyFailure, InhomogeneousError
from apps.fedder.models import HeightKind, HeightResult
from apps.graded.models import GradedReport, Grading, Regime
from apps.graded.services import (
    a_invariant,
    check_homogeneous,
    graded_dispatch,
    grading_for,
    regime_for,
    weighted_degree,
)
from apps.polyarith.models import PrimeContext
from apps.thresholds.models import Assertions
from tests.conftest import P

ALL = Assertions(complete_intersection=True, normal=True, quasi_gorenstein=True, sfr_punctured=True)
FINITE = HeightResult(HeightKind.FINITE, value=2)
INFINITE = HeightResult(HeightKind.INFINITE)


class TestGrading:
    """Weighted degrees and the a-invariant"""

    def test_weighted_degree(self):
        assert weighted_degree((1, 2, 0), (10, 6, 15)) == 22

    def test_e8(self, ctx2):
        grading = grading_for([P(ctx2, "z^2 + x^3 + y^5")], (10, 6, 15))
        assert grading.degrees == (30,)
        assert a_invariant(grading) == -1

    def test_fermat_cubic(self, ctx2):
        assert a_invariant(grading_for([P(ctx2, "x^3 + y^3 + z^3")], (1, 1, 1))) == 0

    def test_two_cubics(self):
        ctx = PrimeContext(2, ("x", "y", "z", "xp", "yp", "zp"))
        polys = [P(ctx, "x^3 + y^3 + z^3"), P(ctx, "xp^3 + yp^3 + zp^3")]
        assert a_invariant(grading_for(polys, (1,) * 6)) == 0

    def test_inhomogeneous_names_both_monomials(self, ctx2):
        with pytest.raises(InhomogeneousError) as info:
            check_homogeneous(P(ctx2, "x^2 + y^3"), (1, 1, 1))
        assert info.value.context["monomials"] == ["y^3", "x^2"]

    def test_weight_count(self, ctx2):
        with pytest.raises(ConfigError):
            check_homogeneous(P(ctx2, "x"), (1, 1))

    def test_grading_needs_positive_weights(self):
        with pytest.raises(ConfigError):
            Grading((0, 1), (1,))

    @pytest.mark.parametrize("a, regime", [(3, Regime.POSITIVE), (0, Regime.CALABI_YAU), (-2, Regime.FANO)])
    def test_regime(self, a, regime):
        assert regime_for(a) == regime


class TestDispatch:
    """Conclusions per regime and their assertion dependencies"""

    def test_positive_with_finite_height_is_inconsistent(self):
        with pytest.raises(ConsistencyFailure):
            graded_dispatch(1, FINITE, ALL, 2)

    def test_positive_infinite(self):
        report = graded_dispatch(1, INFINITE, ALL, 2)
        assert "not quasi-F-split" in [c.statement for c in report.conclusions]

    def test_calabi_yau_threshold(self):
        report = graded_dispatch(0, FINITE, Assertions(complete_intersection=True), 2)
        statements = {c.statement: c for c in report.conclusions}
        assert "ppt(R; div(p)) = 1/3" in statements
        assert not statements["ht(R) = ht(R mod p)"].conditional

    def test_calabi_yau_without_assertion_is_conditional(self):
        report = graded_dispatch(0, FINITE, Assertions(), 2)
        cy = [c for c in report.conclusions if c.depends_on]
        assert cy and all(c.conditional for c in cy)

    def test_fano_finite(self):
        report = graded_dispatch(-1, FINITE, ALL, 2)
        bcm = [c for c in report.conclusions if c.statement == "perfectoid BCM-regular"]
        assert len(bcm) == 1
        assert not bcm[0].conditional
        assert set(bcm[0].depends_on) == {"normal", "quasi_gorenstein", "sfr_punctured"}

    def test_fano_finite_without_assertions(self):
        report = graded_dispatch(-1, FINITE, Assertions(complete_intersection=True), 3)
        bcm = [c for c in report.conclusions if c.statement == "perfectoid BCM-regular"]
        assert bcm[0].conditional

    def test_fano_infinite_p2(self):
        report = graded_dispatch(-1, INFINITE, ALL, 2)
        assert "NOT perfectoid BCM-regular" in [c.statement for c in report.conclusions]

    def test_fano_infinite_odd_p_says_nothing_more(self):
        report = graded_dispatch(-1, INFINITE, ALL, 3)
        assert [c.statement for c in report.conclusions] == ["ht(R) <= ht(R mod p)"]

    def test_report_checks_regime(self):
        with pytest.raises(ValueError):
            GradedReport(-1, Regime.CALABI_YAU)

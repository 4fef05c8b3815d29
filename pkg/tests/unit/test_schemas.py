import json

import pytest
from pydantic import ValidationError

from core.config import settings
from core.exceptions import ConfigError
from apps.jobs.presets import PRESETS, load_preset
from apps.jobs.schemas import JobConfig, OutputMode, Report
from apps.jobs.services import ResolvedLimits


def job(**overrides):
    data = {"p": 2, "variables": ["x", "y", "z"], "lifts": ["z^2 + x^3 + y^5"]}
    data.update(overrides)
    return data


class TestJobConfig:
    """Validation of job files"""

    def test_minimal_job(self):
        config = JobConfig.model_validate(job())
        assert config.output == OutputMode.TEXT
        assert not config.assertions.complete_intersection
        assert config.limits.max_height is None

    def test_from_json(self):
        text = json.dumps(job(weights=[10, 6, 15], assertions={"complete_intersection": True}, output="json"))
        config = JobConfig.model_validate_json(text)
        assert config.weights == [10, 6, 15]
        assert config.output == OutputMode.JSON

    @pytest.mark.parametrize("p", [1, 4, 101])
    def test_bad_prime(self, p):
        with pytest.raises(ValidationError):
            JobConfig.model_validate(job(p=p))

    @pytest.mark.parametrize("variables", [["x", "x", "z"], ["x", "2y", "z"], []])
    def test_bad_variables(self, variables):
        with pytest.raises(ValidationError):
            JobConfig.model_validate(job(variables=variables))

    def test_unparseable_lift(self):
        with pytest.raises(ValidationError) as info:
            JobConfig.model_validate(job(lifts=["2x + y"]))
        assert "lift 1" in str(info.value)

    def test_unknown_variable_in_lift(self):
        with pytest.raises(ValidationError):
            JobConfig.model_validate(job(lifts=["x + t"]))

    def test_weight_count(self):
        with pytest.raises(ValidationError):
            JobConfig.model_validate(job(weights=[1, 1]))

    def test_nonpositive_weights(self):
        with pytest.raises(ValidationError):
            JobConfig.model_validate(job(weights=[1, 0, 1]))

    def test_unknown_fields_are_rejected(self):
        with pytest.raises(ValidationError):
            JobConfig.model_validate(job(prime=2))
        with pytest.raises(ValidationError):
            JobConfig.model_validate(job(limits={"max_depth": 3}))

    def test_limits_range(self):
        with pytest.raises(ValidationError):
            JobConfig.model_validate(job(limits={"max_height": 0}))


class TestPresets:
    """Built-in jobs"""

    def test_every_preset_validates(self):
        for name in PRESETS:
            config = load_preset(name)
            assert config.name == name

    def test_unknown_preset(self):
        with pytest.raises(ConfigError):
            load_preset("e7-p2")

    def test_d_family_weights_are_homogeneous(self):
        config = load_preset("d-family-n5")
        assert config.weights == [8, 2, 9]


class TestReport:
    def test_json_round_trip(self):
        report = Report(tool_version="1.0.0", command="height", config=load_preset("e8-p2"), exit_code=0)
        assert Report.model_validate_json(report.model_dump_json()) == report


class TestResolvedLimits:
    """Settings < job limits < command-line flags"""

    def test_layering(self):
        config = JobConfig.model_validate(job(limits={"max_height": 5, "sigma_budget": 9}))
        limits = ResolvedLimits.resolve(config, {"max_height": 3, "sigma_budget": None})
        assert limits.max_height == 3
        assert limits.sigma_budget == 9
        assert limits.gb_step_budget == settings.gb_step_budget

    def test_defaults(self):
        limits = ResolvedLimits.resolve(JobConfig.model_validate(job()))
        assert (limits.max_height, limits.sigma_budget) == (settings.max_height, settings.sigma_budget)

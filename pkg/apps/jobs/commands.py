# commands for jobs app
"""
Command handlers behind the CLI. Each returns the Report it produced; the
CLI prints it and exits with report.exit_code.
"""
from __future__ import annotations

import logging
import sys
import time
from pathlib import Path
from typing import Dict, List, Optional

from pydantic import ValidationError

from core.config import settings
from core.exceptions import ConfigError
from apps.witt.selftest import run_selftest

from .presets import describe_presets, load_preset
from .schemas import JobConfig, OutputMode, Report
from .services import JobService, witt_selftest_report

logger = logging.getLogger(__name__)


def _validation_detail(exc: ValidationError) -> str:
    parts = []
    for error in exc.errors():
        where = ".".join(str(x) for x in error["loc"]) or "job"
        parts.append(f"{where}: {error['msg']}")
    return "; ".join(parts)


def load_job(path: Optional[str] = None, preset: Optional[str] = None) -> JobConfig:
    """Read a job from a JSON file ('-' for stdin) or a built-in preset"""
    if (path is None) == (preset is None):
        raise ConfigError("give exactly one of --input or --preset")
    if preset is not None:
        return load_preset(preset)
    try:
        text = sys.stdin.read() if path == "-" else Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise ConfigError(f"cannot read {path}: {exc.strerror}")
    try:
        return JobConfig.model_validate_json(text)
    except ValidationError as exc:
        raise ConfigError(_validation_detail(exc), {"path": path})


def cmd_height(config: JobConfig, overrides: Optional[Dict[str, Optional[int]]] = None) -> Report:
    logger.info(f"height: p={config.p}, {len(config.lifts)} lift(s) in {len(config.variables)} variables")
    return JobService(config, overrides).run_height()


def cmd_ppt(config: JobConfig, overrides: Optional[Dict[str, Optional[int]]] = None) -> Report:
    logger.info(f"ppt: p={config.p}, {len(config.lifts)} lift(s) in {len(config.variables)} variables")
    return JobService(config, overrides).run_ppt()


def cmd_chain_dump(
    config: JobConfig,
    levels: Optional[int] = None,
    overrides: Optional[Dict[str, Optional[int]]] = None,
) -> Report:
    return JobService(config, overrides).run_chain_dump(levels)


def cmd_witt_selftest(p: int, n: int, trials: Optional[int] = None, seed: int = 0) -> Report:
    trials = settings.witt_trials if trials is None else trials
    start = time.perf_counter()
    summary = run_selftest(p, n, trials=trials, seed=seed)
    timing = {"selftest": round(time.perf_counter() - start, 6)}
    logger.info(f"witt-selftest p={p} n={n}: {'ok' if summary.ok else f'{summary.failures} failures'}")
    return witt_selftest_report(summary, timing)


def cmd_presets() -> Dict[str, str]:
    return describe_presets()


# text rendering

def _section(title: str, lines: List[str]) -> List[str]:
    return [f"{title}:"] + [f"  {line}" for line in lines]


def render_text(report: Report) -> str:
    out: List[str] = [f"qfs {report.tool_version} {report.command}"]
    if report.config is not None:
        cfg = report.config
        out.append(f"job: {cfg.name or '-'}  p={cfg.p}  variables={','.join(cfg.variables)}")
        out.extend(_section("lifts", cfg.lifts))
    if report.assertions:
        out.append(f"assertions: {', '.join(report.assertions)}")
    if report.delta_term is not None:
        out.append(f"Delta_1(f^(p-1)) mod p: {report.delta_term}")
    if report.f_pure is not None:
        out.append(f"F-pure: {'yes' if report.f_pure else 'no'}")
    if report.height is not None:
        h = report.height
        if h.kind == "finite":
            lines = [f"ht = {h.value}", f"witness: {h.witness}", f"witness mod m^[p]: {h.witness_mod_frobenius}"]
        elif h.kind == "infinite":
            lines = ["ht = infinite", f"I_{h.certificate_index} = I_{h.certificate_index + 1} inside m^[p]"]
            lines += [f"basis: {g}" for g in h.certificate_basis or []]
        else:
            lines = [f"inconclusive: ht >= {h.at_least}", f"reason: {h.reason}"]
        out.extend(_section("height", lines))
    if report.stable_ideal is not None:
        out.extend(_section("stable ideal I'", report.stable_ideal.generators or ["0"]))
    if report.command == "ppt":
        shown = {True: "yes", False: "no", None: "undecided"}[report.ffinfty]
        out.append(f"quasi-(F,F^infty)-split: {shown}")
    if report.ppt is not None:
        ppt = report.ppt
        if ppt.kind == "exact":
            lines = [f"ppt = {ppt.value} ~ {ppt.decimal}"]
        elif ppt.kind == "interval":
            lines = [f"{ppt.lo} <= ppt <= {ppt.hi}"]
        elif ppt.kind == "upper_bound_only":
            lines = [f"ppt <= {ppt.hi} ~ {ppt.decimal}"]
        else:
            lines = ["ppt unknown"]
        lines.append(f"justification: {ppt.justification}")
        lines += ppt.notes
        out.extend(_section("perfectoid pure threshold", lines))
    if report.graded is not None:
        g = report.graded
        lines = [f"a = {g.a_invariant} ({g.regime})"]
        for c in g.conclusions:
            flag = f" [conditional on {', '.join(c.depends_on)}]" if c.conditional else ""
            lines.append(f"{c.statement}: {c.basis}{flag}")
        out.extend(_section("graded", lines))
    for chain in report.chains:
        lines = []
        for level in chain.levels:
            lines.append(f"level {level.index}: {len(level.generators)} generators")
            lines += [f"  {g}" for g in (level.basis if level.basis is not None else level.generators)]
        if chain.stabilized_at is not None:
            lines.append(f"stabilized at {chain.stabilized_at}")
        if chain.inconclusive:
            lines.append(f"stopped: {chain.reason}")
        out.extend(_section(chain.kind, lines))
    if report.witt_selftest is not None:
        w = report.witt_selftest
        lines = [f"p={w.p} n={w.n} trials={w.trials} seed={w.seed}"]
        for prop in w.properties:
            status = "ok" if prop.failed == 0 else f"FAILED {prop.failed}: {prop.first_failure}"
            lines.append(f"{prop.name}: {prop.passed} passed, {status}")
        out.extend(_section("witt selftest", lines))
    return "\n".join(out)


def format_report(report: Report, mode: OutputMode) -> str:
    if mode == OutputMode.JSON:
        return report.model_dump_json(indent=2)
    return render_text(report)

"""Built-in jobs replaying the worked examples"""
from typing import Dict, List, Optional

from core.exceptions import ConfigError

from .schemas import JobConfig

_ALL_ASSERTIONS = {
    "complete_intersection": True,
    "normal": True,
    "quasi_gorenstein": True,
    "sfr_punctured": True,
}
_CI = {"complete_intersection": True}


def _e8(p: int) -> dict:
    return {
        "description": f"z^2+x^3+y^5 at p={p} (E8 singularity)",
        "config": {
            "p": p,
            "variables": ["x", "y", "z"],
            "lifts": ["z^2 + x^3 + y^5"],
            "weights": [10, 6, 15],
            "assertions": _ALL_ASSERTIONS,
        },
    }


def _d_family(n: int) -> dict:
    return {
        "description": f"z^2+x^2y+xy^{n} at p=2",
        "config": {
            "p": 2,
            "variables": ["x", "y", "z"],
            "lifts": [f"z^2 + x^2*y + x*y^{n}"],
            "weights": [2 * n - 2, 2, 2 * n - 1],
            "assertions": _ALL_ASSERTIONS,
        },
    }


PRESETS: Dict[str, dict] = {
    "fermat-cubic": {
        "description": "x^3+y^3+z^3 at p=2 (Calabi-Yau cone, not quasi-(F,F^infty)-split)",
        "config": {
            "p": 2,
            "variables": ["x", "y", "z"],
            "lifts": ["x^3 + y^3 + z^3"],
            "weights": [1, 1, 1],
            "assertions": _CI,
        },
    },
    "e8-p2": _e8(2),
    "e8-p3": _e8(3),
    "e8-p5": _e8(5),
    "quartic-plain": {
        "description": "w^2+xyz(x+y+z) at p=2",
        "config": {
            "p": 2,
            "variables": ["x", "y", "z", "w"],
            "lifts": ["w^2 + x*y*z*(x + y + z)"],
            "weights": [1, 1, 1, 2],
            "assertions": _ALL_ASSERTIONS,
        },
    },
    "quartic-twisted": {
        "description": "w^2+xyz(x+y+z)+2(xy+xz+yz)w at p=2 (same reduction, different lift)",
        "config": {
            "p": 2,
            "variables": ["x", "y", "z", "w"],
            "lifts": ["w^2 + x*y*z*(x + y + z) + 2*(x*y + x*z + y*z)*w"],
            "weights": [1, 1, 1, 2],
            "assertions": _ALL_ASSERTIONS,
        },
    },
    **{f"d-family-n{n}": _d_family(n) for n in (2, 3, 4, 5, 8, 9)},
    "double-fermat-cubic": {
        "description": "two Fermat cubics in six variables at p=2 (not quasi-F-split)",
        "config": {
            "p": 2,
            "variables": ["x", "y", "z", "xp", "yp", "zp"],
            "lifts": ["x^3 + y^3 + z^3", "xp^3 + yp^3 + zp^3"],
            "weights": [1, 1, 1, 1, 1, 1],
            "assertions": _CI,
        },
    },
}


def preset_names() -> List[str]:
    return list(PRESETS)


def describe_presets() -> Dict[str, str]:
    return {name: data["description"] for name, data in PRESETS.items()}


def load_preset(name: str, output: Optional[str] = None) -> JobConfig:
    try:
        data = PRESETS[name]
    except KeyError:
        raise ConfigError(f"unknown preset '{name}'; available: {', '.join(PRESETS)}")
    config = dict(data["config"], name=name)
    if output:
        config["output"] = output
    return JobConfig.model_validate(config)

"""Growth rates and flow experiments for unipotent flows."""

import json

from ._uniflow import (
    KAK,
    UniflowError,
    coefficient_bounds_constant,
    growth_rate,
    kak,
    lattice_count,
    psi,
    reduce,
    sl_d_single_block_gr,
)
from . import _uniflow

__all__ = [
    "KAK",
    "UniflowError",
    "classify",
    "coefficient_bounds_constant",
    "cusp_kappa",
    "growth_rate",
    "kak",
    "lattice_count",
    "psi",
    "reduce",
    "run",
    "sl_d_single_block_gr",
]


def classify(spec):
    """Classify the element of an algebra spec, e.g. {"builtin": "sl3"} or "sl3"."""
    if isinstance(spec, str):
        spec = {"builtin": spec}
    return json.loads(_uniflow.classify_json(json.dumps(spec)))


def run(command, **config):
    """Run a CLI command in-process. Returns (exit_code, report dict, error text)."""
    code, report, error = _uniflow.run_json(command, json.dumps(config))
    return code, json.loads(report), error


def cusp_kappa(samples=100000, seed=7):
    return _uniflow.cusp_kappa(samples, seed)

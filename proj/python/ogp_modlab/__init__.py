"""Modularity landscapes, overlap gaps and Markov chain dynamics on the stochastic block model."""

import json as _json

from ._core import *  # noqa: F401,F403
from ._core import OgpError, __version__
from ._core import run_experiment as _run_experiment


def run(config):
    """Run an experiment from a config dict; returns (exit_code, artifacts, summary)."""
    code, artifacts, summary, _log = _run_experiment(_json.dumps(config))
    return code, artifacts, _json.loads(summary)


__all__ = ["OgpError", "__version__", "run"]

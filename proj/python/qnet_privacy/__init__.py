# Copyright 2026 The qnet-privacy Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

"""Privacy analysis for quantum sensor networks.

Thin Python layer over the C++ core: probe states, Fisher information
matrices, privacy certification of linear-function encodings, local noise
channels, and the GHZ mean-estimation protocol.
"""

import json as _json

from ._core import (
    __version__,
    apply_channel,
    cfim_x_basis,
    derivative_norm_check,
    epsilon_privacy,
    evolve,
    fidelity,
    ghz_state,
    qfim,
    rank_one_check,
    reparam_completion,
    run_experiment,
    run_scenario_json,
    sample_counts,
    sigma_z_half,
)

__all__ = [
    "__version__",
    "apply_channel",
    "cfim_x_basis",
    "derivative_norm_check",
    "epsilon_privacy",
    "evolve",
    "fidelity",
    "ghz_state",
    "qfim",
    "rank_one_check",
    "reparam_completion",
    "run_experiment",
    "run_scenario",
    "run_scenario_json",
    "sample_counts",
    "sigma_z_half",
]


def run_scenario(scenario):
    """Runs a scenario given as a dict (or JSON text) and returns the report
    as a dict. For certify tasks the report's results carry ``all_passed``.
    """
    text = scenario if isinstance(scenario, str) else _json.dumps(scenario)
    report, _ok = run_scenario_json(text)
    return _json.loads(report)

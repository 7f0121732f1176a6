#
# Copyright 2026 The condtest Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#      http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.
#

"""Support-size estimation with a conditional-sampling oracle.

The heavy lifting happens in the native ``_condtest`` module; this package
decodes its JSON results into plain dicts.
"""

import json
import math

from . import _condtest

__all__ = ["derive_seed", "estimate", "gen_instance", "check", "check_names"]

derive_seed = _condtest.derive_seed
check_names = _condtest.check_names


def estimate(n_values, supports, trials, eps=0.3, tau=1.0, seed=1, threads=1, nonadaptive=False):
    """Run estimator trials over the (n, support) grid.

    Returns a dict with ``config``, per-grid-point ``summary`` rows and per-trial ``trials``
    records. Results depend only on the seed, never on ``threads``.
    """
    text = _condtest.run_estimate(list(n_values), list(supports), trials, eps, tau, seed, threads,
                                  nonadaptive)
    return json.loads(text)


def gen_instance(family, n, kind="no", seed=1, gamma=math.sqrt(2.0), rho=None):
    """Seeded lower-bound instance ('equivalence' or 'support-pair') as a dict."""
    return json.loads(_condtest.gen_instance(family, n, kind, seed, gamma, rho))


def check(name, seed=20260101, count=None):
    """Run one checker suite; ``count`` overrides the number of cases."""
    return json.loads(_condtest.run_check(name, seed, count))

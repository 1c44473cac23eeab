# Copyright 2026 The mvdlib Authors
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

"""Repair noisy distance data into metrics and ultrametrics."""

from mvdlib._mvdlib import (
    Error,
    agreement_cluster,
    exact_mvd,
    exact_umvd,
    format_instance,
    gen_hypercube,
    gen_planted_cc,
    gen_random_metric_noise,
    gen_random_ultra_noise,
    gen_star,
    hypercube_base,
    is_metric,
    is_ultrametric,
    l0_cost,
    metric_violations,
    mvd_pivot,
    parse_instance,
    ultrametric_violations,
    umvd_constant,
    umvd_lp,
    umvd_pivot,
)

__all__ = [
    "Error",
    "agreement_cluster",
    "exact_mvd",
    "exact_umvd",
    "format_instance",
    "gen_hypercube",
    "gen_planted_cc",
    "gen_random_metric_noise",
    "gen_random_ultra_noise",
    "gen_star",
    "hypercube_base",
    "is_metric",
    "is_ultrametric",
    "l0_cost",
    "metric_violations",
    "mvd_pivot",
    "parse_instance",
    "ultrametric_violations",
    "umvd_constant",
    "umvd_lp",
    "umvd_pivot",
]

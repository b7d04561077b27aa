# Copyright 2026 The wlra Authors. All Rights Reserved.
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
"""Weighted low-rank approximation for instances with few distinct patterns."""

from ._wlra import (
    GenerationFailure,
    InvalidInput,
    PatternIndex,
    StructuredInstance,
    build_instance,
    cost_dense,
    cost_grouped,
    detect_groups,
    gaussian_sketch,
    generate,
    generate_attention_mask,
    iteration_budget,
    lower_bound_log2,
    min_norm_solve,
    refine,
    sketch_dim,
    solve,
    upper_bound,
)

__all__ = [
    "GenerationFailure",
    "InvalidInput",
    "PatternIndex",
    "StructuredInstance",
    "build_instance",
    "cost_dense",
    "cost_grouped",
    "detect_groups",
    "gaussian_sketch",
    "generate",
    "generate_attention_mask",
    "iteration_budget",
    "lower_bound_log2",
    "min_norm_solve",
    "refine",
    "sketch_dim",
    "solve",
    "upper_bound",
]

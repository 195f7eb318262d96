# Copyright 2026 The balfi-lab Authors. All Rights Reserved.
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

"""Python bindings for the balfi-lab core."""

from ._core import (
    Balfi,
    BalfiError,
    Formula,
    check_balfi,
    check_script,
    enumerate,
    example,
    example_names,
    find_countermodel,
    frame_condition,
    frame_valid,
    library_scripts,
    parse,
    translate,
)

__all__ = [
    "Balfi",
    "BalfiError",
    "Formula",
    "check_balfi",
    "check_script",
    "enumerate",
    "example",
    "example_names",
    "find_countermodel",
    "frame_condition",
    "frame_valid",
    "library_scripts",
    "parse",
    "translate",
]

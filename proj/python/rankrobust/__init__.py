#
# Copyright 2026 The rankrobust Authors
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

"""Python bindings for the rankrobust retrieval robustness toolkit.

Example:

    import rankrobust as rr

    index = rr.Index.build([("d1", "the quick brown fox"), ("d2", "lazy dog")])
    hits = index.search("quick fox", model="bm25", k1=1.2, b=0.75)
    ap = rr.evaluate({"q1": [d for d, _ in hits]}, {"q1": {"d1": 1}}, "map")
"""

from rankrobust._rankrobust import (
    DataError,
    Error,
    Index,
    UnattackableError,
    UsageError,
    attack,
    drop_rate,
    evaluate,
    gmap,
    kendall_tau,
    paired_significance,
    pct_no,
    tokenize,
    vnap,
)

__all__ = [
    "DataError",
    "Error",
    "Index",
    "UnattackableError",
    "UsageError",
    "attack",
    "drop_rate",
    "evaluate",
    "gmap",
    "kendall_tau",
    "paired_significance",
    "pct_no",
    "tokenize",
    "vnap",
]

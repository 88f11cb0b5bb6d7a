// Copyright 2026 The qdarwin Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstddef>
#include <functional>

namespace qdarwin {

/// Number of workers to use for a request of `requested` (≤ 0 means all cores).
int resolve_workers(int requested);

/// Calls body(i) for i in [0, count) on up to `workers` threads. Each index is
/// run exactly once; callers write results into slot i, so output order never
/// depends on scheduling. The first exception thrown by a body is rethrown.
void parallel_for(std::size_t count, int workers, const std::function<void(std::size_t)>& body);

}  // namespace qdarwin

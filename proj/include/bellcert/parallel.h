// Copyright 2026 The bellcert Authors
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

#ifndef BELLCERT_PARALLEL_H_
#define BELLCERT_PARALLEL_H_

#include <cstddef>
#include <functional>

namespace bellcert {

/// Worker count: BELLCERT_THREADS if set to a positive integer, otherwise the
/// hardware concurrency (at least 1).
int thread_count();

/// Runs `body(chunk)` for chunk = 0..num_chunks-1 across worker threads.
/// Callers write into per-chunk slots and merge in chunk order, which keeps
/// results independent of the thread count. The first exception thrown by
/// any chunk is rethrown after all workers finish.
void parallel_chunks(std::size_t num_chunks, const std::function<void(std::size_t)>& body);

}  // namespace bellcert

#endif  // BELLCERT_PARALLEL_H_

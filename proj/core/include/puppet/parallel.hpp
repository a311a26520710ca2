// Copyright 2026 The Puppet Authors
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

#ifndef PUPPET_PARALLEL_HPP_
#define PUPPET_PARALLEL_HPP_

#include <cstddef>
#include <functional>

namespace puppet {

// Invokes fn(begin, end) over contiguous slices of [0, n), partitioned
// across `workers` threads (inline when workers <= 1 or n is small). Every
// index is processed exactly once; slices never overlap, so per-index
// writes give results independent of the worker count.
void parallel_for(std::size_t n, int workers,
                  const std::function<void(std::size_t, std::size_t)>& fn);

// Hardware concurrency clamped to [1, 64].
int default_worker_count();

}  // namespace puppet

#endif  // PUPPET_PARALLEL_HPP_

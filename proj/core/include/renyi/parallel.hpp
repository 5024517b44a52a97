// Copyright 2026 The renyi-sc Authors
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

#ifndef RENYI_PARALLEL_HPP
#define RENYI_PARALLEL_HPP

#include <functional>

namespace renyi {

// Thread count from RENYI_THREADS, else 1.
int default_threads();
// Runs body(i) for i in [0, n) on up to `threads` workers. Exceptions are rethrown.
void parallel_for(int n, int threads, const std::function<void(int)>& body);

}  // namespace renyi

#endif  // RENYI_PARALLEL_HPP

// Copyright 2026 The salvq Authors. All Rights Reserved.
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

#include "salvq/parallel.h"

#include <omp.h>

#include <exception>
#include <mutex>

namespace salvq {

int EffectiveJobs(const ExecOptions& exec) {
  return exec.jobs > 0 ? exec.jobs : omp_get_max_threads();
}

void ParallelFor(int n, const ExecOptions& exec, const std::function<void(int)>& fn) {
  const int jobs = EffectiveJobs(exec);
  if (jobs <= 1 || n <= 1) {
    for (int i = 0; i < n; ++i) fn(i);
    return;
  }
  std::exception_ptr first_error;
  std::mutex error_mu;
#pragma omp parallel for num_threads(jobs) schedule(dynamic, 1)
  for (int i = 0; i < n; ++i) {
    try {
      fn(i);
    } catch (...) {
      std::lock_guard<std::mutex> lock(error_mu);
      if (!first_error) first_error = std::current_exception();
    }
  }
  if (first_error) std::rethrow_exception(first_error);
}

}  // namespace salvq

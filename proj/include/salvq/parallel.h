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

#ifndef SALVQ_PARALLEL_H_
#define SALVQ_PARALLEL_H_

#include <functional>

namespace salvq {

// Execution settings shared by every scoring entry point. jobs <= 0 means
// "use the OpenMP default" (machine parallelism); jobs == 1 runs the serial
// path. Results never depend on the value of jobs.
struct ExecOptions {
  int jobs = 0;
};

int EffectiveJobs(const ExecOptions& exec);

// Runs fn(i) for i in [0, n). Work items must write disjoint outputs. The
// first exception thrown by any item is rethrown on the calling thread.
void ParallelFor(int n, const ExecOptions& exec, const std::function<void(int)>& fn);

}  // namespace salvq

#endif  // SALVQ_PARALLEL_H_

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

#ifndef SALVQ_ERROR_H_
#define SALVQ_ERROR_H_

#include <stdexcept>
#include <string>

namespace salvq {

enum class ErrorCode {
  kIo,
  kDescriptorMismatch,
  kEmptySequence,
  kMapShape,
  kMapSeriesGap,
  kRange,
  kKernelTooLarge,
  kParam,
  kTooSmall,
  kDimensionMismatch,
  kSequenceLength,
  kNumeric,
  kDegenerateSaliency,
  kPyramidMismatch,
  kDisparityRequired,
  kNeedsTemporalContext,
  kNoEdges,
  kUndefinedCorrelation,
  kEmptyReport,
  kUnknownMetric,
};

const char* ErrorCodeName(ErrorCode code);

// All failures raised by the library carry one of the codes above so callers
// (the CLI in particular) can map them to exit codes and messages.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message);

  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace salvq

#endif  // SALVQ_ERROR_H_

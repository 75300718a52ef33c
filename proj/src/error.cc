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

#include "salvq/error.h"

namespace salvq {

const char* ErrorCodeName(ErrorCode code) {
  switch (code) {
    case ErrorCode::kIo: return "IoError";
    case ErrorCode::kDescriptorMismatch: return "DescriptorMismatch";
    case ErrorCode::kEmptySequence: return "EmptySequence";
    case ErrorCode::kMapShape: return "MapShapeError";
    case ErrorCode::kMapSeriesGap: return "MapSeriesGap";
    case ErrorCode::kRange: return "RangeError";
    case ErrorCode::kKernelTooLarge: return "KernelTooLarge";
    case ErrorCode::kParam: return "ParamError";
    case ErrorCode::kTooSmall: return "TooSmall";
    case ErrorCode::kDimensionMismatch: return "DimensionMismatch";
    case ErrorCode::kSequenceLength: return "SequenceLengthError";
    case ErrorCode::kNumeric: return "NumericError";
    case ErrorCode::kDegenerateSaliency: return "DegenerateSaliency";
    case ErrorCode::kPyramidMismatch: return "PyramidMismatch";
    case ErrorCode::kDisparityRequired: return "DisparityRequired";
    case ErrorCode::kNeedsTemporalContext: return "NeedsTemporalContext";
    case ErrorCode::kNoEdges: return "NoEdges";
    case ErrorCode::kUndefinedCorrelation: return "UndefinedCorrelation";
    case ErrorCode::kEmptyReport: return "EmptyReport";
    case ErrorCode::kUnknownMetric: return "UnknownMetric";
  }
  return "Unknown";
}

Error::Error(ErrorCode code, const std::string& message)
    : std::runtime_error(std::string(ErrorCodeName(code)) + ": " + message),
      code_(code) {}

}  // namespace salvq

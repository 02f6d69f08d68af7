// Copyright 2026 The MGE Authors.
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

#include "mge/error.hpp"

namespace mge {

const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidArgument: return "invalid-argument";
    case ErrorCode::kDegenerateInput: return "degenerate-input";
    case ErrorCode::kIncidence: return "incidence";
    case ErrorCode::kPole: return "pole";
    case ErrorCode::kParse: return "parse";
    case ErrorCode::kSchema: return "schema";
    case ErrorCode::kMultipleEdge: return "multiple-edge";
    case ErrorCode::kValidation: return "validation";
    case ErrorCode::kToleranceNotMet: return "tolerance-not-met";
    case ErrorCode::kDomain: return "domain";
    case ErrorCode::kBarrier: return "barrier";
    case ErrorCode::kIo: return "io";
  }
  return "unknown";
}

}  // namespace mge

/*
 * Copyright 2026 The mst Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include "mst/error.hpp"

namespace mst {

const char* to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::kInvalidParameter: return "invalid parameter";
    case ErrorKind::kDuplicateKey: return "duplicate key";
    case ErrorKind::kEmptyTree: return "empty tree";
    case ErrorKind::kOutOfRange: return "out of range";
    case ErrorKind::kTenabilityViolation: return "tenability violation";
    case ErrorKind::kInconsistentProfile: return "inconsistent profile";
    case ErrorKind::kNumericFailure: return "numeric failure";
    case ErrorKind::kKeyOverflow: return "key overflow";
    case ErrorKind::kBadMagic: return "bad magic";
    case ErrorKind::kBadVersion: return "bad version";
    case ErrorKind::kTruncated: return "truncated image";
    case ErrorKind::kDanglingOffset: return "dangling offset";
    case ErrorKind::kInvalidType: return "invalid node type";
    case ErrorKind::kCorruptImage: return "corrupt image";
  }
  return "unknown";
}

}  // namespace mst

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

#ifndef MST_ERROR_HPP
#define MST_ERROR_HPP

#include <stdexcept>
#include <string>

namespace mst {

enum class ErrorKind {
  kInvalidParameter,
  kDuplicateKey,
  kEmptyTree,
  kOutOfRange,
  kTenabilityViolation,
  kInconsistentProfile,
  kNumericFailure,
  kKeyOverflow,
  // compact image parse errors
  kBadMagic,
  kBadVersion,
  kTruncated,
  kDanglingOffset,
  kInvalidType,
  kCorruptImage,
};

const char* to_string(ErrorKind kind) noexcept;

/// Every failure raised by the library carries a kind so callers (the CLI in
/// particular) can branch on it without parsing messages.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

  /// True for the errors produced while reading a compact image.
  bool is_parse_error() const noexcept {
    return kind_ >= ErrorKind::kBadMagic;
  }

 private:
  ErrorKind kind_;
};

}  // namespace mst

#endif  // MST_ERROR_HPP

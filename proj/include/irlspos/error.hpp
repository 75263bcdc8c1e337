// SPDX-FileCopyrightText: Copyright (c) 2026 The irlspos authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace irlspos {

/// Broad failure classes. The C API maps each one onto a distinct status code.
enum class ErrorCategory {
  kInvalidArgument,
  kConfiguration,
  kUnderDetermined,
  kGeometry,
  kDegenerateInput,
  kIo,
};

std::string_view to_string(ErrorCategory category) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorCategory category, const std::string& message)
      : std::runtime_error(message), category_(category) {}

  ErrorCategory category() const noexcept { return category_; }

 private:
  ErrorCategory category_;
};

}  // namespace irlspos

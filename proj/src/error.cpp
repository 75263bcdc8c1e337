// SPDX-FileCopyrightText: Copyright (c) 2026 The irlspos authors
// SPDX-License-Identifier: Apache-2.0

#include "irlspos/error.hpp"

namespace irlspos {

std::string_view to_string(ErrorCategory category) noexcept {
  switch (category) {
    case ErrorCategory::kInvalidArgument: return "invalid argument";
    case ErrorCategory::kConfiguration: return "configuration error";
    case ErrorCategory::kUnderDetermined: return "under-determined geometry";
    case ErrorCategory::kGeometry: return "geometry error";
    case ErrorCategory::kDegenerateInput: return "degenerate input";
    case ErrorCategory::kIo: return "i/o error";
  }
  return "unknown error";
}

}  // namespace irlspos

// Copyright 2026 The Cellgauge Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <string>
#include <string_view>

namespace cellgauge {

// Stable machine codes carried by report warnings.
inline constexpr std::string_view kFormulaError = "W001";
inline constexpr std::string_view kDanglingReference = "W002";
inline constexpr std::string_view kEmptyReferencedCell = "W003";
inline constexpr std::string_view kCycleDetected = "W004";
inline constexpr std::string_view kRangeLinkageViolation = "W005";
inline constexpr std::string_view kCrossSheetDispersionExcluded = "W006";

struct Warning {
  std::string code;
  std::string address;
  std::string message;

  bool operator==(const Warning&) const = default;
  auto operator<=>(const Warning&) const = default;
};

}  // namespace cellgauge

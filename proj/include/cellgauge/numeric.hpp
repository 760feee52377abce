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

#include <boost/multiprecision/cpp_int.hpp>

namespace cellgauge {

/// Path counts grow exponentially with fan-in, so they are unbounded.
using BigCount = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

/// "p/q" or "p" when the denominator is one.
std::string to_string(const Rational& value);
std::string to_string(const BigCount& value);

/// Parses the output of to_string(Rational). Throws FormatError.
Rational parse_rational(const std::string& text);

double to_double(const Rational& value);

}  // namespace cellgauge

// Copyright 2026 The nlshare Authors
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

#ifndef NLSHARE_ANGLE_HPP
#define NLSHARE_ANGLE_HPP

#include <string_view>

namespace nlshare {

// Parses a real-valued expression such as "0.3", "pi/6", "pi/4-0.01" or
// "2*pi/3". Grammar: sums and differences of products/quotients of numbers
// and the constant `pi`, with optional unary minus and parentheses.
// Throws ConfigError on malformed input.
double parse_angle(std::string_view text);

}  // namespace nlshare

#endif  // NLSHARE_ANGLE_HPP

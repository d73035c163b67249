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

#include "nlshare/angle.hpp"

#include <cmath>

#include "doctest.h"
#include "nlshare/core_model.hpp"
#include "nlshare/errors.hpp"

using nlshare::kPi;
using nlshare::parse_angle;

TEST_CASE("plain numbers") {
  CHECK(parse_angle("0.3") == 0.3);
  CHECK(parse_angle("1e-10") == 1e-10);
  CHECK(parse_angle("  2.5 ") == 2.5);
  CHECK(parse_angle("-0.25") == -0.25);
}

TEST_CASE("pi expressions") {
  CHECK(parse_angle("pi") == kPi);
  CHECK(parse_angle("pi/6") == kPi / 6);
  CHECK(parse_angle("pi/4-0.01") == kPi / 4 - 0.01);
  CHECK(parse_angle("2*pi/3") == 2 * kPi / 3);
  CHECK(parse_angle("pi/4*1e-7") == kPi / 4 * 1e-7);
  CHECK(parse_angle("(pi/2 - 0.1)/2") == (kPi / 2 - 0.1) / 2);
  CHECK(parse_angle("-pi/8") == -kPi / 8);
}

TEST_CASE("malformed input") {
  for (const char* bad : {"", "pi/", "sqrt(2)", "1..2", "(pi", "pi pi", "2x"}) {
    CAPTURE(bad);
    CHECK_THROWS_AS(parse_angle(bad), nlshare::ConfigError);
  }
}

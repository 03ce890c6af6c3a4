// Copyright 2026 The mfista Authors. All Rights Reserved.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <doctest.h>

#include "support.hpp"

namespace mfista::testing {

void for_all(std::size_t cases, std::uint64_t base_seed,
             const std::function<void(Gen&)>& body) {
  for (std::size_t i = 0; i < cases; ++i) {
    const std::uint64_t seed = base_seed * 1000003u + i;
    INFO("property case seed = " << seed);
    Gen g(seed);
    body(g);
  }
}

}  // namespace mfista::testing

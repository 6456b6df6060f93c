// Copyright 2026 The qfqs Authors
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

// Runs every acceptance criterion at its reference size and tolerance.

#include <iostream>

#include "qfqs/checks.hpp"

int main() {
  bool ok = true;
  for (const auto &result : qfqs::run_checks(qfqs::CheckScale::full())) {
    std::cout << qfqs::format_check(result) << std::endl;
    ok = ok && result.passed;
  }
  return ok ? 0 : 1;
}

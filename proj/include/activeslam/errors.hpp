// Copyright 2026 The activeslam Authors
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

#ifndef ACTIVESLAM_ERRORS_HPP_
#define ACTIVESLAM_ERRORS_HPP_

#include <stdexcept>
#include <string>
#include <utility>

namespace activeslam {

/// Raised when a numerical invariant breaks (loss of definiteness, singular
/// solve). Carries the module that detected it and, when known, the step.
class NumericError : public std::runtime_error {
 public:
  NumericError(std::string module, std::string what, int step = -1)
      : std::runtime_error(format(module, what, step)),
        module_(std::move(module)),
        detail_(std::move(what)),
        step_(step) {}

  const std::string& module() const { return module_; }
  const std::string& detail() const { return detail_; }
  int step() const { return step_; }

  /// Same error re-tagged with an outer step index and module path.
  NumericError with_context(const std::string& outer_module, int step) const {
    return NumericError(outer_module + "/" + module_, detail_, step);
  }

 private:
  static std::string format(const std::string& module, const std::string& what,
                            int step) {
    std::string s = "[" + module + "]";
    if (step >= 0) s += " step " + std::to_string(step);
    return s + ": " + what;
  }

  std::string module_;
  std::string detail_;
  int step_;
};

}  // namespace activeslam

#endif  // ACTIVESLAM_ERRORS_HPP_

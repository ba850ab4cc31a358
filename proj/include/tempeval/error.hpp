// Copyright 2026 The tempeval Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef TEMPEVAL_ERROR_HPP_
#define TEMPEVAL_ERROR_HPP_

#include <stdexcept>
#include <string>
#include <vector>

namespace tempeval {

enum class ErrorKind {
  kInvalid,    // a type invariant or precondition was violated
  kParse,      // malformed input text
  kIo,         // file could not be opened or written
  kUsage,      // inconsistent request (flag conflicts, unknown labels)
  kUndefined,  // the requested quantity is mathematically undefined
};

const char* ErrorKindName(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}

  ErrorKind kind() const { return kind_; }

 private:
  ErrorKind kind_;
};

enum class Severity { kWarning, kError };

// A non-fatal finding produced while parsing, validating or computing.
struct Diagnostic {
  Severity severity = Severity::kWarning;
  std::string location;
  std::string message;

  bool operator==(const Diagnostic&) const = default;
};

using Diagnostics = std::vector<Diagnostic>;

inline void Warn(Diagnostics* sink, std::string location, std::string message) {
  if (sink != nullptr) {
    sink->push_back({Severity::kWarning, std::move(location), std::move(message)});
  }
}

std::string FormatDiagnostic(const Diagnostic& d);

}  // namespace tempeval

#endif  // TEMPEVAL_ERROR_HPP_

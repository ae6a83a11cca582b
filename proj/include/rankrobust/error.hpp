//
// Copyright 2026 The rankrobust Authors
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
//

#ifndef RANKROBUST_ERROR_HPP_
#define RANKROBUST_ERROR_HPP_

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>

namespace rankrobust {

// Base class for every fault raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Bad input data: malformed files, duplicate ids, undefined metrics.
// Carries an optional source name and 1-based line number.
class DataError : public Error {
 public:
  explicit DataError(const std::string& message)
      : Error(message) {}
  DataError(const std::string& message, std::string source,
            std::optional<std::size_t> line)
      : Error(Format(message, source, line)),
        source_(std::move(source)),
        line_(line) {}

  const std::string& source() const { return source_; }
  std::optional<std::size_t> line() const { return line_; }

 private:
  static std::string Format(const std::string& message,
                            const std::string& source,
                            std::optional<std::size_t> line) {
    std::string out = source.empty() ? std::string("<input>") : source;
    if (line) out += ":" + std::to_string(*line);
    return out + ": " + message;
  }

  std::string source_;
  std::optional<std::size_t> line_;
};

// Invalid arguments or configuration supplied by the caller.
class UsageError : public Error {
 public:
  using Error::Error;
};

// A query that offers no eligible position for the requested perturbation.
class UnattackableError : public Error {
 public:
  using Error::Error;
};

}  // namespace rankrobust

#endif  // RANKROBUST_ERROR_HPP_

// Copyright 2026 The DISC Toolkit Authors
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

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>

namespace disc {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Table loading failures: missing files, malformed rows, bad codes.
class LoadError : public Error {
 public:
  using Error::Error;
};

/// A caller broke a documented precondition (empty pinyin, bad costs).
class ContractError : public Error {
 public:
  using Error::Error;
};

/// Out-of-range similarity parameters.
class ParameterError : public Error {
 public:
  using Error::Error;
};

/// Rejected distribution input. Carries the location when known.
class IngestError : public Error {
 public:
  IngestError(const std::string& what, std::size_t line = 0,
              std::string sentence_id = {},
              std::optional<std::size_t> position = std::nullopt)
      : Error(what),
        line_(line),
        sentence_id_(std::move(sentence_id)),
        position_(position) {}

  std::size_t line() const { return line_; }
  const std::string& sentence_id() const { return sentence_id_; }
  std::optional<std::size_t> position() const { return position_; }

 private:
  std::size_t line_;
  std::string sentence_id_;
  std::optional<std::size_t> position_;
};

/// Inconsistent evaluation corpora (length mismatch, unknown ids).
class CorpusError : public Error {
 public:
  using Error::Error;
};

}  // namespace disc

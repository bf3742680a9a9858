// Copyright 2026 The morphdec Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef MORPHDEC_ERROR_HPP_
#define MORPHDEC_ERROR_HPP_

#include <cstddef>
#include <stdexcept>
#include <string>

namespace morphdec {

// Broad failure classes; the CLI maps these onto exit codes.
enum class ErrorCategory {
  kData,        // malformed or inconsistent input data
  kNoAnalysis,  // nothing could be analyzed
};

class Error : public std::runtime_error {
 public:
  Error(ErrorCategory category, const std::string& kind, const std::string& what)
      : std::runtime_error(kind + ": " + what), category_(category), kind_(kind), message_(what) {}

  ErrorCategory category() const { return category_; }
  const std::string& kind() const { return kind_; }
  // what() without the kind prefix.
  const std::string& message() const { return message_; }

 private:
  ErrorCategory category_;
  std::string kind_;
  std::string message_;
};

#define MORPHDEC_DEFINE_ERROR(Name, Category)                            \
  class Name : public Error {                                            \
   public:                                                               \
    explicit Name(const std::string& what) : Error(Category, #Name, what) {} \
  }

MORPHDEC_DEFINE_ERROR(UnknownSymbol, ErrorCategory::kData);
MORPHDEC_DEFINE_ERROR(MalformedSyllable, ErrorCategory::kData);
MORPHDEC_DEFINE_ERROR(InventoryMiss, ErrorCategory::kData);
MORPHDEC_DEFINE_ERROR(ValidationError, ErrorCategory::kData);
MORPHDEC_DEFINE_ERROR(EmptyObservation, ErrorCategory::kData);
MORPHDEC_DEFINE_ERROR(EmptyResult, ErrorCategory::kData);
MORPHDEC_DEFINE_ERROR(NoAnalysis, ErrorCategory::kNoAnalysis);

#undef MORPHDEC_DEFINE_ERROR

// Parse failures carry their location.
class ParseError : public Error {
 public:
  ParseError(const std::string& source, std::size_t line, std::size_t column,
             const std::string& what)
      : Error(ErrorCategory::kData, "ParseError",
              source + ":" + std::to_string(line) + ":" + std::to_string(column) +
                  ": " + what),
        line_(line),
        column_(column) {}

  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

}  // namespace morphdec

#endif  // MORPHDEC_ERROR_HPP_

// Copyright 2026 The lcupea Authors
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

#pragma once

#include <stdexcept>
#include <string>

namespace lcupea {

/// Base class of every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DimensionError : public Error { using Error::Error; };
class IndexError : public Error { using Error::Error; };
class NormalizationError : public Error { using Error::Error; };
class SizeError : public Error { using Error::Error; };
class HermiticityError : public Error { using Error::Error; };
class ParameterError : public Error { using Error::Error; };
class DegenerateError : public Error { using Error::Error; };
class LayoutError : public Error { using Error::Error; };
class ConfigurationError : public Error { using Error::Error; };
class NotUnitaryError : public Error { using Error::Error; };
class MemoryCapError : public Error { using Error::Error; };

/// Raised by the Hamiltonian and config readers; carries the 1-based line.
class ParseError : public Error {
 public:
  ParseError(int line, const std::string& what)
      : Error("line " + std::to_string(line) + ": " + what), line_(line) {}
  int line() const noexcept { return line_; }

 private:
  int line_;
};

}  // namespace lcupea

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

#include <algorithm>
#include <cmath>

#include "lcupea/errors.hpp"
#include "lcupea/pauli.hpp"
#include "lcupea/text.hpp"

namespace lcupea {

PauliSum parse_hamiltonian(std::string_view text) {
  std::vector<std::pair<double, std::string_view>> entries;
  int width = -1;
  int line_no = 0;
  for (std::string_view line : split_lines(text)) {
    ++line_no;
    line = trim(strip_comment(line));
    if (line.empty()) continue;

    const auto fields = split_whitespace(line);
    if (fields.size() != 2) {
      throw ParseError(line_no, "expected '<coeff> <pauli-word>'");
    }
    const auto coeff = parse_double(fields[0]);
    if (!coeff) {
      throw ParseError(line_no, "malformed coefficient '" +
                                    std::string(fields[0]) + "'");
    }
    const std::string_view word = fields[1];
    for (char c : word) {
      if (c != 'I' && c != 'X' && c != 'Y' && c != 'Z') {
        throw ParseError(line_no, std::string("illegal character '") + c +
                                      "' in Pauli word");
      }
    }
    if (width >= 0 && static_cast<int>(word.size()) != width) {
      throw ParseError(line_no, "Pauli word length " +
                                    std::to_string(word.size()) +
                                    " differs from " + std::to_string(width));
    }
    width = static_cast<int>(word.size());
    entries.emplace_back(*coeff, word);
  }

  PauliSum h(std::max(width, 0));
  for (const auto& [c, w] : entries) h.add(c, PauliString::from_word(w));
  return h.canonical();
}

std::string serialize_hamiltonian(const PauliSum& h) {
  std::string out;
  for (const auto& t : h.canonical()) {
    if (std::abs(t.coeff.imag()) > kDropTolerance) {
      throw ParameterError("term " + t.string.word() +
                           " has a non-real coefficient");
    }
    out += format_shortest(t.coeff.real());
    out += ' ';
    out += t.string.word();
    out += '\n';
  }
  return out;
}

PauliSum load_hamiltonian(const std::filesystem::path& path) {
  return parse_hamiltonian(read_text_file(path));
}

}  // namespace lcupea

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

#include <array>
#include <bit>
#include <cstring>
#include <fstream>

#include "lcupea/state.hpp"

namespace lcupea {

namespace {

constexpr std::array<char, 8> kMagic = {'L', 'C', 'U', 'P', 'E', 'A', '\0', '\0'};
constexpr std::size_t kHeaderSize = 16;

void put_u64_le(std::ostream& out, std::uint64_t v) {
  char bytes[8];
  for (int i = 0; i < 8; ++i) bytes[i] = static_cast<char>((v >> (8 * i)) & 0xff);
  out.write(bytes, 8);
}

std::uint64_t get_u64_le(const unsigned char* p) {
  std::uint64_t v = 0;
  for (int i = 0; i < 8; ++i) v |= std::uint64_t{p[i]} << (8 * i);
  return v;
}

}  // namespace

void write_state_dump(const std::filesystem::path& path,
                      const StateVector& state) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write " + path.string());
  const auto m = static_cast<std::uint16_t>(state.layout().total_qubits());
  std::array<char, kHeaderSize> header{};
  std::memcpy(header.data(), kMagic.data(), kMagic.size());
  header[8] = static_cast<char>(m & 0xff);
  header[9] = static_cast<char>(m >> 8);
  out.write(header.data(), header.size());
  for (Index i = 0; i < state.dimension(); ++i) {
    const auto a = state[i];
    put_u64_le(out, std::bit_cast<std::uint64_t>(a.real()));
    put_u64_le(out, std::bit_cast<std::uint64_t>(a.imag()));
  }
  if (!out) throw Error("short write to " + path.string());
}

StateDump read_state_dump(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open " + path.string());
  std::array<unsigned char, kHeaderSize> header{};
  in.read(reinterpret_cast<char*>(header.data()), header.size());
  if (!in || std::memcmp(header.data(), kMagic.data(), kMagic.size()) != 0) {
    throw Error(path.string() + " is not a state dump");
  }
  StateDump dump;
  dump.qubits = header[8] | (header[9] << 8);
  if (dump.qubits > kMaxStateQubits) throw SizeError("dump too large");
  const auto dim = Eigen::Index{1} << dump.qubits;
  dump.amplitudes.resize(dim);
  std::array<unsigned char, 16> pair{};
  for (Eigen::Index i = 0; i < dim; ++i) {
    in.read(reinterpret_cast<char*>(pair.data()), pair.size());
    if (!in) throw Error("truncated state dump " + path.string());
    dump.amplitudes(i) = {std::bit_cast<double>(get_u64_le(pair.data())),
                          std::bit_cast<double>(get_u64_le(pair.data() + 8))};
  }
  return dump;
}

}  // namespace lcupea

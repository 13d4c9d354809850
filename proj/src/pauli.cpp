// Copyright 2026 The MQNC Toolkit Authors
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

#include "mqnc/pauli.hpp"

#include "mqnc/error.hpp"

namespace mqnc {

std::string to_string(FrameLabel f) {
  switch (f) {
    case FrameLabel::I:
      return "I";
    case FrameLabel::X:
      return "X";
    case FrameLabel::Z:
      return "Z";
    case FrameLabel::XZ:
      return "XZ";
  }
  return "?";
}

FrameLabel parse_frame_label(std::string_view text) {
  if (text == "I") return FrameLabel::I;
  if (text == "X") return FrameLabel::X;
  if (text == "Z") return FrameLabel::Z;
  if (text == "XZ") return FrameLabel::XZ;
  throw Error("unknown Pauli frame label '" + std::string(text) + "'");
}

PauliString PauliString::parse(std::string_view text) {
  int phase = 0;
  std::size_t pos = 0;
  while (pos < text.size() && (text[pos] == '+' || text[pos] == '-' || text[pos] == 'i')) {
    if (text[pos] == '-') phase += 2;
    if (text[pos] == 'i') phase += 1;
    ++pos;
  }
  PauliString p(text.size() - pos);
  for (std::size_t q = 0; pos < text.size(); ++pos, ++q) p.set_letter(q, text[pos]);
  p.set_phase(phase);
  return p;
}

char PauliString::letter(std::size_t q) const {
  static constexpr char kLetters[4] = {'I', 'X', 'Z', 'Y'};
  return kLetters[xs_[q] | (zs_[q] << 1)];
}

void PauliString::set_letter(std::size_t q, char letter) {
  switch (letter) {
    case 'I':
    case '_':
      xs_[q] = 0, zs_[q] = 0;
      break;
    case 'X':
      xs_[q] = 1, zs_[q] = 0;
      break;
    case 'Y':
      xs_[q] = 1, zs_[q] = 1;
      break;
    case 'Z':
      xs_[q] = 0, zs_[q] = 1;
      break;
    default:
      throw Error(std::string("invalid Pauli letter '") + letter + "'");
  }
}

int PauliString::sign() const {
  if (phase_ == 0) return 1;
  if (phase_ == 2) return -1;
  throw Error("Pauli string " + str() + " is not Hermitian");
}

std::size_t PauliString::weight() const {
  std::size_t w = 0;
  for (std::size_t q = 0; q < size(); ++q) w += (xs_[q] | zs_[q]) != 0;
  return w;
}

bool PauliString::commutes_with(const PauliString& other) const {
  if (other.size() != size()) throw Error("Pauli strings of different length");
  unsigned anti = 0;
  for (std::size_t q = 0; q < size(); ++q) anti ^= (xs_[q] & other.zs_[q]) ^ (zs_[q] & other.xs_[q]);
  return anti == 0;
}

std::string PauliString::letters() const {
  std::string s(size(), 'I');
  for (std::size_t q = 0; q < size(); ++q) s[q] = letter(q);
  return s;
}

std::string PauliString::str() const {
  static constexpr const char* kPrefix[4] = {"+", "+i", "-", "-i"};
  return kPrefix[phase_] + letters();
}

PauliString& PauliString::operator*=(const PauliString& rhs) {
  if (rhs.size() != size()) throw Error("Pauli strings of different length");
  // Letter products in the X/Y/Z basis: XY = iZ, YZ = iX, ZX = iY.
  int phase = phase_ + rhs.phase_;
  for (std::size_t q = 0; q < size(); ++q) {
    const char a = letter(q);
    const char b = rhs.letter(q);
    if (a != 'I' && b != 'I' && a != b) {
      const bool cyclic = (a == 'X' && b == 'Y') || (a == 'Y' && b == 'Z') || (a == 'Z' && b == 'X');
      phase += cyclic ? 1 : 3;
    }
    xs_[q] ^= rhs.xs_[q];
    zs_[q] ^= rhs.zs_[q];
  }
  set_phase(phase);
  return *this;
}

}  // namespace mqnc

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

#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace mqnc {

/// Single-qubit Pauli byproduct, global phase discarded. Bit 0 is the X part, bit 1 the Z part,
/// so the frame operator is X^x Z^z.
enum class FrameLabel : std::uint8_t { I = 0, X = 1, Z = 2, XZ = 3 };

inline bool has_x(FrameLabel f) { return (static_cast<std::uint8_t>(f) & 1u) != 0; }
inline bool has_z(FrameLabel f) { return (static_cast<std::uint8_t>(f) & 2u) != 0; }
inline FrameLabel make_frame(bool x, bool z) {
  return static_cast<FrameLabel>((x ? 1u : 0u) | (z ? 2u : 0u));
}
/// Product of two frame labels (phase discarded).
inline FrameLabel compose(FrameLabel a, FrameLabel b) {
  return static_cast<FrameLabel>(static_cast<std::uint8_t>(a) ^ static_cast<std::uint8_t>(b));
}

std::string to_string(FrameLabel f);
FrameLabel parse_frame_label(std::string_view text);

/// Pauli operator on n qubits with a phase i^phase. Letters are stored as (x, z) bit pairs with
/// Y represented as x = z = 1; the letter Y means the Hermitian Y = iXZ.
class PauliString {
 public:
  PauliString() = default;
  explicit PauliString(std::size_t n) : xs_(n, 0), zs_(n, 0) {}

  /// Parses "XZI", "+XZ", "-YY", "iX" style strings. Qubit 0 is the leftmost letter.
  static PauliString parse(std::string_view text);

  std::size_t size() const { return xs_.size(); }
  char letter(std::size_t q) const;
  void set_letter(std::size_t q, char letter);
  bool x(std::size_t q) const { return xs_[q] != 0; }
  bool z(std::size_t q) const { return zs_[q] != 0; }

  /// Power of i multiplying the letters (0..3).
  int phase() const { return phase_; }
  void set_phase(int phase) { phase_ = ((phase % 4) + 4) % 4; }
  /// +1 or -1 for Hermitian strings; throws when the phase is imaginary.
  int sign() const;

  std::size_t weight() const;
  bool commutes_with(const PauliString& other) const;

  /// Letters only, no sign, e.g. "XZIY".
  std::string letters() const;
  /// Sign and letters, e.g. "+XZIY" or "-YY".
  std::string str() const;

  PauliString& operator*=(const PauliString& rhs);
  friend PauliString operator*(PauliString lhs, const PauliString& rhs) { return lhs *= rhs; }
  friend bool operator==(const PauliString&, const PauliString&) = default;

 private:
  std::vector<std::uint8_t> xs_;
  std::vector<std::uint8_t> zs_;
  int phase_ = 0;
};

}  // namespace mqnc

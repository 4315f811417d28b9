// Copyright 2026 The chm Authors
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

#include <complex>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <string>
#include <string_view>

namespace chm {

/// Single-qubit Pauli letter. The two low bits are the (x, z) symplectic
/// components, so Y = X|Z.
enum class PauliLetter : std::uint8_t { I = 0, X = 1, Z = 2, Y = 3 };

char letter_char(PauliLetter letter);
PauliLetter letter_from_char(char c);

/// An n-qubit Pauli word i^k * P_0 (x) P_1 (x) ... with Hermitian letters.
///
/// Qubit q is stored at bit q of the x/z masks and corresponds to the q-th
/// character of the textual form ("XIZ" is X on qubit 0, Z on qubit 2). The
/// phase is a power of i kept modulo 4.
class PauliString {
 public:
  static constexpr std::size_t kMaxQubits = 64;

  PauliString() = default;
  explicit PauliString(std::size_t num_qubits);
  PauliString(std::size_t num_qubits, std::uint64_t x_bits, std::uint64_t z_bits, int phase_exponent = 0);

  /// Parses "XYZ", "+XYZ", "-XYZ", "iXYZ", "-iXYZ". Throws std::invalid_argument.
  static PauliString parse(std::string_view text);
  static PauliString single(std::size_t num_qubits, std::size_t qubit, PauliLetter letter);

  std::size_t num_qubits() const { return num_qubits_; }
  std::uint64_t x_bits() const { return x_; }
  std::uint64_t z_bits() const { return z_; }
  int phase_exponent() const { return phase_; }
  std::complex<double> phase() const;
  /// +1 or -1 for Hermitian strings; throws for +-i.
  int sign() const;
  bool is_hermitian() const { return (phase_ & 1) == 0; }

  PauliLetter letter(std::size_t qubit) const;
  void set_letter(std::size_t qubit, PauliLetter letter);

  bool has_identity_letters() const { return (x_ | z_) == 0; }
  /// True when every letter is I or Z.
  bool is_diagonal() const { return x_ == 0; }
  std::size_t weight() const;
  std::size_t count_y() const;

  bool commutes_with(const PauliString& other) const;

  PauliString operator*(const PauliString& rhs) const;
  PauliString& multiply_phase(int exponent);
  PauliString with_phase(int exponent) const;

  /// Letters only, e.g. "IZY".
  std::string letters() const;
  /// Phase prefix plus letters, e.g. "-iXZ".
  std::string str() const;

  friend bool operator==(const PauliString& a, const PauliString& b) = default;

 private:
  std::size_t num_qubits_ = 0;
  std::uint64_t x_ = 0;
  std::uint64_t z_ = 0;
  int phase_ = 0;
};

struct PauliStringHash {
  std::size_t operator()(const PauliString& p) const noexcept;
};

/// Phase exponent (power of i) of the product of the letter parts of a and b,
/// ignoring their own phases.
int product_phase_exponent(std::uint64_t ax, std::uint64_t az, std::uint64_t bx, std::uint64_t bz);

}  // namespace chm

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

#include "chm/pauli.hpp"

#include <bit>
#include <stdexcept>

namespace chm {

namespace {

std::uint64_t low_mask(std::size_t n) { return n >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n) - 1; }

void check_qubit(std::size_t qubit, std::size_t n) {
  if (qubit >= n) {
    throw std::out_of_range("qubit " + std::to_string(qubit) + " out of range for " + std::to_string(n) + " qubits");
  }
}

}  // namespace

char letter_char(PauliLetter letter) {
  switch (letter) {
    case PauliLetter::I: return 'I';
    case PauliLetter::X: return 'X';
    case PauliLetter::Y: return 'Y';
    case PauliLetter::Z: return 'Z';
  }
  return '?';
}

PauliLetter letter_from_char(char c) {
  switch (c) {
    case 'I': case 'i': case '_': return PauliLetter::I;
    case 'X': case 'x': return PauliLetter::X;
    case 'Y': case 'y': return PauliLetter::Y;
    case 'Z': case 'z': return PauliLetter::Z;
    default: throw std::invalid_argument(std::string("not a Pauli letter: '") + c + "'");
  }
}

PauliString::PauliString(std::size_t num_qubits) : num_qubits_(num_qubits) {
  if (num_qubits > kMaxQubits) {
    throw std::invalid_argument("PauliString supports at most 64 qubits");
  }
}

PauliString::PauliString(std::size_t num_qubits, std::uint64_t x_bits, std::uint64_t z_bits, int phase_exponent)
    : PauliString(num_qubits) {
  if (((x_bits | z_bits) & ~low_mask(num_qubits)) != 0) {
    throw std::invalid_argument("Pauli masks have bits beyond the qubit count");
  }
  x_ = x_bits;
  z_ = z_bits;
  phase_ = ((phase_exponent % 4) + 4) % 4;
}

PauliString PauliString::parse(std::string_view text) {
  int phase = 0;
  if (!text.empty() && (text.front() == '+' || text.front() == '-')) {
    if (text.front() == '-') phase = 2;
    text.remove_prefix(1);
  }
  // A leading lowercase 'i' followed by more letters is the imaginary unit.
  if (text.size() > 1 && text.front() == 'i' && text[1] != 'i' && text[1] != 'x' && text[1] != 'y' &&
      text[1] != 'z') {
    phase = (phase + 1) % 4;
    text.remove_prefix(1);
  }
  PauliString p(text.size());
  for (std::size_t q = 0; q < text.size(); ++q) {
    p.set_letter(q, letter_from_char(text[q]));
  }
  p.phase_ = phase;
  return p;
}

PauliString PauliString::single(std::size_t num_qubits, std::size_t qubit, PauliLetter letter) {
  PauliString p(num_qubits);
  p.set_letter(qubit, letter);
  return p;
}

std::complex<double> PauliString::phase() const {
  switch (phase_) {
    case 0: return {1.0, 0.0};
    case 1: return {0.0, 1.0};
    case 2: return {-1.0, 0.0};
    default: return {0.0, -1.0};
  }
}

int PauliString::sign() const {
  if (!is_hermitian()) {
    throw std::logic_error("PauliString " + str() + " is not Hermitian");
  }
  return phase_ == 0 ? 1 : -1;
}

PauliLetter PauliString::letter(std::size_t qubit) const {
  check_qubit(qubit, num_qubits_);
  const unsigned x = (x_ >> qubit) & 1U;
  const unsigned z = (z_ >> qubit) & 1U;
  return static_cast<PauliLetter>(x | (z << 1));
}

void PauliString::set_letter(std::size_t qubit, PauliLetter letter) {
  check_qubit(qubit, num_qubits_);
  const auto bits = static_cast<unsigned>(letter);
  const std::uint64_t bit = std::uint64_t{1} << qubit;
  x_ = (bits & 1U) ? (x_ | bit) : (x_ & ~bit);
  z_ = (bits & 2U) ? (z_ | bit) : (z_ & ~bit);
}

std::size_t PauliString::weight() const { return static_cast<std::size_t>(std::popcount(x_ | z_)); }

std::size_t PauliString::count_y() const { return static_cast<std::size_t>(std::popcount(x_ & z_)); }

bool PauliString::commutes_with(const PauliString& other) const {
  return (std::popcount((x_ & other.z_) ^ (z_ & other.x_)) & 1) == 0;
}

int product_phase_exponent(std::uint64_t ax, std::uint64_t az, std::uint64_t bx, std::uint64_t bz) {
  const std::uint64_t a_x = ax & ~az, a_y = ax & az, a_z = ~ax & az;
  const std::uint64_t b_x = bx & ~bz, b_y = bx & bz, b_z = ~bx & bz;
  // XY = iZ, YZ = iX, ZX = iY and the reversed orders give -i.
  const std::uint64_t plus = (a_x & b_y) | (a_y & b_z) | (a_z & b_x);
  const std::uint64_t minus = (a_y & b_x) | (a_z & b_y) | (a_x & b_z);
  const int e = std::popcount(plus) - std::popcount(minus);
  return ((e % 4) + 4) % 4;
}

PauliString PauliString::operator*(const PauliString& rhs) const {
  if (num_qubits_ != rhs.num_qubits_) {
    throw std::invalid_argument("PauliString qubit count mismatch in product");
  }
  PauliString out(num_qubits_);
  out.x_ = x_ ^ rhs.x_;
  out.z_ = z_ ^ rhs.z_;
  out.phase_ = (phase_ + rhs.phase_ + product_phase_exponent(x_, z_, rhs.x_, rhs.z_)) % 4;
  return out;
}

PauliString& PauliString::multiply_phase(int exponent) {
  phase_ = (((phase_ + exponent) % 4) + 4) % 4;
  return *this;
}

PauliString PauliString::with_phase(int exponent) const {
  PauliString out = *this;
  out.phase_ = ((exponent % 4) + 4) % 4;
  return out;
}

std::string PauliString::letters() const {
  std::string s(num_qubits_, 'I');
  for (std::size_t q = 0; q < num_qubits_; ++q) s[q] = letter_char(letter(q));
  return s;
}

std::string PauliString::str() const {
  static constexpr const char* kPrefix[4] = {"+", "+i", "-", "-i"};
  return kPrefix[phase_] + letters();
}

std::size_t PauliStringHash::operator()(const PauliString& p) const noexcept {
  std::uint64_t h = p.x_bits() * 0x9E3779B97F4A7C15ULL;
  h ^= p.z_bits() + 0x632BE59BD9B4E019ULL + (h << 6) + (h >> 2);
  h ^= static_cast<std::uint64_t>(p.phase_exponent()) + (static_cast<std::uint64_t>(p.num_qubits()) << 8);
  return static_cast<std::size_t>(h);
}

}  // namespace chm

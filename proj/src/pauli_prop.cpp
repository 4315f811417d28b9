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

#include "chm/pauli_prop.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

#include "chm/errors.hpp"
#include "chm/spectral.hpp"

namespace chm {

ThetaMonomial::ThetaMonomial(std::vector<Factor> factors) : factors_(std::move(factors)) {
  std::sort(factors_.begin(), factors_.end());
  for (std::size_t i = 1; i < factors_.size(); ++i) {
    if (factors_[i].first == factors_[i - 1].first) {
      throw std::invalid_argument("theta monomial has two factors for parameter " + std::to_string(factors_[i].first));
    }
  }
}

bool ThetaMonomial::contains(std::uint32_t param) const {
  const auto it = std::lower_bound(factors_.begin(), factors_.end(), Factor{param, Trig::kCos});
  return it != factors_.end() && it->first == param;
}

ThetaMonomial ThetaMonomial::with(std::uint32_t param, Trig trig) const {
  const auto it = std::lower_bound(factors_.begin(), factors_.end(), Factor{param, Trig::kCos});
  if (it != factors_.end() && it->first == param) {
    throw std::invalid_argument("parameter " + std::to_string(param) + " already active in monomial");
  }
  ThetaMonomial out;
  out.factors_.reserve(factors_.size() + 1);
  out.factors_.insert(out.factors_.end(), factors_.begin(), it);
  out.factors_.emplace_back(param, trig);
  out.factors_.insert(out.factors_.end(), it, factors_.end());
  return out;
}

double ThetaMonomial::evaluate(std::span<const double> theta) const {
  double v = 1.0;
  for (const auto& [a, t] : factors_) v *= t == Trig::kCos ? std::cos(theta[a]) : std::sin(theta[a]);
  return v;
}

double XMonomial::evaluate(double x) const {
  return std::pow(std::cos(x), cos_power) * std::pow(std::sin(x), sin_power);
}

// ---------------------------------------------------------------------------

ConjugationResult conjugate_rotation(const PauliString& q, const PauliString& p) {
  ConjugationResult r;
  r.cos_branch = q;
  if (q.commutes_with(p)) {
    r.commutes = true;
    return r;
  }
  r.commutes = false;
  r.sin_branch = (p * q).multiply_phase(1);
  return r;
}

PauliString conjugate_clifford(const PauliString& q, const CliffordGate& gate) {
  std::uint64_t x = q.x_bits();
  std::uint64_t z = q.z_bits();
  int phase = q.phase_exponent();
  const auto bit = [](std::uint64_t v, std::size_t i) -> unsigned { return static_cast<unsigned>((v >> i) & 1U); };
  const auto flip = [](std::uint64_t& v, std::size_t i, unsigned on) {
    if (on) v ^= std::uint64_t{1} << i;
  };
  const std::size_t a = gate.control;
  const std::size_t b = gate.target;
  switch (gate.kind) {
    case CliffordKind::kCnot: {
      const unsigned xa = bit(x, a), za = bit(z, a), xb = bit(x, b), zb = bit(z, b);
      if (xa & zb & (xb ^ za ^ 1U)) phase += 2;
      flip(x, b, xa);
      flip(z, a, zb);
      break;
    }
    case CliffordKind::kCz: {
      const unsigned xa = bit(x, a), za = bit(z, a), xb = bit(x, b), zb = bit(z, b);
      if (xa & xb & (za ^ zb)) phase += 2;
      flip(z, a, xb);
      flip(z, b, xa);
      break;
    }
    case CliffordKind::kH: {
      const unsigned xa = bit(x, a), za = bit(z, a);
      if (xa & za) phase += 2;
      flip(x, a, xa ^ za);
      flip(z, a, xa ^ za);
      break;
    }
    case CliffordKind::kS: {
      // S^dagger X S = -Y, S^dagger Y S = X.
      const unsigned xa = bit(x, a), za = bit(z, a);
      if (xa & (za ^ 1U)) phase += 2;
      flip(z, a, xa);
      break;
    }
  }
  return PauliString(q.num_qubits(), x, z, phase);
}

// ---------------------------------------------------------------------------

namespace {

struct NodeKey {
  std::uint64_t x_bits;
  std::uint64_t z_bits;
  XMonomial x;
  const ThetaMonomial* theta;

  bool operator==(const NodeKey& o) const {
    return x_bits == o.x_bits && z_bits == o.z_bits && x == o.x && *theta == *o.theta;
  }
};

struct NodeKeyHash {
  std::size_t operator()(const NodeKey& k) const noexcept {
    std::uint64_t h = k.x_bits * 0x9E3779B97F4A7C15ULL;
    h ^= k.z_bits + 0x7F4A7C159E3779B9ULL + (h << 6) + (h >> 2);
    h ^= (static_cast<std::uint64_t>(k.x.cos_power) << 32 | k.x.sin_power) + (h << 6) + (h >> 2);
    for (const auto& [a, t] : k.theta->factors()) {
      h ^= ((static_cast<std::uint64_t>(a) << 1) | static_cast<std::uint64_t>(t)) + 0x9E3779B97F4A7C15ULL + (h << 6) +
           (h >> 2);
    }
    return static_cast<std::size_t>(h);
  }
};

/// Node list with merging of identical (Pauli, monomials) branches.
class NodeList {
 public:
  explicit NodeList(std::size_t budget) : budget_(budget) {}

  void add(PropNode&& node) {
    // Fold the Hermitian Pauli's sign into the scalar.
    if (node.pauli.phase_exponent() != 0) {
      node.scalar *= node.pauli.phase();
      node.pauli = node.pauli.with_phase(0);
    }
    nodes_.push_back(std::move(node));
    PropNode& stored = nodes_.back();
    NodeKey key{stored.pauli.x_bits(), stored.pauli.z_bits(), stored.x, &stored.theta};
    auto [it, inserted] = index_.try_emplace(key, nodes_.size() - 1);
    if (!inserted) {
      nodes_[it->second].scalar += stored.scalar;
      nodes_.pop_back();
    } else if (nodes_.size() > budget_) {
      std::ostringstream os;
      os << "exact propagation exceeded its node budget of " << budget_
         << " nodes; use the Monte-Carlo estimator for this circuit";
      throw BudgetExceeded(os.str());
    }
  }

  std::vector<PropNode> release() {
    index_.clear();
    std::erase_if(nodes_, [](const PropNode& n) { return n.scalar == std::complex<double>{0.0, 0.0}; });
    return std::move(nodes_);
  }

  void reserve(std::size_t n) {
    // Keys hold pointers into nodes_, so it must never reallocate.
    nodes_.reserve(n);
    index_.reserve(n);
  }

 private:
  std::size_t budget_;
  std::vector<PropNode> nodes_;
  std::unordered_map<NodeKey, std::size_t, NodeKeyHash> index_;
};

void check_propagatable(const Circuit& circuit) {
  const ValidationReport report = validate(circuit);
  const auto shared = report.shared_parameters();
  if (!shared.empty()) {
    std::ostringstream os;
    os << "exact propagation needs single-use parameters; shared indices:";
    for (const auto& [a, count] : shared) os << ' ' << a << " (x" << count << ')';
    throw ValidationError(os.str());
  }
  for (const Gate& g : circuit.gates()) {
    if (const auto* rot = std::get_if<RotationGate>(&g)) {
      if (!rot->mult.is_unit()) {
        throw ValidationError("exact propagation needs multipliers of +-1; parameter " + std::to_string(rot->param) +
                              " has " + rot->mult.str());
      }
    }
  }
  for (const ObservableTerm& t : circuit.observable()) {
    if (t.weight.imag() != 0.0 || !t.pauli.is_hermitian()) {
      throw ValidationError("exact propagation needs a Hermitian observable with real weights");
    }
  }
}

}  // namespace

PropagationResult backpropagate(const Circuit& circuit, const PropagationOptions& options) {
  check_propagatable(circuit);
  const std::size_t n = circuit.num_qubits();
  PropagationResult result;

  std::vector<PropNode> nodes;
  {
    NodeList list(options.node_budget);
    list.reserve(circuit.observable().size());
    for (const ObservableTerm& t : circuit.observable()) {
      list.add(PropNode{t.pauli, t.weight, {}, {}});
    }
    nodes = list.release();
  }
  result.peak_nodes = nodes.size();

  const auto& gates = circuit.gates();
  for (std::size_t g = gates.size(); g-- > 0;) {
    const Gate& gate = gates[g];
    if (const auto* cg = std::get_if<CliffordGate>(&gate)) {
      for (PropNode& node : nodes) {
        node.pauli = conjugate_clifford(node.pauli, *cg);
        if (node.pauli.phase_exponent() != 0) {
          node.scalar *= node.pauli.phase();
          node.pauli = node.pauli.with_phase(0);
        }
      }
      continue;
    }
    PauliString axis(n);
    std::optional<std::uint32_t> param;
    double sin_sign = options.sin_branch_sign;
    if (const auto* e = std::get_if<EncoderGate>(&gate)) {
      axis = PauliString::single(n, e->qubit, e->axis);
    } else {
      const auto& rot = std::get<RotationGate>(gate);
      axis = rot.axis;
      param = static_cast<std::uint32_t>(rot.param);
      if (rot.mult.num < 0) sin_sign = -sin_sign;  // sin(-theta) = -sin(theta)
    }
    NodeList next(options.node_budget);
    next.reserve(std::min(options.node_budget + 1, 2 * nodes.size() + 1));
    for (PropNode& node : nodes) {
      const ConjugationResult r = conjugate_rotation(node.pauli, axis);
      if (r.commutes) {
        next.add(std::move(node));
        continue;
      }
      PropNode sin_node{r.sin_branch, node.scalar * sin_sign, node.x, node.theta};
      if (param) {
        node.theta = node.theta.with(*param, Trig::kCos);
        sin_node.theta = sin_node.theta.with(*param, Trig::kSin);
      } else {
        ++node.x.cos_power;
        ++sin_node.x.sin_power;
      }
      next.add(std::move(node));
      next.add(std::move(sin_node));
    }
    nodes = next.release();
    result.peak_nodes = std::max(result.peak_nodes, nodes.size());
  }
  result.nodes_before_pruning = nodes.size();
  for (PropNode& node : nodes) {
    // Merged branches share monomials, so the encounter count is exact.
    result.max_encounters = std::max<std::size_t>(result.max_encounters, node.theta.active_size() + node.x.degree());
    if (node.pauli.is_diagonal()) result.nodes.push_back(std::move(node));
  }
  return result;
}

// ---------------------------------------------------------------------------

std::vector<std::pair<HarmonicIndex, std::complex<double>>> trig_to_characters(const ThetaMonomial& monomial) {
  const auto factors = monomial.factors();
  const std::size_t w = factors.size();
  if (w >= 63) throw std::invalid_argument("monomial too large to expand");
  std::vector<std::pair<HarmonicIndex, std::complex<double>>> out;
  out.reserve(std::size_t{1} << w);
  // cos t = (e^{it} + e^{-it}) / 2, sin t = (e^{it} - e^{-it}) / (2i).
  const std::complex<double> sin_plus{0.0, -0.5};
  const std::complex<double> sin_minus{0.0, 0.5};
  for (std::uint64_t pattern = 0; pattern < (std::uint64_t{1} << w); ++pattern) {
    std::vector<HarmonicIndex::Entry> entries(w);
    std::complex<double> coeff{1.0, 0.0};
    for (std::size_t j = 0; j < w; ++j) {
      const bool plus = (pattern >> (w - 1 - j)) & 1U;
      entries[j] = {factors[j].first, static_cast<std::int8_t>(plus ? 1 : -1)};
      if (factors[j].second == Trig::kCos) {
        coeff *= 0.5;
      } else {
        coeff *= plus ? sin_plus : sin_minus;
      }
    }
    out.emplace_back(HarmonicIndex(std::move(entries)), coeff);
  }
  return out;
}

std::map<int, std::complex<double>> x_characters(const XMonomial& monomial) {
  std::map<int, std::complex<double>> poly{{0, {1.0, 0.0}}};
  auto multiply = [&](std::complex<double> plus, std::complex<double> minus) {
    std::map<int, std::complex<double>> next;
    for (const auto& [w, c] : poly) {
      next[w + 1] += c * plus;
      next[w - 1] += c * minus;
    }
    poly.swap(next);
  };
  for (std::uint32_t i = 0; i < monomial.cos_power; ++i) multiply({0.5, 0.0}, {0.5, 0.0});
  for (std::uint32_t i = 0; i < monomial.sin_power; ++i) multiply({0.0, -0.5}, {0.0, 0.5});
  std::erase_if(poly, [](const auto& kv) { return kv.second == std::complex<double>{0.0, 0.0}; });
  return poly;
}

CMatrix exact_C_from_nodes(const Circuit& circuit, const std::vector<PropNode>& nodes) {
  const FrequencySet omega_set = frequency_set(circuit);
  const auto rows = static_cast<Eigen::Index>(omega_set.omegas.size());

  std::unordered_map<HarmonicIndex, VectorC, HarmonicIndexHash> columns;
  columns.emplace(HarmonicIndex{}, VectorC::Zero(rows));
  for (const PropNode& node : nodes) {
    if (!node.pauli.is_diagonal()) {
      throw std::invalid_argument("exact_C expects pruned nodes (I/Z Pauli words only)");
    }
    const auto xs = x_characters(node.x);
    VectorC n_hat = VectorC::Zero(rows);
    for (const auto& [w, c] : xs) {
      if (!omega_set.contains(w)) {
        throw InvariantError("node produced frequency " + std::to_string(w) + " outside the accessible set");
      }
      n_hat(static_cast<Eigen::Index>(omega_set.index_of(w))) = c;
    }
    n_hat *= node.scalar;
    for (const auto& [k, mk] : trig_to_characters(node.theta)) {
      auto [it, inserted] = columns.try_emplace(k, VectorC::Zero(rows));
      it->second += mk * n_hat;
    }
  }
  std::vector<HarmonicIndex> ks;
  ks.reserve(columns.size());
  for (const auto& kv : columns) ks.push_back(kv.first);
  std::sort(ks.begin(), ks.end(), canonical_less);

  CMatrix c;
  c.omegas = omega_set.omegas;
  c.num_params = circuit.num_params();
  c.values.resize(rows, static_cast<Eigen::Index>(ks.size()));
  for (std::size_t j = 0; j < ks.size(); ++j) c.values.col(static_cast<Eigen::Index>(j)) = columns.at(ks[j]);
  c.ks = std::move(ks);
  c.provenance = Json{{"method", "exact"}, {"params", Json{{"nodes", nodes.size()}}}};
  return c;
}

CMatrix exact_C(const Circuit& circuit, const PropagationOptions& options) {
  const PropagationResult prop = backpropagate(circuit, options);
  CMatrix c = exact_C_from_nodes(circuit, prop.nodes);
  c.provenance["params"]["nodes_before_pruning"] = prop.nodes_before_pruning;
  c.provenance["params"]["node_budget"] = options.node_budget;
  return c;
}

SupportBound support_bound(const std::vector<PropNode>& nodes) {
  SupportBound out;
  std::unordered_set<HarmonicIndex, HarmonicIndexHash> support;
  for (const PropNode& node : nodes) {
    out.b_max = std::max(out.b_max, node.theta.active_size());
    for (auto& [k, c] : trig_to_characters(node.theta)) support.insert(std::move(k));
  }
  if (support.empty()) support.insert(HarmonicIndex{});
  out.s_gen = support.size();
  out.lower_bound = std::uint64_t{1} << out.b_max;
  if (out.s_gen < out.lower_bound) {
    throw InvariantError("generated k-support " + std::to_string(out.s_gen) + " is below 2^b_max = " +
                         std::to_string(out.lower_bound));
  }
  return out;
}

}  // namespace chm

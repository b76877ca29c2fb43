// Copyright 2026 The fermiprep Authors
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

#include <algorithm>
#include <bit>
#include <cstdint>
#include <string>
#include <vector>

#include "json.hpp"

#include "fermiprep/errors.hpp"
#include "fermiprep/qcompare.hpp"
#include "fermiprep/simcore/layout.hpp"

namespace fermiprep::netgen {

enum class Family { Bitonic, OddEvenMergesort, Insertion };

inline std::string_view to_string(Family f) {
  switch (f) {
    case Family::Bitonic: return "bitonic";
    case Family::OddEvenMergesort: return "odd-even-mergesort";
    case Family::Insertion: return "insertion";
  }
  return "?";
}

inline Family family_from_string(std::string_view s) {
  for (Family f : {Family::Bitonic, Family::OddEvenMergesort, Family::Insertion})
    if (to_string(f) == s) return f;
  throw ValidationError("network_family", "unsupported sorting network family '" + std::string(s) + "'");
}

/// Compare-exchange on two wires: the minimum ends up on `low`.
struct Comparator {
  unsigned low = 0;
  unsigned high = 0;
  bool operator==(const Comparator&) const = default;
};

using Round = std::vector<Comparator>;

struct ComparatorSchedule {
  Family family = Family::Bitonic;
  unsigned num_wires = 0;
  std::vector<Round> rounds;

  std::size_t comparator_count() const {
    std::size_t n = 0;
    for (const auto& r : rounds) n += r.size();
    return n;
  }
  std::size_t depth() const { return rounds.size(); }

  std::vector<Comparator> comparators() const {
    std::vector<Comparator> out;
    for (const auto& r : rounds) out.insert(out.end(), r.begin(), r.end());
    return out;
  }

  bool operator==(const ComparatorSchedule&) const = default;
};

namespace detail {

inline std::vector<Round> bitonic_rounds(unsigned p) {
  // All comparators point the same way: the first round of each merge
  // compares mirrored positions, the remaining rounds are half-cleaners.
  std::vector<Round> rounds;
  for (unsigned k = 2; k <= p; k *= 2) {
    Round mirror;
    for (unsigned base = 0; base < p; base += k)
      for (unsigned i = 0; i < k / 2; ++i) mirror.push_back({base + i, base + k - 1 - i});
    rounds.push_back(std::move(mirror));
    for (unsigned j = k / 4; j >= 1; j /= 2) {
      Round half;
      for (unsigned i = 0; i < p; ++i)
        if ((i ^ j) > i) half.push_back({i, i ^ j});
      rounds.push_back(std::move(half));
    }
  }
  return rounds;
}

inline std::vector<Round> odd_even_mergesort_rounds(unsigned n) {
  std::vector<Round> rounds;
  for (unsigned p = 1; p < n; p *= 2) {
    for (unsigned k = p; k >= 1; k /= 2) {
      Round r;
      for (unsigned j = k % p; j + k < n; j += 2 * k)
        for (unsigned i = 0; i < k && i + j + k < n; ++i)
          if ((i + j) / (2 * p) == (i + j + k) / (2 * p)) r.push_back({i + j, i + j + k});
      rounds.push_back(std::move(r));
    }
  }
  return rounds;
}

/// ASAP layering that preserves the per-wire order of `seq`.
inline std::vector<Round> layer(const std::vector<Comparator>& seq, unsigned wires) {
  std::vector<std::size_t> frontier(wires, 0);
  std::vector<Round> rounds;
  for (const auto& c : seq) {
    const std::size_t r = std::max(frontier[c.low], frontier[c.high]);
    if (rounds.size() <= r) rounds.resize(r + 1);
    rounds[r].push_back(c);
    frontier[c.low] = frontier[c.high] = r + 1;
  }
  return rounds;
}

}  // namespace detail

/// Builds an ascending sorting network on `num_wires` wires. Bitonic and
/// odd-even mergesort networks are generated for the next power of two and
/// comparators touching the padding wires (which hold +infinity) are dropped.
inline ComparatorSchedule generate(Family family, unsigned num_wires) {
  require(num_wires >= 1, "num_wires_positive", "a sorting network needs at least one wire");
  ComparatorSchedule s{family, num_wires, {}};
  if (family == Family::Insertion) {
    std::vector<Comparator> seq;
    for (unsigned i = 1; i < num_wires; ++i)
      for (unsigned j = i; j >= 1; --j) seq.push_back({j - 1, j});
    s.rounds = detail::layer(seq, num_wires);
    return s;
  }
  const unsigned p = static_cast<unsigned>(std::bit_ceil(num_wires));
  auto padded = family == Family::Bitonic ? detail::bitonic_rounds(p) : detail::odd_even_mergesort_rounds(p);
  for (auto& r : padded) {
    std::erase_if(r, [&](const Comparator& c) { return c.high >= num_wires; });
    if (!r.empty()) s.rounds.push_back(std::move(r));
  }
  return s;
}

inline bool rounds_wire_disjoint(const ComparatorSchedule& s) {
  for (const auto& r : s.rounds) {
    std::vector<bool> used(s.num_wires, false);
    for (const auto& c : r) {
      if (c.low >= c.high || c.high >= s.num_wires || used[c.low] || used[c.high]) return false;
      used[c.low] = used[c.high] = true;
    }
  }
  return true;
}

/// Applies the network to a classical array.
template <typename T>
void apply_network(const ComparatorSchedule& s, std::vector<T>& values) {
  for (const auto& r : s.rounds)
    for (const auto& c : r)
      if (values[c.high] < values[c.low]) std::swap(values[c.low], values[c.high]);
}

/// 0-1 principle check: true iff every binary input comes out sorted.
inline bool verify_zero_one(const ComparatorSchedule& s) {
  require(s.num_wires <= 24, "zero_one_width", "exhaustive check is limited to 24 wires");
  const unsigned n = s.num_wires;
  const auto comps = s.comparators();
  const std::uint32_t full = n == 32 ? ~0U : ((1U << n) - 1);
  for (std::uint32_t v = 0; v <= full; ++v) {
    std::uint32_t x = v;
    for (const auto& c : comps) {
      const std::uint32_t lo = (x >> c.low) & 1U, hi = (x >> c.high) & 1U;
      if (lo && !hi) x ^= (1U << c.low) | (1U << c.high);
    }
    const unsigned ones = static_cast<unsigned>(std::popcount(x));
    const std::uint32_t want = full ^ ((1U << (n - ones)) - 1);
    if (x != want) return false;
    if (v == full) break;
  }
  return true;
}

/// Bitonic closed forms for a power-of-two width.
inline std::size_t bitonic_comparators(unsigned n) {
  const unsigned l = static_cast<unsigned>(std::countr_zero(n));
  return static_cast<std::size_t>(n) * l * (l + 1) / 4;
}
inline std::size_t bitonic_depth(unsigned n) {
  const unsigned l = static_cast<unsigned>(std::countr_zero(n));
  return static_cast<std::size_t>(l) * (l + 1) / 2;
}

// Best known 20-input network (depth 11, 92 comparators).
inline constexpr unsigned kReferenceInputs = 20;
inline constexpr unsigned kReferenceDepth = 11;
inline constexpr unsigned kReferenceComparators = 92;

struct ResourceReport {
  std::size_t comparators = 0;
  std::size_t rounds = 0;
  unsigned element_width = 0;
  std::size_t ancillas_per_comparator = 0;
  ResourceTally per_comparator;  // oracle + controlled swap
  ResourceTally per_oracle;      // comparison oracle alone
  std::size_t total_gates = 0;
  std::size_t total_toffoli = 0;
  std::size_t total_t_count = 0;
  std::size_t total_t_count_standard = 0;
  std::size_t total_clifford = 0;
  std::size_t total_depth = 0;  // rounds x per-comparator depth
  std::size_t record_qubits = 0;
};

/// Costs a quantum version of the network on width-`d` wires by multiplying
/// the measured per-comparator tally by comparator count and round depth.
inline ResourceReport resource_summary(const ComparatorSchedule& s, unsigned d,
                                       qcompare::Variant v = qcompare::Variant::Parallel,
                                       bool fanout = true) {
  require(d >= 1, "element_width_positive", "element width must be >= 1");
  const auto bundle = qcompare::build_full_comparator(d, v, fanout);
  const auto& t = bundle.full_comparator.tally();
  ResourceReport r;
  r.comparators = s.comparator_count();
  r.rounds = s.depth();
  r.element_width = d;
  r.ancillas_per_comparator = bundle.ancilla_count;
  r.per_comparator = t;
  r.per_oracle = bundle.oracle_circuit.tally();
  r.total_gates = r.comparators * t.gate_count;
  r.total_toffoli = r.comparators * t.toffoli_count;
  r.total_t_count = r.comparators * t.t_count;
  r.total_t_count_standard = r.comparators * t.t_count_standard;
  r.total_clifford = r.comparators * t.clifford_count;
  r.total_depth = r.rounds * t.depth;
  r.record_qubits = r.comparators;
  return r;
}

inline nlohmann::ordered_json as_json(const ComparatorSchedule& s) {
  nlohmann::ordered_json j;
  j["family"] = std::string(to_string(s.family));
  j["num_wires"] = s.num_wires;
  auto rounds = nlohmann::ordered_json::array();
  for (const auto& r : s.rounds) {
    auto jr = nlohmann::ordered_json::array();
    for (const auto& c : r) jr.push_back({c.low, c.high});
    rounds.push_back(std::move(jr));
  }
  j["rounds"] = std::move(rounds);
  return j;
}

inline ComparatorSchedule schedule_from_json(const nlohmann::json& j) {
  ComparatorSchedule s;
  s.family = family_from_string(j.at("family").get<std::string>());
  s.num_wires = j.at("num_wires").get<unsigned>();
  for (const auto& jr : j.at("rounds")) {
    Round r;
    for (const auto& jc : jr) r.push_back({jc.at(0).get<unsigned>(), jc.at(1).get<unsigned>()});
    s.rounds.push_back(std::move(r));
  }
  require(rounds_wire_disjoint(s), "rounds_wire_disjoint", "schedule has overlapping comparators in a round");
  return s;
}

}  // namespace fermiprep::netgen

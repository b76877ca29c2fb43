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

#include <algorithm>
#include <random>

#include "gtest/gtest.h"

#include "fermiprep/netgen.hpp"

using namespace fermiprep;
using namespace fermiprep::netgen;

namespace {

constexpr Family kFamilies[] = {Family::Bitonic, Family::OddEvenMergesort, Family::Insertion};

// Knuth's count for Batcher's odd-even merge on 2^p wires.
std::size_t batcher_count(unsigned p) {
  if (p == 0) return 0;
  return static_cast<std::size_t>((p * p - p + 4)) * (std::size_t{1} << p) / 4 - 1;
}

bool sorts_everything(const ComparatorSchedule& s, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> val(-5, 5);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<int> v(s.num_wires);
    for (auto& x : v) x = val(rng);
    auto want = v;
    std::sort(want.begin(), want.end());
    apply_network(s, v);
    if (v != want) return false;
  }
  return true;
}

}  // namespace

TEST(netgen, small_examples) {
  const auto b2 = generate(Family::Bitonic, 2);
  EXPECT_EQ(b2.depth(), 1U);
  EXPECT_EQ(b2.comparator_count(), 1U);

  const auto b8 = generate(Family::Bitonic, 8);
  EXPECT_EQ(b8.comparator_count(), 24U);
  EXPECT_EQ(b8.depth(), 6U);

  EXPECT_EQ(generate(Family::Insertion, 4).comparator_count(), 6U);
  EXPECT_TRUE(verify_zero_one(generate(Family::OddEvenMergesort, 5)));
}

TEST(netgen, every_schedule_sorts_up_to_twelve) {
  std::mt19937_64 rng(5);
  for (Family f : kFamilies)
    for (unsigned n = 1; n <= 12; ++n) {
      const auto s = generate(f, n);
      EXPECT_EQ(s.num_wires, n);
      EXPECT_TRUE(rounds_wire_disjoint(s)) << to_string(f) << " " << n;
      EXPECT_TRUE(verify_zero_one(s)) << to_string(f) << " " << n;
      EXPECT_TRUE(sorts_everything(s, rng)) << to_string(f) << " " << n;
      for (const auto& c : s.comparators()) {
        EXPECT_LT(c.low, c.high);
        EXPECT_LT(c.high, n);
      }
    }
}

TEST(netgen, deleting_a_comparator_breaks_sorting) {
  const auto s = generate(Family::Bitonic, 8);
  for (std::size_t r = 0; r < s.rounds.size(); ++r)
    for (std::size_t k = 0; k < s.rounds[r].size(); ++k) {
      auto broken = s;
      broken.rounds[r].erase(broken.rounds[r].begin() + static_cast<long>(k));
      EXPECT_FALSE(verify_zero_one(broken)) << r << "," << k;
    }
}

TEST(netgen, closed_forms_for_powers_of_two) {
  for (unsigned p = 1; p <= 4; ++p) {
    const unsigned n = 1U << p;
    const auto b = generate(Family::Bitonic, n);
    EXPECT_EQ(b.comparator_count(), static_cast<std::size_t>(n) * p * (p + 1) / 4);
    EXPECT_EQ(b.comparator_count(), bitonic_comparators(n));
    EXPECT_EQ(b.depth(), static_cast<std::size_t>(p) * (p + 1) / 2);
    EXPECT_EQ(b.depth(), bitonic_depth(n));

    const auto o = generate(Family::OddEvenMergesort, n);
    EXPECT_EQ(o.comparator_count(), batcher_count(p));
    EXPECT_EQ(o.depth(), static_cast<std::size_t>(p) * (p + 1) / 2);

    EXPECT_EQ(generate(Family::Insertion, n).comparator_count(), static_cast<std::size_t>(n) * (n - 1) / 2);
  }
  EXPECT_EQ(generate(Family::Insertion, 5).depth(), 7U);
}

TEST(netgen, rejects_bad_input) {
  EXPECT_THROW(generate(Family::Bitonic, 0), ValidationError);
  EXPECT_THROW(family_from_string("aks"), ValidationError);
  EXPECT_THROW(verify_zero_one(generate(Family::Insertion, 25)), ValidationError);
  EXPECT_THROW(resource_summary(generate(Family::Insertion, 2), 0), ValidationError);
}

TEST(netgen, json_round_trip) {
  for (Family f : kFamilies) {
    const auto s = generate(f, 7);
    const auto j = as_json(s);
    EXPECT_EQ(j["family"], std::string(to_string(f)));
    EXPECT_EQ(schedule_from_json(nlohmann::json::parse(j.dump())), s);
  }
  auto bad = as_json(generate(Family::Bitonic, 4));
  bad["rounds"][0].push_back({0, 3});
  EXPECT_THROW(schedule_from_json(nlohmann::json::parse(bad.dump())), ValidationError);
}

TEST(netgen, resource_summary_products) {
  const auto s = generate(Family::Bitonic, 8);
  const auto r = resource_summary(s, 4);
  const auto per = qcompare::build_full_comparator(4).full_comparator.tally();
  EXPECT_EQ(r.comparators, 24U);
  EXPECT_EQ(r.rounds, 6U);
  EXPECT_EQ(r.total_t_count, 24U * per.t_count);
  EXPECT_EQ(r.total_depth, 6U * per.depth);
  // oracle T-count is 8d plus a constant; the swap adds one Fredkin per bit
  const auto r8 = resource_summary(s, 8);
  EXPECT_EQ(r8.per_oracle.t_count - r.per_oracle.t_count, 8U * 4U);
  EXPECT_EQ(r8.per_comparator.t_count - r.per_comparator.t_count, 12U * 4U);

  const auto one = resource_summary(generate(Family::Insertion, 2), 3);
  EXPECT_EQ(one.comparators, 1U);
  const auto min = resource_summary(s, 1);
  EXPECT_GT(min.per_comparator.gate_count, 0U);
  EXPECT_EQ(kReferenceDepth, 11U);
  EXPECT_EQ(kReferenceComparators, 92U);
}

#include <gtest/gtest.h>

#include "fatpoints/reduction.hpp"
#include "properties.hpp"

using namespace fatpoints;

namespace {

ReductionStep step_of(const IntSequence& s, Int m) {
  auto out = reduce_once(s, m);
  EXPECT_TRUE(std::holds_alternative<ReductionStep>(out)) << to_string(s) << " m=" << m;
  return std::get<ReductionStep>(out);
}

ReductionFailure failure_of(const IntSequence& s, Int m) {
  auto out = reduce_once(s, m);
  EXPECT_TRUE(std::holds_alternative<ReductionFailure>(out)) << to_string(s) << " m=" << m;
  return std::get<ReductionFailure>(out);
}

}  // namespace

TEST(ReduceOnce, ExampleRowA) {
  auto s = step_of({5, 5, 5}, 3);
  EXPECT_EQ(s.output, IntSequence({4, 3, 2}));
  EXPECT_EQ(s.reducers_by_position(), (std::vector<Int>{1, 2, 3}));
}

TEST(ReduceOnce, ExampleRowB) {
  auto s = step_of({5, 5, 3, 1}, 4);
  EXPECT_EQ(s.output, IntSequence({3, 1, 0, 0}));
  EXPECT_EQ(s.reducers_by_position(), (std::vector<Int>{2, 4, 3, 1}));
}

TEST(ReduceOnce, ExampleRowC) {
  auto s = step_of({4, 1, 3}, 3);
  EXPECT_EQ(s.output, IntSequence({2, 0, 0}));
  EXPECT_EQ(s.reducers_by_position(), (std::vector<Int>{2, 1, 3}));
}

TEST(ReduceOnce, ExampleRowDStops) {
  auto f = failure_of({4, 2, 2}, 3);
  EXPECT_EQ(f.reason, FailureReason::FlatTail);
  EXPECT_EQ(f.stop_index, 2u);
  EXPECT_EQ(f.consumed_at, 3u);
  EXPECT_EQ(f.repeated_reducer, 2);
  EXPECT_EQ(f.witness, std::make_pair(std::size_t{2}, std::size_t{3}));
  ASSERT_EQ(f.partial_reducers.size(), 1u);
  EXPECT_EQ(f.partial_reducers[0], (Reducer{3, 2}));
  EXPECT_NE(f.describe().find("Z_1 = Z_2"), std::string::npos);
}

TEST(ReduceOnce, BlockIsTheTail) {
  auto s = step_of({2, 3, 4, 5, 2}, 4);
  EXPECT_EQ(s.output, IntSequence({2, 2, 1, 1, 0}));
  EXPECT_EQ(s.output.stripped(), IntSequence({2, 2, 1, 1}));
  EXPECT_EQ(s.block_offset(), 1u);
}

TEST(ReduceOnce, RepeatedReducers) {
  auto f = failure_of({1, 2, 3, 3}, 4);
  EXPECT_EQ(f.repeated_reducer, 3);
  EXPECT_EQ(f.witness, std::make_pair(std::size_t{3}, std::size_t{4}));
  EXPECT_EQ(failure_of({3, 2, 4, 2}, 4).repeated_reducer, 2);
}

TEST(ReduceOnce, TooShort) {
  auto f = failure_of({1, 2}, 4);
  EXPECT_EQ(f.reason, FailureReason::TooShort);
  EXPECT_NE(f.describe().find("too short"), std::string::npos);
}

TEST(ReduceOnce, RejectsZerosAndBadM) {
  EXPECT_THROW(reduce_once({1, 0, 2}, 2), std::invalid_argument);
  EXPECT_THROW(reduce_once({1, 2}, 0), std::invalid_argument);
}

TEST(ClassifyFailure, ReportsOrThrows) {
  EXPECT_EQ(classify_failure({4, 2, 2}, 3).reason, FailureReason::FlatTail);
  EXPECT_THROW(classify_failure({5, 5, 5}, 3), std::logic_error);
}

TEST(ReduceChain, StaircaseTrace) {
  auto out = reduce_chain(parse_sequence("1..10"), {4, 4, 4, 3, 3, 3, 3});
  ASSERT_TRUE(std::holds_alternative<ReductionCertificate>(out));
  const auto& c = std::get<ReductionCertificate>(out);
  ASSERT_EQ(c.steps.size(), 7u);
  const std::vector<IntSequence> expected = {
      {1, 2, 3, 4, 5, 6, 6, 6, 6, 6}, {1, 2, 3, 4, 5, 6, 5, 4, 3, 2}, {1, 2, 3, 4, 5, 6, 4, 0, 0, 0},
      {1, 2, 3, 4, 4, 4, 1},          {1, 2, 3, 4, 2, 1, 0},          {1, 2, 3, 1, 0, 0},
      {1, 0, 0, 0}};
  for (std::size_t i = 0; i < expected.size(); ++i) EXPECT_EQ(c.steps[i].output, expected[i]) << "step " << i + 1;
  EXPECT_EQ(c.final, IntSequence({1}));
  EXPECT_EQ(c.final_size, 1);
}

TEST(ReduceChain, TraceTableRendering) {
  auto out = reduce_chain(parse_sequence("1..10"), {4, 4, 4, 3, 3, 3, 3});
  const std::string t = render_trace(std::get<ReductionCertificate>(out));
  EXPECT_NE(t.find("  a1  a2  a3  a4  a5  a6  a7  a8  a9 a10 | m_j"), std::string::npos);
  EXPECT_NE(t.find("   1   2   3   4   5   6   4   0   0   0 |"), std::string::npos);
  EXPECT_NE(t.find("-1  -4  -3  -2 | 4"), std::string::npos);
  EXPECT_NE(t.find("final (1), size 1"), std::string::npos);
}

TEST(ReduceChain, FailsAtStepFive) {
  auto out = reduce_chain(parse_sequence("1..5"), {2, 2, 2, 2, 2});
  ASSERT_TRUE(std::holds_alternative<ChainFailure>(out));
  const auto& f = std::get<ChainFailure>(out);
  EXPECT_EQ(f.step_index, 5u);
  EXPECT_EQ(f.failure.repeated_reducer, 1);
  ASSERT_EQ(f.completed.size(), 4u);
  EXPECT_EQ(f.completed[0].output, IntSequence({1, 2, 3, 3, 3}));
  EXPECT_EQ(f.completed[1].output, IntSequence({1, 2, 3, 2, 1}));
  EXPECT_EQ(f.completed[2].output.stripped(), IntSequence({1, 2, 3}));
  EXPECT_EQ(f.completed[3].output.stripped(), IntSequence({1, 1, 1}));
}

TEST(ReduceChain, OneReductionDecrementsLastEntry) {
  for (Int d = 0; d < 20; ++d) {
    auto s = step_of(parse_sequence("1.." + std::to_string(d + 1)), 1);
    EXPECT_EQ(s.output.entries().back(), d);
  }
}

TEST(Properties, ExhaustiveWitnessesSmallSequences) {
  // every sequence with entries 1..6 and length 1..6, every m <= 6
  std::size_t failures_seen = 0;
  for (std::size_t len = 1; len <= 6; ++len) {
    std::vector<Int> v(len, 1);
    while (true) {
      const IntSequence seq(v);
      for (Int m = 1; m <= 6; ++m) {
        auto out = reduce_once(seq, m);
        if (auto* f = std::get_if<ReductionFailure>(&out)) {
          if (f->reason == FailureReason::FlatTail) ++failures_seen;
          EXPECT_EQ(props::check_witness(*f), "");
        } else {
          const auto& s = std::get<ReductionStep>(out);
          EXPECT_EQ(props::check_size_drop(s), "");
          EXPECT_EQ(props::check_adjacency(s), "");
        }
      }
      std::size_t i = 0;
      while (i < len && v[i] == 6) v[i++] = 1;
      if (i == len) break;
      ++v[i];
    }
  }
  EXPECT_GT(failures_seen, 1000u);
}

TEST(Properties, StaircaseChainsKeepTheirShape) {
  std::mt19937_64 rng(7);
  std::size_t states = 0;
  for (int trial = 0; trial < 3000; ++trial) {
    const Int d = std::uniform_int_distribution<Int>(0, 25)(rng);
    std::vector<Int> ms(std::uniform_int_distribution<std::size_t>(1, 12)(rng));
    for (auto& m : ms) m = std::uniform_int_distribution<Int>(1, 7)(rng);
    if (trial % 2 == 0) std::sort(ms.begin(), ms.end(), std::greater<>());
    ASSERT_EQ(props::check_staircase_chain(d, ms, states), "");
  }
  EXPECT_GT(states, 5000u);
}

TEST(Properties, RandomSteps) {
  std::mt19937_64 rng(11);
  for (int i = 0; i < 20000; ++i) ASSERT_EQ(props::check_random_step(rng, 12, 15, 9), "");
}

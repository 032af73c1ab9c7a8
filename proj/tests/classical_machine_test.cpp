#include "rootnot/classical_machine.hpp"

#include <algorithm>
#include <array>
#include <map>
#include <sstream>

#include <gtest/gtest.h>

#include "rootnot/classical_learner.hpp"

using namespace rootnot;

namespace {

ClassicalMachine random_machine(int k, RandomStream &rng) {
  const int n = 2 * k;
  Eigen::MatrixXd p(n, n);
  std::exponential_distribution<double> e(1.0);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) p(i, j) = e(rng);
    p.row(i) /= p.row(i).sum();
  }
  return ClassicalMachine::from_matrix(k, p);
}

void expect_row(const ClassicalMachine &m, int row, std::vector<double> want) {
  for (int j = 0; j < m.num_states(); ++j) EXPECT_NEAR(m(row, j), want[static_cast<std::size_t>(j)], 1e-15) << j;
}

}  // namespace

TEST(MachineState, EncodingPutsTargetFirst) {
  for (int k : {2, 4, 8}) {
    for (int i = 0; i < 2 * k; ++i) {
      const MachineState s = decode_state(i, k);
      EXPECT_EQ(encode_state(s, k), i);
      EXPECT_EQ(s.target, target_bit(i, k));
    }
  }
  EXPECT_EQ(encode_state({1, 0}, 4), 4);
  EXPECT_THROW(encode_state({0, 4}, 4), std::invalid_argument);
  EXPECT_THROW(decode_state(8, 4), std::invalid_argument);
}

TEST(Uniform, EntriesAreOneOverTwoK) {
  const ClassicalMachine m2 = ClassicalMachine::uniform(2);
  EXPECT_EQ(m2.num_states(), 4);
  EXPECT_TRUE((m2.matrix().array() == 0.25).all());
  const ClassicalMachine m4 = ClassicalMachine::uniform(4);
  EXPECT_TRUE((m4.matrix().array() == 0.125).all());
  for (int i = 0; i < 8; ++i) EXPECT_EQ(m4.matrix().row(i).sum(), 1.0);
  for (int k : {0, 1, 3, 5}) EXPECT_THROW(ClassicalMachine::uniform(k), std::invalid_argument);
}

TEST(Uniform, IndependentParameterCount) {
  for (int k : {2, 4, 8, 16}) {
    const std::int64_t n = 2 * k;
    EXPECT_EQ(ClassicalMachine::uniform(k).independent_parameter_count(), n * n - n);
  }
}

TEST(FromMatrix, Validation) {
  Eigen::MatrixXd p = Eigen::MatrixXd::Constant(4, 4, 0.25);
  EXPECT_NO_THROW(ClassicalMachine::from_matrix(2, p));
  EXPECT_THROW(ClassicalMachine::from_matrix(4, p), std::invalid_argument);
  p(0, 0) = 0.5;
  EXPECT_THROW(ClassicalMachine::from_matrix(2, p), std::invalid_argument);
  p(0, 0) = -0.25;
  p(0, 1) = 0.75;
  EXPECT_THROW(ClassicalMachine::from_matrix(2, p), std::invalid_argument);
}

TEST(SampleBlock, DeterministicMachineFollowsItsPath) {
  RandomStream rng = make_stream(1);
  const ClassicalMachine loop = ClassicalMachine::perfect_loop(4);
  EXPECT_EQ(loop.sample_block(0, rng), (Trajectory{0, 1, 2, 3, 4}));
  EXPECT_EQ(loop.sample_block(6, rng), (Trajectory{6, 7, 0, 1, 2}));
}

TEST(SampleBlock, UniformPairsAreUniform) {
  RandomStream rng = make_stream(2);
  const ClassicalMachine m = ClassicalMachine::uniform(2);
  std::array<int, 16> counts{};
  const int blocks = 100000;
  for (int b = 0; b < blocks; ++b) {
    const Trajectory t = m.sample_block(0, rng);
    ASSERT_EQ(t.size(), 3u);
    ASSERT_EQ(t[0], 0);
    ++counts[static_cast<std::size_t>(4 * t[1] + t[2])];
  }
  for (int c : counts) EXPECT_NEAR(static_cast<double>(c) / blocks, 1.0 / 16, 0.01);
}

TEST(SampleBlock, SameSeedSameTrajectory) {
  RandomStream a = make_stream(3), b = make_stream(3);
  RandomStream setup = make_stream(99);
  const ClassicalMachine m = random_machine(4, setup);
  for (int t = 0; t < 50; ++t) EXPECT_EQ(m.sample_block(t % 8, a), m.sample_block(t % 8, b));
}

TEST(Reinforce, SingleEdge) {
  ClassicalMachine m = ClassicalMachine::uniform(2);
  const Trajectory t{0, 0};
  m.reinforce(t, 0.25);
  expect_row(m, 0, {0.4, 0.2, 0.2, 0.2});
  for (int i = 1; i < 4; ++i) expect_row(m, i, {0.25, 0.25, 0.25, 0.25});
}

TEST(Reinforce, RepeatedEdgeCountsEveryOccurrence) {
  ClassicalMachine m = ClassicalMachine::uniform(2);
  const Trajectory t{0, 0, 0};
  m.reinforce(t, 0.25);
  expect_row(m, 0, {0.5, 1.0 / 6, 1.0 / 6, 1.0 / 6});
}

TEST(Reinforce, ZeroGainIsANoOp) {
  RandomStream rng = make_stream(4);
  ClassicalMachine m = random_machine(2, rng);
  const Eigen::MatrixXd before = m.matrix();
  const Trajectory t{0, 1, 3};
  m.reinforce(t, 0.0);
  m.punish(t, 0.0);
  EXPECT_EQ(m.matrix(), before);
}

TEST(Punish, ClampThenRenormalize) {
  ClassicalMachine m = ClassicalMachine::uniform(2);
  const Trajectory t{0, 0};
  m.punish(t, 0.25);
  expect_row(m, 0, {0.0, 1.0 / 3, 1.0 / 3, 1.0 / 3});
}

TEST(Punish, DeadRowIsReset) {
  Eigen::MatrixXd p = Eigen::MatrixXd::Constant(4, 4, 0.25);
  p.row(0) << 1.0, 0.0, 0.0, 0.0;
  ClassicalMachine m = ClassicalMachine::from_matrix(2, p);
  const Trajectory t{0, 0};
  m.punish(t, 1.0);
  expect_row(m, 0, {0.25, 0.25, 0.25, 0.25});
}

TEST(Updates, TouchOnlySourceRows) {
  RandomStream rng = make_stream(5);
  for (int trial = 0; trial < 200; ++trial) {
    ClassicalMachine m = random_machine(4, rng);
    const Eigen::MatrixXd before = m.matrix();
    const Trajectory t = m.sample_block(static_cast<int>(rng() % 8), rng);
    if (trial % 2) {
      m.reinforce(t, 0.3);
    } else {
      m.punish(t, 0.3);
    }
    for (int i = 0; i < 8; ++i) {
      const bool source = std::find(t.begin(), t.end() - 1, i) != t.end() - 1;
      if (!source) EXPECT_EQ(m.matrix().row(i), before.row(i)) << i;
    }
    EXPECT_TRUE(m.is_row_stochastic());
  }
}

TEST(Updates, OrderOfEdgesWithinARowDoesNotMatter) {
  // Reinforcing a trajectory equals adding each occurrence to a pre-normalized
  // row in any order.
  RandomStream rng = make_stream(6);
  for (int trial = 0; trial < 100; ++trial) {
    ClassicalMachine m = random_machine(4, rng);
    const Trajectory t = m.sample_block(static_cast<int>(rng() % 8), rng);
    Eigen::MatrixXd manual = m.matrix();
    std::vector<std::pair<int, int>> edges;
    for (std::size_t r = 1; r < t.size(); ++r) edges.emplace_back(t[r - 1], t[r]);
    std::reverse(edges.begin(), edges.end());
    std::vector<bool> touched(8, false);
    for (auto [from, to] : edges) {
      manual(from, to) += 0.2;
      touched[static_cast<std::size_t>(from)] = true;
    }
    for (int i = 0; i < 8; ++i) {
      if (touched[static_cast<std::size_t>(i)]) manual.row(i) /= manual.row(i).sum();
    }
    m.reinforce(t, 0.2);
    EXPECT_LT((m.matrix() - manual).cwiseAbs().maxCoeff(), 1e-12);
  }
}

TEST(Updates, DriftStaysSmallOverAMillionUpdates) {
  RandomStream rng = make_stream(7);
  ClassicalMachine m = ClassicalMachine::uniform(4);
  int state = 0;
  for (int u = 0; u < 1000000; ++u) {
    const Trajectory t = m.sample_block(state, rng);
    if (target_bit(t.back(), 4) != target_bit(t.front(), 4)) {
      m.reinforce(t, 0.75);
      state = t.back();
    } else {
      m.punish(t, 0.25);
      state = fair_bit(rng) ? 4 : 0;
    }
  }
  EXPECT_LT(m.max_row_sum_deviation(), 1e-6);
  EXPECT_TRUE((m.matrix().array() >= 0.0).all());
}

TEST(Csv, RoundTripIsExact) {
  RandomStream rng = make_stream(8);
  const ClassicalMachine m = random_machine(4, rng);
  std::ostringstream out;
  m.write_csv(out);
  std::istringstream in(out.str());
  const ClassicalMachine back = ClassicalMachine::read_csv(in);
  EXPECT_EQ(back.k(), 4);
  EXPECT_EQ(back.matrix(), m.matrix());
  std::ostringstream again;
  back.write_csv(again);
  EXPECT_EQ(again.str(), out.str());
}

TEST(Csv, RejectsMalformedInput) {
  std::istringstream ragged("0.5,0.5\n1,0,0\n");
  EXPECT_THROW(ClassicalMachine::read_csv(ragged), std::invalid_argument);
  std::istringstream words("a,b,c,d\n");
  EXPECT_THROW(ClassicalMachine::read_csv(words), std::invalid_argument);
}

TEST(LearnClassical, PerfectLoopStaysPerfect) {
  ClassicalConfig c;
  c.k = 4;
  c.trial_budget = 2000;
  c.log_interval = 100;
  c.merit_orders = {1, 5, 10};
  c.gains = {0.75, 0.75};
  c.initial_machine = ClassicalMachine::perfect_loop(4);
  ClassicalMachine final_machine = ClassicalMachine::uniform(4);
  std::vector<BlockRecord> trace;
  const MeritSeries s = learn_classical(c, 1, &final_machine, &trace);
  for (const auto &b : trace) EXPECT_TRUE(b.success);
  for (const auto &p : s.points) {
    for (double v : p.values) EXPECT_NEAR(v, 1.0, 1e-9);
  }
  EXPECT_LT((final_machine.matrix() - ClassicalMachine::perfect_loop(4).matrix()).cwiseAbs().maxCoeff(), 1e-9);
}

TEST(LearnClassical, EpisodeSemantics) {
  ClassicalConfig c;
  c.k = 2;
  c.trial_budget = 5000;
  std::vector<BlockRecord> trace;
  learn_classical(c, 9, nullptr, &trace);
  ASSERT_EQ(trace.size(), 5000u);
  for (std::size_t i = 0; i < trace.size(); ++i) {
    const Trajectory &t = trace[i].trajectory;
    ASSERT_EQ(t.size(), 3u);
    EXPECT_EQ(trace[i].success, target_bit(t.back(), 2) != target_bit(t.front(), 2));
    if (i == 0 || !trace[i - 1].success) {
      // Fresh episode: auxiliary bits are zero.
      EXPECT_TRUE(t.front() == 0 || t.front() == 2) << i;
    } else {
      EXPECT_EQ(t.front(), trace[i - 1].trajectory.back()) << i;
    }
  }
}

TEST(LearnClassical, DeterministicPerSeed) {
  ClassicalConfig c;
  c.k = 4;
  c.trial_budget = 3000;
  EXPECT_EQ(learn_classical(c, 5), learn_classical(c, 5));
}

TEST(LearnClassical, RejectsInvalidConfig) {
  ClassicalConfig c;
  c.k = 3;
  EXPECT_THROW(learn_classical(c, 1), std::invalid_argument);
  c.k = 2;
  c.gains = {1.5, 0.1};
  EXPECT_THROW(learn_classical(c, 1), std::invalid_argument);
  c.gains = {0.1, 0.1};
  c.initial_machine = ClassicalMachine::uniform(4);
  EXPECT_THROW(learn_classical(c, 1), std::invalid_argument);
}

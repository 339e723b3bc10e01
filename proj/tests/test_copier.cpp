// Copyright 2026 The copysim Authors
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

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "copysim/copier.hpp"
#include "copysim/measurement.hpp"
#include "oracles.hpp"
#include "error_kind.hpp"

namespace copysim {
namespace {

using cd = std::complex<double>;

using testing::kind_of;

StateVector basis(const SubsystemLayout& l, std::initializer_list<LocalAssignment> a) {
  return make_state(l, a);
}

std::vector<std::string> labels(const char* prefix, int n) {
  std::vector<std::string> out;
  for (int i = 1; i <= n; ++i) out.push_back(prefix + std::to_string(i));
  return out;
}

TEST(Copier, QubitRowsMatchTruthTable) {
  const auto l = SubsystemLayout::qubits({"A", "B"});
  const auto u = build_copier({"A", "B"}, l);
  // |source>|medium> -> |source>|record>, medium 0 = pm, 1 = um.
  const std::size_t expected[4] = {0, 1, 3, 2};
  for (std::size_t in = 0; in < 4; ++in) {
    for (std::size_t out = 0; out < 4; ++out) {
      EXPECT_EQ(u.matrix()(static_cast<Eigen::Index>(out), static_cast<Eigen::Index>(in)),
                cd(out == expected[in] ? 1.0 : 0.0));
    }
  }
  auto s = apply_unitary(basis(l, {{"A", std::string("1")}, {"B", std::string("pm")}}), u);
  EXPECT_EQ(s[3], cd(1.0));
  s = apply_unitary(basis(l, {{"A", std::string("1")}, {"B", std::string("um")}}), u);
  EXPECT_EQ(s[2], cd(1.0));
}

TEST(Copier, QutritExample) {
  SubsystemLayout l({{"A", 3, {}}, {"B", 3, {}}});
  auto s = apply_unitary(basis(l, {{"A", std::string("2")}, {"B", std::string("1")}}),
                         build_copier({"A", "B"}, l));
  EXPECT_EQ(s[2 * 3 + 0], cd(1.0));
}

TEST(Copier, UnitaryForSeveralDimensions) {
  for (std::size_t d : {2u, 3u, 4u, 5u}) {
    SubsystemLayout l({{"A", d, {}}, {"B", d, {}}});
    const auto op = build_copier({"A", "B"}, l);
    const auto& m = op.matrix();
    const auto n = static_cast<Eigen::Index>(d * d);
    EXPECT_LT((m.adjoint() * m - Eigen::MatrixXcd::Identity(n, n)).cwiseAbs().maxCoeff(), 1e-10);
  }
}

TEST(Copier, MatrixMatchesRuleOracle) {
  for (std::size_t d : {2u, 3u, 4u}) {
    SubsystemLayout l({{"A", d, {}}, {"B", d, {}}});
    std::vector<std::vector<std::size_t>> perms = {{}};
    std::vector<std::size_t> rev(d);
    for (std::size_t i = 0; i < d; ++i) rev[i] = d - 1 - i;
    perms.push_back(rev);
    for (std::size_t pm = 0; pm < d; ++pm) {
      for (const auto& perm : perms) {
        CopierSpec spec{"A", "B", {}, pm, std::nullopt};
        if (!perm.empty()) spec.permutation = perm;
        const auto op = build_copier(spec, l);
    const auto& m = op.matrix();
        for (std::size_t i = 0; i < d; ++i) {
          for (std::size_t t = 0; t < d; ++t) {
            auto [oi, ot] = oracle::copier_rule(i, t, d, pm, perm);
            EXPECT_EQ(m(static_cast<Eigen::Index>(oi * d + ot), static_cast<Eigen::Index>(i * d + t)), cd(1.0))
                << "d=" << d << " pm=" << pm << " i=" << i << " t=" << t;
          }
        }
      }
    }
  }
}

TEST(Copier, SourceBasisReordersSymbols) {
  // Listing the source symbols as (1, 0) writes the complement into the record.
  const auto l = SubsystemLayout::qubits({"A", "B"});
  auto s = basis(l, {{"A", std::string("0")}, {"B", std::string("pm")}});
  auto out = apply_copy(s, {"A", "B", {"1", "0"}, 0, std::nullopt});
  EXPECT_EQ(out.state[1], cd(1.0));
}

TEST(Copier, SpecErrors) {
  const auto l = SubsystemLayout::qubits({"A", "B"});
  SubsystemLayout mixed({{"A", 2, {}}, {"C", 3, {}}});
  EXPECT_EQ(kind_of([&] { build_copier({"A", "A"}, l); }), ErrorKind::kDuplicateLabel);
  EXPECT_EQ(kind_of([&] { build_copier({"A", "C"}, mixed); }), ErrorKind::kDimensionMismatch);
  EXPECT_EQ(kind_of([&] { build_copier({"A", "Z"}, l); }), ErrorKind::kUnknownLabel);
  EXPECT_EQ(kind_of([&] { build_copier({"A", "B", {}, 0, std::vector<std::size_t>{0, 0}}, l); }),
            ErrorKind::kNonBijectivePermutation);
  EXPECT_EQ(kind_of([&] { build_copier({"A", "B", {}, 2, std::nullopt}, l); }), ErrorKind::kDimensionMismatch);
}

TEST(ApplyCopy, RecordsMediumCondition) {
  const auto l = SubsystemLayout::qubits({"A", "B"});
  auto pure = apply_copy(basis(l, {{"A", std::string("1")}, {"B", std::string("pm")}}), {"A", "B"});
  ASSERT_EQ(pure.log.size(), 1u);
  EXPECT_EQ(pure.log.records[0].seq, 1u);
  EXPECT_FALSE(pure.log.records[0].convention_inverted());

  auto inv = apply_copy(basis(l, {{"A", std::string("1")}, {"B", std::string("um")}}), {"A", "B"});
  EXPECT_TRUE(inv.log.records[0].convention_inverted());
  EXPECT_EQ(inv.state[2], cd(1.0));

  auto partial = apply_copy(basis(l, {{"A", std::string("0")}, {"B", std::vector<cd>{1, 1}}}), {"A", "B"});
  EXPECT_EQ(partial.log.records[0].medium, MediumCondition::kPartial);
}

TEST(MultiCopy, SourceModeProducesGhzState) {
  std::vector<std::string> names{"A"};
  for (auto& b : labels("B", 3)) names.push_back(b);
  const auto l = SubsystemLayout::qubits(names);
  std::vector<LocalAssignment> init{{"A", std::vector<cd>{std::sqrt(0.3), std::sqrt(0.7)}}};
  for (std::size_t i = 1; i < names.size(); ++i) init.push_back({names[i], std::string("pm")});
  auto s = make_state(l, init);
  const auto targets = labels("B", 3);
  auto out = multi_copy(s, "A", targets, ChainMode::kFromSource);
  EXPECT_EQ(out.log.size(), 3u);
  EXPECT_NEAR(out.state[0].real(), std::sqrt(0.3), 1e-12);
  EXPECT_NEAR(out.state[15].real(), std::sqrt(0.7), 1e-12);
  double rest = 0;
  for (std::size_t k = 1; k < 15; ++k) rest += std::norm(out.state[k]);
  EXPECT_EQ(rest, 0.0);
}

TEST(MultiCopy, ChainEqualsSourceModeForQubits) {
  std::mt19937_64 gen(31);
  for (int n = 1; n <= 4; ++n) {
    std::vector<std::string> names{"A"};
    for (auto& b : labels("B", n)) names.push_back(b);
    const auto l = SubsystemLayout::qubits(names);
    std::vector<LocalAssignment> init{{"A", oracle::random_amps(2, gen)}};
    for (std::size_t i = 1; i < names.size(); ++i) init.push_back({names[i], std::string("pm")});
    auto s = make_state(l, init);
    const auto targets = labels("B", n);
    auto a = multi_copy(s, "A", targets, ChainMode::kFromSource);
    auto b = multi_copy(s, "A", targets, ChainMode::kChained);
    EXPECT_LT((a.state.amps() - b.state.amps()).cwiseAbs().maxCoeff(), 1e-12) << "n=" << n;
  }
}

TEST(MultiCopy, RequiresPreparedTargets) {
  const auto l = SubsystemLayout::qubits({"A", "B", "C"});
  auto s = basis(l, {{"A", std::string("1")}, {"B", std::string("pm")}, {"C", std::string("um")}});
  const std::vector<std::string> targets{"B", "C"};
  EXPECT_EQ(kind_of([&] { multi_copy(s, "A", targets, ChainMode::kFromSource); }),
            ErrorKind::kTargetNotPrepared);
}

TEST(NoCloning, CopierOutputVersusNaiveClone) {
  const auto a = SubsystemLayout::qubits({"A"});
  const auto b = SubsystemLayout::qubits({"B"});
  for (int k = 0; k <= 16; ++k) {
    const double theta = k * std::numbers::pi / 32;
    const std::vector<cd> amps{std::cos(theta), std::sin(theta)};
    auto psi_a = make_state(a, amps);
    auto psi_b = make_state(b, amps);
    auto copied = apply_copy(tensor(psi_a, make_state(b, {cd(1), cd(0)})), {"A", "B"}).state;
    const double c = std::cos(theta), s = std::sin(theta);
    const double expected = std::pow(c * c * c + s * s * s, 2);
    EXPECT_NEAR(fidelity(copied, tensor(psi_a, psi_b)), expected, 1e-12) << "theta=" << theta;
  }
}

TEST(Erase, LifoRestoresInitialState) {
  std::mt19937_64 gen(4);
  const auto l = SubsystemLayout::qubits({"A", "B", "C"});
  auto s = make_state(l, {{"A", oracle::random_amps(2, gen)}, {"B", std::string("pm")}, {"C", std::string("pm")}});
  auto c1 = apply_copy(s, {"A", "B"});
  auto c2 = apply_copy(c1.state, {"A", "C"}, c1.log);
  auto back = erase_all(c2.state, c2.log);
  EXPECT_TRUE(back.log.empty());
  EXPECT_GE(fidelity(back.state, s), 1.0 - 1e-10);

  const std::uint64_t newest[] = {2};
  auto one = erase_copies(c2.state, c2.log, newest);
  EXPECT_EQ(one.log.size(), 1u);
  EXPECT_GE(fidelity(one.state, c1.state), 1.0 - 1e-10);
}

TEST(Erase, OutOfOrderIsRejected) {
  const auto l = SubsystemLayout::qubits({"A", "B", "C"});
  auto s = basis(l, {{"A", std::vector<cd>{1, 1}}, {"B", std::string("pm")}, {"C", std::string("pm")}});
  auto c1 = apply_copy(s, {"A", "B"});
  auto c2 = apply_copy(c1.state, {"B", "C"}, c1.log);
  const std::uint64_t oldest[] = {1};
  EXPECT_EQ(kind_of([&] { erase_copies(c2.state, c2.log, oldest); }), ErrorKind::kNonSuffixErasure);
  const std::uint64_t missing[] = {9};
  EXPECT_EQ(kind_of([&] { erase_copies(c2.state, c2.log, missing); }), ErrorKind::kUnknownRecord);
}

TEST(Erase, EscapedRecordCannotBeRevoked) {
  const auto l = SubsystemLayout::qubits({"A", "B"});
  auto s = basis(l, {{"A", std::vector<cd>{1, 1}}, {"B", std::string("pm")}});
  auto c = apply_copy(s, {"A", "B"});
  auto log = mark_escaped(c.log, "B");
  EXPECT_TRUE(log.records[0].escaped);
  EXPECT_EQ(kind_of([&] { erase_all(c.state, log); }), ErrorKind::kEscapedSubsystem);
}

TEST(SharedReality, AllRecordsAgreeInEveryBranch) {
  const auto names = std::vector<std::string>{"A", "B1", "B2", "B3"};
  const auto l = SubsystemLayout::qubits(names);
  auto s = make_state(l, {{"A", std::vector<cd>{std::sqrt(0.4), std::sqrt(0.6)}},
                          {"B1", std::string("pm")}, {"B2", std::string("pm")}, {"B3", std::string("pm")}});
  const std::vector<std::string> targets{"B1", "B2", "B3"};
  auto ghz = multi_copy(s, "A", targets, ChainMode::kFromSource).state;
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    Rng rng(seed);
    auto first = measure(ghz, "B2", SymbolBasis{}, rng);
    auto cur = first.post_state;
    for (const auto& lab : {"A", "B1", "B3"}) {
      auto o = measure(cur, lab, SymbolBasis{}, rng);
      EXPECT_EQ(o.result, first.result);
      EXPECT_NEAR(o.probability, 1.0, 1e-12);
      cur = o.post_state;
    }
  }
}

}  // namespace
}  // namespace copysim

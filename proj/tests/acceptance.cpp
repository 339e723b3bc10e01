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

// Acceptance gate: one line per criterion, nonzero exit if any fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "copysim/cli.hpp"
#include "copysim/copier.hpp"
#include "copysim/infometrics.hpp"
#include "copysim/measurement.hpp"
#include "copysim/ngram.hpp"
#include "copysim/perspective.hpp"
#include "copysim/scenario.hpp"
#include "oracles.hpp"

namespace {

using namespace copysim;
using cd = std::complex<double>;
constexpr double kPi = std::numbers::pi;

// Collects failed sub-checks of one criterion.
class Check {
 public:
  void expect(bool ok, const std::string& what) {
    if (!ok) failures_.push_back(what);
  }
  void near(double got, double want, double tol, const std::string& what) {
    char buf[160];
    std::snprintf(buf, sizeof buf, "%s: got %.12g, want %.12g (tol %g)", what.c_str(), got, want, tol);
    expect(std::abs(got - want) <= tol, buf);
  }
  const std::vector<std::string>& failures() const { return failures_; }

 private:
  std::vector<std::string> failures_;
};

std::string fmt(const char* f, double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, x);
  return buf;
}

Scenario preset(std::string_view name) { return parse_scenario(*find_preset(name)); }

StateVector pair_state(double p0) {
  return make_state(SubsystemLayout::qubits({"A", "B1"}), {cd(std::sqrt(p0)), 0, 0, cd(std::sqrt(1 - p0))});
}

// ---------------------------------------------------------------------------

void copier_correctness(Check& c) {
  const auto l = SubsystemLayout::qubits({"A", "B"});
  const auto u = build_copier({"A", "B"}, l);
  // (source, medium) -> (source, record); medium 0 is pm, 1 is um.
  const std::pair<std::size_t, std::size_t> expected[4] = {{0, 0}, {2, 3}, {1, 1}, {3, 2}};
  for (const auto& [in, out] : expected) {
    std::vector<cd> basis(4, 0.0);
    basis[in] = 1.0;
    const auto s = apply_unitary(make_state(l, basis), u);
    for (std::size_t k = 0; k < 4; ++k) {
      c.expect(s[k] == cd(k == out ? 1.0 : 0.0),
               "d=2 row |" + std::to_string(in / 2) + (in % 2 ? ">|um>" : ">|pm>") + " amplitude " +
                   std::to_string(k));
    }
  }
  for (std::size_t d : {2u, 3u, 4u}) {
    SubsystemLayout ld({{"A", d, {}}, {"B", d, {}}});
    const auto op = build_copier({"A", "B"}, ld);
    const auto n = static_cast<Eigen::Index>(d * d);
    const double err = (op.matrix().adjoint() * op.matrix() - Eigen::MatrixXcd::Identity(n, n)).cwiseAbs().maxCoeff();
    c.expect(err < 1e-10, "d=" + std::to_string(d) + " unitarity error " + fmt("%g", err));
  }
}

void no_cloning(Check& c) {
  const auto a = SubsystemLayout::qubits({"A"});
  const auto b = SubsystemLayout::qubits({"B"});
  for (const auto& [theta, want] : std::vector<std::pair<double, double>>{{kPi / 4, 0.5}, {0.0, 1.0}, {kPi / 2, 1.0}}) {
    const std::vector<cd> amps{std::cos(theta), std::sin(theta)};
    const auto psi_a = make_state(a, amps);
    const auto psi_b = make_state(b, amps);
    const auto copied = apply_copy(tensor(psi_a, make_state(b, {cd(1), cd(0)})), {"A", "B"}).state;
    c.near(fidelity(copied, tensor(psi_a, psi_b)), want, 1e-10, "fidelity at theta=" + fmt("%.6f", theta));
  }
}

void shared_reality(Check& c) {
  std::string doc = "subsystem A dim=2\n";
  std::string targets, init = "init A=(" + fmt("%.17g", std::sqrt(0.3)) + "," + fmt("%.17g", std::sqrt(0.7)) + ")";
  for (int i = 1; i <= 10; ++i) {
    const auto b = "B" + std::to_string(i);
    doc += "subsystem " + b + " dim=2\n";
    targets += (i > 1 ? "," : "") + b;
    init += " " + b + "=pm";
  }
  doc += init + "\ntrials 10000\nseed 20261018\nmulticopy A -> " + targets + "\n";
  // Records are read in a scrambled order, the source last.
  for (int i : {7, 2, 10, 5, 1, 9, 4, 6, 3, 8}) doc += "measure B" + std::to_string(i) + "\n";
  doc += "measure A\n";
  const auto report = run_scenario(parse_scenario(doc));
  std::size_t zeros = 0, discordant = 0, bad = 0;
  for (const auto& t : report.trials) {
    if (t.failure || t.outcomes.size() != 11) {
      ++bad;
      continue;
    }
    const bool same = std::all_of(t.outcomes.begin(), t.outcomes.end(),
                                  [&](const MeasurementRow& r) { return r.outcome == t.outcomes[0].outcome; });
    discordant += !same;
    zeros += t.outcomes[0].outcome == 0;
  }
  c.expect(report.trials.size() == 10000 && bad == 0, "trial count / failures");
  c.expect(discordant == 0, std::to_string(discordant) + " discordant trials");
  const double f = static_cast<double>(zeros) / 10000.0;
  c.expect(f >= 0.286 && f <= 0.314, "all-zeros frequency " + fmt("%.4f", f));
}

void decoherence(Check& c) {
  for (double p : {0.1, 0.3, 0.5, 0.8}) {
    const auto l = SubsystemLayout::qubits({"A", "E1", "E2", "E3"});
    auto s = make_state(l, {{"A", std::vector<cd>{std::sqrt(p), cd(0, std::sqrt(1 - p))}},
                            {"E1", std::string("pm")}, {"E2", std::string("pm")}, {"E3", std::string("pm")}});
    CopyResult r{s, {}};
    const std::vector<CopierSpec> copies{{"A", "E1"}, {"E1", "E2"}, {"A", "E3"}};
    for (const auto& spec : copies) {
      r = apply_copy(r.state, spec, r.log);
      const auto rho = partial_trace(r.state, {"A"});
      const std::string at = "p=" + fmt("%.2f", p) + " after copy " + spec.source + "->" + spec.target;
      c.expect(std::abs(rho(0, 1)) < 1e-12 && std::abs(rho(1, 0)) < 1e-12, at + " off-diagonal");
      c.near(rho(0, 0).real(), p, 1e-10, at + " rho00");
      c.near(rho(1, 1).real(), 1 - p, 1e-10, at + " rho11");
    }
  }
}

void eraser(Check& c) {
  std::mt19937_64 gen(6);
  const auto l = SubsystemLayout::qubits({"A", "B1", "B2", "B3"});
  for (int trial = 0; trial < 10; ++trial) {
    auto s = make_state(l, {{"A", oracle::random_amps(2, gen)}, {"B1", std::string("pm")},
                            {"B2", std::string("pm")}, {"B3", std::string("pm")}});
    CopyResult r{s, {}};
    r = apply_copy(r.state, {"A", "B1"}, r.log);
    r = apply_copy(r.state, {"B1", "B2"}, r.log);
    r = apply_copy(r.state, {"A", "B3"}, r.log);
    const auto back = erase_all(r.state, r.log);
    c.expect(fidelity(back.state, s) >= 1 - 1e-10, "LIFO erase fidelity " + fmt("%.15f", fidelity(back.state, s)));
    for (const auto& escaped : {"B1", "B2", "B3"}) {
      const auto log = mark_escaped(r.log, escaped);
      ErrorKind kind = ErrorKind::kSyntax;
      try {
        erase_all(r.state, log);
      } catch (const Error& e) {
        kind = e.kind();
      }
      c.expect(kind == ErrorKind::kEscapedSubsystem, std::string("erase with ") + escaped + " escaped");
      c.expect(event_status(log) == EventStatus::kFixedEvent, std::string("event status with ") + escaped + " escaped");
    }
  }
  for (const auto& t : run_scenario(preset("eraser")).trials) {
    c.expect(!t.failure && t.metrics.size() == 4 && t.metrics[3].value >= 1 - 1e-10, "eraser preset fidelity");
  }
  for (const auto& t : run_scenario(preset("eraser_escaped")).trials) {
    c.expect(t.failure && t.failure->kind == ErrorKind::kEscapedSubsystem, "eraser_escaped abort kind");
    c.expect(t.event == EventStatus::kFixedEvent, "eraser_escaped event status");
  }
}

void readout_ambiguity(Check& c) {
  const auto bell = pair_state(0.5);
  const Eigen::Vector2d uniform(0.5, 0.5);
  const auto info = [&](double theta) {
    return transinformation(readout_channel(bell, "A", "B1", theta).joint(uniform));
  };
  c.near(info(0.0), 1.0, 1e-9, "theta=0");
  c.near(info(kPi / 2), 0.0, 1e-9, "theta=pi/2");
  double prev = info(0.0);
  for (int k = 1; k < 16; ++k) {
    const double theta = k * (kPi / 2) / 15;
    const double cur = info(theta);
    c.expect(cur < prev, "not strictly decreasing at theta=" + fmt("%.6f", theta));
    prev = cur;
  }
}

// Exact joint outcome distribution of sequential symbol-basis measurements in
// `order`, by branching over every outcome.
void enumerate(const StateVector& s, const std::vector<std::string>& order, std::size_t depth, double weight,
               std::vector<std::size_t>& digits, std::map<std::vector<std::size_t>, double>& joint) {
  if (depth == order.size()) {
    joint[digits] += weight;
    return;
  }
  const auto p = outcome_probabilities(s, order[depth], SymbolBasis{});
  const std::size_t pos = s.layout().position(order[depth]);
  for (std::size_t k = 0; k < p.size(); ++k) {
    if (p[k] < 1e-14) continue;
    digits[pos] = k;
    enumerate(project(s, order[depth], SymbolBasis{}, k), order, depth + 1, weight * p[k], digits, joint);
  }
}

void border_invariance(Check& c) {
  const auto sc = preset("detector_chain");
  for (double p : {0.5, 0.3}) {
    auto init = p == 0.5 ? sc.initial_state() : [&] {
      std::vector<LocalAssignment> a{{"e", std::vector<cd>{std::sqrt(p), std::sqrt(1 - p)}}};
      for (const auto& lab : sc.layout.labels()) {
        if (lab != "e") a.push_back({lab, std::string("pm")});
      }
      return make_state(sc.layout, a);
    }();
    const std::vector<std::string> photons{"f1", "f2", "f3", "f4"};
    auto chain = multi_copy(init, "e", photons, ChainMode::kFromSource);
    const auto s = premeasure(chain.state, "f2", "d", chain.log).state;
    const std::string tag = "p=" + fmt("%.1f", p) + " ";

    // Perspective about the electron: detector record versus each photon record.
    for (std::size_t k = 0; k < 2; ++k) {
      const auto ref = perspective_state(s, Observer::reading("detector", {{"d", k}}), {"e"});
      for (const auto& f : photons) {
        const auto other = perspective_state(s, Observer::reading("holder", {{f, k}}), {"e"});
        const double diff = (ref.elems() - other.elems()).cwiseAbs().maxCoeff();
        c.expect(diff < 1e-10, tag + "perspective d vs " + f + " outcome " + std::to_string(k) + " diff " + fmt("%g", diff));
      }
    }

    // Every one of the 720 measurement orders yields the Born joint distribution.
    std::map<std::vector<std::size_t>, double> born;
    for (std::size_t i = 0; i < s.dim(); ++i) {
      if (std::norm(s[i]) > 1e-14) born[s.layout().digits(i)] = std::norm(s[i]);
    }
    auto order = s.layout().labels();
    std::sort(order.begin(), order.end());
    std::size_t orders = 0;
    double worst = 0.0;
    do {
      std::map<std::vector<std::size_t>, double> joint;
      std::vector<std::size_t> digits(order.size(), 0);
      enumerate(s, order, 0, 1.0, digits, joint);
      ++orders;
      bool same_support = joint.size() == born.size();
      for (const auto& [key, prob] : born) {
        const auto it = joint.find(key);
        if (it == joint.end()) {
          same_support = false;
          continue;
        }
        worst = std::max(worst, std::abs(it->second - prob));
      }
      c.expect(same_support, tag + "support differs for an order");
    } while (std::next_permutation(order.begin(), order.end()));
    c.expect(orders == 720, tag + "enumerated " + std::to_string(orders) + " orders");
    c.expect(worst < 1e-10, tag + "max joint deviation " + fmt("%g", worst));
  }
}

void quantum_mutual_info(Check& c) {
  for (double p : {0.25, 0.5, 0.75}) {
    const auto s = pair_state(p);
    const auto& l = s.layout();
    const auto h = [&](std::set<std::string> keep) {
      return oracle::entropy_bits(oracle::hermitian_eigenvalues(oracle::partial_trace_sum(l, s.amps(), keep)));
    };
    const double oracle_qmi = h({"A"}) + h({"B1"}) - h({"A", "B1"});
    const double got = quantum_mutual_information(s, {"A"}, {"B1"});
    c.near(got, 2 * oracle::h2(p), 1e-8, "p=" + fmt("%.2f", p) + " vs 2H");
    c.near(got, oracle_qmi, 1e-8, "p=" + fmt("%.2f", p) + " vs partial-trace oracle");
  }
}

void subjective_entropy(Check& c) {
  const auto corpus = decode_text("ababab", Encoding::kUtf8);
  const double mem = memorized_surprisal(corpus, corpus);
  c.expect(mem == 0.0, "memorized surprisal " + fmt("%.17g", mem));
  c.near(observer_surprisal(build_ngram(corpus, 0), corpus), 1.0, 1e-10, "order-0 surprisal");
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

void reproducibility(Check& c) {
  namespace fs = std::filesystem;
  const auto dir = fs::temp_directory_path() / "copysim_acceptance";
  fs::create_directories(dir);
  const auto names = preset_names();
  c.expect(!names.empty(), "no presets shipped");
  for (const auto& name : names) {
    std::string files[2][2];
    for (int run = 0; run < 2; ++run) {
      const auto out = (dir / (name + std::to_string(run) + ".csv")).string();
      const std::vector<std::string> args{"copysim", "--preset", name, "--out", out};
      std::vector<const char*> argv;
      for (const auto& a : args) argv.push_back(a.c_str());
      std::ostringstream sink, err;
      const int status = cli::run(static_cast<int>(argv.size()), argv.data(), sink, err);
      c.expect(status == cli::kExitOk, name + " exit status " + std::to_string(status) + ": " + err.str());
      files[run][0] = slurp(out);
      files[run][1] = slurp(cli::default_metrics_path(out));
    }
    c.expect(!files[0][0].empty() && files[0][0] == files[1][0], name + " outcome CSV differs");
    c.expect(!files[0][1].empty() && files[0][1] == files[1][1], name + " metrics CSV differs");
  }
  fs::remove_all(dir);
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<void(Check&)>>> criteria{
      {"copier truth table and unitarity", copier_correctness},
      {"no-cloning witness", no_cloning},
      {"shared reality over 10 copies", shared_reality},
      {"decoherence of the source", decoherence},
      {"eraser and escaped records", eraser},
      {"readout ambiguity", readout_ambiguity},
      {"border invariance", border_invariance},
      {"quantum mutual information", quantum_mutual_info},
      {"subjective entropy of a text", subjective_entropy},
      {"preset reproducibility", reproducibility},
  };
  int failed = 0, index = 0;
  for (const auto& [name, fn] : criteria) {
    ++index;
    Check c;
    const auto start = std::chrono::steady_clock::now();
    try {
      fn(c);
    } catch (const std::exception& e) {
      c.expect(false, std::string("exception: ") + e.what());
    }
    const auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start);
    const bool ok = c.failures().empty();
    failed += !ok;
    std::printf("[%s] %2d %s (%lld ms)\n", ok ? "PASS" : "FAIL", index, name,
                static_cast<long long>(ms.count()));
    for (std::size_t i = 0; i < c.failures().size() && i < 10; ++i) std::printf("       %s\n", c.failures()[i].c_str());
  }
  std::printf("%d/%zu criteria passed\n", index - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}

// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any fails.

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "redcalc/anticipatory.hpp"
#include "redcalc/multivariate.hpp"
#include "redcalc/structure.hpp"
#include "support/fixtures.hpp"
#include "support/oracles.hpp"

using namespace redcalc;
namespace fs = std::filesystem;

namespace {

struct Check {
  bool ok = true;
  std::string why;
  void require(bool cond, const std::string& what) {
    if (!cond && ok) {
      ok = false;
      why = what;
    }
  }
};

fs::path scratch() {
  const auto dir = fs::temp_directory_path() / "redcalc_acceptance";
  fs::create_directories(dir);
  return dir;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

// Runs the installed binary with stdout sent to `out`; returns its exit status.
int run_cli(const std::string& args, const fs::path& out) {
  const std::string cmd = std::string("\"") + REDCALC_CLI_PATH + "\" " + args + " > \"" + out.string() + "\"";
  return std::system(cmd.c_str());
}

struct CsvRow {
  double a;
  double x;
  std::string x_text;
};

std::vector<CsvRow> read_scan(const fs::path& p) {
  std::ifstream in(p);
  std::string line;
  std::getline(in, line);
  std::vector<CsvRow> rows;
  while (std::getline(in, line)) {
    const auto comma = line.find(',');
    rows.push_back({std::stod(line.substr(0, comma)), std::stod(line.substr(comma + 1)), line.substr(comma + 1)});
  }
  return rows;
}

std::string fixture(const std::string& name) { return std::string(REDCALC_FIXTURE_DIR) + "/" + name; }

Check xor_synergy() {
  Check c;
  const auto d = fixture::xor_triple();
  const auto lat = entropy_lattice(d);
  const double t = mutual_information(lat, lat.full_set());
  const double r = mutual_redundancy(lat).mutual_redundancy;
  const double oracle = interaction_info_oracle(d);
  c.require(std::abs(t + 1.0) <= 1e-9, "T_123 != -1");
  c.require(std::abs(r + 1.0) <= 1e-9, "R_3 != -1");
  c.require(std::abs(oracle - t) <= 1e-9, "lattice and oracle disagree");
  return c;
}

Check oracle_equivalence() {
  Check c;
  std::mt19937_64 rng(2024);
  for (int i = 0; i < 200 && c.ok; ++i) {
    const auto d = oracle::random_distribution(rng, 3, 4);
    const auto lat = entropy_lattice(d);
    const double t = mutual_information(lat, lat.full_set());
    c.require(std::abs(t - interaction_info_oracle(d)) <= 1e-9, "sample " + std::to_string(i));
  }
  return c;
}

Check decomposition_identity() {
  Check c;
  std::mt19937_64 rng(2025);
  for (std::size_t n : {4u, 5u}) {
    for (int i = 0; i < 100 && c.ok; ++i) {
      const auto d = oracle::random_distribution(rng, n, n == 4 ? 4 : 3);
      const auto lat = entropy_lattice(d);
      const auto rep = mutual_redundancy(lat);
      const double sign = (n % 2 == 0) ? -1.0 : 1.0;
      const double t_full = mutual_information(lat, lat.full_set());
      const std::string tag = "n=" + std::to_string(n) + " sample " + std::to_string(i);
      c.require(std::abs(rep.term_negative + rep.term_interaction - sign * t_full) <= 1e-9, tag + " identity");
      c.require(rep.term_negative <= 0.0, tag + " term_negative > 0");
      c.require(rep.total_correlation >= 0.0, tag + " total correlation < 0");
    }
  }
  return c;
}

Check incursive_steady_state() {
  Check c;
  for (double a : {2.0, 5.0, 10.0, 50.0}) {
    const auto traj = trajectory(MapSpec(MapKind::incursive, a, 0.01), 200);
    c.require(std::abs(traj.states.back() - (a - 1) / a) <= 1e-6, "a=" + std::to_string(a));
  }
  return c;
}

Check recursive_periods() {
  Check c;
  const std::vector<std::pair<double, std::optional<std::size_t>>> cases{
      {2.9, 1}, {3.2, 2}, {3.5, 4}, {3.9, std::nullopt}};
  for (const auto& [a, want] : cases) {
    const auto traj = trajectory(MapSpec(MapKind::recursive, a, 0.3), 10000);
    c.require(detect_period(traj, PeriodOptions{.tol = 1e-6}) == want, "a=" + std::to_string(a));
  }
  return c;
}

Check hyper_algebra() {
  Check c;
  std::mt19937_64 rng(99);
  std::uniform_real_distribution<double> ua(4.0, 100.0), ux(0.0, 1.0);
  for (int i = 0; i < 1000 && c.ok; ++i) {
    const double a = ua(rng), x = ux(rng);
    const double p = step_hyper(x, a, Branch::plus);
    const double m = step_hyper(x, a, Branch::minus);
    const std::string tag = "sample " + std::to_string(i);
    c.require(p + m == 1.0, tag + " sum");
    c.require(std::abs(p * m - x / a) <= 1e-12, tag + " product");
    c.require(std::abs(a * p * (1 - p) - x) <= 1e-9, tag + " plus round trip");
    c.require(std::abs(a * m * (1 - m) - x) <= 1e-9, tag + " minus round trip");
  }
  return c;
}

Check scan_shapes() {
  Check c;
  const auto dir = scratch();
  // Critical slowing down near a = 3 needs a long transient to settle to 6 decimals.
  const auto rec = dir / "recursive.csv";
  c.require(run_cli("bifurcate --kind recursive --a-min 2.5 --a-max 4.0 --grid 500 --transient 100000 --samples 64",
                    rec) == 0,
            "recursive scan failed");
  std::map<double, std::set<std::string>> groups;
  for (const auto& r : read_scan(rec)) groups[r.a].insert(r.x_text);
  c.require(groups.size() == 500, "recursive grid size");
  for (const auto& [a, xs] : groups) {
    if (a < 3.0) c.require(xs.size() == 1, "recursive a=" + std::to_string(a) + " not a single value");
    if (a > 3.05) c.require(xs.size() >= 2, "recursive a=" + std::to_string(a) + " collapsed");
  }

  const auto hyp = dir / "hyper.csv";
  c.require(run_cli("--seed 7 bifurcate --kind hyper_incursive --a-min 4 --a-max 10 --grid 200", hyp) == 0,
            "hyper scan failed");
  double lo = 1.0, hi = 0.0;
  bool inside = true;
  for (const auto& r : read_scan(hyp)) {
    inside = inside && r.x >= 0.0 && r.x <= 1.0;
    if (r.a == 10.0) {
      lo = std::min(lo, r.x);
      hi = std::max(hi, r.x);
    }
  }
  c.require(inside, "hyper state outside [0,1]");
  c.require(lo < 0.1 && hi > 0.9, "hyper band at a=10 is [" + std::to_string(lo) + ", " + std::to_string(hi) + "]");

  const auto inc = dir / "incursive.csv";
  c.require(run_cli("--precision 10 bifurcate --kind incursive --a-min 1.1 --a-max 8 --grid 200", inc) == 0,
            "incursive scan failed");
  const auto rows = read_scan(inc);
  c.require(!rows.empty(), "incursive scan empty");
  for (const auto& r : rows) c.require(std::abs(r.x - (r.a - 1) / r.a) <= 1e-6, "incursive a=" + std::to_string(r.a));
  return c;
}

Check structure_contrast() {
  Check c;
  const std::vector<std::pair<std::string, std::string>> hub{{"A", "C"}, {"B", "C"}};
  const auto g = Graph::from_edges(hub, false);
  const auto sim = positional_correlation(g, SimilarityMeasure::pearson);
  const auto cos = positional_correlation(g, SimilarityMeasure::cosine);
  const auto dist = geodesic_distances(g);
  const auto a = g.index_of("A"), b = g.index_of("B");
  c.require(sim.at(a, b).has_value() && std::abs(*sim.at(a, b) - 1.0) <= 5e-7, "pearson similarity(A,B) != 1");
  c.require(cos.at(a, b).has_value() && std::abs(*cos.at(a, b) - 1.0) <= 5e-7, "cosine similarity(A,B) != 1");
  c.require(dist.at(a, b) == std::optional<std::size_t>{2}, "geodesic(A,B) != 2");

  const std::vector<std::pair<std::string, std::string>> cycle{{"a", "b"}, {"b", "c"}, {"c", "a"}};
  const std::vector<std::pair<std::string, std::string>> trans{{"a", "b"}, {"b", "c"}, {"a", "c"}};
  const auto tc = triad_census(Graph::from_edges(cycle, true));
  const auto tt = triad_census(Graph::from_edges(trans, true));
  c.require(tc.cyclic == 1 && tc.transitive == 0 && tc.other == 0, "3-cycle not cyclic");
  c.require(tt.transitive == 1 && tt.cyclic == 0 && tt.other == 0, "a->b->c, a->c not transitive");
  return c;
}

Check determinism() {
  Check c;
  const auto dir = scratch();
  const std::vector<std::string> invocations{
      "--seed 7 bifurcate --kind hyper_incursive --a-min 4 --a-max 10 --grid 100 --threads 4",
      "--seed 7 bifurcate --kind hyper_incursive --a-min 4 --a-max 10 --grid 100 --out svg",
      "--seed 7 map --kind hyper_incursive --a 6 --policy random --steps 500",
      "--format json synergy \"" + fixture("xor.csv") + "\"",
      "entropy \"" + fixture("copy.csv") + "\"",
      "--format json structure \"" + fixture("hub.csv") + "\"",
  };
  for (std::size_t i = 0; i < invocations.size(); ++i) {
    const auto p1 = dir / ("run" + std::to_string(i) + "_1.out");
    const auto p2 = dir / ("run" + std::to_string(i) + "_2.out");
    const bool ran = run_cli(invocations[i], p1) == 0 && run_cli(invocations[i], p2) == 0;
    c.require(ran, "invocation failed: " + invocations[i]);
    const auto first = slurp(p1);
    c.require(!first.empty() && first == slurp(p2), "outputs differ: " + invocations[i]);
  }
  return c;
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Check()>>> criteria{
      {"XOR synergy", xor_synergy},
      {"oracle equivalence on random triples", oracle_equivalence},
      {"decomposition identity for n = 4, 5", decomposition_identity},
      {"incursive steady state", incursive_steady_state},
      {"recursive period structure", recursive_periods},
      {"hyper-incursive branch algebra", hyper_algebra},
      {"bifurcation scans", scan_shapes},
      {"positional similarity versus geodesics, triad census", structure_contrast},
      {"determinism of repeated invocations", determinism},
  };
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Check c;
    try {
      c = criteria[i].second();
    } catch (const std::exception& e) {
      c.ok = false;
      c.why = std::string("exception: ") + e.what();
    }
    std::cout << (c.ok ? "[PASS] " : "[FAIL] ") << (i + 1) << ' ' << criteria[i].first;
    if (!c.ok) std::cout << " (" << c.why << ')';
    std::cout << '\n';
    failures += c.ok ? 0 : 1;
  }
  std::cout << (criteria.size() - failures) << '/' << criteria.size() << " criteria passed\n";
  return failures == 0 ? 0 : 1;
}

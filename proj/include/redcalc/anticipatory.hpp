#pragma once

// Recursive, incursive and hyper-incursive logistic maps, period detection
// and bifurcation scans.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

namespace redcalc {

enum class MapKind { recursive, incursive, hyper_incursive };

enum class Branch { plus, minus };

std::string_view to_string(MapKind kind) noexcept;
MapKind parse_map_kind(std::string_view text);

namespace policy {
struct AlwaysPlus {
  friend bool operator==(const AlwaysPlus&, const AlwaysPlus&) = default;
};
struct AlwaysMinus {
  friend bool operator==(const AlwaysMinus&, const AlwaysMinus&) = default;
};
// plus, minus, plus, ...
struct Alternate {
  friend bool operator==(const Alternate&, const Alternate&) = default;
};
struct Random {
  std::uint64_t seed = 0;
  double p_plus = 0.5;
  friend bool operator==(const Random&, const Random&) = default;
};
}  // namespace policy

using BranchPolicy =
    std::variant<policy::AlwaysPlus, policy::AlwaysMinus, policy::Alternate, policy::Random>;

// Accepts always_plus | always_minus | alternate | random.
BranchPolicy parse_policy(std::string_view text, std::uint64_t seed = 0, double p_plus = 0.5);

class MapSpec {
 public:
  // Throws InvalidSpec unless x0 is in [0,1], a > 0, and a policy is given
  // exactly when kind is hyper_incursive.
  MapSpec(MapKind kind, double a, double x0, std::optional<BranchPolicy> policy = std::nullopt);

  MapKind kind() const noexcept { return kind_; }
  double a() const noexcept { return a_; }
  double x0() const noexcept { return x0_; }
  const std::optional<BranchPolicy>& policy() const noexcept { return policy_; }

 private:
  MapKind kind_;
  double a_;
  double x0_;
  std::optional<BranchPolicy> policy_;
};

struct Trajectory {
  std::vector<double> states;
  MapSpec spec;
};

// x_{t+1} = a x_t (1 - x_t), 0 < a <= 4.
double step_recursive(double x, double a);

// Closed forward form of the incursive map, x_{t+1} = a x_t / (1 + a x_t).
double step_incursive(double x, double a);

// One root of x_{t+1}^2 - x_{t+1} + x_t / a = 0. The two branches sum to 1
// exactly.
double step_hyper(double x, double a, Branch branch);

// (a - 1) / a, the attracting fixed point of the incursive map.
double steady_state_incursive(double a);

// Self-consistent states {0, (a-1)/a} of x = a x (1 - x), for a >= 4.
std::pair<double, double> fixed_points_hyper(double a);

// Iterates `steps` times from x0; states has steps + 1 entries. Step
// failures are re-raised with the failing step index in the message.
Trajectory trajectory(const MapSpec& spec, std::size_t steps);

struct PeriodOptions {
  double tol = 1e-6;
  std::size_t max_period = 64;
  // Leading fraction of the trajectory discarded as transient.
  double transient_fraction = 0.5;
};

// Smallest period p <= max_period, or nullopt when the orbit is classed as
// chaotic.
std::optional<std::size_t> detect_period(const Trajectory& traj, const PeriodOptions& options = {});

struct ScanSpec {
  MapKind kind = MapKind::recursive;
  double a_min = 2.5;
  double a_max = 4.0;
  std::size_t a_steps = 1000;
  double x0 = 0.3;
  std::size_t transient = 1000;
  std::size_t samples = 200;
  // Hyper-incursive only; defaults to Random{seed 0, p_plus 0.5}.
  std::optional<BranchPolicy> policy;
  unsigned threads = 1;
};

struct ScanPoint {
  double a;
  double x;
  friend bool operator==(const ScanPoint&, const ScanPoint&) = default;
};

struct BifurcationScan {
  ScanSpec spec;
  std::vector<double> grid;
  std::vector<ScanPoint> points;  // grid order, then sample order
};

// Grid point i is a_min + i (a_max - a_min) / (a_steps - 1). A random policy
// at grid index i uses seed ^ i.
BifurcationScan bifurcation_scan(const ScanSpec& spec);

}  // namespace redcalc

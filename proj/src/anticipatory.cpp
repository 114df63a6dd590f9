#include "redcalc/anticipatory.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <random>
#include <sstream>
#include <thread>

#include "redcalc/error.hpp"

namespace redcalc {

namespace {

std::string fmt_real(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

void check_state(double x) {
  if (!(x >= 0.0 && x <= 1.0)) throw Error(ErrorCode::StateOutOfRange, "x = " + fmt_real(x));
}

// Branch choice per step for hyper-incursive runs.
class BranchChooser {
 public:
  explicit BranchChooser(const BranchPolicy& p) : policy_(p) {
    if (const auto* r = std::get_if<policy::Random>(&policy_)) rng_.seed(r->seed);
  }

  Branch next() {
    const std::size_t step = step_++;
    return std::visit(
        [&](const auto& p) -> Branch {
          using P = std::decay_t<decltype(p)>;
          if constexpr (std::is_same_v<P, policy::AlwaysPlus>) {
            return Branch::plus;
          } else if constexpr (std::is_same_v<P, policy::AlwaysMinus>) {
            return Branch::minus;
          } else if constexpr (std::is_same_v<P, policy::Alternate>) {
            return step % 2 == 0 ? Branch::plus : Branch::minus;
          } else {
            // 53 high bits of the engine output; the engine sequence is fixed
            // by the standard, so this is portable.
            const double u = static_cast<double>(rng_() >> 11) * 0x1.0p-53;
            return u < p.p_plus ? Branch::plus : Branch::minus;
          }
        },
        policy_);
  }

 private:
  BranchPolicy policy_;
  std::mt19937_64 rng_;
  std::size_t step_ = 0;
};

double apply_step(MapKind kind, double x, double a, BranchChooser* chooser) {
  switch (kind) {
    case MapKind::recursive: return step_recursive(x, a);
    case MapKind::incursive: return step_incursive(x, a);
    case MapKind::hyper_incursive: return step_hyper(x, a, chooser->next());
  }
  return x;
}

}  // namespace

std::string_view to_string(MapKind kind) noexcept {
  switch (kind) {
    case MapKind::recursive: return "recursive";
    case MapKind::incursive: return "incursive";
    case MapKind::hyper_incursive: return "hyper_incursive";
  }
  return "unknown";
}

MapKind parse_map_kind(std::string_view text) {
  if (text == "recursive") return MapKind::recursive;
  if (text == "incursive" || text == "incursive_a") return MapKind::incursive;
  if (text == "hyper_incursive" || text == "hyper") return MapKind::hyper_incursive;
  throw Error(ErrorCode::InvalidSpec, "unknown map kind '" + std::string(text) + "'");
}

BranchPolicy parse_policy(std::string_view text, std::uint64_t seed, double p_plus) {
  if (text == "always_plus") return policy::AlwaysPlus{};
  if (text == "always_minus") return policy::AlwaysMinus{};
  if (text == "alternate") return policy::Alternate{};
  if (text == "random") {
    if (!(p_plus >= 0.0 && p_plus <= 1.0)) {
      throw Error(ErrorCode::InvalidSpec, "p_plus must lie in [0,1]");
    }
    return policy::Random{seed, p_plus};
  }
  throw Error(ErrorCode::InvalidSpec, "unknown branch policy '" + std::string(text) + "'");
}

MapSpec::MapSpec(MapKind kind, double a, double x0, std::optional<BranchPolicy> policy)
    : kind_(kind), a_(a), x0_(x0), policy_(std::move(policy)) {
  if (!(x0 >= 0.0 && x0 <= 1.0)) throw Error(ErrorCode::InvalidSpec, "x0 must lie in [0,1]");
  if (!(a > 0.0) || !std::isfinite(a)) throw Error(ErrorCode::InvalidSpec, "a must be positive");
  if ((kind == MapKind::hyper_incursive) != policy_.has_value()) {
    throw Error(ErrorCode::InvalidSpec,
                "a branch policy is required for hyper_incursive maps and only for them");
  }
  if (const auto* r = policy_ ? std::get_if<policy::Random>(&*policy_) : nullptr) {
    if (!(r->p_plus >= 0.0 && r->p_plus <= 1.0)) {
      throw Error(ErrorCode::InvalidSpec, "p_plus must lie in [0,1]");
    }
  }
}

double step_recursive(double x, double a) {
  if (!(a > 0.0 && a <= 4.0)) {
    throw Error(ErrorCode::ParameterOutOfRange,
                "recursive map needs 0 < a <= 4, got a = " + fmt_real(a));
  }
  check_state(x);
  return std::clamp(a * x * (1.0 - x), 0.0, 1.0);
}

double step_incursive(double x, double a) {
  if (!(a > 0.0) || !std::isfinite(a)) {
    throw Error(ErrorCode::ParameterOutOfRange, "incursive map needs a > 0, got a = " + fmt_real(a));
  }
  check_state(x);
  const double ax = a * x;
  return ax / (1.0 + ax);
}

double step_hyper(double x, double a, Branch branch) {
  if (!(a > 0.0) || !std::isfinite(a)) {
    throw Error(ErrorCode::ParameterOutOfRange,
                "hyper-incursive map needs a > 0, got a = " + fmt_real(a));
  }
  check_state(x);
  const double disc = 1.0 - (4.0 / a) * x;
  if (disc < 0.0) {
    throw Error(ErrorCode::DiscriminantNegative,
                "1 - 4x/a = " + fmt_real(disc) + " at x = " + fmt_real(x) + ", a = " + fmt_real(a));
  }
  const double plus = 0.5 + 0.5 * std::sqrt(disc);
  // plus lies in [0.5, 1], so 1 - plus is exact and the branches sum to 1.
  return branch == Branch::plus ? plus : 1.0 - plus;
}

double steady_state_incursive(double a) {
  if (!(a > 1.0) || !std::isfinite(a)) {
    throw Error(ErrorCode::ParameterOutOfRange, "steady state needs a > 1, got a = " + fmt_real(a));
  }
  return (a - 1.0) / a;
}

std::pair<double, double> fixed_points_hyper(double a) {
  if (!(a >= 4.0) || std::isnan(a)) {
    throw Error(ErrorCode::ParameterOutOfRange,
                "hyper-incursive fixed points need a >= 4, got a = " + fmt_real(a));
  }
  if (std::isinf(a)) return {0.0, 1.0};
  return {0.0, (a - 1.0) / a};
}

Trajectory trajectory(const MapSpec& spec, std::size_t steps) {
  if (steps < 1) throw Error(ErrorCode::InvalidSpec, "steps must be >= 1");
  Trajectory out{{}, spec};
  out.states.reserve(steps + 1);
  out.states.push_back(spec.x0());

  std::optional<BranchChooser> chooser;
  if (spec.policy()) chooser.emplace(*spec.policy());

  double x = spec.x0();
  for (std::size_t t = 0; t < steps; ++t) {
    try {
      x = apply_step(spec.kind(), x, spec.a(), chooser ? &*chooser : nullptr);
    } catch (const Error& e) {
      throw Error(e.code(), "step " + std::to_string(t) + ": " + e.detail());
    }
    out.states.push_back(x);
  }
  return out;
}

std::optional<std::size_t> detect_period(const Trajectory& traj, const PeriodOptions& options) {
  if (options.max_period < 1 || !(options.transient_fraction >= 0.0) ||
      !(options.transient_fraction < 1.0)) {
    throw Error(ErrorCode::InvalidSpec, "invalid period detection options");
  }
  const auto& xs = traj.states;
  const auto transient =
      static_cast<std::size_t>(std::floor(options.transient_fraction * static_cast<double>(xs.size())));
  const std::size_t tail = xs.size() - transient;
  if (tail < 2 * options.max_period) {
    throw Error(ErrorCode::TrajectoryTooShort,
                std::to_string(tail) + " post-transient states, need at least " +
                    std::to_string(2 * options.max_period));
  }

  for (std::size_t p = 1; p <= options.max_period; ++p) {
    bool periodic = true;
    for (std::size_t t = transient; t + p < xs.size(); ++t) {
      if (!(std::abs(xs[t + p] - xs[t]) < options.tol)) {
        periodic = false;
        break;
      }
    }
    if (periodic) return p;
  }
  return std::nullopt;
}

BifurcationScan bifurcation_scan(const ScanSpec& spec) {
  if (!(spec.a_min < spec.a_max) || !std::isfinite(spec.a_min) || !std::isfinite(spec.a_max)) {
    throw Error(ErrorCode::GridError, "need a_min < a_max");
  }
  if (spec.a_steps < 2) throw Error(ErrorCode::GridError, "need at least two grid points");
  if (spec.samples < 1) throw Error(ErrorCode::GridError, "need at least one sample per a");
  if (!(spec.a_min > 0.0)) throw Error(ErrorCode::GridError, "a_min must be positive");
  if (spec.kind == MapKind::recursive && spec.a_max > 4.0) {
    throw Error(ErrorCode::GridError, "recursive scans need a_max <= 4");
  }
  if (spec.kind == MapKind::hyper_incursive && spec.a_min < 4.0) {
    throw Error(ErrorCode::GridError, "hyper-incursive scans need a_min >= 4");
  }
  if (!(spec.x0 >= 0.0 && spec.x0 <= 1.0)) throw Error(ErrorCode::GridError, "x0 must lie in [0,1]");

  BifurcationScan scan;
  scan.spec = spec;
  if (spec.kind == MapKind::hyper_incursive && !scan.spec.policy) {
    scan.spec.policy = policy::Random{};
  }
  if (spec.kind != MapKind::hyper_incursive) scan.spec.policy.reset();

  const std::size_t m = spec.a_steps;
  scan.grid.resize(m);
  const double span = spec.a_max - spec.a_min;
  for (std::size_t i = 0; i < m; ++i) {
    scan.grid[i] = (i + 1 == m) ? spec.a_max
                                : spec.a_min + span * static_cast<double>(i) / static_cast<double>(m - 1);
  }

  std::vector<std::vector<double>> per_a(m);
  std::vector<std::exception_ptr> failures(m);

  auto run_one = [&](std::size_t i) {
    const double a = scan.grid[i];
    std::optional<BranchPolicy> pol = scan.spec.policy;
    if (pol) {
      if (auto* r = std::get_if<policy::Random>(&*pol)) r->seed ^= static_cast<std::uint64_t>(i);
    }
    std::optional<BranchChooser> chooser;
    if (pol) chooser.emplace(*pol);
    try {
      double x = spec.x0;
      for (std::size_t t = 0; t < spec.transient; ++t) {
        x = apply_step(spec.kind, x, a, chooser ? &*chooser : nullptr);
      }
      auto& out = per_a[i];
      out.reserve(spec.samples);
      for (std::size_t s = 0; s < spec.samples; ++s) {
        x = apply_step(spec.kind, x, a, chooser ? &*chooser : nullptr);
        out.push_back(x);
      }
    } catch (const Error& e) {
      failures[i] = std::make_exception_ptr(Error(e.code(), "a = " + fmt_real(a) + ": " + e.detail()));
    }
  };

  const unsigned threads = std::max(1U, spec.threads);
  if (threads == 1) {
    for (std::size_t i = 0; i < m; ++i) run_one(i);
  } else {
    std::vector<std::jthread> pool;
    for (unsigned w = 0; w < threads; ++w) {
      pool.emplace_back([&, w] {
        for (std::size_t i = w; i < m; i += threads) run_one(i);
      });
    }
  }

  for (const auto& f : failures) {
    if (f) std::rethrow_exception(f);
  }
  scan.points.reserve(m * spec.samples);
  for (std::size_t i = 0; i < m; ++i) {
    for (double x : per_a[i]) scan.points.push_back({scan.grid[i], x});
  }
  return scan;
}

}  // namespace redcalc

#include "redcalc/cli.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include <CLI11.hpp>

#include "redcalc/anticipatory.hpp"
#include "redcalc/dataio.hpp"
#include "redcalc/error.hpp"
#include "redcalc/format.hpp"
#include "redcalc/multivariate.hpp"
#include "redcalc/probkit.hpp"
#include "redcalc/structure.hpp"
#include "redcalc/svg.hpp"

namespace redcalc::cli {

namespace {

using Json = nlohmann::ordered_json;

struct GlobalOptions {
  std::string format = "tsv";
  int precision = 6;
  std::uint64_t seed = 0;

  OutputFormat output() const { return {parse_format(format), precision}; }
};

struct TableInput {
  std::string file;
  std::vector<std::string> vars;
  std::vector<std::string> bins;
  bool drop_missing = false;
  double pseudo_count = 0.0;
};

struct EntropyOptions {
  TableInput input;
  bool nats = false;
};

struct SynergyOptions {
  TableInput input;
  std::size_t max_vars = kDefaultVariableCap;
  unsigned threads = 1;
};

struct MapOptions {
  std::string kind;
  double a = 0.0;
  double x0 = 0.1;
  std::size_t steps = 100;
  std::string policy = "always_plus";
  double p_plus = 0.5;
};

struct BifurcateOptions {
  std::string kind;
  double a_min = 0.0;
  double a_max = 0.0;
  std::size_t grid = 1000;
  double x0 = 0.3;
  std::size_t transient = 1000;
  std::size_t samples = 200;
  std::string policy = "random";
  double p_plus = 0.5;
  std::string out = "csv";
  std::string output;
  unsigned threads = 1;
};

struct StructureOptions {
  std::string file;
  bool directed = false;
  std::string measure = "cosine";
};

std::ifstream open_input(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::UnreadableFile, path);
  return in;
}

void write_output(const std::string& path, const std::string& text, std::ostream& out) {
  if (path.empty() || path == "-") {
    out << text;
    return;
  }
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw Error(ErrorCode::UnreadableFile, "cannot write " + path);
  f << text;
  if (!f) throw Error(ErrorCode::UnreadableFile, "failed writing " + path);
}

Contingency read_contingency(const TableInput& in) {
  auto stream = open_input(in.file);
  DataTable table = load_table(stream);
  for (const auto& b : in.bins) table = bin_column(table, parse_binning(b));
  const auto& vars = in.vars.empty() ? table.headers() : in.vars;
  return contingency(table, vars, in.drop_missing ? MissingPolicy::drop_row : MissingPolicy::as_category);
}

// ---------------------------------------------------------------- entropy

std::string cmd_entropy(const EntropyOptions& opt, const OutputFormat& fmt) {
  const Contingency c = read_contingency(opt.input);
  const JointDistribution dist = to_distribution(c, opt.input.pseudo_count);
  const EntropyValue h_system = entropy(dist);
  const EntropyValue h_max = max_entropy(static_cast<std::int64_t>(dist.cell_count()));
  const double r = redundancy(h_system, h_max);

  const char* unit = opt.nats ? "nats" : "bits";
  auto shown = [&](EntropyValue h) { return opt.nats ? h.nats() : h.bits; };

  if (fmt.kind == FormatKind::json) {
    Json doc;
    doc["variables"] = c.variables;
    doc["unit"] = unit;
    doc["H_system"] = shown(h_system);
    doc["H_max"] = shown(h_max);
    doc["R"] = r;
    return render_json(doc, fmt.precision);
  }
  const int p = fmt.precision;
  return render_table({"quantity", "value", "unit"},
                     {{"H_system", format_fixed(shown(h_system), p), unit},
                      {"H_max", format_fixed(shown(h_max), p), unit},
                      {"R", format_fixed(r, p), "ratio"}},
                     fmt.kind);
}

// ---------------------------------------------------------------- synergy

std::string verdict_for(double r, int precision) {
  if (std::abs(r) < std::pow(10.0, -precision)) return "balanced";
  return r < 0 ? "evolutionary" : "historical";
}

std::string subset_label(const EntropyLattice& lattice, Subset s) {
  std::string out = "T(";
  const auto names = lattice.names_of(s);
  for (std::size_t i = 0; i < names.size(); ++i) {
    if (i) out += ";";
    out += names[i];
  }
  return out + ")";
}

std::string cmd_synergy(const SynergyOptions& opt, const OutputFormat& fmt) {
  const Contingency c = read_contingency(opt.input);
  if (c.variables.size() < 2) {
    throw Error(ErrorCode::SubsetTooSmall, "synergy needs at least two variables");
  }
  const JointDistribution dist = to_distribution(c, opt.input.pseudo_count);
  const EntropyLattice lattice = entropy_lattice(dist, {opt.max_vars, opt.threads});
  const SynergyReport report = mutual_redundancy(lattice);
  const std::size_t n = lattice.arity();
  const std::string verdict = verdict_for(report.mutual_redundancy, fmt.precision);
  std::optional<PhiBalance> phi;
  if (n == 2) phi = phi_balance(lattice);

  if (fmt.kind == FormatKind::json) {
    Json doc;
    doc["variables"] = report.variables;
    doc["n"] = n;
    Json ts = Json::array();
    for (const auto& [s, t] : report.t_values) {
      ts.push_back(Json{{"subset", lattice.names_of(s)}, {"bits", t}});
    }
    doc["t_values"] = std::move(ts);
    if (phi) doc["phi_balance"] = Json{{"D", phi->d}, {"A", phi->a}, {"Phi", phi->phi}};
    doc["total_correlation"] = report.total_correlation;
    doc["term_negative"] = report.term_negative;
    doc["term_interaction"] = report.term_interaction;
    doc["mutual_redundancy"] = report.mutual_redundancy;
    doc["verdict"] = verdict;
    return render_json(doc, fmt.precision);
  }

  const int p = fmt.precision;
  std::vector<std::vector<std::string>> rows;
  for (const auto& [s, t] : report.t_values) rows.push_back({subset_label(lattice, s), format_fixed(t, p)});
  if (phi) {
    rows.push_back({"D", format_fixed(phi->d, p)});
    rows.push_back({"A", format_fixed(phi->a, p)});
    rows.push_back({"Phi", format_fixed(phi->phi, p)});
  }
  rows.push_back({"total_correlation", format_fixed(report.total_correlation, p)});
  rows.push_back({"term_negative", format_fixed(report.term_negative, p)});
  rows.push_back({"term_interaction", format_fixed(report.term_interaction, p)});
  rows.push_back({"R_" + std::to_string(n), format_fixed(report.mutual_redundancy, p)});
  rows.push_back({"verdict", verdict});
  return render_table({"quantity", "value"}, rows, fmt.kind);
}

// ---------------------------------------------------------------- map

std::string cmd_map(const MapOptions& opt, const GlobalOptions& global) {
  const OutputFormat fmt = global.output();
  const MapKind kind = parse_map_kind(opt.kind);
  std::optional<BranchPolicy> pol;
  if (kind == MapKind::hyper_incursive) pol = parse_policy(opt.policy, global.seed, opt.p_plus);
  const MapSpec spec(kind, opt.a, opt.x0, pol);
  const Trajectory traj = trajectory(spec, opt.steps);

  if (fmt.kind == FormatKind::json) {
    Json doc;
    doc["kind"] = std::string(to_string(kind));
    doc["a"] = opt.a;
    doc["x0"] = opt.x0;
    doc["states"] = traj.states;
    return render_json(doc, fmt.precision);
  }
  std::vector<std::vector<std::string>> rows;
  rows.reserve(traj.states.size());
  for (std::size_t t = 0; t < traj.states.size(); ++t) {
    rows.push_back({std::to_string(t), format_fixed(traj.states[t], fmt.precision)});
  }
  return render_table({"t", "x"}, rows, fmt.kind);
}

// ---------------------------------------------------------------- bifurcate

std::string cmd_bifurcate(const BifurcateOptions& opt, const GlobalOptions& global) {
  ScanSpec spec;
  spec.kind = parse_map_kind(opt.kind);
  spec.a_min = opt.a_min;
  spec.a_max = opt.a_max;
  spec.a_steps = opt.grid;
  spec.x0 = opt.x0;
  spec.transient = opt.transient;
  spec.samples = opt.samples;
  spec.threads = opt.threads;
  if (spec.kind == MapKind::hyper_incursive) spec.policy = parse_policy(opt.policy, global.seed, opt.p_plus);
  const BifurcationScan scan = bifurcation_scan(spec);
  if (opt.out == "svg") return render_scan_svg(scan);
  return render_scan_csv(scan, global.precision);
}

// ---------------------------------------------------------------- structure

std::string cmd_structure(const StructureOptions& opt, const OutputFormat& fmt) {
  auto stream = open_input(opt.file);
  const auto edges = load_edges(stream);
  const Graph g = Graph::from_edges(edges, opt.directed);
  const SimilarityMeasure measure =
      opt.measure == "pearson" ? SimilarityMeasure::pearson : SimilarityMeasure::cosine;
  const DistanceMatrix dist = geodesic_distances(g);
  const PositionMatrix sim = positional_correlation(g, measure);
  const TriadCensus census = triad_census(g);
  const std::size_t n = g.size();
  const int p = fmt.precision;

  if (fmt.kind == FormatKind::json) {
    Json doc;
    doc["nodes"] = g.nodes();
    doc["directed"] = g.directed();
    Json geo = Json::array();
    Json simj = Json::array();
    for (std::size_t i = 0; i < n; ++i) {
      Json grow = Json::array();
      Json srow = Json::array();
      for (std::size_t j = 0; j < n; ++j) {
        const auto& d = dist.at(i, j);
        grow.push_back(d ? Json(*d) : Json(nullptr));
        const auto& s = sim.at(i, j);
        srow.push_back(s ? Json(*s) : Json(nullptr));
      }
      geo.push_back(std::move(grow));
      simj.push_back(std::move(srow));
    }
    doc["geodesic"] = std::move(geo);
    doc["measure"] = opt.measure;
    doc["similarity"] = std::move(simj);
    doc["triads"] = Json{{"transitive", census.transitive}, {"cyclic", census.cyclic}, {"other", census.other}};
    return render_json(doc, p);
  }

  std::vector<std::string> header{"node"};
  header.insert(header.end(), g.nodes().begin(), g.nodes().end());
  std::vector<std::vector<std::string>> geo_rows, sim_rows;
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<std::string> gr{g.nodes()[i]}, sr{g.nodes()[i]};
    for (std::size_t j = 0; j < n; ++j) {
      const auto& d = dist.at(i, j);
      gr.push_back(d ? std::to_string(*d) : "inf");
      const auto& s = sim.at(i, j);
      sr.push_back(s ? format_fixed(*s, p) : "NA");
    }
    geo_rows.push_back(std::move(gr));
    sim_rows.push_back(std::move(sr));
  }
  std::string out = "# geodesic\n";
  out += render_table(header, geo_rows, fmt.kind);
  out += "\n# similarity " + opt.measure + "\n";
  out += render_table(header, sim_rows, fmt.kind);
  out += "\n# triads\n";
  out += render_table({"class", "count"},
                     {{"transitive", std::to_string(census.transitive)},
                      {"cyclic", std::to_string(census.cyclic)},
                      {"other", std::to_string(census.other)}},
                     fmt.kind);
  return out;
}

void add_table_input(CLI::App* cmd, TableInput& in) {
  cmd->add_option("file", in.file, "Comma-delimited file with a header row")->required();
  cmd->add_option("--vars", in.vars, "Columns to analyse (comma-separated; default all)")->delimiter(',');
  cmd->add_option("--bins", in.bins, "Bin a numeric column: column:equal_width|equal_frequency:k");
  cmd->add_flag("--drop-missing", in.drop_missing, "Drop rows with empty cells instead of keeping them as a category");
  cmd->add_option("--pseudo-count", in.pseudo_count, "Additive smoothing per cell")->check(CLI::NonNegativeNumber);
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Redundancy calculus for categorical data and anticipatory logistic maps", "redcalc"};
  app.require_subcommand(1);
  app.fallthrough();

  GlobalOptions global;
  app.add_option("--format", global.format, "Table format")->check(CLI::IsMember({"tsv", "csv", "json"}));
  app.add_option("--precision", global.precision, "Decimal places")->check(CLI::Range(1, 15));
  app.add_option("--seed", global.seed, "Seed for random branch policies");

  EntropyOptions entropy_opt;
  auto* entropy_cmd = app.add_subcommand("entropy", "Joint entropy, maximum entropy and redundancy");
  add_table_input(entropy_cmd, entropy_opt.input);
  entropy_cmd->add_flag("--nats", entropy_opt.nats, "Report entropies in nats");

  SynergyOptions synergy_opt;
  auto* synergy_cmd = app.add_subcommand("synergy", "Interaction information and mutual redundancy");
  add_table_input(synergy_cmd, synergy_opt.input);
  synergy_cmd->add_option("--max-vars", synergy_opt.max_vars, "Variable cap for the subset lattice")
      ->check(CLI::Range(std::size_t{1}, kHardVariableCap));
  synergy_cmd->add_option("--threads", synergy_opt.threads, "Worker threads");

  MapOptions map_opt;
  auto* map_cmd = app.add_subcommand("map", "Iterate one logistic map");
  map_cmd->add_option("--kind", map_opt.kind, "recursive | incursive | hyper_incursive")->required();
  map_cmd->add_option("--a", map_opt.a, "Bifurcation parameter")->required();
  map_cmd->add_option("--x0", map_opt.x0, "Initial state in [0,1]");
  map_cmd->add_option("--steps", map_opt.steps, "Iterations")->check(CLI::PositiveNumber);
  map_cmd->add_option("--policy", map_opt.policy, "always_plus | always_minus | alternate | random");
  map_cmd->add_option("--p-plus", map_opt.p_plus, "Plus-branch probability for the random policy");

  BifurcateOptions bif_opt;
  auto* bif_cmd = app.add_subcommand("bifurcate", "Bifurcation scan over a grid of a");
  bif_cmd->add_option("--kind", bif_opt.kind, "recursive | incursive | hyper_incursive")->required();
  bif_cmd->add_option("--a-min", bif_opt.a_min, "Lower end of the grid")->required();
  bif_cmd->add_option("--a-max", bif_opt.a_max, "Upper end of the grid")->required();
  bif_cmd->add_option("--grid", bif_opt.grid, "Grid points");
  bif_cmd->add_option("--x0", bif_opt.x0, "Initial state in [0,1]");
  bif_cmd->add_option("--transient", bif_opt.transient, "Iterations discarded per a");
  bif_cmd->add_option("--samples", bif_opt.samples, "Attractor points kept per a");
  bif_cmd->add_option("--policy", bif_opt.policy, "Branch policy for hyper_incursive scans");
  bif_cmd->add_option("--p-plus", bif_opt.p_plus, "Plus-branch probability for the random policy");
  bif_cmd->add_option("--out", bif_opt.out, "csv | svg")->check(CLI::IsMember({"csv", "svg"}));
  bif_cmd->add_option("-o,--output", bif_opt.output, "Output file (default standard output)");
  bif_cmd->add_option("--threads", bif_opt.threads, "Worker threads");

  StructureOptions struct_opt;
  auto* struct_cmd = app.add_subcommand("structure", "Geodesics, positional similarity and triad census");
  struct_cmd->add_option("file", struct_opt.file, "Edge list with header source,target")->required();
  struct_cmd->add_flag("--directed", struct_opt.directed, "Treat edges as arcs");
  struct_cmd->add_option("--measure", struct_opt.measure, "pearson | cosine")
      ->check(CLI::IsMember({"pearson", "cosine"}));

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp& e) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitInputError;
  }

  try {
    std::string text;
    if (entropy_cmd->parsed()) {
      text = cmd_entropy(entropy_opt, global.output());
    } else if (synergy_cmd->parsed()) {
      text = cmd_synergy(synergy_opt, global.output());
    } else if (map_cmd->parsed()) {
      text = cmd_map(map_opt, global);
    } else if (bif_cmd->parsed()) {
      write_output(bif_opt.output, cmd_bifurcate(bif_opt, global), out);
      return kExitOk;
    } else if (struct_cmd->parsed()) {
      text = cmd_structure(struct_opt, global.output());
    }
    out << text;
    return kExitOk;
  } catch (const Error& e) {
    err << "error: " << to_string(e.code()) << ": " << e.detail() << "\n";
    return e.code() == ErrorCode::TooManyVariables ? kExitTooManyVariables : kExitInputError;
  }
}

}  // namespace redcalc::cli

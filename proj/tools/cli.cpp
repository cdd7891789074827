#include "cli.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <atomic>
#include <charconv>
#include <limits>
#include <optional>
#include <sstream>
#include <thread>

#include <hcdtn/asymptotics.hpp>
#include <hcdtn/errors.hpp>
#include <hcdtn/generators.hpp>
#include <hcdtn/geometry.hpp>
#include <hcdtn/network.hpp>
#include <hcdtn/oracle.hpp>

#include "io.hpp"

namespace hcdtn::cli {

namespace {

using io::json;

struct Options {
  std::vector<std::string> packing_paths;
  std::string mode = "identical";
  std::vector<std::string> cos_terms;
  std::vector<std::string> sin_terms;
  int k_from = 1;
  int k_to = 1;
  int oracle_m = 0;  // 0: automatic
  int inclusion_m = 0;
  std::string out_path;
  std::string format = "json";
  std::uint64_t seed = 1;
  double delta_max_edge = std::numeric_limits<double>::infinity();
  std::string solution_dump;
  // gen
  std::string kind = "ring";
  int n = 8;
  double rho_c = 0.85;
  double radius = 0.1;
  double L = 1.0;
  double gap = 0.01;
  double delta_min = 0.01;
};

// A loaded packing with its derived structures.
struct Model {
  Packing packing;
  GeometryAnalysis analysis;
  Network network;
};

ConductivityMode parse_mode(const std::string& s) {
  if (s == "identical") return ConductivityMode::identical;
  if (s == "generalized") return ConductivityMode::generalized;
  throw UsageError("unknown mode \"" + s + "\" (identical|generalized)");
}

std::pair<int, double> parse_term(const std::string& term) {
  const auto eq = term.find('=');
  if (eq == std::string::npos) throw UsageError("expected k=a, got \"" + term + "\"");
  int k = 0;
  double a = 0.0;
  const char* b = term.data();
  const auto rk = std::from_chars(b, b + eq, k);
  const auto ra = std::from_chars(b + eq + 1, b + term.size(), a);
  if (rk.ec != std::errc() || rk.ptr != b + eq || ra.ec != std::errc() || ra.ptr != b + term.size())
    throw UsageError("cannot parse \"" + term + "\" as k=a");
  if (k < 0) throw UsageError("negative frequency in \"" + term + "\"");
  return {k, a};
}

FourierPotential parse_potential(const Options& o) {
  if (o.cos_terms.empty() && o.sin_terms.empty()) throw UsageError("no potential given (use --cos k=a / --sin k=a)");
  FourierPotential psi;
  for (const auto& t : o.cos_terms) {
    const auto [k, a] = parse_term(t);
    psi.add_cos(k, a);
  }
  for (const auto& t : o.sin_terms) {
    const auto [k, a] = parse_term(t);
    if (k == 0) throw UsageError("sin term with k = 0");
    psi.add_sin(k, a);
  }
  return psi;
}

Model load_model(const std::string& path, const Options& o) {
  Model m;
  m.packing = io::read_packing_file(path);
  if (m.packing.size() == 0) {
    m.analysis = GeometryAnalysis::empty(m.packing.L);
    return m;
  }
  AdjacencyOptions adj;
  adj.delta_max_edge = o.delta_max_edge;
  m.analysis = analyze_geometry(m.packing, adj);
  m.network = build_network(m.analysis, parse_mode(o.mode));
  return m;
}

const std::string& single_packing(const Options& o) {
  if (o.packing_paths.size() != 1) throw UsageError("exactly one --packing is required");
  return o.packing_paths.front();
}

void emit(const Options& o, std::ostream& out, const std::string& text) {
  if (o.out_path.empty())
    out << text;
  else
    io::write_text_file(o.out_path, text);
}

std::string breakdown_header() { return "k,epsilon,eta,regime,E_net,E_ref,R_res,total,quad_form\n"; }

int cmd_gen(const Options& o, std::ostream& out) {
  Packing p;
  if (o.kind == "ring")
    p = ring_packing(o.n, o.rho_c, o.radius, o.L);
  else if (o.kind == "equal-ring")
    p = equal_gap_ring(o.n, o.radius, o.gap, o.L);
  else if (o.kind == "grid")
    p = hex_grid_packing(o.L, o.radius, o.gap);
  else if (o.kind == "random")
    p = random_packing(o.n, o.radius, o.L, o.delta_min, o.seed);
  else
    throw UsageError("unknown packing kind \"" + o.kind + "\" (ring|equal-ring|grid|random)");
  validate_packing(p);
  emit(o, out, io::serialize_packing(p));
  return kOk;
}

int cmd_analyze(const Options& o, std::ostream& out) {
  const Model m = load_model(single_packing(o), o);
  const FourierPotential psi = parse_potential(o);
  const EnergyBreakdown b = total_energy(psi, m.analysis, m.network);
  if (o.format == "csv") {
    const int K = psi.max_frequency();
    const ModeRegime& r = b.per_mode.back();
    emit(o, out,
         breakdown_header() + io::csv_row({std::to_string(K), io::format_double(r.epsilon), io::format_double(r.eta),
                                           std::to_string(r.regime), io::format_double(b.E_net),
                                           io::format_double(b.E_ref), io::format_double(b.R_res),
                                           io::format_double(b.total), io::format_double(b.quad_form)}));
    return kOk;
  }
  json j;
  j["inclusions"] = m.analysis.size();
  j["boundary_count"] = m.analysis.boundary_count;
  j["mode"] = o.mode;
  j["original_index"] = m.analysis.original_index;
  j["breakdown"] = io::breakdown_to_json(b);
  j["scale_report"] = io::scale_report_to_json(scale_report(m.analysis));
  emit(o, out, j.dump(2) + "\n");
  return kOk;
}

int cmd_dtn(const Options& o, std::ostream& out) {
  const Model m = load_model(single_packing(o), o);
  const Eigen::MatrixXd lambda = dtn_matrix(m.network);
  if (o.format == "csv") {
    std::string text;
    for (Eigen::Index r = 0; r < lambda.rows(); ++r) {
      std::vector<std::string> cells;
      for (Eigen::Index c = 0; c < lambda.cols(); ++c) cells.push_back(io::format_double(lambda(r, c)));
      text += io::csv_row(cells);
    }
    emit(o, out, text);
    return kOk;
  }
  json j = io::network_to_json(m.network);
  j["original_index"] = m.analysis.original_index;
  j["dtn"] = io::matrix_to_json(lambda);
  emit(o, out, j.dump(2) + "\n");
  return kOk;
}

int cmd_sweep(const Options& o, std::ostream& out) {
  if (o.k_from < 0 || o.k_to < 0) throw UsageError("k range must be nonnegative");
  if (o.k_to < o.k_from) throw UsageError("empty k range");
  const Model m = load_model(single_packing(o), o);
  const int count = o.k_to - o.k_from + 1;

  // Rows are independent; workers pull k values and write into fixed slots.
  std::vector<EnergyBreakdown> rows(static_cast<std::size_t>(count));
  std::vector<std::exception_ptr> failures(static_cast<std::size_t>(count));
  std::atomic<int> next{0};
  auto work = [&] {
    for (int idx = next++; idx < count; idx = next++) {
      try {
        rows[static_cast<std::size_t>(idx)] =
            total_energy(FourierPotential::cosine(o.k_from + idx), m.analysis, m.network);
      } catch (...) {
        failures[static_cast<std::size_t>(idx)] = std::current_exception();
      }
    }
  };
  const unsigned hw = std::max(1u, std::thread::hardware_concurrency());
  const int workers = static_cast<int>(std::min<unsigned>(hw, static_cast<unsigned>(count)));
  std::vector<std::thread> pool;
  for (int w = 1; w < workers; ++w) pool.emplace_back(work);
  work();
  for (auto& t : pool) t.join();
  for (const auto& f : failures)
    if (f) std::rethrow_exception(f);

  if (o.format == "csv") {
    std::string text = breakdown_header();
    for (int idx = 0; idx < count; ++idx) {
      const auto& b = rows[static_cast<std::size_t>(idx)];
      const auto& r = b.per_mode.back();
      text += io::csv_row({std::to_string(o.k_from + idx), io::format_double(r.epsilon), io::format_double(r.eta),
                           std::to_string(r.regime), io::format_double(b.E_net), io::format_double(b.E_ref),
                           io::format_double(b.R_res), io::format_double(b.total), io::format_double(b.quad_form)});
    }
    emit(o, out, text);
    return kOk;
  }
  json arr = json::array();
  for (int idx = 0; idx < count; ++idx) {
    const auto& b = rows[static_cast<std::size_t>(idx)];
    const auto& r = b.per_mode.back();
    arr.push_back({{"k", o.k_from + idx},
                   {"epsilon", r.epsilon},
                   {"eta", r.eta},
                   {"regime", r.regime},
                   {"E_net", b.E_net},
                   {"E_ref", b.E_ref},
                   {"R_res", b.R_res},
                   {"total", b.total},
                   {"quad_form", b.quad_form}});
  }
  emit(o, out, arr.dump(2) + "\n");
  return kOk;
}

double min_gap_over_radius(const GeometryAnalysis& a) {
  const ScaleReport r = scale_report(a);
  return a.size() > 0 ? r.delta_min / r.R_min : std::numeric_limits<double>::infinity();
}

int cmd_validate(const Options& o, std::ostream& out, std::ostream& err) {
  if (o.packing_paths.empty()) throw UsageError("at least one --packing is required");
  const FourierPotential psi = parse_potential(o);
  const int K = psi.max_frequency();
  const int M = o.oracle_m > 0 ? o.oracle_m : std::max(32, K);
  if (M < K) throw UsageError("--oracle-m " + std::to_string(M) + " is below the maximum frequency " + std::to_string(K));

  struct Run {
    json record;
    double ratio = 0.0;
    std::optional<double> rel;
  };
  std::vector<Run> runs;
  json dumps = json::array();
  bool numerical_failure = false;
  for (const auto& path : o.packing_paths) {
    const Model m = load_model(path, o);
    const EnergyBreakdown b = total_energy(psi, m.analysis, m.network);
    Run run;
    run.ratio = min_gap_over_radius(m.analysis);
    json& j = run.record;
    j["packing"] = path;
    j["delta_over_R"] = run.ratio;
    j["asymptotic_quad_form"] = b.quad_form;
    j["oracle_refused"] = false;
    try {
      OracleOptions opt;
      opt.order = M;
      opt.inclusion_order = o.inclusion_m;
      const DirichletOracle oracle(m.packing, opt);
      const SpectralSolution s = oracle.solve(psi);
      const double q = 2.0 * s.energy;
      const MaxPrincipleReport mp = max_principle_check(s, psi);
      run.rel = std::abs(b.quad_form - q) / std::abs(q);
      j["oracle_quad_form"] = q;
      j["relative_difference"] = *run.rel;
      j["oracle_residual"] = s.boundary_residual;
      j["oracle_condition"] = oracle.condition_estimate();
      j["max_principle_passed"] = mp.passed;
      j["oracle_warnings"] = s.warnings;
      if (!o.solution_dump.empty()) dumps.push_back(io::solution_to_json(s));
    } catch (const OracleGuardError& e) {
      j["oracle_refused"] = true;
      j["oracle_message"] = e.what();
    } catch (const Error& e) {
      if (!e.is_numerical()) throw;
      numerical_failure = true;
      j["oracle_error"] = {{"kind", e.kind()}, {"message", e.what()}};
      err << json{{"error", {{"kind", e.kind()}, {"message", e.what()}}}}.dump() << "\n";
    }
    runs.push_back(std::move(run));
  }

  // Trend: relative error against decreasing delta / R.
  std::vector<const Run*> order;
  for (const auto& r : runs)
    if (r.rel) order.push_back(&r);
  std::stable_sort(order.begin(), order.end(), [](const Run* a, const Run* b) { return a->ratio > b->ratio; });
  bool decreasing = order.size() >= 2;
  for (std::size_t i = 1; i < order.size(); ++i)
    if (!(*order[i]->rel < *order[i - 1]->rel)) decreasing = false;

  if (o.format == "csv") {
    std::string text = "packing,delta_over_R,asymptotic_quad_form,oracle_quad_form,relative_difference,oracle_residual,oracle_refused\n";
    for (const auto& r : runs) {
      const json& j = r.record;
      const bool refused = j["oracle_refused"].get<bool>();
      const bool solved = j.contains("oracle_quad_form");
      text += io::csv_row({j["packing"].get<std::string>(), io::format_double(r.ratio),
                           io::format_double(j["asymptotic_quad_form"].get<double>()),
                           solved ? io::format_double(j["oracle_quad_form"].get<double>()) : "",
                           solved ? io::format_double(*r.rel) : "",
                           solved ? io::format_double(j["oracle_residual"].get<double>()) : "",
                           refused ? "1" : "0"});
    }
    emit(o, out, text);
  } else {
    json doc;
    doc["oracle_order"] = M;
    doc["runs"] = json::array();
    for (const auto& r : runs) doc["runs"].push_back(r.record);
    doc["trend"] = json::array();
    for (const Run* r : order) doc["trend"].push_back({{"delta_over_R", r->ratio}, {"relative_error", *r->rel}});
    doc["trend_decreasing"] = decreasing;
    emit(o, out, doc.dump(2) + "\n");
  }
  if (!o.solution_dump.empty()) io::write_text_file(o.solution_dump, dumps.dump(2) + "\n");
  return numerical_failure ? kNumericalError : kOk;
}

void add_potential_flags(CLI::App* c, Options& o) {
  c->add_option("--cos", o.cos_terms, "cosine term k=a (repeatable)");
  c->add_option("--sin", o.sin_terms, "sine term k=a (repeatable)");
}

void add_model_flags(CLI::App* c, Options& o) {
  c->add_option("--mode", o.mode, "identical|generalized");
  c->add_option("--delta-max-edge", o.delta_max_edge, "drop gap edges wider than this");
}

void add_output_flags(CLI::App* c, Options& o) {
  c->add_option("--out", o.out_path, "output file (default stdout)");
  c->add_option("--format", o.format, "json|csv")->check(CLI::IsMember({"json", "csv"}));
}

void report(std::ostream& err, const std::string& kind, const std::string& message) {
  err << json{{"error", {{"kind", kind}, {"message", message}}}}.dump() << "\n";
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"Asymptotic and numerical Dirichlet-to-Neumann energies of disk packings", "hcdtn"};
  app.require_subcommand(1);

  auto* gen = app.add_subcommand("gen", "generate a packing file");
  gen->add_option("--kind", o.kind, "ring|equal-ring|grid|random");
  gen->add_option("--n", o.n, "number of disks (ring, equal-ring, random)");
  gen->add_option("--rho-c", o.rho_c, "ring radius");
  gen->add_option("--radius", o.radius, "disk radius");
  gen->add_option("--L", o.L, "domain radius");
  gen->add_option("--gap", o.gap, "gap (grid, equal-ring)");
  gen->add_option("--delta-min", o.delta_min, "minimum gap (random)");
  gen->add_option("--seed", o.seed, "random seed");
  gen->add_option("--out", o.out_path, "output file (default stdout)");

  auto* analyze = app.add_subcommand("analyze", "asymptotic energy breakdown");
  analyze->add_option("--packing", o.packing_paths, "packing JSON")->required();
  add_model_flags(analyze, o);
  add_potential_flags(analyze, o);
  add_output_flags(analyze, o);

  auto* dtn = app.add_subcommand("dtn", "network Dirichlet-to-Neumann matrix");
  dtn->add_option("--packing", o.packing_paths, "packing JSON")->required();
  add_model_flags(dtn, o);
  add_output_flags(dtn, o);

  auto* sweep = app.add_subcommand("sweep", "breakdown of cos(k theta) over a range of k");
  sweep->add_option("--packing", o.packing_paths, "packing JSON")->required();
  sweep->add_option("--k-from", o.k_from, "first k")->required();
  sweep->add_option("--k-to", o.k_to, "last k")->required();
  add_model_flags(sweep, o);
  add_output_flags(sweep, o);

  auto* validate = app.add_subcommand("validate", "compare with the numerical solver");
  validate->add_option("--packing", o.packing_paths, "packing JSON (repeat for a trend table)")->required();
  validate->add_option("--oracle-m", o.oracle_m, "domain truncation order (default max(32, K))");
  validate->add_option("--inclusion-m", o.inclusion_m, "per-inclusion truncation order (default = oracle-m)");
  validate->add_option("--solution-dump", o.solution_dump, "write the numerical solutions as JSON");
  add_model_flags(validate, o);
  add_potential_flags(validate, o);
  add_output_flags(validate, o);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    report(err, "UsageError", e.what());
    return kInputError;
  }

  try {
    if (*gen) return cmd_gen(o, out);
    if (*analyze) return cmd_analyze(o, out);
    if (*dtn) return cmd_dtn(o, out);
    if (*sweep) return cmd_sweep(o, out);
    if (*validate) return cmd_validate(o, out, err);
  } catch (const Error& e) {
    report(err, e.kind(), e.what());
    return e.is_numerical() ? kNumericalError : kInputError;
  } catch (const std::exception& e) {
    report(err, "InternalError", e.what());
    return kNumericalError;
  }
  report(err, "UsageError", "no command");
  return kInputError;
}

}  // namespace hcdtn::cli

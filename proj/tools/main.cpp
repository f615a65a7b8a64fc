// Command-line front end: construction checks, box analysis, sequence
// norms, membership probes, family experiments, region tables, and
// difference norms, emitting plot-ready CSV or JSON.
//
// Exit codes: 0 success, 2 rejected input, 3 failed --check.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "besov/diffnorm.hpp"
#include "besov/dyadic.hpp"
#include "besov/families.hpp"
#include "besov/haar.hpp"
#include "besov/harness.hpp"
#include "besov/params.hpp"
#include "besov/regions.hpp"
#include "besov/seqnorm.hpp"
#include "besov/step_function.hpp"

namespace {

using nlohmann::json;

struct CheckFailure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(text);
  std::string tok;
  while (std::getline(ss, tok, sep)) out.push_back(tok);
  return out;
}

besov::BesovParams parse_params(const std::string& text) {
  auto parts = split(text, ',');
  if (parts.size() != 5)
    throw std::invalid_argument("--params wants s,p,q,tau,n");
  for (auto& part : parts)  // tolerate an optional name= prefix per field
    if (auto eq = part.find('='); eq != std::string::npos) part.erase(0, eq + 1);
  besov::BesovParams p;
  p.s = std::stod(parts[0]);
  p.p = besov::parse_exponent(parts[1]);
  p.q = besov::parse_exponent(parts[2]);
  p.tau = std::stod(parts[3]);
  p.n = std::stoi(parts[4]);
  p.validate();
  return p;
}

std::vector<int> parse_int_list(const std::string& text) {
  std::vector<int> out;
  for (const auto& tok : split(text, ',')) out.push_back(std::stoi(tok));
  return out;
}

double json_exponent(const json& j) {
  if (j.is_string()) return besov::parse_exponent(j.get<std::string>());
  return j.get<double>();
}

// Everything a subcommand may want, merged from --config and flags.
struct Session {
  besov::BesovParams params;
  bool params_given = false;
  besov::GeneratorModel gen;
  besov::ProbeOptions probe;
  json sweep;
  unsigned long long seed = 0x5eed5eedULL;
  std::string out_path;
  std::string format = "csv";
  bool check = false;

  std::ofstream file;
  std::ostream* os = &std::cout;

  void load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open config: " + path);
    json cfg = json::parse(in);
    if (cfg.contains("params")) {
      const json& p = cfg["params"];
      params.s = p.value("s", params.s);
      if (p.contains("p")) params.p = json_exponent(p["p"]);
      if (p.contains("q")) params.q = json_exponent(p["q"]);
      params.tau = p.value("tau", params.tau);
      params.n = p.value("n", params.n);
      params_given = true;
    }
    if (cfg.contains("generator")) {
      const json& g = cfg["generator"];
      gen.support_lo = g.value("K", gen.support_lo);
      gen.support_hi = g.value("L", gen.support_hi);
      gen.c_psi = g.value("c_psi", gen.c_psi);
      gen.c_phi = g.value("c_phi", gen.c_phi);
      gen.min_start_level = g.value("j0", gen.min_start_level);
    }
    if (cfg.contains("probe")) {
      const json& pr = cfg["probe"];
      if (pr.contains("shift")) {
        if (pr["shift"].is_array())
          probe.shift = pr["shift"].get<std::vector<double>>();
        else
          probe.shift.assign(1, pr["shift"].get<double>());
      }
      if (pr.contains("j_sweep"))
        probe.levels = pr["j_sweep"].get<std::vector<int>>();
      probe.slope_threshold = pr.value("slope_threshold", probe.slope_threshold);
    }
    if (cfg.contains("sweep")) sweep = cfg["sweep"];
  }

  void open_output() {
    if (out_path.empty()) return;
    file.open(out_path);
    if (!file) throw std::invalid_argument("cannot open output: " + out_path);
    os = &file;
  }

  bool json_mode() const { return format == "json"; }
};

std::string fmt(double v) {
  if (besov::is_inf(v)) return "inf";
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

json params_json(const besov::BesovParams& p) {
  json j;
  j["s"] = p.s;
  j["p"] = besov::format_exponent(p.p);
  j["q"] = besov::format_exponent(p.q);
  j["tau"] = p.tau;
  j["n"] = p.n;
  return j;
}

void emit_json(Session& session, json& body) {
  body["seed"] = session.seed;
  *session.os << body.dump(2) << "\n";
}

// --- aj-verify ------------------------------------------------------------

void run_aj_verify(Session& session, int dim, double alpha, int level) {
  const auto set = besov::construct_distributed_cubes(dim, alpha, level);
  const auto report = besov::verify_distribution_bounds(set);

  if (session.json_mode()) {
    json body;
    body["dim"] = dim;
    body["alpha"] = alpha;
    body["level"] = level;
    body["c_tilde"] = set.c_tilde;
    body["cardinality"] = set.members.size();
    body["pass"] = report.pass;
    body["levels"] = json::array();
    for (const auto& lc : report.levels) {
      json row;
      row["coarse_level"] = lc.coarse_level;
      row["corner_count"] = lc.corner_count;
      row["max_count"] = lc.max_count;
      row["pin_lower"] = lc.pin_lower;
      row["pin_upper"] = lc.pin_upper;
      row["balance_ok"] = lc.balance_ok;
      row["pinning_ok"] = lc.pinning_ok;
      body["levels"].push_back(row);
    }
    emit_json(session, body);
  } else {
    *session.os
        << "coarse_level,corner_count,max_count,pin_lower,pin_upper,balance_ok,"
           "pinning_ok\n";
    for (const auto& lc : report.levels)
      *session.os << lc.coarse_level << ',' << lc.corner_count << ','
                  << lc.max_count << ',' << fmt(lc.pin_lower) << ','
                  << fmt(lc.pin_upper) << ',' << lc.balance_ok << ','
                  << lc.pinning_ok << "\n";
  }
  if (session.check && !report.pass)
    throw CheckFailure("distribution bounds violated");
}

// --- haar-analyze ---------------------------------------------------------

besov::Box box_from_options(const std::string& box_text, double shift, int dim) {
  if (!box_text.empty()) {
    const auto parts = split(box_text, ',');
    if (parts.size() < 2 || parts.size() % 2 != 0)
      throw std::invalid_argument("--box wants lo1,hi1[,lo2,hi2,...]");
    besov::Box box;
    for (std::size_t i = 0; i < parts.size(); i += 2) {
      box.lo.push_back(std::stod(parts[i]));
      box.hi.push_back(std::stod(parts[i + 1]));
    }
    box.validate();
    return box;
  }
  return besov::Box::shifted_unit(dim, shift);
}

void run_haar_analyze(Session& session, const besov::Box& box, int jmax) {
  const auto field = besov::analyze_box(box, jmax);
  if (session.json_mode()) {
    json body;
    body["dim"] = field.dim();
    body["max_level"] = field.max_level();
    body["scaling_count"] = field.scaling_count();
    body["wavelet_count"] = field.wavelet_count();
    json rows = json::array();
    for (const auto& [off, v] : field.scaling_entries()) {
      json row;
      row["kind"] = "scaling";
      row["m"] = off;
      row["value"] = v;
      rows.push_back(row);
    }
    for (const auto& [lvl, entries] : field.wavelet_levels()) {
      for (const auto& [key, v] : entries) {
        json row;
        row["kind"] = "wavelet";
        row["i"] = key.first;
        row["j"] = lvl;
        row["m"] = key.second;
        row["value"] = v;
        rows.push_back(row);
      }
    }
    body["coefficients"] = std::move(rows);
    emit_json(session, body);
  } else {
    besov::write_coefficients_csv(field, *session.os);
  }
}

// --- norm -----------------------------------------------------------------

void run_norm(Session& session, const std::string& in_path, int jmax,
              int min_level, const std::string& kind, bool brute) {
  if (!session.params_given)
    throw std::invalid_argument("norm needs --params (or a config with params)");
  const auto field = besov::read_coefficients_csv_file(in_path);
  besov::EnumerationPolicy policy = besov::EnumerationPolicy::covering(
      field, jmax >= 0 ? jmax : std::max(field.max_level(), 0));
  if (min_level <= 0) policy.min_level = min_level;

  const bool star = kind == "lambda-star";
  if (!star && kind != "b") throw std::invalid_argument("--kind wants b|lambda-star");
  const double value = star ? besov::lambda_star_norm(field, session.params, policy)
                            : besov::b_norm(field, session.params, policy);
  double brute_value = 0.0;
  if (brute)
    brute_value = star
                      ? besov::brute_force_lambda_star(field, session.params, policy)
                      : besov::brute_force_norm(field, session.params, policy);

  if (session.json_mode()) {
    json body;
    body["params"] = params_json(session.params);
    body["kind"] = kind;
    body["value"] = value;
    if (brute) body["brute_value"] = brute_value;
    emit_json(session, body);
  } else {
    *session.os << "kind,value\n" << kind << ',' << fmt(value) << "\n";
    if (brute) *session.os << "brute," << fmt(brute_value) << "\n";
  }
  if (session.check && brute) {
    const double ref = std::max({std::abs(value), std::abs(brute_value), 1e-300});
    if (std::abs(value - brute_value) / ref > 1e-9)
      throw CheckFailure("aggregated and brute-force norms disagree");
  }
}

// --- probe-chi ------------------------------------------------------------

void run_probe(Session& session) {
  if (!session.params_given)
    throw std::invalid_argument("probe-chi needs --params");
  const auto report = besov::probe_chi_membership(session.params, session.probe);

  if (session.json_mode()) {
    json body;
    body["params"] = params_json(session.params);
    body["levels"] = report.levels;
    body["norms"] = report.norms;
    body["fitted_slope"] = report.fitted_slope;
    body["tail_slope"] = report.tail_slope;
    body["predicted_slope"] = report.predicted_slope;
    body["classification"] = report.divergent ? "divergent" : "bounded";
    body["boundary_case"] = report.boundary_case;
    if (report.boundary_case) body["boundary_ratio"] = report.boundary_ratio;
    body["predicted_member"] = report.predicted.member;
    body["predicted_condition"] = report.predicted.active_condition;
    emit_json(session, body);
  } else {
    *session.os << "J,norm,log2_norm\n";
    for (std::size_t i = 0; i < report.levels.size(); ++i)
      *session.os << report.levels[i] << ',' << fmt(report.norms[i]) << ','
                  << fmt(std::log2(report.norms[i])) << "\n";
    std::cerr << "slope " << fmt(report.fitted_slope) << ", classified "
              << (report.divergent ? "divergent" : "bounded") << ", predicate "
              << (report.predicted.member ? "member" : "not a member") << " ("
              << report.predicted.active_condition << ")\n";
  }
  if (session.check && report.divergent == report.predicted.member)
    throw CheckFailure("probe classification disagrees with the predicate");
}

// --- family ---------------------------------------------------------------

besov::LambdaRule parse_rule(const std::string& text, const besov::BesovParams& p) {
  const auto parts = split(text, ':');
  const std::string& name = parts[0];
  const double arg = parts.size() > 1 ? std::stod(parts[1]) : 0.0;
  if (name == "constant") return besov::LambdaRule::constant(parts.size() > 1 ? arg : 1.0);
  if (name == "power") return besov::LambdaRule::power(arg);
  if (name == "linear") return besov::LambdaRule::linear_power();
  if (name == "harmonic") return besov::LambdaRule::harmonic_power(arg);
  (void)p;
  throw std::invalid_argument("--rule wants constant[:c]|power:a|linear|harmonic:a");
}

void emit_experiment(Session& session, const besov::ExperimentTable& table) {
  if (session.json_mode()) {
    json body;
    body["kind"] = besov::to_string(table.kind);
    body["start_level"] = table.start_level;
    body["region"] = besov::to_string(table.region.value);
    body["region_condition"] = table.region.active_condition;
    body["rows"] = json::array();
    for (const auto& r : table.rows) {
      json row;
      row["N"] = r.top_level;
      row["norm"] = r.norm;
      row["pairing"] = r.pairing;
      row["ratio"] = r.ratio;
      body["rows"].push_back(row);
    }
    emit_json(session, body);
  } else {
    *session.os << "N,norm,pairing,ratio\n";
    for (const auto& r : table.rows)
      *session.os << r.top_level << ',' << fmt(r.norm) << ',' << fmt(r.pairing)
                  << ',' << fmt(r.ratio) << "\n";
  }
  if (session.check && table.rows.size() >= 2 &&
      !(table.rows.back().ratio > table.rows.front().ratio))
    throw CheckFailure("pairing/norm ratio failed to grow across the sweep");
}

void run_family(Session& session, const std::string& experiment,
                const std::string& kind_text, const std::string& rule_text,
                int start, const std::string& tops_text, double alpha) {
  if (!session.params_given)
    throw std::invalid_argument("family needs --params");
  std::vector<int> tops = tops_text.empty() ? std::vector<int>{4, 6, 8, 10}
                                            : parse_int_list(tops_text);

  if (!experiment.empty()) {
    besov::DivergenceKind kind;
    if (experiment == "harmonic-face")
      kind = besov::DivergenceKind::HarmonicFace;
    else if (experiment == "linear-face")
      kind = besov::DivergenceKind::LinearFace;
    else if (experiment == "harmonic-sparse")
      kind = besov::DivergenceKind::HarmonicSparse;
    else if (experiment == "harmonic-column")
      kind = besov::DivergenceKind::HarmonicColumn;
    else
      throw std::invalid_argument(
          "--experiment wants harmonic-face|linear-face|harmonic-sparse|"
          "harmonic-column");
    emit_experiment(session,
                    besov::divergence_experiment(kind, session.params,
                                                 session.gen, tops));
    return;
  }

  const besov::BesovParams& params = session.params;
  const besov::LambdaRule rule = parse_rule(rule_text, params);
  if (start < 0) start = session.gen.min_start_level;

  besov::ExperimentTable table;
  table.start_level = start;
  table.region = besov::functional_verdict(params);
  for (int N : tops) {
    besov::ExperimentRow row;
    row.top_level = N;
    if (kind_text == "face") {
      row.norm = besov::face_layer_norm(params, rule, start, N);
      row.pairing =
          besov::face_layer_pairing(session.gen, rule, params.n, start, N);
    } else if (kind_text == "column") {
      row.norm = besov::single_column_norm(params, rule, start, N);
      row.pairing =
          besov::single_column_pairing(session.gen, rule, params.n, start, N);
    } else if (kind_text == "sparse") {
      besov::TestFamilySpec spec;
      spec.kind = besov::FamilyKind::SparseLayer;
      spec.dim = params.n;
      spec.start_level = start;
      spec.top_level = N;
      spec.lambda = rule;
      spec.gen = session.gen;
      spec.alpha = alpha > 0.0 ? alpha : params.n * params.p * params.tau;
      row.norm = besov::sparse_layer_norm(params, rule, start, N);
      row.pairing = besov::sparse_layer_pairing(spec).value;
    } else {
      throw std::invalid_argument("--kind wants face|sparse|column");
    }
    row.ratio = row.norm > 0.0 ? std::abs(row.pairing) / row.norm : 0.0;
    table.rows.push_back(row);
  }
  emit_experiment(session, table);
}

// --- regions --------------------------------------------------------------

std::vector<besov::BesovParams> sweep_grid(const Session& session) {
  if (session.sweep.is_null()) {
    if (!session.params_given)
      throw std::invalid_argument("regions needs --params or a sweep config");
    return {session.params};
  }
  auto axis_d = [&](const char* key, double fallback) {
    std::vector<double> vals;
    if (session.sweep.contains(key))
      for (const auto& v : session.sweep[key]) vals.push_back(json_exponent(v));
    if (vals.empty()) vals.push_back(fallback);
    return vals;
  };
  std::vector<int> ns;
  if (session.sweep.contains("n"))
    for (const auto& v : session.sweep["n"]) ns.push_back(v.get<int>());
  if (ns.empty()) ns.push_back(session.params.n);

  std::vector<besov::BesovParams> grid;
  for (int n : ns)
    for (double p : axis_d("p", session.params.p))
      for (double q : axis_d("q", session.params.q))
        for (double tau : axis_d("tau", session.params.tau))
          for (double s : axis_d("s", session.params.s)) {
            besov::BesovParams t;
            t.s = s;
            t.p = p;
            t.q = q;
            t.tau = tau;
            t.n = n;
            t.validate();
            grid.push_back(t);
          }
  return grid;
}

void run_regions(Session& session, bool with_probe) {
  besov::SweepOptions options;
  options.probe = with_probe;
  options.probe_options = session.probe;
  const auto rows = besov::region_sweep(sweep_grid(session), options);

  if (session.json_mode()) {
    json body;
    body["rows"] = json::array();
    for (const auto& row : rows) {
      json r;
      r["params"] = params_json(row.params);
      r["member"] = row.membership.member;
      r["membership_condition"] = row.membership.active_condition;
      r["functional"] = besov::to_string(row.functional.value);
      r["functional_condition"] = row.functional.active_condition;
      if (row.probed) {
        r["classification"] = row.probe.divergent ? "divergent" : "bounded";
        r["fitted_slope"] = row.probe.fitted_slope;
      }
      body["rows"].push_back(r);
    }
    emit_json(session, body);
  } else {
    *session.os << "s,p,q,tau,n,membership,functional,active_condition";
    if (with_probe) *session.os << ",classification,fitted_slope";
    *session.os << "\n";
    for (const auto& row : rows) {
      *session.os << fmt(row.params.s) << ','
                  << besov::format_exponent(row.params.p) << ','
                  << besov::format_exponent(row.params.q) << ','
                  << fmt(row.params.tau) << ',' << row.params.n << ','
                  << (row.membership.member ? "member" : "not-member") << ','
                  << besov::to_string(row.functional.value) << ',' << '"'
                  << row.membership.active_condition << " | "
                  << row.functional.active_condition << '"';
      if (row.probed)
        *session.os << ',' << (row.probe.divergent ? "divergent" : "bounded")
                    << ',' << fmt(row.probe.fitted_slope);
      *session.os << "\n";
    }
  }
  if (session.check && with_probe) {
    for (const auto& row : rows)
      if (row.probed && row.probe.divergent == row.membership.member)
        throw CheckFailure("probe disagrees with the predicate on the grid");
  }
}

// --- diffnorm -------------------------------------------------------------

besov::DyadicStepFunction read_cells_csv(const std::string& path, int dim,
                                         int resolution) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open cells: " + path);
  besov::DyadicStepFunction f;
  f.dim = dim;
  f.resolution = resolution;
  std::string line;
  bool first = true;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto parts = split(line, ',');
    if (first && parts.size() >= 2 && parts.back() == "value") {
      first = false;
      continue;  // optional header "m1,...,mn,value"
    }
    first = false;
    if (static_cast<int>(parts.size()) != dim + 1)
      throw std::invalid_argument("cells row wants m1,...,mn,value");
    std::vector<long long> cell(dim);
    for (int k = 0; k < dim; ++k) cell[k] = std::stoll(parts[k]);
    f.values[cell] = std::stod(parts[dim]);
  }
  return f;
}

void run_diffnorm(Session& session, const std::string& in_path, int dim,
                  int resolution, int octaves, int samples, int order) {
  const besov::DifferenceGrid grid =
      besov::DifferenceGrid::octaves(octaves, samples, order);

  if (!in_path.empty()) {
    if (!session.params_given)
      throw std::invalid_argument("diffnorm on cells needs --params");
    const auto f = read_cells_csv(in_path, dim, resolution);
    const double lp = besov::lp_tau_norm(f, session.params.p, session.params.tau);
    const double spade = besov::difference_seminorm(f, session.params, grid);
    if (session.json_mode()) {
      json body;
      body["params"] = params_json(session.params);
      body["lp_tau_norm"] = lp;
      body["difference_seminorm"] = spade;
      emit_json(session, body);
    } else {
      *session.os << "kind,value\nlp_tau," << fmt(lp) << "\ndifference,"
                  << fmt(spade) << "\n";
    }
    return;
  }

  if (!session.params_given)
    throw std::invalid_argument("diffnorm witness needs --params");
  const auto report = besov::chi_divergence_witness(session.params, grid);
  if (session.json_mode()) {
    json body;
    body["params"] = params_json(session.params);
    body["t"] = report.t_values;
    body["witness_integrals"] = report.witness_integrals;
    body["shell_sups"] = report.shell_sups;
    body["partial_sums"] = report.partial_sums;
    body["slope_per_octave"] = report.slope_per_octave;
    emit_json(session, body);
  } else {
    *session.os << "octave,t,witness_integral,shell_sup,partial_sum\n";
    for (std::size_t i = 0; i < report.t_values.size(); ++i)
      *session.os << i + 1 << ',' << fmt(report.t_values[i]) << ','
                  << fmt(report.witness_integrals[i]) << ','
                  << fmt(report.shell_sups[i]) << ','
                  << fmt(report.partial_sums[i]) << "\n";
  }
  if (session.check) {
    for (std::size_t i = 0; i < report.t_values.size(); ++i)
      if (report.shell_sups[i] < report.t_values[i] / 2.0)
        throw CheckFailure("shell sup fell below the t/2 witness bound");
    for (std::size_t i = 1; i + 1 < report.partial_sums.size(); ++i) {
      const double a = report.partial_sums[i] - report.partial_sums[i - 1];
      const double b = report.partial_sums[i + 1] - report.partial_sums[i];
      if (std::abs(a - b) > 1e-12 * std::max(1.0, std::abs(a)))
        throw CheckFailure("partial q-sums are not linear in octave count");
    }
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Dyadic-analysis toolbox: distributed cube sets, box wavelet analysis, "
      "Morrey-weighted sequence norms, membership probes, extremal family "
      "experiments, parameter-region tables, and difference norms."};
  app.require_subcommand(1);

  Session session;
  std::string params_text, config_path;
  app.add_option("--params", params_text, "s,p,q,tau,n (p and q accept 'inf')");
  app.add_option("--config", config_path, "JSON config file");
  app.add_option("--out", session.out_path, "output path (default stdout)");
  app.add_option("--format", session.format, "csv|json")
      ->check(CLI::IsMember({"csv", "json"}));
  app.add_option("--seed", session.seed, "seed recorded in JSON reports");
  app.add_flag("--check", session.check, "verify and exit 3 on failure");
  int jmax = -1;
  app.add_option("--jmax", jmax, "deepest wavelet level");

  // aj-verify
  auto* aj = app.add_subcommand(
      "aj-verify", "construct a distributed cube set and verify its bounds");
  aj->fallthrough();
  int aj_dim = 1, aj_level = 6;
  double aj_alpha = 0.5;
  aj->add_option("--dim", aj_dim, "ambient dimension")->required();
  aj->add_option("--alpha", aj_alpha, "density exponent in (0, dim)")->required();
  aj->add_option("--level", aj_level, "construction depth")->required();

  // haar-analyze
  auto* ha = app.add_subcommand("haar-analyze",
                                "exact wavelet analysis of a box indicator");
  ha->fallthrough();
  std::string ha_box;
  double ha_shift = 1.0 / 3.0;
  int ha_dim = 1;
  ha->add_option("--box", ha_box, "lo1,hi1[,lo2,hi2,...]");
  ha->add_option("--shift", ha_shift, "unit box shifted by this much per axis");
  ha->add_option("--dim", ha_dim, "dimension for --shift mode");

  // norm
  auto* no = app.add_subcommand("norm", "sequence norm of a coefficient CSV");
  no->fallthrough();
  std::string no_in, no_kind = "lambda-star";
  int no_min_level = 1;  // sentinel > 0: keep the covering policy's choice
  bool no_brute = false;
  no->add_option("--in", no_in, "coefficient CSV path")->required();
  no->add_option("--kind", no_kind, "b|lambda-star");
  no->add_option("--min-level", no_min_level, "coarsest outer-cube level (<= 0)");
  no->add_flag("--brute", no_brute, "also run the brute-force oracle");

  // probe-chi
  auto* pr = app.add_subcommand(
      "probe-chi", "truncated-norm growth probe for a shifted box indicator");
  pr->fallthrough();
  double pr_shift = 0.0;
  std::string pr_sweep;
  double pr_threshold = 0.0;
  pr->add_option("--shift", pr_shift, "non-dyadic shift (default 1/3)");
  pr->add_option("--sweep", pr_sweep, "comma-separated truncation levels");
  pr->add_option("--slope-threshold", pr_threshold, "divergence threshold");

  // family
  auto* fa = app.add_subcommand(
      "family", "closed-form norms and pairings of the extremal families");
  fa->fallthrough();
  std::string fa_experiment, fa_kind = "face", fa_rule = "constant", fa_tops;
  int fa_start = -1;
  double fa_alpha = 0.0;
  fa->add_option("--experiment", fa_experiment,
                 "harmonic-face|linear-face|harmonic-sparse|harmonic-column");
  fa->add_option("--kind", fa_kind, "face|sparse|column");
  fa->add_option("--rule", fa_rule, "constant[:c]|power:a|linear|harmonic:a");
  fa->add_option("--start", fa_start, "first populated level");
  fa->add_option("--levels", fa_tops, "comma-separated truncation levels");
  fa->add_option("--alpha", fa_alpha, "sparse-layer density (default n*p*tau)");

  // regions
  auto* re = app.add_subcommand(
      "regions", "membership and extension verdicts over a parameter grid");
  re->fallthrough();
  bool re_probe = false;
  re->add_flag("--probe", re_probe, "attach empirical probe columns");

  // diffnorm
  auto* di = app.add_subcommand(
      "diffnorm", "difference norms; default mode is the box-indicator witness");
  di->fallthrough();
  std::string di_in;
  int di_dim = 1, di_resolution = 0, di_octaves = 8, di_samples = 4, di_order = 1;
  di->add_option("--in", di_in, "cells CSV (m1,...,mn,value)");
  di->add_option("--dim", di_dim, "cells dimension");
  di->add_option("--resolution", di_resolution, "cells resolution");
  di->add_option("--octaves", di_octaves, "t grid depth");
  di->add_option("--samples", di_samples, "shell magnitudes per octave");
  di->add_option("--order", di_order, "difference order");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (!config_path.empty()) session.load_config(config_path);
    if (!params_text.empty()) {
      session.params = parse_params(params_text);
      session.params_given = true;
    }
    if (pr->count("--shift")) session.probe.shift.assign(1, pr_shift);
    if (!pr_sweep.empty()) session.probe.levels = parse_int_list(pr_sweep);
    if (pr->count("--slope-threshold"))
      session.probe.slope_threshold = pr_threshold;
    if (!session.probe.shift.empty() && session.params_given &&
        static_cast<int>(session.probe.shift.size()) == 1 && session.params.n > 1)
      session.probe.shift.assign(session.params.n, session.probe.shift[0]);
    session.open_output();

    if (*aj) run_aj_verify(session, aj_dim, aj_alpha, aj_level);
    if (*ha)
      run_haar_analyze(session, box_from_options(ha_box, ha_shift, ha_dim),
                       jmax >= 0 ? jmax : 6);
    if (*no) run_norm(session, no_in, jmax, no_min_level, no_kind, no_brute);
    if (*pr) {
      if (jmax >= 0 && session.probe.levels.empty())
        for (int j = 4; j <= jmax; ++j) session.probe.levels.push_back(j);
      run_probe(session);
    }
    if (*fa) {
      if (!fa_tops.empty() || jmax < 0) {
        run_family(session, fa_experiment, fa_kind, fa_rule, fa_start, fa_tops,
                   fa_alpha);
      } else {
        std::string tops;
        for (int N = 4; N <= jmax; N += 2)
          tops += (tops.empty() ? "" : ",") + std::to_string(N);
        run_family(session, fa_experiment, fa_kind, fa_rule, fa_start, tops,
                   fa_alpha);
      }
    }
    if (*re) run_regions(session, re_probe);
    if (*di)
      run_diffnorm(session, di_in, di_dim, di_resolution, di_octaves, di_samples,
                   di_order);
  } catch (const CheckFailure& e) {
    std::cerr << "check failed: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}

// Command-line surface for the spherical-oscillator library. Subcommands
// mirror the library modules; output is a plain table, JSON, or CSV, always
// with the certified or estimated error next to each numeric result.

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "sphosc/sphosc.hpp"

namespace {

using json = nlohmann::ordered_json;

struct OutputSink {
  std::string format = "table";
  std::string out_path;

  void emit(const std::string& text) const {
    if (out_path.empty()) {
      std::cout << text;
    } else {
      std::ofstream f(out_path);
      if (!f) throw std::runtime_error("cannot open output file: " + out_path);
      f << text;
    }
  }
};

std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

// CSV body: header + one row per record under payload[rows_key].
std::string to_csv(const json& payload, const std::string& rows_key) {
  std::ostringstream os;
  os << std::setprecision(17);
  const auto& rows = payload.at(rows_key);
  if (rows.empty()) return "";
  bool first = true;
  for (const auto& [key, _] : rows.front().items()) {
    os << (first ? "" : ",") << csv_escape(key);
    first = false;
  }
  os << "\n";
  for (const auto& row : rows) {
    first = true;
    for (const auto& [_, val] : row.items()) {
      os << (first ? "" : ",");
      first = false;
      if (val.is_number_float())
        os << val.get<double>();
      else if (val.is_string())
        os << csv_escape(val.get<std::string>());
      else
        os << val.dump();
    }
    os << "\n";
  }
  return os.str();
}

json make_envelope(const std::string& command, json parameters, json results) {
  return json{{"command", command},
              {"parameters", std::move(parameters)},
              {"results", std::move(results)},
              {"version", sphosc::kVersion}};
}

void emit_payload(const OutputSink& sink, const json& envelope, const std::string& rows_key,
                  const std::string& table_text) {
  if (sink.format == "json") {
    sink.emit(envelope.dump(2) + "\n");
  } else if (sink.format == "csv") {
    sink.emit(to_csv(envelope.at("results"), rows_key));
  } else {
    sink.emit(table_text);
  }
}

void add_format_flags(CLI::App* cmd, OutputSink& sink) {
  cmd->add_option("--format", sink.format, "output format")
      ->check(CLI::IsMember({"table", "json", "csv"}))
      ->capture_default_str();
  cmd->add_option("--out", sink.out_path, "write output to a file instead of stdout");
}

// ---------------------------------------------------------------- spectrum

int run_spectrum(int d, double omega, std::optional<double> lambda_max, std::optional<int> count,
                 double group_tol, const OutputSink& sink) {
  const sphosc::ModelParams params{d, omega};
  double cutoff;
  if (lambda_max) {
    cutoff = *lambda_max;
  } else {
    cutoff = sphosc::eigenvalue(params, {0, 0});
    double step = 1.0;
    while (static_cast<int>(sphosc::enumerate_spectrum(params, cutoff).size()) < *count) {
      cutoff += step;
      step *= 2.0;
    }
  }
  auto records = sphosc::enumerate_spectrum(params, cutoff);
  if (count && static_cast<int>(records.size()) > *count) records.resize(*count);
  const auto groups = sphosc::group_degeneracies(records, group_tol);

  json rows = json::array();
  for (const auto& r : records)
    rows.push_back({{"m", r.mode.m},
                    {"n", r.mode.n},
                    {"lambda", r.lambda},
                    {"lambda_shifted", r.lambda_shifted},
                    {"multiplicity", r.multiplicity}});
  json grows = json::array();
  for (const auto& g : groups) {
    json members = json::array();
    for (auto mode : g.members) members.push_back({{"m", mode.m}, {"n", mode.n}});
    grows.push_back({{"value", g.value},
                     {"total_multiplicity", g.total_multiplicity},
                     {"degenerate", g.members.size() > 1},
                     {"members", members}});
  }
  const auto gs = sphosc::ground_state(params);
  json results{{"ground_state", {{"exponent", gs.exponent}, {"energy", gs.energy}}},
               {"records", rows},
               {"groups", grows}};
  json parameters{{"d", d}, {"omega", omega}, {"lambda_max", cutoff}, {"group_tol", group_tol}};

  std::ostringstream table;
  table << std::setprecision(10);
  table << "# spectrum d=" << d << " omega=" << omega << " (ground energy " << gs.energy << ")\n";
  table << "m\tn\tlambda\tshifted\tmult\n";
  for (const auto& r : records)
    table << r.mode.m << "\t" << r.mode.n << "\t" << r.lambda << "\t" << r.lambda_shifted << "\t"
          << r.multiplicity << "\n";
  table << "# degeneracy groups (tol " << group_tol << ")\n";
  table << "value\ttotal_mult\tmodes\n";
  for (const auto& g : groups) {
    table << g.value << "\t" << g.total_multiplicity << "\t";
    for (std::size_t i = 0; i < g.members.size(); ++i)
      table << (i ? " " : "") << "(" << g.members[i].m << "," << g.members[i].n << ")";
    if (g.members.size() > 1) table << "  <- degenerate";
    table << "\n";
  }

  emit_payload(sink, make_envelope("spectrum", parameters, results), "records", table.str());
  return 0;
}

// --------------------------------------------------------------- partition

int run_partition(int d, double omega, const std::vector<double>& ts, double tol,
                  bool check_poisson, const OutputSink& sink) {
  const sphosc::ModelParams params{d, omega};
  if (check_poisson && (d != 1 || omega != 0))
    throw std::invalid_argument("--check-poisson applies only to d=1, omega=0");

  json rows = json::array();
  std::ostringstream table;
  table << std::setprecision(10);
  table << "# partition trace d=" << d << " omega=" << omega << " (abs tol " << tol << ")\n";
  table << (check_poisson ? "t\tvalue\ttail_bound\tterms\tpoisson_dual\tdeviation\n"
                          : "t\tvalue\ttail_bound\tterms\n");
  double max_dev = 0;
  for (double t : ts) {
    const auto z = sphosc::partition_function(params, t, tol);
    json row{{"t", t}, {"value", z.value}, {"tail_bound", z.tail_bound}, {"terms_used", z.terms_used}};
    table << t << "\t" << z.value << "\t" << z.tail_bound << "\t" << z.terms_used;
    if (check_poisson) {
      const double dual = sphosc::poisson_dual_d1(t);
      const double dev = std::abs(z.value - dual) / dual;
      max_dev = std::max(max_dev, dev);
      row["poisson_dual"] = dual;
      row["rel_deviation"] = dev;
      table << "\t" << dual << "\t" << dev;
    }
    table << "\n";
    rows.push_back(std::move(row));
  }
  json results{{"evaluations", rows}};
  if (check_poisson) {
    results["max_poisson_deviation"] = max_dev;
    table << "# max relative deviation from Poisson dual: " << max_dev << "\n";
  }
  json parameters{{"d", d}, {"omega", omega}, {"abs_tol", tol}, {"check_poisson", check_poisson}};
  emit_payload(sink, make_envelope("partition", parameters, results), "evaluations", table.str());
  return 0;
}

// ------------------------------------------------------------------ verify

int run_verify(int d, double omega, std::vector<int> ns, int count, int grid,
               const OutputSink& sink) {
  const sphosc::ModelParams params{d, omega};
  if (ns.empty()) ns = {0};

  json rows = json::array();
  std::ostringstream table;
  table << std::setprecision(10);
  table << "# closed form vs Sturm-Liouville oracle, d=" << d << " omega=" << omega << " grid N="
        << grid << "/" << 2 * grid << "\n";
  table << "n\tm\tclosed_form\toracle\trel_error\toracle_error_est\n";
  double worst = 0;
  for (int n : ns) {
    sphosc::DiscretizationConfig cfg{params, n, grid};
    const auto oracle = sphosc::lowest_eigenvalues(cfg, count);
    for (int m = 0; m < count; ++m) {
      const double closed = sphosc::eigenvalue(params, {m, n});
      const double got = oracle.eigenvalues[m];
      const double rel = std::abs(got - closed) / std::max(1.0, std::abs(closed));
      worst = std::max(worst, rel);
      rows.push_back({{"n", n},
                      {"m", m},
                      {"closed_form", closed},
                      {"oracle", got},
                      {"rel_error", rel},
                      {"oracle_error_est", oracle.estimated_error[m]}});
      table << n << "\t" << m << "\t" << closed << "\t" << got << "\t" << rel << "\t"
            << oracle.estimated_error[m] << "\n";
    }
  }
  table << "# worst relative error: " << worst << "\n";
  json parameters{{"d", d}, {"omega", omega}, {"n_list", ns}, {"count", count}, {"grid", grid}};
  json results{{"comparisons", rows}, {"worst_rel_error", worst}};
  emit_payload(sink, make_envelope("verify", parameters, results), "comparisons", table.str());
  return 0;
}

// -------------------------------------------------------------- mulholland

int run_mulholland(int order, const OutputSink& sink) {
  const auto coeffs = sphosc::mulholland_coeffs(order);
  json rows = json::array();
  std::ostringstream table;
  table << std::setprecision(10);
  table << "# Mulholland coefficients a_n of sum (2n+1) exp(-t(n+1/2)^2) ~ 1/t + a_0 + a_1 t + ...\n";
  table << "n\texact\tdecimal\n";
  for (int j = 0; j <= order; ++j) {
    std::ostringstream frac;
    frac << boost::multiprecision::numerator(coeffs.exact[j]) << "/"
         << boost::multiprecision::denominator(coeffs.exact[j]);
    rows.push_back({{"n", j}, {"exact", frac.str()}, {"decimal", coeffs.values[j]}});
    table << j << "\t" << frac.str() << "\t" << coeffs.values[j] << "\n";
  }
  emit_payload(sink, make_envelope("mulholland", json{{"order", order}}, json{{"coefficients", rows}}),
               "coefficients", table.str());
  return 0;
}

// ------------------------------------------------------------------ chiral

int run_chiral(double t, int k_max, double tol, const std::string& mode_name,
               const OutputSink& sink) {
  const auto mode = mode_name == "shifted" ? sphosc::ChiralExponentMode::shifted
                                           : sphosc::ChiralExponentMode::verbatim;
  const auto res = sphosc::chiral_partition(t, k_max, tol, mode);
  json rows = json::array();
  for (int k = 1; k <= k_max; ++k)
    rows.push_back({{"k", k}, {"factor", res.level_factors[k - 1]}});
  json results{{"value", res.value},
               {"rel_error_bound", res.rel_error_bound},
               {"level_truncation", res.level_truncation},
               {"converged", res.converged},
               {"level_factors", rows}};
  json parameters{{"t", t}, {"k_max", k_max}, {"abs_tol", tol}, {"exponent_mode", mode_name}};

  std::ostringstream table;
  table << std::setprecision(10);
  table << "# chiral partition t=" << t << " k_max=" << k_max << " mode=" << mode_name << "\n";
  table << "value\t" << res.value << "\n";
  table << "rel_error_bound\t" << res.rel_error_bound << "\n";
  table << "level_truncation\t" << res.level_truncation << (res.converged ? "" : "  <- NOT converged")
        << "\n";
  table << "k\tfactor\n";
  for (int k = 1; k <= k_max; ++k) table << k << "\t" << res.level_factors[k - 1] << "\n";

  emit_payload(sink, make_envelope("chiral", parameters, results), "level_factors", table.str());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Spectral toolkit for the spherical harmonic oscillator"};
  app.require_subcommand(1);
  app.set_version_flag("--version", sphosc::kVersion);

  // spectrum
  auto* spectrum = app.add_subcommand("spectrum", "enumerate eigenvalues and degeneracy groups");
  int sp_d = 2;
  double sp_omega = 0;
  std::optional<double> sp_lambda_max;
  std::optional<int> sp_count;
  double sp_tol = 1e-9;
  OutputSink sp_sink;
  spectrum->add_option("-d,--dimension", sp_d, "sphere dimension")->required();
  spectrum->add_option("--omega", sp_omega, "frequency")->capture_default_str();
  auto* lm = spectrum->add_option("--lambda-max", sp_lambda_max, "eigenvalue cutoff");
  spectrum->add_option("--count", sp_count, "number of records")->excludes(lm);
  spectrum->add_option("--tol", sp_tol, "degeneracy grouping tolerance")->capture_default_str();
  add_format_flags(spectrum, sp_sink);

  // partition
  auto* partition = app.add_subcommand("partition", "certified heat-trace evaluation");
  int pa_d = 2;
  double pa_omega = 0;
  std::vector<double> pa_t;
  double pa_tol = 1e-12;
  bool pa_poisson = false;
  OutputSink pa_sink;
  partition->add_option("-d,--dimension", pa_d, "sphere dimension")->required();
  partition->add_option("--omega", pa_omega, "frequency")->capture_default_str();
  partition->add_option("-t", pa_t, "evaluation points t > 0")->required();
  partition->add_option("--tol", pa_tol, "absolute truncation tolerance")->capture_default_str();
  partition->add_flag("--check-poisson", pa_poisson, "compare against the Poisson dual (d=1, omega=0)");
  add_format_flags(partition, pa_sink);

  // verify
  auto* verify = app.add_subcommand("verify", "closed forms vs the discretization oracle");
  int ve_d = 2;
  double ve_omega = 0;
  std::vector<int> ve_n;
  int ve_count = 5;
  int ve_grid = 4000;
  OutputSink ve_sink;
  verify->add_option("-d,--dimension", ve_d, "sphere dimension")->required();
  verify->add_option("--omega", ve_omega, "frequency")->capture_default_str();
  verify->add_option("-n", ve_n, "angular degrees (default 0)")->delimiter(',');
  verify->add_option("--count", ve_count, "eigenvalues per degree")->capture_default_str();
  verify->add_option("--grid", ve_grid, "coarse grid size (refined at 2N)")->capture_default_str();
  add_format_flags(verify, ve_sink);

  // mulholland
  auto* mulholland = app.add_subcommand("mulholland", "exact asymptotic coefficients");
  int mu_order = 10;
  OutputSink mu_sink;
  mulholland->add_option("--order", mu_order, "highest coefficient index")->capture_default_str();
  add_format_flags(mulholland, mu_sink);

  // chiral
  auto* chiral = app.add_subcommand("chiral", "conjectural chiral-model partition product");
  double ch_t = 1;
  int ch_kmax = 8;
  double ch_tol = 1e-10;
  std::string ch_mode = "verbatim";
  OutputSink ch_sink;
  chiral->add_option("-t", ch_t, "evaluation point t > 0")->required();
  chiral->add_option("--k-max", ch_kmax, "level cutoff")->capture_default_str();
  chiral->add_option("--tol", ch_tol, "per-level absolute tolerance")->capture_default_str();
  chiral->add_option("--exponent-mode", ch_mode, "verbatim or shifted exponent reading")
      ->check(CLI::IsMember({"verbatim", "shifted"}))
      ->capture_default_str();
  add_format_flags(chiral, ch_sink);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (spectrum->parsed()) {
      if (!sp_lambda_max && !sp_count)
        throw CLI::ValidationError("spectrum", "one of --lambda-max or --count is required");
      return run_spectrum(sp_d, sp_omega, sp_lambda_max, sp_count, sp_tol, sp_sink);
    }
    if (partition->parsed()) return run_partition(pa_d, pa_omega, pa_t, pa_tol, pa_poisson, pa_sink);
    if (verify->parsed()) return run_verify(ve_d, ve_omega, ve_n, ve_count, ve_grid, ve_sink);
    if (mulholland->parsed()) return run_mulholland(mu_order, mu_sink);
    if (chiral->parsed()) return run_chiral(ch_t, ch_kmax, ch_tol, ch_mode, ch_sink);
  } catch (const CLI::ValidationError& e) {
    std::cerr << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}

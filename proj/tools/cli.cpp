// Copyright 2026 The cwpotts Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "cli.hpp"

#include <cerrno>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <limits>
#include <memory>
#include <span>
#include <sstream>
#include <utility>

#include "CLI11.hpp"
#include "cwpotts/csv.hpp"
#include "cwpotts/exact_dist.hpp"
#include "cwpotts/experiments.hpp"
#include "cwpotts/free_energy.hpp"
#include "cwpotts/invariants.hpp"
#include "cwpotts/limit_laws.hpp"
#include "cwpotts/minimizers.hpp"
#include "cwpotts/rc_graph.hpp"

namespace cwpotts::cli {
namespace {

using json = nlohmann::json;

// Non-finite doubles have no JSON literal; they are written as null.
json number(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

json vector_json(std::span<const double> v) {
  json out = json::array();
  for (double x : v) out.push_back(number(x));
  return out;
}

json matrix_json(const Eigen::MatrixXd& m) {
  json out = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(number(m(i, j)));
    out.push_back(std::move(row));
  }
  return out;
}

json states_json(const MinimizerSet& set) {
  json states = json::array();
  for (std::size_t s = 0; s < set.minimizers.size(); ++s) {
    states.push_back({{"x", vector_json(set.minimizers[s].values())},
                      {"z", number(set.z_values[s])}});
  }
  return {{"regime", std::string(to_string(set.regime))},
          {"boundary_warning", set.boundary_warning},
          {"note", set.note},
          {"states", std::move(states)}};
}

template <typename T>
void put_optional(json& j, const char* key, const std::optional<T>& v) {
  j[key] = v ? json(*v) : json(nullptr);
}

template <typename T>
void get_optional(const json& j, const char* key, std::optional<T>& v) {
  if (!j.contains(key) || j.at(key).is_null()) {
    v.reset();
  } else {
    v = j.at(key).get<T>();
  }
}

template <typename T>
void get_if_present(const json& j, const char* key, T& v) {
  if (j.contains(key)) j.at(key).get_to(v);
}

struct Context {
  ExperimentConfig config;
  ModelParams params;  // resolved from (beta, h) or z
  std::int64_t cap = kDefaultLatticeCap;
  std::vector<std::int64_t> ns;
};

struct Output {
  json result;
  std::function<void(std::ostream&)> csv;  // empty when there is no table
  int exit_code = 0;
};

// Resolves (beta, h) for commands that accept --z as an alternative.
ModelParams resolve_params(const ExperimentConfig& c) {
  if (c.z) return critical_point_from_z(c.q, *c.z).params(c.q);
  return ModelParams::make(c.q, c.beta, c.h);
}

Output cmd_phase(const Context& ctx) {
  const MinimizerSet set = find_global_minimizers(ctx.params);
  Output o;
  o.result = states_json(set);
  json fe = json::array();
  for (const auto& x : set.minimizers) fe.push_back(free_energy(ctx.params, x));
  o.result["free_energy"] = std::move(fe);
  const PhaseBoundaries pb = phase_boundaries(ctx.params.q);
  o.result["boundaries"] = {
      {"beta_c", pb.beta_c}, {"beta_0", pb.beta_0}, {"h_0", pb.h_0}};
  o.csv = [set, params = ctx.params](std::ostream& out) {
    CsvTable t;
    t.header = {"state", "z"};
    for (int i = 1; i <= params.q; ++i) t.header.push_back("x" + std::to_string(i));
    t.header.emplace_back("free_energy");
    for (std::size_t s = 0; s < set.minimizers.size(); ++s) {
      std::vector<double> row{static_cast<double>(s), set.z_values[s]};
      for (double v : set.minimizers[s].values()) row.push_back(v);
      row.push_back(free_energy(params, set.minimizers[s]));
      t.rows.push_back(std::move(row));
    }
    write_csv(out, t);
  };
  return o;
}

Output cmd_critical_line(const Context& ctx) {
  const int q = ctx.config.q;
  const std::vector<double> zs = ctx.config.zs.empty()
                                     ? critical_line_grid(q, ctx.config.points)
                                     : ctx.config.zs;
  const auto rows = critical_line_table(q, zs);
  const PhaseBoundaries pb = phase_boundaries(q);
  Output o;
  o.result["boundaries"] = {
      {"beta_c", pb.beta_c}, {"beta_0", pb.beta_0}, {"h_0", pb.h_0}};
  json table = json::array();
  for (const auto& r : rows) {
    table.push_back({{"z", r.z},
                     {"beta_z", r.beta_z},
                     {"h_z", r.h_z},
                     {"h_t", r.h_t},
                     {"prob_plus", r.prob_plus},
                     {"prob_minus", r.prob_minus}});
  }
  o.result["rows"] = std::move(table);
  o.csv = [rows](std::ostream& out) {
    CsvTable t{{"z", "beta_z", "h_z", "h_t", "prob_plus", "prob_minus"}, {}};
    for (const auto& r : rows) {
      t.rows.push_back({r.z, r.beta_z, r.h_z, r.h_t, r.prob_plus, r.prob_minus});
    }
    write_csv(out, t);
  };
  return o;
}

Output cmd_exact_dist(const Context& ctx) {
  if (ctx.ns.size() != 1) {
    throw PreconditionError("exact-dist takes a single --n");
  }
  auto dist = std::make_shared<ExactDistribution>(
      exact_distribution(ctx.params, ctx.ns.front(), ctx.cap));
  const MinimizerSet set = find_global_minimizers(ctx.params);
  const double eps = ctx.config.eps.value_or(default_ball_radius(set));
  Output o;
  o.result = states_json(set);
  o.result["n"] = dist->n();
  o.result["lattice_size"] = dist->size();
  o.result["log_z"] = dist->log_z();
  o.result["eps"] = number(eps);
  json masses = json::array();
  for (const auto& x : set.minimizers) {
    masses.push_back(ball_probability(*dist, x, eps));
  }
  o.result["ball_mass"] = std::move(masses);
  o.csv = [dist](std::ostream& out) { write_distribution_csv(out, *dist); };
  return o;
}

Output cmd_fluct(const Context& ctx) {
  FluctConfig fc;
  fc.params = ctx.params;
  fc.ns = ctx.ns;
  fc.lambda = ctx.config.lambda;
  fc.nu = ctx.config.nu;
  fc.window = ctx.config.eps;
  fc.cap = ctx.cap;
  const FluctReport report = run_fluct(fc);
  Output o;
  o.result = states_json(report.states);
  o.result["window"] = number(report.window);
  json limits = json::array();
  for (const auto& k : report.limits) {
    limits.push_back({{"covariance", matrix_json(k.entries)},
                      {"rank", k.rank},
                      {"degenerate", k.degenerate}});
  }
  o.result["limits"] = std::move(limits);
  json rows = json::array();
  for (const auto& r : report.rows) {
    rows.push_back({{"state", r.state},
                    {"n", r.n},
                    {"covariance", matrix_json(r.covariance)},
                    {"max_rel_error", r.max_rel_error},
                    {"max_abs_error", r.max_abs_error},
                    {"window_mass", r.window_mass},
                    {"d_norm", r.d_norm}});
  }
  o.result["rows"] = std::move(rows);
  o.csv = [rows = report.rows](std::ostream& out) {
    CsvTable t{{"state", "n", "max_rel_error", "max_abs_error", "window_mass",
                "d_norm"},
               {}};
    for (const auto& r : rows) {
      t.rows.push_back({static_cast<double>(r.state), static_cast<double>(r.n),
                        r.max_rel_error, r.max_abs_error, r.window_mass,
                        r.d_norm});
    }
    write_csv(out, t);
  };
  return o;
}

Output cmd_coexist(const Context& ctx) {
  CoexistConfig cc;
  cc.params = ctx.params;
  cc.ns = ctx.ns;
  cc.lambda = ctx.config.lambda;
  cc.nu = ctx.config.nu;
  cc.eps = ctx.config.eps;
  cc.cap = ctx.cap;
  const CoexistReport report = run_coexist(cc);
  Output o;
  o.result = states_json(report.states);
  o.result["eps"] = report.eps;
  o.result["balls_overlap"] = report.balls_overlap;
  o.result["prediction"] = {{"tau", vector_json(report.prediction.taus)},
                            {"prob", vector_json(report.prediction.probs)}};
  json rows = json::array();
  for (const auto& r : report.rows) {
    rows.push_back({{"n", r.n},
                    {"ball_mass", vector_json(r.ball_mass)},
                    {"state_mass", vector_json(r.state_mass)},
                    {"error", vector_json(r.error)}});
  }
  o.result["rows"] = std::move(rows);
  o.csv = [report](std::ostream& out) {
    CsvTable t{{"n", "state", "ball_mass", "state_mass", "prediction", "error"},
               {}};
    for (const auto& r : report.rows) {
      for (std::size_t s = 0; s < r.ball_mass.size(); ++s) {
        t.rows.push_back({static_cast<double>(r.n), static_cast<double>(s),
                          r.ball_mass[s], r.state_mass[s],
                          report.prediction.probs[s], r.error[s]});
      }
    }
    write_csv(out, t);
  };
  return o;
}

Output cmd_tricritical(const Context& ctx) {
  const TricriticalReport report =
      run_tricritical(ctx.config.q, ctx.ns, ctx.cap);
  Output o;
  o.result = {{"beta_0", report.beta_0},
              {"h_0", report.h_0},
              {"quartic_coefficient", report.quartic_coefficient},
              {"limit_t_variance", report.limit_t_variance},
              {"limit_t_fourth_moment", report.limit_t_fourth_moment},
              {"v_limit", matrix_json(report.v_limit.entries)},
              {"v_limit_rank", report.v_limit.rank}};
  json rows = json::array();
  for (const auto& r : report.rows) {
    rows.push_back({{"n", r.n},
                    {"ks", r.ks},
                    {"t_variance", r.t_variance},
                    {"t_fourth_moment", r.t_fourth_moment},
                    {"corr_tv", vector_json(r.corr_tv)},
                    {"max_abs_corr", r.max_abs_corr},
                    {"v_covariance", matrix_json(r.v_covariance)},
                    {"v_max_rel_error", r.v_max_rel_error}});
  }
  o.result["rows"] = std::move(rows);
  o.csv = [rows = report.rows](std::ostream& out) {
    CsvTable t{{"n", "ks", "t_variance", "t_fourth_moment", "max_abs_corr",
                "v_max_rel_error"},
               {}};
    for (const auto& r : rows) {
      t.rows.push_back({static_cast<double>(r.n), r.ks, r.t_variance,
                        r.t_fourth_moment, r.max_abs_corr, r.v_max_rel_error});
    }
    write_csv(out, t);
  };
  return o;
}

Output cmd_rc_giant(const Context& ctx) {
  GiantConfig gc;
  gc.q = ctx.config.q;
  gc.gamma = ctx.config.gamma;
  gc.ns = ctx.ns;
  gc.replicas = ctx.config.replicas;
  gc.seed = ctx.config.seed;
  gc.threads = ctx.config.threads;
  gc.threshold = ctx.config.threshold;
  gc.eps = ctx.config.eps;
  gc.keep_samples = !ctx.config.sample_log.empty();
  gc.cap = ctx.cap;
  const GiantReport report = run_rc_giant(gc);
  if (gc.keep_samples) {
    std::ofstream log(ctx.config.sample_log);
    if (!log) {
      throw PreconditionError("cannot open sample log " + ctx.config.sample_log);
    }
    write_sample_log_csv(log, report.q, report.samples);
  }
  Output o;
  o.result = {{"prediction", report.prediction},
              {"threshold", report.threshold},
              {"eps", report.eps}};
  json rows = json::array();
  for (const auto& r : report.rows) {
    rows.push_back({{"n", r.n},
                    {"p", r.p},
                    {"beta_n", r.beta_n},
                    {"replicas", r.replicas},
                    {"giant_count", r.giant_count},
                    {"frequency", r.frequency},
                    {"std_error", r.std_error},
                    {"exact_ordered_mass", r.exact_ordered_mass},
                    {"exact_bias", r.exact_bias},
                    {"mc_bias", r.mc_bias},
                    {"mean_giant_fraction", r.mean_giant_fraction}});
  }
  o.result["rows"] = std::move(rows);
  o.csv = [rows = report.rows](std::ostream& out) {
    CsvTable t{{"n", "p", "beta_n", "replicas", "giant_count", "frequency",
                "std_error", "exact_ordered_mass", "exact_bias", "mc_bias",
                "mean_giant_fraction"},
               {}};
    for (const auto& r : rows) {
      t.rows.push_back({static_cast<double>(r.n), r.p, r.beta_n,
                        static_cast<double>(r.replicas),
                        static_cast<double>(r.giant_count), r.frequency,
                        r.std_error, r.exact_ordered_mass, r.exact_bias,
                        r.mc_bias, r.mean_giant_fraction});
    }
    write_csv(out, t);
  };
  return o;
}

Output cmd_rc_z(const Context& ctx) {
  const RczReport report = run_rc_z(ctx.config.q, ctx.config.beta,
                                    ctx.config.gamma, ctx.ns, ctx.cap);
  Output o;
  o.result["ll_ratio"] = report.ll_ratio;
  json rows = json::array();
  for (const auto& r : report.rows) {
    rows.push_back({{"n", r.n},
                    {"p", r.p},
                    {"exact", r.exact},
                    {"asymptotic", r.asymptotic},
                    {"difference", r.difference}});
  }
  o.result["rows"] = std::move(rows);
  o.csv = [rows = report.rows](std::ostream& out) {
    CsvTable t{{"n", "p", "exact", "asymptotic", "difference"}, {}};
    for (const auto& r : rows) {
      t.rows.push_back(
          {static_cast<double>(r.n), r.p, r.exact, r.asymptotic, r.difference});
    }
    write_csv(out, t);
  };
  return o;
}

Output cmd_selftest(const Context&) {
  const auto checks = run_invariant_suite();
  Output o;
  json list = json::array();
  int failed = 0;
  for (const auto& c : checks) {
    if (!c.passed) ++failed;
    list.push_back({{"suite", c.suite},
                    {"name", c.name},
                    {"passed", c.passed},
                    {"detail", c.detail}});
  }
  o.result = {{"checks", std::move(list)}, {"failed", failed}};
  o.exit_code = failed == 0 ? 0 : 1;
  o.csv = [checks](std::ostream& out) {
    out << "suite,name,passed\n";
    for (const auto& c : checks) {
      out << c.suite << ',' << c.name << ',' << (c.passed ? 1 : 0) << '\n';
    }
  };
  return o;
}

// Which commands take which flags.
enum Flag : unsigned {
  kBetaH = 1u << 0,
  kZ = 1u << 1,
  kN = 1u << 2,
  kGamma = 1u << 3,
  kLambdaNu = 1u << 4,
  kEps = 1u << 5,
  kMonteCarlo = 1u << 6,
  kGrid = 1u << 7,
  kBeta = 1u << 8,
};

struct Command {
  const char* name;
  const char* description;
  const char* csv_columns;
  unsigned flags;
  std::int64_t default_n;  // 0: default schedule
  Output (*handler)(const Context&);
};

constexpr Command kCommands[] = {
    {"phase", "Global minimizers and regime for (q, beta, h).",
     "state,z,x1..xq,free_energy", kBetaH, 0, cmd_phase},
    {"critical-line", "Tabulate beta_z, h_z, h_T and the pair weights over z.",
     "z,beta_z,h_z,h_t,prob_plus,prob_minus", kGrid, 0, cmd_critical_line},
    {"exact-dist", "Exact distribution of the count vector.",
     "n1..nq,log_weight,prob", kBetaH | kZ | kN | kEps, 100, cmd_exact_dist},
    {"fluct", "Exact W covariance against the limiting covariance.",
     "state,n,max_rel_error,max_abs_error,window_mass,d_norm",
     kBetaH | kZ | kN | kLambdaNu | kEps, 0, cmd_fluct},
    {"coexist", "Exact ball masses against the coexistence weights.",
     "n,state,ball_mass,state_mass,prediction,error",
     kBetaH | kZ | kN | kLambdaNu | kEps, 0, cmd_coexist},
    {"tricritical", "T marginal against the quartic law; V covariance.",
     "n,ks,t_variance,t_fourth_moment,max_abs_corr,v_max_rel_error", kN, 0,
     cmd_tricritical},
    {"rc-giant", "Monte Carlo giant-component frequency at beta_c.",
     "n,p,beta_n,replicas,giant_count,frequency,std_error,"
     "exact_ordered_mass,exact_bias,mc_bias,mean_giant_fraction",
     kN | kGamma | kEps | kMonteCarlo, 0, cmd_rc_giant},
    {"rc-z", "Exact random-cluster log partition function against the "
             "asymptotic formula.",
     "n,p,exact,asymptotic,difference", kBeta | kN | kGamma, 0, cmd_rc_z},
    {"selftest", "Run the invariant suites.", "suite,name,passed", 0, 0,
     cmd_selftest},
};

// Copies the field behind one option from one config to another.
using FieldCopy = std::function<void(const ExperimentConfig&, ExperimentConfig&)>;

struct Binding {
  CLI::Option* option;
  FieldCopy copy;
};

#define CWPOTTS_FIELD(field) \
  [](const ExperimentConfig& a, ExperimentConfig& b) { b.field = a.field; }

struct Parsed {
  const Command* command = nullptr;
  ExperimentConfig flags;
  std::string config_path;
  std::vector<Binding> bindings;
};

void add_command(CLI::App& app, const Command& cmd, Parsed& parsed,
                 std::vector<std::pair<CLI::App*, const Command*>>& subs) {
  CLI::App* sub = app.add_subcommand(cmd.name, cmd.description);
  subs.emplace_back(sub, &cmd);
  ExperimentConfig& c = parsed.flags;
  auto& b = parsed.bindings;
  b.push_back({sub->add_option("--q", c.q, "number of colors"), CWPOTTS_FIELD(q)});
  if (cmd.flags & (kBetaH | kBeta)) {
    b.push_back({sub->add_option("--beta", c.beta, "inverse temperature"),
                 CWPOTTS_FIELD(beta)});
  }
  if (cmd.flags & kBetaH) {
    b.push_back({sub->add_option("--h", c.h, "external field"), CWPOTTS_FIELD(h)});
  }
  if (cmd.flags & kZ) {
    b.push_back({sub->add_option("--z", c.z,
                                 "use the critical-line point of this z "
                                 "instead of --beta/--h"),
                 CWPOTTS_FIELD(z)});
  }
  if (cmd.flags & kN) {
    b.push_back({sub->add_option("--n", c.n, "system size schedule")
                     ->delimiter(',')
                     ->expected(1, -1),
                 CWPOTTS_FIELD(n)});
  }
  if (cmd.flags & kGamma) {
    b.push_back({sub->add_option("--gamma", c.gamma, "second-order term"),
                 CWPOTTS_FIELD(gamma)});
  }
  if (cmd.flags & kLambdaNu) {
    b.push_back({sub->add_option("--lambda", c.lambda, "beta_n = beta + lambda/n"),
                 CWPOTTS_FIELD(lambda)});
    b.push_back({sub->add_option("--nu", c.nu, "h_n = h + nu/n"),
                 CWPOTTS_FIELD(nu)});
  }
  if (cmd.flags & kEps) {
    b.push_back({sub->add_option("--eps", c.eps,
                                 "ball radius (default: one third of the "
                                 "least distance between states)"),
                 CWPOTTS_FIELD(eps)});
  }
  if (cmd.flags & kMonteCarlo) {
    b.push_back({sub->add_option("--replicas", c.replicas, "replicas per n"),
                 CWPOTTS_FIELD(replicas)});
    b.push_back({sub->add_option("--threshold", c.threshold,
                                 "giant-component fraction threshold"),
                 CWPOTTS_FIELD(threshold)});
    b.push_back({sub->add_option("--sample-log", c.sample_log,
                                 "write per-replica CSV (seed,replica,N1..Nq,"
                                 "giant_fraction,component_count)"),
                 CWPOTTS_FIELD(sample_log)});
  }
  if (cmd.flags & kGrid) {
    b.push_back({sub->add_option("--zs", c.zs, "z values")->delimiter(',')->expected(1, -1),
                 CWPOTTS_FIELD(zs)});
    b.push_back({sub->add_option("--points", c.points,
                                 "equally spaced z values when --zs is absent"),
                 CWPOTTS_FIELD(points)});
  }
  b.push_back({sub->add_option("--seed", c.seed, "random seed"), CWPOTTS_FIELD(seed)});
  b.push_back({sub->add_option("--threads", c.threads, "worker threads"),
               CWPOTTS_FIELD(threads)});
  b.push_back({sub->add_option("--format", c.format, "format of --output")
                   ->check(CLI::IsMember({"json", "csv"})),
               CWPOTTS_FIELD(format)});
  b.push_back({sub->add_option("--output", c.output, "write the result here"),
               CWPOTTS_FIELD(output)});
  b.push_back({sub->add_option("--lattice-cap", c.lattice_cap,
                               "largest lattice to enumerate"),
               CWPOTTS_FIELD(lattice_cap)});
  sub->add_option("--config", parsed.config_path,
                  "JSON config; explicit flags override its values");
  sub->footer(std::string("CSV columns: ") + cmd.csv_columns);
}

#undef CWPOTTS_FIELD

ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw PreconditionError("cannot open config " + path);
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw PreconditionError("config " + path + ": " + e.what());
  }
  if (j.contains("config")) j = j.at("config");
  return j.get<ExperimentConfig>();
}

void write_output(const ExperimentConfig& c, const json& doc, const Output& o,
                  std::ostream& out) {
  const bool csv = c.format == "csv";
  if (csv && !o.csv) throw PreconditionError("no CSV table for " + c.command);
  if (c.output.empty()) {
    if (csv) {
      o.csv(out);
    } else {
      out << doc.dump(2) << '\n';
    }
    return;
  }
  std::ofstream file(c.output);
  if (!file) throw PreconditionError("cannot open output " + c.output);
  if (csv) {
    o.csv(file);
  } else {
    file << doc.dump(2) << '\n';
  }
  out << doc.dump(2) << '\n';
}

}  // namespace

void to_json(json& j, const ExperimentConfig& c) {
  j = json{{"command", c.command},
           {"q", c.q},
           {"beta", c.beta},
           {"h", c.h},
           {"n", c.n},
           {"gamma", c.gamma},
           {"lambda", c.lambda},
           {"nu", c.nu},
           {"zs", c.zs},
           {"points", c.points},
           {"seed", c.seed},
           {"replicas", c.replicas},
           {"threads", c.threads},
           {"output", c.output},
           {"format", c.format},
           {"sample_log", c.sample_log}};
  put_optional(j, "z", c.z);
  put_optional(j, "eps", c.eps);
  put_optional(j, "threshold", c.threshold);
  put_optional(j, "lattice_cap", c.lattice_cap);
}

void from_json(const json& j, ExperimentConfig& c) {
  if (!j.is_object()) throw PreconditionError("config must be a JSON object");
  get_if_present(j, "command", c.command);
  get_if_present(j, "q", c.q);
  get_if_present(j, "beta", c.beta);
  get_if_present(j, "h", c.h);
  get_if_present(j, "n", c.n);
  get_if_present(j, "gamma", c.gamma);
  get_if_present(j, "lambda", c.lambda);
  get_if_present(j, "nu", c.nu);
  get_if_present(j, "zs", c.zs);
  get_if_present(j, "points", c.points);
  get_if_present(j, "seed", c.seed);
  get_if_present(j, "replicas", c.replicas);
  get_if_present(j, "threads", c.threads);
  get_if_present(j, "output", c.output);
  get_if_present(j, "format", c.format);
  get_if_present(j, "sample_log", c.sample_log);
  get_optional(j, "z", c.z);
  get_optional(j, "eps", c.eps);
  get_optional(j, "threshold", c.threshold);
  get_optional(j, "lattice_cap", c.lattice_cap);
}

std::int64_t lattice_cap_from_env() {
  const char* raw = std::getenv("POTTS_LATTICE_CAP");
  if (raw == nullptr || *raw == '\0') return kDefaultLatticeCap;
  errno = 0;
  char* end = nullptr;
  const long long v = std::strtoll(raw, &end, 10);
  if (errno != 0 || *end != '\0' || v < 1) {
    throw PreconditionError(
        std::string("POTTS_LATTICE_CAP must be a positive integer, got '") +
        raw + "'");
  }
  return v;
}

int run(int argc, const char* const* argv, std::ostream& out,
        std::ostream& err) {
  CLI::App app{"Curie-Weiss Potts model experiments", "potts"};
  app.set_help_flag("--help", "Print this help message and exit");
  app.require_subcommand(1);
  Parsed parsed;
  std::vector<std::pair<CLI::App*, const Command*>> subs;
  for (const Command& cmd : kCommands) add_command(app, cmd, parsed, subs);
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err);
  }
  for (const auto& [sub, cmd] : subs) {
    if (sub->parsed()) parsed.command = cmd;
  }
  const Command& cmd = *parsed.command;

  try {
    ExperimentConfig config;
    if (!parsed.config_path.empty()) {
      config = load_config(parsed.config_path);
      if (!config.command.empty() && config.command != cmd.name) {
        throw PreconditionError("config is for '" + config.command +
                                "', not '" + cmd.name + "'");
      }
    }
    for (const Binding& b : parsed.bindings) {
      if (b.option->count() > 0) b.copy(parsed.flags, config);
    }
    config.command = cmd.name;
    if (config.n.empty()) {
      config.n = cmd.default_n > 0 ? std::vector<std::int64_t>{cmd.default_n}
                                   : default_n_schedule();
    }
    if (config.format != "json" && config.format != "csv") {
      throw PreconditionError("format must be json or csv");
    }
    if (config.threads < 1) throw PreconditionError("threads must be >= 1");

    Context ctx;
    ctx.config = config;
    ctx.ns = config.n;
    ctx.cap = config.lattice_cap.value_or(lattice_cap_from_env());
    if (cmd.flags & kBetaH) ctx.params = resolve_params(config);

    const Output o = cmd.handler(ctx);
    json doc{{"command", cmd.name}, {"config", config}, {"result", o.result}};
    if (cmd.flags & kBetaH) {
      doc["params"] = {
          {"q", ctx.params.q}, {"beta", ctx.params.beta}, {"h", ctx.params.h}};
    }
    doc["lattice_cap"] = ctx.cap;
    write_output(config, doc, o, out);
    if (o.exit_code != 0) err << "error: selftest failed\n";
    return o.exit_code;
  } catch (const CapacityError& e) {
    err << "error: " << e.what() << '\n';
    return 3;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  }
}

}  // namespace cwpotts::cli

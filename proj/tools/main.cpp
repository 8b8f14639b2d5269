#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "tripsim/beamsplitter.hpp"
#include "tripsim/concurrent.hpp"
#include "tripsim/criteria.hpp"
#include "tripsim/intracavity.hpp"
#include "tripsim/opo.hpp"
#include "tripsim/positive_p.hpp"
#include "tripsim/report_json.hpp"
#include "tripsim/version.hpp"

using nlohmann::json;
using namespace tripsim;

namespace {

std::string fmt_g17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::vector<double> linspace(double start, double stop, int points) {
  std::vector<double> out;
  out.reserve(points);
  for (int i = 0; i < points; ++i)
    out.push_back(start + (stop - start) * i / (points - 1));
  return out;
}

struct Sweep {
  std::string axis;
  double start = 0.0, stop = 0.0;
  int points = 0;
};

Sweep parse_sweep(const std::vector<std::string>& raw, const std::string& allowed_axis) {
  Sweep s;
  s.axis = raw[0];
  if (s.axis != allowed_axis)
    throw std::invalid_argument("unsupported sweep axis '" + s.axis +
                                "' (expected '" + allowed_axis + "')");
  try {
    s.start = std::stod(raw[1]);
    s.stop = std::stod(raw[2]);
    s.points = std::stoi(raw[3]);
  } catch (const std::exception&) {
    throw std::invalid_argument("sweep values must be numeric: start stop points");
  }
  if (!std::isfinite(s.start) || !std::isfinite(s.stop))
    throw std::invalid_argument("sweep bounds must be finite");
  if (s.points < 2) throw std::invalid_argument("sweep needs at least 2 points");
  return s;
}

std::vector<double> parse_grid(const std::vector<double>& raw, const char* name) {
  if (!std::isfinite(raw[0]) || !std::isfinite(raw[1]))
    throw std::invalid_argument(std::string(name) + " bounds must be finite");
  const int points = static_cast<int>(raw[2]);
  if (points < 2 || raw[2] != points)
    throw std::invalid_argument(std::string(name) + " needs an integer point count >= 2");
  return linspace(raw[0], raw[1], points);
}

// --config FILE expands into ordinary options right after the subcommand,
// so explicit flags (which come later) win.
std::string config_value_to_arg(const json& v) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_number_integer()) return std::to_string(v.get<long long>());
  if (v.is_number_unsigned()) return std::to_string(v.get<unsigned long long>());
  if (v.is_number_float()) return fmt_g17(v.get<double>());
  throw std::invalid_argument("config values must be numbers, strings, or arrays of those");
}

void expand_config(std::vector<std::string>& args) {
  const auto it = std::find(args.begin(), args.end(), "--config");
  if (it == args.end()) return;
  if (std::next(it) == args.end())
    throw std::invalid_argument("--config requires a file path");
  const std::string path = *std::next(it);
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open config file: " + path);
  const json cfg = json::parse(in);
  if (!cfg.is_object())
    throw std::invalid_argument("config file must contain a flat JSON object");
  std::vector<std::string> extra;
  for (const auto& [key, value] : cfg.items()) {
    extra.push_back("--" + key);
    if (value.is_array()) {
      for (const auto& v : value) extra.push_back(config_value_to_arg(v));
    } else {
      extra.push_back(config_value_to_arg(value));
    }
  }
  if (args.empty()) return;
  args.insert(args.begin() + 1, extra.begin(), extra.end());
}

// Collects rows and comments, then renders as CSV or JSON. All floating
// point values are written round-trip exact so reruns are byte-identical.
class TableSink {
 public:
  TableSink(std::string command, json config_echo, std::uint64_t seed)
      : command_(std::move(command)), config_(std::move(config_echo)), seed_(seed) {}

  void set_columns(std::vector<std::string> cols) { columns_ = std::move(cols); }
  void comment(const std::string& text) { comments_.push_back(text); }

  void row(const std::vector<double>& values, json extra = json()) {
    rows_.push_back(values);
    row_extra_.push_back(std::move(extra));
    row_order_.push_back({false, rows_.size() - 1});
  }

  void skip_note(const std::string& text) {
    skips_.push_back(text);
    row_order_.push_back({true, skips_.size() - 1});
  }

  void write_csv(std::ostream& os) const {
    os << "# tripsim " << kVersion << "\n";
    os << "# command: " << command_ << "\n";
    os << "# convention: squeezed-axis variance = exp(-r); vacuum quadrature variance = 1\n";
    os << "# thresholds: vlf < 4, duan < 4, epr two-mode inference < 1, "
          "epr one-mode inference < 4\n";
    os << "# seed: " << seed_ << "\n";
    os << "# config: " << config_.dump() << "\n";
    for (const auto& c : comments_) os << "# " << c << "\n";
    for (std::size_t i = 0; i < columns_.size(); ++i)
      os << columns_[i] << (i + 1 < columns_.size() ? "," : "\n");
    for (const auto& [is_skip, idx] : row_order_) {
      if (is_skip) {
        os << "# skipped: " << skips_[idx] << "\n";
        continue;
      }
      const auto& r = rows_[idx];
      for (std::size_t i = 0; i < r.size(); ++i)
        os << fmt_g17(r[i]) << (i + 1 < r.size() ? "," : "\n");
    }
  }

  void write_json(std::ostream& os) const {
    json out;
    out["provenance"] = {{"tool", "tripsim"}, {"version", kVersion}, {"seed", seed_}};
    out["conventions"] = {
        {"squeezed_axis_variance", "exp(-r)"},
        {"vacuum_variance", 1.0},
        {"thresholds",
         {{"vlf", 4.0}, {"duan", 4.0}, {"epr_two_mode", 1.0}, {"epr_one_mode", 4.0}}}};
    out["command"] = command_;
    out["config"] = config_;
    out["comments"] = comments_;
    out["skipped"] = skips_;
    out["columns"] = columns_;
    out["results"] = json::array();
    for (std::size_t k = 0; k < rows_.size(); ++k) {
      json item;
      for (std::size_t i = 0; i < columns_.size(); ++i) item[columns_[i]] = rows_[k][i];
      if (!row_extra_[k].is_null()) item["report"] = row_extra_[k];
      out["results"].push_back(std::move(item));
    }
    os << out.dump() << "\n";
  }

 private:
  std::string command_;
  json config_;
  std::uint64_t seed_;
  std::vector<std::string> columns_;
  std::vector<std::string> comments_;
  std::vector<std::vector<double>> rows_;
  std::vector<json> row_extra_;
  std::vector<std::string> skips_;
  std::vector<std::pair<bool, std::size_t>> row_order_;
};

void emit(const TableSink& sink, const std::string& output, const std::string& format) {
  const auto write = [&](std::ostream& os) {
    if (format == "csv") {
      sink.write_csv(os);
    } else if (format == "json") {
      sink.write_json(os);
    } else {
      throw std::invalid_argument("unknown format: " + format);
    }
  };
  if (output == "-") {
    write(std::cout);
    return;
  }
  std::ofstream os(output, std::ios::binary);
  if (!os) throw std::invalid_argument("cannot open output file: " + output);
  write(os);
}

struct CommonOpts {
  std::string output = "-";
  std::string format = "csv";
  std::string config_path;
  std::uint64_t seed = 1;
  int threads = 1;
};

void add_common(CLI::App* cmd, CommonOpts& c) {
  cmd->add_option("--output", c.output, "output path, - for stdout");
  cmd->add_option("--format", c.format, "csv or json")
      ->check(CLI::IsMember({"csv", "json"}));
  cmd->add_option("--config", c.config_path, "flat JSON config file (flags override)");
  cmd->add_option("--seed", c.seed, "RNG seed (echoed in provenance)");
  cmd->add_option("--threads", c.threads, "worker threads where supported");
}

// Smallest violation over the mode permutations: the operative witness when
// the table is not permutation symmetric.
double min_epr_two(const CriterionReport& r) {
  return std::min({r.epr_two_mode[0].product, r.epr_two_mode[1].product,
                   r.epr_two_mode[2].product});
}

double min_epr_one(const CriterionReport& r) {
  return std::min({r.epr_one_mode[0].product, r.epr_one_mode[1].product,
                   r.epr_one_mode[2].product});
}

// ---------------------------------------------------------------- commands

struct BsClosedCmd {
  CommonOpts common;
  double mu = 2.0 / 3.0;
  double nu = 0.5;
  std::vector<std::string> sweep_raw{"r", "0", "3", "301"};

  void run() const {
    const Sweep sweep = parse_sweep(sweep_raw, "r");
    json cfg{{"command", "bs-closed"}, {"mu", mu}, {"nu", nu},
             {"sweep", {sweep.axis, sweep.start, sweep.stop, sweep.points}}};
    TableSink sink("bs-closed", cfg, common.seed);
    sink.set_columns({"r", "v12", "v13", "v23", "epr_one", "epr_two", "duan_bs1"});
    const AokiNetwork net(mu, nu);
    for (double r : linspace(sweep.start, sweep.stop, sweep.points)) {
      const MomentTable t = propagate_static(aoki_input_triple(r), net);
      const CriterionReport rep = full_report(t);
      sink.row({r, rep.v12, rep.v13, rep.v23, min_epr_one(rep), min_epr_two(rep),
                duan_bs1(mu, r)},
               common.format == "json" ? report_to_json(rep) : json());
    }
    emit(sink, common.output, common.format);
  }
};

struct BsSpectralCmd {
  CommonOpts common;
  double mu = 2.0 / 3.0;
  double nu = 0.5;
  double gamma_a = 1.0;
  double gamma_b = 1.0;
  double kappa = 1e-2;
  double pump_ratio = 0.5;
  std::vector<std::string> sweep_raw;
  std::vector<double> omega_raw{0.0, 20.0, 401};

  void run() const {
    const std::vector<double> omega = parse_grid(omega_raw, "--omega-grid");
    std::vector<double> ratios{pump_ratio};
    json sweep_echo;
    if (!sweep_raw.empty()) {
      const Sweep sweep = parse_sweep(sweep_raw, "pump-ratio");
      ratios = linspace(sweep.start, sweep.stop, sweep.points);
      sweep_echo = {sweep.axis, sweep.start, sweep.stop, sweep.points};
    }
    json cfg{{"command", "bs-spectral"}, {"mu", mu}, {"nu", nu},
             {"gamma-a", gamma_a}, {"gamma-b", gamma_b}, {"kappa", kappa},
             {"pump-ratio", pump_ratio},
             {"omega-grid", {omega_raw[0], omega_raw[1], omega_raw[2]}}};
    if (!sweep_echo.is_null()) cfg["sweep"] = sweep_echo;

    TableSink sink("bs-spectral", cfg, common.seed);
    sink.set_columns({"pump_ratio", "omega", "s12", "s13", "s23", "epr_one",
                      "epr_two", "near_threshold"});
    const AokiNetwork net(mu, nu);
    for (double ratio : ratios) {
      if (ratio == 1.0) {
        sink.skip_note("pump_ratio=1: linearised source spectra undefined at threshold");
        continue;
      }
      OpoParams p{gamma_a, gamma_b, kappa, 0.0};
      p.epsilon = ratio * critical_pump(p);
      const PumpBranch branch = ratio < 1.0 ? PumpBranch::below : PumpBranch::above;
      const auto inputs = opo_input_spectra(p, branch, omega);
      const SpectralMomentTable out = propagate_spectral(inputs, net, omega);
      const double warn = opo_near_threshold(p) ? 1.0 : 0.0;
      for (std::size_t w = 0; w < omega.size(); ++w) {
        const CriterionReport rep = full_report(out.tables[w]);
        sink.row({ratio, omega[w], rep.v12, rep.v13, rep.v23, min_epr_one(rep),
                  min_epr_two(rep), warn},
                 common.format == "json" ? report_to_json(rep) : json());
      }
    }
    emit(sink, common.output, common.format);
  }
};

struct OpoCmd {
  CommonOpts common;
  double gamma_a = 1.0;
  double gamma_b = 1.0;
  double kappa = 1e-2;
  double pump_ratio = 0.5;
  std::string branch_name;  // empty: choose from the pump ratio
  std::vector<double> omega_raw{0.0, 20.0, 401};

  void run() const {
    const std::vector<double> omega = parse_grid(omega_raw, "--omega-grid");
    if (pump_ratio == 1.0)
      throw std::invalid_argument(
          "pump-ratio=1: the linearised spectra are undefined at threshold");
    OpoParams p{gamma_a, gamma_b, kappa, 0.0};
    p.epsilon = pump_ratio * critical_pump(p);
    PumpBranch branch = pump_ratio < 1.0 ? PumpBranch::below : PumpBranch::above;
    if (!branch_name.empty())
      branch = branch_name == "below" ? PumpBranch::below : PumpBranch::above;

    json cfg{{"command", "opo"}, {"gamma-a", gamma_a}, {"gamma-b", gamma_b},
             {"kappa", kappa}, {"pump-ratio", pump_ratio},
             {"branch", branch == PumpBranch::below ? "below" : "above"},
             {"omega-grid", {omega_raw[0], omega_raw[1], omega_raw[2]}}};
    TableSink sink("opo", cfg, common.seed);
    sink.set_columns({"omega", "s_x", "s_y"});
    sink.comment(std::string("branch: ") +
                 (branch == PumpBranch::below ? "below" : "above"));
    if (opo_near_threshold(p))
      sink.comment("warning: inside the near-threshold validity band (|ratio-1| < 0.02)");
    for (double w : omega) {
      const SpectrumPoint pt = opo_spectrum(p, w, branch);
      sink.row({pt.omega, pt.s_x, pt.s_y});
    }
    emit(sink, common.output, common.format);
  }
};

struct UndepletedCmd {
  CommonOpts common;
  std::vector<std::string> sweep_raw{"tau", "0", "3", "301"};

  void run() const {
    const Sweep sweep = parse_sweep(sweep_raw, "tau");
    json cfg{{"command", "undepleted"},
             {"sweep", {sweep.axis, sweep.start, sweep.stop, sweep.points}}};
    TableSink sink("undepleted", cfg, common.seed);
    sink.set_columns({"tau", "coef_a", "coef_b", "coef_c", "coef_d", "v3",
                      "epr_one", "epr_two"});
    for (double tau : linspace(sweep.start, sweep.stop, sweep.points)) {
      const UndepletedPoint p = abcd(tau);
      const EprCurvePoint e = epr_curves(tau);
      json rep;
      if (common.format == "json") rep = report_to_json(full_report(undepleted_moments(tau)));
      sink.row({tau, p.a, p.b, p.c, p.d, v3_closed(tau), e.one_mode, e.two_mode},
               std::move(rep));
    }
    emit(sink, common.output, common.format);
  }
};

struct PositivePCmd {
  CommonOpts common;
  SimConfig sim;

  void run() const {
    SimConfig cfg = sim;
    cfg.seed = common.seed;
    cfg.threads = common.threads;
    json cfg_echo{{"command", "positive-p"}, {"chi", cfg.chi}, {"beta0", cfg.beta0},
                  {"traj", cfg.n_traj}, {"dt", cfg.dt}, {"zeta-max", cfg.zeta_max},
                  {"record-stride", cfg.record_stride}, {"batches", cfg.batch_count},
                  {"divergence-factor", cfg.divergence_factor}, {"seed", cfg.seed}};
    const EnsembleResult res = run_ensemble(cfg);

    TableSink sink("positive-p", cfg_echo, cfg.seed);
    sink.set_columns({"zeta", "v3", "v3_stderr", "epr_one", "epr_one_stderr",
                      "epr_two", "epr_two_stderr"});
    sink.comment("trajectories: used " + std::to_string(res.n_used) + ", diverged " +
                 std::to_string(res.n_diverged));
    if (res.n_diverged >
        static_cast<long long>(0.001 * static_cast<double>(res.n_used + res.n_diverged)))
      sink.comment("warning: divergence fraction exceeds 0.1%");
    for (const auto& pt : res.points) {
      sink.row({pt.zeta, pt.v3, pt.v3_err, pt.epr_one, pt.epr_one_err, pt.epr_two,
                pt.epr_two_err});
    }
    emit(sink, common.output, common.format);
  }
};

struct IntracavityCmd {
  CommonOpts common;
  double gamma = 10.0;
  double kappa = 1.0;
  double chi = 1e-2;
  double pump_ratio = 0.5;
  std::vector<std::string> sweep_raw;
  std::vector<double> omega_raw{0.0, 20.0, 401};

  void run() const {
    const std::vector<double> omega = parse_grid(omega_raw, "--omega-grid");
    std::vector<double> ratios{pump_ratio};
    json sweep_echo;
    if (!sweep_raw.empty()) {
      const Sweep sweep = parse_sweep(sweep_raw, "pump-ratio");
      ratios = linspace(sweep.start, sweep.stop, sweep.points);
      sweep_echo = {sweep.axis, sweep.start, sweep.stop, sweep.points};
    }
    json cfg{{"command", "intracavity"}, {"gamma", gamma}, {"kappa", kappa},
             {"chi", chi}, {"pump-ratio", pump_ratio},
             {"omega-grid", {omega_raw[0], omega_raw[1], omega_raw[2]}}};
    if (!sweep_echo.is_null()) cfg["sweep"] = sweep_echo;

    TableSink sink("intracavity", cfg, common.seed);
    sink.set_columns({"pump_ratio", "epsilon", "omega", "s12", "s13", "s23",
                      "epr_one", "epr_two", "near_threshold"});
    for (double ratio : ratios) {
      CavityParams p{gamma, kappa, chi, 0.0};
      p.epsilon = ratio * cavity_threshold(p);
      const double warn = cavity_near_threshold(p) ? 1.0 : 0.0;
      for (double w : omega) {
        try {
          const MomentTable t = cavity_spectrum_table(p, w);
          const CriterionReport rep = full_report(t);
          sink.row({ratio, p.epsilon, w, rep.v12, rep.v13, rep.v23, min_epr_one(rep),
                    min_epr_two(rep), warn},
                   common.format == "json" ? report_to_json(rep) : json());
        } catch (const std::domain_error&) {
          sink.skip_note("pump_ratio=" + fmt_g17(ratio) + " omega=" + fmt_g17(w) +
                         ": drift singular at the oscillation threshold");
        }
      }
    }
    emit(sink, common.output, common.format);
  }
};

}  // namespace

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);

  CLI::App app{"tripartite continuous-variable entanglement calculations"};
  app.require_subcommand(1);
  app.option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);

  BsClosedCmd bs_closed;
  CLI::App* c1 = app.add_subcommand(
      "bs-closed", "squeezed inputs on the two-beamsplitter network, r sweep");
  add_common(c1, bs_closed.common);
  c1->add_option("--mu", bs_closed.mu, "reflectivity of the first splitter");
  c1->add_option("--nu", bs_closed.nu, "reflectivity of the second splitter");
  c1->add_option("--sweep", bs_closed.sweep_raw, "axis start stop points (axis: r)")
      ->expected(4);

  BsSpectralCmd bs_spectral;
  CLI::App* c2 = app.add_subcommand(
      "bs-spectral", "source output spectra propagated through the network");
  add_common(c2, bs_spectral.common);
  c2->add_option("--mu", bs_spectral.mu, "reflectivity of the first splitter");
  c2->add_option("--nu", bs_spectral.nu, "reflectivity of the second splitter");
  c2->add_option("--gamma-a", bs_spectral.gamma_a, "signal cavity damping");
  c2->add_option("--gamma-b", bs_spectral.gamma_b, "pump cavity damping");
  c2->add_option("--kappa", bs_spectral.kappa, "effective nonlinearity");
  c2->add_option("--pump-ratio", bs_spectral.pump_ratio, "pump / critical pump");
  c2->add_option("--sweep", bs_spectral.sweep_raw,
                 "axis start stop points (axis: pump-ratio)")
      ->expected(4);
  c2->add_option("--omega-grid", bs_spectral.omega_raw, "start stop points")
      ->expected(3);

  OpoCmd opo_cmd;
  CLI::App* c3 = app.add_subcommand("opo", "single source output spectra");
  add_common(c3, opo_cmd.common);
  c3->add_option("--gamma-a", opo_cmd.gamma_a, "signal cavity damping");
  c3->add_option("--gamma-b", opo_cmd.gamma_b, "pump cavity damping");
  c3->add_option("--kappa", opo_cmd.kappa, "effective nonlinearity");
  c3->add_option("--pump-ratio", opo_cmd.pump_ratio, "pump / critical pump");
  c3->add_option("--branch", opo_cmd.branch_name, "below or above (must match the pump)")
      ->check(CLI::IsMember({"below", "above"}));
  c3->add_option("--omega-grid", opo_cmd.omega_raw, "start stop points")->expected(3);

  UndepletedCmd undepleted_cmd;
  CLI::App* c4 = app.add_subcommand(
      "undepleted", "analytic concurrent-interaction solutions, tau sweep");
  add_common(c4, undepleted_cmd.common);
  c4->add_option("--sweep", undepleted_cmd.sweep_raw,
                 "axis start stop points (axis: tau)")
      ->expected(4);

  PositivePCmd positive_p_cmd;
  CLI::App* c5 = app.add_subcommand(
      "positive-p", "stochastic phase-space ensemble for the concurrent scheme");
  add_common(c5, positive_p_cmd.common);
  c5->add_option("--chi", positive_p_cmd.sim.chi, "nonlinearity");
  c5->add_option("--beta0", positive_p_cmd.sim.beta0, "initial pump amplitude");
  c5->add_option("--traj", positive_p_cmd.sim.n_traj, "trajectory count");
  c5->add_option("--dt", positive_p_cmd.sim.dt, "step in scaled time");
  c5->add_option("--zeta-max", positive_p_cmd.sim.zeta_max, "end of the scaled-time window");
  c5->add_option("--record-stride", positive_p_cmd.sim.record_stride,
                 "steps between recorded points");
  c5->add_option("--batches", positive_p_cmd.sim.batch_count,
                 "batches for standard errors");
  c5->add_option("--divergence-factor", positive_p_cmd.sim.divergence_factor,
                 "|variable| > factor * beta0 marks a trajectory diverged");

  IntracavityCmd intracavity_cmd;
  CLI::App* c6 = app.add_subcommand(
      "intracavity", "driven-cavity spectral correlations, pump-ratio sweep");
  add_common(c6, intracavity_cmd.common);
  c6->add_option("--gamma", intracavity_cmd.gamma, "pump-mode damping");
  c6->add_option("--kappa", intracavity_cmd.kappa, "signal-mode damping");
  c6->add_option("--chi", intracavity_cmd.chi, "nonlinearity");
  c6->add_option("--pump-ratio", intracavity_cmd.pump_ratio, "pump / threshold pump");
  c6->add_option("--sweep", intracavity_cmd.sweep_raw,
                 "axis start stop points (axis: pump-ratio)")
      ->expected(4);
  c6->add_option("--omega-grid", intracavity_cmd.omega_raw, "start stop points")
      ->expected(3);

  try {
    expand_config(args);
    std::reverse(args.begin(), args.end());
    app.parse(std::move(args));
    if (c1->parsed()) bs_closed.run();
    if (c2->parsed()) bs_spectral.run();
    if (c3->parsed()) opo_cmd.run();
    if (c4->parsed()) undepleted_cmd.run();
    if (c5->parsed()) positive_p_cmd.run();
    if (c6->parsed()) intracavity_cmd.run();
    return 0;
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  } catch (const json::exception& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 1;
  } catch (const std::invalid_argument& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return 2;
  }
}

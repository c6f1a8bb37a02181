#include "commands.hpp"

#include <cmath>
#include <cstdio>

#include "actinfo/absorption.hpp"
#include "actinfo/experiments.hpp"
#include "actinfo/io.hpp"

namespace actinfo::cli {

using io::format_double;

namespace {

std::string compact(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%g", x);
  return buf;
}

std::size_t positive(const Settings& s, const std::string& key) {
  const long long v = s.integer(key);
  if (v <= 0) throw ConfigError("--" + key + " must be positive");
  return static_cast<std::size_t>(v);
}

int parts(const Settings& s) {
  const long long d = s.integer("d");
  if (d < 1 || d > 12) throw ConfigError("--d must lie in [1, 12]");
  return static_cast<int>(d);
}

std::string fig3_name(double a, double b) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "fig3_a%+g_b%g.csv", a, b);
  return buf;
}

std::string equilibrium_plot(const std::string& csv, const std::vector<double>& a_values, double ifo) {
  std::string s = "set datafile separator ','\nset xlabel 'theta'\nset ylabel 'I+ (nats)'\nplot \\\n";
  for (double a : a_values)
    s += "  '" + csv + "' skip 2 using 2:($1==" + format_double(a) + "?$3:1/0) with lines title 'a=" + compact(a) +
         "', \\\n";
  s += "  " + format_double(ifo) + " with lines dashtype 2 title 'I_f0'\n";
  return s;
}

void figure_equilibrium(const Settings& s, Output& out, const std::string& stem) {
  const int d = parts(s);
  const double b = s.real("b");
  const auto a_values = s.reals("a_values");
  const auto grid = uniform_grid(s.real("theta_min"), s.real("theta_max"), s.real("theta_step"));
  std::vector<io::EquilibriumCurve> curves;
  double ifo = 0.0;
  for (double a : a_values) {
    auto rows = figure_equilibrium_sweep(MachineModel{d, a, b, 0.0}, grid);
    ifo = rows.front().ifo;
    std::size_t violations = 0;
    for (std::size_t i = 1; i < rows.size(); ++i) violations += !(rows[i].iplus > rows[i - 1].iplus);
    out.note("increase_violations.a" + compact(a), std::to_string(violations));
    curves.push_back({a, std::move(rows)});
  }
  out.note("ifo", format_double(ifo));
  auto os = out.csv(stem + ".csv");
  io::write_equilibrium_table(os, curves);
  out.plot(stem + ".gp", equilibrium_plot(stem + ".csv", a_values, ifo));
}

void figure3(const Settings& s, Output& out) {
  const int d = parts(s);
  const double theta = s.real("theta");
  const long long t_max = s.integer("t_max");
  if (t_max < 0) throw ConfigError("--t-max must be nonnegative");
  for (double a : s.reals("a_values")) {
    for (double b : s.reals("b_values")) {
      const auto rows = figure_time_sweep(MachineModel{d, a, b, theta}, static_cast<std::size_t>(t_max));
      const std::string name = fig3_name(a, b);
      const std::string panel = name.substr(0, name.size() - 4);
      std::size_t decreases = 0, dominance = 0;
      for (std::size_t t = 0; t < rows.size(); ++t) {
        if (t > 0 && rows[t].iplus < rows[t - 1].iplus) ++decreases;
        if (rows[t].iplus_stopped < rows[t].iplus) ++dominance;
      }
      out.note("monotonicity_violations." + panel, std::to_string(decreases));
      out.note("stopped_below_unstopped." + panel, std::to_string(dominance));
      out.note("gap_at_t_max." + panel, format_double(rows.back().iplus_stopped - rows.back().iplus));
      auto os = out.csv(name);
      io::write_time_table(os, rows);
      out.plot(panel + ".gp", "set datafile separator ','\nset xlabel 't'\nset ylabel 'I+ (nats)'\nplot '" + name +
                                  "' skip 2 using 1:2 with lines dashtype 2 title 'I+(theta,t)', '" + name +
                                  "' skip 2 using 1:3 with lines title 'I_s+(theta,t)'\n");
    }
  }
}

void ldp_decay(const Settings& s, Output& out) {
  const double p0a = s.real("p0a");
  const double i_min = s.real("imin");
  const double bias = s.real("bias");
  std::vector<std::size_t> ns;
  for (long long n : s.integers("n")) {
    if (n <= 0) throw ConfigError("--n values must be positive");
    ns.push_back(static_cast<std::size_t>(n));
  }
  const RateReport rate = nonparam_rate(p0a, i_min, bias);
  const auto rows = decay_slope(ns, p0a, rate.p_min * std::exp(-bias));
  out.note("target_C", format_double(rate.rate));
  out.note("final_relative_gap", format_double(std::abs(rows.back().normalized_rate - rate.rate) / rate.rate));
  auto os = out.csv("ldp_decay.csv");
  io::write_decay_table(os, rows, rate.rate);
  out.plot("ldp_decay.gp", "set datafile separator ','\nset logscale x\nset xlabel 'n'\nset ylabel '-log(level)/n'\n"
                           "plot 'ldp_decay.csv' skip 2 using 1:3 with linespoints title 'exact', "
                           "'ldp_decay.csv' skip 2 using 1:4 with lines title 'C'\n");
}

void coverage(const Settings& s, Output& out) {
  CoverageConfig c;
  c.model = MachineModel{parts(s), s.real("a"), s.real("b"), s.real("theta")};
  c.n = positive(s, "n");
  c.replicates = positive(s, "reps");
  c.seed = s.unsigned_integer("seed");
  c.model.validate();
  const CoverageReport r = coverage_experiment(c);
  out.note("truth", format_double(r.truth));
  out.note("coverage.nonparametric", format_double(r.nonparametric_coverage));
  out.note("coverage.parametric", format_double(r.parametric_coverage));
  out.note("mean_theta_hat", format_double(r.mean_theta_hat));
  {
    auto os = out.csv("coverage.csv");
    os << io::kEstimationHeader << '\n';
    for (const auto& rep : r.replicates) {
      io::write_estimation_row(os, rep.nonparametric, std::nullopt);
      io::write_estimation_row(os, rep.parametric, std::nullopt);
    }
  }
  auto os = out.csv("coverage_summary.csv");
  os << "estimator,coverage,truth,mean_theta_hat,replicates,degenerate\n";
  os << "nonparametric," << format_double(r.nonparametric_coverage) << ',' << format_double(r.truth) << ",,"
     << c.replicates << ',' << r.degenerate << '\n';
  os << "parametric," << format_double(r.parametric_coverage) << ',' << format_double(r.truth) << ','
     << format_double(r.mean_theta_hat) << ',' << c.replicates << ",0\n";
}

void two_sample(const Settings& s, Output& out) {
  TwoSampleConfig c;
  c.d = parts(s);
  c.b = s.real("b");
  c.n = positive(s, "n");
  c.n0 = positive(s, "n0");
  c.replicates = positive(s, "reps");
  c.seed = s.unsigned_integer("seed");
  if (!(c.b >= kMachineRateBounds.lower && c.b <= kMachineRateBounds.upper))
    throw ConfigError("--b must lie in [" + compact(kMachineRateBounds.lower) + ", " +
                      compact(kMachineRateBounds.upper) + "]");
  const TwoSampleReport r = two_sample_calibration(c);
  out.note("within_3se_fraction", format_double(r.within_fraction));
  auto os = out.csv("two_sample.csv");
  os << io::kEstimationHeader << '\n';
  for (const auto& e : r.replicates) io::write_estimation_row(os, e, std::nullopt);
}

void cosmology(const Settings& s, Output& out) {
  const double x = s.real("x");
  auto os = out.csv("cosmology.csv");
  os << "epsilon,a,b,xi_star,p0max,bound,approximation,approximation_valid\n";
  for (double eps : s.reals("eps")) {
    const CosmologyModel model = CosmologyModel::from_epsilon(x, eps);
    const CosmologyBound r = cosmology_actinfo_bound(model);
    os << format_double(eps) << ',' << format_double(model.a) << ',' << format_double(model.b) << ','
       << format_double(r.xi_star) << ',' << format_double(r.p0max) << ',' << format_double(r.value) << ','
       << format_double(r.approximation) << ',' << (r.approximation_valid ? 1 : 0) << '\n';
  }
}

void student(const Settings& s, Output& out) {
  const auto means = s.reals("means");
  const auto sigma_entries = s.reals("sigma");
  const auto k = static_cast<Eigen::Index>(means.size());
  if (static_cast<Eigen::Index>(sigma_entries.size()) != k * k)
    throw ConfigError("--sigma needs (d-1)^2 = " + std::to_string(k * k) + " entries in row-major order");
  Eigen::MatrixXd sigma(k, k);
  for (Eigen::Index i = 0; i < k; ++i)
    for (Eigen::Index j = 0; j < k; ++j) sigma(i, j) = sigma_entries[static_cast<std::size_t>(i * k + j)];
  const StudentModel model(means, sigma, s.reals("xi"), s.real("sigma2"), s.reals("theta"), s.real("f0"));
  auto os = out.csv("student.csv");
  os << "t,mu,variance,pass_probability,iplus\n";
  for (double t : s.reals("t")) {
    os << format_double(t) << ',' << format_double(model.mean(t)) << ',' << format_double(model.variance(t)) << ','
       << format_double(student_pass_probability(model, t)) << ',' << format_double(student_actinfo(model, t))
       << '\n';
  }
}

AcceptanceRule parse_rule(const std::string& text) {
  if (text == "moran") return AcceptanceRule::MoranSquareRoot;
  if (text == "mh") return AcceptanceRule::MetropolisHastings;
  throw ConfigError("--rule must be 'moran' or 'mh', got '" + text + "'");
}

void machine_info(const Settings& s, Output& out) {
  const MachineModel model{parts(s), s.real("a"), s.real("b"), s.real("theta")};
  const AcceptanceRule rule = parse_rule(s.text("rule"));
  const MachineSystem sys = build_machine(model);
  const TransitionKernel kernel = build_kernel(sys.p0, sys.f, model.theta, sys.q, rule);
  const double p0a = target_probability(sys.p0, sys.target);
  {
    auto os = out.csv("machine_p0.csv");
    io::write_distribution(os, sys.p0);
  }
  {
    auto os = out.csv("machine_f.csv");
    io::write_profile(os, sys.f);
  }
  {
    auto os = out.csv("machine_kernel.csv");
    io::write_kernel(os, kernel);
  }
  auto os = out.csv("machine_summary.csv");
  os << "d,a,b,theta,rule,p0a,ifo,iplus_eq,expected_hitting_time\n";
  os << model.d << ',' << format_double(model.a) << ',' << format_double(model.b) << ','
     << format_double(model.theta) << ',' << to_string(rule) << ',' << format_double(p0a) << ','
     << format_double(sys.ifo) << ',' << format_double(actinfo_equilibrium(sys.family, sys.target, model.theta))
     << ',' << format_double(expected_hitting_time(decompose(kernel, sys.target, sys.p0))) << '\n';
  out.note("ifo", format_double(sys.ifo));
}

}  // namespace

Output::Output(std::filesystem::path dir, std::string hash_hex, bool plots)
    : dir_(std::move(dir)), hash_hex_(std::move(hash_hex)), plots_(plots) {}

std::ofstream Output::csv(const std::string& name) {
  std::ofstream os(dir_ / name, std::ios::binary);
  if (!os) throw std::runtime_error("cannot write " + (dir_ / name).string());
  os << "# manifest_hash=" << hash_hex_ << '\n';
  files_.push_back(name);
  return os;
}

void Output::plot(const std::string& name, const std::string& script) {
  if (!plots_) return;
  std::ofstream os(dir_ / name, std::ios::binary);
  if (!os) throw std::runtime_error("cannot write " + (dir_ / name).string());
  os << "# manifest_hash=" << hash_hex_ << '\n' << script;
  files_.push_back(name);
}

void Output::note(const std::string& key, const std::string& value) { notes_.emplace_back(key, value); }

std::vector<std::pair<std::string, std::string>> common_defaults() {
  return {{"seed", ""}, {"jobs", "0"}, {"out", "."}, {"config", ""}, {"plot", "0"}};
}

const std::vector<CommandSpec>& command_table() {
  static const std::vector<CommandSpec> table = {
      {"figure1",
       "Equilibrium actinfo curves for b = 1 (fig1.csv)",
       {{"d", "5"}, {"b", "1"}, {"a_values", "-0.2,0,0.2"}, {"theta_min", "0"}, {"theta_max", "10"},
        {"theta_step", "0.1"}},
       false,
       [](const Settings& s, Output& o) { figure_equilibrium(s, o, "fig1"); }},
      {"figure2",
       "Equilibrium actinfo curves for b = 0.5 (fig2.csv)",
       {{"d", "5"}, {"b", "0.5"}, {"a_values", "-0.2,0,0.2"}, {"theta_min", "0"}, {"theta_max", "10"},
        {"theta_step", "0.1"}},
       false,
       [](const Settings& s, Output& o) { figure_equilibrium(s, o, "fig2"); }},
      {"figure3",
       "Stopped and unstopped actinfo over time, one file per (a, b) panel",
       {{"d", "5"}, {"theta", "2.5"}, {"t_max", "500"}, {"a_values", "0.2,-0.2"}, {"b_values", "1,0.5"}},
       false,
       figure3},
      {"ldp-decay",
       "Exact significance levels against the large-deviation rate",
       {{"p0a", "0.03125"}, {"imin", "0.6931471805599453"}, {"bias", "0"}, {"n", "250,500,1000,2000,4000"}},
       false,
       ldp_decay},
      {"coverage",
       "Wald interval coverage of both estimators on the machine model",
       {{"d", "5"}, {"a", "0.2"}, {"b", "1"}, {"theta", "1"}, {"n", "500"}, {"reps", "1000"}},
       true,
       coverage},
      {"two-sample",
       "Null calibration of the two-sample estimator",
       {{"d", "5"}, {"b", "0.5"}, {"n", "5000"}, {"n0", "5000"}, {"reps", "500"}},
       true,
       two_sample},
      {"cosmology",
       "Lower bound -log P0max(A) for intervals of half relative width eps",
       {{"x", "1"}, {"eps", "0.01,0.001,0.0001"}},
       false,
       cosmology},
      {"student",
       "Pass probabilities and actinfo of the test-score regression model",
       {{"means", "0"}, {"sigma", "1"}, {"xi", "0,1"}, {"sigma2", "1"}, {"theta", "1,0"}, {"f0", "2"},
        {"t", "0,1,2"}},
       false,
       student},
      {"machine-info",
       "Null, specificity and kernel of one molecular machine",
       {{"d", "5"}, {"a", "0"}, {"b", "0.5"}, {"theta", "0"}, {"rule", "moran"}},
       false,
       machine_info},
  };
  return table;
}

}  // namespace actinfo::cli

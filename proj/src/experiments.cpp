#include "actinfo/experiments.hpp"

#include <cmath>

#include "actinfo/kernels.hpp"

namespace actinfo {

namespace {

template <class Loop>
CoverageReport run_coverage(const CoverageConfig& config, Loop loop) {
  if (config.n == 0 || config.replicates == 0)
    throw Error(ErrorKind::InvalidArgument, "coverage needs n > 0 and replicates > 0");
  const MachineSystem sys = build_machine(config.model);
  const Distribution q = tilt(sys.family, config.model.theta);
  const double p0a = target_probability(sys.p0, sys.target);
  const RandomSource root(config.seed);

  CoverageReport report;
  report.truth = actinfo_equilibrium(sys.family, sys.target, config.model.theta);
  report.replicates.resize(config.replicates);
  loop(config.replicates, [&](std::size_t r) {
    RandomSource rng = root.substream(r);
    const SampleSet sample = sample_iid(q, config.n, rng);
    report.replicates[r] = {nonparam_actinfo(sample, sys.target, p0a), param_actinfo(sample, sys.family, sys.target)};
  });

  std::size_t np = 0, par = 0;
  double theta_sum = 0.0;
  report.degenerate = 0;
  for (const auto& rep : report.replicates) {
    np += covers(rep.nonparametric, report.truth);
    par += covers(rep.parametric, report.truth);
    theta_sum += *rep.parametric.theta_hat;
    report.degenerate += rep.nonparametric.degenerate;
  }
  const double reps = static_cast<double>(config.replicates);
  report.nonparametric_coverage = static_cast<double>(np) / reps;
  report.parametric_coverage = static_cast<double>(par) / reps;
  report.mean_theta_hat = theta_sum / reps;
  return report;
}

}  // namespace

bool covers(const EstimationResult& r, double truth) {
  return !r.degenerate && r.ci_low <= truth && truth <= r.ci_high;
}

CoverageReport coverage_experiment(const CoverageConfig& config) {
  return run_coverage(config, [](std::size_t n, auto&& body) { kernels::parallel_for(n, body); });
}

CoverageReport coverage_experiment_serial(const CoverageConfig& config) {
  return run_coverage(config, [](std::size_t n, auto&& body) { kernels::serial_for(n, body); });
}

TwoSampleReport two_sample_calibration(const TwoSampleConfig& config) {
  if (config.n == 0 || config.n0 == 0 || config.replicates == 0)
    throw Error(ErrorKind::InvalidArgument, "two-sample calibration needs positive sizes");
  const MachineSystem sys = build_machine(MachineModel{config.d, 0.0, config.b, 0.0});
  const ParametricFamily family0 = machine_null_family(config.d);
  const RandomSource root(config.seed);

  TwoSampleReport report;
  report.replicates.resize(config.replicates);
  kernels::parallel_for(config.replicates, [&](std::size_t r) {
    RandomSource rng = root.substream(r);
    const SampleSet sample = sample_iid(sys.p0, config.n, rng);
    const SampleSet null_sample = sample_iid(sys.p0, config.n0, rng);
    report.replicates[r] = two_sample_actinfo(sample, null_sample, family0, sys.target, false);
  });
  std::size_t within = 0;
  for (const auto& e : report.replicates)
    within += !e.degenerate && std::abs(e.estimate) <= 3.0 * e.standard_error();
  report.within_fraction = static_cast<double>(within) / static_cast<double>(config.replicates);
  return report;
}

}  // namespace actinfo

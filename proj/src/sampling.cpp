#include "actinfo/sampling.hpp"

#include <algorithm>

namespace actinfo {

std::uint64_t splitmix64(std::uint64_t x) noexcept {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

RandomSource::RandomSource(std::uint64_t seed, std::uint64_t stream)
    : seed_(seed), stream_(stream), engine_(splitmix64(seed) ^ splitmix64(splitmix64(stream) + 0xD1B54A32D192ED03ULL)) {}

CategoricalSampler::CategoricalSampler(std::span<const double> mass) : cdf_(mass.size()) {
  double acc = 0.0;
  for (std::size_t i = 0; i < mass.size(); ++i) {
    acc += mass[i];
    cdf_[i] = acc;
    if (mass[i] > 0.0) last_positive_ = i;
  }
}

Index CategoricalSampler::draw(RandomSource& rng) const {
  const double u = rng.uniform() * cdf_.back();
  auto it = std::upper_bound(cdf_.begin(), cdf_.end(), u);
  if (it == cdf_.end()) return last_positive_;
  return static_cast<Index>(it - cdf_.begin());
}

std::vector<std::size_t> SampleSet::counts() const {
  std::vector<std::size_t> c(space->size(), 0);
  for (Index d : draws) ++c.at(d);
  return c;
}

SampleSet sample_iid(const Distribution& p, std::size_t n, RandomSource& rng) {
  const CategoricalSampler sampler(p.mass());
  SampleSet s{p.space(), std::vector<Index>(n), "iid", rng.seed()};
  for (auto& d : s.draws) d = sampler.draw(rng);
  return s;
}

ChainSimulator::ChainSimulator(const TransitionKernel& kernel) {
  const auto m = kernel.rows().rows();
  rows_.reserve(static_cast<std::size_t>(m));
  for (Eigen::Index x = 0; x < m; ++x)
    rows_.emplace_back(std::span<const double>(kernel.rows().data() + x * m, static_cast<std::size_t>(m)));
}

ChainOutcome ChainSimulator::run(const CategoricalSampler& start, std::size_t t, const TargetSet* stop_on,
                                 RandomSource& rng) const {
  Index x = start.draw(rng);
  if (stop_on && stop_on->contains(x)) return {x, 0};
  for (std::size_t s = 1; s <= t; ++s) {
    x = rows_[x].draw(rng);
    if (stop_on && stop_on->contains(x)) return {x, s};
  }
  return {x, std::nullopt};
}

ChainOutcome simulate_chain(const TransitionKernel& kernel, const Distribution& start, std::size_t t,
                            const TargetSet* stop_on, RandomSource& rng) {
  require_same_space(kernel.space(), start.space(), "simulate_chain");
  if (stop_on) require_same_space(kernel.space(), stop_on->space(), "simulate_chain");
  const ChainSimulator sim(kernel);
  return sim.run(CategoricalSampler(start.mass()), t, stop_on, rng);
}

namespace {

template <class Loop>
std::vector<ChainOutcome> replicate_loop(const TransitionKernel& kernel, const Distribution& start, std::size_t t,
                                         const TargetSet* stop_on, std::uint64_t seed, std::size_t replicates,
                                         Loop loop) {
  require_same_space(kernel.space(), start.space(), "simulate_replicates");
  const ChainSimulator sim(kernel);
  const CategoricalSampler start_sampler(start.mass());
  const RandomSource root(seed);
  std::vector<ChainOutcome> out(replicates, ChainOutcome{0, std::nullopt});
  loop(replicates, [&](std::size_t r) {
    RandomSource rng = root.substream(r);
    out[r] = sim.run(start_sampler, t, stop_on, rng);
  });
  return out;
}

}  // namespace

std::vector<ChainOutcome> simulate_replicates(const TransitionKernel& kernel, const Distribution& start,
                                              std::size_t t, const TargetSet* stop_on, std::uint64_t seed,
                                              std::size_t replicates) {
  return replicate_loop(kernel, start, t, stop_on, seed, replicates,
                        [](std::size_t n, auto&& body) { kernels::parallel_for(n, body); });
}

std::vector<ChainOutcome> simulate_replicates_serial(const TransitionKernel& kernel, const Distribution& start,
                                                     std::size_t t, const TargetSet* stop_on, std::uint64_t seed,
                                                     std::size_t replicates) {
  return replicate_loop(kernel, start, t, stop_on, seed, replicates,
                        [](std::size_t n, auto&& body) { kernels::serial_for(n, body); });
}

Distribution empirical_distribution(const SampleSet& s) {
  if (s.draws.empty()) throw Error(ErrorKind::InvalidArgument, "empirical distribution of an empty sample");
  const auto c = s.counts();
  std::vector<double> mass(c.size());
  const double n = static_cast<double>(s.draws.size());
  for (std::size_t i = 0; i < c.size(); ++i) mass[i] = static_cast<double>(c[i]) / n;
  return Distribution(s.space, std::move(mass));
}

}  // namespace actinfo

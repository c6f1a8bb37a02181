#pragma once

// Seedable random generation. A RandomSource is mt19937_64 (whose output
// sequence is fixed by the C++ standard) seeded with splitmix64(seed) mixed
// with splitmix64 of the stream index; uniforms use the top 53 bits. No
// <random> distribution objects are used, so draws are identical across
// platforms and standard libraries.

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "actinfo/chains.hpp"

namespace actinfo {

class RandomSource {
 public:
  explicit RandomSource(std::uint64_t seed, std::uint64_t stream = 0);

  std::uint64_t seed() const noexcept { return seed_; }
  std::uint64_t stream() const noexcept { return stream_; }

  std::uint64_t next_u64() { return engine_(); }
  /// Uniform on [0, 1).
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  /// Independent generator for (seed, index); used once per replicate.
  RandomSource substream(std::uint64_t index) const { return RandomSource(seed_, index + 1); }

 private:
  std::uint64_t seed_;
  std::uint64_t stream_;
  std::mt19937_64 engine_;
};

std::uint64_t splitmix64(std::uint64_t x) noexcept;

/// Inverse-CDF sampler over canonical index order.
class CategoricalSampler {
 public:
  explicit CategoricalSampler(std::span<const double> mass);
  Index draw(RandomSource& rng) const;

 private:
  std::vector<double> cdf_;
  Index last_positive_ = 0;
};

struct SampleSet {
  SpacePtr space;
  std::vector<Index> draws;
  std::string origin;
  std::uint64_t seed = 0;

  std::size_t size() const noexcept { return draws.size(); }
  std::vector<std::size_t> counts() const;
};

SampleSet sample_iid(const Distribution& p, std::size_t n, RandomSource& rng);

struct ChainOutcome {
  Index final_state;
  std::optional<std::size_t> hit_time;

  bool operator==(const ChainOutcome&) const = default;
};

/// Caches one categorical sampler per kernel row.
class ChainSimulator {
 public:
  explicit ChainSimulator(const TransitionKernel& kernel);

  /// X0 ~ start, then up to t steps; with stop_on, halts at the first entry.
  ChainOutcome run(const CategoricalSampler& start, std::size_t t, const TargetSet* stop_on, RandomSource& rng) const;

 private:
  std::vector<CategoricalSampler> rows_;
};

ChainOutcome simulate_chain(const TransitionKernel& kernel, const Distribution& start, std::size_t t,
                            const TargetSet* stop_on, RandomSource& rng);

/// Replicate r uses RandomSource(seed).substream(r); results are ordered by r
/// and independent of the number of threads.
std::vector<ChainOutcome> simulate_replicates(const TransitionKernel& kernel, const Distribution& start,
                                              std::size_t t, const TargetSet* stop_on, std::uint64_t seed,
                                              std::size_t replicates);
std::vector<ChainOutcome> simulate_replicates_serial(const TransitionKernel& kernel, const Distribution& start,
                                                     std::size_t t, const TargetSet* stop_on, std::uint64_t seed,
                                                     std::size_t replicates);

Distribution empirical_distribution(const SampleSet& s);

}  // namespace actinfo

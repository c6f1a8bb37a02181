#pragma once

// Finite state spaces, probability vectors, specificity profiles and the
// information functionals built on them. All logs are natural (nats).

#include <cstddef>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "actinfo/error.hpp"

namespace actinfo {

using Index = std::size_t;

/// Normalization tolerance shared by every probability-vector check.
inline constexpr double kMassTolerance = 1e-9;

class StateSpace {
 public:
  explicit StateSpace(std::vector<std::string> labels);

  /// Space of size m with labels "0", "1", ..., "m-1".
  static std::shared_ptr<const StateSpace> indexed(std::size_t m);
  static std::shared_ptr<const StateSpace> make(std::vector<std::string> labels);

  std::size_t size() const noexcept { return labels_.size(); }
  const std::string& label(Index i) const { return labels_.at(i); }
  const std::vector<std::string>& labels() const noexcept { return labels_; }
  std::optional<Index> index_of(const std::string& label) const;

  bool operator==(const StateSpace& other) const { return labels_ == other.labels_; }

 private:
  std::vector<std::string> labels_;
};

using SpacePtr = std::shared_ptr<const StateSpace>;

/// Throws SpaceMismatch unless both spaces are the same object or equal.
void require_same_space(const SpacePtr& a, const SpacePtr& b, const char* where);

class Distribution {
 public:
  /// Validates nonnegativity and |sum - 1| <= kMassTolerance; renormalizes
  /// the admissible drift so the stored vector sums to 1 up to rounding.
  Distribution(SpacePtr space, std::vector<double> mass);

  static Distribution uniform(SpacePtr space);
  static Distribution point_mass(SpacePtr space, Index k);

  const SpacePtr& space() const noexcept { return space_; }
  std::size_t size() const noexcept { return mass_.size(); }
  std::span<const double> mass() const noexcept { return mass_; }
  double operator[](Index i) const { return mass_[i]; }
  double min_mass() const;

 private:
  SpacePtr space_;
  std::vector<double> mass_;
};

/// The specificity function f together with the threshold f0.
class SpecificityProfile {
 public:
  SpecificityProfile(SpacePtr space, std::vector<double> values, double threshold);

  const SpacePtr& space() const noexcept { return space_; }
  std::span<const double> values() const noexcept { return values_; }
  double operator[](Index i) const { return values_[i]; }
  double threshold() const noexcept { return threshold_; }
  double max_value() const noexcept { return max_; }
  double min_value() const noexcept { return min_; }

  SpecificityProfile with_threshold(double threshold) const;

 private:
  SpacePtr space_;
  std::vector<double> values_;
  double threshold_;
  double max_;
  double min_;
};

class TargetSet {
 public:
  /// Members are sorted and deduplicated; out-of-range indices throw.
  TargetSet(SpacePtr space, std::vector<Index> members);

  const SpacePtr& space() const noexcept { return space_; }
  std::span<const Index> members() const noexcept { return members_; }
  std::size_t size() const noexcept { return members_.size(); }
  bool empty() const noexcept { return members_.empty(); }
  bool contains(Index i) const { return i < indicator_.size() && indicator_[i] != 0; }

  TargetSet complement() const;

 private:
  SpacePtr space_;
  std::vector<Index> members_;
  std::vector<char> indicator_;
};

/// {i : f(i) >= f0}. Throws EmptyTarget if nothing qualifies.
TargetSet target_set(const SpecificityProfile& f);

/// Argmax set of f, ties included.
TargetSet stringent_target(const SpecificityProfile& f);

double target_probability(const Distribution& p, const TargetSet& a);

/// log[P(A)/P0(A)]. Returns -infinity (see is_degenerate) when P(A) = 0.
double actinfo(const Distribution& p, const Distribution& p0, const TargetSet& a);

/// True for the -infinity sentinel produced by actinfo-type functions.
bool is_degenerate(double information) noexcept;

/// -log P0(A).
double functional_information(const Distribution& p0, const TargetSet& a);

/// Sum Q(x) log[Q(x)/P(x)]; terms with Q(x) = 0 contribute 0.
double kl_divergence(const Distribution& q, const Distribution& p);

}  // namespace actinfo

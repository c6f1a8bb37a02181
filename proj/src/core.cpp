#include "actinfo/core.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <unordered_set>

namespace actinfo {

const char* to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::InvalidDistribution: return "InvalidDistribution";
    case ErrorKind::SpaceMismatch: return "SpaceMismatch";
    case ErrorKind::EmptyTarget: return "EmptyTarget";
    case ErrorKind::NullTargetZero: return "NullTargetZero";
    case ErrorKind::SupportViolation: return "SupportViolation";
    case ErrorKind::OutOfRange: return "OutOfRange";
    case ErrorKind::NoConvergence: return "NoConvergence";
    case ErrorKind::ReciprocityViolation: return "ReciprocityViolation";
    case ErrorKind::ZeroNullMass: return "ZeroNullMass";
    case ErrorKind::NotStronglyConnected: return "NotStronglyConnected";
    case ErrorKind::SingularSystem: return "SingularSystem";
    case ErrorKind::EmptyComplement: return "EmptyComplement";
    case ErrorKind::ConstantSpecificity: return "ConstantSpecificity";
    case ErrorKind::NonIdentifiable: return "NonIdentifiable";
    case ErrorKind::SingularSandwich: return "SingularSandwich";
    case ErrorKind::NullModelTargetZero: return "NullModelTargetZero";
    case ErrorKind::InvalidNull: return "InvalidNull";
    case ErrorKind::DegenerateVariance: return "DegenerateVariance";
    case ErrorKind::ParseError: return "ParseError";
  }
  return "Unknown";
}

StateSpace::StateSpace(std::vector<std::string> labels) : labels_(std::move(labels)) {
  if (labels_.empty()) throw Error(ErrorKind::InvalidArgument, "state space must be nonempty");
  std::unordered_set<std::string> seen;
  for (const auto& l : labels_) {
    if (!seen.insert(l).second)
      throw Error(ErrorKind::InvalidArgument, "duplicate state label '" + l + "'");
  }
}

std::shared_ptr<const StateSpace> StateSpace::indexed(std::size_t m) {
  std::vector<std::string> labels(m);
  for (std::size_t i = 0; i < m; ++i) labels[i] = std::to_string(i);
  return make(std::move(labels));
}

std::shared_ptr<const StateSpace> StateSpace::make(std::vector<std::string> labels) {
  return std::make_shared<const StateSpace>(std::move(labels));
}

std::optional<Index> StateSpace::index_of(const std::string& label) const {
  auto it = std::find(labels_.begin(), labels_.end(), label);
  if (it == labels_.end()) return std::nullopt;
  return static_cast<Index>(it - labels_.begin());
}

void require_same_space(const SpacePtr& a, const SpacePtr& b, const char* where) {
  if (a == b) return;
  if (!a || !b || !(*a == *b))
    throw Error(ErrorKind::SpaceMismatch, std::string(where) + ": operands live on different state spaces");
}

Distribution::Distribution(SpacePtr space, std::vector<double> mass)
    : space_(std::move(space)), mass_(std::move(mass)) {
  if (!space_) throw Error(ErrorKind::InvalidArgument, "distribution without a state space");
  if (mass_.size() != space_->size())
    throw Error(ErrorKind::InvalidDistribution, "mass vector length " + std::to_string(mass_.size()) +
                                                    " != space size " + std::to_string(space_->size()));
  double total = 0.0;
  for (std::size_t i = 0; i < mass_.size(); ++i) {
    const double m = mass_[i];
    if (!std::isfinite(m) || m < 0.0)
      throw Error(ErrorKind::InvalidDistribution, "entry " + std::to_string(i) + " is negative or not finite");
    total += m;
  }
  if (std::abs(total - 1.0) > kMassTolerance)
    throw Error(ErrorKind::InvalidDistribution, "masses sum to " + std::to_string(total));
  if (std::abs(total - 1.0) > 1e-13)
    for (auto& m : mass_) m /= total;
}

Distribution Distribution::uniform(SpacePtr space) {
  const std::size_t m = space->size();
  return Distribution(std::move(space), std::vector<double>(m, 1.0 / static_cast<double>(m)));
}

Distribution Distribution::point_mass(SpacePtr space, Index k) {
  std::vector<double> mass(space->size(), 0.0);
  mass.at(k) = 1.0;
  return Distribution(std::move(space), std::move(mass));
}

double Distribution::min_mass() const { return *std::min_element(mass_.begin(), mass_.end()); }

SpecificityProfile::SpecificityProfile(SpacePtr space, std::vector<double> values, double threshold)
    : space_(std::move(space)), values_(std::move(values)), threshold_(threshold) {
  if (!space_) throw Error(ErrorKind::InvalidArgument, "specificity profile without a state space");
  if (values_.size() != space_->size())
    throw Error(ErrorKind::InvalidArgument, "specificity vector length does not match the space");
  for (double v : values_)
    if (!std::isfinite(v)) throw Error(ErrorKind::InvalidArgument, "specificity values must be finite");
  if (std::isnan(threshold_)) throw Error(ErrorKind::InvalidArgument, "threshold is NaN");
  auto [lo, hi] = std::minmax_element(values_.begin(), values_.end());
  min_ = *lo;
  max_ = *hi;
}

SpecificityProfile SpecificityProfile::with_threshold(double threshold) const {
  return SpecificityProfile(space_, values_, threshold);
}

TargetSet::TargetSet(SpacePtr space, std::vector<Index> members)
    : space_(std::move(space)), members_(std::move(members)) {
  if (!space_) throw Error(ErrorKind::InvalidArgument, "target set without a state space");
  std::sort(members_.begin(), members_.end());
  members_.erase(std::unique(members_.begin(), members_.end()), members_.end());
  indicator_.assign(space_->size(), 0);
  for (Index i : members_) {
    if (i >= space_->size()) throw Error(ErrorKind::OutOfRange, "target index " + std::to_string(i));
    indicator_[i] = 1;
  }
}

TargetSet TargetSet::complement() const {
  std::vector<Index> rest;
  for (Index i = 0; i < space_->size(); ++i)
    if (!indicator_[i]) rest.push_back(i);
  return TargetSet(space_, std::move(rest));
}

TargetSet target_set(const SpecificityProfile& f) {
  std::vector<Index> members;
  for (Index i = 0; i < f.values().size(); ++i)
    if (f[i] >= f.threshold()) members.push_back(i);
  if (members.empty())
    throw Error(ErrorKind::EmptyTarget, "no state reaches the threshold " + std::to_string(f.threshold()));
  return TargetSet(f.space(), std::move(members));
}

TargetSet stringent_target(const SpecificityProfile& f) {
  std::vector<Index> members;
  for (Index i = 0; i < f.values().size(); ++i)
    if (f[i] == f.max_value()) members.push_back(i);
  return TargetSet(f.space(), std::move(members));
}

double target_probability(const Distribution& p, const TargetSet& a) {
  require_same_space(p.space(), a.space(), "target_probability");
  double s = 0.0;
  for (Index i : a.members()) s += p[i];
  return std::min(s, 1.0);
}

double actinfo(const Distribution& p, const Distribution& p0, const TargetSet& a) {
  require_same_space(p.space(), p0.space(), "actinfo");
  const double null_mass = target_probability(p0, a);
  if (null_mass <= 0.0) throw Error(ErrorKind::NullTargetZero, "P0(A) = 0");
  const double mass = target_probability(p, a);
  if (mass <= 0.0) return -std::numeric_limits<double>::infinity();
  return std::log(mass) - std::log(null_mass);
}

bool is_degenerate(double information) noexcept {
  return std::isinf(information) && information < 0.0;
}

double functional_information(const Distribution& p0, const TargetSet& a) {
  const double null_mass = target_probability(p0, a);
  if (null_mass <= 0.0) throw Error(ErrorKind::NullTargetZero, "P0(A) = 0");
  return -std::log(null_mass);
}

double kl_divergence(const Distribution& q, const Distribution& p) {
  require_same_space(q.space(), p.space(), "kl_divergence");
  double d = 0.0;
  for (Index i = 0; i < q.size(); ++i) {
    if (q[i] == 0.0) continue;
    if (p[i] == 0.0)
      throw Error(ErrorKind::SupportViolation, "Q(" + std::to_string(i) + ") > 0 but P(" + std::to_string(i) + ") = 0");
    d += q[i] * (std::log(q[i]) - std::log(p[i]));
  }
  return std::max(d, 0.0);
}

}  // namespace actinfo

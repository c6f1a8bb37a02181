#pragma once

// Plain-text CSV formats. Numbers are written with 17 significant digits so
// that doubles round-trip exactly; lines starting with '#' are comments.

#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "actinfo/deviations.hpp"
#include "actinfo/inference.hpp"
#include "actinfo/models.hpp"

namespace actinfo::io {

std::string format_double(double x);
/// Accepts anything strtod does, including inf and nan; throws ParseError.
double parse_double(std::string_view text);

void write_distribution(std::ostream& os, const Distribution& p);
/// With a space, labels must match it row by row; otherwise the labels found
/// in the file define a new space.
Distribution read_distribution(std::istream& is, const SpacePtr& space = nullptr);

/// The threshold travels in a "# threshold=<f0>" comment.
void write_profile(std::ostream& os, const SpecificityProfile& f);
SpecificityProfile read_profile(std::istream& is, const SpacePtr& space = nullptr);

/// Nonzero entries as from,to,prob.
void write_kernel(std::ostream& os, const TransitionKernel& kernel);
/// Rows are validated by the TransitionKernel constructor.
TransitionKernel read_kernel(std::istream& is, const SpacePtr& space, double theta, AcceptanceRule rule);

void write_samples(std::ostream& os, const SampleSet& s);
SampleSet read_samples(std::istream& is, const SpacePtr& space);

inline constexpr std::string_view kEstimationHeader = "estimator,estimate,variance,n,n0,ci_low,ci_high,reject,i_min";
void write_estimation_row(std::ostream& os, const EstimationResult& r, const std::optional<TestOutcome>& test);

inline constexpr std::string_view kDecayHeader = "n,log_level,normalized_rate,target_C";
void write_decay_table(std::ostream& os, const std::vector<DecayPoint>& rows, double target_rate);

struct EquilibriumCurve {
  double a;
  std::vector<EquilibriumRow> rows;
};

/// Long format a,theta,iplus,ifo with one block of rows per curve.
void write_equilibrium_table(std::ostream& os, const std::vector<EquilibriumCurve>& curves);
void write_time_table(std::ostream& os, const std::vector<TimeRow>& rows);

/// Splits one CSV line on commas (no quoting).
std::vector<std::string> split_fields(std::string_view line);

}  // namespace actinfo::io

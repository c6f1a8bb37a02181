#include "actinfo/io.hpp"

#include <cerrno>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <istream>
#include <ostream>

namespace actinfo::io {

namespace {

struct Table {
  std::vector<std::string> comments;
  std::vector<std::vector<std::string>> rows;
};

Table read_table(std::istream& is, std::string_view header) {
  Table t;
  std::string line;
  bool seen_header = false;
  while (std::getline(is, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (line[0] == '#') {
      t.comments.push_back(line.substr(1));
      continue;
    }
    if (!seen_header) {
      if (line != header)
        throw Error(ErrorKind::ParseError, "expected header '" + std::string(header) + "', found '" + line + "'");
      seen_header = true;
      continue;
    }
    t.rows.push_back(split_fields(line));
  }
  if (!seen_header) throw Error(ErrorKind::ParseError, "missing header '" + std::string(header) + "'");
  return t;
}

std::optional<std::string> comment_value(const Table& t, std::string_view key) {
  for (const auto& c : t.comments) {
    const auto start = c.find_first_not_of(' ');
    if (start == std::string::npos) continue;
    std::string_view body(c);
    body.remove_prefix(start);
    if (body.size() > key.size() && body.substr(0, key.size()) == key && body[key.size()] == '=')
      return std::string(body.substr(key.size() + 1));
  }
  return std::nullopt;
}

std::size_t parse_index(std::string_view text) {
  const double v = parse_double(text);
  if (!(v >= 0.0) || v != std::floor(v) || v > 9.0e15)
    throw Error(ErrorKind::ParseError, "not an index: '" + std::string(text) + "'");
  return static_cast<std::size_t>(v);
}

void check_label(const std::string& label) {
  if (label.find_first_of(",\n\r") != std::string::npos)
    throw Error(ErrorKind::InvalidArgument, "label '" + label + "' cannot be written to CSV");
}

void write_indexed(std::ostream& os, const StateSpace& space, std::span<const double> values) {
  os << "index,label,value\n";
  for (Index i = 0; i < values.size(); ++i) {
    check_label(space.label(i));
    os << i << ',' << space.label(i) << ',' << format_double(values[i]) << '\n';
  }
}

std::pair<SpacePtr, std::vector<double>> read_indexed(const Table& t, const SpacePtr& space) {
  std::vector<std::string> labels;
  std::vector<double> values;
  for (const auto& row : t.rows) {
    if (row.size() != 3) throw Error(ErrorKind::ParseError, "expected index,label,value");
    if (parse_index(row[0]) != labels.size()) throw Error(ErrorKind::ParseError, "indices must be 0, 1, 2, ...");
    labels.push_back(row[1]);
    values.push_back(parse_double(row[2]));
  }
  if (!space) return {StateSpace::make(std::move(labels)), std::move(values)};
  if (space->labels() != labels) throw Error(ErrorKind::SpaceMismatch, "file labels do not match the state space");
  return {space, std::move(values)};
}

}  // namespace

std::string format_double(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

double parse_double(std::string_view text) {
  const std::string s(text);
  if (s.empty()) throw Error(ErrorKind::ParseError, "empty number");
  char* end = nullptr;
  errno = 0;
  const double v = std::strtod(s.c_str(), &end);
  if (end != s.c_str() + s.size() || (errno == ERANGE && std::isinf(v)))
    throw Error(ErrorKind::ParseError, "not a number: '" + s + "'");
  return v;
}

std::vector<std::string> split_fields(std::string_view line) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    const auto comma = line.find(',', start);
    out.emplace_back(line.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

void write_distribution(std::ostream& os, const Distribution& p) { write_indexed(os, *p.space(), p.mass()); }

Distribution read_distribution(std::istream& is, const SpacePtr& space) {
  auto [sp, values] = read_indexed(read_table(is, "index,label,value"), space);
  return Distribution(std::move(sp), std::move(values));
}

void write_profile(std::ostream& os, const SpecificityProfile& f) {
  os << "# threshold=" << format_double(f.threshold()) << '\n';
  write_indexed(os, *f.space(), f.values());
}

SpecificityProfile read_profile(std::istream& is, const SpacePtr& space) {
  const Table t = read_table(is, "index,label,value");
  const auto threshold = comment_value(t, "threshold");
  if (!threshold) throw Error(ErrorKind::ParseError, "profile file lacks a threshold comment");
  auto [sp, values] = read_indexed(t, space);
  return SpecificityProfile(std::move(sp), std::move(values), parse_double(*threshold));
}

void write_kernel(std::ostream& os, const TransitionKernel& kernel) {
  os << "from,to,prob\n";
  const Matrix& rows = kernel.rows();
  for (Eigen::Index i = 0; i < rows.rows(); ++i)
    for (Eigen::Index j = 0; j < rows.cols(); ++j)
      if (rows(i, j) != 0.0) os << i << ',' << j << ',' << format_double(rows(i, j)) << '\n';
}

TransitionKernel read_kernel(std::istream& is, const SpacePtr& space, double theta, AcceptanceRule rule) {
  const Table t = read_table(is, "from,to,prob");
  const auto m = static_cast<Eigen::Index>(space->size());
  Matrix rows = Matrix::Zero(m, m);
  for (const auto& row : t.rows) {
    if (row.size() != 3) throw Error(ErrorKind::ParseError, "expected from,to,prob");
    const auto i = parse_index(row[0]);
    const auto j = parse_index(row[1]);
    if (i >= space->size() || j >= space->size()) throw Error(ErrorKind::ParseError, "kernel index out of range");
    rows(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = parse_double(row[2]);
  }
  return TransitionKernel(space, std::move(rows), theta, rule);
}

void write_samples(std::ostream& os, const SampleSet& s) {
  os << "# size=" << s.space->size() << '\n' << "# seed=" << s.seed << '\n' << "# origin=" << s.origin << '\n';
  os << "index\n";
  for (Index d : s.draws) os << d << '\n';
}

SampleSet read_samples(std::istream& is, const SpacePtr& space) {
  const Table t = read_table(is, "index");
  SampleSet s;
  s.space = space;
  if (const auto size = comment_value(t, "size"); size && parse_index(*size) != space->size())
    throw Error(ErrorKind::SpaceMismatch, "sample file was drawn on a space of size " + *size);
  if (const auto seed = comment_value(t, "seed")) s.seed = std::strtoull(seed->c_str(), nullptr, 10);
  if (const auto origin = comment_value(t, "origin")) s.origin = *origin;
  s.draws.reserve(t.rows.size());
  for (const auto& row : t.rows) {
    if (row.size() != 1) throw Error(ErrorKind::ParseError, "expected one index per line");
    const auto d = parse_index(row[0]);
    if (d >= space->size()) throw Error(ErrorKind::ParseError, "sample index out of range");
    s.draws.push_back(d);
  }
  return s;
}

void write_estimation_row(std::ostream& os, const EstimationResult& r, const std::optional<TestOutcome>& test) {
  os << r.estimator << ',' << format_double(r.estimate) << ',' << format_double(r.variance) << ',' << r.n << ',';
  if (r.n0) os << *r.n0;
  os << ',' << format_double(r.ci_low) << ',' << format_double(r.ci_high) << ',';
  if (test) os << (test->reject ? 1 : 0) << ',' << format_double(test->i_min);
  else os << ',';
  os << '\n';
}

void write_decay_table(std::ostream& os, const std::vector<DecayPoint>& rows, double target_rate) {
  os << kDecayHeader << '\n';
  for (const auto& r : rows)
    os << r.n << ',' << format_double(r.log_level) << ',' << format_double(r.normalized_rate) << ','
       << format_double(target_rate) << '\n';
}

void write_equilibrium_table(std::ostream& os, const std::vector<EquilibriumCurve>& curves) {
  os << "a,theta,iplus,ifo\n";
  for (const auto& c : curves)
    for (const auto& r : c.rows)
      os << format_double(c.a) << ',' << format_double(r.theta) << ',' << format_double(r.iplus) << ','
         << format_double(r.ifo) << '\n';
}

void write_time_table(std::ostream& os, const std::vector<TimeRow>& rows) {
  os << "t,iplus,iplus_stopped,iplus_eq,ifo\n";
  for (const auto& r : rows)
    os << r.t << ',' << format_double(r.iplus) << ',' << format_double(r.iplus_stopped) << ','
       << format_double(r.iplus_eq) << ',' << format_double(r.ifo) << '\n';
}

}  // namespace actinfo::io

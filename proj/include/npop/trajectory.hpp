#ifndef NPOP_TRAJECTORY_HPP
#define NPOP_TRAJECTORY_HPP

#include <cstdint>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

namespace npop {

struct TrajectoryRow {
  std::uint64_t step = 0;
  std::vector<double> freq;
  double mean_payoff = 0.0;

  friend bool operator==(const TrajectoryRow&, const TrajectoryRow&) = default;
};

/// Population frequencies over time plus run metadata.
struct TrajectoryRecord {
  std::vector<std::string> strategy_names;
  // Ordered key/value pairs written as "# key=value" lines.
  std::vector<std::pair<std::string, std::string>> metadata;
  std::vector<TrajectoryRow> rows;

  void set_meta(const std::string& key, const std::string& value);
  const std::string* meta(const std::string& key) const;
  // Column of frequencies for one strategy.
  std::vector<double> series(std::size_t strategy) const;

  friend bool operator==(const TrajectoryRecord&, const TrajectoryRecord&) = default;
};

inline constexpr int kCsvDigits = 12;

// Header "step,<names...>,mean_payoff", values with 12 significant digits.
void write_csv(std::ostream& out, const TrajectoryRecord& t);
TrajectoryRecord read_csv(std::istream& in);

}  // namespace npop

#endif  // NPOP_TRAJECTORY_HPP

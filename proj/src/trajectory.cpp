#include "npop/trajectory.hpp"

#include <istream>
#include <ostream>

#include "npop/game.hpp"
#include "npop/text.hpp"

namespace npop {

void TrajectoryRecord::set_meta(const std::string& key, const std::string& value) {
  for (auto& [k, v] : metadata)
    if (k == key) {
      v = value;
      return;
    }
  metadata.emplace_back(key, value);
}

const std::string* TrajectoryRecord::meta(const std::string& key) const {
  for (const auto& [k, v] : metadata)
    if (k == key) return &v;
  return nullptr;
}

std::vector<double> TrajectoryRecord::series(std::size_t strategy) const {
  std::vector<double> out;
  out.reserve(rows.size());
  for (const auto& r : rows) out.push_back(r.freq.at(strategy));
  return out;
}

void write_csv(std::ostream& out, const TrajectoryRecord& t) {
  for (const auto& [k, v] : t.metadata) out << "# " << k << '=' << v << '\n';
  out << "step";
  for (const auto& n : t.strategy_names) out << ',' << n;
  out << ",mean_payoff\n";
  for (const auto& r : t.rows) {
    out << r.step;
    for (double f : r.freq) out << ',' << format_sig(f, kCsvDigits);
    out << ',' << format_sig(r.mean_payoff, kCsvDigits) << '\n';
  }
}

TrajectoryRecord read_csv(std::istream& in) {
  TrajectoryRecord t;
  std::string line;
  bool header = false;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    if (line.front() == '#') {
      auto body = trim(std::string_view(line).substr(1));
      auto eq = body.find('=');
      if (eq == std::string_view::npos) throw InvalidInput("metadata line without '='");
      t.metadata.emplace_back(std::string(body.substr(0, eq)), std::string(body.substr(eq + 1)));
      continue;
    }
    auto cells = split(line, ',');
    if (!header) {
      if (cells.size() < 3 || cells.front() != "step" || cells.back() != "mean_payoff")
        throw InvalidInput("trajectory header must be step,<names...>,mean_payoff");
      t.strategy_names.assign(cells.begin() + 1, cells.end() - 1);
      header = true;
      continue;
    }
    if (cells.size() != t.strategy_names.size() + 2) throw InvalidInput("trajectory row has wrong width");
    TrajectoryRow row;
    row.step = static_cast<std::uint64_t>(parse_integer(cells.front()));
    for (std::size_t i = 1; i + 1 < cells.size(); ++i) row.freq.push_back(parse_double(cells[i]));
    row.mean_payoff = parse_double(cells.back());
    t.rows.push_back(std::move(row));
  }
  if (!header) throw InvalidInput("trajectory has no header");
  return t;
}

}  // namespace npop

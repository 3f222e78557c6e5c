#include "walkerlie/chart.hpp"

#include <set>
#include <stdexcept>

namespace walkerlie {

Chart::Chart(std::vector<std::string> names) : names_(std::move(names)) {
  if (names_.empty()) throw std::invalid_argument("chart needs at least one coordinate");
  std::set<std::string> seen;
  for (const auto& n : names_) {
    if (n.empty()) throw std::invalid_argument("empty coordinate name");
    if (!seen.insert(n).second) throw std::invalid_argument("duplicate coordinate name '" + n + "'");
  }
}

std::optional<int> Chart::index_of(const std::string& name) const {
  for (std::size_t i = 0; i < names_.size(); ++i) {
    if (names_[i] == name) return static_cast<int>(i);
  }
  return std::nullopt;
}

Chart coordinate_chart(int n, const std::string& stem) {
  std::vector<std::string> names;
  names.reserve(static_cast<std::size_t>(n));
  for (int i = 1; i <= n; ++i) names.push_back(stem + std::to_string(i));
  return Chart(names);
}

double Point::at(const std::string& name) const {
  auto it = values_.find(name);
  if (it == values_.end()) throw std::out_of_range("point does not assign coordinate '" + name + "'");
  return it->second;
}

}  // namespace walkerlie

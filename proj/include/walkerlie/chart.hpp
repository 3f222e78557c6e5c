#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace walkerlie {

/// Ordered list of coordinate names on a local chart.
class Chart {
 public:
  explicit Chart(std::vector<std::string> names);

  int dim() const { return static_cast<int>(names_.size()); }
  const std::vector<std::string>& names() const { return names_; }
  const std::string& name(int i) const { return names_.at(static_cast<std::size_t>(i)); }
  std::optional<int> index_of(const std::string& name) const;
  bool operator==(const Chart& other) const { return names_ == other.names_; }

 private:
  std::vector<std::string> names_;
};

/// Standard chart (x1,...,xn).
Chart coordinate_chart(int n, const std::string& stem = "x");

/// Coordinate values at a point, keyed by coordinate name.
class Point {
 public:
  Point() = default;
  explicit Point(std::map<std::string, double> values) : values_(std::move(values)) {}

  double at(const std::string& name) const;
  bool has(const std::string& name) const { return values_.count(name) > 0; }
  void set(const std::string& name, double v) { values_[name] = v; }
  const std::map<std::string, double>& values() const { return values_; }

 private:
  std::map<std::string, double> values_;
};

}  // namespace walkerlie

#pragma once

#include <cstddef>
#include <string>
#include <vector>

namespace orthantmc {

// Absorbing threshold sequence S_t. Crossings are only ever tested at
// integer t >= 1; t = 0 is the structural start point of the series (X_0 = 0)
// and is never counted as a crossing.
class Boundary {
 public:
  enum class Kind { constant, linear, tabulated };

  static Boundary constant(double c);
  static Boundary linear(double a, double b);  // S_t = a + b*t
  static Boundary tabulated(std::vector<double> values);  // values[i] = S_{i+1}

  // "const:<c>" | "lin:<a>,<b>" | "file:<path>".
  static Boundary parse(const std::string& spec);

  // One S_t per line starting at t = 1; '#' starts a comment line.
  static Boundary from_file(const std::string& path);

  Kind kind() const { return kind_; }

  // Threshold at integer t >= 1. Throws std::invalid_argument for t = 0 or
  // a tabulated boundary queried beyond its table.
  double at(std::size_t t) const;

  // max_{1 <= t <= k} S_t.
  double max_over(std::size_t k) const;

  std::string describe() const;

 private:
  Boundary() = default;
  Kind kind_ = Kind::constant;
  double a_ = 0.0;
  double b_ = 0.0;
  std::vector<double> table_;
};

}  // namespace orthantmc

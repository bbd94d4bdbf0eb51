#include "orthantmc/boundary.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace orthantmc {

Boundary Boundary::constant(double c) {
  if (!std::isfinite(c)) throw std::invalid_argument("boundary: non-finite level");
  Boundary b;
  b.kind_ = Kind::constant;
  b.a_ = c;
  return b;
}

Boundary Boundary::linear(double a, double slope) {
  if (!std::isfinite(a) || !std::isfinite(slope))
    throw std::invalid_argument("boundary: non-finite coefficients");
  Boundary b;
  b.kind_ = Kind::linear;
  b.a_ = a;
  b.b_ = slope;
  return b;
}

Boundary Boundary::tabulated(std::vector<double> values) {
  if (values.empty()) throw std::invalid_argument("boundary: empty table");
  for (double v : values)
    if (!std::isfinite(v)) throw std::invalid_argument("boundary: non-finite table entry");
  Boundary b;
  b.kind_ = Kind::tabulated;
  b.table_ = std::move(values);
  return b;
}

Boundary Boundary::parse(const std::string& spec) {
  const auto colon = spec.find(':');
  if (colon == std::string::npos)
    throw std::invalid_argument("boundary spec '" + spec +
                                "': expected const:<c>, lin:<a>,<b> or file:<path>");
  const std::string head = spec.substr(0, colon);
  const std::string rest = spec.substr(colon + 1);
  if (head == "const") {
    std::istringstream is(rest);
    double c;
    char extra;
    if (!(is >> c) || (is >> extra))
      throw std::invalid_argument("boundary spec '" + spec + "': bad constant");
    return constant(c);
  }
  if (head == "lin") {
    const auto comma = rest.find(',');
    if (comma == std::string::npos)
      throw std::invalid_argument("boundary spec '" + spec + "': lin needs a,b");
    std::istringstream ia(rest.substr(0, comma)), ib(rest.substr(comma + 1));
    double a, b;
    char extra;
    if (!(ia >> a) || (ia >> extra) || !(ib >> b) || (ib >> extra))
      throw std::invalid_argument("boundary spec '" + spec + "': bad lin coefficients");
    return linear(a, b);
  }
  if (head == "file") return from_file(rest);
  throw std::invalid_argument("boundary spec '" + spec + "': unknown kind '" + head + "'");
}

Boundary Boundary::from_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open boundary file: " + path);
  std::vector<double> values;
  std::string line;
  while (std::getline(in, line)) {
    const auto pos = line.find_first_not_of(" \t\r");
    if (pos == std::string::npos || line[pos] == '#') continue;
    std::istringstream ls(line);
    double v;
    if (!(ls >> v))
      throw std::invalid_argument("boundary file: unparseable line '" + line + "'");
    values.push_back(v);
  }
  return tabulated(std::move(values));
}

double Boundary::at(std::size_t t) const {
  if (t == 0) throw std::invalid_argument("boundary: t = 0 is the start point, not a threshold");
  switch (kind_) {
    case Kind::constant:
      return a_;
    case Kind::linear:
      return a_ + b_ * static_cast<double>(t);
    case Kind::tabulated:
      if (t > table_.size())
        throw std::invalid_argument("boundary table has " + std::to_string(table_.size()) +
                                    " entries, queried at t=" + std::to_string(t));
      return table_[t - 1];
  }
  throw std::logic_error("boundary: bad kind");
}

double Boundary::max_over(std::size_t k) const {
  if (k == 0) throw std::invalid_argument("boundary: horizon must be >= 1");
  double m = at(1);
  for (std::size_t t = 2; t <= k; ++t) m = std::max(m, at(t));
  return m;
}

std::string Boundary::describe() const {
  std::ostringstream os;
  switch (kind_) {
    case Kind::constant:
      os << "const:" << a_;
      break;
    case Kind::linear:
      os << "lin:" << a_ << "," << b_;
      break;
    case Kind::tabulated:
      os << "tabulated[" << table_.size() << "]";
      break;
  }
  return os.str();
}

}  // namespace orthantmc

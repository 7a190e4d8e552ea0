#pragma once

#include <limits>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace sunflower {

using BigInt = boost::multiprecision::cpp_int;
using BigRational = boost::multiprecision::cpp_rational;

/// A float carried in log-space. `value` may overflow to +inf while
/// `log_value` stays finite; `radius` bounds |true value - value|.
struct FloatValue {
  double value = 0.0;
  double log_value = 0.0;  // natural log; -inf for an exact zero
  double radius = 0.0;

  static FloatValue from_log(double log_value, double relative_error);
  static FloatValue zero() { return {0.0, -std::numeric_limits<double>::infinity(), 0.0}; }
};

using BoundValue = std::variant<BigInt, BigRational, FloatValue>;

enum class Strictness {
  SizeAtMost,                // every sunflower-free family has size <= value
  ExceedingForcesSunflower,  // any family with more than value members has a sunflower
};

struct BoundReport {
  std::string name;
  std::vector<std::pair<std::string, std::string>> parameters;
  BoundValue value;
  Strictness strictness = Strictness::SizeAtMost;
  bool degenerate = false;
  std::vector<std::string> notes;

  /// Natural log of the value, used for ordering mixed exactness classes.
  double log_value() const;
  double approx() const;
  std::string exactness() const;
};

double log_of(const BigInt& v);
double log_of(const BigRational& v);

}  // namespace sunflower

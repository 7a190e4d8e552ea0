#include "sunflower/bounds.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <sstream>

namespace sunflower {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

// Relative error of a log-space evaluation whose log has magnitude |lv|
// after `ops` roundings.
double log_space_error(double lv, double ops) { return ops * kEps * (1.0 + std::abs(lv)); }

std::string fmt(double v) {
  std::ostringstream out;
  out.precision(17);
  out << v;
  return out.str();
}

unsigned floor_two_thirds(unsigned n) { return 2 * n / 3; }
unsigned ceil_two_thirds(unsigned k) { return (2 * k + 2) / 3; }

BigInt factorial(unsigned n) {
  BigInt r = 1;
  for (unsigned i = 2; i <= n; ++i) r *= i;
  return r;
}

BigInt binomial(unsigned n, unsigned r) {
  if (r > n) return 0;
  BigInt c = 1;
  for (unsigned i = 0; i < r; ++i) {
    c *= n - i;
    c /= i + 1;
  }
  return c;
}

BigInt pow_big(const BigInt& base, unsigned e) {
  BigInt r = 1;
  for (unsigned i = 0; i < e; ++i) r *= base;
  return r;
}

// ln of the shared prefactor 3(ceil(2k/3)+1)(2^{1/3} 3e)^k.
double main_prefactor_log(unsigned k) {
  const double base = std::log(2.0) / 3.0 + std::log(3.0) + 1.0;
  return std::log(3.0) + std::log(ceil_two_thirds(k) + 1.0) + k * base;
}

}  // namespace

// ---------------------------------------------------------------------------
// BoundReport

FloatValue FloatValue::from_log(double log_value, double relative_error) {
  FloatValue f;
  f.log_value = log_value;
  f.value = std::exp(log_value);
  f.radius = std::isfinite(f.value) ? f.value * relative_error : std::numeric_limits<double>::infinity();
  return f;
}

double log_of(const BigInt& v) {
  if (v <= 0) return v == 0 ? -std::numeric_limits<double>::infinity() : std::numeric_limits<double>::quiet_NaN();
  const auto bits = boost::multiprecision::msb(v);
  if (bits < 900) return std::log(v.convert_to<double>());
  const auto shift = bits - 60;
  BigInt top = v >> shift;
  return std::log(top.convert_to<double>()) + static_cast<double>(shift) * std::log(2.0);
}

double log_of(const BigRational& v) {
  return log_of(boost::multiprecision::numerator(v)) - log_of(boost::multiprecision::denominator(v));
}

double BoundReport::log_value() const {
  return std::visit(
      [](const auto& v) -> double {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, FloatValue>) {
          return v.log_value;
        } else {
          return log_of(v);
        }
      },
      value);
}

double BoundReport::approx() const {
  return std::visit(
      [](const auto& v) -> double {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, FloatValue>) {
          return v.value;
        } else {
          return v.template convert_to<double>();
        }
      },
      value);
}

std::string BoundReport::exactness() const {
  switch (value.index()) {
    case 0: return "exact-integer";
    case 1: return "exact-rational";
    default: return "float";
  }
}

BoundReport exact_report(std::string name, BigInt value,
                         std::vector<std::pair<std::string, std::string>> parameters) {
  BoundReport r;
  r.name = std::move(name);
  r.parameters = std::move(parameters);
  r.value = std::move(value);
  return r;
}

// ---------------------------------------------------------------------------
// Classical thresholds

BigRational erdos_rado_threshold(unsigned k, unsigned t) {
  if (k < 1 || t < 2) throw Error(ErrorKind::DomainError, "erdos_rado_threshold needs k >= 1, t >= 2");
  const BigInt base = t - 1;
  BigRational sum = 0;
  BigInt fact = 1;  // (s+1)!
  BigInt power = 1;  // (t-1)^s
  for (unsigned s = 1; s + 1 <= k; ++s) {
    fact *= s + 1;
    power *= base;
    sum += BigRational(BigInt(s), fact * power);
  }
  return BigRational(factorial(k) * pow_big(base, k)) * (BigRational(1) - sum);
}

BoundReport kostochka_value(unsigned k, unsigned t, double alpha, double constant) {
  if (t <= 2) throw Error(ErrorKind::DomainError, "kostochka_value needs t > 2");
  if (!(alpha > 1.0)) throw Error(ErrorKind::DomainError, "kostochka_value needs alpha > 1");
  if (!(constant > 0.0)) throw Error(ErrorKind::DomainError, "kostochka_value needs constant > 0");
  const double l1 = std::log(static_cast<double>(k));
  const double l2 = k > 1 ? std::log(l1) : -std::numeric_limits<double>::infinity();
  const double l3 = l2 > 0 ? std::log(l2) : -std::numeric_limits<double>::infinity();
  if (!(l3 > 0.0)) {
    throw Error(ErrorKind::DomainError, "ln ln ln k must be positive (k >= 16), got k = " + std::to_string(k));
  }
  const double lv = std::log(constant) + std::lgamma(k + 1.0) + k * std::log(l3 * l3 / (alpha * l2));
  BoundReport r;
  r.name = "kostochka";
  r.parameters = {{"k", std::to_string(k)}, {"t", std::to_string(t)}, {"alpha", fmt(alpha)},
                  {"constant", fmt(constant)}};
  r.value = FloatValue::from_log(lv, log_space_error(lv, 8.0 + k));
  r.strictness = Strictness::ExceedingForcesSunflower;
  r.notes = {"up to an unspecified constant D(t, alpha)", "natural logarithms"};
  return r;
}

BoundReport vector_kostochka_bound(unsigned n, double alpha, double constant) {
  auto r = kostochka_value(n, 3, alpha, constant);
  r.name = "vector_kostochka";
  r.parameters = {{"n", std::to_string(n)}, {"alpha", fmt(alpha)}, {"constant", fmt(constant)}};
  r.strictness = Strictness::SizeAtMost;
  r.notes = {"up to an unspecified constant K(alpha)", "natural logarithms"};
  return r;
}

BigInt ns_subset_bound(unsigned n) {
  if (n < 1) throw Error(ErrorKind::DomainError, "ns_subset_bound needs n >= 1");
  BigInt sum = 0;
  for (unsigned i = 0; i <= n / 3; ++i) sum += binomial(n, i);
  return 3 * BigInt(n + 1) * sum;
}

// ---------------------------------------------------------------------------
// Vector bounds

double c_d(unsigned D) {
  if (D <= 2) throw Error(ErrorKind::DomainError, "c_D needs D > 2");
  // (3 / 2^{2/3}) (D-1)^{2/3} == 3 ((D-1)/2)^{2/3}
  return 3.0 * std::pow((D - 1) / 2.0, 2.0 / 3.0);
}

BoundReport ns_vector_bound(unsigned D, unsigned n) {
  if (n < 1) throw Error(ErrorKind::DomainError, "ns_vector_bound needs n >= 1");
  const double c = c_d(D);
  const double lv = n * std::log(c);
  BoundReport r;
  r.name = "ns_vector";
  r.parameters = {{"D", std::to_string(D)}, {"n", std::to_string(n)}};
  auto f = FloatValue::from_log(lv, log_space_error(lv, 4.0 + n));
  if (const double direct = std::pow(c, n); std::isfinite(direct)) f.value = direct;
  r.value = f;
  return r;
}

JMinimizationResult j_constant(unsigned q, double tol) {
  if (q < 2) throw Error(ErrorKind::DomainError, "J(q) needs q >= 2");
  tol = std::max(tol, 1e-12);
  const double exponent = (q - 1) / 3.0;
  // ln f(x) with f(x) = ((1 - x^q)/(1 - x)) x^{-(q-1)/3}; monotone in f.
  auto log_f = [&](double x) {
    const double xq = std::exp(q * std::log(x));
    return std::log1p(-xq) - std::log1p(-x) - exponent * std::log(x);
  };

  constexpr int kGrid = 256;
  int best = 1;
  double best_value = std::numeric_limits<double>::infinity();
  for (int i = 1; i <= kGrid; ++i) {
    const double v = log_f(static_cast<double>(i) / (kGrid + 1));
    if (v < best_value) {
      best_value = v;
      best = i;
    }
  }
  double lo = static_cast<double>(best - 1) / (kGrid + 1);
  double hi = static_cast<double>(best + 1) / (kGrid + 1);

  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double c = hi - inv_phi * (hi - lo);
  double d = lo + inv_phi * (hi - lo);
  double fc = log_f(c);
  double fd = log_f(d);
  for (int iter = 0; iter < 500 && hi - lo > tol; ++iter) {
    if (fc < fd) {
      hi = d;
      d = c;
      fd = fc;
      c = hi - inv_phi * (hi - lo);
      fc = log_f(c);
    } else {
      lo = c;
      c = d;
      fc = fd;
      d = lo + inv_phi * (hi - lo);
      fd = log_f(d);
    }
  }
  const double x_star = 0.5 * (lo + hi);
  const double f_star = std::exp(log_f(x_star));
  const double spread = std::abs(std::exp(fc) - std::exp(fd));

  JMinimizationResult r;
  r.q = q;
  r.x_star = x_star;
  r.j_value = f_star / q;
  r.error_radius = (spread + 64.0 * kEps * f_star) / q;
  return r;
}

// ---------------------------------------------------------------------------
// Factorization and CRT

std::uint64_t PrimePower::value() const {
  std::uint64_t v = 1;
  for (unsigned i = 0; i < exponent; ++i) v *= prime;
  return v;
}

Factorization factorize(std::uint64_t m) {
  if (m < 2) throw Error(ErrorKind::DomainError, "factorize needs m >= 2");
  Factorization out;
  for (std::uint64_t p = 2; p <= m / p; p += (p == 2 ? 1 : 2)) {
    if (m % p != 0) continue;
    PrimePower pp{p, 0};
    while (m % p == 0) {
      m /= p;
      ++pp.exponent;
    }
    out.push_back(pp);
  }
  if (m > 1) out.push_back({m, 1});
  return out;
}

bool is_prime_power(std::uint64_t q) { return q >= 2 && factorize(q).size() == 1; }

BoundReport eg_vector_bound(std::uint64_t q, unsigned n) {
  if (q <= 2) throw Error(ErrorKind::DomainError, "eg_vector_bound needs q > 2");
  if (!is_prime_power(q)) throw Error(ErrorKind::NotPrimePower, std::to_string(q) + " is not a prime power");
  if (n < 1) throw Error(ErrorKind::DomainError, "eg_vector_bound needs n >= 1");
  const auto j = j_constant(static_cast<unsigned>(q));
  const double base = j.j_value * static_cast<double>(q);
  const double lv = n * std::log(base);
  BoundReport r;
  r.name = "eg_vector";
  r.parameters = {{"q", std::to_string(q)}, {"n", std::to_string(n)}};
  r.value = FloatValue::from_log(lv, n * (j.error_radius / j.j_value) + log_space_error(lv, 4.0 + n));
  return r;
}

BoundReport crt_bound_formula(std::uint64_t m, unsigned n) {
  if (n < 1) throw Error(ErrorKind::DomainError, "crt_bound needs n >= 1");
  const auto factors = factorize(m);
  double log_product = 0.0;
  double relative = 0.0;
  for (const auto& pp : factors) {
    if (pp.value() == 2) {
      throw Error(ErrorKind::InapplicableFactor, "prime-power factor 2 of m = " + std::to_string(m) +
                                                     " has no progression-free bound");
    }
    const auto j = j_constant(static_cast<unsigned>(pp.value()));
    log_product += std::log(j.j_value);
    relative += j.error_radius / j.j_value;
  }
  const double lv = n * (log_product + std::log(static_cast<double>(m)));
  BoundReport r;
  r.name = "crt_formula";
  r.parameters = {{"m", std::to_string(m)}, {"n", std::to_string(n)}};
  r.value = FloatValue::from_log(lv, n * relative + log_space_error(lv, 4.0 + n + factors.size()));
  return r;
}

BoundReport crt_bound_recursive(std::uint64_t m, unsigned n, const FactorBound& factor_bound) {
  const auto factors = factorize(m);
  std::vector<BoundReport> parts;
  for (const auto& pp : factors) parts.push_back(factor_bound(pp.value(), n));

  BoundReport r;
  r.name = "crt_recursive";
  r.parameters = {{"m", std::to_string(m)}, {"n", std::to_string(n)}};
  const bool all_exact = std::all_of(parts.begin(), parts.end(),
                                     [](const BoundReport& b) { return b.value.index() == 0; });
  if (all_exact) {
    BigInt product = 1;
    for (const auto& b : parts) product *= std::get<BigInt>(b.value);
    r.value = product;
    return r;
  }
  double lv = 0.0;
  double relative = 0.0;
  for (const auto& b : parts) {
    lv += b.log_value();
    if (const auto* f = std::get_if<FloatValue>(&b.value); f && f->value > 0) relative += f->radius / f->value;
  }
  r.value = FloatValue::from_log(lv, relative + log_space_error(lv, 2.0 + parts.size()));
  return r;
}

// ---------------------------------------------------------------------------
// Partite bounds

BigInt generalized_ns_bound(const ModulusVector& moduli) {
  if (!moduli.all_at_least(3)) throw Error(ErrorKind::DomainError, "generalized NS bound needs every D_i >= 3");
  const unsigned limit = floor_two_thirds(static_cast<unsigned>(moduli.size()));
  // Coefficients of prod_i (1 + (D_i - 1) x), truncated at degree `limit`.
  std::vector<BigInt> coeff(limit + 1, 0);
  coeff[0] = 1;
  for (auto d : moduli.values()) {
    for (unsigned j = limit; j >= 1; --j) coeff[j] += coeff[j - 1] * (d - 1);
  }
  BigInt sum = 0;
  for (const auto& c : coeff) sum += c;
  return 3 * sum;
}

BigInt balanced_bound(unsigned n, std::uint64_t M) {
  if (n < 1 || M < n) throw Error(ErrorKind::DomainError, "balanced_bound needs M >= n >= 1");
  const BigInt a = BigInt((M + n - 1) / n) - 1;
  BigInt sum = 0;
  BigInt power = 1;
  for (unsigned j = 0; j <= floor_two_thirds(n); ++j) {
    sum += binomial(n, j) * power;
    power *= a;
  }
  return sum;
}

BoundReport main_bound(unsigned k, std::uint64_t M) {
  if (k < 1 || M < k) throw Error(ErrorKind::DomainError, "main_bound needs M >= k >= 1");
  const std::uint64_t a = (M + k - 1) / k - 1;
  const unsigned c = ceil_two_thirds(k);
  BoundReport r;
  r.name = "main";
  r.parameters = {{"k", std::to_string(k)}, {"M", std::to_string(M)}};
  if (a == 0) {
    r.value = FloatValue::zero();
    r.degenerate = true;
    r.notes = {"ceil(M/k) = 1 makes the bound 0; the statement needs M > k"};
    return r;
  }
  const double lv = main_prefactor_log(k) + c * std::log(static_cast<double>(a));
  r.value = FloatValue::from_log(lv, log_space_error(lv, 8.0 + k));
  return r;
}

BoundReport corollary_bound(unsigned k, double epsilon) {
  if (k < 1) throw Error(ErrorKind::DomainError, "corollary_bound needs k >= 1");
  if (!(epsilon > 0.0 && epsilon < 1.5)) throw Error(ErrorKind::DomainError, "corollary_bound needs 0 < eps < 1.5");
  const double raw = k * (1.0 - 2.0 * epsilon / 3.0);
  // Snap values within rounding noise of an integer before taking the ceiling.
  const double exponent = std::ceil(raw - 1e-12 * std::max(1.0, raw));
  const double lv = main_prefactor_log(k) + exponent * std::log(static_cast<double>(k));
  BoundReport r;
  r.name = "corollary";
  r.parameters = {{"k", std::to_string(k)}, {"epsilon", fmt(epsilon)},
                  {"exponent", std::to_string(static_cast<long long>(exponent))}};
  r.value = FloatValue::from_log(lv, log_space_error(lv, 8.0 + k));
  r.notes = {"applies when |union| <= k^(2.5 - epsilon)"};
  return r;
}

// ---------------------------------------------------------------------------
// Comparison

std::vector<BoundReport> compare_bounds(const BoundContext& context) {
  std::vector<BoundReport> out;
  if (std::holds_alternative<std::monostate>(context)) {
    throw Error(ErrorKind::UsageError, "compare_bounds needs moduli or (k, M)");
  }
  if (const auto* moduli = std::get_if<ModulusVector>(&context)) {
    const auto n = static_cast<unsigned>(moduli->size());
    if (n == 0) throw Error(ErrorKind::UsageError, "compare_bounds needs a nonempty modulus vector");
    std::ostringstream list;
    for (std::size_t i = 0; i < n; ++i) list << (i ? "," : "") << (*moduli)[i];
    if (moduli->all_at_least(3)) {
      out.push_back(exact_report("generalized_ns", generalized_ns_bound(*moduli), {{"moduli", list.str()}}));
    }
    const auto D = (*moduli)[0];
    if (moduli->uniform() && D > 2) {
      out.push_back(ns_vector_bound(D, n));
      if (is_prime_power(D)) {
        out.push_back(eg_vector_bound(D, n));
      } else {
        bool applicable = true;
        for (const auto& pp : factorize(D)) applicable = applicable && pp.value() != 2;
        if (applicable) out.push_back(crt_bound_formula(D, n));
      }
    }
    if (n >= 16) out.push_back(vector_kostochka_bound(n, 2.0, 1.0));
  } else {
    const auto& sc = std::get<SetContext>(context);
    if (sc.k < 1 || sc.M < sc.k) throw Error(ErrorKind::UsageError, "compare_bounds needs M >= k >= 1");
    BoundReport er;
    er.name = "erdos_rado";
    er.parameters = {{"k", std::to_string(sc.k)}, {"t", "3"}};
    er.value = erdos_rado_threshold(sc.k, 3);
    er.strictness = Strictness::ExceedingForcesSunflower;
    out.push_back(std::move(er));
    out.push_back(main_bound(sc.k, sc.M));
    if (sc.M <= std::numeric_limits<unsigned>::max()) {
      out.push_back(exact_report("ns_subset", ns_subset_bound(static_cast<unsigned>(sc.M)),
                                 {{"n", std::to_string(sc.M)}}));
    }
    if (sc.k >= 16) out.push_back(kostochka_value(sc.k, 3, 2.0, 1.0));
  }
  std::stable_sort(out.begin(), out.end(),
                   [](const BoundReport& a, const BoundReport& b) { return a.log_value() < b.log_value(); });
  return out;
}

}  // namespace sunflower

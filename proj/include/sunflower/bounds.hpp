#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <variant>
#include <vector>

#include "sunflower/bound_report.hpp"
#include "sunflower/core.hpp"

namespace sunflower {

/// k!(t-1)^k (1 - sum_{s=1}^{k-1} s / ((s+1)! (t-1)^s)), exactly.
BigRational erdos_rado_threshold(unsigned k, unsigned t);

/// constant * k! * ((ln ln ln k)^2 / (alpha ln ln k))^k, natural logs.
/// Throws DomainError unless ln ln ln k > 0 (k >= 16).
BoundReport kostochka_value(unsigned k, unsigned t, double alpha, double constant = 1.0);

/// The same expression in the vector dimension n, bounding s(D, n) for any D.
BoundReport vector_kostochka_bound(unsigned n, double alpha, double constant = 1.0);

/// 3(n+1) sum_{i <= floor(n/3)} C(n, i).
BigInt ns_subset_bound(unsigned n);

/// (3 / 2^{2/3}) (D-1)^{2/3}.
double c_d(unsigned D);
BoundReport ns_vector_bound(unsigned D, unsigned n);

struct JMinimizationResult {
  unsigned q = 0;
  double x_star = 0.0;
  double j_value = 0.0;
  double error_radius = 0.0;
};

/// J(q) = (1/q) min_{0<x<1} ((1-x^q)/(1-x)) x^{-(q-1)/3}.
/// A 256-point grid picks the bracket, golden-section refines it to |dx| <= tol.
JMinimizationResult j_constant(unsigned q, double tol = 1e-12);

struct PrimePower {
  std::uint64_t prime = 0;
  unsigned exponent = 0;
  std::uint64_t value() const;
  friend bool operator==(const PrimePower&, const PrimePower&) = default;
};
using Factorization = std::vector<PrimePower>;

/// Trial division, ascending primes. Throws DomainError for m < 2.
Factorization factorize(std::uint64_t m);
bool is_prime_power(std::uint64_t q);

/// (J(q) q)^n for a prime power q > 2.
BoundReport eg_vector_bound(std::uint64_t q, unsigned n);

/// ((prod_i J(p_i^a_i)) m)^n. Throws InapplicableFactor if 2 divides m exactly once.
BoundReport crt_bound_formula(std::uint64_t m, unsigned n);

/// prod_i s(p_i^a_i, n) with per-factor bounds supplied by the caller.
using FactorBound = std::function<BoundReport(std::uint64_t prime_power, unsigned n)>;
BoundReport crt_bound_recursive(std::uint64_t m, unsigned n, const FactorBound& factor_bound);

/// 3 sum_{|I| <= floor(2n/3)} prod_{i in I} (D_i - 1). Requires every D_i >= 3.
BigInt generalized_ns_bound(const ModulusVector& moduli);

/// sum_{j <= floor(2n/3)} C(n, j) (ceil(M/n) - 1)^j. Requires M >= n >= 1.
BigInt balanced_bound(unsigned n, std::uint64_t M);

/// 3(ceil(2k/3)+1) (2^{1/3} 3e)^k (ceil(M/k) - 1)^{ceil(2k/3)}.
BoundReport main_bound(unsigned k, std::uint64_t M);

/// 3(ceil(2k/3)+1) (2^{1/3} 3e)^k k^{ceil(k(1 - 2 eps/3))}, for 0 < eps < 1.5.
BoundReport corollary_bound(unsigned k, double epsilon);

/// Vector context: a modulus vector. Set context: uniformity k and union size M.
struct SetContext {
  unsigned k = 0;
  std::uint64_t M = 0;
};
using BoundContext = std::variant<std::monostate, ModulusVector, SetContext>;

/// Every applicable bound for the context, ascending by value.
std::vector<BoundReport> compare_bounds(const BoundContext& context);

BoundReport exact_report(std::string name, BigInt value,
                         std::vector<std::pair<std::string, std::string>> parameters);

}  // namespace sunflower

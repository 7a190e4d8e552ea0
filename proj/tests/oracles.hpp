#pragma once

// Independent reference implementations. Nothing here calls into the
// library's algorithms; they are deliberately plain so tests can compare
// two unrelated code paths.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <iterator>
#include <set>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "sunflower/rng.hpp"

namespace oracle {

using Set = std::set<std::uint32_t>;

inline Set meet(const Set& a, const Set& b) {
  Set out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::inserter(out, out.end()));
  return out;
}

inline bool sets_sunflower(const Set& a, const Set& b, const Set& c) {
  const Set kernel = meet(meet(a, b), c);
  return meet(a, b) == kernel && meet(a, c) == kernel && meet(b, c) == kernel;
}

inline std::vector<Set> as_sets(const std::vector<std::vector<std::uint32_t>>& members) {
  std::vector<Set> out;
  for (const auto& m : members) out.emplace_back(m.begin(), m.end());
  return out;
}

inline bool family_has_sunflower(const std::vector<Set>& f) {
  for (std::size_t a = 0; a < f.size(); ++a) {
    for (std::size_t b = a + 1; b < f.size(); ++b) {
      for (std::size_t c = b + 1; c < f.size(); ++c) {
        if (sets_sunflower(f[a], f[b], f[c])) return true;
      }
    }
  }
  return false;
}

// Coordinate value sets of size 1 or 3 only.
inline bool vectors_sunflower(const std::vector<std::uint32_t>& x, const std::vector<std::uint32_t>& y,
                              const std::vector<std::uint32_t>& z) {
  for (std::size_t i = 0; i < x.size(); ++i) {
    const std::set<std::uint32_t> values{x[i], y[i], z[i]};
    if (values.size() == 2) return false;
  }
  return true;
}

// Largest subset of [0, n) with no triple satisfying `bad`, by full subset enumeration.
inline std::size_t max_free_subset(std::size_t n, const std::function<bool(std::size_t, std::size_t, std::size_t)>& bad) {
  std::size_t best = 0;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
    const auto size = static_cast<std::size_t>(__builtin_popcountll(mask));
    if (size <= best) continue;
    std::vector<std::size_t> chosen;
    for (std::size_t i = 0; i < n; ++i) {
      if (mask >> i & 1) chosen.push_back(i);
    }
    bool ok = true;
    for (std::size_t a = 0; ok && a < chosen.size(); ++a) {
      for (std::size_t b = a + 1; ok && b < chosen.size(); ++b) {
        for (std::size_t c = b + 1; ok && c < chosen.size(); ++c) ok = !bad(chosen[a], chosen[b], chosen[c]);
      }
    }
    if (ok) best = size;
  }
  return best;
}

// All points of Z_{D_1} x ... x Z_{D_n}, last coordinate fastest.
inline std::vector<std::vector<std::uint32_t>> all_points(const std::vector<std::uint32_t>& moduli) {
  std::vector<std::vector<std::uint32_t>> out{{}};
  for (auto d : moduli) {
    std::vector<std::vector<std::uint32_t>> next;
    for (const auto& p : out) {
      for (std::uint32_t v = 0; v < d; ++v) {
        auto q = p;
        q.push_back(v);
        next.push_back(std::move(q));
      }
    }
    out = std::move(next);
  }
  return out;
}

// All k-subsets of [0, m), lexicographic.
inline std::vector<Set> all_subsets(unsigned k, unsigned m) {
  std::vector<Set> out;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << m); ++mask) {
    if (static_cast<unsigned>(__builtin_popcountll(mask)) != k) continue;
    Set s;
    for (unsigned i = 0; i < m; ++i) {
      if (mask >> i & 1) s.insert(i);
    }
    out.push_back(s);
  }
  std::sort(out.begin(), out.end());
  return out;
}

inline std::size_t max_free_vectors(const std::vector<std::uint32_t>& moduli) {
  const auto pts = all_points(moduli);
  return max_free_subset(pts.size(), [&](auto a, auto b, auto c) { return vectors_sunflower(pts[a], pts[b], pts[c]); });
}

inline std::size_t max_free_uniform(unsigned k, unsigned m) {
  const auto cands = all_subsets(k, m);
  return max_free_subset(cands.size(), [&](auto a, auto b, auto c) { return sets_sunflower(cands[a], cands[b], cands[c]); });
}

// Maximum union over every sunflower-free k-uniform family on [m], by
// enumerating all such families in a plain DFS without bounding.
inline std::size_t max_union_exhaustive(unsigned k, unsigned m) {
  const auto cands = all_subsets(k, m);
  std::size_t best = 0;
  std::vector<std::size_t> chosen;
  std::function<void(std::size_t, Set)> dfs = [&](std::size_t from, Set covered) {
    best = std::max(best, covered.size());
    for (std::size_t r = from; r < cands.size(); ++r) {
      bool ok = true;
      for (std::size_t i = 0; ok && i < chosen.size(); ++i) {
        for (std::size_t j = i + 1; ok && j < chosen.size(); ++j) {
          ok = !sets_sunflower(cands[chosen[i]], cands[chosen[j]], cands[r]);
        }
      }
      if (!ok) continue;
      chosen.push_back(r);
      Set grown = covered;
      grown.insert(cands[r].begin(), cands[r].end());
      dfs(r + 1, grown);
      chosen.pop_back();
    }
  };
  dfs(0, {});
  return best;
}

// Smallest number of members covering the union, by subset enumeration.
inline std::size_t min_cover(const std::vector<Set>& f) {
  Set all;
  for (const auto& s : f) all.insert(s.begin(), s.end());
  if (all.empty()) return 0;
  std::size_t best = f.size();
  for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << f.size()); ++mask) {
    const auto size = static_cast<std::size_t>(__builtin_popcountll(mask));
    if (size >= best) continue;
    Set u;
    for (std::size_t i = 0; i < f.size(); ++i) {
      if (mask >> i & 1) u.insert(f[i].begin(), f[i].end());
    }
    if (u == all) best = size;
  }
  return best;
}

// k!(t-1)^k - sum_s s k!(t-1)^{k-s} / (s+1)!, summed from the largest s down.
inline boost::multiprecision::cpp_rational erdos_rado(unsigned k, unsigned t) {
  using boost::multiprecision::cpp_int;
  using boost::multiprecision::cpp_rational;
  cpp_int kf = 1;
  for (unsigned i = 2; i <= k; ++i) kf *= i;
  const cpp_int base = t - 1;
  cpp_rational total = 0;
  for (unsigned s = k; s-- > 1;) {
    cpp_int sf = 1;
    for (unsigned i = 2; i <= s + 1; ++i) sf *= i;
    total += cpp_rational(cpp_int(s) * kf * boost::multiprecision::pow(base, k - s), sf);
  }
  return cpp_rational(kf * boost::multiprecision::pow(base, k)) - total;
}

inline long double kostochka_log(unsigned k, long double alpha) {
  long double lf = 0;
  for (unsigned i = 2; i <= k; ++i) lf += std::log(static_cast<long double>(i));
  const long double l2 = std::log(std::log(static_cast<long double>(k)));
  const long double l3 = std::log(l2);
  return lf + k * std::log(l3 * l3 / (alpha * l2));
}

// Random family of distinct nonempty subsets of [0, universe).
inline std::vector<std::vector<std::uint32_t>> random_family(sunflower::SplitMix64& rng, unsigned universe,
                                                             std::size_t max_members) {
  std::set<std::vector<std::uint32_t>> seen;
  std::vector<std::vector<std::uint32_t>> out;
  const auto target = 1 + rng.below(max_members);
  for (std::size_t tries = 0; out.size() < target && tries < 20 * max_members; ++tries) {
    std::vector<std::uint32_t> s;
    const auto density = 1 + rng.below(4);
    for (std::uint32_t e = 0; e < universe; ++e) {
      if (rng.below(8) < density) s.push_back(e);
    }
    if (s.empty()) s.push_back(static_cast<std::uint32_t>(rng.below(universe)));
    if (seen.insert(s).second) out.push_back(s);
  }
  return out;
}

// Random sunflower-free k-uniform family on [0, universe): shuffled greedy.
inline std::vector<std::vector<std::uint32_t>> random_free_uniform(sunflower::SplitMix64& rng, unsigned k,
                                                                   unsigned universe, std::size_t cap) {
  auto cands = all_subsets(k, universe);
  for (std::size_t i = cands.size(); i > 1; --i) std::swap(cands[i - 1], cands[rng.below(i)]);
  std::vector<Set> chosen;
  for (const auto& c : cands) {
    if (chosen.size() >= cap) break;
    bool ok = true;
    for (std::size_t i = 0; ok && i < chosen.size(); ++i) {
      for (std::size_t j = i + 1; ok && j < chosen.size(); ++j) ok = !sets_sunflower(chosen[i], chosen[j], c);
    }
    if (ok) chosen.push_back(c);
  }
  std::vector<std::vector<std::uint32_t>> out;
  for (const auto& s : chosen) out.emplace_back(s.begin(), s.end());
  return out;
}

}  // namespace oracle

#include "sunflower/detect.hpp"

#include <algorithm>
#include <set>

#include <boost/dynamic_bitset.hpp>

namespace sunflower {

namespace {

ElementSet common_intersection(std::span<const ElementSet> sets) {
  ElementSet kernel = sets.front();
  for (std::size_t i = 1; i < sets.size() && !kernel.empty(); ++i) kernel = intersect(kernel, sets[i]);
  return kernel;
}

bool sunflower_unchecked(std::span<const ElementSet> sets) {
  const auto kernel = common_intersection(sets);
  for (std::size_t i = 0; i < sets.size(); ++i) {
    for (std::size_t j = i + 1; j < sets.size(); ++j) {
      if (intersect(sets[i], sets[j]) != kernel) return false;
    }
  }
  return true;
}

// Visits index combinations of size r from [0, n) in lexicographic order until
// `visit` returns true.
template <typename Visit>
bool for_each_combination(std::size_t n, std::size_t r, Visit&& visit) {
  if (r > n) return false;
  std::vector<std::size_t> idx(r);
  for (std::size_t i = 0; i < r; ++i) idx[i] = i;
  while (true) {
    if (visit(idx)) return true;
    std::size_t i = r;
    while (i > 0 && idx[i - 1] == n - r + i - 1) --i;
    if (i == 0) return false;
    ++idx[i - 1];
    for (std::size_t j = i; j < r; ++j) idx[j] = idx[j - 1] + 1;
  }
}

}  // namespace

bool is_sunflower_sets(std::span<const ElementSet> sets) {
  if (sets.size() < 2) throw Error(ErrorKind::BadArity, "a sunflower needs at least two sets");
  std::set<ElementSet> distinct(sets.begin(), sets.end());
  if (distinct.size() != sets.size()) throw Error(ErrorKind::BadArity, "sunflower members must be distinct");
  return sunflower_unchecked(sets);
}

std::optional<SunflowerWitness> find_sunflower_sets(const SetFamily& f, std::size_t petals) {
  if (petals < 2) throw Error(ErrorKind::BadArity, "petal count must be >= 2");
  if (petals >= 4 && f.size() > 64) {
    throw Error(ErrorKind::TooLarge, "naive detection for t >= 4 is capped at 64 members");
  }
  std::optional<SunflowerWitness> found;
  std::vector<ElementSet> chosen(petals);
  for_each_combination(f.size(), petals, [&](const std::vector<std::size_t>& idx) {
    for (std::size_t i = 0; i < petals; ++i) chosen[i] = f[idx[i]];
    if (!sunflower_unchecked(chosen)) return false;
    found = SunflowerWitness{idx, common_intersection(chosen), {}};
    return true;
  });
  return found;
}

std::optional<SunflowerWitness> find_sunflower_sets_fast(const SetFamily& f) {
  using Bits = boost::dynamic_bitset<std::uint64_t>;
  const std::size_t count = f.size();
  if (count < 3) return std::nullopt;

  const auto& ground = f.ground();
  auto position = [&](ElementId e) {
    return static_cast<std::size_t>(std::lower_bound(ground.begin(), ground.end(), e) - ground.begin());
  };

  // contains[e] = members holding element e.
  std::vector<Bits> contains(ground.size(), Bits(count));
  for (std::size_t i = 0; i < count; ++i) {
    for (auto e : f[i]) contains[position(e)].set(i);
  }

  // For a pair (i, j) with I = F_i & F_j, a third member F_l completes a
  // sunflower iff F_l contains I and avoids (F_i | F_j) \ I.
  Bits later(count);
  for (std::size_t i = 0; i + 2 < count; ++i) {
    for (std::size_t j = i + 1; j + 1 < count; ++j) {
      later.set();
      for (std::size_t b = 0; b <= j; ++b) later.reset(b);
      const auto& a = f[i];
      const auto& b = f[j];
      std::size_t p = 0, q = 0;
      while ((p < a.size() || q < b.size()) && later.any()) {
        if (q == b.size() || (p < a.size() && a[p] < b[q])) {
          later -= contains[position(a[p++])];
        } else if (p == a.size() || b[q] < a[p]) {
          later -= contains[position(b[q++])];
        } else {
          later &= contains[position(a[p])];
          ++p;
          ++q;
        }
      }
      const auto l = later.find_first();
      if (l != Bits::npos) {
        return SunflowerWitness{{i, j, l}, intersect(a, b), {}};
      }
    }
  }
  return std::nullopt;
}

bool is_sunflower_vectors(const Vector& x, const Vector& y, const Vector& z, const ModulusVector& moduli) {
  for (const auto* v : {&x, &y, &z}) {
    if (v->size() != moduli.size()) throw Error(ErrorKind::ArityMismatch, "vector length differs from moduli");
    if (!moduli.contains(*v)) throw Error(ErrorKind::OutOfRange, "vector coordinate outside its modulus");
  }
  if (x == y || y == z || x == z) throw Error(ErrorKind::BadArity, "sunflower vectors must be distinct");
  return vectors_form_sunflower(x, y, z);
}

std::vector<CoordinateClass> classify_coordinates(const Vector& x, const Vector& y, const Vector& z) {
  std::vector<CoordinateClass> out;
  out.reserve(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    out.push_back(x[i] == y[i] && y[i] == z[i] ? CoordinateClass::AllEqual : CoordinateClass::AllDistinct);
  }
  return out;
}

std::optional<SunflowerWitness> find_sunflower_vectors(const VectorFamily& f) {
  const auto& m = f.members();
  for (std::size_t i = 0; i < m.size(); ++i) {
    for (std::size_t j = i + 1; j < m.size(); ++j) {
      for (std::size_t l = j + 1; l < m.size(); ++l) {
        if (vectors_form_sunflower(m[i], m[j], m[l])) {
          return SunflowerWitness{{i, j, l}, std::nullopt, classify_coordinates(m[i], m[j], m[l])};
        }
      }
    }
  }
  return std::nullopt;
}

std::optional<std::array<std::size_t, 3>> find_ap_triple(const VectorFamily& f) {
  const auto& m = f.members();
  const auto& moduli = f.moduli();
  auto progression = [&](const Vector& x, const Vector& y, const Vector& z) {
    for (std::size_t i = 0; i < x.size(); ++i) {
      const std::uint64_t d = moduli[i];
      if ((std::uint64_t{x[i]} + z[i]) % d != (2 * std::uint64_t{y[i]}) % d) return false;
    }
    return true;
  };
  for (std::size_t a = 0; a < m.size(); ++a) {
    for (std::size_t b = 0; b < m.size(); ++b) {
      if (b == a) continue;
      for (std::size_t c = 0; c < m.size(); ++c) {
        if (c == a || c == b) continue;
        if (progression(m[a], m[b], m[c])) return std::array<std::size_t, 3>{a, b, c};
      }
    }
  }
  return std::nullopt;
}

bool witness_holds(const SetFamily& f, const SunflowerWitness& w) {
  if (w.indices.size() < 2) return false;
  std::vector<ElementSet> sets;
  for (auto i : w.indices) {
    if (i >= f.size()) return false;
    sets.push_back(f[i]);
  }
  std::set<std::size_t> distinct(w.indices.begin(), w.indices.end());
  if (distinct.size() != w.indices.size()) return false;
  if (!sunflower_unchecked(sets)) return false;
  return !w.kernel || *w.kernel == common_intersection(sets);
}

bool witness_holds(const VectorFamily& f, const SunflowerWitness& w) {
  if (w.indices.size() != 3) return false;
  for (auto i : w.indices) {
    if (i >= f.size()) return false;
  }
  const auto& x = f[w.indices[0]];
  const auto& y = f[w.indices[1]];
  const auto& z = f[w.indices[2]];
  if (x == y || y == z || x == z || !vectors_form_sunflower(x, y, z)) return false;
  return w.coordinate_classes.empty() || w.coordinate_classes == classify_coordinates(x, y, z);
}

}  // namespace sunflower

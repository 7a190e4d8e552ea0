#include "sunflower/reduce.hpp"

#include <algorithm>
#include <map>
#include <sstream>

#include <boost/dynamic_bitset.hpp>

#include "sunflower/bounds.hpp"
#include "sunflower/detect.hpp"
#include "sunflower/rng.hpp"

namespace sunflower {

SetFamily embed_vectors_as_sets(const VectorFamily& f) {
  const auto& moduli = f.moduli();
  std::vector<ElementId> offset(moduli.size(), 0);
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < moduli.size(); ++i) {
    offset[i] = static_cast<ElementId>(labels.size());
    for (std::uint32_t a = 1; a <= moduli[i]; ++a) {
      labels.push_back("(" + std::to_string(a) + "," + std::to_string(i + 1) + ")");
    }
  }
  std::vector<ElementSet> members;
  members.reserve(f.size());
  for (const auto& v : f.members()) {
    ElementSet s;
    s.reserve(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) s.push_back(offset[i] + v[i]);
    members.push_back(std::move(s));
  }
  return SetFamily(std::move(members), std::move(labels));
}

VectorFamily crt_map(const VectorFamily& f) {
  const auto& moduli = f.moduli();
  std::vector<Factorization> factors;
  std::vector<std::uint32_t> flat;
  for (auto d : moduli.values()) {
    factors.push_back(factorize(d));
    for (const auto& pp : factors.back()) flat.push_back(static_cast<std::uint32_t>(pp.value()));
  }
  std::vector<Vector> members;
  members.reserve(f.size());
  for (const auto& v : f.members()) {
    Vector out;
    out.reserve(flat.size());
    for (std::size_t i = 0; i < v.size(); ++i) {
      for (const auto& pp : factors[i]) out.push_back(static_cast<std::uint32_t>(v[i] % pp.value()));
    }
    members.push_back(std::move(out));
  }
  return VectorFamily(ModulusVector(std::move(flat)), std::move(members));
}

// ---------------------------------------------------------------------------
// Erdos-Kleitman

EkResult ek_partition(const SetFamily& f, EkMode mode, std::uint64_t seed) {
  if (!f.uniformity()) throw Error(ErrorKind::DomainError, "ek_partition needs a nonempty uniform family");
  const std::size_t k = *f.uniformity();
  const auto& ground = f.ground();
  auto position = [&](ElementId e) {
    return static_cast<std::size_t>(std::lower_bound(ground.begin(), ground.end(), e) - ground.begin());
  };

  std::vector<std::size_t> coloring(ground.size(), 0);
  if (mode == EkMode::Seeded) {
    SplitMix64 rng(seed);
    for (auto& c : coloring) c = static_cast<std::size_t>(rng.below(k));
  } else {
    // A member whose colored elements carry distinct colors and which still
    // has u uncolored elements is rainbow with probability u!/k^u. Scaled by
    // k^k these weights are the integers u! k^(k-u).
    std::vector<BigInt> weight(k + 1);
    for (std::size_t u = 0; u <= k; ++u) {
      BigInt w = 1;
      for (std::size_t i = 2; i <= u; ++i) w *= i;
      for (std::size_t i = u; i < k; ++i) w *= k;
      weight[u] = w;
    }
    std::vector<std::vector<std::size_t>> holders(ground.size());
    for (std::size_t m = 0; m < f.size(); ++m) {
      for (auto e : f[m]) holders[position(e)].push_back(m);
    }
    std::vector<boost::dynamic_bitset<>> used(f.size(), boost::dynamic_bitset<>(k));
    std::vector<bool> dead(f.size(), false);
    std::vector<std::size_t> uncolored(f.size(), k);

    for (std::size_t e = 0; e < ground.size(); ++e) {
      std::size_t best_color = 0;
      BigInt best_gain = -1;
      for (std::size_t c = 0; c < k; ++c) {
        BigInt gain = 0;
        for (auto m : holders[e]) {
          if (!dead[m] && !used[m].test(c)) gain += weight[uncolored[m] - 1];
        }
        if (gain > best_gain) {
          best_gain = gain;
          best_color = c;
        }
      }
      coloring[e] = best_color;
      for (auto m : holders[e]) {
        if (used[m].test(best_color)) dead[m] = true;
        used[m].set(best_color);
        --uncolored[m];
      }
    }
  }

  EkResult result;
  result.coloring = coloring;
  std::vector<ElementSet> rainbow;
  ElementSet support;
  for (std::size_t m = 0; m < f.size(); ++m) {
    boost::dynamic_bitset<> seen(k);
    bool ok = true;
    for (auto e : f[m]) {
      const auto c = coloring[position(e)];
      if (seen.test(c)) {
        ok = false;
        break;
      }
      seen.set(c);
    }
    if (ok) {
      result.kept_indices.push_back(m);
      rainbow.push_back(f[m]);
      support = unite(support, f[m]);
    }
  }
  std::vector<ElementSet> classes(k);
  for (auto e : support) classes[coloring[position(e)]].push_back(e);
  result.partition = PartiteStructure(std::move(classes));
  result.rainbow = SetFamily(std::move(rainbow), f.labels());
  return result;
}

// ---------------------------------------------------------------------------
// Size-1 and size-2 classes

StripResult strip_common_elements(const SetFamily& f, const PartiteStructure& p) {
  for (const auto& m : f.members()) {
    if (!p.is_transversal(m)) throw Error(ErrorKind::NotPartite, "member is not transversal to the partition");
  }
  StripResult out;
  std::vector<ElementSet> keep;
  for (const auto& cls : p.classes()) {
    if (cls.size() == 1) {
      out.removed.push_back(cls.front());
    } else {
      keep.push_back(cls);
    }
  }
  std::sort(out.removed.begin(), out.removed.end());
  std::vector<ElementSet> members;
  members.reserve(f.size());
  for (const auto& m : f.members()) {
    ElementSet r;
    std::set_difference(m.begin(), m.end(), out.removed.begin(), out.removed.end(), std::back_inserter(r));
    members.push_back(std::move(r));
  }
  out.family = SetFamily(std::move(members), f.labels());
  out.partition = PartiteStructure(std::move(keep));
  return out;
}

GlResult extract_gl(const SetFamily& g, const PartiteStructure& p) {
  std::vector<std::size_t> pairs;
  for (std::size_t c = 0; c < p.size(); ++c) {
    if (p[c].size() == 1) throw Error(ErrorKind::DomainError, "extract_gl needs singleton classes stripped first");
    if (p[c].size() == 2) pairs.push_back(c);
  }
  std::map<ElementSet, std::vector<std::size_t>> groups;
  for (std::size_t m = 0; m < g.size(); ++m) {
    if (!p.is_transversal(g[m])) throw Error(ErrorKind::NotPartite, "member is not transversal to the partition");
    ElementSet trace;
    for (auto c : pairs) {
      const auto& cls = p[c];
      trace.push_back(std::binary_search(g[m].begin(), g[m].end(), cls[0]) ? cls[0] : cls[1]);
    }
    groups[trace].push_back(m);
  }

  GlResult out;
  out.two_classes = pairs.size();
  const std::vector<std::size_t>* best = nullptr;
  for (const auto& [trace, members] : groups) {
    out.groups.push_back({trace, members.size()});
    if (!best || members.size() > best->size()) {
      best = &members;
      out.chosen_trace = trace;
    }
  }
  std::vector<ElementSet> reduced;
  ElementSet support;
  if (best) {
    ElementSet removal = out.chosen_trace;
    std::sort(removal.begin(), removal.end());
    for (auto m : *best) {
      ElementSet r;
      std::set_difference(g[m].begin(), g[m].end(), removal.begin(), removal.end(), std::back_inserter(r));
      support = unite(support, r);
      reduced.push_back(std::move(r));
    }
    out.group_size = best->size();
  }
  std::vector<ElementSet> surviving;
  for (std::size_t c = 0; c < p.size(); ++c) {
    if (p[c].size() == 2) continue;
    surviving.push_back(intersect(p[c], support));
  }
  out.reduced = SetFamily(std::move(reduced), g.labels());
  out.partition = PartiteStructure(std::move(surviving));
  return out;
}

// ---------------------------------------------------------------------------
// psi

ModulusVector psi_moduli(const PartiteStructure& p) {
  std::vector<std::uint32_t> d;
  d.reserve(p.size());
  for (const auto& cls : p.classes()) d.push_back(std::max<std::uint32_t>(3, static_cast<std::uint32_t>(cls.size())));
  return ModulusVector(std::move(d));
}

VectorFamily psi_map(const SetFamily& h, const PartiteStructure& p) {
  std::vector<Vector> members;
  members.reserve(h.size());
  for (std::size_t m = 0; m < h.size(); ++m) {
    if (!p.is_transversal(h[m])) {
      throw Error(ErrorKind::NotPartite, "member " + std::to_string(m) + " is not transversal to the partition");
    }
    Vector v(p.size());
    for (auto e : h[m]) {
      const auto c = *p.class_of(e);
      const auto& cls = p[c];
      v[c] = static_cast<std::uint32_t>(std::lower_bound(cls.begin(), cls.end(), e) - cls.begin());
    }
    members.push_back(std::move(v));
  }
  return VectorFamily(psi_moduli(p), std::move(members));
}

SetFamily psi_inverse(const VectorFamily& v, const PartiteStructure& p) {
  if (v.moduli().size() != p.size()) throw Error(ErrorKind::ArityMismatch, "vector length differs from class count");
  std::vector<ElementSet> members;
  members.reserve(v.size());
  for (const auto& x : v.members()) {
    ElementSet s;
    for (std::size_t c = 0; c < x.size(); ++c) {
      if (x[c] >= p[c].size()) {
        throw Error(ErrorKind::OutOfRange, "coordinate " + std::to_string(c + 1) + " indexes a padded value");
      }
      s.push_back(p[c][x[c]]);
    }
    members.push_back(std::move(s));
  }
  return SetFamily(std::move(members));
}

// ---------------------------------------------------------------------------
// Pipeline

bool PipelineTrace::all_certified() const {
  return std::all_of(certificates.begin(), certificates.end(),
                     [](const Certificate& c) { return !c.asserted || c.holds; });
}

namespace {

std::string str(const BigInt& v) { return v.str(); }

BigInt factorial_big(std::size_t n) {
  BigInt r = 1;
  for (std::size_t i = 2; i <= n; ++i) r *= i;
  return r;
}

}  // namespace

PipelineTrace pipeline(const SetFamily& f, EkMode mode, std::uint64_t seed) {
  if (!f.uniformity()) throw Error(ErrorKind::DomainError, "pipeline needs a nonempty uniform family");
  if (auto w = find_sunflower_sets_fast(f)) {
    std::ostringstream msg;
    msg << "members " << w->indices[0] << ", " << w->indices[1] << ", " << w->indices[2] << " form a sunflower";
    throw SunflowerFound(*w, msg.str());
  }

  PipelineTrace trace;
  trace.mode = mode;
  trace.seed = seed;
  trace.input_size = f.size();
  trace.k = *f.uniformity();
  trace.M = f.ground_size();
  const auto k = trace.k;

  auto ek = ek_partition(f, mode, seed);
  trace.rainbow_size = ek.rainbow.size();
  trace.partition_sizes = ek.partition.class_sizes();
  {
    BigInt lhs = BigInt(trace.rainbow_size);
    for (std::size_t i = 0; i < k; ++i) lhs *= k;
    const BigInt rhs = factorial_big(k) * trace.input_size;
    Certificate c{"ek_guarantee", lhs >= rhs, mode == EkMode::Derandomized,
                  "|G| k^k = " + str(lhs) + " >= k! |F| = " + str(rhs)};
    if (mode == EkMode::Seeded) c.detail += " (seeded: holds in expectation only)";
    trace.certificates.push_back(std::move(c));
  }

  auto stripped = strip_common_elements(ek.rainbow, ek.partition);
  trace.stripped = stripped.removed;
  trace.stripped_uniformity = k - stripped.removed.size();

  auto gl = extract_gl(stripped.family, stripped.partition);
  trace.two_classes = gl.two_classes;
  trace.chosen_trace = gl.chosen_trace;
  trace.group_size = gl.group_size;
  trace.groups = gl.groups;
  trace.reduced_size = gl.reduced.size();
  trace.reduced_union = gl.reduced.ground_size();
  {
    std::size_t total = 0;
    for (const auto& g : gl.groups) total += g.count;
    const BigInt rhs = (BigInt(1) << gl.two_classes) * gl.group_size;
    trace.certificates.push_back({"gl_partition", total == trace.rainbow_size, true,
                                  "trace groups sum to " + std::to_string(total)});
    trace.certificates.push_back({"gl_bound", BigInt(trace.rainbow_size) <= rhs, true,
                                  "|G| = " + std::to_string(trace.rainbow_size) + " <= 2^t |H| = " + str(rhs)});
  }

  trace.final_vectors = psi_map(gl.reduced, gl.partition);
  const auto& moduli = trace.final_vectors.moduli();
  trace.final_moduli = moduli.values();
  for (auto d : moduli.values()) trace.reduced_universe += d;

  const bool t_free = !find_sunflower_vectors(trace.final_vectors).has_value();
  trace.certificates.push_back({"T_sunflower_free", t_free, true, "psi image re-checked by the vector detector"});

  const BigInt gns = generalized_ns_bound(moduli);
  trace.generalized_ns = str(gns);
  trace.certificates.push_back({"T_within_generalized_ns", BigInt(trace.reduced_size) <= gns, true,
                                "|T| = " + std::to_string(trace.reduced_size) + " <= " + str(gns)});

  const auto n = static_cast<unsigned>(moduli.size());
  if (n >= 1) {
    const BigInt bal = 3 * balanced_bound(n, trace.reduced_universe);
    trace.balanced_reduced = str(bal);
    trace.certificates.push_back({"balanced_reduced", gns <= bal, true,
                                  str(gns) + " <= 3 balanced(" + std::to_string(n) + ", " +
                                      std::to_string(trace.reduced_universe) + ") = " + str(bal)});
    if (trace.M >= n) {
      const BigInt bal_original = 3 * balanced_bound(n, trace.M);
      trace.certificates.push_back({"balanced_original_universe", gns <= bal_original, false,
                                    str(gns) + " <= 3 balanced(" + std::to_string(n) + ", M = " +
                                        std::to_string(trace.M) + ") = " + str(bal_original)});
    }
  } else {
    trace.notes.push_back("no classes survive: T is the single empty vector");
  }
  trace.notes.push_back("balanced check certified on the reduced universe sum D_i = " +
                        std::to_string(trace.reduced_universe) + " rather than M = " + std::to_string(trace.M));

  const auto mb = main_bound(static_cast<unsigned>(k), trace.M);
  trace.main_bound = mb.approx();
  trace.main_bound_degenerate = mb.degenerate;
  if (mb.degenerate) {
    trace.certificates.push_back({"main_bound", false, false, "degenerate: M = k gives 0"});
    trace.notes.push_back("main bound degenerate since M = k");
  } else {
    const bool ok = std::log(static_cast<double>(trace.input_size)) <= mb.log_value();
    trace.certificates.push_back({"main_bound", ok, true,
                                  "|F| = " + std::to_string(trace.input_size) + " <= main_bound(k, M)"});
  }
  return trace;
}

}  // namespace sunflower

#include "sunflower/serialize.hpp"

#include <cmath>

namespace sunflower {

namespace {

std::string mode_name(EkMode m) { return m == EkMode::Derandomized ? "derandomized" : "seeded"; }

Json finite_or_null(double v) { return std::isfinite(v) ? Json(v) : Json(nullptr); }

}  // namespace

Json to_json(const SetFamily& f) {
  Json members = Json::array();
  for (const auto& m : f.members()) members.push_back(m);
  Json labels = Json::object();
  for (auto e : f.ground()) {
    if (e < f.labels().size()) labels[std::to_string(e)] = f.labels()[e];
  }
  return {{"members", members}, {"labels", labels}};
}

SetFamily set_family_from_json(const Json& j) {
  try {
    std::vector<ElementSet> members = j.at("members").get<std::vector<ElementSet>>();
    std::vector<std::string> labels;
    if (j.contains("labels") && !j.at("labels").empty()) {
      ElementId top = 0;
      for (const auto& [key, value] : j.at("labels").items()) top = std::max<ElementId>(top, std::stoul(key));
      for (const auto& m : members) {
        for (auto e : m) top = std::max(top, e);
      }
      labels.resize(top + 1);
      for (ElementId i = 0; i <= top; ++i) labels[i] = std::to_string(i);
      for (const auto& [key, value] : j.at("labels").items()) labels[std::stoul(key)] = value.get<std::string>();
    }
    return SetFamily(std::move(members), std::move(labels));
  } catch (const Json::exception& e) {
    throw Error(ErrorKind::ParseError, e.what());
  }
}

Json to_json(const VectorFamily& f) {
  return {{"moduli", f.moduli().values()}, {"members", f.members()}};
}

VectorFamily vector_family_from_json(const Json& j) {
  try {
    return VectorFamily(ModulusVector(j.at("moduli").get<std::vector<std::uint32_t>>()),
                        j.at("members").get<std::vector<Vector>>());
  } catch (const Json::exception& e) {
    throw Error(ErrorKind::ParseError, e.what());
  }
}

Json to_json(const SunflowerWitness& w) {
  Json j = {{"indices", w.indices}};
  if (w.kernel) j["kernel"] = *w.kernel;
  if (!w.coordinate_classes.empty()) {
    Json coords = Json::array();
    for (auto c : w.coordinate_classes) coords.push_back(c == CoordinateClass::AllEqual ? "all-equal" : "all-distinct");
    j["coords"] = coords;
  }
  return j;
}

Json to_json(const BoundReport& r) {
  Json params = Json::object();
  for (const auto& [k, v] : r.parameters) params[k] = v;
  Json j = {{"bound", r.name},
            {"parameters", params},
            {"exactness", r.exactness()},
            {"strictness", r.strictness == Strictness::SizeAtMost ? "family size <= value"
                                                                  : "size > value forces sunflower"},
            {"degenerate", r.degenerate},
            {"notes", r.notes}};
  std::visit(
      [&](const auto& v) {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, BigInt>) {
          j["value"] = v.str();
          j["approx"] = finite_or_null(r.approx());
        } else if constexpr (std::is_same_v<T, BigRational>) {
          j["value"] = v.str();
          j["approx"] = finite_or_null(r.approx());
        } else {
          j["value"] = finite_or_null(v.value);
          j["log_value"] = finite_or_null(v.log_value);
          j["radius"] = finite_or_null(v.radius);
        }
      },
      r.value);
  return j;
}

Json to_json(const JMinimizationResult& r) {
  return {{"q", r.q}, {"x_star", r.x_star}, {"j", r.j_value}, {"radius", r.error_radius},
          {"exactness", "float"}};
}

Json to_json(const PipelineTrace& t) {
  Json groups = Json::array();
  for (const auto& g : t.groups) groups.push_back({{"trace", g.trace}, {"count", g.count}});
  Json certs = Json::array();
  for (const auto& c : t.certificates) {
    certs.push_back({{"name", c.name}, {"holds", c.holds}, {"asserted", c.asserted}, {"detail", c.detail}});
  }
  return {{"mode", mode_name(t.mode)},
          {"seed", t.seed},
          {"input_size", t.input_size},
          {"k", t.k},
          {"M", t.M},
          {"rainbow_size", t.rainbow_size},
          {"partition_sizes", t.partition_sizes},
          {"stripped", t.stripped},
          {"stripped_uniformity", t.stripped_uniformity},
          {"t", t.two_classes},
          {"L", t.chosen_trace},
          {"group_size", t.group_size},
          {"groups", groups},
          {"final_moduli", t.final_moduli},
          {"reduced_size", t.reduced_size},
          {"reduced_union", t.reduced_union},
          {"reduced_universe", t.reduced_universe},
          {"generalized_ns", t.generalized_ns},
          {"balanced_reduced", t.balanced_reduced},
          {"main_bound", finite_or_null(t.main_bound)},
          {"main_bound_degenerate", t.main_bound_degenerate},
          {"certificates", certs},
          {"all_certified", t.all_certified()},
          {"notes", t.notes},
          {"T", to_json(t.final_vectors)}};
}

Json to_json(const ConjectureReport& r) {
  return {{"k", r.k},
          {"m", r.m},
          {"max_union", r.max_union},
          {"implied_D", r.implied_constant},
          {"witness", to_json(r.witness)},
          {"cover_count", r.cover},
          {"cover_members", r.cover_members},
          {"two_k", r.two_k},
          {"cover_pass", r.cover_pass},
          {"optimal", r.optimal},
          {"nodes", r.nodes_explored}};
}

Json to_json(const SearchResult& r, const Instance& instance, bool timing) {
  Json j = {{"maximum", r.maximum},
            {"optimal", r.optimal},
            {"nodes_explored", r.nodes_explored},
            {"greedy_size", r.greedy_size},
            {"witness_indices", r.witness},
            {"pruning", {{"bound_prunes", r.stats.bound_prunes}, {"conflict_removals", r.stats.conflict_removals}}}};
  if (const auto* moduli = std::get_if<ModulusVector>(&instance)) {
    j["instance"] = {{"moduli", moduli->values()}};
    j["witness"] = to_json(witness_vectors(*moduli, r.witness));
  } else {
    const auto& u = std::get<UniformInstance>(instance);
    j["instance"] = {{"k", u.k}, {"m", u.m}};
    j["witness"] = to_json(witness_sets(u, r.witness));
  }
  if (timing) j["elapsed_ms"] = r.elapsed_ms;
  return j;
}

}  // namespace sunflower

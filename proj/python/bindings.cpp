#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>
#include <string>
#include <vector>

#include "sunflower/bounds.hpp"
#include "sunflower/conjectures.hpp"
#include "sunflower/detect.hpp"
#include "sunflower/reduce.hpp"
#include "sunflower/search.hpp"
#include "sunflower/serialize.hpp"

namespace py = pybind11;
using namespace py::literals;
using namespace sunflower;

namespace {

// Reports cross the boundary as JSON text; the Python layer decodes them.
std::string dump(const Json& j) { return j.dump(); }

SearchBudget budget(std::uint64_t max_nodes, unsigned threads, bool anchor) {
  SearchBudget b;
  b.max_nodes = max_nodes;
  b.threads = threads;
  b.anchor = anchor;
  return b;
}

SetFamily set_family(const std::vector<std::vector<ElementId>>& members) { return SetFamily(members); }

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Sunflower-free set systems: native core";

  PYBIND11_CONSTINIT static py::gil_safe_call_once_and_store<py::object> error_type;
  error_type.call_once_and_store_result(
      [&]() { return py::exception<Error>(m, "SunflowerError", PyExc_ValueError); });
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      // args = (kind, message)
      const auto args = py::make_tuple(std::string(to_string(e.kind())), e.what());
      PyErr_SetObject(error_type.get_stored().ptr(), args.ptr());
    }
  });

  m.def("find_sunflower",
        [](const std::vector<std::vector<ElementId>>& members, std::size_t petals) -> std::optional<std::string> {
          const auto f = set_family(members);
          const auto w = petals == 3 ? find_sunflower_sets_fast(f) : find_sunflower_sets(f, petals);
          if (!w) return std::nullopt;
          return dump(to_json(*w));
        },
        "members"_a, "petals"_a = 3);

  m.def("find_vector_sunflower",
        [](const std::vector<std::uint32_t>& moduli,
           const std::vector<Vector>& members) -> std::optional<std::string> {
          const auto w = find_sunflower_vectors(VectorFamily(ModulusVector(moduli), members));
          if (!w) return std::nullopt;
          return dump(to_json(*w));
        },
        "moduli"_a, "members"_a);

  m.def("j_constant", [](unsigned q, double tol) { return dump(to_json(j_constant(q, tol))); }, "q"_a,
        "tol"_a = 1e-12);
  m.def("erdos_rado_threshold", [](unsigned k, unsigned t) { return erdos_rado_threshold(k, t).str(); }, "k"_a,
        "t"_a = 3);
  m.def("generalized_ns_bound",
        [](const std::vector<std::uint32_t>& moduli) { return generalized_ns_bound(ModulusVector(moduli)).str(); },
        "moduli"_a);
  m.def("balanced_bound", [](unsigned n, std::uint64_t M) { return balanced_bound(n, M).str(); }, "n"_a, "M"_a);
  m.def("main_bound", [](unsigned k, std::uint64_t M) { return dump(to_json(main_bound(k, M))); }, "k"_a, "M"_a);
  m.def("compare_bounds_moduli",
        [](const std::vector<std::uint32_t>& moduli) {
          Json arr = Json::array();
          for (const auto& r : compare_bounds(ModulusVector(moduli))) arr.push_back(to_json(r));
          return dump(arr);
        },
        "moduli"_a);
  m.def("compare_bounds_sets",
        [](unsigned k, std::uint64_t M) {
          Json arr = Json::array();
          for (const auto& r : compare_bounds(SetContext{k, M})) arr.push_back(to_json(r));
          return dump(arr);
        },
        "k"_a, "M"_a);

  m.def("max_sunflower_free_vectors",
        [](const std::vector<std::uint32_t>& moduli, std::uint64_t max_nodes, unsigned threads, bool anchor) {
          const Instance inst{ModulusVector(moduli)};
          py::gil_scoped_release release;
          return dump(to_json(max_sunflower_free(inst, budget(max_nodes, threads, anchor)), inst));
        },
        "moduli"_a, "max_nodes"_a = 1'000'000'000, "threads"_a = 1, "anchor"_a = true);
  m.def("max_sunflower_free_uniform",
        [](unsigned k, unsigned mm, std::uint64_t max_nodes, unsigned threads, bool anchor) {
          const Instance inst{UniformInstance{k, mm}};
          py::gil_scoped_release release;
          return dump(to_json(max_sunflower_free(inst, budget(max_nodes, threads, anchor)), inst));
        },
        "k"_a, "m"_a, "max_nodes"_a = 1'000'000'000, "threads"_a = 1, "anchor"_a = true);

  m.def("pipeline",
        [](const std::vector<std::vector<ElementId>>& members, std::optional<std::uint64_t> seed) {
          const auto mode = seed ? EkMode::Seeded : EkMode::Derandomized;
          return dump(to_json(pipeline(set_family(members), mode, seed.value_or(0))));
        },
        "members"_a, "seed"_a = py::none());

  m.def("max_union", [](unsigned k, unsigned mm) { return dump(to_json(max_union(k, mm))); }, "k"_a, "m"_a);
  m.def("cover_count",
        [](const std::vector<std::vector<ElementId>>& members) { return cover_count(set_family(members)).count; },
        "members"_a);

  m.def("export_cnf_moduli",
        [](const std::vector<std::uint32_t>& moduli, std::size_t size) {
          return to_dimacs(export_cnf(ModulusVector(moduli), size));
        },
        "moduli"_a, "size"_a);
  m.def("export_cnf_uniform",
        [](unsigned k, unsigned mm, std::size_t size) { return to_dimacs(export_cnf(UniformInstance{k, mm}, size)); },
        "k"_a, "m"_a, "size"_a);
  m.def("cnf_satisfiable",
        [](const std::string& dimacs) { return solve_cnf_by_enumeration(parse_dimacs(dimacs)).has_value(); },
        "dimacs"_a);
}

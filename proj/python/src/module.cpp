#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "sstrp/alns.hpp"
#include "sstrp/baseline.hpp"
#include "sstrp/bounds.hpp"
#include "sstrp/construction.hpp"
#include "sstrp/intensify.hpp"
#include "sstrp/io.hpp"
#include "sstrp/objective.hpp"
#include "sstrp/oracle.hpp"
#include "sstrp/pipeline.hpp"

namespace py = pybind11;
using namespace sstrp;

namespace {

LsStrategy parse_ls(const std::string& s) {
  if (s == "none") return LsStrategy::None;
  if (s == "k0") return LsStrategy::Kappa0;
  if (s == "k1") return LsStrategy::Kappa1;
  if (s == "hybrid") return LsStrategy::Hybrid;
  throw InputError("ls must be none|k0|k1|hybrid");
}

py::dict breakdown(const ObjectiveBreakdown& o) {
  py::dict d;
  d["sprayer_travel"] = o.sprayerTravel;
  d["tanker_travel"] = o.tankerTravel;
  d["refill_term"] = o.refillTerm;
  d["service_term"] = o.serviceTerm;
  d["waiting_penalty"] = o.waitingPenalty;
  d["total"] = o.total;
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Sprayer-tanker routing solver";

  py::register_exception<InputError>(m, "InputError", PyExc_ValueError);
  py::register_exception<StructuralError>(m, "StructuralError", PyExc_ValueError);
  py::register_exception<BudgetRefusal>(m, "BudgetRefusal", PyExc_RuntimeError);
  py::register_exception<ParseError>(m, "ParseError", PyExc_ValueError);

  py::class_<InstanceParams>(m, "InstanceParams")
      .def(py::init<>())
      .def_readwrite("num_sprayers", &InstanceParams::numSprayers)
      .def_readwrite("sprayer_cap", &InstanceParams::sprayerCap)
      .def_readwrite("tanker_cap", &InstanceParams::tankerCap)
      .def_readwrite("spray_rate", &InstanceParams::sprayRate)
      .def_readwrite("refill_time", &InstanceParams::refillTime)
      .def_readwrite("speed_factor", &InstanceParams::speedFactor)
      .def_readwrite("horizon", &InstanceParams::horizon)
      .def_readwrite("zone_radius", &InstanceParams::zoneRadius);

  py::class_<Instance>(m, "Instance")
      .def(py::init([](std::pair<double, double> depot,
                       const std::vector<std::tuple<double, double, double, double>>& nodes,
                       const InstanceParams& params) {
             std::vector<FieldNode> fs;
             for (std::size_t q = 0; q < nodes.size(); ++q) {
               const auto& [x, y, lo, hi] = nodes[q];
               fs.push_back(FieldNode{static_cast<NodeId>(q + 1), Point{x, y}, lo, hi});
             }
             return Instance(Point{depot.first, depot.second}, std::move(fs), params);
           }),
           py::arg("depot"), py::arg("nodes"), py::arg("params"),
           "nodes: (x, y, qMin, qMax) per field node, ids assigned 1..n")
      .def_property_readonly("num_nodes", &Instance::num_nodes)
      .def_property_readonly("num_sprayers", &Instance::num_sprayers)
      .def_property_readonly("params", &Instance::params)
      .def("travel", &Instance::travel_time)
      .def("to_json", [](const Instance& i) { return instance_to_json(i); })
      .def_static("from_json", &instance_from_json);

  py::class_<Solution>(m, "Solution")
      .def_readonly("routes", &Solution::routes)
      .def_readonly("service", &Solution::service)
      .def_readonly("tanker_route", &Solution::tankerRoute)
      .def_readonly("alpha", &Solution::alpha)
      .def_property_readonly("objective", [](const Solution& s) { return breakdown(s.objective); })
      .def_property_readonly("refills", [](const Solution& s) {
        std::vector<NodeId> out;
        for (std::size_t i = 0; i < s.refill.size(); ++i)
          if (s.refill[i]) out.push_back(static_cast<NodeId>(i));
        return out;
      })
      .def_property_readonly("arrival", [](const Solution& s) { return s.schedule.arrival; })
      .def_property_readonly("waiting", [](const Solution& s) { return s.schedule.waiting; })
      .def_property_readonly("feasible", &Solution::feasible);

  py::class_<EvalResult>(m, "EvalResult")
      .def_readonly("solution", &EvalResult::solution)
      .def_readonly("horizon_excess", &EvalResult::horizonExcess)
      .def_readonly("total_waiting", &EvalResult::totalWaiting)
      .def_property_readonly("objective", &EvalResult::penalized)
      .def_property_readonly("hard_infeasible", &EvalResult::hard_infeasible);

  m.def("generate", [](const std::string& sizeClass, int numSprayers, std::uint64_t seed, int nodes) {
    GeneratorProfile p;
    p.sizeClass = parse_size_class(sizeClass);
    p.numSprayers = numSprayers;
    p.seed = seed;
    p.nodeCount = nodes;
    return generate(p);
  }, py::arg("size_class") = "small", py::arg("num_sprayers") = 2, py::arg("seed") = 1,
        py::arg("nodes") = 0);
  m.def("load_instance", &load_instance);
  m.def("save_instance", &save_instance);
  m.def("solution_to_json", &solution_to_json);
  m.def("solution_from_json", &solution_from_json);

  m.def("line_search", [](const Instance& i, const RouteSet& r) { return line_search(i, r); });
  m.def("evaluate_at_alpha",
        [](const Instance& i, const RouteSet& r, double a) { return evaluate_at_alpha(i, r, a); });
  m.def("construct", [](const Instance& i) { return construct(i); });
  m.def("tsp_route", &tsp_route);
  m.def("candidate_set", &candidate_set);
  m.def("optimize_service_times",
        [](const Instance& i, const RouteSet& r, const std::vector<NodeId>& refills,
           const std::vector<NodeId>& order) {
          ServiceOptResult res = optimize_service_times(i, r, refills, order);
          return py::make_tuple(res.feasible, res.service, res.eval.penalized());
        });
  m.def("local_search", [](const Instance& i, const EvalResult& start, int kappa) {
    return local_search(i, start, kappa).best;
  });

  m.def("check_feasibility", [](const Instance& i, const Solution& s, bool allowWaiting) {
    std::vector<py::dict> out;
    for (const Violation& v : check_feasibility(i, s, allowWaiting).violations) {
      py::dict d;
      d["equation"] = v.equation;
      d["what"] = v.what;
      d["nodes"] = v.nodes;
      d["sprayer"] = v.sprayer;
      d["magnitude"] = v.magnitude;
      out.push_back(d);
    }
    return out;
  }, py::arg("instance"), py::arg("solution"), py::arg("allow_waiting") = false);

  m.def("solve", [](const Instance& i, std::uint64_t seed, std::int64_t iters, const std::string& ls,
                    bool phase3, bool allowWaiting) {
    SolveOptions o;
    o.seed = seed;
    o.iterations = iters;
    o.localSearch = parse_ls(ls);
    o.phase3 = phase3;
    o.allowWaiting = allowWaiting;
    py::gil_scoped_release release;
    return solve(i, o).best;
  }, py::arg("instance"), py::arg("seed") = 1, py::arg("iters") = -1, py::arg("ls") = "hybrid",
        py::arg("phase3") = true, py::arg("allow_waiting") = false);
  m.def("practice_policy", &practice_policy);

  m.def("exact_solve", [](const Instance& i, bool allowWaiting) {
    OracleResult r = exact_solve(i, {}, EvalOptions{allowWaiting});
    return py::make_tuple(r.feasible, r.best);
  }, py::arg("instance"), py::arg("allow_waiting") = false);
  m.def("composite_lower_bound", &composite_lower_bound);
  m.def("relaxed_exact_bound", &relaxed_exact_bound, py::arg("instance"), py::arg("size_cap") = 8);
  m.def("service_upper_bound", &service_upper_bound);
  m.def("gap_percent", &gap_percent);
}

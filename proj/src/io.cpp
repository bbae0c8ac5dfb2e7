#include "sstrp/io.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <map>
#include <random>
#include <sstream>

#include "json.hpp"
#include "sstrp/bounds.hpp"
#include "sstrp/objective.hpp"
#include "sstrp/rng.hpp"

namespace sstrp {

using nlohmann::json;

namespace {

constexpr const char* kInstanceSchema = "sstrpvst/1";
constexpr const char* kSolutionSchema = "sstrpvst-solution/1";

const json& field(const json& obj, const char* name, const std::string& where) {
  if (!obj.is_object()) throw ParseError(where + ": expected an object");
  const auto it = obj.find(name);
  if (it == obj.end()) throw ParseError(where + "." + name + ": missing field");
  return *it;
}

double number(const json& obj, const char* name, const std::string& where) {
  const json& v = field(obj, name, where);
  if (!v.is_number()) throw ParseError(where + "." + name + ": expected a number");
  return v.get<double>();
}

int integer(const json& obj, const char* name, const std::string& where) {
  const json& v = field(obj, name, where);
  if (!v.is_number_integer()) throw ParseError(where + "." + name + ": expected an integer");
  return v.get<int>();
}

json parse(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("malformed JSON: ") + e.what());
  }
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << text;
  if (!out) throw std::runtime_error("write failed for " + path);
}

std::vector<NodeId> id_list(const json& v, const std::string& where) {
  if (!v.is_array()) throw ParseError(where + ": expected an array");
  std::vector<NodeId> out;
  for (std::size_t q = 0; q < v.size(); ++q) {
    if (!v[q].is_number_integer())
      throw ParseError(where + "[" + std::to_string(q) + "]: expected a node id");
    out.push_back(v[q].get<NodeId>());
  }
  return out;
}

std::vector<double> by_id(const json& v, int n, const std::string& where) {
  if (!v.is_array() || static_cast<int>(v.size()) != n)
    throw ParseError(where + ": expected an array of " + std::to_string(n) + " numbers");
  std::vector<double> out(static_cast<std::size_t>(n + 1), 0.0);
  for (int q = 0; q < n; ++q) {
    if (!v[static_cast<std::size_t>(q)].is_number())
      throw ParseError(where + "[" + std::to_string(q) + "]: expected a number");
    out[static_cast<std::size_t>(q + 1)] = v[static_cast<std::size_t>(q)].get<double>();
  }
  return out;
}

json id_array(const std::vector<double>& v, int n) {
  json a = json::array();
  for (int i = 1; i <= n; ++i)
    a.push_back(static_cast<std::size_t>(i) < v.size() ? v[static_cast<std::size_t>(i)] : 0.0);
  return a;
}

}  // namespace

SizeClass parse_size_class(const std::string& s) {
  if (s == "small") return SizeClass::Small;
  if (s == "medium") return SizeClass::Medium;
  if (s == "large") return SizeClass::Large;
  throw InputError("unknown size class '" + s + "' (small|medium|large)");
}

std::string to_string(SizeClass c) {
  switch (c) {
    case SizeClass::Small:
      return "small";
    case SizeClass::Medium:
      return "medium";
    case SizeClass::Large:
      return "large";
  }
  return "small";
}

Instance generate(const GeneratorProfile& profile) {
  Rng rng(profile.seed);
  auto draw_int = [&](int lo, int hi) {
    return lo + static_cast<int>(rng.index(static_cast<std::size_t>(hi - lo + 1)));
  };
  int lo = 15, hi = 25;
  double area = 500.0, rd = 4.0;
  if (profile.sizeClass == SizeClass::Medium) {
    lo = 25;
    hi = 40;
    area = profile.areaAcres > 0.0 ? profile.areaAcres : rng.uniform(600.0, 1500.0);
    rd = 4.9;
  } else if (profile.sizeClass == SizeClass::Large) {
    lo = 41;
    hi = 60;
    area = 2000.0;
    rd = 5.6;
  }
  if (profile.areaAcres > 0.0) area = profile.areaAcres;
  int n = profile.nodeCount;
  if (n == 0) n = draw_int(lo, hi);
  if (n < lo || n > hi)
    throw InputError("nodeCount " + std::to_string(n) + " outside the " +
                     to_string(profile.sizeClass) + " range");
  if (profile.numSprayers < 1) throw InputError("numSprayers must be positive");

  const double side = std::sqrt(area);
  std::vector<FieldNode> nodes;
  for (int i = 1; i <= n; ++i) {
    FieldNode f;
    f.id = i;
    f.pos = Point{rng.uniform(0.0, side), rng.uniform(0.0, side)};
    f.qMin = static_cast<double>(draw_int(15000, 35000)) / 10000.0;
    f.qMax = 2.5 * f.qMin;
    nodes.push_back(f);
  }
  InstanceParams prm;
  prm.numSprayers = profile.numSprayers;
  prm.sprayerCap = 15.0;
  prm.tankerCap = profile.tankerCapFactor * prm.sprayerCap;
  prm.sprayRate = 2.0;
  prm.refillTime = 3.0;
  prm.speedFactor = 2.0;
  prm.horizon = profile.horizon;
  prm.zoneRadius = rd;
  return Instance(Point{0.0, 0.0}, std::move(nodes), prm);
}

std::string instance_to_json(const Instance& inst) {
  const InstanceParams& p = inst.params();
  json j;
  j["schema"] = kInstanceSchema;
  j["depot"] = {{"x", inst.depot().x}, {"y", inst.depot().y}};
  j["params"] = {{"numSprayers", p.numSprayers}, {"sprayerCap", p.sprayerCap},
                 {"tankerCap", p.tankerCap},     {"sprayRate", p.sprayRate},
                 {"refillTime", p.refillTime},   {"speedFactor", p.speedFactor},
                 {"horizon", p.horizon},         {"zoneRadius", p.zoneRadius}};
  json nodes = json::array();
  for (const FieldNode& f : inst.nodes())
    nodes.push_back(
        {{"id", f.id}, {"x", f.pos.x}, {"y", f.pos.y}, {"qMin", f.qMin}, {"qMax", f.qMax}});
  j["nodes"] = std::move(nodes);
  return j.dump(2) + "\n";
}

Instance instance_from_json(const std::string& text) {
  const json j = parse(text);
  const json& schema = field(j, "schema", "instance");
  if (!schema.is_string() || schema.get<std::string>() != kInstanceSchema)
    throw ParseError(std::string("instance.schema: expected \"") + kInstanceSchema + "\"");
  const json& d = field(j, "depot", "instance");
  const Point depot{number(d, "x", "instance.depot"), number(d, "y", "instance.depot")};
  const json& pj = field(j, "params", "instance");
  InstanceParams p;
  p.numSprayers = integer(pj, "numSprayers", "instance.params");
  p.sprayerCap = number(pj, "sprayerCap", "instance.params");
  p.tankerCap = number(pj, "tankerCap", "instance.params");
  p.sprayRate = number(pj, "sprayRate", "instance.params");
  p.refillTime = number(pj, "refillTime", "instance.params");
  p.speedFactor = number(pj, "speedFactor", "instance.params");
  p.horizon = number(pj, "horizon", "instance.params");
  p.zoneRadius = number(pj, "zoneRadius", "instance.params");
  const json& nj = field(j, "nodes", "instance");
  if (!nj.is_array()) throw ParseError("instance.nodes: expected an array");
  std::vector<FieldNode> nodes;
  for (std::size_t q = 0; q < nj.size(); ++q) {
    const std::string where = "instance.nodes[" + std::to_string(q) + "]";
    FieldNode f;
    f.id = integer(nj[q], "id", where);
    f.pos = Point{number(nj[q], "x", where), number(nj[q], "y", where)};
    f.qMin = number(nj[q], "qMin", where);
    f.qMax = number(nj[q], "qMax", where);
    nodes.push_back(f);
  }
  return Instance(depot, std::move(nodes), p);
}

void save_instance(const Instance& inst, const std::string& path) {
  write_file(path, instance_to_json(inst));
}

Instance load_instance(const std::string& path) { return instance_from_json(read_file(path)); }

std::string solution_to_json(const Instance& inst, const Solution& sol) {
  const int n = inst.num_nodes();
  json j;
  j["schema"] = kSolutionSchema;
  j["routes"] = sol.routes;
  j["service"] = id_array(sol.service, n);
  j["tankerRoute"] = sol.tankerRoute;
  j["alpha"] = sol.alpha;
  j["objective"] = {{"sprayerTravel", sol.objective.sprayerTravel},
                    {"tankerTravel", sol.objective.tankerTravel},
                    {"refillTerm", sol.objective.refillTerm},
                    {"serviceTerm", sol.objective.serviceTerm},
                    {"waitingPenalty", sol.objective.waitingPenalty},
                    {"total", sol.objective.total}};
  j["feasible"] = sol.feasible();
  const Schedule& s = sol.schedule;
  j["schedule"] = {{"arrival", id_array(s.arrival, n)},
                   {"refillStart", id_array(s.refillStart, n)},
                   {"tankerArrival", id_array(s.tankerArrival, n)},
                   {"waiting", id_array(s.waiting, n)},
                   {"sprayerTank", id_array(s.sprayerTank, n)},
                   {"tankerTank", id_array(s.tankerTank, n)},
                   {"refillQty", id_array(s.refillQty, n)}};
  return j.dump(2) + "\n";
}

Solution solution_from_json(const Instance& inst, const std::string& text) {
  const json j = parse(text);
  const json& schema = field(j, "schema", "solution");
  if (!schema.is_string() || schema.get<std::string>() != kSolutionSchema)
    throw ParseError(std::string("solution.schema: expected \"") + kSolutionSchema + "\"");
  const int n = inst.num_nodes();
  Solution sol;
  const json& rj = field(j, "routes", "solution");
  if (!rj.is_array()) throw ParseError("solution.routes: expected an array");
  for (std::size_t k = 0; k < rj.size(); ++k)
    sol.routes.push_back(id_list(rj[k], "solution.routes[" + std::to_string(k) + "]"));
  sol.service = by_id(field(j, "service", "solution"), n, "solution.service");
  sol.tankerRoute = id_list(field(j, "tankerRoute", "solution"), "solution.tankerRoute");
  for (NodeId i : sol.tankerRoute)
    if (i < 1 || i > n) throw ParseError("solution.tankerRoute: unknown node " + std::to_string(i));
  sol.refill.assign(static_cast<std::size_t>(n + 1), 0);
  for (NodeId i : sol.tankerRoute) sol.refill[static_cast<std::size_t>(i)] = 1;
  if (j.contains("alpha")) sol.alpha = number(j, "alpha", "solution");

  if (j.contains("schedule")) {
    const json& s = j["schedule"];
    sol.schedule.resize(n);
    sol.schedule.arrival = by_id(field(s, "arrival", "solution.schedule"), n, "solution.schedule.arrival");
    sol.schedule.refillStart =
        by_id(field(s, "refillStart", "solution.schedule"), n, "solution.schedule.refillStart");
    sol.schedule.tankerArrival =
        by_id(field(s, "tankerArrival", "solution.schedule"), n, "solution.schedule.tankerArrival");
    sol.schedule.waiting = by_id(field(s, "waiting", "solution.schedule"), n, "solution.schedule.waiting");
    sol.schedule.sprayerTank =
        by_id(field(s, "sprayerTank", "solution.schedule"), n, "solution.schedule.sprayerTank");
    sol.schedule.tankerTank =
        by_id(field(s, "tankerTank", "solution.schedule"), n, "solution.schedule.tankerTank");
    sol.schedule.refillQty =
        by_id(field(s, "refillQty", "solution.schedule"), n, "solution.schedule.refillQty");
  } else {
    route_owner(inst, sol.routes);
    sol.schedule = realize_schedule(inst, sol.routes, sol.service, sol.refill, sol.tankerRoute).schedule;
  }
  double totalWaiting = 0.0;
  for (double m : sol.schedule.waiting) totalWaiting += m;
  sol.waitingInfeasible = totalWaiting > kFeasTol;
  route_owner(inst, sol.routes);
  sol.objective = objective_unchecked(inst, sol.routes, sol.service, sol.refill, sol.tankerRoute,
                                      sol.schedule.waiting, kWaitingPenalty);
  double excess = 0.0;
  for (const Route& r : sol.routes) {
    if (r.empty()) continue;
    const auto ul = static_cast<std::size_t>(r.back());
    excess += std::max(0.0, sol.schedule.arrival[ul] + sol.service[ul] +
                                inst.travel(r.back(), kDepot) - inst.params().horizon);
  }
  sol.horizonInfeasible = excess > kFeasTol;
  return sol;
}

void save_solution(const Instance& inst, const Solution& sol, const std::string& path) {
  write_file(path, solution_to_json(inst, sol));
}

Solution load_solution(const Instance& inst, const std::string& path) {
  return solution_from_json(inst, read_file(path));
}

RunRecord summarize(const Instance& inst, const Solution& sol, std::string instance,
                    std::uint64_t seed, std::string method) {
  RunRecord r;
  r.instance = std::move(instance);
  r.seed = seed;
  r.method = std::move(method);
  r.objective = sol.objective;
  r.feasible = sol.feasible();
  r.refills = sol.refill_count();
  double service = 0.0;
  double travel = 0.0;
  for (const Route& route : sol.routes) {
    travel += route_travel(inst, route);
    for (NodeId i : route) service += sol.service[static_cast<std::size_t>(i)];
  }
  const auto K = static_cast<double>(std::max<std::size_t>(1, sol.routes.size()));
  r.servicePerSprayer = service / K;
  r.routingPerSprayer = travel / K;
  return r;
}

namespace {

std::string fmt(double v) {
  std::ostringstream ss;
  ss.precision(9);
  ss << v;
  return ss.str();
}

// Numeric columns after instance, seed, method.
std::vector<double> numeric_columns(const RunRecord& r) {
  return {r.objective.total,
          r.objective.sprayerTravel,
          r.objective.tankerTravel,
          r.objective.refillTerm,
          r.objective.serviceTerm,
          r.objective.waitingPenalty,
          r.feasible ? 1.0 : 0.0,
          r.lowerBound,
          gap_percent(r.objective.total, r.lowerBound),
          r.seconds1,
          r.seconds2,
          r.seconds3,
          static_cast<double>(r.refills),
          r.servicePerSprayer,
          r.routingPerSprayer};
}

void write_row(std::ostream& os, const std::string& inst, const std::string& seed,
               const std::string& method, const std::vector<double>& v) {
  os << inst << ',' << seed << ',' << method;
  for (double x : v) os << ',' << fmt(x);
  os << '\n';
}

}  // namespace

void write_results(std::ostream& os, const std::vector<RunRecord>& records) {
  os << "instance,seed,method,total,sprayerTravel,tankerTravel,refillTerm,serviceTerm,"
        "waitingPenalty,feasible,lowerBound,gapPercent,seconds1,seconds2,seconds3,refills,"
        "servicePerSprayer,routingPerSprayer\n";
  for (const RunRecord& r : records)
    write_row(os, r.instance, std::to_string(r.seed), r.method, numeric_columns(r));

  std::map<std::string, std::vector<std::vector<double>>> groups;
  for (const RunRecord& r : records) groups[r.method].push_back(numeric_columns(r));
  for (const auto& [method, rows] : groups) {
    const std::size_t m = rows.front().size();
    std::vector<double> mean(m, 0.0);
    std::vector<double> lo(m, std::numeric_limits<double>::infinity());
    std::vector<double> hi(m, -std::numeric_limits<double>::infinity());
    for (const auto& v : rows)
      for (std::size_t q = 0; q < m; ++q) {
        mean[q] += v[q];
        lo[q] = std::min(lo[q], v[q]);
        hi[q] = std::max(hi[q], v[q]);
      }
    for (double& x : mean) x /= static_cast<double>(rows.size());
    if (rows.size() == 1) mean = rows.front();
    write_row(os, "*mean", "", method, mean);
    write_row(os, "*min", "", method, lo);
    write_row(os, "*max", "", method, hi);
  }
}

void write_results(const std::vector<RunRecord>& records, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  write_results(out, records);
  if (!out) throw std::runtime_error("write failed for " + path);
}

}  // namespace sstrp

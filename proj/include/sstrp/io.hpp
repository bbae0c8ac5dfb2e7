#pragma once

#include <cstdint>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include "sstrp/model.hpp"

namespace sstrp {

enum class SizeClass { Small, Medium, Large };

struct GeneratorProfile {
  SizeClass sizeClass = SizeClass::Small;
  int nodeCount = 0;       // 0: uniform over the class range
  double areaAcres = 0.0;  // 0: class default (medium draws from [600,1500])
  int numSprayers = 2;
  std::uint64_t seed = 1;
  double horizon = 480.0;
  double tankerCapFactor = 10.0;  // Qt = factor * Qs
};

SizeClass parse_size_class(const std::string& s);
std::string to_string(SizeClass c);

/// Pure function of the profile.
Instance generate(const GeneratorProfile& profile);

struct ParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string instance_to_json(const Instance& inst);
Instance instance_from_json(const std::string& text);
void save_instance(const Instance& inst, const std::string& path);
Instance load_instance(const std::string& path);

std::string solution_to_json(const Instance& inst, const Solution& sol);
/// Missing schedule arrays are recomputed from the decisions.
Solution solution_from_json(const Instance& inst, const std::string& text);
void save_solution(const Instance& inst, const Solution& sol, const std::string& path);
Solution load_solution(const Instance& inst, const std::string& path);

struct RunRecord {
  std::string instance;
  std::uint64_t seed = 0;
  std::string method;
  ObjectiveBreakdown objective;
  bool feasible = false;
  double lowerBound = 0.0;
  double seconds1 = 0.0;
  double seconds2 = 0.0;
  double seconds3 = 0.0;
  int refills = 0;
  double servicePerSprayer = 0.0;
  double routingPerSprayer = 0.0;
};

/// Per-sprayer means of service time and sprayer travel.
RunRecord summarize(const Instance& inst, const Solution& sol, std::string instance,
                    std::uint64_t seed, std::string method);

/// One row per record, then mean/min/max rows per method.
void write_results(std::ostream& os, const std::vector<RunRecord>& records);
void write_results(const std::vector<RunRecord>& records, const std::string& path);

}  // namespace sstrp

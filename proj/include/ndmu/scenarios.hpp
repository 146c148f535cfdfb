#pragma once

#include <string>
#include <vector>

#include "ndmu/semantics.hpp"

namespace ndmu {

class PreconditionError : public std::runtime_error {
 public:
  explicit PreconditionError(const std::string& msg) : std::runtime_error(msg) {}
};

// Packaged fixed-point analyses over a designated atom c0 (except community,
// which needs no atom):
//   coalition-expand:  least fp of  c0 | box c   (requires I within Rbox)
//   coalition-sharpen: greatest fp of c0 & dia c (requires I within Rdia^-1)
//   rough:             greatest fp of c0 & box c, least fp of c0 | dia c
//   community:         greatest and least fp of box dia c
enum class Scenario { CoalitionExpand, CoalitionSharpen, Rough, Community };

Scenario scenario_from_name(const std::string& name);
const char* scenario_name(Scenario s);

struct ScenarioEntry {
  std::string description;
  std::string formula;
  ConceptId result = 0;
  bool least = false;          // least or greatest fixed point claimed
  bool is_fixed_point = false; // result maps to itself
  bool is_extremal = false;    // against a scan of all fixed points
};

struct ScenarioReport {
  std::vector<ScenarioEntry> entries;
  bool ok() const;
};

// Throws PreconditionError (with a witness pair) when the scenario's
// relation inclusion fails, and std::invalid_argument when c0 is missing.
ScenarioReport run_scenario(const Model& m, Scenario s);

}  // namespace ndmu

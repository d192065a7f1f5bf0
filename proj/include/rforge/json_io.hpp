#pragma once

#include <json.hpp>

#include "rforge/brute.hpp"
#include "rforge/sumprod.hpp"
#include "rforge/vdw.hpp"

namespace rforge {

// Polynomials serialize as their canonical text; big integers as decimal
// strings. Identical inputs produce byte-identical JSON.

nlohmann::json to_json(const GoodPoly& p);
GoodPoly poly_from_json(const nlohmann::json& j);

nlohmann::json to_json(const PatternWitness& w);
PatternWitness pattern_witness_from_json(const nlohmann::json& j);

nlohmann::json to_json(const NatWitness& w);
nlohmann::json to_json(const PolyPvdwWitness& w);
nlohmann::json to_json(const NatPvdwWitness& w);

nlohmann::json to_json(const TowerWitness& tw);
nlohmann::json to_json(const ThreeColorTrace& trace);
ThreeColorTrace trace_from_json(const nlohmann::json& j);

nlohmann::json to_json(const AvoidanceReport& r);
nlohmann::json to_json(const ExerciseReport& r);

// Re-instantiates the witness from its assignment and re-checks every
// element against the oracle; used by the round-trip schema checks.
PatternWitness revalidate_pattern_witness(const nlohmann::json& j, const PolyColoring& oracle);

}  // namespace rforge

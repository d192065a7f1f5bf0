#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "rforge/coloring.hpp"
#include "rforge/poly.hpp"
#include "rforge/vdw.hpp"

namespace rforge {

// Nonincreasing positive size bounds c_0 >= c_1 >= ... >= c_k. A schedule of
// length k+1 drives a k-level tower; any schedule that verifies is a valid
// instance of the lemma, so it is taken as input rather than derived.
struct SizeSchedule {
    explicit SizeSchedule(std::vector<unsigned> values);
    unsigned levels() const { return unsigned(values_.size()) - 1; }  // k
    unsigned at(unsigned i) const { return values_.at(i); }
    const std::vector<unsigned>& values() const { return values_; }

private:
    std::vector<unsigned> values_;
};

// The inductive tower: base point x = x_k, blocks b_1..b_k with
// a_1 = b_1 and a_i = a_{i-1} * b_i. The defining condition, checked by full
// enumeration: for every level i < k and every good P with s(P) <= c_i over
// the tuple (a_{i+1}, b_{i+2}, ..., b_k),
//     (a_1 ... a_i) x + P(a_{i+1}, b_{i+2}, ..., b_k)
// has the same color as (a_1 ... a_i) x.
struct TowerWitness {
    PolyColoring oracle;
    SizeSchedule schedule;
    GoodPoly x;
    std::vector<GoodPoly> b;  // b_1..b_k
    std::vector<GoodPoly> a;  // a_1..a_k
    bool verified = false;

    unsigned k() const { return unsigned(b.size()); }
    GoodPoly product_times_x(unsigned i) const;                // (a_1 ... a_i) * x
    std::vector<GoodPoly> condition_tuple(unsigned i) const;   // i < k
};

struct TowerCheck {
    bool ok = false;
    std::uint64_t conditionsChecked = 0;
    std::string failure;
};

// Full enumeration of every lemma condition, no sampling.
TowerCheck verify_tower_conditions(const TowerWitness& tw, unsigned jobs = 1);

struct TowerResult {
    std::optional<TowerWitness> tower;
    std::uint64_t tried = 0;                // candidate (f, e) pairs tested
    std::uint64_t skippedIndivisible = 0;   // candidates rejected by exact division
    std::uint64_t conditionsChecked = 0;
    std::string failure;
    bool found() const { return tower.has_value(); }
};

// Inductive construction. Each level finds (f, e) as substitution instances
// of scale^(level+1) via the shifted search, divides them back into the
// tower, and re-verifies every lower condition by enumeration before
// accepting. Candidates that fail verification are skipped, not fatal.
TowerResult build_tower(const PolyColoring& oracle, unsigned k, const SizeSchedule& schedule,
                        std::uint64_t budget, unsigned jobs = 1);

// A verified monochromatic pattern instance over T. Pattern variables are
// 1-based: 1 = x, 2 = y.
struct PatternWitness {
    std::vector<GoodPoly> templates;
    std::map<unsigned, GoodPoly> assignment;
    std::vector<GoodPoly> elements;
    ColorId color;
};

// Instantiates the templates and re-checks every element; raises
// WitnessVerificationError on any color mismatch.
PatternWitness make_verified_pattern_witness(const PolyColoring& oracle,
                                             std::vector<GoodPoly> templates,
                                             std::map<unsigned, GoodPoly> assignment);

struct ExtractOutcome {
    std::optional<PatternWitness> witness;
    unsigned lowerLevel = 0, upperLevel = 0;  // the chosen same-colored pair
    std::vector<unsigned> monochromeLevels;   // every level sharing the witness color
    std::string failure;
    unsigned neededLevels = 0;
    unsigned neededSize = 0;
    bool found() const { return witness.has_value(); }
};

// The finishing step: pick two same-colored level products, group the
// blocks between them into y, and read off a verified monochromatic
// {x, x+P_1(y), ..., x+P_m(y), x*y}. Targets are univariate templates in y.
// Fails with a level/size hint when the tower cannot support the targets.
ExtractOutcome extract_pattern(const TowerWitness& tw, const std::vector<GoodPoly>& targets);

// ---------------------------------------------------------------------------
// Three-color deduction chain

struct TraceStep {
    std::string stage;
    std::string note;
    std::vector<GoodPoly> elements;
    std::vector<BigInt> values;  // elements evaluated at t = 2
    std::vector<ColorId> colors;
};

struct ThreeColorTrace {
    std::vector<TraceStep> steps;
};

struct TraceOptions {
    unsigned baseFamilySize = 2;   // c0
    unsigned chainFamilySize = 2;  // c1
    std::uint64_t budget = 1'000'000;
    unsigned jobs = 1;
};

struct TraceResult {
    std::optional<PatternWitness> witness;
    ThreeColorTrace trace;
    std::uint64_t tried = 0;
    bool found() const { return witness.has_value(); }
};

// Runs the three-color strategy: a base family (x, d), product probes, a
// second family (f, e), then the forced chain through d*e*x, d*e*x + e^2 and
// d*e^3*x. Every deduction step records the elements and oracle colors it
// observed; one of the probes must yield a monochromatic {a, a+b, ab} for a
// total 3-coloring once both families are found.
TraceResult three_color_trace(const PolyColoring& oracle, const TraceOptions& opts = {});

// Re-queries every recorded element; true iff colors and values match exactly.
bool replay_trace(const ThreeColorTrace& trace, const PolyColoring& oracle);

}  // namespace rforge

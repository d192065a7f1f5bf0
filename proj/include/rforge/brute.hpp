#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "rforge/coloring.hpp"
#include "rforge/poly.hpp"
#include "rforge/sumprod.hpp"

namespace rforge {

struct VarPolicy {
    BigInt minValue = 1;
};

// A finite list of good-polynomial templates in pattern variables
// (1 = x, 2 = y, ...) plus per-variable domain constraints over the naturals.
struct PatternFamily {
    std::string name;
    std::vector<GoodPoly> templates;
    std::vector<VarPolicy> policies;  // one per pattern variable

    unsigned var_count() const { return unsigned(policies.size()); }
    void validate() const;

    static PatternFamily schur();                              // {x, y, x+y}
    static PatternFamily ap3();                                // {x, x+y, x+2y}
    static PatternFamily sumprod(bool allowUnitY = false);     // {x, x+y, xy}, y >= 2
    static PatternFamily sumprod_corollary(bool allowUnitY = false);  // {x+y, xy}, y >= 2

    // builtin name or semicolon-separated expressions in x, y
    static PatternFamily parse(std::string_view spec, bool allowUnitY = false);
};

struct NatWitness {
    std::vector<BigInt> assignment;  // pattern variable values, 1-based order
    std::vector<BigInt> elements;
    ColorId color;
};

// Earliest monochromatic instance with every element inside [1, N], scanning
// assignments in row-major order; std::nullopt means no instance exists.
std::optional<NatWitness> find_instance(const NatColoring& coloring, const PatternFamily& f,
                                        unsigned N);

// Bounded polynomial region {p : s(p) <= sizeBound, vars <= maxVar}, further
// restricted to per-variable degree <= perVarDegreeCap when set.
struct PolyRegion {
    unsigned sizeBound = 2;
    unsigned maxVar = 3;
    std::optional<unsigned> perVarDegreeCap;

    std::vector<GoodPoly> members() const;
    bool contains(const GoodPoly& p) const;
};

// Earliest monochromatic instance whose pattern variables and instantiated
// elements all lie in the region.
std::optional<PatternWitness> find_instance(const PolyColoring& coloring,
                                            const PatternFamily& f, const PolyRegion& region);

struct AvoidanceReport {
    std::string pattern;
    std::vector<std::string> templates;
    unsigned colors = 0;
    unsigned cap = 0;
    bool unavoidable = false;
    // minimal N with no avoiding coloring when unavoidable, else the cap
    unsigned N = 0;
    // re-verified avoiding coloring of [N-1] (or of [cap] when capped)
    std::vector<unsigned> avoidingColoring;
    std::uint64_t nodesExplored = 0;
    bool rechecked = false;
};

// Exhaustive backtracking over colorings of [N] for N = 1..cap: colors are
// assigned in increasing integer order with canonical color introduction
// (the first integer is always color 0), instances detected incrementally
// from lists keyed by largest element. Both report flavors attach an
// avoiding coloring that is re-verified by an independent scan.
AvoidanceReport min_unavoidable_N(const PatternFamily& f, unsigned colors, unsigned cap);

struct ExerciseReport {
    unsigned sizeBound = 0;
    unsigned maxVar = 0;
    bool noInstance = false;
    std::optional<PatternWitness> counterexample;
    std::size_t regionSize = 0;
    std::uint64_t assignmentsScanned = 0;
};

// The two-coloring of multilinear polynomials by reducibility, scanned for a
// monochromatic {x, y, x+y, xy} with all four elements in the region.
ExerciseReport check_p1_exercise(unsigned sizeBound = 2, unsigned maxVar = 3);

}  // namespace rforge

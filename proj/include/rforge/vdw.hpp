#pragma once

#include <cstdint>
#include <optional>
#include <variant>
#include <vector>

#include "rforge/coloring.hpp"
#include "rforge/poly.hpp"

namespace rforge {

enum class GroundSet { SemiringT, Naturals };

// A polynomial van der Waerden query: find a base point x and difference d
// making x and every x + P(d) the same color. Family templates are
// univariate in the difference variable. The budget bounds the number of
// candidate (x, d) pairs; running out is never a disproof.
struct PvdwQuery {
    GroundSet domain = GroundSet::SemiringT;
    Coloring oracle;
    std::vector<GoodPoly> family;
    std::uint64_t budget = 1'000'000;
    unsigned jobs = 1;

    static PvdwQuery over_T(PolyColoring oracle, std::vector<GoodPoly> family,
                            std::uint64_t budget = 1'000'000);
    // family expanded once from "all good P with s(P) <= c"
    static PvdwQuery over_T(PolyColoring oracle, unsigned sizeBound,
                            std::uint64_t budget = 1'000'000);
    static PvdwQuery over_nat(NatColoring oracle, std::vector<GoodPoly> family,
                              std::uint64_t budget = 1'000'000);

    void validate() const;
};

struct PolyPvdwWitness {
    GoodPoly x;
    GoodPoly d;
    ColorId color;
    std::size_t checkedCount = 0;
};

struct NatPvdwWitness {
    BigInt x;
    BigInt d;
    ColorId color;
    std::size_t checkedCount = 0;
};

using PvdwWitness = std::variant<PolyPvdwWitness, NatPvdwWitness>;

struct PvdwResult {
    std::optional<PvdwWitness> witness;
    std::uint64_t tried = 0;

    bool found() const { return witness.has_value(); }
    const PolyPvdwWitness& poly() const { return std::get<PolyPvdwWitness>(*witness); }
    const NatPvdwWitness& nat() const { return std::get<NatPvdwWitness>(*witness); }
};

// Re-checks every family condition; raises WitnessVerificationError on any
// mismatch, so a corrupted search cannot hand back an unverified witness.
PolyPvdwWitness make_verified_witness(const PolyColoring& oracle, const GoodPoly& x,
                                      const GoodPoly& d, const std::vector<GoodPoly>& family);
NatPvdwWitness make_verified_witness(const NatColoring& oracle, const BigInt& x,
                                     const BigInt& d, const std::vector<GoodPoly>& family);

// Deterministic search in graded order: (size(x)+size(d), size(x), canonical
// term order) over T, (x+d, x) over the naturals. Returns the order-minimal
// verified witness or runs out of budget.
PvdwResult find_pvdw_witness(const PvdwQuery& q);

// The shifted form: candidates f, e are substitution instances F(scale^power),
// E(scale^power) of good univariate templates, F possibly zero, E nonzero.
// Searches for anchor + f + P(e) monochromatic with anchor + f across the family.
struct ShiftedPvdwWitness {
    GoodPoly x;  // anchor + f
    GoodPoly d;  // e
    ColorId color;
    std::size_t checkedCount = 0;
    GoodPoly f;
    GoodPoly e;
    GoodPoly fTemplate;
    GoodPoly eTemplate;
    unsigned power = 1;
};

struct ShiftedPvdwResult {
    std::optional<ShiftedPvdwWitness> witness;
    std::uint64_t tried = 0;
    bool found() const { return witness.has_value(); }
};

ShiftedPvdwResult find_shifted_pvdw(const PvdwQuery& q, const GoodPoly& anchor,
                                    const GoodPoly& scale, unsigned power);

// Graded stream over pairs of univariate good polynomials, ordered by
// (size(first) + size(second), size(first), first, second). The first
// component may include the zero polynomial; the second never does.
class GradedPolyPairStream {
public:
    explicit GradedPolyPairStream(bool firstMayBeZero, unsigned var = 1);
    std::pair<GoodPoly, GoodPoly> next();

private:
    const std::vector<GoodPoly>& block(unsigned s);
    void advance_sizes();

    bool firstMayBeZero_;
    unsigned var_;
    unsigned total_ = 1;
    unsigned firstSize_ = 0;
    std::size_t i_ = 0, j_ = 0;
    std::map<unsigned, std::vector<GoodPoly>> blocks_;
};

}  // namespace rforge

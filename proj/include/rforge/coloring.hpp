#pragma once

#include <compare>
#include <functional>
#include <memory>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "rforge/bigint.hpp"
#include "rforge/errors.hpp"
#include "rforge/poly.hpp"

namespace rforge {

struct ColorId {
    unsigned value = 0;
    friend auto operator<=>(const ColorId&, const ColorId&) = default;
};

// A pure coloring of the positive integers. Rules must be deterministic and
// total on their declared domain; finite tables raise ColorDomainError
// outside it instead of defaulting.
class NatColoring {
public:
    NatColoring(unsigned colorCount, std::string description,
                std::function<ColorId(const BigInt&)> rule);

    unsigned color_count() const { return colorCount_; }
    const std::string& description() const { return *description_; }
    ColorId operator()(const BigInt& n) const;

private:
    unsigned colorCount_;
    std::shared_ptr<const std::string> description_;
    std::function<ColorId(const BigInt&)> rule_;
};

// A pure coloring of nonzero good polynomials.
class PolyColoring {
public:
    PolyColoring(unsigned colorCount, std::string description,
                 std::function<ColorId(const GoodPoly&)> rule);

    unsigned color_count() const { return colorCount_; }
    const std::string& description() const { return *description_; }
    ColorId operator()(const GoodPoly& p) const;

private:
    unsigned colorCount_;
    std::shared_ptr<const std::string> description_;
    std::function<ColorId(const GoodPoly&)> rule_;
};

NatColoring mod_coloring(unsigned m);

// 1-based domain: table[i] colors the integer i+1. Every entry must be < colorCount.
NatColoring table_coloring(std::vector<unsigned> table, unsigned colorCount);
NatColoring load_table_coloring(const std::string& path);

// Colors p with the inner color of p evaluated at `base` (every variable).
// Any base >= 2 preserves the transfer argument; 2 is the default.
PolyColoring lift_from_nat(const NatColoring& inner, unsigned base = 2);

// Colors a multivariate polynomial with the inner color of the univariate
// polynomial obtained by substituting t for every variable.
PolyColoring collapse_to_univariate(const PolyColoring& inner);

// Two colors: 0 for reducible polynomials, 1 for irreducible ones.
// Memoizes on canonical form; safe for concurrent use.
PolyColoring reducibility_coloring();

using Coloring = std::variant<NatColoring, PolyColoring>;

// DSL:  mod:<m> | table:<path.json> | lift:<base>:<nat-spec>
//     | collapse:<poly-spec> | reducibility
Coloring parse_coloring(std::string_view spec);

bool is_nat(const Coloring& c);
const NatColoring& as_nat(const Coloring& c);
const PolyColoring& as_poly(const Coloring& c);

}  // namespace rforge

#pragma once

#include <compare>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "rforge/bigint.hpp"
#include "rforge/errors.hpp"

namespace rforge {

// A power product over 1-based variable indices. Stored exponents are >= 1;
// an absent variable has exponent 0. The empty product is the constant
// monomial 1, which may exist transiently but never inside a GoodPoly.
//
// Order: graded lexicographic, higher variable indices more significant.
// Ascending over degree 2 in two variables: x1^2 < x1*x2 < x2^2.
class Monomial {
public:
    using Factors = std::vector<std::pair<unsigned, unsigned>>;  // (var, exp), var ascending

    Monomial() = default;
    static Monomial variable(unsigned var, unsigned exp = 1);
    static Monomial of(std::initializer_list<std::pair<unsigned, unsigned>> factors);

    bool is_constant() const { return factors_.empty(); }
    std::uint64_t degree() const;
    unsigned exponent(unsigned var) const;
    unsigned max_var() const { return factors_.empty() ? 0 : factors_.back().first; }
    const Factors& factors() const { return factors_; }

    // true when every exponent is <= cap
    bool degree_capped_by(unsigned cap) const;

    Monomial times(const Monomial& other) const;
    Monomial pow(unsigned e) const;
    bool divides(const Monomial& m) const;
    Monomial divided_by(const Monomial& d) const;  // pre: d.divides(*this)

    static std::strong_ordering compare(const Monomial& a, const Monomial& b);
    friend std::strong_ordering operator<=>(const Monomial& a, const Monomial& b) {
        return compare(a, b);
    }
    friend bool operator==(const Monomial& a, const Monomial& b) {
        return a.factors_ == b.factors_;
    }

    std::size_t hash() const;

private:
    explicit Monomial(Factors f) : factors_(std::move(f)) {}
    Factors factors_;
};

enum class PolyStyle {
    Auto,     // "2t^3+t" when only variable 1 appears, "x1^2*x2+3*x1" otherwise
    Pattern,  // variables 1, 2 print as x, y (pattern templates)
};

// A good polynomial: zero constant term, positive integer coefficients.
// The zero polynomial is the empty term map; it is representable but the
// semiring T excludes it, so engines treat it as flagged.
class GoodPoly {
public:
    using TermMap = std::map<Monomial, BigInt>;

    GoodPoly() = default;  // zero
    static GoodPoly zero() { return {}; }
    static GoodPoly variable(unsigned var);
    static GoodPoly term(Monomial m, BigInt coeff);

    // Merges duplicate monomials, drops zero coefficients, then validates:
    // a surviving constant term raises ConstantTermError, a negative merged
    // coefficient raises NegativeCoefficientError.
    static GoodPoly from_terms(const std::vector<std::pair<Monomial, BigInt>>& terms);

    bool is_zero() const { return terms_.empty(); }
    const TermMap& terms() const { return terms_; }
    std::size_t term_count() const { return terms_.size(); }

    std::uint64_t degree() const;  // total degree, 0 for the zero polynomial
    BigInt max_coeff() const;      // 0 for the zero polynomial

    // s(P) = max(total degree, largest coefficient); s(0) = 0.
    BigInt size_bound() const;
    bool size_at_most(unsigned c) const;

    std::set<unsigned> variables() const;
    unsigned max_var() const;

    // membership in P_d: every variable exponent at most d
    bool in_Pd(unsigned d) const;

    // Full composition. Every variable of *this must be assigned.
    GoodPoly substitute(const std::map<unsigned, GoodPoly>& assignment) const;

    // Exact evaluation; a semiring homomorphism. Every variable must be
    // assigned; values must be non-negative.
    BigInt evaluate(const std::map<unsigned, BigInt>& assignment) const;
    BigInt evaluate_all(const BigInt& value) const;  // every variable := value

    GoodPoly pow(unsigned e) const;

    std::string str(PolyStyle style = PolyStyle::Auto) const;
    static GoodPoly parse(std::string_view text);

    friend GoodPoly operator+(const GoodPoly& p, const GoodPoly& q);
    friend GoodPoly operator*(const GoodPoly& p, const GoodPoly& q);
    friend bool operator==(const GoodPoly& a, const GoodPoly& b) {
        return a.terms_ == b.terms_;
    }

    // Canonical total order: ascending size bound, then the descending term
    // sequences compared lexicographically by (monomial, coefficient) with a
    // proper prefix ordering first. Every stream in the project uses it.
    static std::strong_ordering order(const GoodPoly& a, const GoodPoly& b);
    friend bool operator<(const GoodPoly& a, const GoodPoly& b) {
        return order(a, b) == std::strong_ordering::less;
    }

    std::size_t hash() const;

private:
    TermMap terms_;
};

struct GoodPolyHash {
    std::size_t operator()(const GoodPoly& p) const { return p.hash(); }
};

// Exact division in the polynomial semiring: returns q with q*d == f and q
// good when such a q exists, std::nullopt otherwise (including the case
// where the integer quotient exists but is not good). Division by the zero
// polynomial raises ZeroDivisorError.
std::optional<GoodPoly> divide_exact(const GoodPoly& f, const GoodPoly& d);

struct FactorSearchLimits {
    // candidate coefficient vectors tried before giving up loudly
    std::uint64_t maxCandidates = 8'000'000;
};

// true iff p = q*r for nonconstant integer-coefficient polynomials q, r.
// Bounded search: divisor coefficients range over [-B, B] with
// B = max(largest coefficient of p, total degree of p), divisor degree at
// most half of p's. Exceeding the candidate cap raises SearchSpaceError.
bool is_reducible(const GoodPoly& p, const FactorSearchLimits& limits = {});

// All nonzero good polynomials p over the given variables with
// size_bound(p) == s exactly, in canonical order.
std::vector<GoodPoly> good_polys_of_size(unsigned s, const std::vector<unsigned>& vars);

// Restartable stream of the nonzero good polynomials with size bound at most
// c over the given variables, each exactly once, ascending in the canonical
// order (so the stream for c is a prefix of the stream for c+1).
class GoodPolyStream {
public:
    struct Block;

    GoodPolyStream(unsigned sizeBound, std::vector<unsigned> vars);
    std::optional<GoodPoly> next();
    void restart();

private:
    void load_block();

    unsigned sizeBound_;
    std::vector<unsigned> vars_;
    unsigned currentSize_ = 1;
    std::size_t index_ = 0;
    std::shared_ptr<const Block> block_;
};

// Materialized form of the stream above.
std::vector<GoodPoly> enumerate_good(unsigned sizeBound, const std::vector<unsigned>& vars);

// Rewrites a polynomial using a single variable (any index) onto variable 1.
// Multi-variable input is an error; zero passes through.
GoodPoly to_univariate(const GoodPoly& p);

}  // namespace rforge

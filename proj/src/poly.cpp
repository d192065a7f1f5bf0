#include "rforge/poly.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

#include <boost/functional/hash.hpp>

namespace rforge {

namespace {

constexpr unsigned kExponentCap = 1u << 20;

unsigned checked_exp_add(unsigned a, unsigned b) {
    std::uint64_t s = std::uint64_t(a) + b;
    if (s > kExponentCap)
        throw ExponentOverflowError("exponent " + std::to_string(s) + " exceeds cap");
    return unsigned(s);
}

unsigned checked_exp_mul(unsigned a, unsigned b) {
    std::uint64_t s = std::uint64_t(a) * b;
    if (s > kExponentCap)
        throw ExponentOverflowError("exponent " + std::to_string(s) + " exceeds cap");
    return unsigned(s);
}

void hash_mix(std::size_t& seed, std::size_t v) {
    seed ^= v + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2);
}

}  // namespace

// ---------------------------------------------------------------------------
// Monomial

Monomial Monomial::variable(unsigned var, unsigned exp) {
    if (var == 0) throw std::invalid_argument("variable indices are 1-based");
    if (exp == 0) return {};
    return Monomial(Factors{{var, exp}});
}

Monomial Monomial::of(std::initializer_list<std::pair<unsigned, unsigned>> factors) {
    Monomial m;
    for (const auto& [var, exp] : factors) m = m.times(Monomial::variable(var, exp));
    return m;
}

std::uint64_t Monomial::degree() const {
    std::uint64_t d = 0;
    for (const auto& [var, exp] : factors_) d += exp;
    return d;
}

unsigned Monomial::exponent(unsigned var) const {
    for (const auto& [v, e] : factors_)
        if (v == var) return e;
    return 0;
}

bool Monomial::degree_capped_by(unsigned cap) const {
    for (const auto& [var, exp] : factors_)
        if (exp > cap) return false;
    return true;
}

Monomial Monomial::times(const Monomial& other) const {
    Factors out;
    out.reserve(factors_.size() + other.factors_.size());
    auto a = factors_.begin();
    auto b = other.factors_.begin();
    while (a != factors_.end() && b != other.factors_.end()) {
        if (a->first < b->first) {
            out.push_back(*a++);
        } else if (b->first < a->first) {
            out.push_back(*b++);
        } else {
            out.emplace_back(a->first, checked_exp_add(a->second, b->second));
            ++a;
            ++b;
        }
    }
    out.insert(out.end(), a, factors_.end());
    out.insert(out.end(), b, other.factors_.end());
    return Monomial(std::move(out));
}

Monomial Monomial::pow(unsigned e) const {
    if (e == 0) return {};
    Factors out = factors_;
    for (auto& [var, exp] : out) exp = checked_exp_mul(exp, e);
    return Monomial(std::move(out));
}

bool Monomial::divides(const Monomial& m) const {
    for (const auto& [var, exp] : factors_)
        if (m.exponent(var) < exp) return false;
    return true;
}

Monomial Monomial::divided_by(const Monomial& d) const {
    Factors out;
    out.reserve(factors_.size());
    for (const auto& [var, exp] : factors_) {
        unsigned sub = d.exponent(var);
        if (sub > exp) throw std::invalid_argument("monomial division underflow");
        if (exp - sub > 0) out.emplace_back(var, exp - sub);
    }
    return Monomial(std::move(out));
}

std::strong_ordering Monomial::compare(const Monomial& a, const Monomial& b) {
    std::uint64_t da = a.degree(), db = b.degree();
    if (da != db) return da <=> db;
    // Lexicographic tie-break with variable 1 most significant: at the first
    // variable where the exponents differ, the larger exponent wins.
    auto ia = a.factors_.begin();
    auto ib = b.factors_.begin();
    while (ia != a.factors_.end() && ib != b.factors_.end()) {
        if (ia->first != ib->first) return ib->first <=> ia->first;
        if (ia->second != ib->second) return ia->second <=> ib->second;
        ++ia;
        ++ib;
    }
    return a.factors_.size() <=> b.factors_.size();
}

std::size_t Monomial::hash() const {
    std::size_t seed = 0xa5c9;
    for (const auto& [var, exp] : factors_) {
        hash_mix(seed, var);
        hash_mix(seed, exp);
    }
    return seed;
}

// ---------------------------------------------------------------------------
// GoodPoly construction

GoodPoly GoodPoly::variable(unsigned var) {
    return term(Monomial::variable(var), 1);
}

GoodPoly GoodPoly::term(Monomial m, BigInt coeff) {
    return from_terms({{std::move(m), std::move(coeff)}});
}

GoodPoly GoodPoly::from_terms(const std::vector<std::pair<Monomial, BigInt>>& terms) {
    TermMap merged;
    for (const auto& [m, c] : terms) merged[m] += c;
    std::erase_if(merged, [](const auto& t) { return t.second == 0; });
    if (auto it = merged.find(Monomial{}); it != merged.end())
        throw ConstantTermError("constant term " + it->second.str() +
                                " is not allowed in a good polynomial");
    for (const auto& [m, c] : merged)
        if (c < 0)
            throw NegativeCoefficientError("merged coefficient " + c.str() +
                                           " is negative");
    GoodPoly p;
    p.terms_ = std::move(merged);
    return p;
}

// ---------------------------------------------------------------------------
// GoodPoly queries

std::uint64_t GoodPoly::degree() const {
    std::uint64_t d = 0;
    for (const auto& [m, c] : terms_) d = std::max(d, m.degree());
    return d;
}

BigInt GoodPoly::max_coeff() const {
    BigInt best = 0;
    for (const auto& [m, c] : terms_)
        if (c > best) best = c;
    return best;
}

BigInt GoodPoly::size_bound() const {
    BigInt s = max_coeff();
    BigInt d = degree();
    return s > d ? s : d;
}

bool GoodPoly::size_at_most(unsigned c) const {
    return size_bound() <= c;
}

std::set<unsigned> GoodPoly::variables() const {
    std::set<unsigned> vars;
    for (const auto& [m, coeff] : terms_)
        for (const auto& [var, exp] : m.factors()) vars.insert(var);
    return vars;
}

unsigned GoodPoly::max_var() const {
    unsigned best = 0;
    for (const auto& [m, c] : terms_) best = std::max(best, m.max_var());
    return best;
}

bool GoodPoly::in_Pd(unsigned d) const {
    for (const auto& [m, c] : terms_)
        if (!m.degree_capped_by(d)) return false;
    return true;
}

// ---------------------------------------------------------------------------
// GoodPoly arithmetic

GoodPoly operator+(const GoodPoly& p, const GoodPoly& q) {
    GoodPoly out = p;
    for (const auto& [m, c] : q.terms_) out.terms_[m] += c;
    return out;
}

GoodPoly operator*(const GoodPoly& p, const GoodPoly& q) {
    GoodPoly out;
    for (const auto& [mp, cp] : p.terms_)
        for (const auto& [mq, cq] : q.terms_) out.terms_[mp.times(mq)] += cp * cq;
    return out;
}

GoodPoly GoodPoly::pow(unsigned e) const {
    if (e == 0)
        throw std::invalid_argument("pow(0) would be the constant 1, which is not good");
    GoodPoly acc;
    GoodPoly base = *this;
    bool accSet = false;
    while (e > 0) {
        if (e & 1u) {
            acc = accSet ? acc * base : base;
            accSet = true;
        }
        e >>= 1u;
        if (e > 0) base = base * base;
    }
    return acc;
}

GoodPoly GoodPoly::substitute(const std::map<unsigned, GoodPoly>& assignment) const {
    for (unsigned var : variables())
        if (!assignment.count(var))
            throw UnassignedVariableError("variable x" + std::to_string(var) +
                                          " has no assignment");
    GoodPoly out;
    for (const auto& [m, c] : terms_) {
        GoodPoly termValue;
        bool first = true;
        for (const auto& [var, exp] : m.factors()) {
            GoodPoly powed = assignment.at(var).is_zero()
                                 ? GoodPoly::zero()
                                 : assignment.at(var).pow(exp);
            termValue = first ? powed : termValue * powed;
            first = false;
        }
        GoodPoly scaled;
        for (const auto& [tm, tc] : termValue.terms()) scaled.terms_[tm] = tc * c;
        out = out + scaled;
    }
    return out;
}

BigInt GoodPoly::evaluate(const std::map<unsigned, BigInt>& assignment) const {
    for (unsigned var : variables()) {
        auto it = assignment.find(var);
        if (it == assignment.end())
            throw UnassignedVariableError("variable x" + std::to_string(var) +
                                          " has no assignment");
        if (it->second < 0)
            throw std::invalid_argument("evaluation points must be non-negative");
    }
    BigInt total = 0;
    for (const auto& [m, c] : terms_) {
        BigInt v = c;
        for (const auto& [var, exp] : m.factors())
            v *= boost::multiprecision::pow(assignment.at(var), exp);
        total += v;
    }
    return total;
}

BigInt GoodPoly::evaluate_all(const BigInt& value) const {
    std::map<unsigned, BigInt> assignment;
    for (unsigned var : variables()) assignment.emplace(var, value);
    return evaluate(assignment);
}

// ---------------------------------------------------------------------------
// Canonical order and hashing

std::strong_ordering GoodPoly::order(const GoodPoly& a, const GoodPoly& b) {
    BigInt sa = a.size_bound(), sb = b.size_bound();
    if (sa != sb) return sa < sb ? std::strong_ordering::less : std::strong_ordering::greater;
    auto ia = a.terms_.rbegin();
    auto ib = b.terms_.rbegin();
    while (ia != a.terms_.rend() && ib != b.terms_.rend()) {
        if (auto c = Monomial::compare(ia->first, ib->first); c != 0) return c;
        if (ia->second != ib->second)
            return ia->second < ib->second ? std::strong_ordering::less
                                           : std::strong_ordering::greater;
        ++ia;
        ++ib;
    }
    return a.terms_.size() <=> b.terms_.size();
}

std::size_t GoodPoly::hash() const {
    std::size_t seed = 0x51ab;
    boost::hash<BigInt> coeffHash;
    for (const auto& [m, c] : terms_) {
        hash_mix(seed, m.hash());
        hash_mix(seed, coeffHash(c));
    }
    return seed;
}

// ---------------------------------------------------------------------------
// Signed layer: division and factor search work over Z[x1..xn] internally.

namespace {

struct ZPoly {
    std::map<Monomial, BigInt> terms;

    static ZPoly from(const GoodPoly& p) {
        ZPoly z;
        for (const auto& [m, c] : p.terms()) z.terms.emplace(m, c);
        return z;
    }

    bool is_zero() const { return terms.empty(); }

    bool is_constant() const {
        return terms.empty() || (terms.size() == 1 && terms.begin()->first.is_constant());
    }

    void add_term(const Monomial& m, const BigInt& c) {
        auto [it, inserted] = terms.emplace(m, c);
        if (!inserted) {
            it->second += c;
            if (it->second == 0) terms.erase(it);
        }
    }

    // *this -= (qm * qc) * d
    void sub_mul(const Monomial& qm, const BigInt& qc, const ZPoly& d) {
        for (const auto& [m, c] : d.terms) add_term(qm.times(m), -qc * c);
    }
};

std::optional<ZPoly> z_divide_exact(ZPoly f, const ZPoly& d) {
    const auto& [dLeadM, dLeadC] = *d.terms.rbegin();
    ZPoly q;
    while (!f.is_zero()) {
        const auto& [fLeadM, fLeadC] = *f.terms.rbegin();
        if (!dLeadM.divides(fLeadM)) return std::nullopt;
        if (fLeadC % dLeadC != 0) return std::nullopt;
        Monomial qm = fLeadM.divided_by(dLeadM);
        BigInt qc = fLeadC / dLeadC;
        q.add_term(qm, qc);
        f.sub_mul(qm, qc, d);
    }
    return q;
}

std::optional<GoodPoly> z_to_good(const ZPoly& z) {
    std::vector<std::pair<Monomial, BigInt>> terms;
    for (const auto& [m, c] : z.terms) {
        if (m.is_constant() || c < 0) return std::nullopt;
        terms.emplace_back(m, c);
    }
    return GoodPoly::from_terms(terms);
}

}  // namespace

std::optional<GoodPoly> divide_exact(const GoodPoly& f, const GoodPoly& d) {
    if (d.is_zero()) throw ZeroDivisorError("division by the zero polynomial");
    if (f.is_zero()) return GoodPoly::zero();
    auto q = z_divide_exact(ZPoly::from(f), ZPoly::from(d));
    if (!q) return std::nullopt;
    return z_to_good(*q);
}

// ---------------------------------------------------------------------------
// Reducibility: bounded factor search

namespace {

// all monomials over `vars` with total degree in [mindeg, maxdeg] and
// exponent(var) <= perVarCap(var), ascending canonical order
void collect_monomials(const std::vector<unsigned>& vars,
                       const std::map<unsigned, unsigned>& perVarCap, unsigned maxdeg,
                       unsigned mindeg, std::size_t varIdx, Monomial current,
                       std::vector<Monomial>& out) {
    if (varIdx == vars.size()) {
        if (current.degree() >= mindeg) out.push_back(current);
        return;
    }
    unsigned var = vars[varIdx];
    unsigned cap = perVarCap.count(var) ? perVarCap.at(var) : maxdeg;
    cap = std::min<unsigned>(cap, maxdeg - unsigned(current.degree()));
    for (unsigned e = 0; e <= cap; ++e)
        collect_monomials(vars, perVarCap, maxdeg, mindeg, varIdx + 1,
                          e == 0 ? current : current.times(Monomial::variable(var, e)), out);
}

std::vector<Monomial> monomials_up_to(const std::vector<unsigned>& vars, unsigned maxdeg,
                                      unsigned mindeg,
                                      const std::map<unsigned, unsigned>& perVarCap = {}) {
    std::vector<Monomial> out;
    collect_monomials(vars, perVarCap, maxdeg, mindeg, 0, Monomial{}, out);
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace

bool is_reducible(const GoodPoly& p, const FactorSearchLimits& limits) {
    if (p.is_zero()) throw std::invalid_argument("reducibility is undefined for zero");
    std::uint64_t deg = p.degree();
    if (deg <= 1) return false;

    // common power-product factor
    Monomial gcd = p.terms().begin()->first;
    for (const auto& [m, c] : p.terms()) {
        Monomial::Factors shared;
        for (const auto& [var, exp] : gcd.factors()) {
            unsigned other = m.exponent(var);
            if (other > 0) shared.emplace_back(var, std::min(exp, other));
        }
        gcd = Monomial{};
        for (const auto& [var, exp] : shared)
            gcd = gcd.times(Monomial::variable(var, exp));
        if (gcd.is_constant()) break;
    }
    if (p.term_count() == 1) return true;  // c * m with deg(m) >= 2 splits
    if (!gcd.is_constant()) return true;   // gcd * (p / gcd), quotient has >= 2 terms

    // Bounded divisor search over Z. WLOG the divisor has total degree at
    // most deg/2 and positive leading coefficient.
    auto varSet = p.variables();
    std::vector<unsigned> vars(varSet.begin(), varSet.end());
    std::map<unsigned, unsigned> perVarCap;
    for (unsigned v : vars) {
        unsigned cap = 0;
        for (const auto& [m, c] : p.terms()) cap = std::max(cap, m.exponent(v));
        perVarCap[v] = cap;
    }
    unsigned maxdeg = unsigned(deg / 2);
    std::vector<Monomial> support = monomials_up_to(vars, maxdeg, 0, perVarCap);

    BigInt boundBig = p.max_coeff();
    if (BigInt(deg) > boundBig) boundBig = deg;
    if (boundBig > 1024) throw SearchSpaceError("factor search bound too large");
    long bound = boundBig.convert_to<long>();

    double candidates = 1.0;
    for (std::size_t i = 0; i < support.size(); ++i) candidates *= 2.0 * bound + 1.0;
    if (candidates > double(limits.maxCandidates))
        throw SearchSpaceError("factor search space exceeds desk-scale cap");

    ZPoly zp = ZPoly::from(p);
    std::vector<long> coeffs(support.size(), -bound);
    while (true) {
        // canonical sign: leading (largest-monomial) nonzero coefficient > 0
        int leadSign = 0;
        bool nonConstant = false;
        for (std::size_t i = support.size(); i-- > 0;) {
            if (coeffs[i] != 0) {
                if (leadSign == 0) leadSign = coeffs[i] > 0 ? 1 : -1;
                if (!support[i].is_constant()) nonConstant = true;
            }
        }
        if (leadSign > 0 && nonConstant) {
            ZPoly q;
            for (std::size_t i = 0; i < support.size(); ++i)
                if (coeffs[i] != 0) q.add_term(support[i], coeffs[i]);
            if (auto quotient = z_divide_exact(zp, q);
                quotient && !quotient->is_constant())
                return true;
        }
        // odometer
        std::size_t i = 0;
        while (i < support.size() && coeffs[i] == bound) coeffs[i++] = -bound;
        if (i == support.size()) break;
        ++coeffs[i];
    }
    return false;
}

// ---------------------------------------------------------------------------
// Text format

namespace {

std::string monomial_str(const Monomial& m, PolyStyle style, bool univariateT) {
    std::string out;
    bool first = true;
    for (const auto& [var, exp] : m.factors()) {
        if (!first) out += "*";
        first = false;
        if (univariateT) {
            out += "t";
        } else if (style == PolyStyle::Pattern && var == 1) {
            out += "x";
        } else if (style == PolyStyle::Pattern && var == 2) {
            out += "y";
        } else {
            out += "x" + std::to_string(var);
        }
        if (exp > 1) out += "^" + std::to_string(exp);
    }
    return out;
}

}  // namespace

std::string GoodPoly::str(PolyStyle style) const {
    if (is_zero()) return "0";
    bool univariateT = style == PolyStyle::Auto && max_var() <= 1;
    std::string out;
    // descending canonical term order
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
        if (!out.empty()) out += "+";
        const auto& [m, c] = *it;
        if (c != 1) {
            out += c.str();
            if (!univariateT) out += "*";
        }
        out += monomial_str(m, style, univariateT);
    }
    return out;
}

namespace {

class PolyParser {
public:
    explicit PolyParser(std::string_view text) : text_(text) {}

    GoodPoly run() {
        std::vector<std::pair<Monomial, BigInt>> terms;
        parse_term(terms);
        skip_ws();
        while (pos_ < text_.size() && text_[pos_] == '+') {
            ++pos_;
            parse_term(terms);
            skip_ws();
        }
        if (pos_ < text_.size())
            throw ParseError("unexpected character '" + std::string(1, text_[pos_]) + "'",
                             pos_, "'+' or end of input");
        return GoodPoly::from_terms(terms);
    }

private:
    void skip_ws() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_])))
            ++pos_;
    }

    bool peek_is(char c) {
        skip_ws();
        return pos_ < text_.size() && text_[pos_] == c;
    }

    BigInt parse_int() {
        skip_ws();
        std::size_t start = pos_;
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_])))
            ++pos_;
        if (pos_ == start) throw ParseError("missing integer", pos_, "a digit");
        return BigInt(std::string(text_.substr(start, pos_ - start)));
    }

    // var := 't' | 'x' digits? | 'y'
    std::optional<unsigned> try_parse_var() {
        skip_ws();
        if (pos_ >= text_.size()) return std::nullopt;
        char c = text_[pos_];
        if (c == 't') {
            ++pos_;
            return 1;
        }
        if (c == 'y') {
            ++pos_;
            return 2;
        }
        if (c == 'x') {
            ++pos_;
            std::size_t start = pos_;
            while (pos_ < text_.size() &&
                   std::isdigit(static_cast<unsigned char>(text_[pos_])))
                ++pos_;
            if (pos_ == start) return 1;  // bare "x"
            unsigned var = unsigned(std::stoul(std::string(text_.substr(start, pos_ - start))));
            if (var == 0) throw ParseError("variable index 0", start, "an index >= 1");
            return var;
        }
        return std::nullopt;
    }

    void parse_term(std::vector<std::pair<Monomial, BigInt>>& terms) {
        skip_ws();
        BigInt coeff = 1;
        Monomial mono;
        bool sawAnything = false;
        bool expectFactor = false;
        while (true) {
            skip_ws();
            if (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
                coeff *= parse_int();
            } else if (auto var = try_parse_var()) {
                unsigned exp = 1;
                if (peek_is('^')) {
                    ++pos_;
                    BigInt e = parse_int();
                    if (e < 1 || e > 1'000'000)
                        throw ParseError("exponent out of range", pos_, "1..1000000");
                    exp = e.convert_to<unsigned>();
                }
                mono = mono.times(Monomial::variable(*var, exp));
            } else if (expectFactor) {
                throw ParseError("dangling '*'", pos_, "a coefficient or a variable");
            } else {
                break;
            }
            sawAnything = true;
            expectFactor = false;
            if (peek_is('*')) {
                ++pos_;
                expectFactor = true;
            }
        }
        if (!sawAnything)
            throw ParseError("empty term", pos_, "a coefficient or a variable");
        terms.emplace_back(mono, coeff);
    }

    std::string_view text_;
    std::size_t pos_ = 0;
};

}  // namespace

GoodPoly GoodPoly::parse(std::string_view text) {
    return PolyParser(text).run();
}

// ---------------------------------------------------------------------------
// Enumeration

struct GoodPolyStream::Block {
    std::vector<Monomial> monomials;             // ascending, degree 1..s
    std::vector<std::vector<std::uint8_t>> rows;  // coefficient rows, canonical order
};

namespace {

// exact-size-s block as compact coefficient rows
std::shared_ptr<const GoodPolyStream::Block> build_block(unsigned s,
                                                         const std::vector<unsigned>& vars) {
    auto block = std::make_shared<GoodPolyStream::Block>();
    if (s == 0) return block;
    block->monomials = monomials_up_to(vars, s, 1);
    const std::size_t m = block->monomials.size();
    double space = 1.0;
    for (std::size_t i = 0; i < m; ++i) space *= double(s) + 1.0;
    if (space > 64e6)
        throw SearchSpaceError("enumeration space " + std::to_string(space) +
                               " exceeds desk-scale cap");

    std::vector<std::uint64_t> degs(m);
    for (std::size_t i = 0; i < m; ++i) degs[i] = block->monomials[i].degree();

    std::vector<std::uint8_t> row(m, 0);
    while (true) {
        // odometer step first emitting the all-zero row is skipped
        std::size_t i = 0;
        while (i < m && row[i] == s) row[i++] = 0;
        if (i == m) break;
        ++row[i];

        unsigned maxCoeff = 0;
        std::uint64_t maxDeg = 0;
        for (std::size_t j = 0; j < m; ++j) {
            if (row[j] == 0) continue;
            maxCoeff = std::max<unsigned>(maxCoeff, row[j]);
            maxDeg = std::max(maxDeg, degs[j]);
        }
        if (std::max<std::uint64_t>(maxCoeff, maxDeg) == s) block->rows.push_back(row);
    }

    // canonical order: scan coefficients from the largest monomial down
    std::sort(block->rows.begin(), block->rows.end(),
              [m](const std::vector<std::uint8_t>& a, const std::vector<std::uint8_t>& b) {
                  for (std::size_t j = m; j-- > 0;)
                      if (a[j] != b[j]) return a[j] < b[j];
                  return false;
              });
    return block;
}

GoodPoly materialize(const GoodPolyStream::Block& block, std::size_t rowIdx) {
    std::vector<std::pair<Monomial, BigInt>> terms;
    const auto& row = block.rows[rowIdx];
    for (std::size_t j = 0; j < row.size(); ++j)
        if (row[j] != 0) terms.emplace_back(block.monomials[j], row[j]);
    return GoodPoly::from_terms(terms);
}

}  // namespace

GoodPolyStream::GoodPolyStream(unsigned sizeBound, std::vector<unsigned> vars)
    : sizeBound_(sizeBound), vars_(std::move(vars)) {
    if (vars_.empty()) throw std::invalid_argument("enumeration needs at least one variable");
    std::sort(vars_.begin(), vars_.end());
    vars_.erase(std::unique(vars_.begin(), vars_.end()), vars_.end());
    if (vars_.front() == 0) throw std::invalid_argument("variable indices are 1-based");
}

void GoodPolyStream::restart() {
    currentSize_ = 1;
    index_ = 0;
    block_.reset();
}

void GoodPolyStream::load_block() {
    block_ = build_block(currentSize_, vars_);
    index_ = 0;
}

std::optional<GoodPoly> GoodPolyStream::next() {
    while (currentSize_ <= sizeBound_) {
        if (!block_) load_block();
        if (index_ < block_->rows.size()) return materialize(*block_, index_++);
        ++currentSize_;
        block_.reset();
    }
    return std::nullopt;
}

std::vector<GoodPoly> good_polys_of_size(unsigned s, const std::vector<unsigned>& vars) {
    std::vector<unsigned> sorted = vars;
    std::sort(sorted.begin(), sorted.end());
    sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
    if (sorted.empty() || sorted.front() == 0)
        throw std::invalid_argument("enumeration needs 1-based variables");
    auto block = build_block(s, sorted);
    std::vector<GoodPoly> out;
    out.reserve(block->rows.size());
    for (std::size_t i = 0; i < block->rows.size(); ++i) out.push_back(materialize(*block, i));
    return out;
}

std::vector<GoodPoly> enumerate_good(unsigned sizeBound, const std::vector<unsigned>& vars) {
    GoodPolyStream stream(sizeBound, vars);
    std::vector<GoodPoly> out;
    while (auto p = stream.next()) out.push_back(std::move(*p));
    return out;
}

GoodPoly to_univariate(const GoodPoly& p) {
    auto vars = p.variables();
    if (vars.empty()) return p;
    if (vars.size() > 1)
        throw std::invalid_argument("expected a univariate template, got " + p.str());
    unsigned var = *vars.begin();
    if (var == 1) return p;
    return p.substitute({{var, GoodPoly::variable(1)}});
}

}  // namespace rforge

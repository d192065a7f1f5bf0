#include "rforge/vdw.hpp"

#include <future>
#include <thread>

namespace rforge {

// ---------------------------------------------------------------------------
// Query plumbing

PvdwQuery PvdwQuery::over_T(PolyColoring oracle, std::vector<GoodPoly> family,
                            std::uint64_t budget) {
    for (auto& p : family) p = to_univariate(p);
    PvdwQuery q{GroundSet::SemiringT, Coloring(std::move(oracle)), std::move(family), budget};
    q.validate();
    return q;
}

PvdwQuery PvdwQuery::over_T(PolyColoring oracle, unsigned sizeBound, std::uint64_t budget) {
    return over_T(std::move(oracle), enumerate_good(sizeBound, {1}), budget);
}

PvdwQuery PvdwQuery::over_nat(NatColoring oracle, std::vector<GoodPoly> family,
                              std::uint64_t budget) {
    for (auto& p : family) p = to_univariate(p);
    PvdwQuery q{GroundSet::Naturals, Coloring(std::move(oracle)), std::move(family), budget};
    q.validate();
    return q;
}

void PvdwQuery::validate() const {
    if (family.empty()) throw std::invalid_argument("pvdW family must be nonempty");
    for (const auto& p : family) {
        if (p.is_zero()) throw std::invalid_argument("pvdW family members must be nonzero");
        if (p.max_var() > 1)
            throw std::invalid_argument("pvdW family templates are univariate in the difference");
    }
    if (budget < 1) throw std::invalid_argument("budget must be >= 1");
    if (domain == GroundSet::SemiringT && is_nat(oracle))
        throw std::invalid_argument("a query over T needs a polynomial coloring");
    if (domain == GroundSet::Naturals && !is_nat(oracle))
        throw std::invalid_argument("a query over the naturals needs an integer coloring");
}

// ---------------------------------------------------------------------------
// Verified witness constructors

PolyPvdwWitness make_verified_witness(const PolyColoring& oracle, const GoodPoly& x,
                                      const GoodPoly& d, const std::vector<GoodPoly>& family) {
    if (x.is_zero() || d.is_zero())
        throw WitnessVerificationError("pvdW witness parts must be nonzero");
    ColorId color = oracle(x);
    for (const auto& p : family) {
        GoodPoly elem = x + to_univariate(p).substitute({{1, d}});
        if (oracle(elem) != color)
            throw WitnessVerificationError("element " + elem.str() +
                                           " breaks the claimed pvdW witness");
    }
    return PolyPvdwWitness{x, d, color, family.size()};
}

NatPvdwWitness make_verified_witness(const NatColoring& oracle, const BigInt& x,
                                     const BigInt& d, const std::vector<GoodPoly>& family) {
    if (x < 1 || d < 1) throw WitnessVerificationError("pvdW witness parts must be positive");
    ColorId color = oracle(x);
    for (const auto& p : family) {
        BigInt elem = x + to_univariate(p).evaluate({{1, d}});
        if (oracle(elem) != color)
            throw WitnessVerificationError("element " + elem.str() +
                                           " breaks the claimed pvdW witness");
    }
    return NatPvdwWitness{x, d, color, family.size()};
}

// ---------------------------------------------------------------------------
// Candidate order

GradedPolyPairStream::GradedPolyPairStream(bool firstMayBeZero, unsigned var)
    : firstMayBeZero_(firstMayBeZero), var_(var) {
    firstSize_ = firstMayBeZero_ ? 0 : 1;
    total_ = firstSize_ + 1;
}

const std::vector<GoodPoly>& GradedPolyPairStream::block(unsigned s) {
    auto it = blocks_.find(s);
    if (it == blocks_.end()) {
        std::vector<GoodPoly> polys =
            s == 0 ? std::vector<GoodPoly>{GoodPoly::zero()} : good_polys_of_size(s, {var_});
        it = blocks_.emplace(s, std::move(polys)).first;
    }
    return it->second;
}

void GradedPolyPairStream::advance_sizes() {
    i_ = 0;
    j_ = 0;
    ++firstSize_;
    if (firstSize_ > total_ - 1) {
        ++total_;
        firstSize_ = firstMayBeZero_ ? 0 : 1;
    }
}

std::pair<GoodPoly, GoodPoly> GradedPolyPairStream::next() {
    while (true) {
        const auto& firsts = block(firstSize_);
        const auto& seconds = block(total_ - firstSize_);
        if (i_ < firsts.size() && j_ < seconds.size()) {
            auto out = std::make_pair(firsts[i_], seconds[j_]);
            if (++j_ == seconds.size()) {
                j_ = 0;
                ++i_;
            }
            return out;
        }
        advance_sizes();
    }
}

// ---------------------------------------------------------------------------
// Block-synchronous scan: candidates are tested in fixed-size blocks, workers
// race inside a block, and the earliest hit in candidate order wins. Results
// match the sequential scan exactly.

namespace {

template <class Candidate, class Pred>
std::optional<std::pair<Candidate, std::uint64_t>> scan_first(
    const std::function<Candidate()>& generate, const Pred& pred, std::uint64_t budget,
    unsigned jobs) {
    if (jobs <= 1) {
        for (std::uint64_t tried = 0; tried < budget; ++tried) {
            Candidate c = generate();
            if (pred(c)) return std::make_pair(std::move(c), tried + 1);
        }
        return std::nullopt;
    }
    const std::size_t blockSize = std::size_t(jobs) * 16;
    std::uint64_t consumed = 0;
    while (consumed < budget) {
        std::size_t take = std::size_t(std::min<std::uint64_t>(blockSize, budget - consumed));
        std::vector<Candidate> block;
        block.reserve(take);
        for (std::size_t i = 0; i < take; ++i) block.push_back(generate());
        std::vector<std::future<std::optional<std::size_t>>> futures;
        std::size_t chunk = (take + jobs - 1) / jobs;
        for (unsigned w = 0; w < jobs; ++w) {
            std::size_t lo = std::min(take, std::size_t(w) * chunk);
            std::size_t hi = std::min(take, lo + chunk);
            if (lo >= hi) break;
            futures.push_back(std::async(std::launch::async, [&, lo, hi]() {
                std::optional<std::size_t> hit;
                for (std::size_t i = lo; i < hi; ++i)
                    if (pred(block[i])) {
                        hit = i;
                        break;
                    }
                return hit;
            }));
        }
        std::optional<std::size_t> best;
        for (auto& f : futures) {
            auto hit = f.get();
            if (hit && (!best || *hit < *best)) best = hit;
        }
        if (best) return std::make_pair(block[*best], consumed + *best + 1);
        consumed += take;
    }
    return std::nullopt;
}

}  // namespace

// ---------------------------------------------------------------------------
// Searches

namespace {

PvdwResult find_over_T(const PvdwQuery& q) {
    const PolyColoring& oracle = as_poly(q.oracle);
    GradedPolyPairStream stream(/*firstMayBeZero=*/false);
    std::function<std::pair<GoodPoly, GoodPoly>()> gen = [&stream] { return stream.next(); };
    auto pred = [&](const std::pair<GoodPoly, GoodPoly>& cand) {
        const auto& [x, d] = cand;
        ColorId base = oracle(x);
        for (const auto& p : q.family)
            if (oracle(x + p.substitute({{1, d}})) != base) return false;
        return true;
    };
    auto hit = scan_first(gen, pred, q.budget, q.jobs);
    if (!hit) return PvdwResult{std::nullopt, q.budget};
    auto witness = make_verified_witness(oracle, hit->first.first, hit->first.second, q.family);
    return PvdwResult{PvdwWitness(std::move(witness)), hit->second};
}

PvdwResult find_over_nat(const PvdwQuery& q) {
    const NatColoring& oracle = as_nat(q.oracle);
    // (x, d) ordered by (x + d, x), both >= 1
    BigInt total = 2, x = 1;
    std::function<std::pair<BigInt, BigInt>()> gen = [&]() {
        std::pair<BigInt, BigInt> out{x, BigInt(total - x)};
        if (++x > total - 1) {
            ++total;
            x = 1;
        }
        return out;
    };
    auto pred = [&](const std::pair<BigInt, BigInt>& cand) {
        const auto& [cx, cd] = cand;
        ColorId base = oracle(cx);
        for (const auto& p : q.family)
            if (oracle(cx + p.evaluate({{1, cd}})) != base) return false;
        return true;
    };
    auto hit = scan_first(gen, pred, q.budget, q.jobs);
    if (!hit) return PvdwResult{std::nullopt, q.budget};
    auto witness = make_verified_witness(oracle, hit->first.first, hit->first.second, q.family);
    return PvdwResult{PvdwWitness(std::move(witness)), hit->second};
}

}  // namespace

PvdwResult find_pvdw_witness(const PvdwQuery& q) {
    q.validate();
    return q.domain == GroundSet::SemiringT ? find_over_T(q) : find_over_nat(q);
}

ShiftedPvdwResult find_shifted_pvdw(const PvdwQuery& q, const GoodPoly& anchor,
                                    const GoodPoly& scale, unsigned power) {
    q.validate();
    if (q.domain != GroundSet::SemiringT)
        throw std::invalid_argument("the shifted search lives in the semiring");
    if (anchor.is_zero() || scale.is_zero())
        throw std::invalid_argument("anchor and scale must be nonzero");
    if (power < 1) throw std::invalid_argument("power must be >= 1");

    const PolyColoring& oracle = as_poly(q.oracle);
    GoodPoly scalePow = scale.pow(power);

    struct Candidate {
        GoodPoly f, e, fTemplate, eTemplate;
    };
    GradedPolyPairStream stream(/*firstMayBeZero=*/true);
    std::function<Candidate()> gen = [&]() {
        auto [F, E] = stream.next();
        return Candidate{F.substitute({{1, scalePow}}), E.substitute({{1, scalePow}}), F, E};
    };
    auto pred = [&](const Candidate& cand) {
        GoodPoly base = anchor + cand.f;
        ColorId color = oracle(base);
        for (const auto& p : q.family)
            if (oracle(base + p.substitute({{1, cand.e}})) != color) return false;
        return true;
    };
    auto hit = scan_first(gen, pred, q.budget, q.jobs);
    if (!hit) return ShiftedPvdwResult{std::nullopt, q.budget};

    const Candidate& c = hit->first;
    GoodPoly x = anchor + c.f;
    auto core = make_verified_witness(oracle, x, c.e, q.family);
    // structural conformance: f and e really are instances of scale^power
    if (c.fTemplate.substitute({{1, scalePow}}) != c.f ||
        c.eTemplate.substitute({{1, scalePow}}) != c.e)
        throw WitnessVerificationError("shifted witness parts are not substitution instances");
    ShiftedPvdwWitness w{core.x,       core.d, core.color, core.checkedCount,
                         c.f,          c.e,    c.fTemplate, c.eTemplate,
                         power};
    return ShiftedPvdwResult{std::move(w), hit->second};
}

}  // namespace rforge

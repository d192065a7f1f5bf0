#include "rforge/sumprod.hpp"

#include <algorithm>
#include <future>
#include <numeric>
#include <set>

namespace rforge {

SizeSchedule::SizeSchedule(std::vector<unsigned> values) : values_(std::move(values)) {
    if (values_.empty()) throw std::invalid_argument("schedule needs at least one entry");
    for (std::size_t i = 0; i < values_.size(); ++i) {
        if (values_[i] < 1) throw std::invalid_argument("schedule entries must be >= 1");
        if (i > 0 && values_[i] > values_[i - 1])
            throw std::invalid_argument("schedule must be nonincreasing");
    }
}

GoodPoly TowerWitness::product_times_x(unsigned i) const {
    if (i > k()) throw std::out_of_range("level beyond tower height");
    GoodPoly out = x;
    for (unsigned j = 0; j < i; ++j) out = out * a[j];
    return out;
}

std::vector<GoodPoly> TowerWitness::condition_tuple(unsigned i) const {
    if (i >= k()) throw std::out_of_range("condition levels run from 0 to k-1");
    std::vector<GoodPoly> tuple;
    tuple.push_back(a[i]);  // a_{i+1}
    for (unsigned j = i + 1; j < k(); ++j) tuple.push_back(b[j]);  // b_{i+2}..b_k
    return tuple;
}

// ---------------------------------------------------------------------------
// Verification

namespace {

// first failure (by index) across chunks, or nullopt; deterministic
std::optional<std::size_t> parallel_first_failure(
    std::size_t count, unsigned jobs, const std::function<bool(std::size_t)>& check) {
    if (jobs <= 1 || count < 64) {
        for (std::size_t i = 0; i < count; ++i)
            if (!check(i)) return i;
        return std::nullopt;
    }
    std::vector<std::future<std::optional<std::size_t>>> futures;
    std::size_t chunk = (count + jobs - 1) / jobs;
    for (unsigned w = 0; w < jobs; ++w) {
        std::size_t lo = std::min(count, std::size_t(w) * chunk);
        std::size_t hi = std::min(count, lo + chunk);
        if (lo >= hi) break;
        futures.push_back(std::async(std::launch::async, [&, lo, hi]() {
            std::optional<std::size_t> bad;
            for (std::size_t i = lo; i < hi; ++i)
                if (!check(i)) {
                    bad = i;
                    break;
                }
            return bad;
        }));
    }
    std::optional<std::size_t> best;
    for (auto& f : futures) {
        auto bad = f.get();
        if (bad && (!best || *bad < *best)) best = bad;
    }
    return best;
}

}  // namespace

TowerCheck verify_tower_conditions(const TowerWitness& tw, unsigned jobs) {
    if (tw.schedule.levels() != tw.k())
        return {false, 0, "schedule length does not match tower height"};
    // structural chain a_i = a_{i-1} * b_i
    for (unsigned i = 0; i < tw.k(); ++i) {
        GoodPoly expect = i == 0 ? tw.b[0] : tw.a[i - 1] * tw.b[i];
        if (!(tw.a[i] == expect)) return {false, 0, "a-chain is not the running product"};
    }
    std::uint64_t checked = 0;
    for (unsigned i = 0; i < tw.k(); ++i) {
        GoodPoly base = tw.product_times_x(i);
        ColorId baseColor = tw.oracle(base);
        auto tuple = tw.condition_tuple(i);
        std::vector<unsigned> vars(tuple.size());
        std::iota(vars.begin(), vars.end(), 1u);
        auto polys = enumerate_good(tw.schedule.at(i), vars);
        std::map<unsigned, GoodPoly> assignment;
        for (std::size_t j = 0; j < tuple.size(); ++j) assignment.emplace(unsigned(j + 1), tuple[j]);
        auto bad = parallel_first_failure(polys.size(), jobs, [&](std::size_t idx) {
            return tw.oracle(base + polys[idx].substitute(assignment)) == baseColor;
        });
        checked += polys.size();
        if (bad)
            return {false, checked,
                    "level " + std::to_string(i) + " fails at P = " + polys[*bad].str()};
    }
    return {true, checked, ""};
}

// ---------------------------------------------------------------------------
// Construction

TowerResult build_tower(const PolyColoring& oracle, unsigned k, const SizeSchedule& schedule,
                        std::uint64_t budget, unsigned jobs) {
    if (schedule.levels() != k)
        throw std::invalid_argument("schedule must have k+1 entries");

    TowerResult out;
    TowerWitness tw{oracle, schedule, GoodPoly::variable(1), {}, {}, false};

    for (unsigned level = 0; level < k; ++level) {
        GoodPoly scale = level == 0 ? GoodPoly::variable(1) : tw.a[level - 1];
        unsigned power = level + 1;
        GoodPoly scalePow = scale.pow(power);
        auto family = enumerate_good(schedule.at(level + 1), {1});

        bool hasProd = level > 0;
        GoodPoly prod;
        if (hasProd) {
            prod = tw.a[0];
            for (unsigned j = 1; j < level; ++j) prod = prod * tw.a[j];
        }
        GoodPoly base = hasProd ? prod * tw.x : tw.x;

        GradedPolyPairStream stream(/*firstMayBeZero=*/true);
        bool accepted = false;
        while (out.tried < budget) {
            auto [F, E] = stream.next();
            ++out.tried;
            GoodPoly f = F.substitute({{1, scalePow}});
            GoodPoly e = E.substitute({{1, scalePow}});

            GoodPoly shifted = base + f;
            ColorId color = oracle(shifted);
            bool top = true;
            for (const auto& p : family)
                if (oracle(shifted + p.substitute({{1, e}})) != color) {
                    top = false;
                    break;
                }
            if (!top) continue;

            auto xShift = hasProd ? divide_exact(f, prod) : std::optional<GoodPoly>(f);
            if (!xShift) {
                ++out.skippedIndivisible;
                continue;
            }
            auto newB = level == 0 ? std::optional<GoodPoly>(e) : divide_exact(e, tw.a[level - 1]);
            if (!newB || newB->is_zero()) {
                ++out.skippedIndivisible;
                continue;
            }

            TowerWitness cand = tw;
            cand.schedule = SizeSchedule(std::vector<unsigned>(
                schedule.values().begin(), schedule.values().begin() + level + 2));
            cand.x = tw.x + *xShift;
            cand.b.push_back(*newB);
            cand.a.push_back(level == 0 ? *newB : tw.a[level - 1] * *newB);
            // the substitution algebra must close exactly
            if (!(cand.a.back() == e))
                throw std::logic_error("a_{k+1} != e after exact division");
            if (hasProd && !(*xShift * prod == f))
                throw std::logic_error("x-shift does not multiply back to f");

            auto check = verify_tower_conditions(cand, jobs);
            out.conditionsChecked += check.conditionsChecked;
            if (!check.ok) continue;

            cand.verified = true;
            tw = std::move(cand);
            accepted = true;
            break;
        }
        if (!accepted) {
            out.failure = "budget exhausted while extending level " + std::to_string(level);
            return out;
        }
    }
    tw.verified = true;
    out.tower = std::move(tw);
    return out;
}

// ---------------------------------------------------------------------------
// Pattern witnesses

PatternWitness make_verified_pattern_witness(const PolyColoring& oracle,
                                             std::vector<GoodPoly> templates,
                                             std::map<unsigned, GoodPoly> assignment) {
    if (templates.empty()) throw std::invalid_argument("a pattern needs templates");
    PatternWitness w;
    w.templates = std::move(templates);
    w.assignment = std::move(assignment);
    for (const auto& t : w.templates) {
        GoodPoly elem = t.substitute(w.assignment);
        if (elem.is_zero())
            throw WitnessVerificationError("pattern element vanished: " + t.str());
        w.elements.push_back(std::move(elem));
    }
    w.color = oracle(w.elements.front());
    for (const auto& elem : w.elements)
        if (oracle(elem) != w.color)
            throw WitnessVerificationError("element " + elem.str() +
                                           " breaks the claimed monochromatic pattern");
    return w;
}

ExtractOutcome extract_pattern(const TowerWitness& tw, const std::vector<GoodPoly>& rawTargets) {
    if (!tw.verified) throw std::invalid_argument("extract_pattern needs a verified tower");
    if (rawTargets.empty()) throw std::invalid_argument("extract_pattern needs targets");
    std::vector<GoodPoly> targets;
    for (const auto& t : rawTargets) {
        if (t.is_zero()) throw std::invalid_argument("targets must be nonzero");
        targets.push_back(to_univariate(t));
    }

    ExtractOutcome out;
    const unsigned k = tw.k();

    std::vector<GoodPoly> prods;
    std::vector<ColorId> colors;
    for (unsigned i = 0; i <= k; ++i) {
        prods.push_back(tw.product_times_x(i));
        colors.push_back(tw.oracle(prods.back()));
    }

    BigInt maxTarget = 0;
    for (const auto& t : targets) maxTarget = std::max(maxTarget, t.size_bound());

    // earliest collision first; among matches prefer the tightest block,
    // which keeps the composed sizes smallest
    for (unsigned l1 = 1; l1 <= k; ++l1) {
        for (unsigned gap = 1; gap <= l1; ++gap) {
            unsigned l0 = l1 - gap;
            if (colors[l0] != colors[l1]) continue;

            // y = a_{l0+1} ... a_{l1} as a monomial in the level-l0 tuple
            Monomial m;
            for (unsigned j = 1; j <= gap; ++j)
                m = m.times(Monomial::variable(j, gap - j + 1));
            GoodPoly grouped = GoodPoly::term(m, 1);

            bool fits = true;
            for (const auto& t : targets) {
                GoodPoly composed = t.substitute({{1, grouped}});
                if (composed.size_bound() > tw.schedule.at(l0)) {
                    fits = false;
                    break;
                }
            }
            if (!fits) continue;

            GoodPoly y = tw.a[l0];
            for (unsigned j = l0 + 1; j < l1; ++j) y = y * tw.a[j];

            GoodPoly px = GoodPoly::variable(1);
            GoodPoly py = GoodPoly::variable(2);
            std::vector<GoodPoly> templates;
            templates.push_back(px);
            for (const auto& t : targets) templates.push_back(px + t.substitute({{1, py}}));
            templates.push_back(px * py);

            PatternWitness w = make_verified_pattern_witness(
                tw.oracle, std::move(templates), {{1, prods[l0]}, {2, y}});
            if (!(prods[l0] * y == prods[l1]))
                throw std::logic_error("grouped product does not reach the upper level");

            out.witness = std::move(w);
            out.lowerLevel = l0;
            out.upperLevel = l1;
            for (unsigned i = 0; i <= k; ++i)
                if (colors[i] == colors[l0]) out.monochromeLevels.push_back(i);
            return out;
        }
    }

    out.failure = "no same-colored level pair supports the requested targets";
    out.neededLevels = std::max<unsigned>(k + 1, tw.oracle.color_count());
    out.neededSize = unsigned(std::min<BigInt>(maxTarget, BigInt(1'000'000)).convert_to<unsigned>());
    return out;
}

// ---------------------------------------------------------------------------
// Three-color deduction chain

namespace {

TraceStep observe(const PolyColoring& oracle, std::string stage, std::string note,
                  std::vector<GoodPoly> elements) {
    TraceStep step;
    step.stage = std::move(stage);
    step.note = std::move(note);
    step.elements = std::move(elements);
    for (const auto& e : step.elements) {
        step.values.push_back(e.evaluate_all(2));
        step.colors.push_back(oracle(e));
    }
    return step;
}

// probe {a, a+b, ab}: a witness iff all three observed colors agree
std::optional<PatternWitness> probe_product(const PolyColoring& oracle, const GoodPoly& a,
                                            const GoodPoly& b, const std::string& stage,
                                            const std::string& note,
                                            std::vector<TraceStep>& steps) {
    GoodPoly sum = a + b;
    GoodPoly prod = a * b;
    steps.push_back(observe(oracle, stage, note, {a, sum, prod}));
    const TraceStep& s = steps.back();
    if (s.colors[0] == s.colors[1] && s.colors[1] == s.colors[2]) {
        GoodPoly px = GoodPoly::variable(1);
        GoodPoly py = GoodPoly::variable(2);
        return make_verified_pattern_witness(oracle, {px, px + py, px * py},
                                             {{1, a}, {2, b}});
    }
    return std::nullopt;
}

std::vector<GoodPoly> with_extras(std::vector<GoodPoly> family,
                                  const std::vector<GoodPoly>& extras) {
    std::set<GoodPoly> all(family.begin(), family.end());
    all.insert(extras.begin(), extras.end());
    return {all.begin(), all.end()};
}

}  // namespace

TraceResult three_color_trace(const PolyColoring& oracle, const TraceOptions& opts) {
    if (oracle.color_count() != 3)
        throw std::invalid_argument("the deduction chain needs exactly 3 colors");

    TraceResult out;
    const GoodPoly t = GoodPoly::variable(1);

    // Stage A: base family. x + P(d) monochromatic with x for s(P) <= c0.
    auto baseFamily = enumerate_good(opts.baseFamilySize, {1});
    PvdwQuery qa = PvdwQuery::over_T(oracle, baseFamily, opts.budget);
    qa.jobs = opts.jobs;
    PvdwResult ra = find_pvdw_witness(qa);
    out.tried = ra.tried;
    if (!ra.found()) return out;
    const GoodPoly x = ra.poly().x;
    const GoodPoly d = ra.poly().d;
    const ColorId red = ra.poly().color;

    {
        std::vector<GoodPoly> elems{x};
        for (const auto& p : baseFamily) elems.push_back(x + p.substitute({{1, d}}));
        out.trace.steps.push_back(observe(
            oracle, "base-family",
            "x and every x+P(d) with s(P) <= " + std::to_string(opts.baseFamilySize) +
                " share the base color",
            std::move(elems)));
    }

    // Stage B: probe d*(x + P(d)) for the base color. P and P+t must both
    // stay inside the base family so that a and a+d are covered.
    {
        std::vector<GoodPoly> probed;
        for (std::size_t pi = 0; pi <= baseFamily.size(); ++pi) {
            GoodPoly p = pi == 0 ? GoodPoly::zero() : baseFamily[pi - 1];
            if (!(p + t).size_at_most(opts.baseFamilySize)) continue;
            GoodPoly aElem = pi == 0 ? x : x + p.substitute({{1, d}});
            GoodPoly ab = aElem * d;
            probed.push_back(ab);
            if (oracle(ab) == red) {
                auto w = probe_product(oracle, aElem, d, "product-hit",
                                       "d*(x+P(d)) takes the base color", out.trace.steps);
                if (w) {
                    out.witness = std::move(w);
                    return out;
                }
            }
        }
        out.trace.steps.push_back(observe(oracle, "product-probes",
                                          "all d*(x+P(d)) avoid the base color",
                                          std::move(probed)));
    }

    // Stage C + D: second family (f, e) of the form d*F(d), d*E(d), then the
    // forced chain. A failed chain (possible only when the second family
    // landed on the base color) resumes the candidate scan.
    const unsigned c1 = opts.chainFamilySize;
    const GoodPoly u = GoodPoly::variable(1);
    const GoodPoly v = GoodPoly::variable(2);
    auto blueFamily = with_extras(enumerate_good(c1, {1}),
                                  {t, t + t, t.pow(3)});
    auto redFamily = with_extras(enumerate_good(c1, {1, 2}),
                                 {v, u.pow(2) * v, v + u.pow(2) * v, u.pow(4) * v.pow(3)});

    GradedPolyPairStream stream(/*firstMayBeZero=*/true);
    while (out.tried < opts.budget) {
        auto [F, E] = stream.next();
        ++out.tried;
        GoodPoly fOverD = F.substitute({{1, d}});
        GoodPoly eOverD = E.substitute({{1, d}});
        GoodPoly f = F.is_zero() ? GoodPoly::zero() : d * fOverD;
        GoodPoly e = d * eOverD;

        GoodPoly blueBase = d * x + f;
        ColorId blue = oracle(blueBase);
        bool ok = true;
        for (const auto& q : blueFamily)
            if (oracle(blueBase + q.substitute({{1, e}})) != blue) {
                ok = false;
                break;
            }
        if (!ok) continue;

        GoodPoly xr = x + fOverD;  // renamed base point
        if (oracle(xr) != red) continue;
        for (const auto& p : redFamily)
            if (oracle(xr + p.substitute({{1, d}, {2, eOverD}})) != red) {
                ok = false;
                break;
            }
        if (!ok) continue;

        std::vector<TraceStep> steps;
        steps.push_back(observe(
            oracle, "second-family",
            "d*x+f+Q(e) is monochromatic away from the base color and x+f/d+P(d,e/d) keeps it; " +
                std::to_string(blueFamily.size()) + "+" + std::to_string(redFamily.size()) +
                " conditions checked",
            {xr, blueBase, blueBase + e}));

        const GoodPoly de = d * e;
        std::optional<PatternWitness> w;
        auto finish = [&](std::optional<PatternWitness> found) {
            if (found) {
                out.trace.steps.insert(out.trace.steps.end(), steps.begin(), steps.end());
                out.witness = std::move(found);
            }
            return found.has_value();
        };

        w = probe_product(oracle, xr, de, "chain-1", "x*(de) against the base color", steps);
        if (finish(std::move(w))) return out;
        w = probe_product(oracle, xr + eOverD, de, "chain-2",
                          "(x+e/d)*(de) against the base color", steps);
        if (finish(std::move(w))) return out;
        w = probe_product(oracle, d * xr, e, "chain-3", "(dx)*e against the second color",
                          steps);
        if (finish(std::move(w))) return out;
        w = probe_product(oracle, d * xr + e, e, "chain-4",
                          "(dx+e)*e against the second color", steps);
        if (finish(std::move(w))) return out;

        // d*e*x and d*e*x + e^2 are now pinned to the third color
        GoodPoly dex = de * xr;
        steps.push_back(observe(oracle, "third-color",
                                "dex and dex+e^2 avoid both earlier colors",
                                {dex, dex + e * e}));

        w = probe_product(oracle, dex, e * e, "chain-5", "(dex)*e^2 against the third color",
                          steps);
        if (finish(std::move(w))) return out;
        w = probe_product(oracle, xr, de * e * e, "chain-6", "x*(de^3) against the base color",
                          steps);
        if (finish(std::move(w))) return out;
        w = probe_product(oracle, d * xr, e.pow(3), "chain-7",
                          "(dx)*e^3 against the second color", steps);
        if (finish(std::move(w))) return out;

        // reachable only when the second family collapsed onto the base
        // color; keep scanning
        if (blue != red)
            throw std::logic_error("three-color chain exhausted with distinct colors");
    }
    return out;
}

bool replay_trace(const ThreeColorTrace& trace, const PolyColoring& oracle) {
    for (const auto& step : trace.steps) {
        if (step.elements.size() != step.colors.size() ||
            step.elements.size() != step.values.size())
            return false;
        for (std::size_t i = 0; i < step.elements.size(); ++i) {
            if (oracle(step.elements[i]) != step.colors[i]) return false;
            if (step.elements[i].evaluate_all(2) != step.values[i]) return false;
        }
    }
    return true;
}

}  // namespace rforge

#include "rforge/brute.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>

namespace rforge {

// ---------------------------------------------------------------------------
// Pattern families

void PatternFamily::validate() const {
    if (templates.empty()) throw std::invalid_argument("pattern needs templates");
    if (policies.empty()) throw std::invalid_argument("pattern needs at least one variable");
    unsigned m = var_count();
    std::vector<bool> used(m + 1, false);
    for (const auto& t : templates) {
        if (t.is_zero()) throw std::invalid_argument("pattern templates must be nonzero");
        if (t.max_var() > m)
            throw std::invalid_argument("template uses a variable beyond the declared count");
        for (unsigned v : t.variables()) used[v] = true;
    }
    for (unsigned v = 1; v <= m; ++v)
        if (!used[v])
            throw std::invalid_argument("pattern variable " + std::to_string(v) +
                                        " is unused");
    for (const auto& p : policies)
        if (p.minValue < 1) throw std::invalid_argument("variable minima must be >= 1");
}

namespace {

GoodPoly px() { return GoodPoly::variable(1); }
GoodPoly py() { return GoodPoly::variable(2); }

}  // namespace

PatternFamily PatternFamily::schur() {
    PatternFamily f{"schur", {px(), py(), px() + py()}, {VarPolicy{1}, VarPolicy{1}}};
    f.validate();
    return f;
}

PatternFamily PatternFamily::ap3() {
    PatternFamily f{"ap3", {px(), px() + py(), px() + py() + py()}, {VarPolicy{1}, VarPolicy{1}}};
    f.validate();
    return f;
}

PatternFamily PatternFamily::sumprod(bool allowUnitY) {
    PatternFamily f{"sumprod",
                    {px(), px() + py(), px() * py()},
                    {VarPolicy{1}, VarPolicy{allowUnitY ? 1 : 2}}};
    f.validate();
    return f;
}

PatternFamily PatternFamily::sumprod_corollary(bool allowUnitY) {
    PatternFamily f{"sumprod-corollary",
                    {px() + py(), px() * py()},
                    {VarPolicy{1}, VarPolicy{allowUnitY ? 1 : 2}}};
    f.validate();
    return f;
}

PatternFamily PatternFamily::parse(std::string_view spec, bool allowUnitY) {
    if (spec == "schur") return schur();
    if (spec == "ap3") return ap3();
    if (spec == "sumprod") return sumprod(allowUnitY);
    if (spec == "sumprod-corollary") return sumprod_corollary(allowUnitY);

    PatternFamily f;
    f.name = std::string(spec);
    std::size_t start = 0;
    while (start <= spec.size()) {
        std::size_t semi = spec.find(';', start);
        std::string_view piece =
            semi == std::string_view::npos ? spec.substr(start) : spec.substr(start, semi - start);
        std::size_t lo = piece.find_first_not_of(" \t");
        if (lo != std::string_view::npos) {
            std::size_t hi = piece.find_last_not_of(" \t");
            f.templates.push_back(GoodPoly::parse(piece.substr(lo, hi - lo + 1)));
        }
        if (semi == std::string_view::npos) break;
        start = semi + 1;
    }
    unsigned m = 0;
    for (const auto& t : f.templates) m = std::max(m, t.max_var());
    f.policies.assign(m, VarPolicy{1});
    f.validate();
    return f;
}

// ---------------------------------------------------------------------------
// Fast windowed evaluation: values capped at the window bound, so products
// never overflow. Returns 0 when the value exceeds N (0 is outside [1, N]).

namespace {

std::uint64_t eval_capped(const GoodPoly& p, const std::vector<std::uint64_t>& values,
                          std::uint64_t N) {
    std::uint64_t total = 0;
    for (const auto& [m, coeff] : p.terms()) {
        if (coeff > N) return 0;
        std::uint64_t term = coeff.convert_to<std::uint64_t>();
        for (const auto& [var, exp] : m.factors()) {
            std::uint64_t v = values[var - 1];
            for (unsigned i = 0; i < exp; ++i) {
                term *= v;
                if (term > N) return 0;
            }
        }
        total += term;
        if (total > N) return 0;
    }
    return total;
}

struct InstanceTable {
    // byMax[v]: instances whose largest element is v, each a sorted list of
    // distinct element values
    std::vector<std::vector<std::vector<std::uint32_t>>> byMax;
    std::uint64_t instanceCount = 0;
};

InstanceTable build_instances(const PatternFamily& f, unsigned cap) {
    InstanceTable tbl;
    tbl.byMax.resize(std::size_t(cap) + 1);
    const unsigned m = f.var_count();
    if (double(cap) > 2e6 || std::pow(double(cap), double(m)) > 5e9)
        throw SearchSpaceError("instance table exceeds desk-scale cap");

    std::set<std::vector<std::uint32_t>> seen;
    std::vector<std::uint64_t> values(m, 0);
    std::vector<std::uint64_t> minima(m, 1);
    for (unsigned v = 0; v < m; ++v)
        minima[v] = f.policies[v].minValue.convert_to<std::uint64_t>();

    // odometer over assignments within [min_i, cap]
    for (unsigned v = 0; v < m; ++v) values[v] = minima[v];
    if (std::any_of(minima.begin(), minima.end(),
                    [cap](std::uint64_t v) { return v > cap; }))
        return tbl;
    while (true) {
        std::vector<std::uint32_t> inst;
        bool inside = true;
        for (const auto& t : f.templates) {
            std::uint64_t e = eval_capped(t, values, cap);
            if (e == 0) {
                inside = false;
                break;
            }
            inst.push_back(std::uint32_t(e));
        }
        if (inside) {
            std::sort(inst.begin(), inst.end());
            inst.erase(std::unique(inst.begin(), inst.end()), inst.end());
            if (seen.insert(inst).second) {
                tbl.byMax[inst.back()].push_back(inst);
                ++tbl.instanceCount;
            }
        }
        unsigned v = 0;
        while (v < m && values[v] == cap) values[v] = minima[v], ++v;
        if (v == m) break;
        ++values[v];
    }
    return tbl;
}

struct Backtracker {
    unsigned colors;
    const InstanceTable& tbl;
    std::vector<std::uint8_t> assigned;  // 1-based; 0xFF = uncolored
    std::uint64_t nodes = 0;

    Backtracker(unsigned n, const InstanceTable& t) : colors(n), tbl(t) {}

    bool monochromatic(const std::vector<std::uint32_t>& inst, std::uint8_t c) const {
        for (std::uint32_t e : inst)
            if (assigned[e] != c) return false;
        return true;
    }

    bool dfs(unsigned pos, unsigned N, unsigned used) {
        if (pos > N) return true;
        unsigned limit = std::min(used, colors - 1);
        for (std::uint8_t c = 0; c <= limit; ++c) {
            ++nodes;
            assigned[pos] = c;
            bool conflict = false;
            for (const auto& inst : tbl.byMax[pos])
                if (monochromatic(inst, c)) {
                    conflict = true;
                    break;
                }
            if (!conflict && dfs(pos + 1, N, std::max(used, unsigned(c) + 1))) return true;
        }
        assigned[pos] = 0xFF;
        return false;
    }

    // lexicographically least avoiding coloring of [N], if any
    std::optional<std::vector<unsigned>> solve(unsigned N) {
        assigned.assign(std::size_t(N) + 1, 0xFF);
        if (!dfs(1, N, 0)) return std::nullopt;
        std::vector<unsigned> out(N);
        for (unsigned i = 1; i <= N; ++i) out[i - 1] = assigned[i];
        return out;
    }
};

}  // namespace

// ---------------------------------------------------------------------------
// Public operations over the naturals

std::optional<NatWitness> find_instance(const NatColoring& coloring, const PatternFamily& f,
                                        unsigned N) {
    f.validate();
    const unsigned m = f.var_count();
    if (N == 0) return std::nullopt;
    std::vector<std::uint64_t> minima(m, 1);
    for (unsigned v = 0; v < m; ++v)
        minima[v] = f.policies[v].minValue.convert_to<std::uint64_t>();
    if (std::any_of(minima.begin(), minima.end(), [N](std::uint64_t v) { return v > N; }))
        return std::nullopt;

    // row-major: the first variable is the slowest index
    std::vector<std::uint64_t> values = minima;
    while (true) {
        bool inside = true;
        std::vector<std::uint64_t> elems;
        for (const auto& t : f.templates) {
            std::uint64_t e = eval_capped(t, values, N);
            if (e == 0) {
                inside = false;
                break;
            }
            elems.push_back(e);
        }
        if (inside) {
            ColorId c0 = coloring(BigInt(elems[0]));
            bool mono = true;
            for (std::size_t i = 1; i < elems.size(); ++i)
                if (coloring(BigInt(elems[i])) != c0) {
                    mono = false;
                    break;
                }
            if (mono) {
                NatWitness w;
                for (std::uint64_t v : values) w.assignment.emplace_back(v);
                for (std::uint64_t e : elems) w.elements.emplace_back(e);
                w.color = c0;
                return w;
            }
        }
        // advance the last variable fastest
        std::size_t v = m;
        while (v-- > 0) {
            if (values[v] < N) {
                ++values[v];
                break;
            }
            values[v] = minima[v];
            if (v == 0) return std::nullopt;
        }
    }
}

AvoidanceReport min_unavoidable_N(const PatternFamily& f, unsigned colors, unsigned cap) {
    f.validate();
    if (colors < 1) throw std::invalid_argument("need at least one color");
    if (cap < 1) throw std::invalid_argument("cap must be >= 1");

    AvoidanceReport report;
    report.pattern = f.name;
    for (const auto& t : f.templates) report.templates.push_back(t.str(PolyStyle::Pattern));
    report.colors = colors;
    report.cap = cap;

    InstanceTable tbl = build_instances(f, cap);
    Backtracker bt(colors, tbl);

    std::vector<unsigned> avoiding;  // of [N-1]
    for (unsigned N = 1; N <= cap; ++N) {
        auto solved = bt.solve(N);
        if (!solved) {
            report.unavoidable = true;
            report.N = N;
            report.avoidingColoring = std::move(avoiding);
            break;
        }
        avoiding = std::move(*solved);
    }
    if (!report.unavoidable) {
        report.N = cap;
        report.avoidingColoring = std::move(avoiding);
    }
    report.nodesExplored = bt.nodes;

    // double-entry: the attached coloring must itself scan clean
    unsigned domain = report.unavoidable ? report.N - 1 : report.cap;
    if (domain > 0) {
        NatColoring check = table_coloring(report.avoidingColoring, colors);
        if (find_instance(check, f, domain))
            throw std::logic_error("backtracker returned a non-avoiding coloring");
    }
    report.rechecked = true;
    return report;
}

// ---------------------------------------------------------------------------
// Polynomial regions

std::vector<GoodPoly> PolyRegion::members() const {
    if (sizeBound == 0) return {};
    std::vector<unsigned> vars(maxVar);
    std::iota(vars.begin(), vars.end(), 1u);
    auto all = enumerate_good(sizeBound, vars);
    if (!perVarDegreeCap) return all;
    std::vector<GoodPoly> out;
    for (auto& p : all)
        if (p.in_Pd(*perVarDegreeCap)) out.push_back(std::move(p));
    return out;
}

bool PolyRegion::contains(const GoodPoly& p) const {
    if (p.is_zero()) return false;
    if (!p.size_at_most(sizeBound)) return false;
    if (p.max_var() > maxVar) return false;
    if (perVarDegreeCap && !p.in_Pd(*perVarDegreeCap)) return false;
    return true;
}

std::optional<PatternWitness> find_instance(const PolyColoring& coloring,
                                            const PatternFamily& f, const PolyRegion& region) {
    f.validate();
    const unsigned m = f.var_count();
    auto members = region.members();
    if (members.empty()) return std::nullopt;
    if (std::pow(double(members.size()), double(m)) > 5e9)
        throw SearchSpaceError("region scan exceeds desk-scale cap");

    std::vector<std::size_t> idx(m, 0);
    while (true) {
        std::map<unsigned, GoodPoly> assignment;
        for (unsigned v = 0; v < m; ++v) assignment.emplace(v + 1, members[idx[v]]);

        bool inside = true;
        std::vector<GoodPoly> elems;
        for (const auto& t : f.templates) {
            GoodPoly e = t.substitute(assignment);
            if (!region.contains(e)) {
                inside = false;
                break;
            }
            elems.push_back(std::move(e));
        }
        if (inside) {
            ColorId c0 = coloring(elems[0]);
            bool mono = true;
            for (std::size_t i = 1; i < elems.size(); ++i)
                if (coloring(elems[i]) != c0) {
                    mono = false;
                    break;
                }
            if (mono)
                return make_verified_pattern_witness(coloring, f.templates, assignment);
        }
        std::size_t v = m;
        bool done = true;
        while (v-- > 0) {
            if (++idx[v] < members.size()) {
                done = false;
                break;
            }
            idx[v] = 0;
            if (v == 0) break;
        }
        if (done) return std::nullopt;
    }
}

ExerciseReport check_p1_exercise(unsigned sizeBound, unsigned maxVar) {
    ExerciseReport report;
    report.sizeBound = sizeBound;
    report.maxVar = maxVar;

    PolyRegion region{sizeBound, maxVar, 1u};
    auto members = region.members();
    report.regionSize = members.size();
    report.assignmentsScanned =
        std::uint64_t(members.size()) * std::uint64_t(members.size());

    PatternFamily quad{"xyxy",
                       {GoodPoly::variable(1), GoodPoly::variable(2),
                        GoodPoly::variable(1) + GoodPoly::variable(2),
                        GoodPoly::variable(1) * GoodPoly::variable(2)},
                       {VarPolicy{1}, VarPolicy{1}}};
    quad.validate();

    auto hit = find_instance(reducibility_coloring(), quad, region);
    report.noInstance = !hit.has_value();
    report.counterexample = std::move(hit);
    return report;
}

}  // namespace rforge

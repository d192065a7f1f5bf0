// ramsey-forge: witness search, avoidance numbers and the multilinear
// exercise over one command-line surface. All results are JSON-first with a
// short human summary on stderr; identical invocations produce identical
// output bytes.

#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "rforge/brute.hpp"
#include "rforge/coloring.hpp"
#include "rforge/json_io.hpp"
#include "rforge/sumprod.hpp"
#include "rforge/vdw.hpp"

namespace {

// stable exit codes, documented in the README
constexpr int kOk = 0;
constexpr int kSpecError = 2;
constexpr int kBudgetExhausted = 3;
constexpr int kInsufficientTower = 4;
constexpr int kCapReached = 5;
constexpr int kCounterexample = 6;
constexpr int kUsage = 64;

using rforge::GoodPoly;

// the theorem-shaped patterns find-witness accepts: x | x*y | x+P(y)
struct TheoremPattern {
    std::string spec;
    std::vector<GoodPoly> requested;  // pattern-variable templates to report
    std::vector<GoodPoly> targets;    // the P_i, univariate
};

TheoremPattern parse_theorem_pattern(const std::string& spec) {
    const GoodPoly x = GoodPoly::variable(1);
    const GoodPoly y = GoodPoly::variable(2);
    const GoodPoly t = GoodPoly::variable(1);

    TheoremPattern out;
    out.spec = spec;
    if (spec == "sumprod") {
        out.requested = {x, x + y, x * y};
        out.targets = {t};
        return out;
    }
    if (spec == "sumprod-corollary") {
        out.requested = {x + y, x * y};
        out.targets = {t};
        return out;
    }
    if (spec == "ap3") {
        out.requested = {x, x + y, x + y + y};
        out.targets = {t, t + t};
        return out;
    }
    if (spec == "schur")
        throw rforge::ParseError("'schur' contains a bare y and has no x+P(y) form here", 0,
                                 "sumprod | sumprod-corollary | ap3 | custom x+P(y) list");

    std::size_t start = 0;
    while (start <= spec.size()) {
        std::size_t semi = spec.find(';', start);
        std::string piece = semi == std::string::npos ? spec.substr(start)
                                                      : spec.substr(start, semi - start);
        if (piece.find_first_not_of(" \t") != std::string::npos) {
            GoodPoly tpl = GoodPoly::parse(piece);
            if (tpl == x || tpl == x * y) {
                out.requested.push_back(tpl);
            } else {
                // must be x + P(y): one pure-x term with coefficient 1, the
                // rest pure powers of y
                std::vector<std::pair<rforge::Monomial, rforge::BigInt>> pTerms;
                bool sawX = false, bad = false;
                for (const auto& [m, c] : tpl.terms()) {
                    if (m == rforge::Monomial::variable(1) && c == 1) {
                        sawX = true;
                    } else if (m.exponent(1) == 0 && m.max_var() <= 2 && !m.is_constant()) {
                        pTerms.emplace_back(m, c);
                    } else {
                        bad = true;
                    }
                }
                if (!sawX || bad || pTerms.empty())
                    throw rforge::ParseError("template '" + piece +
                                                 "' is not of the form x, x*y or x+P(y)",
                                             start, "x | x*y | x+P(y)");
                out.requested.push_back(tpl);
                out.targets.push_back(
                    rforge::to_univariate(GoodPoly::from_terms(pTerms)));
            }
        }
        if (semi == std::string::npos) break;
        start = semi + 1;
    }
    if (out.requested.empty())
        throw rforge::ParseError("empty pattern", 0, "a template list");
    if (out.targets.empty()) out.targets = {t};
    return out;
}

// dump, re-parse, compare, then write: every emitted document re-validates
void emit(const nlohmann::json& doc, const std::string& outPath) {
    std::string text = doc.dump(2) + "\n";
    if (nlohmann::json::parse(text) != doc)
        throw std::logic_error("output failed its own round-trip check");
    if (outPath.empty() || outPath == "-") {
        std::cout << text;
    } else {
        std::ofstream f(outPath);
        if (!f) throw std::runtime_error("cannot write " + outPath);
        f << text;
    }
}

int cmd_find_witness(const std::string& coloringSpec, const std::string& patternSpec,
                     unsigned levels, unsigned size, std::uint64_t budget, unsigned jobs,
                     bool trace3, const std::string& outPath) {
    rforge::Coloring coloring = rforge::parse_coloring(coloringSpec);
    if (rforge::is_nat(coloring)) {
        std::cerr << "find-witness searches the polynomial semiring; lift the coloring, e.g. "
                     "lift:2:"
                  << coloringSpec << "\n";
        return kSpecError;
    }
    const rforge::PolyColoring& oracle = rforge::as_poly(coloring);
    TheoremPattern pattern = parse_theorem_pattern(patternSpec);

    nlohmann::json doc;
    doc["command"] = "find-witness";
    doc["coloring"] = oracle.description();
    nlohmann::json patJson = nlohmann::json::array();
    for (const auto& tpl : pattern.requested)
        patJson.push_back(tpl.str(rforge::PolyStyle::Pattern));
    doc["pattern"] = patJson;

    std::optional<rforge::PatternWitness> witness;
    if (trace3) {
        if (oracle.color_count() != 3) {
            std::cerr << "--trace3 needs a coloring with exactly 3 colors, got "
                      << oracle.color_count() << "\n";
            return kUsage;
        }
        rforge::TraceOptions opts;
        opts.budget = budget;
        opts.jobs = jobs;
        auto result = rforge::three_color_trace(oracle, opts);
        doc["candidatesTried"] = result.tried;
        doc["trace"] = rforge::to_json(result.trace);
        if (!result.found()) {
            std::cerr << "budget exhausted after " << result.tried << " candidates\n";
            emit(doc, outPath);
            return kBudgetExhausted;
        }
        witness = result.witness;
    } else {
        unsigned k = levels > 0 ? levels : oracle.color_count();
        unsigned c = size;
        if (c == 0) {
            c = 2;
            for (const auto& tgt : pattern.targets) {
                rforge::BigInt s = tgt.size_bound();
                if (s > c) c = unsigned(s.convert_to<unsigned>());
            }
        }
        std::vector<unsigned> schedule(k, c);
        schedule.push_back(1);
        auto tower = rforge::build_tower(oracle, k, rforge::SizeSchedule(schedule), budget, jobs);
        doc["candidatesTried"] = tower.tried;
        if (!tower.found()) {
            std::cerr << tower.failure << "\n";
            emit(doc, outPath);
            return kBudgetExhausted;
        }
        doc["tower"] = rforge::to_json(*tower.tower);
        auto extracted = rforge::extract_pattern(*tower.tower, pattern.targets);
        if (!extracted.found()) {
            std::cerr << extracted.failure << " (needs levels >= " << extracted.neededLevels
                      << ", size >= " << extracted.neededSize << ")\n";
            emit(doc, outPath);
            return kInsufficientTower;
        }
        doc["levels"] = {{"lower", extracted.lowerLevel},
                         {"upper", extracted.upperLevel},
                         {"monochrome", extracted.monochromeLevels}};
        // report exactly the requested templates under the extracted assignment
        witness = rforge::make_verified_pattern_witness(oracle, pattern.requested,
                                                        extracted.witness->assignment);
    }

    doc["witness"] = rforge::to_json(*witness);
    rforge::revalidate_pattern_witness(doc["witness"], oracle);
    emit(doc, outPath);
    std::cerr << "verified monochromatic witness, color " << witness->color.value << ":";
    for (const auto& e : witness->elements)
        std::cerr << " " << e.str() << " (=" << e.evaluate_all(2) << " at t=2)";
    std::cerr << "\n";
    return kOk;
}

int cmd_avoidance(const std::string& patternSpec, unsigned colors, unsigned cap,
                  bool allowUnitY, const std::string& outPath) {
    rforge::PatternFamily family = rforge::PatternFamily::parse(patternSpec, allowUnitY);
    auto report = rforge::min_unavoidable_N(family, colors, cap);
    nlohmann::json doc = rforge::to_json(report);
    doc["command"] = "avoidance";
    emit(doc, outPath);
    if (!report.unavoidable) {
        std::cerr << "cap " << cap << " reached; avoiding coloring attached\n";
        return kCapReached;
    }
    std::cerr << "every " << colors << "-coloring of [" << report.N
              << "] contains a monochromatic instance; avoiding coloring of ["
              << (report.N - 1) << "] attached\n";
    return kOk;
}

int cmd_check_exercise(unsigned size, unsigned vars, const std::string& outPath) {
    auto report = rforge::check_p1_exercise(size, vars);
    nlohmann::json doc = rforge::to_json(report);
    doc["command"] = "check-exercise";
    emit(doc, outPath);
    if (!report.noInstance) {
        std::cerr << "MONOCHROMATIC QUADRUPLE FOUND: the reducibility coloring does NOT avoid "
                     "{x, y, x+y, xy} on this region; see the counterexample in the report\n";
        return kCounterexample;
    }
    std::cerr << "no monochromatic {x, y, x+y, xy} over " << report.regionSize
              << " region members\n";
    return kOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"ramsey-forge: monochromatic sum-product witness search over formal "
                 "polynomials, with exhaustive ground-truth oracles"};
    app.require_subcommand(1);

    std::string coloringSpec, patternSpec = "sumprod", outPath;
    unsigned levels = 0, size = 0, colors = 2, cap = 1000, vars = 3, exSize = 2, jobs = 1;
    std::uint64_t budget = 1'000'000;
    bool trace3 = false, allowUnitY = false;

    auto* findCmd = app.add_subcommand("find-witness",
                                       "search a colored semiring for a monochromatic pattern");
    findCmd->add_option("--coloring", coloringSpec,
                        "coloring DSL, e.g. lift:2:mod:3")->required();
    findCmd->add_option("--pattern", patternSpec,
                        "sumprod | sumprod-corollary | ap3 | 'x; x+y^2; x*y'");
    findCmd->add_option("--levels", levels, "tower levels k (default: color count)");
    findCmd->add_option("--size", size, "schedule size bound c (default: fits the targets)");
    findCmd->add_option("--budget", budget, "max candidates per search");
    findCmd->add_option("--jobs", jobs, "worker threads for semiring searches");
    findCmd->add_flag("--trace3", trace3, "use the three-color deduction chain");
    findCmd->add_option("--out", outPath, "write JSON here instead of stdout");

    auto* avoidCmd = app.add_subcommand("avoidance",
                                        "exact minimal N with no avoiding coloring of [N]");
    avoidCmd->add_option("--pattern", patternSpec,
                         "schur | ap3 | sumprod | sumprod-corollary | 'x; x+y; x*y'");
    avoidCmd->add_option("--colors", colors, "number of colors")->required();
    avoidCmd->add_option("--cap", cap, "give up beyond this N");
    avoidCmd->add_flag("--allow-unit-y", allowUnitY, "permit y = 1 in sum-product patterns");
    avoidCmd->add_option("--jobs", jobs, "accepted for symmetry; the backtracker is serial");
    avoidCmd->add_option("--out", outPath, "write JSON here instead of stdout");

    auto* exCmd = app.add_subcommand("check-exercise",
                                     "scan the reducibility 2-coloring of multilinear "
                                     "polynomials for a monochromatic {x, y, x+y, xy}");
    exCmd->add_option("--size", exSize, "size bound for the region (default 2)");
    exCmd->add_option("--vars", vars, "variable count for the region (default 3)");
    exCmd->add_option("--out", outPath, "write JSON here instead of stdout");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kUsage;
    }

    try {
        if (findCmd->parsed())
            return cmd_find_witness(coloringSpec, patternSpec, levels, size, budget, jobs,
                                    trace3, outPath);
        if (avoidCmd->parsed()) return cmd_avoidance(patternSpec, colors, cap, allowUnitY, outPath);
        if (exCmd->parsed()) return cmd_check_exercise(exSize, vars, outPath);
    } catch (const rforge::ParseError& e) {
        std::cerr << "spec error: " << e.what() << "\n";
        return kSpecError;
    } catch (const std::invalid_argument& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return kUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return kUsage;
}

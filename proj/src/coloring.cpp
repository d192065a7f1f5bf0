#include "rforge/coloring.hpp"

#include <fstream>
#include <mutex>
#include <unordered_map>

#include <json.hpp>

namespace rforge {

NatColoring::NatColoring(unsigned colorCount, std::string description,
                         std::function<ColorId(const BigInt&)> rule)
    : colorCount_(colorCount),
      description_(std::make_shared<const std::string>(std::move(description))),
      rule_(std::move(rule)) {
    if (colorCount_ < 1) throw std::invalid_argument("a coloring needs at least one color");
}

ColorId NatColoring::operator()(const BigInt& n) const {
    if (n < 1)
        throw ColorDomainError("coloring " + *description_ + " is defined on positive integers, got " +
                               n.str());
    ColorId c = rule_(n);
    if (c.value >= colorCount_)
        throw ColorDomainError("coloring " + *description_ + " emitted out-of-range color " +
                               std::to_string(c.value));
    return c;
}

PolyColoring::PolyColoring(unsigned colorCount, std::string description,
                           std::function<ColorId(const GoodPoly&)> rule)
    : colorCount_(colorCount),
      description_(std::make_shared<const std::string>(std::move(description))),
      rule_(std::move(rule)) {
    if (colorCount_ < 1) throw std::invalid_argument("a coloring needs at least one color");
}

ColorId PolyColoring::operator()(const GoodPoly& p) const {
    if (p.is_zero())
        throw ColorDomainError("coloring " + *description_ +
                               " is defined on nonzero good polynomials");
    ColorId c = rule_(p);
    if (c.value >= colorCount_)
        throw ColorDomainError("coloring " + *description_ + " emitted out-of-range color " +
                               std::to_string(c.value));
    return c;
}

NatColoring mod_coloring(unsigned m) {
    if (m < 2) throw std::invalid_argument("mod coloring needs modulus >= 2");
    return NatColoring(m, "mod:" + std::to_string(m), [m](const BigInt& n) {
        return ColorId{(n % m).convert_to<unsigned>()};
    });
}

NatColoring table_coloring(std::vector<unsigned> table, unsigned colorCount) {
    if (table.empty()) throw std::invalid_argument("empty color table");
    for (unsigned c : table)
        if (c >= colorCount)
            throw std::invalid_argument("table entry " + std::to_string(c) +
                                        " exceeds color count " + std::to_string(colorCount));
    auto shared = std::make_shared<const std::vector<unsigned>>(std::move(table));
    std::string desc = "table(" + std::to_string(shared->size()) + " entries)";
    return NatColoring(colorCount, desc, [shared, desc](const BigInt& n) {
        if (n > shared->size())
            throw ColorDomainError("value " + n.str() + " is outside the table domain [1.." +
                                   std::to_string(shared->size()) + "]");
        return ColorId{(*shared)[n.convert_to<std::size_t>() - 1]};
    });
}

NatColoring load_table_coloring(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open color table " + path);
    nlohmann::json j;
    in >> j;
    std::vector<unsigned> table;
    unsigned colors = 0;
    if (j.is_array()) {
        table = j.get<std::vector<unsigned>>();
        for (unsigned c : table) colors = std::max(colors, c + 1);
    } else if (j.is_object() && j.contains("table")) {
        table = j.at("table").get<std::vector<unsigned>>();
        colors = j.value("colors", 0u);
        if (colors == 0)
            for (unsigned c : table) colors = std::max(colors, c + 1);
    } else {
        throw std::runtime_error("color table " + path +
                                 " must be a JSON array or {\"colors\", \"table\"} object");
    }
    if (colors == 0) colors = 1;
    return table_coloring(std::move(table), colors);
}

PolyColoring lift_from_nat(const NatColoring& inner, unsigned base) {
    if (base < 2) throw std::invalid_argument("lift base must be >= 2");
    std::string desc = "lift:" + std::to_string(base) + ":" + inner.description();
    return PolyColoring(inner.color_count(), desc, [inner, base](const GoodPoly& p) {
        return inner(p.evaluate_all(base));
    });
}

PolyColoring collapse_to_univariate(const PolyColoring& inner) {
    std::string desc = "collapse:" + inner.description();
    return PolyColoring(inner.color_count(), desc, [inner](const GoodPoly& p) {
        std::map<unsigned, GoodPoly> toT;
        for (unsigned var : p.variables()) toT.emplace(var, GoodPoly::variable(1));
        return inner(p.substitute(toT));
    });
}

PolyColoring reducibility_coloring() {
    struct Memo {
        std::mutex mutex;
        std::unordered_map<GoodPoly, bool, GoodPolyHash> known;
    };
    auto memo = std::make_shared<Memo>();
    return PolyColoring(2, "reducibility", [memo](const GoodPoly& p) {
        {
            std::lock_guard lock(memo->mutex);
            if (auto it = memo->known.find(p); it != memo->known.end())
                return ColorId{it->second ? 0u : 1u};
        }
        bool reducible = is_reducible(p);
        std::lock_guard lock(memo->mutex);
        memo->known.emplace(p, reducible);
        return ColorId{reducible ? 0u : 1u};
    });
}

// ---------------------------------------------------------------------------
// DSL

namespace {

struct SpecCursor {
    std::string_view text;
    std::size_t pos = 0;

    std::string_view take_component() {
        std::size_t start = pos;
        std::size_t colon = text.find(':', pos);
        if (colon == std::string_view::npos) {
            pos = text.size();
            return text.substr(start);
        }
        pos = colon + 1;
        return text.substr(start, colon - start);
    }

    std::string_view rest() const { return text.substr(pos); }
    bool exhausted() const { return pos >= text.size(); }
};

unsigned parse_number(std::string_view s, std::size_t at, const std::string& what) {
    if (s.empty()) throw ParseError("missing " + what, at, "an integer");
    unsigned value = 0;
    for (char ch : s) {
        if (ch < '0' || ch > '9')
            throw ParseError("bad " + what + " '" + std::string(s) + "'", at, "digits");
        value = value * 10 + unsigned(ch - '0');
        if (value > 1'000'000) throw ParseError(what + " out of range", at, "<= 1000000");
    }
    return value;
}

Coloring parse_spec(SpecCursor& cur) {
    std::size_t at = cur.pos;
    std::string_view head = cur.take_component();
    if (head == "mod") {
        std::size_t numAt = cur.pos;
        unsigned m = parse_number(cur.take_component(), numAt, "modulus");
        if (m < 2) throw ParseError("modulus must be >= 2", numAt, "an integer >= 2");
        return mod_coloring(m);
    }
    if (head == "table") {
        if (cur.exhausted()) throw ParseError("missing table path", cur.pos, "a file path");
        std::string path(cur.rest());
        cur.pos = cur.text.size();
        return load_table_coloring(path);
    }
    if (head == "lift") {
        std::size_t numAt = cur.pos;
        unsigned base = parse_number(cur.take_component(), numAt, "lift base");
        if (base < 2) throw ParseError("lift base must be >= 2", numAt, "an integer >= 2");
        std::size_t innerAt = cur.pos;
        Coloring inner = parse_spec(cur);
        if (!is_nat(inner))
            throw ParseError("lift needs an integer coloring inside", innerAt,
                             "mod:<m> or table:<path>");
        return lift_from_nat(as_nat(inner), base);
    }
    if (head == "collapse") {
        std::size_t innerAt = cur.pos;
        Coloring inner = parse_spec(cur);
        if (is_nat(inner))
            throw ParseError("collapse needs a polynomial coloring inside", innerAt,
                             "lift:... or reducibility");
        return collapse_to_univariate(as_poly(inner));
    }
    if (head == "reducibility") {
        return reducibility_coloring();
    }
    throw ParseError("unknown coloring '" + std::string(head) + "'", at,
                     "mod | table | lift | collapse | reducibility");
}

}  // namespace

Coloring parse_coloring(std::string_view spec) {
    SpecCursor cur{spec};
    Coloring c = parse_spec(cur);
    if (!cur.exhausted())
        throw ParseError("trailing input '" + std::string(cur.rest()) + "'", cur.pos,
                         "end of spec");
    return c;
}

bool is_nat(const Coloring& c) { return std::holds_alternative<NatColoring>(c); }

const NatColoring& as_nat(const Coloring& c) { return std::get<NatColoring>(c); }

const PolyColoring& as_poly(const Coloring& c) { return std::get<PolyColoring>(c); }

}  // namespace rforge

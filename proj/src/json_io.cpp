#include "rforge/json_io.hpp"

namespace rforge {

using nlohmann::json;

json to_json(const GoodPoly& p) { return p.str(); }

GoodPoly poly_from_json(const json& j) { return GoodPoly::parse(j.get<std::string>()); }

json to_json(const PatternWitness& w) {
    json templates = json::array();
    for (const auto& t : w.templates) templates.push_back(t.str(PolyStyle::Pattern));
    json assignment = json::object();
    for (const auto& [var, value] : w.assignment) {
        std::string key = var == 1 ? "x" : var == 2 ? "y" : "x" + std::to_string(var);
        assignment[key] = value.str();
    }
    json elements = json::array();
    json values = json::array();
    for (const auto& e : w.elements) {
        elements.push_back(e.str());
        values.push_back(e.evaluate_all(2).str());
    }
    return json{{"assignment", assignment}, {"color", w.color.value},
                {"elements", elements},     {"templates", templates},
                {"values", values},         {"verified", true}};
}

namespace {

unsigned var_from_key(const std::string& key) {
    if (key == "x") return 1;
    if (key == "y") return 2;
    if (key.size() > 1 && key[0] == 'x') return unsigned(std::stoul(key.substr(1)));
    throw std::runtime_error("bad assignment key '" + key + "'");
}

}  // namespace

PatternWitness pattern_witness_from_json(const json& j) {
    PatternWitness w;
    for (const auto& t : j.at("templates")) w.templates.push_back(GoodPoly::parse(t.get<std::string>()));
    for (const auto& [key, value] : j.at("assignment").items())
        w.assignment.emplace(var_from_key(key), GoodPoly::parse(value.get<std::string>()));
    for (const auto& e : j.at("elements")) w.elements.push_back(GoodPoly::parse(e.get<std::string>()));
    w.color = ColorId{j.at("color").get<unsigned>()};
    return w;
}

PatternWitness revalidate_pattern_witness(const json& j, const PolyColoring& oracle) {
    PatternWitness loaded = pattern_witness_from_json(j);
    PatternWitness fresh =
        make_verified_pattern_witness(oracle, loaded.templates, loaded.assignment);
    if (!(fresh.elements == loaded.elements) || fresh.color != loaded.color)
        throw WitnessVerificationError("witness JSON does not revalidate");
    return fresh;
}

json to_json(const NatWitness& w) {
    json assignment = json::array();
    for (const auto& v : w.assignment) assignment.push_back(v.str());
    json elements = json::array();
    for (const auto& e : w.elements) elements.push_back(e.str());
    return json{{"assignment", assignment},
                {"color", w.color.value},
                {"elements", elements},
                {"verified", true}};
}

json to_json(const PolyPvdwWitness& w) {
    return json{{"x", w.x.str()},
                {"d", w.d.str()},
                {"color", w.color.value},
                {"checked", w.checkedCount}};
}

json to_json(const NatPvdwWitness& w) {
    return json{{"x", w.x.str()},
                {"d", w.d.str()},
                {"color", w.color.value},
                {"checked", w.checkedCount}};
}

json to_json(const TowerWitness& tw) {
    json b = json::array();
    for (const auto& p : tw.b) b.push_back(p.str());
    json a = json::array();
    for (const auto& p : tw.a) a.push_back(p.str());
    json levels = json::array();
    for (unsigned i = 0; i <= tw.k(); ++i) {
        GoodPoly prod = tw.product_times_x(i);
        levels.push_back(json{{"element", prod.str()},
                              {"value", prod.evaluate_all(2).str()},
                              {"color", tw.oracle(prod).value}});
    }
    return json{{"k", tw.k()},           {"schedule", tw.schedule.values()},
                {"x", tw.x.str()},       {"b", b},
                {"a", a},                {"levelProducts", levels},
                {"verified", tw.verified}};
}

json to_json(const ThreeColorTrace& trace) {
    json steps = json::array();
    for (const auto& s : trace.steps) {
        json elements = json::array();
        json values = json::array();
        json colors = json::array();
        for (std::size_t i = 0; i < s.elements.size(); ++i) {
            elements.push_back(s.elements[i].str());
            values.push_back(s.values[i].str());
            colors.push_back(s.colors[i].value);
        }
        steps.push_back(json{{"stage", s.stage},
                             {"note", s.note},
                             {"elements", elements},
                             {"values", values},
                             {"colors", colors}});
    }
    return json{{"steps", steps}};
}

ThreeColorTrace trace_from_json(const json& j) {
    ThreeColorTrace trace;
    for (const auto& s : j.at("steps")) {
        TraceStep step;
        step.stage = s.at("stage").get<std::string>();
        step.note = s.at("note").get<std::string>();
        for (const auto& e : s.at("elements"))
            step.elements.push_back(GoodPoly::parse(e.get<std::string>()));
        for (const auto& v : s.at("values")) step.values.emplace_back(v.get<std::string>());
        for (const auto& c : s.at("colors")) step.colors.push_back(ColorId{c.get<unsigned>()});
        trace.steps.push_back(std::move(step));
    }
    return trace;
}

json to_json(const AvoidanceReport& r) {
    return json{{"pattern", r.pattern},
                {"templates", r.templates},
                {"colors", r.colors},
                {"cap", r.cap},
                {"outcome", r.unavoidable ? "UNAVOIDABLE" : "CAP_REACHED"},
                {"N", r.N},
                {"avoidingColoring",
                 json{{"colors", r.colors}, {"table", r.avoidingColoring}}},
                {"nodesExplored", r.nodesExplored},
                {"rechecked", r.rechecked}};
}

json to_json(const ExerciseReport& r) {
    json out{{"sizeBound", r.sizeBound},
             {"maxVar", r.maxVar},
             {"regionSize", r.regionSize},
             {"assignmentsScanned", r.assignmentsScanned},
             {"result", r.noInstance ? "no-instance" : "counterexample"}};
    if (r.counterexample) out["counterexample"] = to_json(*r.counterexample);
    return out;
}

}  // namespace rforge

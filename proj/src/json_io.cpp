#include "rpm/json_io.hpp"

#include <fstream>
#include <iomanip>
#include <sstream>

#include <json.hpp>

#include "rpm/errors.hpp"

namespace rpm {

using nlohmann::json;
using nlohmann::ordered_json;

namespace {

ordered_json rule_to_json(const RuleSpec& r) {
    ordered_json j;
    j["axis"] = axis_name(r.axis);
    j["kind"] = rule_kind_name(r.kind);
    j["param"] = r.param;
    j["position_mode"] = r.position_mode;
    return j;
}

RuleSpec rule_from_json(const json& j) {
    RuleSpec r;
    r.axis = axis_from_name(j.at("axis").get<std::string>());
    r.kind = rule_kind_from_name(j.at("kind").get<std::string>());
    r.param = j.at("param").get<int>();
    r.position_mode = j.at("position_mode").get<bool>();
    return r;
}

ordered_json panel_to_json(const PanelSymbol& p) {
    ordered_json arr = ordered_json::array();
    for (const auto& c : p.components) {
        ordered_json j;
        ordered_json slots = ordered_json::array();
        for (int b = 0; b < 31; ++b)
            if ((c.occupied >> b) & 1) slots.push_back(b);
        j["occupied"] = slots;
        j["type"] = c.type;
        j["size"] = c.size;
        j["color"] = c.color;
        arr.push_back(j);
    }
    return arr;
}

PanelSymbol panel_from_json(const json& arr) {
    PanelSymbol p;
    for (const auto& j : arr) {
        ComponentSymbol c;
        c.occupied = 0;
        for (const auto& b : j.at("occupied")) c.occupied |= 1 << b.get<int>();
        c.type = j.at("type").get<int>();
        c.size = j.at("size").get<int>();
        c.color = j.at("color").get<int>();
        p.components.push_back(c);
    }
    return p;
}

std::string round12(double v) {
    std::ostringstream s;
    s << std::setprecision(12) << v;
    return s.str();
}

ordered_json dist_to_json(const LogDist& d) {
    ordered_json arr = ordered_json::array();
    for (double p : d.linear()) arr.push_back(ordered_json::parse(round12(p)));
    return arr;
}

}  // namespace

std::string instance_to_json(const PuzzleInstance& instance) {
    ordered_json j;
    j["schema_version"] = kInstanceSchemaVersion;
    j["config"] = instance.config_name;
    j["seed"] = instance.seed;
    ordered_json rules = ordered_json::array();
    for (const auto& comp : instance.rules) {
        ordered_json cr = ordered_json::array();
        for (const auto& r : comp) cr.push_back(rule_to_json(r));
        rules.push_back(cr);
    }
    j["rules"] = rules;
    ordered_json ctx = ordered_json::array();
    for (const auto& p : instance.context) ctx.push_back(panel_to_json(p));
    j["context"] = ctx;
    ordered_json cand = ordered_json::array();
    for (const auto& p : instance.candidates) cand.push_back(panel_to_json(p));
    j["candidates"] = cand;
    j["answer_index"] = instance.answer_index;
    return j.dump(2) + "\n";
}

PuzzleInstance instance_from_json(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ParseError(std::string("instance parse error: ") + e.what());
    }
    try {
        PuzzleInstance inst;
        if (j.at("schema_version").get<int>() != kInstanceSchemaVersion)
            throw ParseError("unsupported schema_version");
        inst.config_name = j.at("config").get<std::string>();
        Configuration::by_name(inst.config_name);  // validates
        inst.seed = j.at("seed").get<std::uint64_t>();
        for (const auto& cr : j.at("rules")) {
            ComponentRules rules;
            if (cr.size() != kAxisCount) throw ParseError("expected one rule per axis");
            for (int a = 0; a < kAxisCount; ++a) rules[a] = rule_from_json(cr[a]);
            inst.rules.push_back(rules);
        }
        if (j.at("context").size() != 8 || j.at("candidates").size() != 8)
            throw ParseError("expected 8 context and 8 candidate panels");
        for (int i = 0; i < 8; ++i) {
            inst.context[i] = panel_from_json(j.at("context")[i]);
            inst.candidates[i] = panel_from_json(j.at("candidates")[i]);
        }
        inst.answer_index = j.at("answer_index").get<int>();
        if (inst.answer_index < 0 || inst.answer_index > 7)
            throw ParseError("answer_index out of range");
        return inst;
    } catch (const json::exception& e) {
        throw ParseError(std::string("instance field error: ") + e.what());
    }
}

PuzzleInstance load_instance(const std::string& path) {
    try {
        return instance_from_json(read_file(path));
    } catch (const ParseError& e) {
        throw ParseError(path + ": " + e.what());
    }
}

void save_instance(const PuzzleInstance& instance, const std::string& path) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open for writing: " + path);
    const std::string text = instance_to_json(instance);
    f.write(text.data(), static_cast<std::streamsize>(text.size()));
    if (!f) throw std::runtime_error("write failed: " + path);
}

std::string panel_belief_to_json(const PanelBelief& belief) {
    ordered_json arr = ordered_json::array();
    for (const auto& comp : belief) {
        ordered_json j;
        j["position"] = dist_to_json(comp.position);
        j["number"] = dist_to_json(comp.number);
        j["type"] = dist_to_json(comp.type);
        j["size"] = dist_to_json(comp.size);
        j["color"] = dist_to_json(comp.color);
        arr.push_back(j);
    }
    return arr.dump(2) + "\n";
}

std::string posteriors_to_json(const SolveResult& result) {
    ordered_json comps = ordered_json::array();
    for (const auto& axes : result.axes) {
        ordered_json jc;
        for (const auto& outcome : axes) {
            ordered_json jr;
            const auto p = outcome.posterior.linear();
            for (std::size_t i = 0; i < outcome.posterior.rules.size(); ++i)
                jr[rule_name(outcome.posterior.rules[i])] = ordered_json::parse(round12(p[i]));
            jc[axis_name(outcome.posterior.axis)] = jr;
        }
        comps.push_back(jc);
    }
    return comps.dump(2) + "\n";
}

std::string answer_report_to_json(const AnswerReport& report) {
    ordered_json j;
    ordered_json div = ordered_json::array(), probs = ordered_json::array();
    for (double d : report.divergences) div.push_back(ordered_json::parse(round12(d)));
    for (double p : report.answer_probs) probs.push_back(ordered_json::parse(round12(p)));
    j["divergences"] = div;
    j["answer_probs"] = probs;
    j["chosen"] = report.chosen;
    ordered_json bd = ordered_json::array();
    for (const auto& cand : report.breakdown) {
        ordered_json jc = ordered_json::array();
        for (const auto& terms : cand) {
            ordered_json jt;
            static const char* kNames[5] = {"position", "number", "type", "size", "color"};
            for (int a = 0; a < 5; ++a) jt[kNames[a]] = ordered_json::parse(round12(terms[a]));
            jc.push_back(jt);
        }
        bd.push_back(jc);
    }
    j["breakdown"] = bd;
    return j.dump(2) + "\n";
}

AttributeDomain domain_from_json(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ParseError(std::string("domain parse error: ") + e.what());
    }
    AttributeDomain d;
    d.type_values.clear();
    for (const auto& t : j.at("types")) {
        const std::string name = t.get<std::string>();
        bool found = false;
        for (int s = 0; s < 5; ++s)
            if (name == shape_name(static_cast<Shape>(s))) {
                d.type_values.push_back(static_cast<Shape>(s));
                found = true;
            }
        if (!found) throw ParseError("unknown shape: " + name);
    }
    d.size_levels = j.at("sizes").get<int>();
    d.color_levels = j.at("colors").get<int>();
    d.validate();
    return d;
}

namespace {

AttributeNoise attribute_noise_from_json(const json& j) {
    AttributeNoise n;
    if (j.is_number()) {
        n.epsilon = j.get<double>();
    } else {
        n.confusion = j.get<std::vector<std::vector<double>>>();
    }
    return n;
}

}  // namespace

NoiseModel noise_model_from_json(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ParseError(std::string("noise model parse error: ") + e.what());
    }
    NoiseModel m;
    m.objectiveness = j.at("objectiveness").get<double>();
    m.type = attribute_noise_from_json(j.at("type"));
    m.size = attribute_noise_from_json(j.at("size"));
    m.color = attribute_noise_from_json(j.at("color"));
    return m;
}

std::string read_file(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw ParseError("cannot open: " + path);
    std::ostringstream s;
    s << f.rdbuf();
    return s.str();
}

std::uint64_t content_hash(const std::string& bytes) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

}  // namespace rpm

#include "apalg/workspace.hpp"

#include "apalg/expr.hpp"

#include <json.hpp>

#include <fstream>

namespace apalg {

using nlohmann::json;

std::string workspace_to_json(const Workspace& ws) {
    json doc;
    doc["version"] = kWorkspaceVersion;
    doc["generators"] = json::array();
    if (ws.table)
        for (auto& g : ws.table->entries())
            doc["generators"].push_back(
                {{"name", g.name}, {"value", g.value_text}, {"independent", g.independent}});
    doc["polys"] = json::object();
    for (auto& [name, poly] : ws.polys) doc["polys"][name] = render(poly);
    doc["settings"] = {{"grid", ws.settings.grid},
                       {"refinements", ws.settings.refinements},
                       {"coeff_bound", ws.settings.coeff_bound},
                       {"eps_sign", ws.settings.eps_sign},
                       {"tol", ws.settings.tol},
                       {"sample_count", ws.settings.sample_count},
                       {"sample_tmax", ws.settings.sample_tmax}};
    return doc.dump(2) + "\n";
}

Workspace workspace_from_json(const std::string& text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::exception& e) {
        throw Error(std::string("workspace parse failure: ") + e.what());
    }
    if (!doc.is_object() || !doc.contains("version"))
        throw Error("workspace parse failure: missing version");
    if (doc["version"] != kWorkspaceVersion)
        throw Error("workspace version mismatch: expected " + std::to_string(kWorkspaceVersion));

    Workspace ws;
    try {
        std::vector<Generator> gens;
        for (auto& g : doc.value("generators", json::array())) {
            Generator gen;
            gen.name = g.at("name").get<std::string>();
            gen.value_text = g.at("value").get<std::string>();
            gen.value = parse_decimal(gen.value_text);
            gen.independent = g.value("independent", true);
            gens.push_back(std::move(gen));
        }
        if (!gens.empty()) ws.table = std::make_shared<GeneratorTable>(std::move(gens));

        if (doc.contains("polys")) {
            if (!ws.table && !doc["polys"].empty())
                throw Error("workspace has polynomials but no generators");
            for (auto& [name, text_value] : doc["polys"].items())
                ws.polys.emplace(name, parse_expr(text_value.get<std::string>(), ws.table, ws.polys));
        }

        if (doc.contains("settings")) {
            auto& s = doc["settings"];
            ws.settings.grid = s.value("grid", ws.settings.grid);
            ws.settings.refinements = s.value("refinements", ws.settings.refinements);
            ws.settings.coeff_bound = s.value("coeff_bound", ws.settings.coeff_bound);
            ws.settings.eps_sign = s.value("eps_sign", ws.settings.eps_sign);
            ws.settings.tol = s.value("tol", ws.settings.tol);
            ws.settings.sample_count = s.value("sample_count", ws.settings.sample_count);
            ws.settings.sample_tmax = s.value("sample_tmax", ws.settings.sample_tmax);
        }
    } catch (const json::exception& e) {
        throw Error(std::string("workspace parse failure: ") + e.what());
    }
    validate_settings(ws.settings);
    return ws;
}

void validate_settings(const Settings& s) {
    if (s.grid < 0 || (s.grid > 0 && s.grid < 8)) throw Error("settings: grid must be 0 or >= 8");
    if (s.refinements < 0) throw Error("settings: refinements must be >= 0");
    if (s.coeff_bound < 1) throw Error("settings: coeff_bound must be >= 1");
    if (!(s.eps_sign > 0)) throw Error("settings: eps_sign must be positive");
    if (!(s.tol > 0)) throw Error("settings: tol must be positive");
    if (s.sample_count < 1) throw Error("settings: sample_count must be >= 1");
    if (!(s.sample_tmax > 0)) throw Error("settings: sample_tmax must be positive");
}

void save_workspace(const Workspace& ws, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw Error("cannot open workspace for writing: " + path);
    out << workspace_to_json(ws);
    if (!out) throw Error("failed writing workspace: " + path);
}

Workspace load_workspace(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open workspace: " + path);
    std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    return workspace_from_json(text);
}

}  // namespace apalg

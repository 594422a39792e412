#include "harmonica/cli.hpp"

#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <sstream>

#include "harmonica/genfuzz.hpp"
#include "harmonica/harmonica.hpp"
#include "harmonica/json_io.hpp"
#include "harmonica/reductions.hpp"

namespace harmonica {

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitObstructed = 2;
constexpr int kExitVerifyFailed = 3;

nlohmann::json load_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw JsonError("cannot open '" + path + "'");
    nlohmann::json j;
    in >> j;
    return j;
}

std::pair<VertexId, VertexId> parse_id_pair(const std::string& text, const char* flag) {
    auto comma = text.find(',');
    if (comma == std::string::npos)
        throw JsonError(std::string(flag) + " expects two comma-separated ids");
    return {std::stoi(text.substr(0, comma)), std::stoi(text.substr(comma + 1))};
}

VertexId pick_vertex(const std::optional<VertexId>& from_file, int flag_value,
                     bool flag_set, const char* name) {
    if (flag_set) return flag_value;
    if (from_file) return *from_file;
    throw JsonError(std::string("missing --") + name + " (not given and not in the input file)");
}

int do_decide(const std::string& input, int p1_flag, bool p1_set, int p2_flag, bool p2_set,
              bool certificate_only, std::ostream& out) {
    ParsedCanvas parsed = canvas_from_json(load_json(input));
    VertexId p1 = pick_vertex(parsed.p1, p1_flag, p1_set, "p1");
    VertexId p2 = pick_vertex(parsed.p2, p2_flag, p2_set, "p2");
    DecideResult r = decide_with_certificate(parsed.graph, parsed.lists, p1, p2);
    if (r.colorable) {
        nlohmann::json j = coloring_to_json(*r.coloring);
        if (!certificate_only) j["verdict"] = "colorable";
        out << j.dump(2) << "\n";
        return kExitOk;
    }
    nlohmann::json j = certificate_to_json(*r.certificate);
    if (!certificate_only) j["verdict"] = "obstructed";
    out << j.dump(2) << "\n";
    return kExitObstructed;
}

int do_verify(const std::string& input, const std::string& cert_path, std::ostream& out) {
    ParsedCanvas parsed = canvas_from_json(load_json(input));
    nlohmann::json artifact = load_json(cert_path);
    if (artifact.contains("coloring")) {
        Coloring coloring = coloring_from_json(artifact);
        for (VertexId v : parsed.graph.vertices()) {
            auto it = coloring.find(v);
            if (it == coloring.end() || !parsed.lists.has(v) ||
                !parsed.lists.at(v).count(it->second)) {
                out << "{\"valid\":false,\"reason\":\"coloring misses vertex or list\"}\n";
                return kExitVerifyFailed;
            }
        }
        for (const Edge& e : parsed.graph.edge_set())
            if (coloring.at(e.first) == coloring.at(e.second)) {
                out << "{\"valid\":false,\"reason\":\"coloring not proper\"}\n";
                return kExitVerifyFailed;
            }
        out << "{\"valid\":true,\"kind\":\"coloring\"}\n";
        return kExitOk;
    }
    HarmonicaCertificate cert = certificate_from_json(artifact);
    VerifyResult r = verify_coloring_harmonica(parsed.graph, parsed.lists, cert, cert.origin,
                                               cert.terminal);
    nlohmann::json j;
    j["valid"] = r.ok;
    j["kind"] = "certificate";
    if (!r.ok) j["reason"] = r.failing_clause;
    out << j.dump() << "\n";
    return r.ok ? kExitObstructed : kExitVerifyFailed;
}

int do_phi(const std::string& input, const std::string& p_text, const std::string& pp_text,
           const std::string& colorings_text, std::ostream& out) {
    ParsedCanvas parsed = canvas_from_json(load_json(input));
    auto [pa, pb] = parse_id_pair(p_text, "--p");
    auto [qa, qb] = parse_id_pair(pp_text, "--pprime");
    nlohmann::json jc = nlohmann::json::parse(colorings_text);
    std::set<std::pair<Color, Color>> members;
    for (const auto& m : jc) {
        if (!m.is_array() || m.size() != 2) throw JsonError("--colorings expects [[c1,c2],...]");
        members.insert({m[0].get<Color>(), m[1].get<Color>()});
    }
    PathRef p{pa, pb}, pp{qa, qb};
    EdgeColoringSet c = make_edge_coloring_set(parsed.graph, parsed.lists, p, members);
    EdgeColoringSet phi = extension_set(parsed.graph, parsed.lists, p, c, pp);
    nlohmann::json j;
    j["path"] = nlohmann::json::array({pp[0], pp[1]});
    nlohmann::json mm = nlohmann::json::array();
    for (const auto& [c1, c2] : phi.members) mm.push_back(nlohmann::json::array({c1, c2}));
    j["phi"] = mm;
    if (phi.members.size() >= 2) {
        Classification cls = classify(phi);
        switch (cls.kind) {
        case Classification::Kind::Dictatorship: j["classification"] = "dictatorship"; break;
        case Classification::Kind::Democracy: j["classification"] = "democracy"; break;
        case Classification::Kind::Neither: j["classification"] = "neither"; break;
        }
    } else {
        j["classification"] = "too_small";
    }
    j["has_government"] = find_government(phi).has_value();
    j["has_confederacy"] = find_confederacy(phi).has_value();
    out << j.dump(2) << "\n";
    return kExitOk;
}

int do_reduce(const std::string& input, const std::string& path_text, const std::string& l0_text,
              VertexId center, std::ostream& out) {
    ParsedCanvas parsed = canvas_from_json(load_json(input));
    std::vector<VertexId> path;
    std::stringstream ss(path_text);
    std::string item;
    while (std::getline(ss, item, ',')) path.push_back(std::stoi(item));
    auto [a, b] = parse_id_pair(l0_text, "--l0");
    CanvasCheck check = validate_canvas(parsed.graph, parsed.s, parsed.lists);
    if (!check.ok()) {
        nlohmann::json j;
        j["error"] = "input is not a canvas";
        nlohmann::json v = nlohmann::json::array();
        for (const auto& viol : check.violations) v.push_back(viol.clause);
        j["violations"] = v;
        out << j.dump(2) << "\n";
        return kExitUsage;
    }
    DemocraticReduction red = democratic_reduction(*check.canvas, path, {a, b}, center);
    nlohmann::json j = canvas_to_json(red.reduced.graph, red.reduced.lists, red.reduced.s);
    nlohmann::json deltas = nlohmann::json::object();
    for (const auto& [v, gone] : red.removed) {
        nlohmann::json arr = nlohmann::json::array();
        for (Color c : gone) arr.push_back(c);
        deltas[std::to_string(v)] = arr;
    }
    j["deltas"] = deltas;
    j["x_added_to_s"] = red.x_added_to_s;
    j["y"] = red.boundary_y;
    out << j.dump(2) << "\n";
    return kExitOk;
}

int do_gen(const std::string& profile_name, std::uint64_t seed, std::uint64_t trial, double bias,
           int palette, std::ostream& out) {
    auto id = profile_id_from_string(profile_name);
    if (!id) throw JsonError("unknown profile '" + profile_name + "'");
    GeneratorProfile profile = default_profile(*id, seed, bias);
    profile.palette = palette;
    GeneratedInstance inst = random_canvas(profile, trial);
    nlohmann::json j = canvas_to_json(inst.canvas.graph, inst.canvas.lists, inst.canvas.s);
    if (inst.p1 >= 0) j["p1"] = inst.p1;
    if (inst.p2 >= 0) j["p2"] = inst.p2;
    if (inst.p[0] >= 0) j["P"] = nlohmann::json::array({inst.p[0], inst.p[1]});
    if (inst.p_prime[0] >= 0)
        j["Pprime"] = nlohmann::json::array({inst.p_prime[0], inst.p_prime[1]});
    out << j.dump(2) << "\n";
    return kExitOk;
}

int do_fuzz(const std::string& profile_name, int trials, std::uint64_t seed, double bias,
            int palette, std::ostream& out) {
    auto id = profile_id_from_string(profile_name);
    if (!id) throw JsonError("unknown profile '" + profile_name + "'");
    GeneratorProfile profile = default_profile(*id, seed, bias);
    profile.palette = palette;
    SuiteReport report = run_property_suite(profile, trials);
    out << report_to_string(report) << "\n";
    return report.total_fail() == 0 ? kExitOk : kExitVerifyFailed;
}

} // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"list-coloring decision toolkit for plane graphs"};
    app.require_subcommand(1);

    std::string input, cert_path, p_text, pp_text, colorings_text, path_text, l0_text;
    std::string profile_name = "thm3";
    int p1 = 0, p2 = 0, center = 0, trials = 100, palette = 8;
    std::uint64_t seed = 0, trial = 0;
    double bias = 0.5;

    auto* decide = app.add_subcommand("decide", "decide list-colorability, emit a witness");
    decide->add_option("-i,--input", input)->required();
    auto* dp1 = decide->add_option("--p1", p1);
    auto* dp2 = decide->add_option("--p2", p2);

    auto* certify = app.add_subcommand("certify", "emit only the coloring or certificate");
    certify->add_option("-i,--input", input)->required();
    auto* cp1 = certify->add_option("--p1", p1);
    auto* cp2 = certify->add_option("--p2", p2);

    auto* verify = app.add_subcommand("verify-cert", "check a coloring or obstruction file");
    verify->add_option("-i,--input", input)->required();
    verify->add_option("-c,--certificate", cert_path)->required();

    auto* phi = app.add_subcommand("phi", "extension set of an edge coloring collection");
    phi->add_option("-i,--input", input)->required();
    phi->add_option("--p", p_text)->required();
    phi->add_option("--pprime", pp_text)->required();
    phi->add_option("--colorings", colorings_text)->required();

    auto* reduce = app.add_subcommand("reduce", "democratic reduction of a boundary path");
    reduce->add_option("-i,--input", input)->required();
    reduce->add_option("--path", path_text)->required();
    reduce->add_option("--l0", l0_text)->required();
    reduce->add_option("--center", center)->required();

    auto* gen = app.add_subcommand("gen", "emit one generated instance");
    gen->add_option("--profile", profile_name);
    gen->add_option("--seed", seed);
    gen->add_option("--trial", trial);
    gen->add_option("--bias", bias);
    gen->add_option("--palette", palette);

    auto* fuzz = app.add_subcommand("fuzz", "run a property suite");
    fuzz->add_option("--profile", profile_name);
    fuzz->add_option("--trials", trials);
    fuzz->add_option("--seed", seed);
    fuzz->add_option("--bias", bias);
    fuzz->add_option("--palette", palette);

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) {
            out << app.help();
            return kExitOk;
        }
        err << e.what() << "\n";
        return kExitUsage;
    }

    try {
        if (decide->parsed())
            return do_decide(input, p1, dp1->count() > 0, p2, dp2->count() > 0, false, out);
        if (certify->parsed())
            return do_decide(input, p1, cp1->count() > 0, p2, cp2->count() > 0, true, out);
        if (verify->parsed()) return do_verify(input, cert_path, out);
        if (phi->parsed()) return do_phi(input, p_text, pp_text, colorings_text, out);
        if (reduce->parsed()) return do_reduce(input, path_text, l0_text, center, out);
        if (gen->parsed()) return do_gen(profile_name, seed, trial, bias, palette, out);
        if (fuzz->parsed()) return do_fuzz(profile_name, trials, seed, bias, palette, out);
    } catch (const HypothesisViolated& e) {
        err << "hypothesis violated (" << e.clause() << "): " << e.what() << "\n";
        return kExitUsage;
    } catch (const TheoremViolation& e) {
        err << "internal inconsistency: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    }
    return kExitUsage;
}

} // namespace harmonica

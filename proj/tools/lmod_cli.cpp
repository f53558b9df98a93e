// Batch frontend: parse group/weight/real-form input, dispatch to the library,
// emit deterministic JSON or TSV reports.
//
// Exit codes: 0 success, 1 input error, 2 validation failure, 3 mode
// disagreement between the two micro-support computations.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "lmod/errors.hpp"
#include "lmod/kostant.hpp"
#include "lmod/l2.hpp"
#include "lmod/lmodule.hpp"
#include "lmod/parabolic.hpp"
#include "lmod/realform.hpp"
#include "lmod/rootdata.hpp"

using json = nlohmann::ordered_json;
using namespace lmod;

namespace {

constexpr const char* kSchema = "lmod-report-1";

long max_weyl_guard() {
    if (const char* env = std::getenv("LMOD_MAX_WEYL")) {
        char* end = nullptr;
        long v = std::strtol(env, &end, 10);
        if (end && *end == '\0' && v > 0) return v;
        throw ParseError("LMOD_MAX_WEYL must be a positive integer");
    }
    return 1000000;
}

Rat parse_rat(const std::string& s) {
    try {
        return Rat(s);
    } catch (const std::exception&) {
        throw ParseError("not a rational number: '" + s + "'");
    }
}

std::vector<std::string> split_list(const std::string& s) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : s) {
        if (c == ',') {
            out.push_back(cur);
            cur.clear();
        } else if (!std::isspace(static_cast<unsigned char>(c)) && c != '{' && c != '}') {
            cur += c;
        }
    }
    if (!cur.empty() || !out.empty()) out.push_back(cur);
    return out;
}

Weight parse_lambda(const RootDatum& rd, const std::string& s) {
    std::vector<std::string> parts = s.empty() ? std::vector<std::string>{} : split_list(s);
    if (static_cast<int>(parts.size()) != rd.ambient_dim())
        throw ParseError("lambda needs " + std::to_string(rd.ambient_dim()) +
                         " coordinates, got " + std::to_string(parts.size()));
    Weight w = rd.zero_weight();
    for (int i = 0; i < rd.rank(); ++i) w.fw[i] = parse_rat(parts[i]);
    for (int i = 0; i < rd.central_rank(); ++i)
        w.central[i] = parse_rat(parts[rd.rank() + i]);
    return w;
}

Parabolic parse_levi(const RootDatum& rd, const std::string& s) {
    Parabolic p{0};
    if (s.empty() || s == "{}") return p;
    if (s == "G" || s == "g") return Parabolic{(1u << rd.rank()) - 1};
    for (const std::string& part : split_list(s)) {
        char* end = nullptr;
        long idx = std::strtol(part.c_str(), &end, 10);
        if (!end || *end != '\0' || idx < 0 || idx >= rd.rank())
            throw ParseError("bad simple-root index '" + part + "'");
        p.levi |= (1u << idx);
    }
    return p;
}

std::string parab_str(const ParabolicLattice& lat, Parabolic p) {
    return p == lat.g() ? "G" : lat.str(p);
}

json weight_json(const Weight& w) {
    json a = json::array();
    for (const Rat& r : w.fw) a.push_back(rat_str(r));
    for (const Rat& r : w.central) a.push_back(rat_str(r));
    return a;
}

json support_json(const ParabolicLattice& lat, const DegreeSupport& ds) {
    json g = json::object(), p = json::object();
    for (const auto& [d, c] : ds.guaranteed) g[std::to_string(d)] = c.str();
    for (const auto& [d, c] : ds.possible) p[std::to_string(d)] = c.str();
    (void)lat;
    return json{{"guaranteed", g}, {"possible", p}};
}

RealFormEntry load_realform(const RootDatum& rd, const std::string& path) {
    if (path.empty()) return split_default();
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open real-form table '" + path + "'");
    json j;
    try {
        j = json::parse(in);
    } catch (const json::exception& e) {
        throw ParseError(std::string("real-form table: ") + e.what());
    }
    RealFormEntry e;
    e.split = false;
    try {
        for (const auto& [key, val] : j.at("levis").items()) {
            Parabolic p = parse_levi(rd, key);
            e.dim_D_table[p.levi] = val.at("dim_D").get<int>();
        }
        if (j.contains("equal_rank")) e.equal_rank_table = j["equal_rank"].get<bool>();
        if (j.contains("fundamental"))
            for (const auto& sub : j["fundamental"])
                e.fundamental_table.insert(parse_levi(rd, sub.get<std::string>()).levi);
        if (j.contains("involution")) e.involution = j["involution"].get<std::vector<int>>();
        if (j.value("flat_rank", "full") == std::string("subsystem"))
            e.flat_rank_mode = FlatRankMode::SubsystemRank;
    } catch (const json::exception& e2) {
        throw ParseError(std::string("real-form table: ") + e2.what());
    }
    e.validate(rd);
    return e;
}

LModule load_module(const RootDatum& rd, const std::string& path, uint64_t seed) {
    if (!path.empty()) {
        std::ifstream in(path);
        if (!in) throw ParseError("cannot open module file '" + path + "'");
        std::stringstream ss;
        ss << in.rdbuf();
        return lmodule_from_json(rd, ss.str());
    }
    return random_lmodule(rd, seed);
}

// flatten a JSON report into deterministic key<TAB>value lines
void emit_tsv(const json& j, const std::string& prefix, std::ostream& os) {
    if (j.is_object()) {
        for (const auto& [k, v] : j.items())
            emit_tsv(v, prefix.empty() ? k : prefix + "." + k, os);
    } else if (j.is_array()) {
        size_t i = 0;
        for (const auto& v : j) emit_tsv(v, prefix + "[" + std::to_string(i++) + "]", os);
    } else {
        os << prefix << '\t' << (j.is_string() ? j.get<std::string>() : j.dump()) << '\n';
    }
}

void emit(const json& report, const std::string& format) {
    if (format == "tsv")
        emit_tsv(report, "", std::cout);
    else
        std::cout << report.dump(2) << '\n';
}

json sigma_json(const ParabolicLattice& lat, const std::vector<L2MicroElement>& sigma) {
    json arr = json::array();
    for (const auto& el : sigma) {
        json types = json::object();
        for (const auto& [q, ds] : el.types) types[parab_str(lat, q)] = support_json(lat, ds);
        arr.push_back(json{{"P", parab_str(lat, el.P)},
                           {"mu", weight_json(el.mu)},
                           {"type_support", types}});
    }
    return arr;
}

struct Options {
    std::string cartan, lambda, levi, levi_q = "G", module_path, realform_path;
    std::string output = "json";
    uint64_t seed = 1;
};

int run(const std::string& cmd, const Options& opt) {
    RootDatum rd = build_root_datum(opt.cartan);
    ParabolicLattice lat(rd);
    weyl_enumerate(rd, max_weyl_guard());  // size guard, overridable via LMOD_MAX_WEYL

    json report;
    report["schema"] = kSchema;
    report["input"] = json{{"subcommand", cmd}, {"cartan", opt.cartan}};
    if (!opt.lambda.empty()) report["input"]["lambda"] = opt.lambda;
    if (!opt.module_path.empty()) report["input"]["module"] = opt.module_path;
    if (!opt.realform_path.empty()) report["input"]["realform"] = opt.realform_path;
    if (cmd == "validate" || cmd == "microsupport")
        if (opt.module_path.empty()) report["input"]["seed"] = opt.seed;

    if (cmd == "roots") {
        report["rank"] = rd.rank();
        report["weyl_order"] = static_cast<long>(weyl_enumerate(rd, max_weyl_guard()).size());
        json cm = json::array();
        for (const auto& row : rd.cartan_matrix) cm.push_back(row);
        report["cartan_matrix"] = cm;
        json pos = json::array();
        for (const auto& r : rd.positive_roots) pos.push_back(r);
        report["positive_roots"] = pos;
        report["rho"] = weight_json(rd.rho);
    } else if (cmd == "parabolics") {
        json arr = json::array();
        for (Parabolic p : lat.all()) {
            arr.push_back(json{{"P", parab_str(lat, p)},
                               {"delta_P", lat.delta(p)},
                               {"dim_nP", dim_nPQ(rd, p, lat.g())},
                               {"coset_reps", static_cast<long>(
                                                  coset_reps(rd, p, lat.g()).size())}});
        }
        report["parabolics"] = arr;
    } else if (cmd == "kostant") {
        Parabolic p = parse_levi(rd, opt.levi);
        Parabolic q = parse_levi(rd, opt.levi_q);
        Weight lam = parse_lambda(rd, opt.lambda);
        auto kd = kostant_cohomology(rd, p, q, lam);
        report["input"]["levi"] = parab_str(lat, p);
        report["input"]["levi_q"] = parab_str(lat, q);
        json arr = json::array();
        for (const auto& piece : kd.pieces)
            arr.push_back(json{{"weight", weight_json(piece.weight)},
                               {"degree", piece.degree},
                               {"word", piece.word}});
        report["pieces"] = arr;
    } else if (cmd == "validate") {
        LModule m = load_module(rd, opt.module_path, opt.seed);
        ValidationReport vr = validate(rd, m);
        report["ok"] = vr.ok;
        report["violations"] = vr.violations;
        emit(report, opt.output);
        return vr.ok ? 0 : 2;
    } else if (cmd == "microsupport") {
        LModule m = load_module(rd, opt.module_path, opt.seed);
        ValidationReport vr = validate(rd, m);
        if (!vr.ok) {
            report["ok"] = false;
            report["violations"] = vr.violations;
            emit(report, opt.output);
            return 2;
        }
        RealFormEntry entry = load_realform(rd, opt.realform_path);
        auto ms = micro_support_generic(rd, m, entry);
        json arr = json::array();
        for (const auto& el : ms) {
            json types = json::object();
            for (const auto& [q, degs] : el.type) {
                json dj = json::object();
                for (const auto& [d, n] : degs) dj[std::to_string(d)] = n;
                types[parab_str(lat, q)] = dj;
            }
            arr.push_back(json{{"P", parab_str(lat, el.P)},
                               {"mu", weight_json(el.mu)},
                               {"c_deg", el.c_deg},
                               {"d_deg", el.d_deg},
                               {"type", types}});
        }
        report["microsupport"] = arr;
        VanishingBounds vb = vanishing_bounds(rd, m, entry);
        report["vanishing"] = vb.empty;
        if (!vb.empty) report["bracket"] = json::array({vb.c, vb.d});
    } else if (cmd == "l2" || cmd == "report") {
        Weight lam = parse_lambda(rd, opt.lambda);
        RealFormEntry entry = load_realform(rd, opt.realform_path);
        L2Report rep = l2_report(rd, lam, entry);
        report["microsupport"] = sigma_json(lat, rep.sigma);
        report["equal_rank"] = rep.equal_rank;
        report["modes_agree"] = rep.modes_agree;
        report["vanishing"] = rep.vanishing;
        if (!rep.vanishing) report["bracket"] = json::array({rep.c, rep.d});
        if (cmd == "report") {
            json dims = json::array();
            for (const auto& el : rep.sigma)
                dims.push_back(json{{"P", parab_str(lat, el.P)},
                                    {"mu", weight_json(el.mu)},
                                    {"dim_D", dim_D(entry, rd, el.P)},
                                    {"dim_DV", dim_DV(entry, rd, el.P, el.mu)},
                                    {"fundamental", fundamental(entry, rd, el.P)}});
            report["dimensions"] = dims;
        }
    } else {
        throw ParseError("unknown subcommand '" + cmd + "'");
    }
    emit(report, opt.output);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact invariants of L-modules on reductive Borel-Serre compactifications"};
    app.require_subcommand(1);

    Options opt;
    std::vector<CLI::App*> subs;
    for (const char* name : {"roots", "parabolics", "kostant", "validate", "microsupport",
                             "l2", "report"}) {
        CLI::App* s = app.add_subcommand(name);
        s->add_option("--cartan", opt.cartan, "Cartan type, e.g. A2 or B2xA1")->required();
        s->add_option("--output", opt.output, "json or tsv")
            ->check(CLI::IsMember({"json", "tsv"}));
        subs.push_back(s);
    }
    subs[2]->add_option("--levi", opt.levi, "simple-root indices of P, e.g. 0,2");
    subs[2]->add_option("--levi-q", opt.levi_q, "simple-root indices of Q (default G)");
    for (int i : {2, 5, 6})
        subs[i]->add_option("--lambda", opt.lambda, "dominant weight, fw coordinates")
            ->required();
    for (int i : {3, 4}) {
        subs[i]->add_option("--module", opt.module_path, "L-module JSON file");
        subs[i]->add_option("--seed", opt.seed, "generate a random module instead");
    }
    for (int i : {4, 5, 6})
        subs[i]->add_option("--realform", opt.realform_path, "real-form table JSON");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) ? 1 : 0;
    }

    try {
        return run(app.get_subcommands().front()->get_name(), opt);
    } catch (const ModeDisagreement& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 3;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
}

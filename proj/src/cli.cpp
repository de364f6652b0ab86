#include "pqg/cli.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <fstream>
#include <sstream>

#include "pqg/corep.hpp"
#include "pqg/error.hpp"
#include "pqg/presentations.hpp"

namespace pqg {

SpecInput parse_spec_json(const json& j) {
    if (!j.is_object()) throw Error("schema", "/: expected an object");
    if (j.contains("tool") && j.contains("result")) {
        const json& r = j["result"];
        if (r.is_object() && r.contains("walk")) return walk_from_json(r["walk"]);
        if (r.is_object() && r.contains("hopf")) return hopf_from_json(r["hopf"]);
        throw Error("schema", "/result: envelope carries no walk or partial Hopf data");
    }
    if (j.contains("blocks")) return hopf_from_json(j);
    if (j.contains("irreducibles")) return fiber_from_json(j);
    if (j.contains("edges")) return walk_from_json(j);
    throw Error("schema", "/: unknown schema (expected blocks, irreducibles or edges)");
}

SpecInput parse_spec(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("io", "cannot open " + path);
    json j;
    try {
        j = json::parse(in);
    } catch (const json::parse_error& e) {
        throw Error("json", path + ": " + e.what());
    }
    return parse_spec_json(j);
}

json spec_to_json(const SpecInput& s) {
    if (auto* h = std::get_if<PartialHopfData>(&s)) return to_json(*h);
    if (auto* f = std::get_if<FiberData>(&s)) return fiber_to_json(*f);
    return walk_to_json(std::get<ReciprocalWalk>(s));
}

json envelope(const json& command, const json& result, const Report& report) {
    size_t passed = 0, failed = 0, skipped = 0, unknown = 0;
    for (auto& [name, t] : report.axioms()) {
        passed += t.passed;
        failed += t.failed;
        skipped += t.skipped;
        unknown += t.unknown;
    }
    json env = json::object();
    env["tool"] = "pqg";
    env["version"] = toolkit_version;
    env["command"] = command;
    env["result"] = result;
    env["report"] = report.axioms().empty() ? json::object() : report.to_json();
    env["summary"] = {{"passed", passed}, {"failed", failed}, {"skipped", skipped}, {"unknown", unknown},
                      {"status", failed == 0 ? "pass" : "fail"}};
    return env;
}

std::string emit(const json& env, const std::string& format) {
    if (format == "json") return env.dump(2) + "\n";
    std::ostringstream os;
    os << "pqg " << env.value("version", "") << "\n";
    if (env.contains("error")) {
        os << "error [" << env["error"]["code"].get<std::string>() << "]: " << env["error"]["message"].get<std::string>()
           << "\n";
        return os.str();
    }
    if (env.contains("report"))
        for (auto& [name, t] : env["report"].items()) {
            os << name << ": " << t["status"].get<std::string>() << " (passed " << t["passed"] << ", failed "
               << t["failed"] << ", skipped " << t["skipped"] << ", unknown " << t["unknown"] << ")\n";
            for (auto& w : t["witnesses"]) os << "  witness " << w.dump() << "\n";
        }
    if (env.contains("summary")) {
        const json& s = env["summary"];
        os << "summary: " << s["status"].get<std::string>() << " (passed " << s["passed"] << ", failed "
           << s["failed"] << ", skipped " << s["skipped"] << ")\n";
    }
    return os.str();
}

namespace {

std::pair<long, long> parse_window(const std::string& s) {
    auto colon = s.find(':');
    if (colon == std::string::npos) throw Error("usage", "window must be lo:hi, got " + s);
    try {
        size_t a = 0, b = 0;
        long lo = std::stol(s.substr(0, colon), &a), hi = std::stol(s.substr(colon + 1), &b);
        if (a != colon || b != s.size() - colon - 1) throw Error("usage", "window must be lo:hi, got " + s);
        if (lo > hi) throw Error("usage", "window lo must not exceed hi");
        return {lo, hi};
    } catch (const std::logic_error&) {
        throw Error("usage", "window must be lo:hi, got " + s);
    }
}

Scalar parse_flag_scalar(const std::string& name, const std::string& s) {
    if (s.empty()) throw Error("usage", "--" + name + " is required");
    try {
        return Scalar::parse(s);
    } catch (const Error& e) {
        throw Error("scalar", "--" + name + ": " + e.what());
    }
}

PartialHopfData hopf_input(const std::string& path) {
    SpecInput s = parse_spec(path);
    if (auto* h = std::get_if<PartialHopfData>(&s)) return *h;
    if (auto* f = std::get_if<FiberData>(&s)) return reconstruct(*f).hopf;
    throw Error("schema", path + ": expected partial Hopf data or fiber data");
}

ReciprocalWalk walk_input(const std::string& path) {
    SpecInput s = parse_spec(path);
    if (auto* w = std::get_if<ReciprocalWalk>(&s)) return *w;
    throw Error("schema", path + ": expected a walk");
}

// Colors and their bars are read off the edges; returns false when the walk is uncolored.
bool walk_colors(const ReciprocalWalk& w, std::vector<std::string>& colors, std::map<std::string, std::string>& bar) {
    for (auto& e : w.edges) {
        if (e.color.empty()) return false;
        if (!bar.count(e.color)) colors.push_back(e.color);
        bar[e.color] = w.edges[e.bar].color;
    }
    return !colors.empty();
}

struct Options {
    std::string format = "json", output;
    bool timing = false;
    std::string input, source, q, x, window, claimed_q;
    int degree = -1;
    bool check_hopf = false, colored = false;
    std::vector<int> zs;
};

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Exact verification toolkit for partial compact quantum groups", "pqg"};
    app.require_subcommand(1);
    app.fallthrough();
    Options o;
    app.add_option("--format", o.format, "json or text")->check(CLI::IsMember({"json", "text"}));
    app.add_option("-o,--output", o.output, "write the report here instead of stdout");
    app.add_flag("--timing", o.timing, "record wall time in the envelope");

    auto* verify = app.add_subcommand("verify", "run every partial Hopf verifier on a JSON input");
    verify->add_option("input", o.input)->required();

    auto* tannaka = app.add_subcommand("build-tannaka", "reconstruct from fiber data and check the round trip");
    tannaka->add_option("input", o.input)->required();

    auto* walk = app.add_subcommand("walk", "build or validate a reciprocal random walk");
    walk->add_option("source", o.source, "podles, one-vertex or a walk JSON path")->required();
    walk->add_option("--q", o.q);
    walk->add_option("--x", o.x);
    walk->add_option("--window", o.window, "lo:hi");

    auto* present = app.add_subcommand("present", "presentation of A(Gamma) with degree-bounded checks");
    present->add_option("input", o.input, "walk JSON path or dynamical")->required();
    present->add_option("--degree", o.degree)->required()->check(CLI::NonNegativeNumber);
    present->add_flag("--check-hopf", o.check_hopf);
    present->add_flag("--colored", o.colored, "check the colored matrix relations");
    present->add_option("--q", o.q);
    present->add_option("--x", o.x);
    present->add_option("--window", o.window, "lo:hi");
    present->add_option("--claimed-q", o.claimed_q, "q used in the dynamical relations");

    auto* corep = app.add_subcommand("corep-report", "irreducibles, Peter-Weyl and Schur orthogonality");
    corep->add_option("input", o.input)->required();

    auto* chars = app.add_subcommand("characters", "Woronowicz characters f_z");
    chars->add_option("input", o.input)->required();
    chars->add_option("--z", o.zs)->required()->delimiter(',')->allow_extra_args(false);

    std::vector<std::string> rev(args.rbegin(), args.rend());
    try {
        app.parse(rev);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e, out, err);
        return code == 0 ? 0 : 2;
    }

    json command = {{"verb", app.get_subcommands().front()->get_name()}, {"args", args}};
    auto start = std::chrono::steady_clock::now();
    json env;
    int status = 0;
    try {
        Report rep;
        json result = json::object();
        if (verify->parsed()) {
            PartialHopfData d = hopf_input(o.input);
            rep = verify_all(d);
            result = {{"objects", d.labels}, {"total_dim", d.total_dim()}};
        } else if (tannaka->parsed()) {
            SpecInput s = parse_spec(o.input);
            auto* f = std::get_if<FiberData>(&s);
            if (!f) throw Error("schema", o.input + ": expected fiber data");
            rep.merge(validate_fiber_data(*f));
            Reconstruction rec = reconstruct(*f);
            RoundtripResult rt = roundtrip_check(*f);
            rep.merge(rt.report);
            result = {{"hopf", to_json(rec.hopf)},
                      {"total_dim", rec.hopf.total_dim()},
                      {"irreducibles", rt.irreducible_count}};
        } else if (walk->parsed()) {
            ReciprocalWalk w;
            if (o.source == "podles") {
                if (o.window.empty()) throw Error("usage", "--window is required for podles");
                auto [lo, hi] = parse_window(o.window);
                ColoredWalk cw = podles_coloring(podles_walk(parse_flag_scalar("q", o.q), parse_flag_scalar("x", o.x), lo, hi));
                w = cw.walk;
                rep.merge(cw.report);
            } else if (o.source == "one-vertex") {
                w = one_vertex_walk();
            } else {
                w = walk_input(o.source);
            }
            rep.merge(validate_walk(w));
            rep.merge(verify_conjugate_equations(w, build_r_map(w)));
            result = {{"walk", walk_to_json(w)}};
        } else if (present->parsed()) {
            if (o.input == "dynamical") {
                if (o.window.empty()) throw Error("usage", "--window is required for dynamical");
                auto [lo, hi] = parse_window(o.window);
                Scalar q = parse_flag_scalar("q", o.q), x = parse_flag_scalar("x", o.x);
                std::optional<Scalar> claimed;
                if (!o.claimed_q.empty()) claimed = parse_flag_scalar("claimed-q", o.claimed_q);
                rep = dynamical_su2_report(q, x, lo, hi, o.degree, claimed);
                result = {{"q", q.str()}, {"x", x.str()}, {"window", {lo, hi}}, {"degree", o.degree}};
            } else {
                ReciprocalWalk w = walk_input(o.input);
                Presentation p = build_presentation(w);
                if (o.check_hopf) rep.merge(check_hopf_wellposed(p, o.degree));
                if (o.colored) {
                    std::vector<std::string> colors;
                    std::map<std::string, std::string> bar;
                    if (!walk_colors(w, colors, bar)) throw Error("usage", "--colored needs colors on every edge");
                    ColoredWalk cw = color_walk(w, colors, bar);
                    rep.merge(cw.report);
                    rep.merge(colored_matrix(p, cw, o.degree).report);
                }
                result = presentation_to_json(p);
                result["degree"] = o.degree;
            }
        } else if (corep->parsed()) {
            PartialHopfData d = hopf_input(o.input);
            auto irr = unitary_irreducibles(d);
            rep.merge(peter_weyl_report(d, irr));
            json dims = json::array(), tables = json::array();
            for (size_t i = 0; i < irr.size(); ++i) {
                dims.push_back(irr[i].reg.corep.total_dim());
                tables.push_back(schur_table(d, irr[i]));
                for (size_t j = 0; j < irr.size(); ++j) rep.merge(schur_report(d, irr[i], irr[j], i == j));
            }
            result = {{"irreducibles", irr.size()}, {"dims", dims}, {"schur", tables}};
        } else if (chars->parsed()) {
            PartialHopfData d = hopf_input(o.input);
            CharacterTable ct = woronowicz_characters(d, unitary_irreducibles(d), o.zs);
            rep.merge(ct.report);
            result = ct.to_json(d);
        }
        env = envelope(command, result, rep);
        status = rep.failures() == 0 ? 0 : 1;
    } catch (const Error& e) {
        env = {{"tool", "pqg"},
               {"version", toolkit_version},
               {"command", command},
               {"error", {{"code", e.code()}, {"message", e.what()}}}};
        status = 2;
    }
    if (o.timing)
        env["timing_ms"] = std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start)
                               .count();
    std::string text = emit(env, o.format);
    if (o.output.empty()) {
        out << text;
    } else {
        std::ofstream f(o.output);
        if (!f) {
            err << "pqg: cannot write " << o.output << "\n";
            return 2;
        }
        f << text;
    }
    if (status == 2) err << "pqg: " << env["error"]["message"].get<std::string>() << "\n";
    return status;
}

}  // namespace pqg

#include "cli.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

#include "CLI11.hpp"
#include "foamcalc/errors.hpp"
#include "foamcalc/formal_group.hpp"
#include "foamcalc/homology.hpp"
#include "foamcalc/skein.hpp"
#include "foamcalc/webs.hpp"

#ifdef FOAMCALC_HAVE_SELFTEST
#include "acceptance/criteria.hpp"
#endif

namespace foamcalc::cli {

namespace {

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw UsageError("cannot read " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

nlohmann::json read_json(const std::string& path) {
    try {
        return nlohmann::json::parse(read_file(path));
    } catch (const nlohmann::json::parse_error& e) {
        throw DomainError("MalformedJson", path + ": " + e.what());
    }
}

int default_trunc() {
    const char* env = std::getenv("FOAMCALC_TRUNC");
    if (!env || !*env) return 8;
    char* end = nullptr;
    long v = std::strtol(env, &end, 10);
    if (*end || v < 0 || v > 64) throw UsageError(std::string("FOAMCALC_TRUNC must be an integer in 0..64, got ") + env);
    return static_cast<int>(v);
}

Specialization load_preset(const std::string& name) {
    if (name == "khovanov") return Specialization::khovanov();
    if (name == "mult" || name == "multiplicative") return Specialization::multiplicative();
    return Specialization::from_json(read_json(name));
}

// PD text given inline or as a file holding it.
PDLink load_pd(const std::string& arg) {
    std::error_code ec;
    if (std::filesystem::is_regular_file(arg, ec)) {
        std::string text = read_file(arg);
        while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) text.pop_back();
        return PDLink::parse(text);
    }
    return PDLink::parse(arg);
}

template <class S>
nlohmann::json series_report(const S& s) {
    std::string tsv = "exponents\tcoefficient\n";
    for (auto& [k, c] : s.terms()) {
        std::string e;
        for (int i = 0; i < s.num_vars(); ++i) e += (i ? "," : "") + std::to_string(exp_of(k, i));
        tsv += e + "\t" + CoeffOps<typename S::Terms::mapped_type>::str(c) + "\n";
    }
    return {{"series", s.to_json()}, {"text", s.to_string()}, {"truncation", s.trunc_deg()}, {"tsv", tsv}};
}

void write_output(const std::string& text, const std::string& path, std::ostream& out) {
    if (path.empty()) {
        out << text;
        return;
    }
    std::ofstream f(path);
    if (!f) throw UsageError("cannot write " + path);
    f << text;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Exact foam evaluation, web state spaces and link homology", "foamcalc"};
    app.require_subcommand(1);
    app.fallthrough();  // global flags may follow the subcommand
    app.set_version_flag("--version", "foamcalc 0.1.0");

    int jobs = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
    bool quiet = false;
    std::string outPath;
    app.add_option("--jobs,-j", jobs, "worker threads")->check(CLI::PositiveNumber);
    app.add_flag("--quiet,-q", quiet, "do not echo the effective configuration");
    app.add_option("--out,-o", outPath, "write the artifact to this file");

    nlohmann::json config;
    std::function<int()> action;

    // eval / eval-gln share the p selection
    std::string foamPath, pName = "generic", format = "json";
    int trunc = -1;
    bool rw = false;
    auto add_series_opts = [&](CLI::App* sc) {
        sc->add_option("--foam", foamPath, "foam JSON")->required();
        sc->add_option("--p", pName, "generic | multiplicative | preset name or JSON file");
        sc->add_option("--trunc", trunc, "truncation degree (default FOAMCALC_TRUNC or 8)")->check(CLI::Range(0, 64));
        sc->add_option("--format", format)->check(CLI::IsMember({"json", "tsv", "text"}));
    };

    auto emit_series = [&](const nlohmann::json& rep) {
        if (format == "tsv") return write_output(rep["tsv"].get<std::string>(), outPath, out);
        if (format == "text") return write_output(rep["text"].get<std::string>() + "\n", outPath, out);
        nlohmann::json j = rep;
        j.erase("tsv");
        write_output(j.dump(2) + "\n", outPath, out);
    };

    auto eval_any = [&](bool forceGlN) {
        int D = trunc >= 0 ? trunc : default_trunc();
        config["trunc"] = D;
        config["p"] = pName;
        nlohmann::json j = read_json(foamPath);
        bool gln = forceGlN || j.value("type", std::string("gl2_prefoam")) == "gln_prefoam";
        nlohmann::json rep;
        if (rw) {
            GlNPrefoam F = j.value("type", std::string()) == "gln_prefoam" ? GlNPrefoam::from_json(j)
                                                                           : GlNPrefoam::from_gl2(Gl2Prefoam::from_json(j));
            rep = series_report(eval_rw(F, D));
        } else if (pName == "generic" || pName == "multiplicative") {
            TruncSeries p = pName == "generic" ? generic_p(D) : multiplicative_p(D);
            if (gln) {
                GlNPrefoam F = j.value("type", std::string()) == "gln_prefoam" ? GlNPrefoam::from_json(j)
                                                                               : GlNPrefoam::from_gl2(Gl2Prefoam::from_json(j));
                rep = series_report(eval_deformed_glN(F, p, jobs));
            } else {
                rep = series_report(eval_deformed_gl2(Gl2Prefoam::from_json(j), p, jobs));
            }
        } else {
            Specialization s = load_preset(pName);
            config["preset"] = s.to_json();
            IntSeries p = specialized_p(s.betaValues, D);
            if (gln) {
                GlNPrefoam F = j.value("type", std::string()) == "gln_prefoam" ? GlNPrefoam::from_json(j)
                                                                               : GlNPrefoam::from_gl2(Gl2Prefoam::from_json(j));
                rep = series_report(eval_deformed_glN(F, p, jobs));
            } else {
                rep = series_report(eval_deformed_gl2(Gl2Prefoam::from_json(j), p, jobs));
            }
        }
        emit_series(rep);
        return 0;
    };

    auto* evalCmd = app.add_subcommand("eval", "deformed evaluation of a GL(2) or GL(N) foam as a power series");
    add_series_opts(evalCmd);
    evalCmd->callback([&] { action = [&] { return eval_any(false); }; });

    auto* glnCmd = app.add_subcommand("eval-gln", "GL(N) evaluation; GL(2) input is converted");
    add_series_opts(glnCmd);
    glnCmd->add_flag("--undeformed", rw, "undeformed evaluation with the original sign");
    glnCmd->callback([&] { action = [&] { return eval_any(true); }; });

    std::string exactPreset;
    auto* exactCmd = app.add_subcommand("eval-exact", "exact value of a GL(2) foam in the ground ring");
    exactCmd->add_option("--foam", foamPath, "foam JSON")->required();
    exactCmd->add_option("--preset", exactPreset, "also specialize to an integer");
    exactCmd->callback([&] {
        action = [&] {
            auto v = eval_exact_gl2(Gl2Prefoam::from_json(read_json(foamPath)));
            nlohmann::json rep{{"value", v.to_json()}, {"text", v.to_string()}};
            if (!exactPreset.empty()) {
                auto s = load_preset(exactPreset);
                config["preset"] = s.to_json();
                rep["specialized"] = specialize(v, s).get_str();
            }
            write_output(rep.dump(2) + "\n", outPath, out);
            return 0;
        };
    });

    std::string suite = "all";
    auto* skeinCmd = app.add_subcommand("skein", "verify local relations on the closure family");
    skeinCmd->add_option("--suite", suite, "all or a relation id");
    skeinCmd->callback([&] {
        action = [&] {
            config["suite"] = suite;
            std::vector<RelationId> ids;
            if (suite == "all") ids = all_relations();
            else ids.push_back(relation_from_name(suite));
            nlohmann::json reports = nlohmann::json::array();
            bool pass = true;
            for (auto id : ids) {
                auto r = verify_relation(id, closure_family(), jobs);
                pass = pass && r.pass();
                reports.push_back(r.to_json());
            }
            write_output(nlohmann::json{{"pass", pass}, {"relations", reports}}.dump(2) + "\n", outPath, out);
            return pass ? 0 : 1;
        };
    });

    std::string law = "multiplicative", report = "series";
    std::optional<long> param;
    int nVars = 3;
    auto* fglCmd = app.add_subcommand("fgl", "formal group law series and operator checks");
    fglCmd->add_option("--law", law, "additive | multiplicative | lorentz | universal");
    fglCmd->add_option("--param", param, "numeric beta (multiplicative) or beta^2 (lorentz)");
    fglCmd->add_option("--trunc", trunc, "truncation degree")->check(CLI::Range(1, 40));
    fglCmd->add_option("--report", report)->check(CLI::IsMember({"series", "q", "log", "negative", "nilhecke"}));
    fglCmd->add_option("--n", nVars, "variables for the nil-Hecke checks")->check(CLI::Range(2, 4));
    fglCmd->add_option("--format", format)->check(CLI::IsMember({"json", "tsv", "text"}));
    fglCmd->callback([&] {
        action = [&] {
            int D = trunc >= 0 ? trunc : default_trunc();
            config["trunc"] = D;
            config["law"] = law;
            config["report"] = report;
            if (param) config["param"] = *param;
            auto F = FormalGroupLaw::by_name(law, D, param);
            if (report == "nilhecke") {
                config["n"] = nVars;
                auto r = check_nilhecke(F, nVars, D);
                if (format == "tsv") {
                    std::string s = "check\tpass\ttested\tdetail\n";
                    for (auto& c : r.checks)
                        s += c.name + "\t" + (c.pass ? "true" : "false") + "\t" + std::to_string(c.tested) + "\t" + c.detail + "\n";
                    write_output(s, outPath, out);
                } else {
                    write_output(r.to_json().dump(2) + "\n", outPath, out);
                }
                return r.all_pass() ? 0 : 1;
            }
            QSeries s = report == "series" ? F.series()
                        : report == "q"    ? q_series(F)
                        : report == "log"  ? fgl_log(F)
                                           : formal_negative(F);
            emit_series(series_report(s));
            return 0;
        };
    });

    std::string webAction, webPath, pd, moviePath;
    unsigned mask = 0;
    auto* webCmd = app.add_subcommand("web", "state space of a web: rank, basis, gram, map, reduce");
    webCmd->add_option("action", webAction)->required()->check(CLI::IsMember({"rank", "basis", "gram", "map", "reduce"}));
    auto* webOpt = webCmd->add_option("--web", webPath, "web JSON");
    auto* pdOpt = webCmd->add_option("--pd", pd, "take the web as a resolution of this PD code");
    webOpt->excludes(pdOpt);
    webCmd->add_option("--resolution", mask, "cube vertex as a bit mask over crossings");
    webCmd->add_option("--movie", moviePath, "movie JSON for `map`; it must start at the web");
    webCmd->callback([&] {
        action = [&] {
            Web w;
            if (!webPath.empty()) {
                w = Web::from_json(read_json(webPath));
            } else if (!pd.empty()) {
                auto rs = resolutions(load_pd(pd));
                if (mask >= rs.size()) throw UsageError("resolution index out of range");
                w = rs[mask].web;
                config["resolution"] = mask;
            } else {
                throw UsageError("web needs --web or --pd");
            }
            config["action"] = webAction;
            nlohmann::json rep;
            if (webAction == "reduce") {
                rep = reduce_web(w).to_json();
            } else {
                auto ss = state_space_basis(w, jobs);
                if (webAction == "rank") {
                    auto r = ss.graded_rank();
                    nlohmann::json c = nlohmann::json::object();
                    for (auto& [e, v] : r.coeffs) c[std::to_string(e)] = v.get_str();
                    rep = {{"rank", ss.basis.size()}, {"gradedRank", r.to_string()}, {"coefficients", c}};
                } else if (webAction == "basis") {
                    rep = ss.to_json();
                } else if (webAction == "gram") {
                    auto d = determinant(ss.gram);
                    rep = {{"gram", matrix_json(ss.gram)}, {"determinant", d.to_string()}};
                } else {
                    if (moviePath.empty()) throw UsageError("web map needs --movie");
                    FoamMovie f = FoamMovie::from_json(read_json(moviePath));
                    f.start = w;
                    auto cod = state_space_basis(f.end(), jobs);
                    rep = {{"matrix", matrix_json(foam_map_matrix(f, ss, cod, jobs))},
                           {"degree", f.degree()},
                           {"codomainDegrees", cod.degrees},
                           {"domainDegrees", ss.degrees}};
                }
            }
            write_output(rep.dump(2) + "\n", outPath, out);
            return 0;
        };
    });

    std::string preset = "khovanov", compare;
    bool euler = false;
    auto* homCmd = app.add_subcommand("homology", "bigraded homology of a link diagram");
    homCmd->add_option("--pd", pd, "PD code, inline or in a file")->required();
    homCmd->add_option("--preset", preset, "khovanov | mult | preset JSON file");
    homCmd->add_option("--format", format)->check(CLI::IsMember({"tsv", "json"}));
    homCmd->add_option("--compare", compare, "second diagram; report whether the tables agree");
    homCmd->add_flag("--euler", euler, "print the graded Euler characteristic instead");
    homCmd->callback([&] {
        action = [&] {
            auto s = load_preset(preset);
            config["preset"] = s.to_json();
            auto d = load_pd(pd);
            config["pd"] = d.to_string();
            if (!compare.empty()) {
                auto d2 = load_pd(compare);
                config["compare"] = d2.to_string();
                auto rep = reidemeister_check(d, d2, s, jobs);
                write_output(rep.to_json().dump(2) + "\n", outPath, out);
                return rep.equal ? 0 : 1;
            }
            auto c = build_complex(d, s, jobs);
            if (euler) {
                write_output(graded_euler(c).to_string() + "\n", outPath, out);
                return 0;
            }
            auto t = homology(c);
            if (format == "json") write_output(t.to_json().dump(2) + "\n", outPath, out);
            else write_output(t.to_tsv(), outPath, out);
            return 0;
        };
    });

    std::vector<int> only;
    auto* selfCmd = app.add_subcommand("selftest", "run the acceptance suite");
    selfCmd->add_option("--only", only, "criterion ids")->check(CLI::Range(1, 10));
    selfCmd->callback([&] {
        action = [&] {
#ifdef FOAMCALC_HAVE_SELFTEST
            bool pass = true;
            acceptance::run_all(jobs, only, [&](const acceptance::CriterionResult& r) {
                out << acceptance::format_line(r) << "\n" << std::flush;
                pass = pass && r.pass;
            });
            return pass ? 0 : 1;
#else
            throw DomainError("Unsupported", "built without the acceptance suite");
#endif
        };
    });

    // format defaults differ per subcommand
    for (auto* sc : {homCmd}) sc->preparse_callback([&](size_t) { format = "tsv"; });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e, out, err) == 0 ? 0 : 2;
    }

    try {
        config["subcommand"] = app.get_subcommands().front()->get_name();
        config["jobs"] = jobs;
        int code = action();
        if (!quiet) err << "# foamcalc 0.1.0 " << config.dump() << "\n";
        return code;
    } catch (const UsageError& e) {
        err << nlohmann::json{{"error", "Usage"}, {"message", e.what()}}.dump() << "\n";
        return 2;
    } catch (const DomainError& e) {
        if (!quiet) err << "# foamcalc 0.1.0 " << config.dump() << "\n";
        out << nlohmann::json{{"error", e.kind()}, {"message", e.what()}}.dump() << "\n";
        return 1;
    } catch (const nlohmann::json::exception& e) {
        err << nlohmann::json{{"error", "Usage"}, {"message", std::string("malformed JSON input: ") + e.what()}}.dump()
            << "\n";
        return 2;
    } catch (const std::exception& e) {
        err << nlohmann::json{{"error", "Internal"}, {"message", e.what()}}.dump() << "\n";
        return 1;
    }
}

}  // namespace foamcalc::cli

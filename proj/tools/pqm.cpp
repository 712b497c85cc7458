// pqm: command-line front end for peculiar modules and their curves.
//
// Exit codes: 0 success, 1 mathematical failure or violation, 2 usage or
// parse error.

#include <filesystem>
#include <fstream>
#include <future>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "pqm/curvekit.hpp"
#include "pqm/io.hpp"
#include "pqm/morcx.hpp"
#include "pqm/pairkit.hpp"
#include "pqm/pqmod.hpp"
#include "pqm/tanglezoo.hpp"

namespace {

using pqm::io::json;

constexpr int kOk = 0;
constexpr int kFail = 1;
constexpr int kUsage = 2;

// A module argument is a JSON file, "-" for stdin, or a builder spec such as
// "x+" or "pretzel:1,1".
pqm::PqModule load(const std::string& arg) {
    if (arg == "-" || std::filesystem::exists(arg)) return pqm::io::read_module(arg);
    pqm::TangleSpec spec;
    try {
        spec = pqm::TangleSpec::parse(arg);
    } catch (const std::exception&) {
        throw pqm::io::ParseError("'" + arg + "' is neither a readable file nor a tangle spec");
    }
    return pqm::build(spec);
}

void emit(const std::string& out, const json& j) { pqm::io::write_text_file(out, pqm::io::dump(j)); }

int require_valid_or_report(const pqm::PqModule& m) {
    const auto rep = pqm::validate(m);
    if (rep.ok) return kOk;
    for (auto& s : rep.issues) std::cerr << "violation: " << s << "\n";
    return kFail;
}

struct PairOutcome {
    json result;
    bool agree = true;
    std::string diff;
};

PairOutcome run_pair(const pqm::PqModule& m1, const pqm::PqModule& m2, const std::vector<std::string>& engines) {
    PairOutcome o;
    json per_engine = json::object();
    std::vector<std::pair<std::string, int>> totals;
    for (auto& e : engines) {
        if (e == "box") {
            auto r = pqm::box_pair(m1, m2);
            per_engine["box"] = pqm::io::dims_to_json(r.dims.normalized(), {r.link, "box"});
            totals.push_back({"box", r.dims.total()});
        } else if (e == "mor") {
            auto d = pqm::mor_pair(m1, m2);
            auto link = pqm::stabilization_exponent(m1.matching, m2.matching);
            per_engine["mor"] = pqm::io::dims_to_json(d.normalized(), {link, "mor"});
            totals.push_back({"mor", d.total()});
        } else if (e == "curves") {
            auto r = pqm::lagrangian_pair_modules(m1, m2);
            auto link = pqm::stabilization_exponent(m1.matching, m2.matching);
            per_engine["curves"] = {{"total", r.total},
                                   {"details", r.details},
                                   {"components", link.components},
                                   {"stabilization", link.stabilization},
                                   {"engine", "curves"}};
            totals.push_back({"curves", r.total});
        } else {
            throw CLI::ValidationError("--engine", "unknown engine '" + e + "'");
        }
    }
    for (auto& [name, t] : totals)
        if (t != totals.front().second) {
            o.agree = false;
            std::ostringstream os;
            os << "engine disagreement: " << totals.front().first << " total " << totals.front().second << ", " << name
               << " total " << t;
            o.diff = os.str();
        }
    o.result = engines.size() == 1 ? per_engine[engines.front()] : per_engine;
    if (!o.agree) o.result["disagreement"] = o.diff;
    return o;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"peculiar modules, immersed curves and pairings"};
    app.require_subcommand(1);
    std::string out;

    std::string f1, f2;
    auto* check = app.add_subcommand("check", "validate a module file");
    check->add_option("file", f1)->required();

    auto* reduce = app.add_subcommand("reduce", "cancel idempotent arrows");
    reduce->add_option("file", f1)->required();
    reduce->add_option("-o", out, "output file");

    std::string svg;
    auto* curves = app.add_subcommand("curves", "canonical curve set of a module");
    curves->add_option("file", f1)->required();
    curves->add_option("-o", out, "output file");
    curves->add_option("--svg", svg, "also draw the curves");

    std::string engine_list = "box";
    std::string batch;
    auto* pair = app.add_subcommand("pair", "pair two tangles (first factor as given, reversal applied internally)");
    pair->add_option("file1", f1);
    pair->add_option("file2", f2);
    pair->add_option("--engine", engine_list, "box|mor|curves, comma separated for a cross-check");
    pair->add_option("--batch", batch, "file with one 'file1 file2' pair per line");
    pair->add_option("-o", out, "output file");

    std::string sites = "a,c";
    auto* close = app.add_subcommand("close", "lazy closure at two opposite sites");
    close->add_option("file", f1)->required();
    close->add_option("--sites", sites, "a,c or b,d");
    close->add_option("-o", out, "output file");

    auto* mor = app.add_subcommand("mor", "homology of the morphism complex Mor(file1, file2)");
    mor->add_option("file1", f1)->required();
    mor->add_option("file2", f2)->required();
    mor->add_option("-o", out, "output file");

    std::string mode = "full";
    bool exact = false;
    auto* equiv = app.add_subcommand("equiv", "decide homotopy equivalence via canonical curve sets");
    equiv->add_option("file1", f1)->required();
    equiv->add_option("file2", f2)->required();
    equiv->add_option("--mode", mode, "full|univariate|ungraded");
    equiv->add_flag("--exact", exact, "do not allow an overall grading shift");

    std::string spec;
    auto* buildc = app.add_subcommand("build", "module of a tangle family");
    buildc->add_option("spec", spec, "zero, inf, x+, x-, twist:n, pretzel:n,m, rational:p/q, fig8:a|b")->required();
    buildc->add_option("-o", out, "output file");

    auto* mirrorc = app.add_subcommand("mirror", "mirror a module");
    mirrorc->add_option("file", f1)->required();
    mirrorc->add_option("-o", out, "output file");

    auto* reversec = app.add_subcommand("reverse", "reverse the orientation of a module");
    reversec->add_option("file", f1)->required();
    reversec->add_option("-o", out, "output file");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? kOk : kUsage;
    }

    try {
        if (*check) {
            const auto m = load(f1);
            const int rc = require_valid_or_report(m);
            if (rc == kOk) std::cout << "ok\n";
            return rc;
        }
        if (*reduce) {
            const auto m = load(f1);
            if (require_valid_or_report(m) != kOk) return kFail;
            emit(out, pqm::io::module_to_json(pqm::reduce(m)));
            return kOk;
        }
        if (*curves) {
            const auto m = load(f1);
            if (require_valid_or_report(m) != kOk) return kFail;
            const auto c = pqm::curves_of(m);
            emit(out, pqm::io::curves_to_json(c));
            if (!svg.empty()) pqm::io::write_text_file(svg, pqm::io::render_svg(c));
            return kOk;
        }
        if (*pair) {
            std::vector<std::string> engines;
            std::stringstream ss(engine_list);
            for (std::string e; std::getline(ss, e, ',');)
                if (!e.empty()) engines.push_back(e);
            if (engines.empty()) throw CLI::ValidationError("--engine", "no engine given");
            if (!batch.empty()) {
                std::ifstream in(batch);
                if (!in) throw pqm::io::ParseError("cannot open batch file '" + batch + "'");
                std::vector<std::pair<std::string, std::string>> jobs;
                for (std::string line; std::getline(in, line);) {
                    std::istringstream ls(line);
                    std::string a, b;
                    if (!(ls >> a)) continue;
                    if (!(ls >> b)) throw pqm::io::ParseError("batch line needs two modules: '" + line + "'");
                    jobs.push_back({a, b});
                }
                std::vector<pqm::PqModule> mods;
                for (auto& [a, b] : jobs) {
                    mods.push_back(load(a));
                    mods.push_back(load(b));
                }
                std::vector<std::future<PairOutcome>> futs;
                for (std::size_t k = 0; k < jobs.size(); ++k)
                    futs.push_back(std::async(std::launch::async, run_pair, std::cref(mods[2 * k]),
                                              std::cref(mods[2 * k + 1]), std::cref(engines)));
                json arr = json::array();
                bool agree = true;
                for (std::size_t k = 0; k < jobs.size(); ++k) {
                    auto o = futs[k].get();
                    agree = agree && o.agree;
                    if (!o.agree) std::cerr << jobs[k].first << " x " << jobs[k].second << ": " << o.diff << "\n";
                    arr.push_back({{"first", jobs[k].first}, {"second", jobs[k].second}, {"result", o.result}});
                }
                emit(out, arr);
                return agree ? kOk : kFail;
            }
            if (f1.empty() || f2.empty()) throw CLI::ValidationError("pair", "two modules or --batch required");
            const auto m1 = load(f1), m2 = load(f2);
            if (require_valid_or_report(m1) != kOk || require_valid_or_report(m2) != kOk) return kFail;
            auto o = run_pair(m1, m2, engines);
            emit(out, o.result);
            if (!o.agree) {
                std::cerr << o.diff << "\n";
                return kFail;
            }
            return kOk;
        }
        if (*close) {
            const auto m = load(f1);
            if (require_valid_or_report(m) != kOk) return kFail;
            if (sites != "a,c" && sites != "b,d") throw CLI::ValidationError("--sites", "expected a,c or b,d");
            const auto r = pqm::omega_close(m, sites);
            json j = pqm::io::dims_to_json(r.dims.normalized());
            j["components"] = r.components;
            j["sites"] = sites;
            emit(out, j);
            return kOk;
        }
        if (*mor) {
            const auto m1 = load(f1), m2 = load(f2);
            if (require_valid_or_report(m1) != kOk || require_valid_or_report(m2) != kOk) return kFail;
            const auto d = pqm::mor_homology_window(m1, m2);
            emit(out, pqm::io::dims_to_json(d));
            return d.stabilized ? kOk : kFail;
        }
        if (*equiv) {
            pqm::GradingMode gm;
            if (mode == "full") gm = pqm::GradingMode::Full;
            else if (mode == "univariate") gm = pqm::GradingMode::Univariate;
            else if (mode == "ungraded") gm = pqm::GradingMode::Ungraded;
            else throw CLI::ValidationError("--mode", "expected full, univariate or ungraded");
            const auto m1 = load(f1), m2 = load(f2);
            if (require_valid_or_report(m1) != kOk || require_valid_or_report(m2) != kOk) return kFail;
            const bool eq = pqm::equivalent(m1, m2, gm, !exact);
            std::cout << (eq ? "true" : "false") << "\n";
            return eq ? kOk : kFail;
        }
        if (*buildc) {
            pqm::TangleSpec ts;
            try {
                ts = pqm::TangleSpec::parse(spec);
            } catch (const std::exception& e) {
                throw pqm::io::ParseError(e.what());
            }
            emit(out, pqm::io::module_to_json(pqm::build(ts)));
            return kOk;
        }
        if (*mirrorc || *reversec) {
            const auto m = load(f1);
            if (require_valid_or_report(m) != kOk) return kFail;
            emit(out, pqm::io::module_to_json(*mirrorc ? pqm::mirror(m) : pqm::reverse(m)));
            return kOk;
        }
    } catch (const pqm::io::ParseError& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return kUsage;
    } catch (const CLI::Error& e) {
        std::cerr << "usage: " << e.what() << "\n";
        return kUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kFail;
    }
    return kUsage;
}

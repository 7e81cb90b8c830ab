// ggw: command-line front end. Every subcommand builds a JSON job and hands
// it to ggw::cli::run; `run` and `batch` take jobs from files directly.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "ggw/cli.hpp"

namespace {

using ggw::cli::json;

/// "1,-2,3" -> [1, -2, 3]; entries stay strings when they contain '/'.
json parse_list(const std::string& s) {
    json out = json::array();
    std::string item;
    auto flush = [&]() {
        if (item.empty()) return;
        if (item.find('/') != std::string::npos) {
            out.push_back(item);
        } else {
            try {
                std::size_t used = 0;
                long v = std::stol(item, &used);
                if (used != item.size()) throw ggw::InputError("bad integer '" + item + "'");
                out.push_back(v);
            } catch (const std::logic_error&) {
                throw ggw::InputError("bad list entry '" + item + "'");
            }
        }
        item.clear();
    };
    for (char c : s) {
        if (c == ',' || c == ' ') flush();
        else item += c;
    }
    flush();
    return out;
}

/// "theta1=1/7,xi1=1/3" -> {"theta1": "1/7", "xi1": "1/3"}.
json parse_assignments(const std::string& s) {
    json out = json::object();
    std::string item;
    auto flush = [&]() {
        if (item.empty()) return;
        auto eq = item.find('=');
        if (eq == std::string::npos) throw ggw::InputError("expected name=value, got '" + item + "'");
        out[item.substr(0, eq)] = item.substr(eq + 1);
        item.clear();
    };
    for (char c : s) {
        if (c == ',') flush();
        else item += c;
    }
    flush();
    return out;
}

struct Options {
    std::string input;
    std::string output = "text";
    int trunc = ggw::kDefaultTruncation;
    bool trunc_set = false;
};

struct Leaf {
    CLI::App* app;
    std::string command;
    std::function<void(json&)> fill;
};

int emit(const ggw::cli::RunResult& r) {
    std::fwrite(r.output.data(), 1, r.output.size(), stdout);
    return r.exit_code;
}

int input_error(const std::string& msg) {
    std::fprintf(stdout, "error (input): %s\n", msg.c_str());
    return 2;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact stability, scaled-curve and potential computations for gauged Gromov-Witten theory"};
    app.require_subcommand(1);
    Options opt;
    app.add_option("--output", opt.output, "text or json")->check(CLI::IsMember({"text", "json"}));
    app.add_option("--input", opt.input, "payload (or full job) as a JSON file");
    app.add_option("--trunc", opt.trunc, "series truncation")->each([&](const std::string&) { opt.trunc_set = true; });

    std::vector<Leaf> leaves;
    auto group = [&](const std::string& name, const std::string& desc) {
        auto* g = app.add_subcommand(name, desc);
        g->require_subcommand(1);
        return g;
    };

    // stability
    auto* stability = group("stability", "Hilbert-Mumford stability for torus actions");
    std::string support;
    auto* classify = stability->add_subcommand("classify", "classify a support (all supports if none given)");
    classify->add_option("--support", support, "1-based indices, e.g. 1,3");
    leaves.push_back({classify, "stability.classify", [&](json& p) {
                          if (!support.empty()) p["support"] = parse_list(support);
                      }});
    leaves.push_back({stability->add_subcommand("strata", "Kirwan-Ness strata"), "stability.strata", nullptr});

    // mundet
    auto* mundet = group("mundet", "Mundet stability of toric gauged maps");
    leaves.push_back({mundet->add_subcommand("check", "verdict plus witness"), "mundet.check", nullptr});
    long qk = 0, qdp = 0, qdu = 0;
    auto* quotdim = mundet->add_subcommand("quotdim", "dimension of the quot compactification");
    quotdim->add_option("--k", qk)->required();
    quotdim->add_option("--dP", qdp)->required();
    quotdim->add_option("--du", qdu)->required();
    leaves.push_back({quotdim, "mundet.quotdim", [&](json& p) {
                          p["k"] = qk;
                          p["dP"] = qdp;
                          p["du"] = qdu;
                      }});

    // curves
    auto* curves = group("curves", "stable scaled marked curves");
    long cn = 0, cbound = ggw::kDefaultCurveBound;
    std::string cmode = "projective", cterm, cgamma;
    auto* enumerate = curves->add_subcommand("enumerate", "all combinatorial types with their dimensions");
    enumerate->add_option("--n", cn)->required();
    enumerate->add_option("--mode", cmode)->check(CLI::IsMember({"projective", "affine"}));
    enumerate->add_option("--bound", cbound, "largest n accepted");
    leaves.push_back({enumerate, "curves.enumerate", [&](json& p) {
                          p["n"] = cn;
                          p["mode"] = cmode;
                          p["bound"] = cbound;
                      }});
    auto* balanced = curves->add_subcommand("balanced", "check balanced smoothing parameters");
    balanced->add_option("--term", cterm)->required();
    balanced->add_option("--gamma", cgamma, "one rational per edge, in written order")->required();
    leaves.push_back({balanced, "curves.balanced", [&](json& p) {
                          p["term"] = cterm;
                          p["gamma"] = parse_list(cgamma);
                      }});
    auto* divisors = curves->add_subcommand("divisors", "linearly equivalent boundary divisors");
    divisors->add_option("--n", cn)->required();
    divisors->add_option("--mode", cmode)->check(CLI::IsMember({"projective", "affine"}));
    leaves.push_back({divisors, "curves.divisors", [&](json& p) {
                          p["n"] = cn;
                          p["mode"] = cmode;
                      }});

    // potential
    auto* potential = group("potential", "truncated potentials");
    std::string pweights, pbranch = "minus", pspec;
    long prank = 1, pk = 1, pr = 1, pm = 0;
    bool psymbolic = false;
    auto* localized = potential->add_subcommand("localized", "localized gauged potential of a linear action");
    localized->add_option("--weights", pweights, "rank-1 weights, e.g. 1,1");
    localized->add_option("--rank", prank);
    localized->add_option("--branch", pbranch)->check(CLI::IsMember({"minus", "plus"}));
    leaves.push_back({localized, "potential.localized", [&](json& p) {
                          if (!pweights.empty()) p["weights"] = parse_list(pweights);
                          if (!p.contains("rank")) p["rank"] = prank;
                          p["branch"] = pbranch;
                      }});
    auto* jframed = potential->add_subcommand("jframed", "framed-sheaf fundamental solution");
    jframed->add_option("--k", pk)->required();
    jframed->add_option("--r", pr)->required();
    jframed->add_option("--specialize", pspec, "name=p/q,...; omitted: default point")->expected(0, 1);
    jframed->add_flag("--symbolic", psymbolic, "keep all parameters symbolic");
    leaves.push_back({jframed, "potential.jframed", [&](json& p) {
                          p["k"] = pk;
                          p["r"] = pr;
                          if (psymbolic) p["specialize"] = false;
                          else if (!pspec.empty()) p["specialize"] = parse_assignments(pspec);
                          else if (!p.contains("specialize")) p["specialize"] = true;
                      }});
    auto* delta = potential->add_subcommand("delta", "Delta factor for theta.d = m");
    delta->add_option("--m", pm)->required();
    leaves.push_back({delta, "potential.delta", [&](json& p) { p["m"] = pm; }});

    // qde
    auto* qde = group("qde", "quantum differential / difference equation residuals");
    long qdek = 2;
    bool ktheory = false;
    auto* qcheck = qde->add_subcommand("check", "residual of the J-function of P^{k-1}");
    qcheck->add_option("--k", qdek)->required();
    qcheck->add_flag("--ktheory", ktheory);
    leaves.push_back({qcheck, "qde.check", [&](json& p) {
                          p["k"] = qdek;
                          p["ktheory"] = ktheory;
                      }});

    // presentation
    auto* presentation = group("presentation", "quantum ring presentations");
    long prk = 2;
    std::string tweights, tgens;
    auto* projective = presentation->add_subcommand("projective", "QH or QK of P^{k-1}");
    projective->add_option("--k", prk)->required();
    projective->add_flag("--ktheory", ktheory);
    leaves.push_back({projective, "presentation.projective", [&](json& p) {
                          p["k"] = prk;
                          p["ktheory"] = ktheory;
                      }});
    auto* toric = presentation->add_subcommand("toric", "Batyrev-type relations");
    toric->add_option("--weights", tweights, "rank-1 weights, e.g. 1,1,-1");
    toric->add_option("--generators", tgens, "rank-1 degree generators, e.g. 1");
    leaves.push_back({toric, "presentation.toric", [&](json& p) {
                          if (!tweights.empty()) p["weights"] = parse_list(tweights);
                          if (!tgens.empty()) p["generators"] = parse_list(tgens);
                      }});

    // age, wallcross
    auto* agegrp = group("age", "age grading");
    long ar = 1;
    std::string aexp;
    auto* acompute = agegrp->add_subcommand("compute", "(1/r) sum s_j");
    acompute->add_option("--r", ar)->required();
    acompute->add_option("--exponents", aexp)->required();
    leaves.push_back({acompute, "age.compute", [&](json& p) {
                          p["r"] = ar;
                          p["exponents"] = parse_list(aexp);
                      }});
    auto* wall = group("wallcross", "wall-crossing");
    std::string wweights;
    auto* crep = wall->add_subcommand("crepancy", "crepant iff the weights sum to zero");
    crep->add_option("--weights", wweights)->required();
    leaves.push_back({crep, "wallcross.crepancy", [&](json& p) { p["weights"] = parse_list(wweights); }});

    // run / batch
    auto* runjob = app.add_subcommand("run", "run one job document {command, payload, output}");
    std::string batch_file;
    unsigned jobs = 1;
    bool update = false;
    auto* batchcmd = app.add_subcommand("batch", "run a JSON list of jobs");
    batchcmd->add_option("file", batch_file)->required();
    batchcmd->add_option("--jobs", jobs, "worker threads")->check(CLI::Range(1U, 256U));
    batchcmd->add_flag("--update-golden", update, "rewrite each job's expect field from this run");

    // Global options may follow the subcommand.
    auto fall = [](auto&& self, CLI::App* a) -> void {
        a->fallthrough();
        for (auto* sub : a->get_subcommands({})) self(self, sub);
    };
    fall(fall, &app);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        ggw::cli::OutputFormat fmt = ggw::cli::parse_output_format(opt.output);
        if (runjob->parsed()) {
            if (opt.input.empty()) return input_error("run needs --input <job.json>");
            auto job = ggw::cli::job_from_json(ggw::cli::read_json_file(opt.input));
            if (app.count("--output")) job.output = fmt;
            if (opt.trunc_set && !job.payload.contains("trunc")) job.payload["trunc"] = opt.trunc;
            return emit(ggw::cli::run(job));
        }
        if (batchcmd->parsed()) {
            json doc = ggw::cli::read_json_file(batch_file);
            auto outcome = ggw::cli::batch(doc, jobs);
            std::fwrite(outcome.report.data(), 1, outcome.report.size(), stdout);
            if (update) {
                std::ofstream out(batch_file);
                out << outcome.updated.dump(2) << "\n";
                return 0;
            }
            return outcome.exit_code;
        }
        for (const auto& leaf : leaves) {
            if (!leaf.app->parsed()) continue;
            ggw::cli::JobSpec job;
            job.command = leaf.command;
            job.output = fmt;
            if (!opt.input.empty()) {
                json doc = ggw::cli::read_json_file(opt.input);
                job.payload = doc.contains("payload") && doc.contains("command") ? doc.at("payload") : doc;
            }
            if (opt.trunc_set || !job.payload.contains("trunc")) job.payload["trunc"] = opt.trunc;
            if (leaf.fill) leaf.fill(job.payload);
            return emit(ggw::cli::run(job));
        }
        return input_error("no command given");
    } catch (const ggw::InputError& e) {
        return input_error(e.what());
    } catch (const ggw::DomainError& e) {
        std::fprintf(stdout, "error (domain): %s\n", e.what());
        return 1;
    } catch (const json::exception& e) {
        return input_error(e.what());
    }
}

#pragma once

/**
 * @file cli.hpp
 * @brief JSON job dispatch behind the ggw command-line tool.
 *
 * A job is {"command": ..., "payload": {...}, "output": "text"|"json"}.
 * run() never throws: it returns an exit status (0 ok, 1 domain error,
 * 2 malformed input) and the rendered output. Rationals travel as strings
 * "p/q" (plain JSON integers are also accepted); floats are rejected.
 */

#include <algorithm>
#include <atomic>
#include <fstream>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "json.hpp"

#include "ggw/errors.hpp"
#include "ggw/lattice_stability.hpp"
#include "ggw/mundet.hpp"
#include "ggw/potentials.hpp"
#include "ggw/scaled_curves.hpp"

namespace ggw::cli {

using json = nlohmann::json;

enum class OutputFormat { text, json };

struct JobSpec {
    std::string command;
    json payload = json::object();
    OutputFormat output = OutputFormat::text;
};

struct RunResult {
    int exit_code = 0;
    std::string output;
};

inline const std::vector<std::string>& commands() {
    static const std::vector<std::string> names = {
        "stability.classify", "stability.strata",   "mundet.check",        "mundet.quotdim",
        "curves.enumerate",   "curves.balanced",    "curves.divisors",     "potential.localized",
        "potential.jframed",  "potential.delta",    "qde.check",           "presentation.projective",
        "presentation.toric", "age.compute",        "wallcross.crepancy"};
    return names;
}

// ------------------------------------------------------------ payload readers

namespace io {

inline const json& req(const json& p, const std::string& key) {
    if (!p.is_object() || !p.contains(key)) throw InputError("payload field '" + key + "' is required");
    return p.at(key);
}

inline Rational rational(const json& j) {
    if (j.is_string()) return Rational::parse(j.get<std::string>());
    if (j.is_number_integer()) return Rational(j.get<long>());
    throw InputError("rationals must be strings \"p/q\" or integers, got " + j.dump());
}

inline long integer(const json& j) {
    if (!j.is_number_integer()) throw InputError("expected an integer, got " + j.dump());
    return j.get<long>();
}

inline bool boolean(const json& p, const std::string& key, bool dflt) {
    if (!p.contains(key)) return dflt;
    if (!p.at(key).is_boolean()) throw InputError("field '" + key + "' must be a boolean");
    return p.at(key).get<bool>();
}

inline long integer_or(const json& p, const std::string& key, long dflt) {
    return p.contains(key) ? integer(p.at(key)) : dflt;
}

inline std::vector<long> integers(const json& j) {
    if (!j.is_array()) throw InputError("expected an array of integers, got " + j.dump());
    std::vector<long> out;
    for (const auto& x : j) out.push_back(integer(x));
    return out;
}

inline RationalVector rationals(const json& j) {
    if (!j.is_array()) throw InputError("expected an array of rationals, got " + j.dump());
    RationalVector out;
    for (const auto& x : j) out.push_back(rational(x));
    return out;
}

/// Weights as [[..], ..]; for rank 1 a flat list [1, 1, -1] is accepted too.
inline std::vector<std::vector<long>> weight_list(const json& j, std::size_t rank) {
    if (!j.is_array()) throw InputError("weights must be an array");
    std::vector<std::vector<long>> out;
    for (const auto& w : j) {
        if (w.is_array()) out.push_back(integers(w));
        else if (rank == 1) out.push_back({integer(w)});
        else throw InputError("weights must be integer vectors");
    }
    return out;
}

inline WeightSystem weight_system(const json& j) {
    if (!j.is_object()) throw InputError("weight system must be an object");
    WeightSystem ws;
    long r = integer(req(j, "rank"));
    if (r <= 0) throw InputError("rank must be positive");
    ws.rank = static_cast<std::size_t>(r);
    ws.weights = weight_list(req(j, "weights"), ws.rank);
    ws.theta = j.contains("theta") ? rationals(j.at("theta")) : RationalVector(ws.rank);
    if (j.contains("metric")) {
        if (!j.at("metric").is_array()) throw InputError("metric must be a matrix");
        for (const auto& row : j.at("metric")) ws.metric.push_back(rationals(row));
    } else {
        ws.metric.assign(ws.rank, RationalVector(ws.rank));
        for (std::size_t i = 0; i < ws.rank; ++i) ws.metric[i][i] = Rational(1);
    }
    ws.validate();
    return ws;
}

inline json rationals_json(const RationalVector& v) {
    json out = json::array();
    for (const auto& x : v) out.push_back(x.str());
    return out;
}

inline json indices_json(const std::vector<std::size_t>& v) {
    json out = json::array();
    for (auto i : v) out.push_back(i + 1);
    return out;
}

inline json series_json(const TruncatedSeries& s) {
    json coeffs = json::array();
    for (const auto& [d, c] : s.coefficients()) coeffs.push_back({{"degree", d}, {"value", c.str()}});
    return {{"vars", s.degree_vars()}, {"truncation", s.truncation()}, {"coefficients", coeffs}, {"text", s.str()}};
}

inline CurveMode mode(const json& p) {
    return parse_curve_mode(p.contains("mode") ? p.at("mode").get<std::string>() : "projective");
}

inline int truncation(const json& p) {
    long d = integer_or(p, "trunc", kDefaultTruncation);
    if (d < 0 || d > 64) throw InputError("trunc must lie in 0..64");
    return static_cast<int>(d);
}

}  // namespace io

// ------------------------------------------------------------ handlers

struct Rendered {
    std::string text;
    json data;
};

namespace handlers {

inline std::string verdict_text(const StabilityVerdict& v) {
    std::string s = to_string(v.status);
    if (v.witness) s += " witness=" + to_string(*v.witness);
    return s;
}

inline json verdict_json(const StabilityVerdict& v) {
    json j{{"status", to_string(v.status)}};
    j["witness"] = v.witness ? io::rationals_json(*v.witness) : json(nullptr);
    return j;
}

inline Rendered stability_classify(const json& p) {
    WeightSystem ws = io::weight_system(io::req(p, "weight_system"));
    Rendered out;
    if (p.contains("support")) {
        auto s = SupportSet::from_one_based(io::integers(p.at("support")), ws.size());
        auto v = classify(ws, s);
        out.text = verdict_text(v) + "\n";
        out.data = verdict_json(v);
        out.data["support"] = io::indices_json(s.indices());
        return out;
    }
    if (ws.size() > 16) throw DomainError("too many weights to classify every support");
    out.data = json::array();
    for (unsigned long mask = 1; mask < (1UL << ws.size()); ++mask) {
        auto s = SupportSet::from_mask(mask, ws.size());
        auto v = classify(ws, s);
        out.text += s.str() + ": " + verdict_text(v) + "\n";
        json j = verdict_json(v);
        j["support"] = io::indices_json(s.indices());
        out.data.push_back(j);
    }
    return out;
}

inline Rendered stability_strata(const json& p) {
    WeightSystem ws = io::weight_system(io::req(p, "weight_system"));
    Rendered out;
    out.data = json::array();
    for (const auto& st : kn_strata(ws)) {
        out.text += "lambda=" + to_string(st.lambda) + " norm2=" + st.norm_squared.str() + " " + st.pattern() + "\n";
        out.data.push_back({{"lambda", io::rationals_json(st.lambda)},
                            {"norm_squared", st.norm_squared.str()},
                            {"fixed_support", io::indices_json(st.fixed_support)},
                            {"upper_support", io::indices_json(st.upper_support)}});
    }
    if (out.text.empty()) out.text = "no unstable strata\n";
    return out;
}

inline GaugedMapData gauged_map(const json& p) {
    GaugedMapData g;
    g.ws = io::weight_system(io::req(p, "weight_system"));
    g.bundle_degree = io::integers(io::req(p, "bundle_degree"));
    for (long i : io::integers(io::req(p, "support"))) {
        if (i < 1) throw InputError("support indices are 1-based");
        g.section_support.push_back(static_cast<std::size_t>(i - 1));
    }
    std::sort(g.section_support.begin(), g.section_support.end());
    g.section_support.erase(std::unique(g.section_support.begin(), g.section_support.end()), g.section_support.end());
    g.section_degree = io::integer_or(p, "section_degree", 0);
    g.validate();
    return g;
}

inline Rendered mundet_check(const json& p) {
    GaugedMapData g = gauged_map(p);
    auto v = mundet_classify(g);
    Rendered out;
    out.text = to_string(v.status);
    if (v.witness) {
        out.text += " witness=" + to_string(*v.witness) + " weight=" + mundet_weight_toric(g, *v.witness).str();
    }
    out.text += "\n";
    out.data = {{"status", to_string(v.status)}};
    out.data["witness"] = v.witness ? io::rationals_json(*v.witness) : json(nullptr);
    return out;
}

inline Rendered mundet_quotdim(const json& p) {
    Rendered out;
    long dP = io::integer(io::req(p, "dP")), du = io::integer(io::req(p, "du"));
    if (p.contains("weights")) {
        auto ws = io::weight_list(p.at("weights"), 1);
        std::vector<long> dv = p.at("dP").is_array() ? io::integers(p.at("dP")) : std::vector<long>{dP};
        auto dim = quot_dimension_genus0(ws, dv, du);
        if (!dim) throw DomainError("no non-zero sections: the moduli space is empty");
        out.text = "dim = " + std::to_string(*dim) + "\n";
        out.data = {{"dimension", *dim}};
        return out;
    }
    long k = io::integer(io::req(p, "k"));
    long dim = quot_moduli_dimension(k, dP, du);
    out.text = "P^" + std::to_string(dim) + "\n";
    out.data = {{"dimension", dim}};
    return out;
}

inline Rendered curves_enumerate(const json& p) {
    long n = io::integer(io::req(p, "n"));
    long bound = io::integer_or(p, "bound", kDefaultCurveBound);
    auto types = enumerate_types(static_cast<int>(n), io::mode(p), static_cast<int>(bound));
    Rendered out;
    out.data = json::array();
    for (const auto& t : types) {
        int dim = stratum_dimension(t);
        std::string term = canonical_term(t);
        out.text += term + "  dim=" + std::to_string(dim) + "\n";
        json j{{"term", term}, {"dimension", dim}};
        if (t.mode == CurveMode::projective) j["rho"] = to_string(rho_image(t));
        out.data.push_back(j);
    }
    return out;
}

inline Rendered curves_balanced(const json& p) {
    ScaledType t = parse_term(io::req(p, "term").get<std::string>());
    EdgeParams ep;
    ep.gamma = io::rationals(io::req(p, "gamma"));
    bool ok = check_balanced(t, ep);
    Rendered out;
    out.text = std::string(ok ? "balanced" : "not balanced") + "\n";
    out.data = {{"term", canonical_term(t)}, {"balanced", ok}};
    return out;
}

inline Rendered curves_divisors(const json& p) {
    long n = io::integer(io::req(p, "n"));
    auto pair = divisor_pairs(static_cast<int>(n), io::mode(p));
    Rendered out;
    auto side = [](const std::vector<std::string>& v) {
        std::string s;
        for (std::size_t i = 0; i < v.size(); ++i) s += (i ? " + " : "") + v[i];
        return s.empty() ? std::string("0") : s;
    };
    out.text = pair.left_label + ": " + side(pair.left) + "\n" + pair.right_label + ": " + side(pair.right) + "\n";
    out.data = {{pair.left_label, pair.left}, {pair.right_label, pair.right}};
    return out;
}

inline Rendered series_rendered(const TruncatedSeries& s) { return {s.str() + "\n", io::series_json(s)}; }

inline Rendered potential_localized(const json& p) {
    LinearActionSpec spec;
    spec.rank = static_cast<std::size_t>(io::integer_or(p, "rank", 1));
    if (spec.rank == 0) throw InputError("rank must be positive");
    spec.weights = io::weight_list(io::req(p, "weights"), spec.rank);
    spec.truncation = io::truncation(p);
    std::string branch = p.contains("branch") ? p.at("branch").get<std::string>() : "minus";
    if (branch != "minus" && branch != "plus") throw InputError("branch must be 'minus' or 'plus'");
    return series_rendered(
        localized_potential(spec, branch == "minus" ? PotentialBranch::minus : PotentialBranch::plus));
}

inline Rendered potential_jframed(const json& p) {
    FramedSheafSpec spec;
    spec.k = static_cast<int>(io::integer(io::req(p, "k")));
    spec.r = static_cast<int>(io::integer(io::req(p, "r")));
    spec.truncation = io::truncation(p);
    if (p.contains("specialize")) {
        const json& s = p.at("specialize");
        if (s.is_boolean()) {
            if (s.get<bool>()) spec.point = spec.default_point();
        } else if (s.is_object()) {
            std::map<std::string, Rational> pt;
            for (const auto& [name, value] : s.items()) pt[name] = io::rational(value);
            spec.point = pt;
        } else {
            throw InputError("specialize must be true/false or an object of rationals");
        }
    }
    return series_rendered(framed_sheaf_fundamental_solution(spec));
}

inline Rendered potential_delta(const json& p) {
    long m = io::integer(io::req(p, "m"));
    RationalFunction f = delta_factor(m);
    return {f.str() + "\n", {{"m", m}, {"value", f.str()}}};
}

inline Rendered qde_check(const json& p) {
    long k = io::integer(io::req(p, "k"));
    int D = io::truncation(p);
    bool kt = io::boolean(p, "ktheory", false);
    auto residual = kt ? qde_residual_ktheoretic(static_cast<int>(k), D)
                       : qde_residual_cohomological(static_cast<int>(k), D);
    if (!residual.is_zero()) throw DomainError("non-zero residual: " + residual.str());
    return {"residual = 0\n", {{"k", k}, {"trunc", D}, {"ktheory", kt}, {"residual", "0"}}};
}

inline Rendered presentation_rendered(const PresentationResult& r) {
    json rels = json::array(), dict = json::object();
    for (const auto& rel : r.presentation.relations) rels.push_back(relation_str(rel));
    for (const auto& [g, m] : r.dictionary) dict[g] = m;
    return {r.str(), {{"generators", r.presentation.generators}, {"relations", rels}, {"dictionary", dict},
                      {"notes", r.notes}}};
}

inline Rendered presentation_projective(const json& p) {
    long k = io::integer(io::req(p, "k"));
    if (io::boolean(p, "ktheory", false)) {
        auto r = qk_presentation(static_cast<int>(k));
        MultiPoly rel = (MultiPoly(1) - var("Linv")).pow(static_cast<unsigned>(k));
        std::string nf = qk_normal_form(rel, r).str();
        r.notes.push_back("(1 - Linv)^" + std::to_string(k) + " reduces to " + nf);
        return presentation_rendered(r);
    }
    return presentation_rendered(qh_presentation(static_cast<int>(k)));
}

inline Rendered presentation_toric(const json& p) {
    LinearActionSpec spec;
    spec.rank = static_cast<std::size_t>(io::integer_or(p, "rank", 1));
    if (spec.rank == 0) throw InputError("rank must be positive");
    spec.weights = io::weight_list(io::req(p, "weights"), spec.rank);
    std::vector<std::vector<long>> gens;
    for (const auto& g : io::req(p, "generators"))
        gens.push_back(g.is_array() ? io::integers(g) : std::vector<long>{io::integer(g)});
    return presentation_rendered(batyrev_presentation(spec, gens));
}

inline Rendered age_compute(const json& p) {
    Rational a = age(io::integer(io::req(p, "r")), io::integers(io::req(p, "exponents")));
    return {a.str() + "\n", {{"age", a.str()}}};
}

inline Rendered wallcross_crepancy(const json& p) {
    auto v = crepancy_check(io::integers(io::req(p, "weights")));
    return {v.str() + "\n", {{"crepant", v.crepant}, {"sum", v.sum}}};
}

}  // namespace handlers

inline Rendered dispatch(const JobSpec& job) {
    const json& p = job.payload;
    if (!p.is_object()) throw InputError("payload must be an object");
    const std::string& c = job.command;
    if (c == "stability.classify") return handlers::stability_classify(p);
    if (c == "stability.strata") return handlers::stability_strata(p);
    if (c == "mundet.check") return handlers::mundet_check(p);
    if (c == "mundet.quotdim") return handlers::mundet_quotdim(p);
    if (c == "curves.enumerate") return handlers::curves_enumerate(p);
    if (c == "curves.balanced") return handlers::curves_balanced(p);
    if (c == "curves.divisors") return handlers::curves_divisors(p);
    if (c == "potential.localized") return handlers::potential_localized(p);
    if (c == "potential.jframed") return handlers::potential_jframed(p);
    if (c == "potential.delta") return handlers::potential_delta(p);
    if (c == "qde.check") return handlers::qde_check(p);
    if (c == "presentation.projective") return handlers::presentation_projective(p);
    if (c == "presentation.toric") return handlers::presentation_toric(p);
    if (c == "age.compute") return handlers::age_compute(p);
    if (c == "wallcross.crepancy") return handlers::wallcross_crepancy(p);
    throw InputError("unknown command '" + c + "'");
}

inline std::string error_output(const JobSpec& job, const std::string& kind, const std::string& message,
                                const json& extra = json::object()) {
    if (job.output == OutputFormat::json) {
        json err{{"kind", kind}, {"message", message}};
        for (const auto& [k, v] : extra.items()) err[k] = v;
        return json{{"command", job.command}, {"error", err}}.dump(2) + "\n";
    }
    return "error (" + kind + "): " + message + "\n";
}

inline RunResult run(const JobSpec& job) {
    try {
        Rendered r = dispatch(job);
        if (job.output == OutputFormat::json) return {0, json{{"command", job.command}, {"result", r.data}}.dump(2) + "\n"};
        return {0, r.text};
    } catch (const InvalidScaledType& e) {
        json extra{{"clause", e.violation.clause}, {"vertex", e.violation.vertex}};
        return {1, error_output(job, "violation", e.what(), extra)};
    } catch (const DomainError& e) {
        return {1, error_output(job, "domain", e.what())};
    } catch (const InputError& e) {
        return {2, error_output(job, "input", e.what())};
    } catch (const json::exception& e) {
        return {2, error_output(job, "input", std::string("malformed payload: ") + e.what())};
    }
}

inline OutputFormat parse_output_format(const std::string& s) {
    if (s == "text") return OutputFormat::text;
    if (s == "json") return OutputFormat::json;
    throw InputError("output must be 'text' or 'json', got '" + s + "'");
}

/// Reads {"command", "payload", "output"?}. Throws InputError.
inline JobSpec job_from_json(const json& j) {
    if (!j.is_object()) throw InputError("job must be an object");
    if (!j.contains("command") || !j.at("command").is_string()) throw InputError("job needs a string 'command'");
    JobSpec job;
    job.command = j.at("command").get<std::string>();
    if (std::find(commands().begin(), commands().end(), job.command) == commands().end())
        throw InputError("unknown command '" + job.command + "'");
    job.payload = j.contains("payload") ? j.at("payload") : json::object();
    if (j.contains("output")) {
        if (!j.at("output").is_string()) throw InputError("'output' must be a string");
        job.output = parse_output_format(j.at("output").get<std::string>());
    }
    return job;
}

inline json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot read " + path);
    try {
        return json::parse(in);
    } catch (const json::parse_error& e) {
        throw InputError(path + " is not valid JSON: " + e.what());
    }
}

// ------------------------------------------------------------ batch

struct BatchOutcome {
    int exit_code = 0;
    std::string report;
    json updated;  ///< the input document with refreshed "expect" fields
};

/**
 * Runs every job of a JSON list. A job may carry
 * "expect": {"exit": n, "output": "..."}; without it a job passes when it
 * exits 0. Jobs run on `threads` workers; the report lists them in input
 * order. Exit status: 2 if any job is malformed, else 1 if any job fails.
 */
inline BatchOutcome batch(const json& doc, unsigned threads = 1) {
    if (!doc.is_array()) throw InputError("batch file must contain a JSON list of jobs");
    const std::size_t n = doc.size();
    std::vector<RunResult> results(n);
    std::vector<std::string> malformed(n);
    std::vector<JobSpec> jobs(n);
    for (std::size_t i = 0; i < n; ++i) {
        try {
            jobs[i] = job_from_json(doc[i]);
        } catch (const InputError& e) {
            malformed[i] = e.what();
        }
    }
    std::atomic<std::size_t> next{0};
    auto worker = [&]() {
        for (std::size_t i; (i = next++) < n;)
            if (malformed[i].empty()) results[i] = run(jobs[i]);
    };
    threads = std::max(1U, std::min<unsigned>(threads, static_cast<unsigned>(std::max<std::size_t>(n, 1))));
    std::vector<std::thread> pool;
    for (unsigned t = 1; t < threads; ++t) pool.emplace_back(worker);
    worker();
    for (auto& t : pool) t.join();

    BatchOutcome out;
    out.updated = doc;
    std::size_t passed = 0;
    bool any_malformed = false, any_failed = false;
    for (std::size_t i = 0; i < n; ++i) {
        std::string head = "job " + std::to_string(i);
        if (!malformed[i].empty()) {
            any_malformed = true;
            out.report += head + " MALFORMED: " + malformed[i] + "\n";
            continue;
        }
        const auto& res = results[i];
        bool ok = res.exit_code == 0;
        const json& j = doc[i];
        if (j.contains("expect")) {
            const json& e = j.at("expect");
            int want_exit = e.contains("exit") ? e.at("exit").get<int>() : 0;
            ok = res.exit_code == want_exit;
            if (e.contains("output") && e.at("output").get<std::string>() != res.output) ok = false;
        }
        out.updated[i]["expect"] = {{"exit", res.exit_code}, {"output", res.output}};
        if (ok) ++passed;
        else if (res.exit_code == 2 && !(j.contains("expect") && j.at("expect").value("exit", 0) == 2)) any_malformed = true;
        else any_failed = true;
        out.report += head + " " + jobs[i].command + ": " + (ok ? "pass" : "FAIL") + " (exit " +
                      std::to_string(res.exit_code) + ")\n";
        std::istringstream body(res.output);
        for (std::string line; std::getline(body, line);) out.report += "  " + line + "\n";
    }
    out.report += std::to_string(passed) + "/" + std::to_string(n) + " jobs passed\n";
    out.exit_code = any_malformed ? 2 : (any_failed ? 1 : 0);
    return out;
}

}  // namespace ggw::cli

// indcat: exact independence-polynomial toolkit for caterpillar trees.
// Subcommands compute polynomials, classify coefficient sequences, check the
// recursion hypotheses, and run conformance suites.  Exit code 0 means all
// requested checks conform (or were purely computational), 1 means at least
// one nonconform record, 2 means a usage or input error.

#include "indcat/caterpoly.hpp"
#include "indcat/indpoly.hpp"
#include "indcat/polynomial.hpp"
#include "indcat/serialize.hpp"
#include "indcat/shape.hpp"
#include "indcat/tree.hpp"
#include "indcat/verify.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace {

using indcat::Json;

struct GlobalOpts {
    std::string format = "text";
    std::string out_path;
    int cap = indcat::default_brute_cap;
    std::uint64_t seed = 0;
    int jobs = 1;
};

void emit(const std::string& text, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(out_path);
    if (!out) throw std::runtime_error("cannot open output path " + out_path);
    out << text;
}

std::string json_text(const Json& j) { return j.dump(2) + "\n"; }

std::vector<int> spec_values(const std::string& m_text, std::optional<int> n) {
    std::vector<int> m = indcat::parse_int_list(m_text);
    if (n) {
        if (*n < 1 || *n > static_cast<int>(m.size()))
            throw std::invalid_argument("--n must be between 1 and the length of --m");
        m.resize(static_cast<std::size_t>(*n));
    }
    return m;
}

std::pair<int, int> parse_cond3_range(const std::string& text) {
    if (text.empty()) return {3, -1};
    std::vector<int> vals = indcat::parse_int_list(text);
    if (vals.size() == 1) return {vals[0], -1};
    if (vals.size() == 2) return {vals[0], vals[1]};
    throw std::invalid_argument("--cond3-range takes LO or LO,HI");
}

std::string join_ints(const std::vector<int>& v, char sep = ',') {
    std::string out;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) out += sep;
        out += std::to_string(v[i]);
    }
    return out;
}

std::string shape_text(const indcat::ShapeReport& s) {
    std::ostringstream os;
    os << "degree: " << s.degree << "\n";
    os << "modes: " << join_ints(s.modes, ' ') << "\n";
    os << "unimodal: " << (s.unimodal ? "yes" : "no") << "\n";
    os << "strictly unimodal: " << (s.strictly_unimodal ? "yes" : "no") << "\n";
    os << "dominance:";
    for (indcat::Dom d : s.dominance) os << ' ' << indcat::dom_name(d);
    if (s.dominance.empty()) os << " none";
    os << "\n";
    os << "balanced: ";
    switch (s.balanced) {
        case indcat::Balanced::yes: os << "yes"; break;
        case indcat::Balanced::no: os << "no"; break;
        case indcat::Balanced::not_applicable: os << "not applicable"; break;
    }
    os << "\n";
    os << "symmetric: " << (s.symmetric ? "yes" : "no") << "\n";
    return os.str();
}

std::string coeff_line(const indcat::Polynomial& p) {
    std::string out;
    const auto strs = indcat::coeff_strings(p);
    for (std::size_t i = 0; i < strs.size(); ++i) {
        if (i) out += ',';
        out += strs[i];
    }
    return out + "\n";
}

int run_indpoly(const GlobalOpts& g, const std::string& m_text, std::optional<int> n,
                const std::string& method) {
    indcat::CaterpillarSpec spec(spec_values(m_text, n));
    indcat::Polynomial poly;
    if (method == "recursion") {
        poly = indcat::p_sequence(spec).back();
    } else {
        indcat::Tree tree = indcat::build_caterpillar(spec);
        if (method == "treedp") poly = indcat::indpoly_treedp(tree);
        else if (method == "deletion") poly = indcat::indpoly_deletion(tree);
        else if (method == "brute") poly = indcat::indpoly_bruteforce(tree, g.cap);
        else throw std::invalid_argument("unknown method " + method);
    }
    if (g.format == "json") {
        Json j;
        j["spec"] = indcat::to_json(spec);
        j["method"] = method;
        j["coefficients"] = indcat::to_json(poly);
        emit(json_text(j), g.out_path);
    } else if (g.format == "csv") {
        std::string out = "power,coefficient\n";
        const auto strs = indcat::coeff_strings(poly);
        for (std::size_t i = 0; i < strs.size(); ++i)
            out += std::to_string(i) + "," + strs[i] + "\n";
        emit(out, g.out_path);
    } else {
        emit(coeff_line(poly), g.out_path);
    }
    return 0;
}

int run_analyze(const GlobalOpts& g, const std::string& coeffs_text) {
    indcat::Polynomial p(indcat::parse_bigint_list(coeffs_text));
    indcat::ShapeReport s = indcat::analyze_shape(p);
    if (g.format == "json") {
        emit(json_text(indcat::to_json(s)), g.out_path);
    } else if (g.format == "csv") {
        std::string dom;
        for (std::size_t i = 0; i < s.dominance.size(); ++i) {
            if (i) dom += '|';
            dom += indcat::dom_name(s.dominance[i]);
        }
        std::string bal = s.balanced == indcat::Balanced::yes
                              ? "yes"
                              : (s.balanced == indcat::Balanced::no ? "no" : "n/a");
        std::string out = "degree,modes,unimodal,strictly_unimodal,dominance,balanced,symmetric\n";
        out += std::to_string(s.degree) + "," + join_ints(s.modes, '|') + "," +
               (s.unimodal ? "true" : "false") + "," + (s.strictly_unimodal ? "true" : "false") +
               "," + dom + "," + bal + "," + (s.symmetric ? "true" : "false") + "\n";
        emit(out, g.out_path);
    } else {
        emit(shape_text(s), g.out_path);
    }
    return 0;
}

int run_conditions(const GlobalOpts& g, const std::string& m_text, std::optional<int> n,
                   const std::string& range_text) {
    indcat::CaterpillarSpec spec(spec_values(m_text, n));
    auto [lo, hi] = parse_cond3_range(range_text);
    indcat::ConditionReport r = indcat::check_conditions(spec, lo, hi);
    if (g.format == "json") {
        emit(json_text(indcat::to_json(r)), g.out_path);
    } else if (g.format == "csv") {
        std::string out = "k,lhs,rhs,pass,sufficient\n";
        for (const auto& [k, e] : r.cond3_results) {
            out += std::to_string(k) + "," + std::to_string(e.lhs) + "," + std::to_string(e.rhs) +
                   "," + (e.pass ? "true" : "false") + "," +
                   (r.sufficient_variant.at(k) ? "true" : "false") + "\n";
        }
        emit(out, g.out_path);
    } else {
        std::ostringstream os;
        os << "condition 1 (non-decreasing): " << (r.cond1_nondecreasing ? "pass" : "fail") << "\n";
        os << "condition 2 (base inequalities): " << (r.cond2_base ? "pass" : "fail") << "\n";
        os << "condition 3 over k in [" << r.cond3_range.first << "," << r.cond3_range.second
           << "]:\n";
        for (const auto& [k, e] : r.cond3_results)
            os << "  k=" << k << ": " << e.lhs << (e.pass ? " < " : " !< ") << e.rhs
               << (e.pass ? " pass" : " fail") << "\n";
        os << "all pass: " << (r.all_pass ? "yes" : "no") << "\n";
        emit(os.str(), g.out_path);
    }
    return 0;
}

int run_verify(const GlobalOpts& g, const std::string& m_text, std::optional<int> n,
               const std::string& range_text) {
    indcat::CaterpillarSpec spec(spec_values(m_text, n));
    auto [lo, hi] = parse_cond3_range(range_text);
    indcat::ConformanceRecord theorem = indcat::verify_theorem_instance(spec, lo, hi);
    indcat::ConformanceRecord cross = indcat::cross_validate_instance(spec, g.cap);
    const bool bad = theorem.verdict == indcat::Verdict::nonconform ||
                     cross.verdict == indcat::Verdict::nonconform;
    if (g.format == "json") {
        Json j;
        j["instance"] = indcat::instance_report_json(spec, lo, hi);
        j["cross_validate"] = indcat::to_json(cross);
        j["theorem"] = indcat::to_json(theorem);
        emit(json_text(j), g.out_path);
    } else if (g.format == "csv") {
        indcat::Polynomial pn = indcat::p_sequence(spec).back();
        auto [mult, cof] = indcat::remove_binomial_factor(pn);
        std::string out = "spec,verdict,mode,k,d\n";
        out += "\"" + join_ints(spec.m) + "\"," +
               indcat::verdict_name(indcat::worst_of(cross.verdict, theorem.verdict)) + "," +
               std::to_string(indcat::modes_of(pn).front()) + "," + std::to_string(mult) + "," +
               std::to_string(pn.degree()) + "\n";
        emit(out, g.out_path);
    } else {
        std::ostringstream os;
        os << "spec: (" << join_ints(spec.m) << ")\n";
        os << "cross-validation: " << indcat::verdict_name(cross.verdict) << "\n";
        os << "instance check: " << indcat::verdict_name(theorem.verdict) << "\n";
        indcat::Polynomial pn = indcat::p_sequence(spec).back();
        os << "p_n degree " << pn.degree() << ", modes: "
           << join_ints(indcat::modes_of(pn), ' ') << "\n";
        emit(os.str(), g.out_path);
    }
    return bad ? 1 : 0;
}

indcat::Dom parse_dom_class(const std::string& name) {
    if (name == "strict-LD") return indcat::Dom::strict_ld;
    if (name == "weak-LD") return indcat::Dom::weak_ld;
    if (name == "strict-RD") return indcat::Dom::strict_rd;
    if (name == "weak-RD") return indcat::Dom::weak_rd;
    throw std::invalid_argument("unknown dominance class " + name +
                                " (expected strict-LD, weak-LD, strict-RD, weak-RD)");
}

int run_lemma(const GlobalOpts& g, const std::string& check, const std::string& q_text, int t,
              const std::string& psym_text, const std::string& gen_class, int gen_d,
              int gen_count) {
    std::vector<indcat::ConformanceRecord> records;
    if (!gen_class.empty()) {
        if (check == "symmetric")
            throw std::invalid_argument("generator mode supports --check shift and diff");
        if (gen_d < 2) throw std::invalid_argument("--d must be at least 2");
        if (gen_count < 1) throw std::invalid_argument("--count must be positive");
        indcat::Dom cls = parse_dom_class(gen_class);
        for (int i = 0; i < gen_count; ++i) {
            const std::uint64_t seed = g.seed + static_cast<std::uint64_t>(i);
            indcat::Polynomial q = indcat::gen_dominant_poly(seed, cls, gen_d, true);
            const int mu = indcat::modes_of(q).front();
            const int ti = 1 + static_cast<int>(seed % static_cast<std::uint64_t>(mu));
            records.push_back(check == "shift" ? indcat::check_shift_lemma(q, ti, seed)
                                               : indcat::check_diff_bounds(q, ti, seed));
        }
    } else {
        if (q_text.empty()) throw std::invalid_argument("--q is required without --gen");
        indcat::Polynomial q(indcat::parse_bigint_list(q_text));
        if (check == "shift") {
            records.push_back(indcat::check_shift_lemma(q, t));
        } else if (check == "diff") {
            records.push_back(indcat::check_diff_bounds(q, t));
        } else if (check == "symmetric") {
            if (psym_text.empty())
                throw std::invalid_argument("--psym is required for --check symmetric");
            indcat::Polynomial psym(indcat::parse_bigint_list(psym_text));
            records.push_back(indcat::check_symmetric_multiplier(q, psym));
        } else {
            throw std::invalid_argument("unknown check " + check);
        }
    }

    int nonconform = 0, conform = 0, hnm = 0;
    for (const auto& r : records) {
        if (r.verdict == indcat::Verdict::nonconform) ++nonconform;
        else if (r.verdict == indcat::Verdict::conform) ++conform;
        else ++hnm;
    }
    if (g.format == "json") {
        Json j;
        Json arr = Json::array();
        for (const auto& r : records) arr.push_back(indcat::to_json(r));
        j["records"] = std::move(arr);
        j["summary"] = Json{{"conform", conform},
                            {"nonconform", nonconform},
                            {"hypothesis-not-met", hnm}};
        emit(json_text(j), g.out_path);
    } else if (g.format == "csv") {
        std::string out = "check,seed,verdict\n";
        for (const auto& r : records)
            out += r.check_name + "," + (r.seed ? std::to_string(*r.seed) : "") + "," +
                   indcat::verdict_name(r.verdict) + "\n";
        emit(out, g.out_path);
    } else {
        std::ostringstream os;
        for (const auto& r : records) {
            os << r.check_name;
            if (r.seed) os << " seed=" << *r.seed;
            os << ": " << indcat::verdict_name(r.verdict) << "\n";
        }
        os << "conform " << conform << ", nonconform " << nonconform << ", hypothesis-not-met "
           << hnm << "\n";
        emit(os.str(), g.out_path);
    }
    return nonconform > 0 ? 1 : 0;
}

int run_sweep(const GlobalOpts& g, indcat::SweepConfig cfg, const std::string& specs_file,
              const std::string& range_text, const std::string& oracles) {
    auto [lo, hi] = parse_cond3_range(range_text);
    cfg.cond3_lo = lo;
    cfg.cond3_hi = hi;
    cfg.cap = g.cap;
    cfg.jobs = g.jobs;
    if (oracles == "all") cfg.use_brute = true;
    else if (oracles == "scalable") cfg.use_brute = false;
    else throw std::invalid_argument("--oracles must be all or scalable");
    if (!specs_file.empty()) {
        std::ifstream in(specs_file);
        if (!in) throw std::invalid_argument("cannot open specs file " + specs_file);
        std::string line;
        while (std::getline(in, line)) {
            if (line.empty()) continue;
            cfg.explicit_specs.push_back(indcat::parse_int_list(line));
        }
        if (cfg.explicit_specs.empty())
            throw std::invalid_argument("specs file " + specs_file + " has no specs");
    }

    indcat::SweepResult result = indcat::sweep_family(cfg);
    bool bad = false;
    for (const auto& r : result.records)
        bad = bad || r.cross.verdict == indcat::Verdict::nonconform ||
              r.theorem.verdict == indcat::Verdict::nonconform;
    if (g.format == "json") {
        emit(json_text(result.summary), g.out_path);
    } else if (g.format == "csv") {
        std::string out = "spec,verdict,mode,k,d\n";
        for (const auto& r : result.records)
            out += "\"" + join_ints(r.m) + "\"," +
                   indcat::verdict_name(indcat::worst_of(r.cross.verdict, r.theorem.verdict)) +
                   "," + std::to_string(r.mode) + "," + std::to_string(r.k) + "," +
                   std::to_string(r.d) + "\n";
        emit(out, g.out_path);
    } else {
        std::ostringstream os;
        os << "instances: " << result.records.size() << "\n";
        os << "cross-validation: " << result.summary["cross_validate"].dump() << "\n";
        os << "instance checks: " << result.summary["theorem"].dump() << "\n";
        emit(os.str(), g.out_path);
    }
    return bad ? 1 : 0;
}

}  // namespace

int main(int argc, char** argv) {
    GlobalOpts g;
    bool cap_given = false;

    CLI::App app{"exact independence polynomials of caterpillar trees: computation, "
                 "classification, and conformance checking"};
    app.require_subcommand(1);
    app.fallthrough();
    app.add_option("--format", g.format, "output format: json, csv, or text")
        ->check(CLI::IsMember({"json", "csv", "text"}))
        ->capture_default_str();
    app.add_option("--out", g.out_path, "write output to this path instead of stdout");
    app.add_option("--cap", g.cap, "brute-force enumeration cap in vertices (1..30)")
        ->each([&](const std::string&) { cap_given = true; });
    app.add_option("--seed", g.seed, "base seed for generated fixtures")->capture_default_str();
    app.add_option("--jobs", g.jobs, "worker threads for sweeps")->capture_default_str();

    std::string m_text, coeffs_text, range_text, method = "recursion";
    std::string check, q_text, psym_text, gen_class, specs_file, oracles = "all";
    std::string csv_path;
    int t = 1, gen_d = 6, gen_count = 1;
    int n_opt = -1;
    indcat::SweepConfig sweep_cfg;

    CLI::App* c_indpoly = app.add_subcommand("indpoly", "compute the independence polynomial");
    c_indpoly->add_option("--m", m_text, "comma-separated leaf counts m_1,..,m_n")->required();
    c_indpoly->add_option("--n", n_opt, "use only the first n entries of --m");
    c_indpoly->add_option("--method", method, "recursion, treedp, deletion, or brute")
        ->check(CLI::IsMember({"recursion", "treedp", "deletion", "brute"}))
        ->capture_default_str();

    CLI::App* c_analyze = app.add_subcommand("analyze", "classify a coefficient sequence");
    c_analyze->add_option("--coeffs", coeffs_text, "comma-separated coefficients")->required();

    CLI::App* c_conditions = app.add_subcommand("conditions", "report the recursion hypotheses");
    c_conditions->add_option("--m", m_text, "comma-separated leaf counts")->required();
    c_conditions->add_option("--n", n_opt, "use only the first n entries of --m");
    c_conditions->add_option("--cond3-range", range_text, "condition 3 k-range: LO or LO,HI");

    CLI::App* c_verify = app.add_subcommand("verify", "instance check plus cross-validation");
    c_verify->add_option("--m", m_text, "comma-separated leaf counts")->required();
    c_verify->add_option("--n", n_opt, "use only the first n entries of --m");
    c_verify->add_option("--cond3-range", range_text, "condition 3 k-range: LO or LO,HI");

    CLI::App* c_lemma = app.add_subcommand("lemma", "product-lemma conformance checks");
    c_lemma->add_option("--check", check, "shift, diff, or symmetric")
        ->check(CLI::IsMember({"shift", "diff", "symmetric"}))
        ->required();
    c_lemma->add_option("--q", q_text, "comma-separated coefficients of q");
    c_lemma->add_option("--t", t, "binomial power t")->capture_default_str();
    c_lemma->add_option("--psym", psym_text, "symmetric multiplier coefficients");
    c_lemma->add_option("--gen", gen_class,
                        "generate inputs of this class (strict-LD, weak-LD, strict-RD, weak-RD)");
    c_lemma->add_option("--d", gen_d, "degree for generated inputs")->capture_default_str();
    c_lemma->add_option("--count", gen_count, "number of generated inputs")
        ->capture_default_str();

    CLI::App* c_sweep = app.add_subcommand("sweep", "cross-validate and check a spec family");
    c_sweep->add_option("--m-min", sweep_cfg.m_min, "smallest leaf count")->capture_default_str();
    c_sweep->add_option("--m-max", sweep_cfg.m_max, "largest leaf count")->capture_default_str();
    c_sweep->add_option("--n-min", sweep_cfg.n_min, "smallest spine length")
        ->capture_default_str();
    c_sweep->add_option("--n-max", sweep_cfg.n_max, "largest spine length")
        ->capture_default_str();
    c_sweep->add_flag("--monotone", sweep_cfg.monotone_only, "keep only non-decreasing m");
    c_sweep->add_option("--specs", specs_file, "file with one comma-separated m per line");
    c_sweep->add_option("--cond3-range", range_text, "condition 3 k-range: LO or LO,HI");
    c_sweep->add_option("--oracles", oracles, "all (with brute force) or scalable")
        ->capture_default_str();
    c_sweep->add_option("--records", sweep_cfg.out_path, "write per-instance JSON lines here");
    c_sweep->add_option("--csv", sweep_cfg.csv_path, "write the CSV table here");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (!cap_given) {
            if (const char* env = std::getenv("INDCAT_CAP")) {
                std::size_t used = 0;
                const std::string text(env);
                g.cap = std::stoi(text, &used);
                if (used != text.size())
                    throw std::invalid_argument("INDCAT_CAP must be an integer");
            }
        }
        if (g.cap < 1 || g.cap > indcat::brute_hard_ceiling)
            throw std::invalid_argument("cap must be between 1 and " +
                                        std::to_string(indcat::brute_hard_ceiling));
        if (g.jobs < 1) throw std::invalid_argument("--jobs must be positive");

        std::optional<int> n;
        if (n_opt >= 0) n = n_opt;
        if (c_indpoly->parsed()) return run_indpoly(g, m_text, n, method);
        if (c_analyze->parsed()) return run_analyze(g, coeffs_text);
        if (c_conditions->parsed()) return run_conditions(g, m_text, n, range_text);
        if (c_verify->parsed()) return run_verify(g, m_text, n, range_text);
        if (c_lemma->parsed())
            return run_lemma(g, check, q_text, t, psym_text, gen_class, gen_d, gen_count);
        if (c_sweep->parsed()) return run_sweep(g, sweep_cfg, specs_file, range_text, oracles);
        std::cerr << "no subcommand selected\n";
        return 2;
    } catch (const indcat::size_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::domain_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}

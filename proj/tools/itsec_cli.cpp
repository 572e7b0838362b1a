#include <algorithm>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "itsec/specdoc.hpp"
#include "itsec/synth.hpp"
#include "json.hpp"

namespace {

using namespace itsec;

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(Errc::io_error, "cannot read '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void write_file(const std::string& path, const std::string& content) {
    if (path == "-") {
        std::cout << content;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error(Errc::io_error, "cannot write '" + path + "'");
    out << content;
}

struct GlobalFlags {
    std::string format = "text";
    double tol = kDefaultTol;
    std::string mode = "rational";
    std::size_t jobs = 0;
    std::uint64_t seed = 1;
    std::size_t cap = 1000000;

    NumMode num_mode() const {
        return mode == "float" ? NumMode::floating : NumMode::rational;
    }
    MetricOptions metric_options() const {
        MetricOptions o;
        o.tol = tol;
        o.state_cap = cap;
        o.seed = seed;
        return o;
    }
};

int emit_cipher_analysis(const CipherSpec& s, const GlobalFlags& g) {
    CipherAnalysis a;
    a.report = security_report(s, g.metric_options());
    a.checks = check_theorem1(s, g.metric_options());
    a.bounds = check_bound103(a.report);
    std::cout << (g.format == "json" ? analysis_to_json(a) : analysis_to_text(a));
    return has_violation(a) ? 2 : 0;
}

int emit_ka_analysis(const KASpec& s, const GlobalFlags& g) {
    KAAnalysis a;
    a.report = ka_metrics(s, g.metric_options());
    a.checks = check_relation_ka(a.report, s.keys.size(), s.ts.size(), s.rounds);
    a.bounds = check_bound303(a.report, a.report.h0_xy, s.keys.size());
    std::cout << (g.format == "json" ? analysis_to_json(a) : analysis_to_text(a));
    return has_violation(a) ? 2 : 0;
}

int run_analyze(const std::string& path, const GlobalFlags& g, bool require_ka) {
    const std::string text = read_file(path);
    const DocKind kind = document_kind(text);
    if (require_ka && kind != DocKind::keyagreement)
        throw Error(Errc::invalid_argument, "ka-analyze expects a keyagreement document");
    if (kind == DocKind::cipher) return emit_cipher_analysis(cipher_from_document(text), g);
    return emit_ka_analysis(ka_from_document(text), g);
}

/// One JSON array of rows; entries follow the document number conventions
/// ("num/den" strings or plain numbers), converted to the requested mode.
Matrix matrix_from_file(const std::string& path, NumMode mode) {
    const std::string text = read_file(path);
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw Error(Errc::parse_error, std::string("matrix: ") + e.what());
    }
    if (!j.is_array() || j.empty())
        throw Error(Errc::parse_error, "matrix: expected a nonempty array of rows");
    Matrix m;
    for (const auto& row : j) {
        if (!row.is_array()) throw Error(Errc::parse_error, "matrix: rows must be arrays");
        std::vector<Num> r;
        for (const auto& e : row) {
            if (e.is_string()) {
                const Rat v = rat_parse(e.get<std::string>());
                r.push_back(mode == NumMode::rational ? Num::rational(v)
                                                      : Num::floating(rat_to_double(v)));
            } else if (e.is_number()) {
                const double v = e.get<double>();
                r.push_back(mode == NumMode::rational ? Num::rational(rat_from_double(v))
                                                      : Num::floating(v));
            } else {
                throw Error(Errc::parse_error,
                            "matrix: entries must be numbers or \"num/den\" strings");
            }
        }
        m.push_back(std::move(r));
    }
    return m;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"analyze, synthesize, and fuzz information-theoretic secrecy schemes"};
    app.require_subcommand(1);

    GlobalFlags g;
    app.add_option("--format", g.format, "report format")
        ->check(CLI::IsMember({"json", "text"}))
        ->capture_default_str();
    app.add_option("--tol", g.tol, "float comparison tolerance")->capture_default_str();
    app.add_option("--mode", g.mode, "numeric mode")
        ->check(CLI::IsMember({"rational", "float"}))
        ->capture_default_str();
    app.add_option("--jobs", g.jobs, "fuzz worker count (0: one per core)")
        ->capture_default_str();
    app.add_option("--seed", g.seed, "64-bit campaign seed")->capture_default_str();
    app.add_option("--cap", g.cap, "protocol state enumeration cap")->capture_default_str();

    auto* analyze = app.add_subcommand("analyze", "measure a scheme document");
    std::string analyze_path;
    analyze->add_option("path", analyze_path, "document to analyze")->required();
    analyze->fallthrough();

    auto* ka_analyze = app.add_subcommand("ka-analyze", "measure a key-agreement document");
    std::string ka_path;
    ka_analyze->add_option("path", ka_path, "document to analyze")->required();
    ka_analyze->fallthrough();

    auto* synth = app.add_subcommand("synth", "write a scheme document");
    std::string synth_kind;
    std::size_t synth_n = 4, synth_terms = 4;
    std::string synth_eps = "1/2", synth_param = "1/2", synth_variant = "zero-advantage";
    std::string synth_matrix, synth_out = "-";
    synth->add_option("kind", synth_kind, "what to synthesize")
        ->required()
        ->check(CLI::IsMember({"otp", "counterexample", "from-matrix", "tight", "random-ds"}));
    synth->add_option("--n", synth_n, "alphabet size")->capture_default_str();
    synth->add_option("--eps", synth_eps, "advantage parameter, a rational like 1/2")
        ->capture_default_str();
    synth->add_option("--param", synth_param, "tight-scheme parameter, a rational")
        ->capture_default_str();
    synth->add_option("--variant", synth_variant, "tight-scheme variant")
        ->check(CLI::IsMember({"zero-advantage", "zero-error"}))
        ->capture_default_str();
    synth->add_option("--terms", synth_terms, "permutation count for random-ds")
        ->capture_default_str();
    synth->add_option("--matrix", synth_matrix, "JSON matrix file for from-matrix");
    synth->add_option("--out", synth_out, "output path ('-' for stdout)")
        ->capture_default_str();
    synth->fallthrough();

    auto* fuzz = app.add_subcommand("fuzz", "run a property campaign");
    std::string fuzz_kind = "cipher";
    std::size_t fuzz_trials = 100;
    bool fuzz_defect = false;
    fuzz->add_option("kind", fuzz_kind, "campaign kind")
        ->check(CLI::IsMember({"cipher", "keyagreement"}));
    fuzz->add_option("--trials", fuzz_trials, "trial count")->capture_default_str();
    fuzz->add_flag("--inject-defect", fuzz_defect,
                   "negative control: corrupt a metric and require detection");
    fuzz->fallthrough();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        if (analyze->parsed()) return run_analyze(analyze_path, g, false);
        if (ka_analyze->parsed()) return run_analyze(ka_path, g, true);
        if (synth->parsed()) {
            CipherSpec s;
            if (synth_kind == "otp") {
                s = one_time_pad(synth_n);
            } else if (synth_kind == "counterexample") {
                s = counterexample_scheme(synth_n, rat_parse(synth_eps)).spec;
            } else if (synth_kind == "tight") {
                const TightKind k = synth_variant == "zero-error" ? TightKind::zero_error
                                                                  : TightKind::zero_advantage;
                s = tight_scheme(k, synth_n, rat_parse(synth_param));
            } else if (synth_kind == "from-matrix") {
                if (synth_matrix.empty())
                    throw Error(Errc::invalid_argument, "from-matrix requires --matrix");
                s = scheme_from_matrix(matrix_from_file(synth_matrix, g.num_mode()), g.tol);
            } else { // random-ds
                s = scheme_from_matrix(random_doubly_stochastic(synth_n, synth_terms, g.seed),
                                       g.tol);
            }
            write_file(synth_out, cipher_to_document(s));
            return 0;
        }
        // fuzz
        FuzzConfig cfg;
        cfg.trials = fuzz_trials;
        cfg.seed = g.seed;
        cfg.jobs = g.jobs;
        cfg.mode = g.num_mode();
        cfg.inject_defect = fuzz_defect;
        cfg.metric_options = g.metric_options();
        const CampaignReport rep =
            fuzz_kind == "cipher" ? run_cipher_campaign(cfg) : run_ka_campaign(cfg);
        std::cout << (g.format == "json" ? campaign_to_json(rep) : campaign_to_text(rep));
        std::cerr << "elapsed: " << rep.elapsed_seconds << "s\n";
        const bool errors = std::any_of(rep.failures.begin(), rep.failures.end(),
                                        [](const TrialOutcome& t) { return !t.error.empty(); });
        return rep.n_violations > 0 || errors ? 2 : 0;
    } catch (const Error& e) {
        std::cerr << e.what() << '\n';
        return e.code() == Errc::infeasible ? 2 : 1;
    } catch (const std::exception& e) {
        std::cerr << e.what() << '\n';
        return 1;
    }
}

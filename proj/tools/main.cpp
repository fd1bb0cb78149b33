// permround - batch experiment driver for Gaussian randomized rounding of
// orthogonal matrices.
//
// Subcommands: round, approximate, scaling, concentration, qap, haar.
// Exit codes: 0 success, 2 input parse error, 3 input validation error,
// 4 internal numerical failure.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "permround/concentration.hpp"
#include "permround/errors.hpp"
#include "permround/gaussian.hpp"
#include "permround/io.hpp"
#include "permround/nconv.hpp"
#include "permround/qap.hpp"
#include "permround/rounding.hpp"

namespace {

using namespace permround;

constexpr int kExitOk = 0;
constexpr int kExitParse = 2;
constexpr int kExitValidation = 3;
constexpr int kExitNumerical = 4;

std::string fmt_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

// Writes either to --out or stdout.
class OutputTarget {
public:
    explicit OutputTarget(const std::string& path) {
        if (!path.empty()) {
            file_.open(path);
            if (!file_) throw ValidationError("cannot open output file " + path);
        }
    }
    std::ostream& stream() { return file_.is_open() ? file_ : std::cout; }

private:
    std::ofstream file_;
};

struct CsvTable {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;

    void write_csv(std::ostream& out) const {
        for (std::size_t i = 0; i < header.size(); ++i) {
            out << (i ? "," : "") << header[i];
        }
        out << '\n';
        for (const auto& row : rows) {
            for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << row[i];
            out << '\n';
        }
    }

    nlohmann::json to_json() const {
        nlohmann::json arr = nlohmann::json::array();
        for (const auto& row : rows) {
            nlohmann::json obj = nlohmann::json::object();
            for (std::size_t i = 0; i < header.size(); ++i) {
                // Numeric columns stay numeric in the JSON mirror.
                try {
                    std::size_t pos = 0;
                    const double v = std::stod(row[i], &pos);
                    if (pos == row[i].size()) {
                        obj[header[i]] = v;
                        continue;
                    }
                } catch (...) {
                }
                obj[header[i]] = row[i];
            }
            arr.push_back(std::move(obj));
        }
        return arr;
    }

    void emit(std::ostream& out, const std::string& format) const {
        if (format == "json") {
            out << to_json().dump(2) << '\n';
        } else {
            write_csv(out);
        }
    }
};

std::vector<std::size_t> parse_size_list(const std::string& text, const char* what) {
    std::vector<std::size_t> out;
    std::stringstream ss(text);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        if (tok.empty()) continue;
        try {
            const long long v = std::stoll(tok);
            if (v < 1) throw std::out_of_range("non-positive");
            out.push_back(static_cast<std::size_t>(v));
        } catch (...) {
            throw ValidationError(std::string(what) + ": bad list entry '" + tok + "'");
        }
    }
    if (out.empty()) throw ValidationError(std::string(what) + ": empty list");
    return out;
}

std::vector<double> parse_double_list(const std::string& text, const char* what) {
    std::vector<double> out;
    std::stringstream ss(text);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        if (tok.empty()) continue;
        try {
            out.push_back(std::stod(tok));
        } catch (...) {
            throw ValidationError(std::string(what) + ": bad list entry '" + tok + "'");
        }
    }
    if (out.empty()) throw ValidationError(std::string(what) + ": empty list");
    return out;
}

// ---------------------------------------------------------------------------
// scaling experiment configuration (key = value file, flags override)

struct ExperimentConfig {
    std::uint64_t seed = 1;
    std::vector<std::size_t> n_values;
    std::vector<std::size_t> sample_counts;
    std::size_t repetitions = 1;
    std::size_t residual_samples = 2000;
    unsigned threads = 1;
    std::string format = "csv";
    std::string out;

    void validate() const {
        if (n_values.empty() || sample_counts.empty()) {
            throw ValidationError("config: n_values and sample_counts must be non-empty");
        }
        if (repetitions < 1 || residual_samples < 2) {
            throw ValidationError("config: repetitions must be >= 1, residual_samples >= 2");
        }
        if (sample_counts.size() != 1 && sample_counts.size() != n_values.size()) {
            throw ValidationError("config: sample_counts must have 1 entry or match n_values");
        }
        if (format != "csv" && format != "json") {
            throw ValidationError("config: format must be csv or json");
        }
    }
};

ExperimentConfig parse_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open config file " + path);
    ExperimentConfig cfg;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        const auto eq = line.find('=');
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        if (eq == std::string::npos) {
            throw ParseError(path + ":" + std::to_string(lineno) + ": expected key = value");
        }
        auto trim = [](std::string s) {
            const auto b = s.find_first_not_of(" \t\r");
            const auto e = s.find_last_not_of(" \t\r");
            return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
        };
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        try {
            if (key == "seed") {
                cfg.seed = std::stoull(value);
            } else if (key == "n_values") {
                cfg.n_values = parse_size_list(value, "n_values");
            } else if (key == "sample_counts") {
                cfg.sample_counts = parse_size_list(value, "sample_counts");
            } else if (key == "repetitions") {
                cfg.repetitions = std::stoull(value);
            } else if (key == "residual_samples") {
                cfg.residual_samples = std::stoull(value);
            } else if (key == "threads") {
                cfg.threads = static_cast<unsigned>(std::stoul(value));
            } else if (key == "format") {
                cfg.format = value;
            } else if (key == "out") {
                cfg.out = value;
            } else {
                throw ParseError(path + ":" + std::to_string(lineno) + ": unknown key '" + key +
                                 "'");
            }
        } catch (const ParseError&) {
            throw;
        } catch (const ValidationError&) {
            throw;
        } catch (...) {
            throw ParseError(path + ":" + std::to_string(lineno) + ": bad value for '" + key +
                             "'");
        }
    }
    return cfg;
}

// ---------------------------------------------------------------------------
// subcommands

int cmd_haar(std::size_t n, std::uint64_t seed, const std::string& out,
             const std::string& format) {
    RandomStream stream(seed);
    const OrthogonalMatrix u = haar_orthogonal(n, stream);
    if (!out.empty()) {
        save_matrix_file(out, u.matrix());
    } else if (format == "json") {
        std::cout << matrix_to_json(u.matrix()).dump(2) << '\n';
    } else {
        write_matrix_text(std::cout, u.matrix());
    }
    return kExitOk;
}

int cmd_round(const std::string& matrix_file, std::size_t samples, std::uint64_t seed,
              const std::string& out, const std::string& format) {
    const OrthogonalMatrix u(load_matrix_file(matrix_file));
    RandomStream stream(seed);
    CsvTable table;
    table.header = {"sample_index", "permutation", "residual_norm"};
    for (std::size_t i = 0; i < samples; ++i) {
        const RoundingSample sample = sample_rounding(u, stream);
        double norm_sq = 0.0;
        for (double zi : sample.z) norm_sq += zi * zi;
        table.rows.push_back(
            {std::to_string(i), sample.sigma.one_line(), fmt_double(std::sqrt(norm_sq))});
    }
    OutputTarget target(out);
    table.emit(target.stream(), format);
    return kExitOk;
}

int cmd_approximate(const std::string& matrix_file, std::size_t samples, std::uint64_t seed,
                    unsigned threads, bool mirrored, const std::string& out) {
    const OrthogonalMatrix u(load_matrix_file(matrix_file));
    ApproximateOptions options;
    options.threads = threads;
    options.form = mirrored ? NconvForm::kPermsTimesWeights : NconvForm::kWeightsTimesPerms;
    const NconvApprox approx = approximate(u, samples, RandomStream(seed), options);
    const ErrorReport report = error_report(u, approx);

    nlohmann::json j = nconv_to_json(approx);
    j["error_report"] = nlohmann::json{{"linf", report.linf},
                                       {"frob", report.frob},
                                       {"column_errors", report.column_errors},
                                       {"weight_deviation", report.weight_deviation}};
    j["trace_probability_deviation"] = trace_probability_check(approx);
    OutputTarget target(out);
    target.stream() << j.dump(2) << '\n';
    return kExitOk;
}

int cmd_scaling(const ExperimentConfig& cfg) {
    cfg.validate();
    CsvTable table;
    table.header = {"n",          "N",          "rep",        "linf_error",
                    "frob_error", "max_col_error", "weight_dev", "mean_residual_sq"};
    const RandomStream base(cfg.seed);
    std::size_t row_index = 0;
    for (std::size_t ni = 0; ni < cfg.n_values.size(); ++ni) {
        const std::size_t n = cfg.n_values[ni];
        const std::size_t samples =
            cfg.sample_counts.size() == 1 ? cfg.sample_counts[0] : cfg.sample_counts[ni];
        for (std::size_t rep = 0; rep < cfg.repetitions; ++rep, ++row_index) {
            RandomStream haar_stream = base.substream(3 * row_index);
            const OrthogonalMatrix u = haar_orthogonal(n, haar_stream);
            ApproximateOptions options;
            options.threads = cfg.threads;
            const NconvApprox approx =
                approximate(u, samples, base.substream(3 * row_index + 1), options);
            const ErrorReport report = error_report(u, approx);
            const ResidualMoments moments = estimate_residual_moments(
                u, cfg.residual_samples, base.substream(3 * row_index + 2), cfg.threads);
            const double max_col =
                *std::max_element(report.column_errors.begin(), report.column_errors.end());
            table.rows.push_back({std::to_string(n), std::to_string(samples),
                                  std::to_string(rep), fmt_double(report.linf),
                                  fmt_double(report.frob), fmt_double(max_col),
                                  fmt_double(report.weight_deviation),
                                  fmt_double(moments.total_second_moment)});
        }
    }
    OutputTarget target(cfg.out);
    table.emit(target.stream(), cfg.format);
    return kExitOk;
}

int cmd_concentration(const std::string& n_list, const std::string& eps_list, std::size_t trials,
                      std::uint64_t seed, unsigned threads, const std::string& out,
                      const std::string& format) {
    const std::vector<std::size_t> n_values = parse_size_list(n_list, "--n-values");
    const std::vector<double> epsilons = parse_double_list(eps_list, "--epsilons");
    if (trials < 1) throw ValidationError("--trials must be positive");
    for (double eps : epsilons) {
        if (!(eps > 0.0 && eps < 0.5)) {
            throw ValidationError("--epsilons entries must lie in (0, 1/2)");
        }
    }

    CsvTable table;
    table.header = {"n", "k", "epsilon", "alpha_minus", "alpha_plus", "bound", "empirical",
                    "trials"};
    const RandomStream base(seed);
    std::size_t sim_index = 0;
    for (std::size_t n : n_values) {
        // Grid ranks: ceil(36 ln n), n/4, n/2 -- keeping only ranks within
        // the k <= n/2 hypothesis of the two-sided bound.
        std::vector<std::size_t> ks;
        const auto k_log = static_cast<std::size_t>(
            std::ceil(36.0 * std::log(static_cast<double>(n))));
        for (std::size_t k : {k_log, n / 4, n / 2}) {
            if (k >= 1 && 2 * k <= n && std::find(ks.begin(), ks.end(), k) == ks.end()) {
                ks.push_back(k);
            }
        }
        for (std::size_t k : ks) {
            const std::vector<double> omega =
                simulate_order_stat(k, n, trials, base.substream(sim_index++), threads);
            for (double eps : epsilons) {
                const OrderStatBound bound = gaussian_order_stat_bound(k, n, eps);
                std::size_t outside = 0;
                for (double w : omega) {
                    if (w < bound.alpha_minus || w > bound.alpha_plus) ++outside;
                }
                const double two_sided =
                    std::min(1.0, bound.lower_tail_bound + bound.upper_tail_bound);
                table.rows.push_back({std::to_string(n), std::to_string(k), fmt_double(eps),
                                      fmt_double(bound.alpha_minus), fmt_double(bound.alpha_plus),
                                      fmt_double(two_sided),
                                      fmt_double(static_cast<double>(outside) /
                                                 static_cast<double>(trials)),
                                      std::to_string(trials)});
            }
        }
    }
    OutputTarget target(out);
    table.emit(target.stream(), format);
    return kExitOk;
}

int cmd_qap(const std::string& instance_file, std::size_t samples, std::uint64_t seed,
            const std::string& out) {
    const QapInstance inst = load_qap_file(instance_file);
    const QapResult result = rounding_heuristic(inst, samples, RandomStream(seed));
    nlohmann::json j{
        {"lower_bound", result.lower_bound},
        {"best_value", result.best_value},
        {"gap", result.best_value - result.lower_bound},
        {"permutation", result.best_permutation.one_line()},
        {"samples_used", result.samples_used},
    };
    OutputTarget target(out);
    target.stream() << j.dump(2) << '\n';
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Gaussian randomized rounding of orthogonal matrices: rounding samples, "
                 "Monte Carlo combinations of permutation matrices, order-statistic "
                 "concentration tables, and assignment-problem bounds"};
    app.require_subcommand(1);

    std::uint64_t seed = 1;
    unsigned threads = 1;
    std::string format = "csv";
    std::string out;
    app.add_option("--seed", seed, "Random seed (default 1)")->capture_default_str();
    app.add_option("--threads", threads, "Worker threads (default 1; results depend on the "
                                         "thread count but are reproducible for a fixed one)")
        ->capture_default_str();
    app.add_option("--format", format, "Output format: csv or json")
        ->check(CLI::IsMember({"csv", "json"}));
    app.add_option("--out", out, "Output file (default stdout)");

    // haar
    auto* haar = app.add_subcommand("haar", "Sample a Haar-random orthogonal matrix");
    haar->fallthrough();
    std::size_t haar_n = 4;
    haar->add_option("n", haar_n, "Dimension")->required();

    // round
    auto* round = app.add_subcommand("round", "Round an orthogonal matrix at Gaussian points");
    round->fallthrough();
    std::string round_file;
    std::size_t round_samples = 10;
    round->add_option("matrix_file", round_file, "Orthogonal matrix file (text or .json)")
        ->required();
    round->add_option("--samples", round_samples, "Number of rounding samples")
        ->capture_default_str();

    // approximate
    auto* approx = app.add_subcommand(
        "approximate", "Monte Carlo combination of permutation matrices approximating U");
    approx->fallthrough();
    std::string approx_file;
    std::size_t approx_samples = 100000;
    bool approx_mirrored = false;
    approx->add_option("matrix_file", approx_file, "Orthogonal matrix file")->required();
    approx->add_option("--samples", approx_samples, "Gaussian samples")->capture_default_str();
    approx->add_flag("--mirrored", approx_mirrored,
                     "Estimate the mirrored combination (permutations times weights)");

    // scaling
    auto* scaling = app.add_subcommand("scaling", "Error scaling experiment over a config file");
    scaling->fallthrough();
    std::string scaling_config;
    scaling->add_option("config_file", scaling_config, "key = value config")->required();

    // concentration
    auto* conc = app.add_subcommand("concentration",
                                    "Order-statistic bound vs. empirical frequency table");
    conc->fallthrough();
    std::string conc_n = "100,1000";
    std::string conc_eps = "0.1,0.2,0.4";
    std::size_t conc_trials = 10000;
    conc->add_option("--n-values", conc_n, "Sample sizes")->capture_default_str();
    conc->add_option("--epsilons", conc_eps, "Epsilon grid")->capture_default_str();
    conc->add_option("--trials", conc_trials, "Trials per (n, k)")->capture_default_str();

    // qap
    auto* qap = app.add_subcommand("qap", "Spectral lower bound plus rounding heuristic");
    qap->fallthrough();
    std::string qap_file;
    std::size_t qap_samples = 100;
    qap->add_option("instance_file", qap_file, "Instance file (text or .json)")->required();
    qap->add_option("--samples", qap_samples, "Rounding samples for the heuristic")
        ->capture_default_str();

    CLI11_PARSE(app, argc, argv);

    try {
        if (haar->parsed()) return cmd_haar(haar_n, seed, out, format);
        if (round->parsed()) return cmd_round(round_file, round_samples, seed, out, format);
        if (approx->parsed()) {
            return cmd_approximate(approx_file, approx_samples, seed, threads, approx_mirrored,
                                   out);
        }
        if (scaling->parsed()) {
            ExperimentConfig cfg = parse_config_file(scaling_config);
            // Flags override the file when given explicitly.
            if (app.count("--seed") > 0) cfg.seed = seed;
            if (app.count("--threads") > 0) cfg.threads = threads;
            if (app.count("--format") > 0) cfg.format = format;
            if (app.count("--out") > 0) cfg.out = out;
            return cmd_scaling(cfg);
        }
        if (conc->parsed()) {
            return cmd_concentration(conc_n, conc_eps, conc_trials, seed, threads, out, format);
        }
        if (qap->parsed()) return cmd_qap(qap_file, qap_samples, seed, out);
    } catch (const ParseError& e) {
        std::cerr << "parse error: " << e.what() << '\n';
        return kExitParse;
    } catch (const ValidationError& e) {
        std::cerr << "validation error: " << e.what() << '\n';
        return kExitValidation;
    } catch (const std::exception& e) {
        std::cerr << "numerical failure: " << e.what() << '\n';
        return kExitNumerical;
    }
    return kExitOk;
}

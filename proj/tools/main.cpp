/*
 * Copyright 2026 The bgbs authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

// Batch front-end: runs the experiment grids and emits plot-ready CSV/JSON.
// Every run is fully determined by its flags plus the seed; outputs are
// written atomically with a sidecar metadata record.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include <bgbs/click_stats.hpp>
#include <bgbs/ensemble.hpp>
#include <bgbs/kernels.hpp>
#include <bgbs/program.hpp>
#include <bgbs/repetition.hpp>
#include <bgbs/rng.hpp>
#include <bgbs/sampling.hpp>
#include <bgbs/wishart.hpp>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace {

constexpr const char* kVersion = "1.0.0";
constexpr int kExitUsage = 2;
constexpr int kExitNumeric = 3;

// CSV number formatting: '.' decimal separator, scientific notation only
// outside [1e-3, 1e6).
std::string csv_num(double x) {
    char buf[48];
    const double ax = std::abs(x);
    if (x == 0.0 || (ax >= 1e-3 && ax < 1e6))
        std::snprintf(buf, sizeof buf, "%.10g", x);
    else
        std::snprintf(buf, sizeof buf, "%.10e", x);
    return buf;
}

// Alpha grid entries are either plain numbers or scale rules of the form
// "<coef>m^<p>/<q>" (e.g. "2m^1/4"), evaluated per m.
struct AlphaRule {
    double coef = 0.0;
    double exponent = 0.0;  // alpha(m) = coef * m^exponent
    std::string label;

    double eval(std::size_t m) const { return coef * std::pow(static_cast<double>(m), exponent); }
};

AlphaRule parse_alpha(const std::string& token) {
    AlphaRule rule;
    rule.label = token;
    const std::size_t mpos = token.find('m');
    if (mpos == std::string::npos) {
        rule.coef = std::stod(token);
        rule.exponent = 0.0;
        return rule;
    }
    rule.coef = mpos == 0 ? 1.0 : std::stod(token.substr(0, mpos));
    std::string exp_part = token.substr(mpos + 1);
    if (exp_part.empty()) {
        rule.exponent = 1.0;
        return rule;
    }
    if (exp_part.front() != '^') throw CLI::ValidationError("--alpha", "bad rule: " + token);
    exp_part.erase(0, 1);
    const std::size_t slash = exp_part.find('/');
    if (slash == std::string::npos) {
        rule.exponent = std::stod(exp_part);
    } else {
        rule.exponent = std::stod(exp_part.substr(0, slash)) / std::stod(exp_part.substr(slash + 1));
    }
    return rule;
}

struct OutputSink {
    std::string path;  // empty -> stdout
    std::string format = "csv";

    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;
    nlohmann::json extra = nlohmann::json::object();

    void row(std::initializer_list<std::string> cells) { rows.emplace_back(cells); }

    std::string render() const {
        if (format == "json") {
            nlohmann::json doc;
            doc["columns"] = header;
            nlohmann::json data = nlohmann::json::array();
            for (const auto& r : rows) {
                nlohmann::json obj;
                for (std::size_t i = 0; i < header.size(); ++i) obj[header[i]] = r[i];
                data.push_back(std::move(obj));
            }
            doc["rows"] = std::move(data);
            for (auto it = extra.begin(); it != extra.end(); ++it) doc[it.key()] = it.value();
            return doc.dump(2) + "\n";
        }
        std::ostringstream os;
        for (std::size_t i = 0; i < header.size(); ++i)
            os << (i ? "," : "") << header[i];
        os << "\r\n";
        for (const auto& r : rows) {
            for (std::size_t i = 0; i < r.size(); ++i) os << (i ? "," : "") << r[i];
            os << "\r\n";
        }
        return os.str();
    }
};

// Atomic write: temp file in the target directory, then rename.
void write_atomic(const std::string& path, const std::string& content) {
    namespace fs = std::filesystem;
    const fs::path target(path);
    if (target.has_parent_path()) fs::create_directories(target.parent_path());
    const fs::path tmp = target.string() + ".tmp";
    {
        std::ofstream os(tmp, std::ios::binary | std::ios::trunc);
        if (!os) throw std::runtime_error("cannot open output file: " + tmp.string());
        os << content;
    }
    fs::rename(tmp, target);
}

void emit(const OutputSink& sink, const nlohmann::json& config_echo, double wall_s) {
    const std::string body = sink.render();
    if (sink.path.empty()) {
        std::fputs(body.c_str(), stdout);
        return;
    }
    write_atomic(sink.path, body);
    nlohmann::json meta;
    meta["config"] = config_echo;
    meta["version"] = kVersion;
    meta["wall_seconds"] = wall_s;
    meta["rows"] = sink.rows.size();
    write_atomic(sink.path + ".meta.json", meta.dump(2) + "\n");
    std::printf("wrote %s (%zu rows, %.2f s)\n", sink.path.c_str(), sink.rows.size(), wall_s);
}

struct Options {
    std::vector<std::size_t> m_list;
    std::vector<double> mu_list;
    std::vector<std::string> alpha_list;
    std::size_t k = 2;
    std::size_t trials = 0;  // 0 -> per-command default
    double delta = 0.1;
    std::uint64_t seed = 1;
    std::string out;
    std::string format = "csv";
    int threads = 0;
};

nlohmann::json echo(const std::string& command, const Options& o) {
    nlohmann::json j;
    j["command"] = command;
    j["m"] = o.m_list;
    j["mu"] = o.mu_list;
    j["alpha"] = o.alpha_list;
    j["k"] = o.k;
    j["trials"] = o.trials;
    j["delta"] = o.delta;
    j["seed"] = o.seed;
    j["format"] = o.format;
    j["threads"] = o.threads;
    return j;
}

void cmd_click_stats(const Options& o, OutputSink& sink) {
    const std::size_t trials = o.trials ? o.trials : 500;
    sink.header = {"m", "mu", "trials", "mean_d", "sd_mean_d", "var_d", "sd_var_d",
                   "var_sum", "sd_var_sum", "theory_mean_d", "theory_var_d", "theory_var_sum"};
    const auto ms = o.m_list.empty() ? std::vector<std::size_t>{16, 32, 64} : o.m_list;
    const auto mus = o.mu_list.empty() ? std::vector<double>{0.1, 0.25} : o.mu_list;
    for (std::size_t m : ms)
        for (double mu : mus) {
            const bgbs::EnsembleReport r =
                bgbs::run_click_experiment(m, mu, trials, o.seed, o.threads);
            const bgbs::ClickVariancePrediction p = bgbs::analytic_click_variances(m, mu);
            sink.row({std::to_string(m), csv_num(mu), std::to_string(trials),
                      csv_num(r.mean_of_mean_d), csv_num(std::sqrt(r.var_of_mean_d / trials)),
                      csv_num(r.mean_of_var_d), csv_num(std::sqrt(r.var_of_var_d / trials)),
                      csv_num(r.mean_of_var_sum), csv_num(std::sqrt(r.var_of_var_sum / trials)),
                      csv_num(bgbs::analytic_click_mean(m, mu)), csv_num(p.var_d),
                      csv_num(p.var_sum)});
        }
}

void cmd_z_calib(const Options& o, OutputSink& sink) {
    const std::size_t trials = o.trials ? o.trials : 50;
    sink.header = {"m", "alpha", "logZ_formula", "mean_logZ_sampled", "sd_logZ"};
    const auto ms = o.m_list.empty() ? std::vector<std::size_t>{100, 200, 300, 400, 500} : o.m_list;
    const auto alphas = o.alpha_list.empty()
                            ? std::vector<std::string>{"3", "2m^1/8", "2m^1/4"}
                            : o.alpha_list;
    for (std::size_t m : ms)
        for (const std::string& tok : alphas) {
            const double alpha = parse_alpha(tok).eval(m);
            std::vector<double> logz(trials);
            std::string worker_error;
#pragma omp parallel for schedule(dynamic)
            for (long long i = 0; i < static_cast<long long>(trials); ++i) {
                try {
                    bgbs::RngStream rng(o.seed, static_cast<std::uint64_t>(i));
                    logz[static_cast<std::size_t>(i)] =
                        bgbs::z_from_sample(bgbs::sample_wishart(m, alpha, rng));
                } catch (const std::exception& e) {
#pragma omp critical
                    worker_error = e.what();
                }
            }
            if (!worker_error.empty()) throw std::runtime_error(worker_error);
            double mean = 0.0;
            for (double v : logz) mean += v;
            mean /= trials;
            double var = 0.0;
            for (double v : logz) var += (v - mean) * (v - mean);
            const double sd = trials > 1 ? std::sqrt(var / (trials - 1)) : 0.0;
            sink.row({std::to_string(m), csv_num(alpha),
                      csv_num(-bgbs::z_inverse_expectation_log(m, alpha)), csv_num(mean),
                      csv_num(sd)});
        }
}

void cmd_i_ratio(const Options& o, OutputSink& sink) {
    sink.header = {"m", "alpha", "logI", "slope"};
    std::vector<std::size_t> ms = o.m_list;
    if (ms.empty())
        for (int i = 0; i <= 10; ++i)
            ms.push_back(static_cast<std::size_t>(
                std::llround(std::exp(std::log(1e4) + i * (std::log(1e5) - std::log(1e4)) / 10.0))));
    const auto alphas =
        o.alpha_list.empty() ? std::vector<std::string>{"3", "4"} : o.alpha_list;
    nlohmann::json slopes = nlohmann::json::object();
    for (const std::string& tok : alphas) {
        std::vector<double> xs, ys;
        for (std::size_t m : ms) {
            const double alpha = parse_alpha(tok).eval(m);
            const bgbs::CollisionSubspaceParams p = bgbs::collision_subspace_params(m, alpha);
            const double logz = -bgbs::z_inverse_expectation_log(m, alpha);
            xs.push_back(std::log(static_cast<double>(m)));
            ys.push_back(bgbs::i_ratio_log(m, alpha, p.n, p.c, logz));
        }
        double sx = 0, sy = 0, sxx = 0, sxy = 0;
        const double n = static_cast<double>(xs.size());
        for (std::size_t i = 0; i < xs.size(); ++i) {
            sx += xs[i];
            sy += ys[i];
            sxx += xs[i] * xs[i];
            sxy += xs[i] * ys[i];
        }
        const double slope = n > 1 ? (n * sxy - sx * sy) / (n * sxx - sx * sx) : 0.0;
        slopes[tok] = slope;
        for (std::size_t i = 0; i < ms.size(); ++i)
            sink.row({std::to_string(ms[i]), csv_num(parse_alpha(tok).eval(ms[i])),
                      csv_num(ys[i]), csv_num(slope)});
    }
    sink.extra["slopes"] = slopes;
}

void cmd_embed_demo(const Options& o, OutputSink& sink) {
    const std::size_t c = o.m_list.empty() ? 3 : o.m_list.front();
    // Distribute k extra repetitions round-robin: first over rows, then columns.
    std::vector<std::uint32_t> s(c, 1), t(c, 1);
    for (std::size_t i = 0; i < o.k; ++i) {
        if (i % 2 == 0)
            s[(i / 2) % c] += 1;
        else
            t[(i / 2) % c] += 1;
    }
    bgbs::RngStream rng(o.seed, 0);
    const bgbs::ComplexMatrix a = bgbs::sample_gaussian_matrix(c, c, 0.0, 1.0, rng);
    const bgbs::cplx truth = bgbs::permanent(a);
    const bgbs::RecoveryResult res = bgbs::recover_permanent(
        a, s, t, [](const bgbs::ComplexMatrix& mat) { return bgbs::permanent(mat); }, rng);
    nlohmann::json doc;
    doc["c"] = c;
    doc["s"] = s;
    doc["t"] = t;
    doc["k"] = o.k;
    doc["xi"] = {{"re", res.xi.real()}, {"im", res.xi.imag()}};
    doc["per_a_true"] = {{"re", truth.real()}, {"im", truth.imag()}};
    doc["per_a_recovered"] = {{"re", res.value.real()}, {"im", res.value.imag()}};
    doc["rel_error"] = std::abs(res.value - truth) / std::max(1e-300, std::abs(truth));
    doc["oracle_calls"] = res.oracle_calls;
    sink.format = "raw";
    sink.header.clear();
    sink.rows.clear();
    // embed-demo is JSON-only regardless of --format.
    const std::string body = doc.dump(2) + "\n";
    if (sink.path.empty())
        std::fputs(body.c_str(), stdout);
    else
        write_atomic(sink.path, body);
}

void cmd_validate_bounds(const Options& o, OutputSink& sink) {
    const std::size_t trials = o.trials ? o.trials : 1000;
    sink.header = {"m", "alpha", "delta", "trials", "bound_mean_pairs", "bound_sampled_pairs",
                   "violation_freq_mean", "violation_freq_sampled", "z_threshold_log",
                   "violation_freq_z"};
    const auto ms = o.m_list.empty() ? std::vector<std::size_t>{60, 120} : o.m_list;
    const auto alphas = o.alpha_list.empty() ? std::vector<std::string>{"6"} : o.alpha_list;
    for (std::size_t m : ms)
        for (const std::string& tok : alphas) {
            const double alpha = parse_alpha(tok).eval(m);
            const bgbs::ConcentrationReport cr =
                bgbs::n_concentration_check(m, alpha, trials, o.delta, o.seed, o.threads);
            const double z_thresh =
                bgbs::bound_rhs_evaluators(m, alpha, o.delta).z_threshold_log;
            std::vector<int> viol(trials, 0);
            std::string worker_error;
#pragma omp parallel for schedule(dynamic)
            for (long long i = 0; i < static_cast<long long>(trials); ++i) {
                try {
                    bgbs::RngStream rng(o.seed, 1000000 + static_cast<std::uint64_t>(i));
                    if (bgbs::z_from_sample(bgbs::sample_wishart(m, alpha, rng)) >= z_thresh)
                        viol[static_cast<std::size_t>(i)] = 1;
                } catch (const std::exception& e) {
#pragma omp critical
                    worker_error = e.what();
                }
            }
            if (!worker_error.empty()) throw std::runtime_error(worker_error);
            double fz = 0;
            for (int v : viol) fz += v;
            fz /= static_cast<double>(trials);
            sink.row({std::to_string(m), csv_num(alpha), csv_num(o.delta),
                      std::to_string(trials), csv_num(cr.bound_mean_pairs),
                      csv_num(cr.bound_sampled_pairs), csv_num(cr.violation_freq_mean),
                      csv_num(cr.violation_freq_sampled), csv_num(z_thresh), csv_num(fz)});
        }
}

void cmd_dist_check(const Options& o, OutputSink& sink) {
    const std::size_t trials = o.trials ? o.trials : 50;
    sink.header = {"trial", "m", "n", "sector_mass", "convolution", "abs_diff"};
    bgbs::RngStream rng(o.seed, 0);
    const auto ms = o.m_list.empty() ? std::vector<std::size_t>{1, 2, 3} : o.m_list;
    for (std::size_t trial = 0; trial < trials; ++trial) {
        const std::size_t m = ms[trial % ms.size()];
        bgbs::ComplexMatrix c = bgbs::sample_gaussian_matrix(m, m, 0.0, 1.0, rng);
        const double smax = bgbs::svd(c).sigma.front();
        const bgbs::TransitionMatrix tm = bgbs::encode(c.scaled(0.6 / smax));
        const std::vector<double> dist = bgbs::pair_number_distribution(tm, 4);
        for (std::size_t n = 0; n <= 4; ++n) {
            const double mass = bgbs::exact_sector_mass(tm, n);
            sink.row({std::to_string(trial), std::to_string(m), std::to_string(n),
                      csv_num(mass), csv_num(dist[n]), csv_num(std::abs(mass - dist[n]))});
        }
    }
}

void cmd_xi_stats(const Options& o, OutputSink& sink) {
    const std::size_t trials = o.trials ? o.trials : 100000;
    sink.header = {"k", "trials", "prob_x_above", "mean_log_per_factor", "var_log_per_factor",
                   "mean_log_ref", "var_log_ref"};
    const bgbs::XiStats st = bgbs::xi_statistics(o.k ? o.k : 100, trials, o.seed);
    sink.row({std::to_string(st.k), std::to_string(st.trials), csv_num(st.prob_x_above),
              csv_num(st.mean_log_per_factor), csv_num(st.var_log_per_factor),
              csv_num(-0.5772156649 / 2.0),
              csv_num(std::numbers::pi * std::numbers::pi / 24.0)});
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"bgbs experiment driver: click statistics, Wishart/Z calibration, "
                 "error-conversion ratios, and permanent-recovery demos"};
    app.require_subcommand(1);

    Options o;
    const auto add_common = [&](CLI::App* sub) {
        sub->add_option("--m", o.m_list, "mode-count grid");
        sub->add_option("--mu", o.mu_list, "photon-density grid");
        sub->add_option("--alpha", o.alpha_list,
                        "scale grid: numbers or rules like 2m^1/4");
        sub->add_option("--k", o.k, "repetition / factor count");
        sub->add_option("--trials", o.trials, "trials per grid point (0 = default)");
        sub->add_option("--delta", o.delta, "tail probability for bound validation");
        sub->add_option("--seed", o.seed, "RNG seed");
        sub->add_option("--out", o.out, "output path (default: stdout)");
        sub->add_option("--format", o.format, "csv or json")
            ->check(CLI::IsMember({"csv", "json"}));
        sub->add_option("--threads", o.threads, "worker threads (0 = auto)");
    };
    struct Command {
        const char* name;
        const char* help;
        void (*run)(const Options&, OutputSink&);
    };
    const std::vector<Command> commands = {
        {"click-stats", "click-count moments over the Gaussian ensemble", cmd_click_stats},
        {"z-calib", "sampled log Z vs the inverse-moment formula", cmd_z_calib},
        {"i-ratio", "error-conversion ratio sweep with fitted slope", cmd_i_ratio},
        {"embed-demo", "permanent recovery round trip (JSON)", cmd_embed_demo},
        {"validate-bounds", "empirical tail-bound violation frequencies", cmd_validate_bounds},
        {"dist-check", "sector mass vs pair-number convolution", cmd_dist_check},
        {"xi-stats", "xi magnitude statistics", cmd_xi_stats},
    };
    for (const Command& c : commands) add_common(app.add_subcommand(c.name, c.help));

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitUsage;
    }

#ifdef _OPENMP
    if (o.threads > 0) omp_set_num_threads(o.threads);
#endif

    const CLI::App* sub = app.get_subcommands().front();
    try {
        for (const Command& c : commands) {
            if (sub->get_name() != c.name) continue;
            OutputSink sink;
            sink.path = o.out;
            sink.format = o.format;
            const auto t0 = std::chrono::steady_clock::now();
            c.run(o, sink);
            const double wall =
                std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
            if (sink.format != "raw") emit(sink, echo(c.name, o), wall);
            return 0;
        }
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitNumeric;
    }
    return kExitUsage;
}

// Command-line front end: single evaluations and parameter sweeps over the
// composite-particle Szilard engine, emitting deterministic CSV/JSON.

#include <atomic>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <numbers>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <nlohmann/json.hpp>
#include "CLI11.hpp"

#include "coboson/engine.hpp"
#include "coboson/errors.hpp"
#include "coboson/numerics.hpp"
#include "coboson/oracle.hpp"
#include "coboson/schmidt.hpp"
#include "coboson/serialize.hpp"
#include "coboson/stats.hpp"

namespace {

using coboson::format_sig12;

constexpr int exit_usage = 2;
constexpr int exit_domain = 3;

struct OutputOptions {
    std::string format = "csv"; // csv | json
    std::string out_path;       // empty = stdout
};

void add_output_flags(CLI::App* cmd, OutputOptions& opts) {
    cmd->add_option("--format", opts.format, "Output format")
        ->check(CLI::IsMember({"csv", "json"}))
        ->capture_default_str();
    cmd->add_option("--out", opts.out_path, "Output file (default stdout)");
}

// Buffered so that nothing partial ever reaches disk on failure.
void emit(const OutputOptions& opts, const std::string& payload) {
    if (opts.out_path.empty()) {
        std::cout << payload;
        return;
    }
    std::ofstream out(opts.out_path, std::ios::binary | std::ios::trunc);
    if (!out) throw coboson::error("cannot open output file: " + opts.out_path);
    out << payload;
}

struct ChiSourceFlags {
    std::optional<int> uniform_d;
    std::optional<double> geometric_q;
    std::optional<double> chi2;
    std::vector<double> weights;

    void add_to(CLI::App* cmd) {
        cmd->add_option("--uniform", uniform_d, "Uniform family with d Schmidt modes");
        cmd->add_option("--geometric", geometric_q, "Geometric family with ratio q in [0,1)");
        cmd->add_option("--chi2", chi2,
                        "Canonical table with the given chi_2 in [0,1] "
                        "(geometric family; 1 = ideal boson)");
        cmd->add_option("--weights", weights, "Explicit Schmidt weights")->expected(-1);
    }

    int count_set() const {
        return (uniform_d ? 1 : 0) + (geometric_q ? 1 : 0) + (chi2 ? 1 : 0) +
               (weights.empty() ? 0 : 1);
    }

    coboson::ChiTable build(int nmax) const {
        if (!weights.empty()) return coboson::chi_table_dp(coboson::make_distribution(weights), nmax);
        if (uniform_d) return coboson::chi_table_dp(coboson::uniform_distribution(*uniform_d), nmax);
        if (geometric_q)
            return coboson::chi_table_dp(coboson::geometric_distribution(*geometric_q), nmax);
        if (chi2) return coboson::chi_table_from_chi2(*chi2, nmax);
        return coboson::ideal_boson_table(nmax);
    }
};

std::string chi_table_csv(const coboson::ChiTable& table) {
    std::ostringstream os;
    os << "k,chi,source\n";
    for (int k = 0; k <= table.Nmax; ++k) {
        os << k << ',' << format_sig12(table.chi(k)) << ',' << coboson::to_string(table.source)
           << '\n';
    }
    return os.str();
}

std::string report_csv_header(int max_n) {
    std::ostringstream os;
    os << "N,beta,chi2";
    for (int m = 0; m <= max_n; ++m) os << ",f_" << m;
    os << ",work,modes_left,modes_right,tail_left,tail_right,skipped\n";
    return os.str();
}

std::string report_csv_row(const coboson::EngineReport& r, int max_n) {
    std::ostringstream os;
    os << r.N << ',' << format_sig12(r.beta) << ',' << format_sig12(r.chi2);
    for (int m = 0; m <= max_n; ++m) {
        os << ',';
        if (m <= r.N) os << format_sig12(r.f[static_cast<std::size_t>(m)]);
    }
    os << ',' << format_sig12(r.work) << ',' << r.diagnostics.modes_left << ','
       << r.diagnostics.modes_right << ',' << format_sig12(r.diagnostics.tail_left) << ','
       << format_sig12(r.diagnostics.tail_right) << ','
       << r.diagnostics.skipped_branches.size() << '\n';
    return os.str();
}

// ---------------------------------------------------------------- sweep ----

struct SweepAxis {
    std::string name; // beta | chi2 | N | q | d
    std::vector<double> values;
};

SweepAxis parse_axis(const std::string& text) {
    std::vector<std::string> parts;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) parts.push_back(item);
    if (parts.size() < 4 || parts.size() > 5)
        throw CLI::ValidationError("--axis", "expected name,start,stop,count[,log]");
    SweepAxis axis;
    axis.name = parts[0];
    if (axis.name != "beta" && axis.name != "chi2" && axis.name != "N" && axis.name != "q" &&
        axis.name != "d")
        throw CLI::ValidationError("--axis", "axis name must be one of beta, chi2, N, q, d");
    double start = 0.0;
    double stop = 0.0;
    long count = 0;
    try {
        start = std::stod(parts[1]);
        stop = std::stod(parts[2]);
        count = std::stol(parts[3]);
    } catch (const std::exception&) {
        throw CLI::ValidationError("--axis", "could not parse numbers in " + text);
    }
    const bool log_scale = parts.size() == 5 && parts[4] == "log";
    if (parts.size() == 5 && !log_scale)
        throw CLI::ValidationError("--axis", "fifth field must be 'log'");
    if (count < 1) throw CLI::ValidationError("--axis", "count must be >= 1");
    if (log_scale && (start <= 0.0 || stop <= 0.0))
        throw CLI::ValidationError("--axis", "log axis needs positive endpoints");
    axis.values.reserve(static_cast<std::size_t>(count));
    for (long i = 0; i < count; ++i) {
        double v;
        if (count == 1) {
            v = start;
        } else if (log_scale) {
            const double t = static_cast<double>(i) / static_cast<double>(count - 1);
            v = std::exp(std::log(start) + t * (std::log(stop) - std::log(start)));
        } else {
            const double t = static_cast<double>(i) / static_cast<double>(count - 1);
            v = start + t * (stop - start);
        }
        axis.values.push_back(v);
    }
    return axis;
}

struct SweepPoint {
    int N;
    double beta;
    coboson::ChiTable chi;
};

int integer_axis_value(double v, const std::string& name) {
    const double r = std::round(v);
    if (std::abs(v - r) > 1e-9)
        throw coboson::OutOfRange("axis " + name + " requires integer values");
    return static_cast<int>(r);
}

void check_cli_bounds(int N, double beta) {
    if (N < 1 || N > 4) throw CLI::ValidationError("--n", "N must lie in [1, 4]");
    if (beta < 1e-4 || beta > 1e4)
        throw CLI::ValidationError("--beta", "beta must lie in [1e-4, 1e4]");
}

int run_sweep(const std::vector<std::string>& axis_texts, int fixed_n, double fixed_beta,
              const ChiSourceFlags& chi_flags, const OutputOptions& opts) {
    std::vector<SweepAxis> axes;
    for (const auto& t : axis_texts) axes.push_back(parse_axis(t));
    if (axes.empty()) throw CLI::ValidationError("--axis", "at least one sweep axis required");

    // Expand the grid in axis order (outer first): rows come out sorted by axes.
    std::vector<std::vector<double>> grid; // one [axis values] tuple per row
    if (axes.size() == 1) {
        for (double v : axes[0].values) grid.push_back({v});
    } else {
        for (double a : axes[0].values)
            for (double b : axes[1].values) grid.push_back({a, b});
    }

    int max_n = fixed_n;
    std::vector<SweepPoint> points;
    points.reserve(grid.size());
    for (const auto& tuple : grid) {
        int N = fixed_n;
        double beta = fixed_beta;
        ChiSourceFlags source = chi_flags;
        for (std::size_t i = 0; i < axes.size(); ++i) {
            const auto& name = axes[i].name;
            const double v = tuple[i];
            if (name == "beta") {
                beta = v;
            } else if (name == "N") {
                N = integer_axis_value(v, name);
            } else if (name == "chi2") {
                source = ChiSourceFlags{};
                source.chi2 = v;
            } else if (name == "q") {
                source = ChiSourceFlags{};
                source.geometric_q = v;
            } else if (name == "d") {
                source = ChiSourceFlags{};
                source.uniform_d = integer_axis_value(v, name);
            }
        }
        check_cli_bounds(N, beta);
        points.push_back(SweepPoint{N, beta, source.build(std::max(N, 2))});
        max_n = std::max(max_n, N);
    }

    // Grid points are independent; COBOSON_THREADS caps the worker count and
    // never affects the bytes written (assembly below is ordered).
    std::size_t workers = std::max(1u, std::thread::hardware_concurrency());
    if (const char* env = std::getenv("COBOSON_THREADS")) {
        const long cap = std::strtol(env, nullptr, 10);
        if (cap >= 1) workers = std::min<std::size_t>(workers, static_cast<std::size_t>(cap));
    }
    workers = std::min(workers, points.size());

    std::vector<coboson::EngineReport> reports(points.size());
    std::vector<std::string> failures(points.size());
    std::atomic<std::size_t> next{0};
    auto work = [&]() {
        for (;;) {
            const std::size_t i = next.fetch_add(1);
            if (i >= points.size()) return;
            try {
                coboson::EngineSpec spec;
                spec.N = points[i].N;
                spec.beta = points[i].beta;
                spec.chi = points[i].chi;
                reports[i] = coboson::total_work(spec);
            } catch (const std::exception& e) {
                failures[i] = e.what();
            }
        }
    };
    if (workers <= 1) {
        work();
    } else {
        std::vector<std::thread> pool;
        for (std::size_t i = 0; i < workers; ++i) pool.emplace_back(work);
        for (auto& t : pool) t.join();
    }
    for (const auto& f : failures) {
        if (!f.empty()) throw coboson::error(f);
    }

    std::string payload;
    if (opts.format == "csv") {
        std::ostringstream os;
        os << report_csv_header(max_n);
        for (const auto& r : reports) os << report_csv_row(r, max_n);
        payload = os.str();
    } else {
        nlohmann::json rows = nlohmann::json::array();
        for (const auto& r : reports) rows.push_back(coboson::to_json(r));
        payload = nlohmann::json{{"rows", rows}}.dump(2) + "\n";
    }
    emit(opts, payload);
    return 0;
}

// ------------------------------------------------------------- selftest ----

int run_selftest(unsigned seed) {
    std::mt19937 rng(seed);
    bool ok = true;

    // chi: dp vs explicit Fock-space norms, and vs Newton's identities.
    {
        std::uniform_int_distribution<int> pick_d(1, 8);
        std::uniform_real_distribution<double> pick_w(0.0, 1.0);
        double worst_dp = 0.0;
        double worst_newton = 0.0;
        for (int trial = 0; trial < 100; ++trial) {
            const int d = pick_d(rng);
            std::vector<double> w(static_cast<std::size_t>(d));
            for (double& x : w) x = pick_w(rng) + 1e-6;
            const auto dist = coboson::make_distribution(w);
            const auto table = coboson::chi_table_dp(dist, 4);
            const auto newton = coboson::chi_table_newton(coboson::power_sums(dist, 4), 4);
            for (int N = 1; N <= 4; ++N) {
                const double brute = coboson::oracle::brute_chi(dist, N);
                const double a = table.chi(N);
                const double scale = std::max({std::abs(a), std::abs(brute), 1e-300});
                worst_dp = std::max(worst_dp, std::abs(a - brute) / scale);
                const double b = newton.chi(N);
                const double scale2 = std::max({std::abs(a), std::abs(b), 1e-300});
                worst_newton = std::max(worst_newton, std::abs(a - b) / scale2);
            }
        }
        const bool pass = worst_dp < 1e-12 && worst_newton < 1e-10;
        ok = ok && pass;
        std::cout << "chi oracle agreement: max dp-vs-fock " << format_sig12(worst_dp)
                  << ", max dp-vs-newton " << format_sig12(worst_newton) << " -> "
                  << (pass ? "PASS" : "FAIL") << '\n';
    }

    // partition functions: factorized vs direct joint enumeration.
    {
        std::uniform_int_distribution<int> pick_n(1, 3);
        std::uniform_int_distribution<int> pick_modes(1, 4);
        std::uniform_real_distribution<double> pick_beta(0.1, 2.0);
        std::uniform_real_distribution<double> pick_l(0.2, 0.8);
        std::uniform_real_distribution<double> pick_w(0.0, 1.0);
        double worst = 0.0;
        for (int trial = 0; trial < 20; ++trial) {
            const int N = pick_n(rng);
            const int modes = pick_modes(rng);
            const double beta = pick_beta(rng);
            const double l = pick_l(rng);
            std::vector<double> w(4);
            for (double& x : w) x = pick_w(rng) + 1e-6;
            const auto chi = coboson::chi_table_dp(coboson::make_distribution(w), N);
            const auto brute = coboson::oracle::brute_partition(l, N, chi, beta, modes);
            std::vector<double> left(static_cast<std::size_t>(modes));
            std::vector<double> right(static_cast<std::size_t>(modes));
            for (int n = 1; n <= modes; ++n) {
                left[static_cast<std::size_t>(n - 1)] = n * n / (l * l);
                right[static_cast<std::size_t>(n - 1)] = n * n / ((1.0 - l) * (1.0 - l));
            }
            for (int m = 0; m <= N; ++m) {
                const double factored = coboson::side_sum(m, left, chi, beta) *
                                        coboson::side_sum(N - m, right, chi, beta);
                const double b = brute.Zm[static_cast<std::size_t>(m)];
                const double scale = std::max({std::abs(factored), std::abs(b), 1e-300});
                worst = std::max(worst, std::abs(factored - b) / scale);
            }
        }
        const bool pass = worst < 1e-12;
        ok = ok && pass;
        std::cout << "partition oracle agreement: max rel err " << format_sig12(worst) << " -> "
                  << (pass ? "PASS" : "FAIL") << '\n';
    }

    // degeneracy counting identity, exact rationals.
    {
        std::uniform_int_distribution<int> pick_d(2, 6);
        std::uniform_int_distribution<int> pick_a(1, 50);
        bool pass = true;
        for (int trial = 0; trial < 50; ++trial) {
            const int d = pick_d(rng);
            std::vector<coboson::BigInt> parts(static_cast<std::size_t>(d));
            coboson::BigInt total = 0;
            for (auto& a : parts) {
                a = pick_a(rng);
                total += a;
            }
            std::vector<coboson::BigRational> weights;
            weights.reserve(parts.size());
            for (const auto& a : parts) weights.emplace_back(a, total);
            const int N = std::min(d, 1 + trial % 4);
            const auto res = coboson::degeneracy_model(weights, N);
            pass = pass && res.check_ratio == 1;
        }
        ok = ok && pass;
        std::cout << "degeneracy counting identity: exact ratio 1 on 50 random inputs -> "
                  << (pass ? "PASS" : "FAIL") << '\n';
    }

    // The two readings of the chi-ratio bound, documented by data: the
    // literature-consistent reading chi_{k+1}/chi_k always satisfies
    // 1-k(1-chi_2) <= r <= chi_2; the literal printed form chi_{k+1}/k does not.
    {
        std::uniform_int_distribution<int> pick_d(2, 8);
        std::uniform_real_distribution<double> pick_w(0.0, 1.0);
        int ratio_violations = 0;
        int literal_violations = 0;
        for (int trial = 0; trial < 100; ++trial) {
            const int d = pick_d(rng);
            std::vector<double> w(static_cast<std::size_t>(d));
            for (double& x : w) x = pick_w(rng) + 1e-6;
            const auto table = coboson::chi_table_dp(coboson::make_distribution(w), 6);
            const double chi2 = table.chi2();
            for (int k = 1; k <= 5; ++k) {
                if (table.chi(k) <= 0.0) continue;
                const double lower = 1.0 - k * (1.0 - chi2);
                const double ratio = table.chi(k + 1) / table.chi(k);
                if (ratio > chi2 + 1e-12 || ratio < lower - 1e-12) ++ratio_violations;
                const double literal = table.chi(k + 1) / k;
                if (literal > chi2 + 1e-12 || literal < lower - 1e-12) ++literal_violations;
            }
        }
        const bool pass = ratio_violations == 0;
        ok = ok && pass;
        std::cout << "chi ratio bound: chi_{k+1}/chi_k violations " << ratio_violations
                  << " (literal chi_{k+1}/k reading violates " << literal_violations
                  << " times) -> " << (pass ? "PASS" : "FAIL") << '\n';
    }

    std::cout << "selftest: " << (ok ? "PASS" : "FAIL") << '\n';
    return ok ? 0 : 1;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Composite-particle Szilard engine calculator"};
    app.require_subcommand(1);
    bool error_json = false;
    app.add_flag("--error-json", error_json, "Emit machine-readable error JSON on stderr");

    // chi ------------------------------------------------------------------
    auto* chi_cmd = app.add_subcommand("chi", "Compute the chi_0..chi_Nmax table");
    ChiSourceFlags chi_source;
    chi_source.add_to(chi_cmd);
    int chi_nmax = 4;
    chi_cmd->add_option("--nmax", chi_nmax, "Largest chi index")->check(CLI::Range(1, 64));
    OutputOptions chi_out;
    add_output_flags(chi_cmd, chi_out);

    // engine ---------------------------------------------------------------
    auto* engine_cmd = app.add_subcommand("engine", "Run the N-particle engine at one point");
    int engine_n = 2;
    double engine_beta = 1.0;
    engine_cmd->add_option("--n", engine_n, "Particle count (desk-scale bound 4)")
        ->check(CLI::Range(1, 4));
    engine_cmd->add_option("--beta", engine_beta, "Inverse temperature in natural units")
        ->check(CLI::Range(1e-4, 1e4));
    ChiSourceFlags engine_source;
    engine_source.add_to(engine_cmd);
    double engine_cutoff = 1e-12;
    double engine_wall_grid = 1e-3;
    double engine_wall_tol = 1e-8;
    engine_cmd->add_option("--cutoff-tol", engine_cutoff, "Boltzmann tail cutoff");
    engine_cmd->add_option("--wall-grid", engine_wall_grid, "Wall-scan grid step");
    engine_cmd->add_option("--wall-tol", engine_wall_tol, "Wall-position refinement tolerance");
    OutputOptions engine_out;
    add_output_flags(engine_cmd, engine_out);

    // sweep ------------------------------------------------------------------
    auto* sweep_cmd = app.add_subcommand("sweep", "Sweep up to two parameter axes");
    std::vector<std::string> sweep_axes;
    sweep_cmd->add_option("--axis", sweep_axes, "Axis as name,start,stop,count[,log]");
    int sweep_n = 2;
    double sweep_beta = 1.0;
    sweep_cmd->add_option("--n", sweep_n, "Fixed particle count")->check(CLI::Range(1, 4));
    sweep_cmd->add_option("--beta", sweep_beta, "Fixed inverse temperature")
        ->check(CLI::Range(1e-4, 1e4));
    ChiSourceFlags sweep_source;
    sweep_source.add_to(sweep_cmd);
    OutputOptions sweep_out;
    add_output_flags(sweep_cmd, sweep_out);

    // hydrogen ---------------------------------------------------------------
    auto* hyd_cmd = app.add_subcommand(
        "hydrogen", "Purity, chi_2, f_0 and low-temperature work for a trapped hydrogen atom");
    double hyd_omega = 2.0 * std::numbers::pi * 1e4;
    double hyd_mass = coboson::constants::hydrogen_mass;
    double hyd_a0 = coboson::constants::bohr_radius;
    double hyd_b = 0.0;
    hyd_cmd->add_option("--omega", hyd_omega, "Trap angular frequency, rad/s")
        ->capture_default_str();
    hyd_cmd->add_option("--mass", hyd_mass, "Atom mass, kg")->capture_default_str();
    hyd_cmd->add_option("--a0", hyd_a0, "Bohr radius, m")->capture_default_str();
    hyd_cmd->add_option("--b", hyd_b, "Trap length b in m (overrides omega and mass)");
    OutputOptions hyd_out;
    add_output_flags(hyd_cmd, hyd_out);

    // selftest ---------------------------------------------------------------
    auto* self_cmd = app.add_subcommand("selftest", "Run the brute-force oracle suites");
    unsigned self_seed = 12345;
    self_cmd->add_option("--seed", self_seed, "RNG seed")->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : exit_usage;
    }

    try {
        if (chi_cmd->parsed()) {
            if (chi_source.count_set() > 1)
                throw CLI::ValidationError("chi", "give at most one weight family");
            const auto table = chi_source.build(chi_nmax);
            if (chi_out.format == "csv") {
                emit(chi_out, chi_table_csv(table));
            } else {
                emit(chi_out, coboson::to_json(table).dump(2) + "\n");
            }
        } else if (engine_cmd->parsed()) {
            if (engine_source.count_set() > 1)
                throw CLI::ValidationError("engine", "give at most one weight family");
            coboson::EngineSpec spec;
            spec.N = engine_n;
            spec.beta = engine_beta;
            spec.chi = engine_source.build(std::max(engine_n, 2));
            spec.cutoff_tol = engine_cutoff;
            spec.wall_grid = engine_wall_grid;
            spec.wall_refine_tol = engine_wall_tol;
            const auto report = coboson::total_work(spec);
            if (engine_out.format == "csv") {
                emit(engine_out, report_csv_header(report.N) + report_csv_row(report, report.N));
            } else {
                emit(engine_out, coboson::to_json(report).dump(2) + "\n");
            }
        } else if (sweep_cmd->parsed()) {
            if (sweep_source.count_set() > 1)
                throw CLI::ValidationError("sweep", "give at most one weight family");
            if (sweep_axes.size() > 2)
                throw CLI::ValidationError("--axis", "at most 2 sweep axes");
            return run_sweep(sweep_axes, sweep_n, sweep_beta, sweep_source, sweep_out);
        } else if (hyd_cmd->parsed()) {
            const double b = hyd_b > 0.0 ? hyd_b : coboson::trap_length(hyd_omega, hyd_mass);
            const double purity = coboson::hydrogen_purity(hyd_a0, b);
            if (hyd_a0 / b > coboson::constants::hydrogen_ratio_limit) {
                std::cerr << "warning: a0/b = " << format_sig12(hyd_a0 / b)
                          << " exceeds the small-ratio validity range (0.1)\n";
            }
            const double chi2 = 1.0 - purity;
            const double f0 = coboson::two_particle_f0(chi2);
            const double work = coboson::two_particle_work(chi2);
            if (hyd_out.format == "csv") {
                std::ostringstream os;
                os << "purity,chi2,f0,work,b\n"
                   << format_sig12(purity) << ',' << format_sig12(chi2) << ',' << format_sig12(f0)
                   << ',' << format_sig12(work) << ',' << format_sig12(b) << '\n';
                emit(hyd_out, os.str());
            } else {
                nlohmann::json j{{"purity", purity},
                                 {"chi2", chi2},
                                 {"f0", f0},
                                 {"work", work},
                                 {"b", b}};
                emit(hyd_out, j.dump(2) + "\n");
            }
        } else if (self_cmd->parsed()) {
            return run_selftest(self_seed);
        }
    } catch (const CLI::ValidationError& e) {
        std::cerr << e.what() << '\n';
        return exit_usage;
    } catch (const coboson::error& e) {
        if (error_json) {
            std::cerr << nlohmann::json{{"error", "domain_error"}, {"message", e.what()}}.dump()
                      << '\n';
        } else {
            std::cerr << "error: " << e.what() << '\n';
        }
        return exit_domain;
    }
    return 0;
}

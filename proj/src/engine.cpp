#include "coboson/engine.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "coboson/errors.hpp"
#include "coboson/numerics.hpp"

namespace coboson {

namespace {

constexpr double min_width = 1e-9;
const double neg_inf = -std::numeric_limits<double>::infinity();
const double quiet_nan = std::numeric_limits<double>::quiet_NaN();

/// Coefficients c_0..c_mmax of prod_p (sum_j chi_j t_p^j z^j) with t_p =
/// exp(-beta E_p), by in-place polynomial multiplication (descending k reads
/// pre-update values). Compensated accumulation per slot.
std::vector<double> side_coefficients(int mmax, std::span<const double> energies,
                                      const ChiTable& chi, double beta) {
    const auto n = static_cast<std::size_t>(mmax);
    std::vector<double> c(n + 1, 0.0), comp(n + 1, 0.0);
    c[0] = 1.0;
    std::vector<double> tpow(n + 1, 1.0);
    for (double E : energies) {
        const double t = std::exp(-beta * E);
        if (t == 0.0) break; // energies ascend; the rest contribute nothing
        for (std::size_t j = 1; j <= n; ++j) tpow[j] = tpow[j - 1] * t;
        for (std::size_t k = n; k >= 1; --k) {
            double term = 0.0;
            for (std::size_t j = 1; j <= k; ++j) {
                term += chi.values[j] * tpow[j] * (c[k - j] + comp[k - j]);
            }
            const double s = c[k] + term;
            if (std::abs(c[k]) >= std::abs(term)) {
                comp[k] += (c[k] - s) + term;
            } else {
                comp[k] += (term - s) + c[k];
            }
            c[k] = s;
        }
    }
    for (std::size_t k = 0; k <= n; ++k) c[k] += comp[k];
    return c;
}

/// log S(0..mmax) in one pass, shifted by the side's lowest level so nothing
/// underflows at any beta.
std::vector<double> log_side_spectrum(int mmax, std::span<const double> energies,
                                      const ChiTable& chi, double beta) {
    const auto n = static_cast<std::size_t>(mmax);
    std::vector<double> L(n + 1, neg_inf);
    L[0] = 0.0;
    if (n == 0 || energies.empty()) return L;
    std::vector<double> log_chi(n + 1, neg_inf);
    for (std::size_t j = 1; j <= n; ++j) {
        if (chi.values[j] > 0.0) log_chi[j] = std::log(chi.values[j]);
    }
    const double shift = energies.front();
    std::vector<double> lt(n + 1, neg_inf);
    for (double E : energies) {
        const double dE = E - shift;
        for (std::size_t j = 1; j <= n; ++j) {
            lt[j] = (log_chi[j] == neg_inf) ? neg_inf : log_chi[j] - beta * static_cast<double>(j) * dE;
        }
        for (std::size_t k = n; k >= 1; --k) {
            double v = L[k];
            for (std::size_t j = 1; j <= k; ++j) {
                if (lt[j] == neg_inf || L[k - j] == neg_inf) continue;
                v = log_add_exp(v, lt[j] + L[k - j]);
            }
            L[k] = v;
        }
    }
    for (std::size_t k = 0; k <= n; ++k) {
        if (L[k] != neg_inf) L[k] -= beta * static_cast<double>(k) * shift;
    }
    return L;
}

struct WallContext {
    std::vector<double> left_energies;
    std::vector<double> right_energies;
    std::vector<double> log_zm; // log Z_0..Z_N at this l
    double log_z = neg_inf;
};

WallContext evaluate_wall(double l, const EngineSpec& spec) {
    WallContext ctx;
    ctx.left_energies = mode_energies(l, spec, spec.N);
    ctx.right_energies = mode_energies(1.0 - l, spec, spec.N);
    const auto ls_left = log_side_spectrum(spec.N, ctx.left_energies, spec.chi, spec.beta);
    const auto ls_right = log_side_spectrum(spec.N, ctx.right_energies, spec.chi, spec.beta);
    ctx.log_zm.resize(static_cast<std::size_t>(spec.N) + 1);
    for (int m = 0; m <= spec.N; ++m) {
        const double a = ls_left[static_cast<std::size_t>(m)];
        const double b = ls_right[static_cast<std::size_t>(spec.N - m)];
        ctx.log_zm[static_cast<std::size_t>(m)] = (a == neg_inf || b == neg_inf) ? neg_inf : a + b;
    }
    ctx.log_z = log_sum_exp(ctx.log_zm);
    return ctx;
}

bool branch_skipped(const EngineSpec& spec, int m) {
    return spec.chi.chi(m) * spec.chi.chi(spec.N - m) == 0.0;
}

/// Grid scan (no unimodality assumed) plus golden-section refinement of the
/// best bracket; ties broken toward the centre.
double locate_equilibrium(const EngineSpec& spec, int m) {
    const double step = spec.wall_grid;
    double best_l = 0.5;
    double best_v = neg_inf;
    for (int k = 1; k * step < 1.0 - 0.5 * step; ++k) {
        const double l = k * step;
        const double v = evaluate_wall(l, spec).log_zm[static_cast<std::size_t>(m)];
        if (v > best_v ||
            (v == best_v && std::abs(l - 0.5) < std::abs(best_l - 0.5))) {
            best_v = v;
            best_l = l;
        }
    }
    const double lo = std::max(best_l - step, min_width);
    const double hi = std::min(best_l + step, 1.0 - min_width);
    return golden_section_maximize(
        [&](double l) { return evaluate_wall(l, spec).log_zm[static_cast<std::size_t>(m)]; }, lo,
        hi, spec.wall_refine_tol);
}

} // namespace

void EngineSpec::validate() const {
    if (N < 1) throw OutOfRange("particle count must be >= 1");
    if (!(beta > 0.0) || !std::isfinite(beta)) throw OutOfRange("beta must be positive and finite");
    if (chi.Nmax < N) throw OccupationExceedsTable("chi table must reach Nmax >= N");
    if (!(cutoff_tol > 0.0) || !(wall_grid > 0.0) || !(wall_refine_tol > 0.0))
        throw OutOfRange("tolerances must be positive");
}

std::vector<double> mode_energies(double width, const EngineSpec& spec, int particle_budget) {
    if (width < min_width) throw WidthUnderflow();
    const double w2 = width * width;
    const double threshold = w2 * std::log(1.0 / spec.cutoff_tol) / spec.beta;
    // smallest K with (K+1)^2 - 1 > threshold
    int K = std::max(1, static_cast<int>(std::ceil(std::sqrt(threshold + 1.0) - 1.0)) - 1);
    while (static_cast<double>(K + 1) * (K + 1) - 1.0 <= threshold) ++K;
    K = std::max(K, particle_budget + 2);
    std::vector<double> energies(static_cast<std::size_t>(K));
    for (int n = 1; n <= K; ++n)
        energies[static_cast<std::size_t>(n - 1)] = static_cast<double>(n) * n / w2;
    return energies;
}

double side_sum(int m, std::span<const double> energies, const ChiTable& chi, double beta) {
    if (m < 0) throw OutOfRange("occupation must be non-negative");
    if (m > chi.Nmax) throw OccupationExceedsTable();
    if (m == 0) return 1.0;
    return side_coefficients(m, energies, chi, beta)[static_cast<std::size_t>(m)];
}

double log_side_sum(int m, std::span<const double> energies, const ChiTable& chi, double beta) {
    if (m < 0) throw OutOfRange("occupation must be non-negative");
    if (m > chi.Nmax) throw OccupationExceedsTable();
    return log_side_spectrum(m, energies, chi, beta)[static_cast<std::size_t>(m)];
}

double z_m(double l, const EngineSpec& spec, int m) {
    spec.validate();
    if (m < 0 || m > spec.N) throw OutOfRange("m must lie in [0, N]");
    if (l <= 0.0 || l >= 1.0) throw WidthUnderflow("wall position must lie inside the box");
    const auto left = mode_energies(l, spec, m);
    const auto right = mode_energies(1.0 - l, spec, spec.N - m);
    return side_sum(m, left, spec.chi, spec.beta) *
           side_sum(spec.N - m, right, spec.chi, spec.beta);
}

double log_z_m(double l, const EngineSpec& spec, int m) {
    spec.validate();
    if (m < 0 || m > spec.N) throw OutOfRange("m must lie in [0, N]");
    if (l <= 0.0 || l >= 1.0) throw WidthUnderflow("wall position must lie inside the box");
    return evaluate_wall(l, spec).log_zm[static_cast<std::size_t>(m)];
}

double z_total(double l, const EngineSpec& spec) {
    spec.validate();
    CompensatedSum acc;
    for (int m = 0; m <= spec.N; ++m) acc.add(z_m(l, spec, m));
    return acc.value();
}

double log_z_total(double l, const EngineSpec& spec) {
    spec.validate();
    if (l <= 0.0 || l >= 1.0) throw WidthUnderflow("wall position must lie inside the box");
    return evaluate_wall(l, spec).log_z;
}

double equilibrium_position(const EngineSpec& spec, int m) {
    spec.validate();
    if (m < 0 || m > spec.N) throw OutOfRange("m must lie in [0, N]");
    if (branch_skipped(spec, m)) throw DegenerateConfiguration();
    if (m == 0) return 0.0;
    if (m == spec.N) return 1.0;
    if (2 * m == spec.N) return 0.5;
    return locate_equilibrium(spec, m);
}

std::vector<double> measurement_probabilities(const EngineSpec& spec) {
    spec.validate();
    const auto ctx = evaluate_wall(0.5, spec);
    std::vector<double> f(static_cast<std::size_t>(spec.N) + 1, 0.0);
    CompensatedSum norm;
    for (int m = 0; m <= spec.N; ++m) {
        const double lz = ctx.log_zm[static_cast<std::size_t>(m)];
        f[static_cast<std::size_t>(m)] = (lz == neg_inf) ? 0.0 : std::exp(lz - ctx.log_z);
        norm.add(f[static_cast<std::size_t>(m)]);
    }
    const double total = norm.value();
    for (double& x : f) x /= total;
    return f;
}

double f_star(const EngineSpec& spec, int m) {
    spec.validate();
    if (m < 0 || m > spec.N) throw OutOfRange("m must lie in [0, N]");
    if (branch_skipped(spec, m)) throw DegenerateConfiguration();
    if (m == 0 || m == spec.N) return 1.0;
    const double l_eq = equilibrium_position(spec, m);
    const auto ctx = evaluate_wall(l_eq, spec);
    return std::exp(ctx.log_zm[static_cast<std::size_t>(m)] - ctx.log_z);
}

EngineReport total_work(const EngineSpec& spec) {
    spec.validate();
    EngineReport report;
    report.N = spec.N;
    report.beta = spec.beta;
    report.chi2 = spec.chi.Nmax >= 2 ? spec.chi.chi2() : quiet_nan;

    const auto half = evaluate_wall(0.5, spec);
    report.diagnostics.modes_left = static_cast<int>(half.left_energies.size());
    report.diagnostics.modes_right = static_cast<int>(half.right_energies.size());
    const auto tail = [&](const std::vector<double>& E) {
        const auto K = static_cast<double>(E.size());
        const double next = (K + 1.0) * (K + 1.0) / (0.25); // width 1/2
        return std::exp(-spec.beta * (next - E.front()));
    };
    report.diagnostics.tail_left = tail(half.left_energies);
    report.diagnostics.tail_right = tail(half.right_energies);

    const auto n = static_cast<std::size_t>(spec.N);
    report.f.resize(n + 1);
    report.f_star.assign(n + 1, quiet_nan);
    report.l_eq.assign(n + 1, quiet_nan);

    CompensatedSum fsum;
    for (int m = 0; m <= spec.N; ++m) {
        const double lz = half.log_zm[static_cast<std::size_t>(m)];
        report.f[static_cast<std::size_t>(m)] = (lz == neg_inf) ? 0.0 : std::exp(lz - half.log_z);
        fsum.add(report.f[static_cast<std::size_t>(m)]);
    }
    for (double& x : report.f) x /= fsum.value();

    CompensatedSum work;
    for (int m = 0; m <= spec.N; ++m) {
        const auto idx = static_cast<std::size_t>(m);
        if (branch_skipped(spec, m)) {
            report.diagnostics.skipped_branches.push_back(m);
            continue;
        }
        double log_fstar = 0.0;
        if (m == 0 || m == spec.N) {
            report.l_eq[idx] = (m == 0) ? 0.0 : 1.0;
            report.f_star[idx] = 1.0;
        } else {
            const double l_eq = (2 * m == spec.N) ? 0.5 : locate_equilibrium(spec, m);
            const auto ctx = evaluate_wall(l_eq, spec);
            report.l_eq[idx] = l_eq;
            log_fstar = ctx.log_zm[idx] - ctx.log_z;
            report.f_star[idx] = std::exp(log_fstar);
        }
        if (report.f[idx] <= 0.0) continue; // 0 ln 0 = 0
        const double log_fm = half.log_zm[idx] - half.log_z;
        work.add(-report.f[idx] * (log_fm - log_fstar));
    }
    report.work = work.value();
    return report;
}

} // namespace coboson

#include "coboson/schmidt.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>

#include "coboson/errors.hpp"
#include "coboson/numerics.hpp"

namespace coboson {

std::string to_string(ChiSource s) {
    switch (s) {
    case ChiSource::dp: return "dp";
    case ChiSource::newton: return "newton";
    case ChiSource::oracle: return "oracle";
    case ChiSource::analytic: return "analytic";
    }
    return "unknown";
}

SchmidtDistribution make_distribution(const std::vector<double>& raw_weights) {
    constexpr double clamp_floor = -1e-15;
    std::vector<double> w;
    w.reserve(raw_weights.size());
    for (double x : raw_weights) {
        if (x < clamp_floor) throw NegativeWeight();
        w.push_back(std::max(x, 0.0));
    }
    const double total = compensated_total(w);
    if (total <= 0.0) throw EmptyDistribution();
    for (double& x : w) x /= total;
    std::sort(w.begin(), w.end(), std::greater<>());
    while (!w.empty() && w.back() == 0.0) w.pop_back();
    if (w.empty()) throw EmptyDistribution();
    return SchmidtDistribution{std::move(w), "custom", 0.0};
}

SchmidtDistribution uniform_distribution(int d) {
    if (d < 1) throw EmptyDistribution("uniform distribution needs d >= 1");
    SchmidtDistribution dist;
    dist.weights.assign(static_cast<std::size_t>(d), 1.0 / d);
    dist.family_tag = "uniform";
    return dist;
}

SchmidtDistribution geometric_distribution(double q, double tail_tol) {
    if (q >= 1.0 || q < 0.0) throw NonNormalizable("geometric family needs 0 <= q < 1");
    if (!(tail_tol > 0.0)) throw OutOfRange("tail_tol must be positive");
    SchmidtDistribution dist;
    dist.family_tag = "geometric";
    if (q == 0.0) {
        dist.weights = {1.0};
        return dist;
    }
    // Discarded mass after M kept modes is q^M.
    const int M = std::max(1, static_cast<int>(std::ceil(std::log(tail_tol) / std::log(q))));
    const double kept_mass = 1.0 - std::pow(q, M);
    dist.weights.resize(static_cast<std::size_t>(M));
    double lam = (1.0 - q) / kept_mass;
    for (int n = 0; n < M; ++n) {
        dist.weights[static_cast<std::size_t>(n)] = lam;
        lam *= q;
    }
    dist.truncation_error = std::pow(q, M);
    return dist;
}

double purity(const SchmidtDistribution& dist) {
    CompensatedSum acc;
    for (double x : dist.weights) acc.add(x * x);
    return acc.value();
}

PowerSums power_sums(const SchmidtDistribution& dist, int Kmax) {
    if (Kmax < 1) throw OutOfRange("Kmax must be >= 1");
    PowerSums ps;
    ps.p.resize(static_cast<std::size_t>(Kmax));
    for (int k = 1; k <= Kmax; ++k) {
        CompensatedSum acc;
        for (double x : dist.weights) acc.add(std::pow(x, k));
        ps.p[static_cast<std::size_t>(k - 1)] = acc.value();
    }
    return ps;
}

namespace {

ChiTable table_from_esp(const std::vector<double>& e, int Nmax, ChiSource source) {
    ChiTable table;
    table.Nmax = Nmax;
    table.source = source;
    table.values.resize(static_cast<std::size_t>(Nmax) + 1);
    double factorial = 1.0;
    for (int k = 0; k <= Nmax; ++k) {
        if (k > 0) factorial *= k;
        table.values[static_cast<std::size_t>(k)] =
            std::max(0.0, factorial * e[static_cast<std::size_t>(k)]);
    }
    return table;
}

} // namespace

ChiTable chi_table_dp(const SchmidtDistribution& dist, int Nmax) {
    if (Nmax < 1) throw OutOfRange("Nmax must be >= 1");
    const auto n = static_cast<std::size_t>(Nmax);
    std::vector<double> e(n + 1, 0.0), comp(n + 1, 0.0);
    e[0] = 1.0;
    for (double lam : dist.weights) {
        for (std::size_t k = n; k >= 1; --k) {
            const double term = lam * (e[k - 1] + comp[k - 1]);
            // Neumaier step on slot k
            const double t = e[k] + term;
            if (std::abs(e[k]) >= std::abs(term)) {
                comp[k] += (e[k] - t) + term;
            } else {
                comp[k] += (term - t) + e[k];
            }
            e[k] = t;
        }
    }
    for (std::size_t k = 0; k <= n; ++k) e[k] += comp[k];
    return table_from_esp(e, Nmax, ChiSource::dp);
}

ChiTable chi_table_newton(const PowerSums& psums, int Nmax) {
    if (Nmax < 1) throw OutOfRange("Nmax must be >= 1");
    if (psums.Kmax() < Nmax) throw InsufficientPowerSums();
    std::vector<double> e(static_cast<std::size_t>(Nmax) + 1, 0.0);
    e[0] = 1.0;
    for (int k = 1; k <= Nmax; ++k) {
        CompensatedSum acc;
        double sign = 1.0;
        for (int i = 1; i <= k; ++i) {
            acc.add(sign * e[static_cast<std::size_t>(k - i)] * psums.at(i));
            sign = -sign;
        }
        // e_k >= 0 for genuine weights; cancellation noise is clamped.
        e[static_cast<std::size_t>(k)] = std::max(0.0, acc.value() / k);
    }
    return table_from_esp(e, Nmax, ChiSource::newton);
}

ChiTable ideal_boson_table(int Nmax) {
    if (Nmax < 1) throw OutOfRange("Nmax must be >= 1");
    ChiTable table;
    table.Nmax = Nmax;
    table.source = ChiSource::analytic;
    table.values.assign(static_cast<std::size_t>(Nmax) + 1, 1.0);
    return table;
}

ChiTable chi_table_from_chi2(double chi2, int Nmax) {
    if (chi2 < 0.0 || chi2 > 1.0) throw OutOfRange("chi2 must lie in [0, 1]");
    if (chi2 == 1.0) return ideal_boson_table(Nmax);
    // Geometric family: purity (1-q)/(1+q) = 1 - chi2  =>  q = chi2/(2 - chi2).
    const double q = chi2 / (2.0 - chi2);
    return chi_table_dp(geometric_distribution(q), Nmax);
}

double hydrogen_purity(double bohr_radius, double trap_length_b) {
    if (bohr_radius < 0.0 || trap_length_b <= 0.0) throw NonPositiveLength();
    const double ratio = bohr_radius / trap_length_b;
    const double prefactor = 33.0 / (4.0 * std::sqrt(2.0 * std::numbers::pi));
    return prefactor * ratio * ratio * ratio;
}

double trap_length(double omega, double mass) {
    if (omega <= 0.0 || mass <= 0.0) throw NonPositiveLength("omega and mass must be positive");
    return std::sqrt(constants::hbar / (mass * omega));
}

} // namespace coboson

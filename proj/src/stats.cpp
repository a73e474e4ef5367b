#include "coboson/stats.hpp"

#include <cmath>
#include <limits>

#include "coboson/errors.hpp"
#include "coboson/numerics.hpp"

namespace coboson {

double add_particle_enhancement(const ChiTable& chi, int N) {
    if (N < 0 || N + 1 > chi.Nmax) throw OccupationExceedsTable();
    const double chi_n = chi.chi(N);
    if (chi_n == 0.0) throw DepletedMode();
    return (N + 1) * chi.chi(N + 1) / chi_n;
}

double condensation_ratio(const ChiTable& chi, int N) {
    if (N < 0 || N > chi.Nmax) throw OccupationExceedsTable();
    double factorial = 1.0;
    for (int k = 2; k <= N; ++k) factorial *= k;
    return factorial * chi.chi(N);
}

RelProbability config_rel_probability(const ChiTable& chi, const OccupationConfig& cfg) {
    double log_total = 0.0;
    bool zero = false;
    int N = 0;
    for (const auto& [mode, occ] : cfg.occupations) {
        if (occ < 1) throw OutOfRange("occupations must be >= 1");
        if (occ > chi.Nmax) throw OccupationExceedsTable();
        N += occ;
        const double c = chi.chi(occ);
        if (c == 0.0) {
            zero = true;
        } else {
            log_total += std::log(c);
        }
    }
    log_total += std::lgamma(N + 1.0);
    RelProbability p;
    if (zero) {
        p.value = 0.0;
        p.log_value = -std::numeric_limits<double>::infinity();
    } else {
        p.log_value = log_total;
        p.value = std::exp(log_total);
    }
    return p;
}

double two_particle_f0(double chi2) {
    if (chi2 < 0.0 || chi2 > 1.0) throw OutOfRange("chi2 must lie in [0, 1]");
    return chi2 / (1.0 + 2.0 * chi2);
}

double two_particle_work(double chi2) {
    return -2.0 * xlogx(two_particle_f0(chi2));
}

std::vector<double> lowT_measurement_distribution(const ChiTable& chi, int N) {
    if (N < 0 || N > chi.Nmax) throw OccupationExceedsTable();
    std::vector<double> f(static_cast<std::size_t>(N) + 1, 0.0);
    CompensatedSum norm;
    for (int m = 0; m <= N; ++m) {
        const double w = chi.chi(m) * chi.chi(N - m);
        f[static_cast<std::size_t>(m)] = w;
        norm.add(w);
    }
    const double total = norm.value();
    if (total == 0.0) throw AllConfigsForbidden();
    for (double& x : f) x /= total;
    return f;
}

double DegeneracyResult::check_ratio_double() const {
    return check_ratio.convert_to<double>();
}

namespace {

// Sum over n_1 < ... < n_N of prod Omega_{n_i}, by explicit recursion.
BigInt subset_product_sum(const std::vector<BigInt>& omega, std::size_t from, int take) {
    if (take == 0) return 1;
    if (omega.size() - from < static_cast<std::size_t>(take)) return 0;
    BigInt total = 0;
    for (std::size_t i = from; i + static_cast<std::size_t>(take) <= omega.size(); ++i) {
        total += omega[i] * subset_product_sum(omega, i + 1, take - 1);
    }
    return total;
}

} // namespace

DegeneracyResult degeneracy_model(const std::vector<BigRational>& rational_weights, int N) {
    const BigInt denominator_bound = 1000000;
    BigRational sum = 0;
    for (const auto& w : rational_weights) {
        if (w < 0) throw OutOfRange("weights must be non-negative");
        if (boost::multiprecision::denominator(w) > denominator_bound) throw IrrationalInput();
        sum += w;
    }
    if (sum != 1) throw OutOfRange("rational weights must sum to exactly 1");
    if (N < 0 || static_cast<std::size_t>(N) > rational_weights.size())
        throw OutOfRange("N must lie in [0, number of modes]");

    BigInt L = 1;
    for (const auto& w : rational_weights)
        L = boost::multiprecision::lcm(L, BigInt(boost::multiprecision::denominator(w)));

    DegeneracyResult res;
    res.omega.reserve(rational_weights.size());
    for (const auto& w : rational_weights) {
        BigRational scaled = w * BigRational(L);
        res.omega.push_back(BigInt(boost::multiprecision::numerator(scaled)));
    }

    const BigInt lhs = subset_product_sum(res.omega, 0, N);

    // e_N(lambda) by the per-mode recurrence, in exact rationals.
    std::vector<BigRational> e(static_cast<std::size_t>(N) + 1, BigRational(0));
    e[0] = 1;
    for (const auto& w : rational_weights) {
        for (std::size_t k = static_cast<std::size_t>(N); k >= 1; --k) {
            e[k] += w * e[k - 1];
        }
    }
    BigRational rhs = e[static_cast<std::size_t>(N)];
    BigInt scale = 1;
    for (int k = 0; k < N; ++k) scale *= L;
    rhs *= BigRational(scale);

    if (rhs == 0) {
        // Both routes must agree on impossibility; report 1 when they do.
        res.check_ratio = (lhs == 0) ? BigRational(1) : BigRational(0);
    } else {
        res.check_ratio = BigRational(lhs) / rhs;
    }
    return res;
}

} // namespace coboson

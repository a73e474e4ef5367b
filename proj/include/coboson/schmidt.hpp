#ifndef COBOSON_SCHMIDT_HPP
#define COBOSON_SCHMIDT_HPP

#include <string>
#include <vector>

namespace coboson {

/// Internal-structure weights of one composite particle. Weights are kept
/// normalized (sum 1) and sorted non-increasing; truncation_error bounds the
/// tail mass discarded when an infinite family was cut off.
struct SchmidtDistribution {
    std::vector<double> weights;
    std::string family_tag = "custom"; // uniform | geometric | hydrogen | custom
    double truncation_error = 0.0;

    int modes() const { return static_cast<int>(weights.size()); }
};

enum class ChiSource { dp, newton, oracle, analytic };

std::string to_string(ChiSource s);

/// chi_0..chi_Nmax. chi_N is N! times the N-th elementary symmetric polynomial
/// of the Schmidt weights; chi_0 = chi_1 = 1 for a normalized distribution and
/// the sequence is non-increasing.
struct ChiTable {
    std::vector<double> values; // size Nmax+1
    int Nmax = 0;
    ChiSource source = ChiSource::dp;

    double chi(int k) const { return values.at(static_cast<std::size_t>(k)); }
    /// chi_2 = 1 - purity; the bosonic-quality parameter.
    double chi2() const { return chi(2); }
};

/// Power sums p_k = sum_n lambda_n^k for k = 1..Kmax (p_1 = 1 when normalized;
/// p_2 is the purity).
struct PowerSums {
    std::vector<double> p; // p[k-1] holds p_k
    int Kmax() const { return static_cast<int>(p.size()); }
    double at(int k) const { return p.at(static_cast<std::size_t>(k - 1)); }
};

/// Normalizes raw weights into a distribution: clamps tiny negatives (>= -1e-15)
/// to zero, scales to unit sum, sorts descending.
/// Throws EmptyDistribution when nothing positive remains, NegativeWeight when
/// any weight is below -1e-15.
SchmidtDistribution make_distribution(const std::vector<double>& raw_weights);

/// d equal weights 1/d. Purity 1/d, chi_2 = 1 - 1/d.
SchmidtDistribution uniform_distribution(int d);

/// lambda_n proportional to q^n, n = 0, 1, ..., truncated once the discarded
/// mass is at most tail_tol and renormalized. q = 0 collapses to a single mode.
SchmidtDistribution geometric_distribution(double q, double tail_tol = 1e-15);

/// Sum of squared weights, in [1/d, 1].
double purity(const SchmidtDistribution& dist);

PowerSums power_sums(const SchmidtDistribution& dist, int Kmax);

/// chi_N = N! e_N(lambda) via the per-mode recurrence e_k <- e_k + lambda e_{k-1}
/// with compensated accumulation. Entries beyond the mode count are exactly 0.
ChiTable chi_table_dp(const SchmidtDistribution& dist, int Nmax);

/// Same table through Newton's identities k e_k = sum_i (-1)^{i-1} e_{k-i} p_i.
/// Throws InsufficientPowerSums when psums stop short of Nmax.
ChiTable chi_table_newton(const PowerSums& psums, int Nmax);

/// The ideal-boson limit chi_k = 1 for every k (not realizable by any finite
/// distribution, but the natural reference table).
ChiTable ideal_boson_table(int Nmax);

/// A table with the requested chi_2, built from a canonical family: chi2 = 1
/// gives the ideal-boson table, chi2 < 1 the geometric family with
/// q = chi2 / (2 - chi2) (which realizes any chi_2 in [0,1)).
ChiTable chi_table_from_chi2(double chi2, int Nmax);

namespace constants {
inline constexpr double hbar = 1.054571817e-34;          // J s
inline constexpr double bohr_radius = 5.29177210903e-11; // m
inline constexpr double hydrogen_mass = 1.6735328e-27;   // kg
/// Ratio a0/b beyond which the confined-atom purity formula stops being a
/// small-ratio result.
inline constexpr double hydrogen_ratio_limit = 0.1;
} // namespace constants

/// Purity of a hydrogen atom in a harmonic trap of length b = sqrt(hbar/(m w)):
/// P = 33/(4 sqrt(2 pi)) (a0/b)^3. Valid as a small-ratio expansion; callers
/// should warn past constants::hydrogen_ratio_limit.
double hydrogen_purity(double bohr_radius, double trap_length_b);

/// b = sqrt(hbar / (mass * omega)).
double trap_length(double omega, double mass);

} // namespace coboson

#endif

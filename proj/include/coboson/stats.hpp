#ifndef COBOSON_STATS_HPP
#define COBOSON_STATS_HPP

#include <map>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "coboson/schmidt.hpp"

namespace coboson {

using BigInt = boost::multiprecision::cpp_int;
using BigRational = boost::multiprecision::cpp_rational;

/// Multiset of per-mode occupation numbers {n_p}; modes with 0 omitted.
struct OccupationConfig {
    std::map<std::string, int> occupations;

    int total() const {
        int n = 0;
        for (const auto& [mode, occ] : occupations) n += occ;
        return n;
    }
};

struct RelProbability {
    double value = 0.0;
    double log_value = 0.0; // -inf when value is 0
};

/// p_{N+1}/p_1 = (N+1) chi_{N+1}/chi_N: how much easier it is to add a particle
/// to an N-particle state than to the vacuum. Throws DepletedMode when the
/// N-particle state itself has zero weight.
double add_particle_enhancement(const ChiTable& chi, int N);

/// N! chi_N: probability of stacking N particles in one mode relative to
/// spreading them over N distinct modes.
double condensation_ratio(const ChiTable& chi, int N);

/// P_rel({n_p}) = N! prod_p chi_{n_p}; the vacuum gives 1.
RelProbability config_rel_probability(const ChiTable& chi, const OccupationConfig& cfg);

/// f_0 = chi_2 / (1 + 2 chi_2) for two particles at low temperature.
double two_particle_f0(double chi2);

/// W = -2 f_0 ln f_0 in units of k_B T.
double two_particle_work(double chi2);

/// Low-temperature measurement statistics over two ground modes:
/// f_m = chi_m chi_{N-m} / sum_k chi_k chi_{N-k}.
std::vector<double> lowT_measurement_distribution(const ChiTable& chi, int N);

struct DegeneracyResult {
    std::vector<BigInt> omega;
    BigRational check_ratio; // exactly 1 when the counting identity holds
    double check_ratio_double() const;
};

/// Semiclassical hidden-degeneracy model: with Omega_n = lambda_n L (L = lcm of
/// the reduced denominators), verifies sum over N-subsets of prod Omega equals
/// L^N e_N(lambda) exactly. Denominators above 1e6 after reduction are rejected.
DegeneracyResult degeneracy_model(const std::vector<BigRational>& rational_weights, int N);

} // namespace coboson

#endif

#ifndef COBOSON_ORACLE_HPP
#define COBOSON_ORACLE_HPP

#include <cstdint>
#include <unordered_map>
#include <vector>

#include "coboson/schmidt.hpp"

// Brute-force cross-checks. Everything here is deliberately naive: explicit
// two-species fermionic Fock space for the chi factors and raw configuration
// sums for the partition functions. Test-support only, no performance contract.

namespace coboson::oracle {

inline constexpr int max_fock_modes = 20;

/// Sparse state over basis labels (occupation bitmask of species a, of species b).
struct FockState {
    // key = a_mask | (b_mask << max_fock_modes)
    std::unordered_map<std::uint64_t, double> amplitudes;

    static std::uint64_t key(std::uint32_t a_mask, std::uint32_t b_mask) {
        return static_cast<std::uint64_t>(a_mask) |
               (static_cast<std::uint64_t>(b_mask) << max_fock_modes);
    }
    static std::uint32_t a_mask(std::uint64_t k) { return static_cast<std::uint32_t>(k & ((1u << max_fock_modes) - 1)); }
    static std::uint32_t b_mask(std::uint64_t k) { return static_cast<std::uint32_t>(k >> max_fock_modes); }

    static FockState vacuum() {
        FockState s;
        s.amplitudes[key(0, 0)] = 1.0;
        return s;
    }
    double norm_squared() const;
};

/// Applies c^dag = sum_n sqrt(lambda_n) a^dag_n b^dag_n with explicit
/// anticommutation signs (canonical order: all a-modes ascending, then all
/// b-modes ascending). Doubly-occupied modes drop out.
FockState apply_cdagger(const FockState& state, const SchmidtDistribution& weights);

/// ||(c^dag)^N |0>||^2 / N! from the explicit state. N beyond the mode count
/// gives exactly 0.
double brute_chi(const SchmidtDistribution& weights, int N);

struct BrutePartitionResult {
    std::vector<double> Zm; // Z_0..Z_N
    double Ztotal = 0.0;
};

/// Direct sum over ALL joint occupation configurations of a two-sided box with
/// modes_per_side levels n^2/width^2 on each side, without the left/right
/// factorization. Small instances only.
BrutePartitionResult brute_partition(double l, int N, const ChiTable& chi, double beta,
                                     int modes_per_side);

/// Textbook canonical recursions over a fixed mode list; independent of the
/// occupation-sum code paths.
double boson_partition_recursive(const std::vector<double>& energies, int N, double beta);
double fermion_partition_recursive(const std::vector<double>& energies, int N, double beta);

} // namespace coboson::oracle

#endif

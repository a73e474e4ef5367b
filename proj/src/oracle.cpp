#include "coboson/oracle.hpp"

#include <bit>
#include <cmath>
#include <functional>

#include "coboson/errors.hpp"
#include "coboson/numerics.hpp"

namespace coboson::oracle {

double FockState::norm_squared() const {
    CompensatedSum acc;
    for (const auto& [k, amp] : amplitudes) acc.add(amp * amp);
    return acc.value();
}

FockState apply_cdagger(const FockState& state, const SchmidtDistribution& weights) {
    const int d = weights.modes();
    if (d > max_fock_modes) throw DimensionTooLarge();
    FockState out;
    for (const auto& [k, amp] : state.amplitudes) {
        const std::uint32_t a = FockState::a_mask(k);
        const std::uint32_t b = FockState::b_mask(k);
        for (int n = 0; n < d; ++n) {
            const std::uint32_t bit = 1u << n;
            if ((a & bit) || (b & bit)) continue; // Pauli
            const std::uint32_t below = bit - 1;
            // b^dag_n passes every a operator plus the lower occupied b's,
            // a^dag_n passes the lower occupied a's.
            const int crossings = std::popcount(a) + std::popcount(b & below) +
                                  std::popcount(a & below);
            const double sign = (crossings & 1) ? -1.0 : 1.0;
            out.amplitudes[FockState::key(a | bit, b | bit)] +=
                sign * std::sqrt(weights.weights[static_cast<std::size_t>(n)]) * amp;
        }
    }
    return out;
}

double brute_chi(const SchmidtDistribution& weights, int N) {
    if (weights.modes() > max_fock_modes) throw DimensionTooLarge();
    FockState state = FockState::vacuum();
    double factorial = 1.0;
    for (int k = 1; k <= N; ++k) {
        state = apply_cdagger(state, weights);
        factorial *= k;
    }
    return state.norm_squared() / factorial;
}

namespace {

// Recurses over modes assigning occupations; visit(cost, weight) is called for
// every completed configuration of `remaining` particles.
void enumerate_side(const std::vector<double>& energies, const ChiTable& chi, std::size_t mode,
                    int remaining, double energy, double chi_product,
                    const std::function<void(double, double)>& visit) {
    if (mode == energies.size()) {
        if (remaining == 0) visit(energy, chi_product);
        return;
    }
    const int cap = std::min(remaining, chi.Nmax);
    for (int occ = 0; occ <= cap; ++occ) {
        enumerate_side(energies, chi, mode + 1, remaining - occ,
                       energy + occ * energies[mode], chi_product * chi.chi(occ), visit);
    }
}

} // namespace

BrutePartitionResult brute_partition(double l, int N, const ChiTable& chi, double beta,
                                     int modes_per_side) {
    if (N > 3 || modes_per_side > 4) throw InstanceTooLarge();
    if (chi.Nmax < N) throw OccupationExceedsTable();
    if (l <= 0.0 || l >= 1.0) throw WidthUnderflow("wall position must lie inside the box");
    std::vector<double> left(static_cast<std::size_t>(modes_per_side));
    std::vector<double> right(static_cast<std::size_t>(modes_per_side));
    for (int n = 1; n <= modes_per_side; ++n) {
        left[static_cast<std::size_t>(n - 1)] = n * n / (l * l);
        right[static_cast<std::size_t>(n - 1)] = n * n / ((1.0 - l) * (1.0 - l));
    }
    BrutePartitionResult res;
    res.Zm.assign(static_cast<std::size_t>(N) + 1, 0.0);
    std::vector<CompensatedSum> acc(static_cast<std::size_t>(N) + 1);
    for (int m = 0; m <= N; ++m) {
        auto& slot = acc[static_cast<std::size_t>(m)];
        enumerate_side(left, chi, 0, m, 0.0, 1.0, [&](double el, double wl) {
            enumerate_side(right, chi, 0, N - m, 0.0, 1.0, [&](double er, double wr) {
                slot.add(wl * wr * std::exp(-beta * (el + er)));
            });
        });
    }
    CompensatedSum total;
    for (int m = 0; m <= N; ++m) {
        res.Zm[static_cast<std::size_t>(m)] = acc[static_cast<std::size_t>(m)].value();
        total.add(res.Zm[static_cast<std::size_t>(m)]);
    }
    res.Ztotal = total.value();
    return res;
}

namespace {

double single_particle_z(const std::vector<double>& energies, double beta) {
    CompensatedSum acc;
    for (double e : energies) acc.add(std::exp(-beta * e));
    return acc.value();
}

double canonical_recursive(const std::vector<double>& energies, int N, double beta, double sign) {
    // Z_n = (1/n) sum_{k=1..n} sign^{k-1} z(k beta) Z_{n-k}
    std::vector<double> Z(static_cast<std::size_t>(N) + 1, 0.0);
    Z[0] = 1.0;
    std::vector<double> z1(static_cast<std::size_t>(N) + 1, 0.0);
    for (int k = 1; k <= N; ++k) z1[static_cast<std::size_t>(k)] = single_particle_z(energies, k * beta);
    for (int n = 1; n <= N; ++n) {
        CompensatedSum acc;
        double s = 1.0;
        for (int k = 1; k <= n; ++k) {
            acc.add(s * z1[static_cast<std::size_t>(k)] * Z[static_cast<std::size_t>(n - k)]);
            s *= sign;
        }
        Z[static_cast<std::size_t>(n)] = acc.value() / n;
    }
    return Z[static_cast<std::size_t>(N)];
}

} // namespace

double boson_partition_recursive(const std::vector<double>& energies, int N, double beta) {
    return canonical_recursive(energies, N, beta, 1.0);
}

double fermion_partition_recursive(const std::vector<double>& energies, int N, double beta) {
    return canonical_recursive(energies, N, beta, -1.0);
}

} // namespace coboson::oracle

#ifndef COBOSON_ENGINE_HPP
#define COBOSON_ENGINE_HPP

#include <span>
#include <vector>

#include "coboson/schmidt.hpp"

namespace coboson {

// One-dimensional box of unit length split by a wall at l into independent
// wells of widths l and 1-l. Natural units: energy in hbar^2 pi^2/(2 m L^2),
// so a side of width w has single-particle levels n^2/w^2; beta is the
// inverse temperature in those units and work comes out in k_B T.

struct EngineSpec {
    int N = 1;
    double beta = 1.0;
    ChiTable chi;
    double cutoff_tol = 1e-12;     // Boltzmann tail cut for the mode list
    double wall_grid = 1e-3;       // grid resolution of the l scan
    double wall_refine_tol = 1e-8; // final precision of l_eq

    /// Throws on an inconsistent spec (chi.Nmax < N, beta <= 0, bad tolerances).
    void validate() const;
};

struct EngineDiagnostics {
    int modes_left = 0;  // mode count per side at the insertion point l = 1/2
    int modes_right = 0;
    double tail_left = 0.0; // first neglected Boltzmann ratio per side
    double tail_right = 0.0;
    std::vector<int> skipped_branches; // m with chi_m chi_{N-m} = 0
};

struct EngineReport {
    int N = 0;
    double beta = 0.0;
    double chi2 = 0.0;
    std::vector<double> f;      // f_0..f_N at l = 1/2
    std::vector<double> f_star; // NaN on skipped branches
    std::vector<double> l_eq;   // NaN on skipped branches
    double work = 0.0;          // units of k_B T
    EngineDiagnostics diagnostics;
};

/// Levels E_n = n^2/width^2 for n = 1..K, where K is the smallest count with
/// exp(-beta (E_{K+1}-E_1)) < cutoff_tol and K >= particle_budget + 2.
/// Widths below 1e-9 are refused; callers use analytic limits there.
std::vector<double> mode_energies(double width, const EngineSpec& spec, int particle_budget);

/// Single-side factor: sum over occupation multisets {n_p} with total m of
/// prod_p chi_{n_p} exp(-beta sum_p n_p E_p). Computed as the z^m coefficient
/// of prod_p (sum_j chi_j e^{-beta j E_p} z^j). m = 0 gives 1.
double side_sum(int m, std::span<const double> energies, const ChiTable& chi, double beta);

/// log of side_sum, carried in log space throughout so that deep-quantum
/// temperatures (beta ~ 1e3 and beyond) never underflow. Returns -inf when the
/// sum is exactly zero.
double log_side_sum(int m, std::span<const double> energies, const ChiTable& chi, double beta);

/// Z_m(l) = side_sum(m, left) * side_sum(N-m, right): the constraint set over
/// the two sides is a product set, so the partition function factorizes.
double z_m(double l, const EngineSpec& spec, int m);
double log_z_m(double l, const EngineSpec& spec, int m);

/// Z(l) = sum_m Z_m(l).
double z_total(double l, const EngineSpec& spec);
double log_z_total(double l, const EngineSpec& spec);

/// Wall position maximizing Z_m(l). Boundary branches are analytic (m=0 -> 0,
/// m=N -> 1, m=N-m -> 1/2); interior branches are grid-scanned at wall_grid
/// resolution (no unimodality assumed) and refined by golden section to
/// wall_refine_tol, ties broken toward l = 1/2. Throws DegenerateConfiguration
/// when chi_m chi_{N-m} = 0.
double equilibrium_position(const EngineSpec& spec, int m);

/// f_m = Z_m(1/2)/Z(1/2): the measurement statistics with the wall inserted at
/// the centre.
std::vector<double> measurement_probabilities(const EngineSpec& spec);

/// f*_m = Z_m(l_eq^m)/Z(l_eq^m). The boundary branches are exactly 1.
double f_star(const EngineSpec& spec, int m);

/// Full cycle: W = -sum_m f_m ln(f_m/f*_m) in units of k_B T, with skipped
/// (zero-weight) branches reported in the diagnostics.
EngineReport total_work(const EngineSpec& spec);

} // namespace coboson

#endif

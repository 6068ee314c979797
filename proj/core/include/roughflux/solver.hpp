#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "roughflux/flux.hpp"
#include "roughflux/path.hpp"

namespace roughflux::solver {

using paths::SampledPath;

// Finite-volume solution of du + dx A(u) o dw = 0 on the unit torus, sampled
// at the requested output times (all on the driving path's grid).
struct GridSolution {
    int nx = 0;
    double cfl = 0.0;
    bool godunov = false;      // numerical flux used (Engquist-Osher otherwise)
    std::vector<double> times; // output times, nondecreasing
    std::vector<double> u;     // times.size() x nx cell averages, row-major
    std::vector<double> u0;    // initial cell averages
    std::string path_ref;      // description of the driving path
    std::size_t substeps = 0;  // monotone substeps taken in total

    double dx() const { return 1.0 / nx; }
    std::span<const double> at(std::size_t ti) const {
        return {u.data() + ti * static_cast<std::size_t>(nx),
                static_cast<std::size_t>(nx)};
    }
};

// Kruzhkov entropy-defect measure on (t-interval, x-cell, v-level) cells.
// density holds mass per unit v (the x- and t-extent of each cell is already
// integrated in), so cell mass = density * dv.
struct KineticMeasure {
    std::vector<double> v_levels; // uniform, cell-centered
    double dv = 0.0;
    std::vector<double> t_edges;  // interval boundaries, size n_intervals + 1
    int nx = 0;
    std::vector<double> density;  // n_intervals x nx x nv, row-major, >= 0
    double total_variation = 0.0; // sum density * dv
    double weighted_tv = 0.0;     // sum |a'(v)| * density * dv
    std::size_t clamped_cells = 0;   // tiny negatives zeroed
    std::size_t violation_cells = 0; // negatives below -1e-8 * max density
    double min_density = 0.0;        // most negative raw value seen

    std::size_t n_intervals() const { return t_edges.empty() ? 0 : t_edges.size() - 1; }
    std::size_t n_levels() const { return v_levels.size(); }
    double& at(std::size_t ti, std::size_t j, std::size_t l) {
        return density[(ti * static_cast<std::size_t>(nx) + j) * n_levels() + l];
    }
    double at(std::size_t ti, std::size_t j, std::size_t l) const {
        return density[(ti * static_cast<std::size_t>(nx) + j) * n_levels() + l];
    }
};

// Evolve the rough-flux law: per path increment, the autonomous law with flux
// sign(dw)*A runs for pseudo-time |dw|, sub-cycled so every monotone substep
// satisfies max|a| * dtau / dx <= cfl.
GridSolution solve_rough(const Flux& f, const SampledPath& p,
                         std::span<const double> u0, int nx, double cfl,
                         std::span<const double> output_times,
                         bool use_godunov = false);

// Replays the solve and accumulates the discrete Kruzhkov entropy production
// per (t-interval, x, v) cell; v_levels must be uniform and span the data
// range. Tiny negative cells (>= -1e-8 * max density) are clamped to zero,
// anything below is counted as a violation.
KineticMeasure entropy_defect(const GridSolution& sol, const Flux& f,
                              const SampledPath& p,
                              std::span<const double> v_levels);

// n uniformly spaced cell-centered Kruzhkov levels over the field's range
// widened by margin * range on both sides.
std::vector<double> default_v_levels(std::span<const double> field, int n = 64,
                                     double margin = 0.05);

// Total variation of a periodic cell-average field.
double total_variation(std::span<const double> field);

// Serialization: CSV rows (t, x, u); binary layout int64 nx, int64 n_times,
// then the row-major u matrix as 64-bit floats; measure CSV rows
// (t_lo, t_hi, v, mass) with mass summed over x.
void write_solution_csv(const GridSolution& sol, const std::string& file);
void write_solution_binary(const GridSolution& sol, const std::string& file);
struct BinarySolution {
    std::int64_t nx = 0;
    std::int64_t n_times = 0;
    std::vector<double> u;
};
BinarySolution read_solution_binary(const std::string& file);
void write_measure_csv(const KineticMeasure& m, const std::string& file);

} // namespace roughflux::solver

#ifndef DSW_KDV_HPP
#define DSW_KDV_HPP

#include <memory>
#include <string>
#include <vector>

#include "dsw/initial_data.hpp"
#include "dsw/types.hpp"

namespace dsw {

/// Uniform periodic grid on [-L, L); n a power of two.
struct Grid1D {
    Real L = 15.0;
    int n = 4096;

    Real dx() const { return 2.0 * L / n; }
    Real x(int i) const { return -L + i * dx(); }
    Real wavenumber(int j) const { return pi * j / L; }
};

/// Smallest power-of-two grid with dx <= epsilon/10 (oscillation resolution).
int default_grid_size(Real epsilon, Real L = 15.0);

/// dt = 5e-6 at epsilon = 1e-2, scaled proportionally to epsilon.
Real default_time_step(Real epsilon);

/// Sampled field u(x) with its time and dispersion parameter.
struct GridFunction {
    Grid1D grid;
    Real time = 0.0;
    Real epsilon = 0.0;
    Array values;
};

GridFunction sample_initial_data(const InitialDataModel& model, const Grid1D& grid,
                                 Real epsilon);

struct KdvOptions {
    Real dt = 0.0;             // 0 selects default_time_step(epsilon)
    bool dealias = false;      // 2/3 rule on the quadratic term
    Real blowup_guard = 10.0;  // abort when max |u| exceeds this
};

/// u_t + 6 u u_x + eps^2 u_xxx = 0 on a periodic grid. Fourier pseudospectral
/// in space; fourth-order exponential time differencing (ETDRK4) with the
/// dispersion handled exactly in transform space and the phi-coefficients
/// evaluated by contour averages for small-divisor stability.
class KdvSolver {
public:
    KdvSolver(const InitialDataModel& model, Real epsilon, Grid1D grid,
              KdvOptions opts = {});
    ~KdvSolver();

    KdvSolver(const KdvSolver&) = delete;
    KdvSolver& operator=(const KdvSolver&) = delete;

    /// Integrate from t = 0, returning snapshots at the requested ascending times.
    std::vector<GridFunction> solve(const std::vector<Real>& output_times);

    const Grid1D& grid() const { return grid_; }
    Real epsilon() const { return epsilon_; }

private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
    Grid1D grid_;
    Real epsilon_;
};

/// One-call convenience wrapper.
std::vector<GridFunction> kdv_solve(const InitialDataModel& model, Real epsilon,
                                    const std::vector<Real>& output_times, Grid1D grid,
                                    KdvOptions opts = {});

struct Conserved {
    Real mass;
    Real momentum;
};

/// Trapezoid sums of u and u^2 on the periodic grid.
Conserved conserved(const GridFunction& gf);

/// Magnitudes of the half-spectrum of the sampled field.
Array spectrum_magnitudes(const GridFunction& gf);

/// Resolution gate: top 10% of modes below rel_threshold of the peak mode.
bool spectral_tail_ok(const GridFunction& gf, Real rel_threshold = 1e-8);

/// Checkpoint format: '#'-header with (L, N, t, epsilon), then one value per
/// line at 17 significant digits.
void write_snapshot(const std::string& path, const GridFunction& gf);
GridFunction read_snapshot(const std::string& path);

}  // namespace dsw

#endif

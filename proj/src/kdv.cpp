#include "dsw/kdv.hpp"

#include <fftw3.h>

#include <cmath>
#include <complex>
#include <fstream>
#include <mutex>
#include <sstream>
#include <stdexcept>

namespace dsw {

namespace {

using Complex = std::complex<Real>;
using CArray = Eigen::ArrayX<Complex>;

std::mutex& fftw_planner_mutex() {
    static std::mutex m;
    return m;
}

}  // namespace

int default_grid_size(Real epsilon, Real L) {
    const Real dx_target = epsilon / 10.0;
    int n = 64;
    while (2.0 * L / n > dx_target) n *= 2;
    return n;
}

Real default_time_step(Real epsilon) { return 5e-4 * epsilon; }

GridFunction sample_initial_data(const InitialDataModel& model, const Grid1D& grid,
                                 Real epsilon) {
    GridFunction gf;
    gf.grid = grid;
    gf.epsilon = epsilon;
    gf.time = 0.0;
    gf.values.resize(grid.n);
    for (int i = 0; i < grid.n; ++i) gf.values[i] = model.u0(grid.x(i));
    return gf;
}

struct KdvSolver::Impl {
    Grid1D grid;
    Real epsilon;
    KdvOptions opts;
    int n;
    int nh;  // n/2 + 1 half-spectrum bins

    Real* rbuf = nullptr;
    fftw_complex* cbuf = nullptr;
    fftw_plan fwd = nullptr;
    fftw_plan bwd = nullptr;

    CArray vhat;                      // current state, half spectrum
    CArray E, E2, Q, f1, f2, f3;      // ETDRK4 coefficients for the active dt
    Real coeff_dt = -1.0;
    Array k, k3;                      // wavenumbers
    int dealias_cut;

    Impl(const Grid1D& g, Real eps, const KdvOptions& o)
        : grid(g), epsilon(eps), opts(o), n(g.n), nh(g.n / 2 + 1) {
        if ((n & (n - 1)) != 0 || n < 16)
            throw std::invalid_argument("KdvSolver: grid size must be a power of two >= 16");
        std::lock_guard<std::mutex> lock(fftw_planner_mutex());
        rbuf = fftw_alloc_real(n);
        cbuf = fftw_alloc_complex(nh);
        fwd = fftw_plan_dft_r2c_1d(n, rbuf, cbuf, FFTW_MEASURE);
        bwd = fftw_plan_dft_c2r_1d(n, cbuf, rbuf, FFTW_MEASURE);
        k.resize(nh);
        k3.resize(nh);
        for (int j = 0; j < nh; ++j) {
            k[j] = grid.wavenumber(j);
            k3[j] = k[j] * k[j] * k[j];
        }
        dealias_cut = static_cast<int>(2.0 / 3.0 * nh);
    }

    ~Impl() {
        std::lock_guard<std::mutex> lock(fftw_planner_mutex());
        fftw_destroy_plan(fwd);
        fftw_destroy_plan(bwd);
        fftw_free(rbuf);
        fftw_free(cbuf);
    }

    void forward(const Array& u, CArray& out) {
        for (int i = 0; i < n; ++i) rbuf[i] = u[i];
        fftw_execute(fwd);
        for (int j = 0; j < nh; ++j) out[j] = Complex(cbuf[j][0], cbuf[j][1]);
    }

    void backward(const CArray& in, Array& out) {
        const Real inv = 1.0 / n;
        for (int j = 0; j < nh; ++j) {
            cbuf[j][0] = in[j].real();
            cbuf[j][1] = in[j].imag();
        }
        fftw_execute(bwd);
        for (int i = 0; i < n; ++i) out[i] = rbuf[i] * inv;
    }

    // N(v) = -3 i k FFT(IFFT(v)^2)
    void nonlinear(const CArray& v, CArray& out, Array& work) {
        backward(v, work);
        work *= work;
        forward(work, out);
        for (int j = 0; j < nh; ++j) out[j] *= Complex(0.0, -3.0 * k[j]);
        out[nh - 1] = 0.0;  // unmatched Nyquist derivative
        if (opts.dealias)
            for (int j = dealias_cut; j < nh; ++j) out[j] = 0.0;
    }

    void prepare_coefficients(Real dt) {
        if (coeff_dt > 0.0 && std::abs(dt - coeff_dt) < 1e-15 * dt) return;
        coeff_dt = dt;
        E.resize(nh);
        E2.resize(nh);
        Q.resize(nh);
        f1.resize(nh);
        f2.resize(nh);
        f3.resize(nh);
        const int M = 32;  // contour points (full circle: L is imaginary)
        for (int j = 0; j < nh; ++j) {
            const Complex Lj(0.0, epsilon * epsilon * k3[j]);
            const Complex z = dt * Lj;
            E[j] = std::exp(z);
            E2[j] = std::exp(0.5 * z);
            Complex q(0, 0), a(0, 0), b(0, 0), c(0, 0);
            for (int m = 0; m < M; ++m) {
                const Real th = 2.0 * pi * (m + 0.5) / M;
                const Complex t = z + Complex(std::cos(th), std::sin(th));
                const Complex et = std::exp(t);
                const Complex t2 = t * t;
                const Complex t3 = t2 * t;
                q += (std::exp(0.5 * t) - 1.0) / t;
                a += (-4.0 - t + et * (4.0 - 3.0 * t + t2)) / t3;
                b += (2.0 + t + et * (-2.0 + t)) / t3;
                c += (-4.0 - 3.0 * t - t2 + et * (4.0 - t)) / t3;
            }
            const Real s = dt / M;
            Q[j] = s * q;
            f1[j] = s * a;
            f2[j] = s * b;
            f3[j] = s * c;
        }
    }

    void step(CArray& v, CArray& Nu, CArray& Na, CArray& Nb, CArray& Nc, CArray& a,
              CArray& b, CArray& c, Array& work) {
        nonlinear(v, Nu, work);
        a = E2 * v + Q * Nu;
        nonlinear(a, Na, work);
        b = E2 * v + Q * Na;
        nonlinear(b, Nb, work);
        c = E2 * a + Q * (2.0 * Nb - Nu);
        nonlinear(c, Nc, work);
        v = E * v + f1 * Nu + 2.0 * f2 * (Na + Nb) + f3 * Nc;
    }
};

KdvSolver::KdvSolver(const InitialDataModel& model, Real epsilon, Grid1D grid,
                     KdvOptions opts)
    : impl_(std::make_unique<Impl>(grid, epsilon, opts)), grid_(grid), epsilon_(epsilon) {
    if (!(epsilon >= 5e-3 && epsilon <= 0.5))
        throw std::domain_error("KdvSolver: epsilon outside [5e-3, 0.5]");
    if (!(grid.L >= 15.0))
        throw std::domain_error("KdvSolver: need L >= 15 so the profile has decayed");
    Array u0(grid.n);
    for (int i = 0; i < grid.n; ++i) u0[i] = model.u0(grid.x(i));
    impl_->vhat.resize(impl_->nh);
    impl_->forward(u0, impl_->vhat);
}

KdvSolver::~KdvSolver() = default;

std::vector<GridFunction> KdvSolver::solve(const std::vector<Real>& output_times) {
    auto& im = *impl_;
    const Real dt0 = (im.opts.dt > 0.0) ? im.opts.dt : default_time_step(epsilon_);

    std::vector<GridFunction> out;
    CArray Nu(im.nh), Na(im.nh), Nb(im.nh), Nc(im.nh), a(im.nh), b(im.nh), c(im.nh);
    Array work(im.n);

    Real t = 0.0;
    for (Real t_out : output_times) {
        if (t_out < t - 1e-12)
            throw std::invalid_argument("KdvSolver::solve: output times must ascend");
        if (t_out > t + 1e-14) {
            const long steps = std::max(1L, std::lround(std::ceil((t_out - t) / dt0 - 1e-9)));
            const Real dt = (t_out - t) / steps;
            im.prepare_coefficients(dt);
            for (long s = 0; s < steps; ++s) {
                im.step(im.vhat, Nu, Na, Nb, Nc, a, b, c, work);
                if (s % 64 == 0 || s == steps - 1) {
                    im.backward(im.vhat, work);
                    const Real amax = work.abs().maxCoeff();
                    if (!(amax < im.opts.blowup_guard)) {
                        std::ostringstream os;
                        os << "KdvSolver: solution blew up (max |u| = " << amax
                           << ") near t = " << t + (s + 1) * dt;
                        throw std::runtime_error(os.str());
                    }
                }
            }
            t = t_out;
        }
        GridFunction gf;
        gf.grid = grid_;
        gf.time = t_out;
        gf.epsilon = epsilon_;
        gf.values.resize(im.n);
        im.backward(im.vhat, gf.values);
        out.push_back(std::move(gf));
    }
    return out;
}

std::vector<GridFunction> kdv_solve(const InitialDataModel& model, Real epsilon,
                                    const std::vector<Real>& output_times, Grid1D grid,
                                    KdvOptions opts) {
    KdvSolver solver(model, epsilon, grid, opts);
    return solver.solve(output_times);
}

Conserved conserved(const GridFunction& gf) {
    const Real dx = gf.grid.dx();
    return {gf.values.sum() * dx, gf.values.square().sum() * dx};
}

Array spectrum_magnitudes(const GridFunction& gf) {
    const int n = gf.grid.n;
    const int nh = n / 2 + 1;
    Real* rbuf;
    fftw_complex* cbuf;
    fftw_plan plan;
    {
        std::lock_guard<std::mutex> lock(fftw_planner_mutex());
        rbuf = fftw_alloc_real(n);
        cbuf = fftw_alloc_complex(nh);
        plan = fftw_plan_dft_r2c_1d(n, rbuf, cbuf, FFTW_ESTIMATE);
    }
    for (int i = 0; i < n; ++i) rbuf[i] = gf.values[i];
    fftw_execute(plan);
    Array mag(nh);
    for (int j = 0; j < nh; ++j) mag[j] = std::hypot(cbuf[j][0], cbuf[j][1]);
    {
        std::lock_guard<std::mutex> lock(fftw_planner_mutex());
        fftw_destroy_plan(plan);
        fftw_free(rbuf);
        fftw_free(cbuf);
    }
    return mag;
}

bool spectral_tail_ok(const GridFunction& gf, Real rel_threshold) {
    const Array mag = spectrum_magnitudes(gf);
    const int nh = static_cast<int>(mag.size());
    const int tail_start = static_cast<int>(0.9 * nh);
    const Real peak = mag.maxCoeff();
    return mag.tail(nh - tail_start).maxCoeff() < rel_threshold * peak;
}

void write_snapshot(const std::string& path, const GridFunction& gf) {
    std::ofstream os(path);
    if (!os) throw std::runtime_error("write_snapshot: cannot open " + path);
    os.precision(17);
    os << "# dswlab kdv snapshot\n";
    os << "# L= " << gf.grid.L << " N= " << gf.grid.n << " t= " << gf.time
       << " epsilon= " << gf.epsilon << "\n";
    for (int i = 0; i < gf.grid.n; ++i) os << gf.values[i] << "\n";
}

GridFunction read_snapshot(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw std::runtime_error("read_snapshot: cannot open " + path);
    std::string line;
    std::getline(is, line);
    if (line.rfind("# dswlab kdv snapshot", 0) != 0)
        throw std::runtime_error("read_snapshot: bad magic in " + path);
    std::getline(is, line);
    GridFunction gf;
    {
        std::istringstream hs(line);
        std::string tok;
        hs >> tok;  // '#'
        hs >> tok >> gf.grid.L;
        hs >> tok >> gf.grid.n;
        hs >> tok >> gf.time;
        hs >> tok >> gf.epsilon;
        if (!hs) throw std::runtime_error("read_snapshot: bad header in " + path);
    }
    gf.values.resize(gf.grid.n);
    for (int i = 0; i < gf.grid.n; ++i) {
        if (!(is >> gf.values[i]))
            throw std::runtime_error("read_snapshot: truncated values in " + path);
    }
    return gf;
}

}  // namespace dsw

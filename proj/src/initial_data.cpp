#include "dsw/initial_data.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace dsw {

namespace {

constexpr Real kBranchSearchLimit = 60.0;

// Safeguarded Newton: bisection bracket [lo, hi] with f(lo), f(hi) of opposite
// sign, Newton steps accepted only inside the bracket.
template <class F, class DF>
Real newton_bisect(F&& f, DF&& df, Real lo, Real hi, Real flo, Real tol, int max_iter = 200) {
    Real x = 0.5 * (lo + hi);
    for (int it = 0; it < max_iter; ++it) {
        const Real fx = f(x);
        if ((fx > 0.0) == (flo > 0.0))
            lo = x;
        else
            hi = x;
        const Real d = df(x);
        Real xn = (d != 0.0) ? x - fx / d : 0.5 * (lo + hi);
        if (!(xn > lo && xn < hi)) xn = 0.5 * (lo + hi);
        if (std::abs(xn - x) < tol * (1.0 + std::abs(xn))) return xn;
        x = xn;
    }
    return x;
}

}  // namespace

void InitialDataModel::check_branch_domain(Real u) const {
    if (!(u >= -1.0) || !(u < 0.0))
        throw std::domain_error("inverse branch requested outside [-1, 0)");
}

Real InitialDataModel::f_minus(Real u) const {
    check_branch_domain(u);
    if (u == -1.0) return 0.0;
    // u0 is decreasing on (-inf, 0]; bracket from the left.
    Real hi = 0.0;
    Real lo = -1.0;
    while (u0(lo) < u) {
        lo *= 2.0;
        if (lo < -kBranchSearchLimit)
            throw std::domain_error("f_minus: no bracket; value above profile range");
    }
    const Real flo = u0(lo) - u;
    return newton_bisect([&](Real x) { return u0(x) - u; },
                         [&](Real x) { return u0_prime(x); }, lo, hi, flo, 1e-14);
}

Real InitialDataModel::f_plus(Real u) const {
    check_branch_domain(u);
    if (u == -1.0) return 0.0;
    Real lo = 0.0;
    Real hi = 1.0;
    while (u0(hi) < u) {
        hi *= 2.0;
        if (hi > kBranchSearchLimit)
            throw std::domain_error("f_plus: no bracket; value above profile range");
    }
    const Real flo = u0(lo) - u;
    return newton_bisect([&](Real x) { return u0(x) - u; },
                         [&](Real x) { return u0_prime(x); }, lo, hi, flo, 1e-14);
}

Real InitialDataModel::f_minus_prime(Real u) const {
    const Real x = f_minus(u);
    return 1.0 / u0_prime(x);
}

Real InitialDataModel::f_minus_second(Real u) const {
    const Real h = 1e-4 * std::min(1.0 + u, -u) + 1e-7;
    return (f_minus_prime(u + h) - f_minus_prime(u - h)) / (2.0 * h);
}

Real InitialDataModel::f_minus_third(Real u) const {
    const Real h = 1e-3 * std::min(1.0 + u, -u) + 1e-6;
    // 5-point second derivative of f_minus_prime
    const Real fm2 = f_minus_prime(u - 2 * h), fm1 = f_minus_prime(u - h);
    const Real f0 = f_minus_prime(u), fp1 = f_minus_prime(u + h), fp2 = f_minus_prime(u + 2 * h);
    return (-fm2 + 16.0 * fm1 - 30.0 * f0 + 16.0 * fp1 - fp2) / (12.0 * h * h);
}

Real Sech2Model::u0(Real x) const {
    const Real s = 1.0 / std::cosh(x);
    return -s * s;
}

Real Sech2Model::u0_prime(Real x) const {
    const Real s = 1.0 / std::cosh(x);
    return 2.0 * s * s * std::tanh(x);
}

Real Sech2Model::f_minus(Real u) const {
    check_branch_domain(u);
    // arccosh(1/sqrt(-u)) written to stay smooth at u -> -1
    return -std::log((1.0 + std::sqrt(1.0 + u)) / std::sqrt(-u));
}

Real Sech2Model::f_plus(Real u) const { return -f_minus(u); }

Real Sech2Model::f_minus_prime(Real u) const {
    check_branch_domain(u);
    return 1.0 / (2.0 * u * std::sqrt(1.0 + u));
}

Real Sech2Model::f_minus_second(Real u) const {
    check_branch_domain(u);
    const Real r = std::sqrt(1.0 + u);
    return -0.5 / (u * u * r) - 0.25 / (u * r * r * r);
}

Real Sech2Model::f_minus_third(Real u) const {
    check_branch_domain(u);
    const Real r = std::sqrt(1.0 + u);
    const Real u2 = u * u;
    return 1.0 / (u2 * u * r) + 0.5 / (u2 * r * r * r) + 0.375 / (u * r * r * r * r * r);
}

SampledDataModel::SampledDataModel(std::vector<Real> x, std::vector<Real> u, std::string label)
    : x_(std::move(x)), u_(std::move(u)), label_(std::move(label)) {
    if (x_.size() != u_.size() || x_.size() < 4)
        throw std::invalid_argument("SampledDataModel: need >= 4 (x, u) samples");
    for (size_t i = 1; i < x_.size(); ++i)
        if (!(x_[i] > x_[i - 1]))
            throw std::invalid_argument("SampledDataModel: x samples must be increasing");

    // Fritsch-Carlson monotone cubic slopes
    const size_t n = x_.size();
    std::vector<Real> h(n - 1), d(n - 1);
    for (size_t i = 0; i + 1 < n; ++i) {
        h[i] = x_[i + 1] - x_[i];
        d[i] = (u_[i + 1] - u_[i]) / h[i];
    }
    slope_.assign(n, 0.0);
    slope_[0] = d[0];
    slope_[n - 1] = d[n - 2];
    for (size_t i = 1; i + 1 < n; ++i) {
        if (d[i - 1] * d[i] <= 0.0) {
            slope_[i] = 0.0;
        } else {
            const Real w1 = 2.0 * h[i] + h[i - 1];
            const Real w2 = h[i] + 2.0 * h[i - 1];
            slope_[i] = (w1 + w2) / (w1 / d[i - 1] + w2 / d[i]);
        }
    }
}

int SampledDataModel::segment(Real x) const {
    auto it = std::upper_bound(x_.begin(), x_.end(), x);
    int i = static_cast<int>(it - x_.begin()) - 1;
    return std::clamp(i, 0, static_cast<int>(x_.size()) - 2);
}

Real SampledDataModel::u0(Real x) const {
    if (x <= x_.front() || x >= x_.back()) return 0.0;  // decayed tail
    const int i = segment(x);
    const Real h = x_[i + 1] - x_[i];
    const Real t = (x - x_[i]) / h;
    const Real t2 = t * t, t3 = t2 * t;
    return (2 * t3 - 3 * t2 + 1) * u_[i] + (t3 - 2 * t2 + t) * h * slope_[i] +
           (-2 * t3 + 3 * t2) * u_[i + 1] + (t3 - t2) * h * slope_[i + 1];
}

Real SampledDataModel::u0_prime(Real x) const {
    if (x <= x_.front() || x >= x_.back()) return 0.0;
    const int i = segment(x);
    const Real h = x_[i + 1] - x_[i];
    const Real t = (x - x_[i]) / h;
    const Real t2 = t * t;
    return ((6 * t2 - 6 * t) * u_[i] + (3 * t2 - 4 * t + 1) * h * slope_[i] +
            (-6 * t2 + 6 * t) * u_[i + 1] + (3 * t2 - 2 * t) * h * slope_[i + 1]) /
           h;
}

bool ValidationReport::pass() const {
    return std::all_of(checks.begin(), checks.end(), [](const auto& c) { return c.pass; });
}

std::string ValidationReport::summary() const {
    std::ostringstream os;
    for (const auto& c : checks)
        os << (c.pass ? "pass " : "FAIL ") << c.name << ": " << c.detail << "\n";
    return os.str();
}

ValidationReport validate(const InitialDataModel& model) {
    ValidationReport report;

    // 1) negative with a single minimum, normalized to u0(0) = -1
    {
        Real umin = 0.0, xmin = 0.0;
        int sign_changes = 0;
        Real prev_slope = model.u0_prime(-20.0 + 1e-3);
        const int n = 8000;
        for (int i = 0; i <= n; ++i) {
            const Real x = -20.0 + 40.0 * i / n;
            const Real u = model.u0(x);
            if (u < umin) {
                umin = u;
                xmin = x;
            }
            const Real s = model.u0_prime(x);
            if (s * prev_slope < 0.0) ++sign_changes;
            if (s != 0.0) prev_slope = s;
        }
        const bool negative = umin < 0.0;
        const bool single = sign_changes <= 1;
        const bool normalized = std::abs(umin + 1.0) < 1e-6 && std::abs(xmin) < 1e-2;
        std::ostringstream os;
        os << "min u0 = " << umin << " at x = " << xmin;
        if (!normalized && negative)
            os << "; rescale u by " << -1.0 / umin << " (and t by " << -umin
               << ") and shift x by " << -xmin << " to normalize";
        report.checks.push_back({"negative-single-minimum-normalized",
                                 negative && single && normalized, os.str()});
    }

    // 2) f-'''(u) < 0 on the decreasing branch
    {
        bool ok = true;
        Real worst = 0.0, at = 0.0;
        for (int i = 1; i < 200; ++i) {
            const Real u = -1.0 + 0.995 * i / 200.0;
            Real v;
            try {
                v = model.f_minus_third(u);
            } catch (const std::exception&) {
                ok = false;
                at = u;
                break;
            }
            if (v >= 0.0) {
                ok = false;
                worst = v;
                at = u;
                break;
            }
        }
        std::ostringstream os;
        if (ok)
            os << "f-''' negative on sampled (-1, 0)";
        else
            os << "f-''' = " << worst << " at u = " << at;
        report.checks.push_back({"inverse-branch-convexity", ok, os.str()});
    }

    // 3) decay: |u0(x)| (1 + x^2) must fall off in the sampled tails
    {
        bool ok = true;
        std::ostringstream os;
        Real prev = std::numeric_limits<Real>::max();
        for (Real x : {10.0, 15.0, 20.0, 30.0}) {
            const Real w = (std::abs(model.u0(x)) + std::abs(model.u0(-x))) * (1.0 + x * x) * x;
            if (w > prev) ok = false;
            prev = w;
        }
        os << "tail weight at x=30: " << prev;
        ok = ok && prev < 1e-3;
        report.checks.push_back({"integrable-decay", ok, os.str()});
    }

    return report;
}

BreakupPoint breakup(const InitialDataModel& model) {
    // maximize g(xi) = -6 u0'(xi) on the decreasing branch
    const auto g = [&](Real xi) { return -6.0 * model.u0_prime(xi); };
    Real a = -30.0, b = 0.0;
    // golden section
    const Real gr = 0.5 * (std::sqrt(5.0) - 1.0);
    Real c = b - gr * (b - a), d = a + gr * (b - a);
    Real gc = g(c), gd = g(d);
    for (int it = 0; it < 200 && (b - a) > 1e-13; ++it) {
        if (gc > gd) {
            b = d;
            d = c;
            gd = gc;
            c = b - gr * (b - a);
            gc = g(c);
        } else {
            a = c;
            c = d;
            gc = gd;
            d = a + gr * (b - a);
            gd = g(d);
        }
    }
    const Real xi_c = 0.5 * (a + b);
    const Real gmax = g(xi_c);
    if (!(gmax > 0.0)) throw std::runtime_error("breakup: no slope maximum found");
    BreakupPoint bp;
    bp.xi_c = xi_c;
    bp.t_c = 1.0 / gmax;
    bp.u_c = model.u0(xi_c);
    bp.x_c = 6.0 * bp.t_c * bp.u_c + xi_c;
    return bp;
}

Real HopfSolution::value() const {
    if (values.size() != 1)
        throw std::runtime_error("HopfSolution: multivalued; inspect branches");
    return values.front();
}

HopfSolution hopf_solve(const InitialDataModel& model, Real x, Real t) {
    if (!(t >= 0.0)) throw std::domain_error("hopf_solve: t must be >= 0");
    HopfSolution sol;
    if (t == 0.0) {
        sol.feet.push_back(x);
        sol.values.push_back(model.u0(x));
        return sol;
    }
    // x = 6 t u0(xi) + xi and u0 in [-1, 0] confine xi to [x, x + 6t].
    const Real lo = x - 1e-9;
    const Real hi = x + 6.0 * t + 1e-9;
    const auto res = [&](Real xi) { return 6.0 * t * model.u0(xi) + xi - x; };
    const auto dres = [&](Real xi) { return 6.0 * t * model.u0_prime(xi) + 1.0; };
    const int n = 4000;
    Real xi_prev = lo, r_prev = res(lo);
    for (int i = 1; i <= n; ++i) {
        const Real xi = lo + (hi - lo) * i / n;
        const Real r = res(xi);
        if (r_prev == 0.0 || r_prev * r < 0.0) {
            const Real root = (r_prev == 0.0)
                                  ? xi_prev
                                  : newton_bisect(res, dres, xi_prev, xi, r_prev, 1e-14);
            if (sol.feet.empty() || root - sol.feet.back() > 1e-10) {
                sol.feet.push_back(root);
                sol.values.push_back(model.u0(root));
            }
        }
        xi_prev = xi;
        r_prev = r;
    }
    if (sol.feet.empty())
        throw std::runtime_error("hopf_solve: no characteristic root in bracket");
    return sol;
}

}  // namespace dsw

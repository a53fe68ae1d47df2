#ifndef DSW_INITIAL_DATA_HPP
#define DSW_INITIAL_DATA_HPP

#include <optional>
#include <string>
#include <vector>

#include "dsw/types.hpp"

namespace dsw {

/// Admissible initial profile u0(x): negative, single minimum u0(0) = -1,
/// decaying. Exposes the inverse branches f-/f+ of the monotone parts and the
/// f- derivatives consumed by the modulation formulas. Immutable after
/// construction; all queries are pure.
class InitialDataModel {
public:
    virtual ~InitialDataModel() = default;

    virtual Real u0(Real x) const = 0;
    virtual Real u0_prime(Real x) const = 0;

    /// Inverse of the decreasing branch (x <= 0), defined on [-1, 0).
    virtual Real f_minus(Real u) const;
    /// Inverse of the increasing branch (x >= 0).
    virtual Real f_plus(Real u) const;

    virtual Real f_minus_prime(Real u) const;
    virtual Real f_minus_second(Real u) const;
    virtual Real f_minus_third(Real u) const;

    virtual std::string name() const = 0;

    /// Time at which the leading-edge v(t) reaches -1; computed by the edge
    /// dynamics and cached here.
    std::optional<Real> hump_time() const { return hump_time_; }
    void set_hump_time(Real T) const { hump_time_ = T; }

protected:
    void check_branch_domain(Real u) const;

private:
    mutable std::optional<Real> hump_time_;
};

/// u0(x) = -sech^2 x with closed-form inverse branches and derivatives.
class Sech2Model final : public InitialDataModel {
public:
    Real u0(Real x) const override;
    Real u0_prime(Real x) const override;
    Real f_minus(Real u) const override;
    Real f_plus(Real u) const override;
    Real f_minus_prime(Real u) const override;
    Real f_minus_second(Real u) const override;
    Real f_minus_third(Real u) const override;
    std::string name() const override { return "sech2"; }
};

/// Profile built from sampled (x, u0) pairs, monotone cubic (PCHIP)
/// interpolation; inverses by guarded Newton, higher f- derivatives by
/// centered differences.
class SampledDataModel final : public InitialDataModel {
public:
    SampledDataModel(std::vector<Real> x, std::vector<Real> u, std::string label = "file");

    Real u0(Real x) const override;
    Real u0_prime(Real x) const override;
    std::string name() const override { return label_; }

    Real x_left() const { return x_.front(); }
    Real x_right() const { return x_.back(); }

private:
    std::vector<Real> x_, u_, slope_;
    std::string label_;
    int segment(Real x) const;
};

/// Generic scaled profile for validator tests: a * u0(x - shift).
class ScaledModel final : public InitialDataModel {
public:
    ScaledModel(const InitialDataModel& base, Real amplitude, Real shift = 0.0)
        : base_(base), a_(amplitude), shift_(shift) {}
    Real u0(Real x) const override { return a_ * base_.u0(x - shift_); }
    Real u0_prime(Real x) const override { return a_ * base_.u0_prime(x - shift_); }
    std::string name() const override { return "scaled:" + base_.name(); }

private:
    const InitialDataModel& base_;
    Real a_, shift_;
};

struct ValidationCheck {
    std::string name;
    bool pass;
    std::string detail;
};

struct ValidationReport {
    std::vector<ValidationCheck> checks;
    bool pass() const;
    std::string summary() const;
};

/// Numerical check of the three admissibility assumptions (normalized single
/// minimum, f-''' < 0, decay of u0 (1 + x^2)).
ValidationReport validate(const InitialDataModel& model);

/// First point of gradient catastrophe of the characteristic solution.
struct BreakupPoint {
    Real t_c;
    Real x_c;
    Real xi_c;
    Real u_c;
};

BreakupPoint breakup(const InitialDataModel& model);

/// Characteristic solution u(x, t) of u_t + 6 u u_x = 0; all branches if the
/// characteristics have folded.
struct HopfSolution {
    std::vector<Real> feet;    // characteristic feet xi, ascending
    std::vector<Real> values;  // u0(xi) for each foot
    bool multivalued() const { return values.size() > 1; }
    Real value() const;        // unique branch; throws if multivalued
};

HopfSolution hopf_solve(const InitialDataModel& model, Real x, Real t);

}  // namespace dsw

#endif

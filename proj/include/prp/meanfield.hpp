#ifndef PRP_MEANFIELD_HPP
#define PRP_MEANFIELD_HPP

#include <Eigen/Core>
#include <optional>
#include <string>
#include <vector>

#include "prp/control.hpp"
#include "prp/series.hpp"

namespace prp {

/// Mean-field system identified by its control function and truncation.
/// The logistic flavor is the logistic control with the exact truncation
/// K = kappa (the system is closed there); the general self-regulating
/// flavor truncates the infinite system at K with the top outflow clipped.
struct MeanFieldFlavor {
    static MeanFieldFlavor logistic(long kappa);
    static MeanFieldFlavor selfreg(ControlFunction control);

    ControlFunction control;
    bool is_logistic = false;
    long kappa = 0;  // logistic only

    std::string name() const { return is_logistic ? "logistic" : "selfreg"; }
};

struct MeanFieldProfile {
    MeanFieldFlavor flavor;
    Eigen::VectorXd u;  // concentrations (u_0, ..., u_K)
    double mass() const { return u.sum(); }
    long truncation() const { return u.size() - 1; }
};

/// Stationary u_0 of the logistic system, evaluated with cumulative
/// products and compensated summation (safe up to kappa ~ 1e6).
/// Throws std::invalid_argument when lambda <= 0 (formula undefined).
double u0_logistic(double lambda, double phi, long kappa);

struct U0Result {
    SeriesStatus status;  // Finite: value valid; Infinite: u0 = 0; Inconclusive
    double value = 0.0;
    double tail_bound = 0.0;
    std::string note;
};

/// Stationary u_0 = 1/(lambda * sum_i phi^i c!(i)) with a certified series
/// tail; a structurally divergent series yields u_0 = 0 (status Infinite).
U0Result u0_selfreg(double lambda, double phi, const ControlFunction& c,
                    SeriesBudget budget = {});

enum class ProfileStatus { Endemic, NoEndemicEquilibrium, Inconclusive };

struct StationaryResult {
    ProfileStatus status;
    double u0 = 0.0;
    std::optional<MeanFieldProfile> profile;  // set when Endemic
    std::string note;
};

struct StationaryOptions {
    double profile_tail = 1e-12;  // grow K until u_K drops below this
    long max_truncation = 100000;
    SeriesBudget budget;
};

StationaryResult stationary_profile(const MeanFieldFlavor& flavor, double lambda,
                                    double phi, const StationaryOptions& opts = {});

/// Right-hand side of the concentration ODE at u (size K+1).
Eigen::VectorXd meanfield_rhs(const MeanFieldFlavor& flavor, double lambda,
                              double phi, const Eigen::VectorXd& u);

struct IntegrationOptions {
    double dt = 0.01;
    double leak_tolerance = 1e-9;   // error when u_K exceeds this (selfreg)
    double grow_threshold = 1e-12;  // grow K when u_K exceeds this
    long max_truncation = 4096;
    long sample_every = 0;  // 0 = keep no intermediate samples
};

struct IntegrationResult {
    Eigen::VectorXd u;       // final state
    double mass_drift = 0.0; // max |mass(t) - mass(0)| observed
    double peak_top = 0.0;   // max u_K observed (truncation monitor)
    long steps = 0;
    long truncation = 0;     // final K
    std::vector<std::pair<double, Eigen::VectorXd>> samples;
};

/// Fixed-step classical 4th-order integration of the system. For the
/// self-regulating flavor the truncation grows adaptively; exceeding the
/// leak tolerance at the top state throws std::runtime_error with a
/// diagnostic.
IntegrationResult integrate_meanfield(const MeanFieldFlavor& flavor, double lambda,
                                      double phi, Eigen::VectorXd u_init, double t_end,
                                      const IntegrationOptions& opts = {});

/// kappa -> infinity limit of the logistic u_0 (monotone from above).
double u0_limit_logistic(double lambda, double phi);

/// n -> infinity limit of the self-regulating u_0 at the limiting control.
U0Result u0_limit_selfreg(double lambda, double phi, const ControlFunction& c_infinity,
                          SeriesBudget budget = {});

}  // namespace prp

#endif  // PRP_MEANFIELD_HPP

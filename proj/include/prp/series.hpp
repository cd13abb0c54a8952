#ifndef PRP_SERIES_HPP
#define PRP_SERIES_HPP

#include "prp/control.hpp"

namespace prp {

enum class SeriesStatus { Finite, Infinite, Inconclusive };

struct CertifiedSum {
    SeriesStatus status = SeriesStatus::Inconclusive;
    double value = 0.0;       // finite case: partial sum plus closed-form tail
    double tail_bound = 0.0;  // certified bound on what value may still miss
    long terms = 0;           // explicitly summed terms
    std::string note;         // structural reason for the status
};

struct SeriesBudget {
    long max_terms = 1000000;
    double tol = 1e-13;  // relative tail target
};

/// sum_{n>=0} phi^n * prod_{l=0}^n a(l), where a = acceptance-clamped c.
/// Convergence/divergence is decided structurally from the family's tail
/// law (term-ratio bounds), never from partial sums alone.
CertifiedSum control_series(double phi, const ControlFunction& c,
                            SeriesBudget budget = {});

/// sum_{i>=1} (phi^{i-1} / i) * prod_{l=0}^{i-2} a(l)   (empty product = 1);
/// the normalization series of the stationary mean-field profile.
CertifiedSum profile_normalization_series(double phi, const ControlFunction& c,
                                          SeriesBudget budget = {});

}  // namespace prp

#endif  // PRP_SERIES_HPP

#ifndef PRP_CHAIN_HPP
#define PRP_CHAIN_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "prp/control.hpp"
#include "prp/rng.hpp"
#include "prp/series.hpp"

namespace prp {

/// Occupancy vector (i_1, ..., i_N) of one patch.
using PatchState = std::vector<int>;

/// Single-step law of the embedded walk at a state: per-coordinate up and
/// down probabilities plus the holding mass (failed trials and blocked
/// down-moves at zero coordinates).
struct StepDistribution {
    std::vector<double> up;    // coordinate j: phi*a(i_j) / ((1+phi) N)
    std::vector<double> down;  // coordinate j: 1/((1+phi) N), 0 when i_j = 0
    double hold = 0.0;
    double total() const;
};

StepDistribution embedded_step_distribution(double phi, const ControlFunction& c,
                                            int N, const PatchState& state);

enum class ChainClass { Transient, PositiveRecurrent, Inconclusive };

std::string chain_class_name(ChainClass c);

struct ClassifyResult {
    ChainClass cls;
    std::string reason;
};

/// Recurrence classification decided structurally from the control tail:
/// phi*c(inf) > 1 certifies the inverse series summable (Transient),
/// phi*c(inf) < 1 certifies the direct series summable (PositiveRecurrent),
/// and at the boundary only the square-ratio law (polynomial term decay)
/// yields a verdict; constant tails stay Inconclusive.
ClassifyResult classify(double phi, const ControlFunction& c);

/// Reversible weight nu(i_1,...,i_N) = prod_{j: i_j>0} phi^{i_j} a!(i_j - 1),
/// nu(0,...,0) = 1.
double reversible_measure(double phi, const ControlFunction& c, const PatchState& state);

struct TotalMassResult {
    SeriesStatus status;  // Finite | Infinite | Inconclusive
    double value = 0.0;
    double tail_bound = 0.0;
    std::string note;
};

/// nu(N^N) = (1 + phi * sum_n phi^n a!(n))^N with a certified series tail.
TotalMassResult total_mass(double phi, const ControlFunction& c, int N,
                           SeriesBudget budget = {});

struct AbsorptionResult {
    double value = 0.0;      // E(tau_0) at truncation height H
    double refined = 0.0;    // at H + 5 (equal when the walk is capped exactly)
    long height = 0;
};

/// Expected number of embedded steps (holding steps included) until the
/// zero vector, from `start`, by a sparse first-passage solve on the height-
/// truncated state space. Requires a PositiveRecurrent classification.
AbsorptionResult expected_absorption_time(double phi, const ControlFunction& c, int N,
                                          const PatchState& start,
                                          std::optional<long> height = std::nullopt);

struct McMoments {
    double mean = 0.0;
    double std_error = 0.0;
    long replicas = 0;
};

/// Direct Monte Carlo of the embedded walk (oracle for the linear solve).
McMoments mc_absorption_time(double phi, const ControlFunction& c, int N,
                             const PatchState& start, long replicas, Rng& rng);

struct SurvivalSolve {
    double probability = 0.0;  // midpoint of the certified bracket
    double lower = 0.0;
    double upper = 0.0;
    long height = 0;
};

/// P(the single-patch walk started at `start` never empties), N = 1 only:
/// truncated linear solves with both boundary completions, height doubled
/// until the bracket is tighter than tol.
SurvivalSolve single_patch_survival(double phi, const ControlFunction& c, int start,
                                    double tol = 1e-4, long initial_height = 64,
                                    long max_height = 1 << 22);

/// Probability of the inter-patch trial vector (n_1, ..., n_{2d}) between
/// consecutive embedded transitions.
double trial_vector_pmf(double lambda, double phi, int d, const std::vector<long>& counts);

/// Draws a trial vector: geometric total, uniform split over directions.
std::vector<long> sample_trial_vector(double lambda, double phi, int d, Rng& rng);

/// lambda* = (1+phi) / (2d E(tau_0)) from a single particle; simulations
/// with lambda < lambda* die out.
double subcritical_lambda_bound(double phi, const ControlFunction& c, int N, int d,
                                std::optional<long> height = std::nullopt);

/// Exact minimum of (1/N) sum_j a(f(j)) over f : {1..N} -> N, sum f = M,
/// by dynamic programming over (sites used, mass remaining).
double min_mean_control(const ControlFunction& c, int N, int M);

}  // namespace prp

#endif  // PRP_CHAIN_HPP

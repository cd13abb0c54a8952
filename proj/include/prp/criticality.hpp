#ifndef PRP_CRITICALITY_HPP
#define PRP_CRITICALITY_HPP

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "prp/geometry.hpp"
#include "prp/params.hpp"
#include "prp/simulator.hpp"

namespace prp {

enum class InitialCondition { SingleAtOrigin, Empty };

struct SurvivalEstimate {
    long replicas = 0;
    long survivors = 0;
    double ci_lo = 0.0;  // Wilson 95%
    double ci_hi = 0.0;
    Stopping stopping;
    std::uint64_t seed = 0;

    double point() const {
        return replicas > 0 ? static_cast<double>(survivors) / replicas : 0.0;
    }
};

/// Threads <= 0 resolves to PRP_THREADS or the hardware count. Replica r
/// always runs on the stream derive_seed(seed, r), so the result does not
/// depend on the thread count.
SurvivalEstimate estimate_survival(const Params& params, const Geometry& geometry,
                                   const Stopping& stopping, long replicas,
                                   std::uint64_t seed, int threads = 0,
                                   InitialCondition init = InitialCondition::SingleAtOrigin);

int resolve_threads(int requested);

enum class Axis { Lambda, Phi };

std::string axis_name(Axis a);

struct BisectOptions {
    double threshold = 0.05;   // survival probability defining "survives"
    double tolerance = 0.02;   // bracket width target (axis units)
    long replicas = 500;
    double axis_lo = 0.0;      // left end of the search
    double initial_hi = 1.0;   // first probe; doubled until it survives
    double axis_max = 64.0;    // give up (NoBracket) beyond this
    int max_evals = 64;
    int threads = 0;
};

struct BisectEval {
    double value;
    SurvivalEstimate estimate;
};

struct CriticalBracket {
    Axis axis;
    double lo = 0.0;
    double hi = 0.0;
    SurvivalEstimate est_lo;
    SurvivalEstimate est_hi;
    double midpoint() const { return 0.5 * (lo + hi); }
};

struct BisectResult {
    bool bracketed = false;
    std::optional<CriticalBracket> bracket;  // set when bracketed
    std::vector<BisectEval> evals;           // every estimate made, in order
    std::string note;
};

/// Monte Carlo bisection of the critical parameter along one axis, the
/// other parameters fixed. Replica seeds depend only on (seed, replica), so
/// every probe shares common random numbers.
BisectResult bisect_critical(Axis axis, Params base, const Geometry& geometry,
                             const Stopping& stopping, const BisectOptions& opts,
                             std::uint64_t seed);

struct SweepRow {
    double lambda;
    double phi;
    int N;
    int d;
    ControlFunction control;
    SurvivalEstimate estimate;
};

struct SweepGrid {
    std::vector<double> lambdas;
    std::vector<double> phis;
    std::vector<int> Ns;
    std::vector<ControlFunction> controls;
};

/// Full factorial sweep; rows in deterministic lexicographic order.
std::vector<SweepRow> sweep(const SweepGrid& grid, int d, int half_width,
                            Boundary boundary, const Stopping& stopping, long replicas,
                            std::uint64_t seed, int threads = 0);

/// CSV schema: lambda,phi,N,d,family,kappa,replicas,survivors,ci_lo,ci_hi,seed
void write_sweep_csv(std::ostream& os, const std::vector<SweepRow>& rows);

}  // namespace prp

#endif  // PRP_CRITICALITY_HPP

#ifndef PRP_SIMULATOR_HPP
#define PRP_SIMULATOR_HPP

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <optional>
#include <vector>

#include "prp/geometry.hpp"
#include "prp/params.hpp"
#include "prp/rng.hpp"
#include "prp/sum_tree.hpp"

namespace prp {

enum class EventType { Death, IntraBirth, InterBirth, RejectedBirth };

std::string event_type_name(EventType t);

struct Event {
    EventType type;
    long patch;         // target patch
    int site;           // target site within patch
    long source_patch;  // patch the breeding particle sits in (= patch for intra)
    double dt;          // waiting time before this event
};

/// Per-patch rate breakdown at the current state:
///   death    = P(x)
///   intra    = (phi/N) * P(x) * CSum(x)
///   inter_in = (lambda/N) * Empty(x) * sum of neighboring patch totals
struct PatchRates {
    double death = 0.0;
    double intra = 0.0;
    double inter_in = 0.0;
    double total() const { return death + intra + inter_in; }
};

struct Stopping {
    double t_max = 200.0;
    long pop_cap = 2000;

    void validate() const;
    bool operator==(const Stopping&) const = default;
};

enum class OutcomeStatus { Extinct, TimeCapReached, PopulationCapReached };

std::string outcome_status_name(OutcomeStatus s);

struct Outcome {
    OutcomeStatus status;
    double time = 0.0;
    std::uint64_t events = 0;
    long peak_population = 0;
    long final_population = 0;
};

/// How intra-patch acceptance is carried in the rates. Aggregated folds the
/// c(i) weights into the patch rate (no no-op events); Explicit samples
/// trials at the full rate phi*P and flips an acceptance coin per trial,
/// emitting RejectedBirth events for failed ones. Both are exact.
enum class RejectionMode { Aggregated, Explicit };

using EventSink = std::function<void(double time, const Event&, long population)>;

/// Exact continuous-time simulation of one trajectory on a finite box.
/// Event selection is hierarchical: a sum tree over patch rates, then the
/// component, then the site from the patch aggregates.
class Simulation {
public:
    Simulation(Geometry geometry, Params params,
               RejectionMode mode = RejectionMode::Aggregated);

    /// Occupancy initializers.
    void clear();
    void seed_origin();                       // one particle at site 0 of the origin patch
    void add_particle(long patch, int site);
    void set_occupancies(const std::vector<int>& eta);

    const Geometry& geometry() const { return geom_; }
    const Params& params() const { return params_; }
    const std::vector<int>& occupancies() const { return eta_; }
    int occupancy(long patch, int site) const { return eta_[geom_.site_index(patch, site)]; }

    long total_population() const { return total_pop_; }
    long peak_population() const { return peak_pop_; }
    double time() const { return time_; }
    std::uint64_t event_count() const { return events_; }

    long patch_population(long p) const { return patch_pop_[p]; }
    int patch_empty_sites(long p) const { return patch_empty_[p]; }
    double patch_control_sum(long p) const { return patch_csum_[p]; }
    long neighbor_population(long p) const { return neigh_pop_[p]; }

    PatchRates patch_rates(long p) const;
    double total_rate() const { return tree_.total(); }

    /// Draw the next event without applying it. Total rate must be positive.
    Event sample_event(Rng& rng) const;

    /// Draw and apply one event; returns it. Throws std::logic_error when
    /// called on an extinct state.
    Event step(Rng& rng);

    /// Run until extinction or a stopping cap.
    Outcome run(const Stopping& stopping, Rng& rng, const EventSink& sink = {});

    /// Recompute every cache from eta and compare; returns true when all
    /// cached aggregates match their definitions (CSum bit-exactly against
    /// the fixed-order recomputation).
    bool caches_coherent() const;

private:
    void apply(const Event& ev);
    void refresh_patch(long p);
    double patch_rate_value(long p) const;
    void rebuild_all();

    Geometry geom_;
    Params params_;
    RejectionMode mode_;
    double acc_cached(int occ) const;

    std::vector<int> eta_;
    std::vector<long> patch_pop_;
    std::vector<int> patch_empty_;
    std::vector<double> patch_csum_;
    std::vector<long> neigh_pop_;
    SumTree tree_;

    long total_pop_ = 0;
    long peak_pop_ = 0;
    double time_ = 0.0;
    std::uint64_t events_ = 0;
    std::uint64_t since_rebuild_ = 0;

    mutable std::vector<double> acc_memo_;
};

/// Convenience: one full trajectory from the default initial condition.
Outcome run_single(const Geometry& geometry, const Params& params,
                   const Stopping& stopping, Rng& rng,
                   RejectionMode mode = RejectionMode::Aggregated);

}  // namespace prp

#endif  // PRP_SIMULATOR_HPP

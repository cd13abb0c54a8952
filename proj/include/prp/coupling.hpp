#ifndef PRP_COUPLING_HPP
#define PRP_COUPLING_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "prp/geometry.hpp"
#include "prp/params.hpp"
#include "prp/rng.hpp"
#include "prp/simulator.hpp"

namespace prp {

/// Sitewise couples two processes on the same geometry; Projection couples
/// a patch process (hi) against an N = 1 process (lo) on the same box,
/// ordering the lo occupancy against the hi patch total.
enum class CoupleMode { Sitewise, Projection };

struct DominationViolation {
    std::uint64_t event_index;
    double time;
    long patch;
    int site;  // -1 in projection mode
    long lo_value;
    long hi_value;
};

struct CoupledOutcome {
    std::optional<DominationViolation> violation;  // empty when domination held
    Outcome lo;
    Outcome hi;
    std::uint64_t events = 0;
};

/// Runs the lo and hi processes on one shared event stream (shared clocks,
/// shared targets and acceptance coins, with the lo process thinned), so
/// that ordered parameters keep the configurations ordered pathwise. The
/// order invariant is checked after every event; the first violation, if
/// any, is reported.
///
/// Requires lambda_lo <= lambda_hi, phi_lo <= phi_hi, c_lo <= c_hi
/// pointwise, and (Sitewise) N_lo == N_hi or (Projection) N_lo == 1.
class CoupledSimulation {
public:
    CoupledSimulation(Geometry geometry_hi, Params params_lo, Params params_hi,
                      CoupleMode mode);

    void seed_origin_both();
    void set_occupancies(const std::vector<int>& lo, const std::vector<int>& hi);

    CoupledOutcome run(const Stopping& stopping, Rng& rng);

    long lo_population() const { return lo_pop_; }
    long hi_population() const { return hi_pop_; }
    const std::vector<int>& lo_occupancies() const { return lo_eta_; }
    const std::vector<int>& hi_occupancies() const { return hi_eta_; }
    double time() const { return time_; }

private:
    bool ordered_at(long patch, int site) const;
    long lo_level_bound(long patch, int site_level_base, int level) const;
    void hi_change(long site_index, int delta);

    Geometry geom_;
    Params lo_params_, hi_params_;
    CoupleMode mode_;

    std::vector<int> lo_eta_;  // size = patches (Projection) or sites (Sitewise)
    std::vector<int> hi_eta_;  // size = sites
    std::vector<long> hi_patch_pop_;
    SumTree hi_site_tree_;
    long lo_pop_ = 0;
    long hi_pop_ = 0;
    long lo_peak_ = 0;
    long hi_peak_ = 0;
    double time_ = 0.0;
    std::uint64_t events_ = 0;
};

}  // namespace prp

#endif  // PRP_COUPLING_HPP

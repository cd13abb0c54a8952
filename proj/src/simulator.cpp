#include "prp/simulator.hpp"

#include <cassert>
#include <cmath>
#include <stdexcept>

namespace prp {

std::string event_type_name(EventType t) {
    switch (t) {
        case EventType::Death: return "death";
        case EventType::IntraBirth: return "intra_birth";
        case EventType::InterBirth: return "inter_birth";
        case EventType::RejectedBirth: return "rejected_birth";
    }
    return "?";
}

std::string outcome_status_name(OutcomeStatus s) {
    switch (s) {
        case OutcomeStatus::Extinct: return "extinct";
        case OutcomeStatus::TimeCapReached: return "time_cap";
        case OutcomeStatus::PopulationCapReached: return "pop_cap";
    }
    return "?";
}

void Stopping::validate() const {
    if (!(t_max > 0.0)) throw std::invalid_argument("stopping: t_max must be > 0");
    if (pop_cap < 1) throw std::invalid_argument("stopping: pop_cap must be >= 1");
}

Simulation::Simulation(Geometry geometry, Params params, RejectionMode mode)
    : geom_(std::move(geometry)), params_(std::move(params)), mode_(mode) {
    params_.validate();
    if (params_.d != geom_.d() || params_.N != geom_.N())
        throw std::invalid_argument("simulation: params and geometry disagree on d or N");
    eta_.assign(geom_.site_count(), 0);
    patch_pop_.assign(geom_.patch_count(), 0);
    patch_empty_.assign(geom_.patch_count(), geom_.N());
    patch_csum_.assign(geom_.patch_count(), 0.0);
    neigh_pop_.assign(geom_.patch_count(), 0);
    tree_.resize(geom_.patch_count());
    rebuild_all();
}

double Simulation::acc_cached(int occ) const {
    auto i = static_cast<std::size_t>(occ);
    while (acc_memo_.size() <= i)
        acc_memo_.push_back(params_.control.acceptance(static_cast<long>(acc_memo_.size())));
    return acc_memo_[i];
}

void Simulation::clear() {
    std::fill(eta_.begin(), eta_.end(), 0);
    total_pop_ = 0;
    peak_pop_ = 0;
    time_ = 0.0;
    events_ = 0;
    rebuild_all();
}

void Simulation::seed_origin() { add_particle(geom_.origin_patch(), 0); }

void Simulation::add_particle(long patch, int site) {
    eta_[geom_.site_index(patch, site)] += 1;
    total_pop_ += 1;
    peak_pop_ = std::max(peak_pop_, total_pop_);
    refresh_patch(patch);
    for (long z : geom_.neighbors(patch)) {
        if (z < 0) continue;
        neigh_pop_[z] += 1;
        tree_.set(z, patch_rate_value(z));
    }
    if (params_.lambda_includes_own_patch) {
        neigh_pop_[patch] += 1;
        tree_.set(patch, patch_rate_value(patch));
    }
}

void Simulation::set_occupancies(const std::vector<int>& eta) {
    if (eta.size() != eta_.size())
        throw std::invalid_argument("set_occupancies: wrong size");
    for (int v : eta)
        if (v < 0) throw std::invalid_argument("set_occupancies: negative occupancy");
    eta_ = eta;
    total_pop_ = 0;
    for (int v : eta_) total_pop_ += v;
    peak_pop_ = total_pop_;
    time_ = 0.0;
    events_ = 0;
    rebuild_all();
}

void Simulation::rebuild_all() {
    const long M = geom_.patch_count();
    const int N = geom_.N();
    for (long p = 0; p < M; ++p) {
        long pop = 0;
        int empty = 0;
        double csum = 0.0;
        for (int r = 0; r < N; ++r) {
            const int occ = eta_[geom_.site_index(p, r)];
            pop += occ;
            if (occ == 0) ++empty;
            csum += acc_cached(occ);
        }
        patch_pop_[p] = pop;
        patch_empty_[p] = empty;
        patch_csum_[p] = csum;
    }
    for (long p = 0; p < M; ++p) {
        long s = params_.lambda_includes_own_patch ? patch_pop_[p] : 0;
        for (long z : geom_.neighbors(p))
            if (z >= 0) s += patch_pop_[z];
        neigh_pop_[p] = s;
    }
    for (long p = 0; p < M; ++p) tree_.set(p, patch_rate_value(p));
    since_rebuild_ = 0;
}

void Simulation::refresh_patch(long p) {
    const int N = geom_.N();
    long pop = 0;
    int empty = 0;
    double csum = 0.0;
    for (int r = 0; r < N; ++r) {
        const int occ = eta_[geom_.site_index(p, r)];
        pop += occ;
        if (occ == 0) ++empty;
        csum += acc_cached(occ);
    }
    patch_pop_[p] = pop;
    patch_empty_[p] = empty;
    patch_csum_[p] = csum;
    tree_.set(p, patch_rate_value(p));
}

double Simulation::patch_rate_value(long p) const {
    const double N = static_cast<double>(geom_.N());
    const double pop = static_cast<double>(patch_pop_[p]);
    const double death = pop;
    const double intra = mode_ == RejectionMode::Aggregated
                             ? (params_.phi / N) * pop * patch_csum_[p]
                             : params_.phi * pop;
    const double inter =
        (params_.lambda / N) * static_cast<double>(patch_empty_[p]) *
        static_cast<double>(neigh_pop_[p]);
    return death + intra + inter;
}

PatchRates Simulation::patch_rates(long p) const {
    PatchRates r;
    const double N = static_cast<double>(geom_.N());
    const double pop = static_cast<double>(patch_pop_[p]);
    r.death = pop;
    r.intra = (params_.phi / N) * pop * patch_csum_[p];
    r.inter_in = (params_.lambda / N) * static_cast<double>(patch_empty_[p]) *
                 static_cast<double>(neigh_pop_[p]);
    return r;
}

Event Simulation::sample_event(Rng& rng) const {
    const double total = tree_.total();
    if (!(total > 0.0))
        throw std::logic_error("sample_event called with zero total rate (extinct state)");
    Event ev{};
    ev.dt = rng.exponential(total);

    const long p = static_cast<long>(tree_.sample(rng.u01() * total));
    ev.patch = p;
    ev.source_patch = p;
    const int N = geom_.N();

    const double death = static_cast<double>(patch_pop_[p]);
    const double intra = mode_ == RejectionMode::Aggregated
                             ? (params_.phi / N) * death * patch_csum_[p]
                             : params_.phi * death;
    const double inter = (params_.lambda / N) *
                         static_cast<double>(patch_empty_[p]) *
                         static_cast<double>(neigh_pop_[p]);
    double u = rng.u01() * (death + intra + inter);

    if (u < death || (intra == 0.0 && inter == 0.0)) {
        ev.type = EventType::Death;
        // site proportional to occupancy
        double target = rng.u01() * death;
        double cum = 0.0;
        int site = N - 1;
        for (int r = 0; r < N; ++r) {
            cum += static_cast<double>(eta_[geom_.site_index(p, r)]);
            if (target < cum) {
                site = r;
                break;
            }
        }
        ev.site = site;
        return ev;
    }
    u -= death;

    if (u < intra || inter == 0.0) {
        if (mode_ == RejectionMode::Aggregated) {
            // target site proportional to its acceptance weight
            ev.type = EventType::IntraBirth;
            double target = rng.u01() * patch_csum_[p];
            double cum = 0.0;
            int site = -1;
            for (int r = 0; r < N; ++r) {
                const double w = acc_cached(eta_[geom_.site_index(p, r)]);
                cum += w;
                if (target < cum && w > 0.0) {
                    site = r;
                    break;
                }
            }
            if (site < 0) {
                for (int r = N - 1; r >= 0; --r)
                    if (acc_cached(eta_[geom_.site_index(p, r)]) > 0.0) {
                        site = r;
                        break;
                    }
            }
            ev.site = site;
        } else {
            // uniform trial site, explicit acceptance coin
            const int site = static_cast<int>(rng.below(static_cast<std::uint64_t>(N)));
            const double acc = acc_cached(eta_[geom_.site_index(p, site)]);
            ev.type = rng.u01() < acc ? EventType::IntraBirth : EventType::RejectedBirth;
            ev.site = site;
        }
        return ev;
    }

    // inter-patch birth onto the k-th empty site; the source patch is drawn
    // proportionally to neighboring populations (for the event log only).
    ev.type = EventType::InterBirth;
    const int k = static_cast<int>(rng.below(static_cast<std::uint64_t>(patch_empty_[p])));
    int seen = 0;
    int site = -1;
    for (int r = 0; r < N; ++r) {
        if (eta_[geom_.site_index(p, r)] == 0) {
            if (seen == k) {
                site = r;
                break;
            }
            ++seen;
        }
    }
    ev.site = site;
    double src_target = rng.u01() * static_cast<double>(neigh_pop_[p]);
    double cum = params_.lambda_includes_own_patch ? static_cast<double>(patch_pop_[p]) : 0.0;
    long src = p;
    if (src_target >= cum) {
        for (long z : geom_.neighbors(p)) {
            if (z < 0) continue;
            cum += static_cast<double>(patch_pop_[z]);
            if (src_target < cum) {
                src = z;
                break;
            }
        }
    }
    ev.source_patch = src;
    return ev;
}

void Simulation::apply(const Event& ev) {
    switch (ev.type) {
        case EventType::RejectedBirth:
            return;  // state unchanged
        case EventType::Death: {
            auto& occ = eta_[geom_.site_index(ev.patch, ev.site)];
            assert(occ > 0);
            occ -= 1;
            total_pop_ -= 1;
            break;
        }
        case EventType::IntraBirth:
        case EventType::InterBirth: {
            auto& occ = eta_[geom_.site_index(ev.patch, ev.site)];
            occ += 1;
            total_pop_ += 1;
            peak_pop_ = std::max(peak_pop_, total_pop_);
            if (auto cap = params_.control.max_occupancy())
                assert(static_cast<long>(occ) <= *cap);
            break;
        }
    }
    refresh_patch(ev.patch);
    const long delta = ev.type == EventType::Death ? -1 : 1;
    for (long z : geom_.neighbors(ev.patch)) {
        if (z < 0) continue;
        neigh_pop_[z] += delta;
        tree_.set(z, patch_rate_value(z));
    }
    if (params_.lambda_includes_own_patch) {
        neigh_pop_[ev.patch] += delta;
        tree_.set(ev.patch, patch_rate_value(ev.patch));
    }
    if (++since_rebuild_ >= 65536) {
        tree_.rebuild();
        since_rebuild_ = 0;
    }
}

Event Simulation::step(Rng& rng) {
    Event ev = sample_event(rng);
    time_ += ev.dt;
    apply(ev);
    events_ += 1;
    return ev;
}

Outcome Simulation::run(const Stopping& stopping, Rng& rng, const EventSink& sink) {
    stopping.validate();
    while (true) {
        if (total_pop_ == 0)
            return {OutcomeStatus::Extinct, time_, events_, peak_pop_, 0};
        if (total_pop_ >= stopping.pop_cap)
            return {OutcomeStatus::PopulationCapReached, time_, events_, peak_pop_, total_pop_};
        Event ev = sample_event(rng);
        if (time_ + ev.dt > stopping.t_max) {
            time_ = stopping.t_max;
            return {OutcomeStatus::TimeCapReached, time_, events_, peak_pop_, total_pop_};
        }
        time_ += ev.dt;
        apply(ev);
        events_ += 1;
        if (sink) sink(time_, ev, total_pop_);
    }
}

bool Simulation::caches_coherent() const {
    const long M = geom_.patch_count();
    const int N = geom_.N();
    long pop_sum = 0;
    for (long p = 0; p < M; ++p) {
        long pop = 0;
        int empty = 0;
        double csum = 0.0;
        for (int r = 0; r < N; ++r) {
            const int occ = eta_[geom_.site_index(p, r)];
            pop += occ;
            if (occ == 0) ++empty;
            csum += acc_cached(occ);
        }
        if (pop != patch_pop_[p] || empty != patch_empty_[p]) return false;
        if (csum != patch_csum_[p]) return false;  // fixed-order recomputation
        long s = params_.lambda_includes_own_patch ? pop : 0;
        for (long z : geom_.neighbors(p))
            if (z >= 0) s += patch_pop_[z];
        if (s != neigh_pop_[p]) return false;
        if (tree_.leaf(static_cast<std::size_t>(p)) != patch_rate_value(p)) return false;
        pop_sum += pop;
    }
    return pop_sum == total_pop_;
}

Outcome run_single(const Geometry& geometry, const Params& params,
                   const Stopping& stopping, Rng& rng, RejectionMode mode) {
    Simulation sim(geometry, params, mode);
    sim.seed_origin();
    return sim.run(stopping, rng, {});
}

}  // namespace prp

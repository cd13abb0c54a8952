#include "prp/coupling.hpp"

#include <cassert>
#include <stdexcept>

namespace prp {

CoupledSimulation::CoupledSimulation(Geometry geometry_hi, Params params_lo,
                                     Params params_hi, CoupleMode mode)
    : geom_(std::move(geometry_hi)),
      lo_params_(std::move(params_lo)),
      hi_params_(std::move(params_hi)),
      mode_(mode) {
    lo_params_.validate();
    hi_params_.validate();
    if (hi_params_.d != geom_.d() || hi_params_.N != geom_.N())
        throw std::invalid_argument("coupling: hi params and geometry disagree");
    if (mode_ == CoupleMode::Sitewise && lo_params_.N != hi_params_.N)
        throw std::invalid_argument("coupling: sitewise mode needs equal N");
    if (mode_ == CoupleMode::Projection && lo_params_.N != 1)
        throw std::invalid_argument("coupling: projection mode needs N_lo == 1");
    if (lo_params_.d != hi_params_.d)
        throw std::invalid_argument("coupling: dimensions differ");
    if (lo_params_.lambda > hi_params_.lambda || lo_params_.phi > hi_params_.phi)
        throw std::invalid_argument("coupling: lo rates must not exceed hi rates");
    if (!lo_params_.control.pointwise_leq(hi_params_.control))
        throw std::invalid_argument("coupling: lo control must be <= hi control pointwise");
    if (lo_params_.lambda_includes_own_patch || hi_params_.lambda_includes_own_patch)
        throw std::invalid_argument("coupling: own-patch lambda variant not supported here");

    lo_eta_.assign(mode_ == CoupleMode::Sitewise ? geom_.site_count() : geom_.patch_count(), 0);
    hi_eta_.assign(geom_.site_count(), 0);
    hi_patch_pop_.assign(geom_.patch_count(), 0);
    hi_site_tree_.resize(geom_.site_count());
}

void CoupledSimulation::seed_origin_both() {
    const long origin = geom_.origin_patch();
    hi_change(geom_.site_index(origin, 0), 1);
    lo_eta_[mode_ == CoupleMode::Sitewise ? geom_.site_index(origin, 0) : origin] = 1;
    lo_pop_ = 1;
    lo_peak_ = 1;
}

void CoupledSimulation::set_occupancies(const std::vector<int>& lo,
                                        const std::vector<int>& hi) {
    if (lo.size() != lo_eta_.size() || hi.size() != hi_eta_.size())
        throw std::invalid_argument("coupling: occupancy size mismatch");
    lo_eta_ = lo;
    lo_pop_ = 0;
    for (int v : lo_eta_) lo_pop_ += v;
    lo_peak_ = lo_pop_;
    std::fill(hi_eta_.begin(), hi_eta_.end(), 0);
    std::fill(hi_patch_pop_.begin(), hi_patch_pop_.end(), 0);
    hi_pop_ = 0;
    for (std::size_t s = 0; s < hi.size(); ++s)
        for (int k = 0; k < hi[s]; ++k) hi_change(static_cast<long>(s), 1);
    hi_peak_ = hi_pop_;
    // initial ordering must hold
    for (long p = 0; p < geom_.patch_count(); ++p) {
        if (mode_ == CoupleMode::Projection) {
            if (lo_eta_[p] > hi_patch_pop_[p])
                throw std::invalid_argument("coupling: initial lo exceeds hi projection");
        } else {
            for (int r = 0; r < geom_.N(); ++r)
                if (lo_eta_[geom_.site_index(p, r)] > hi_eta_[geom_.site_index(p, r)])
                    throw std::invalid_argument("coupling: initial lo exceeds hi");
        }
    }
}

void CoupledSimulation::hi_change(long site_index, int delta) {
    hi_eta_[site_index] += delta;
    assert(hi_eta_[site_index] >= 0);
    hi_patch_pop_[site_index / geom_.N()] += delta;
    hi_pop_ += delta;
    hi_peak_ = std::max(hi_peak_, hi_pop_);
    hi_site_tree_.set(static_cast<std::size_t>(site_index),
                      static_cast<double>(hi_eta_[site_index]));
}

bool CoupledSimulation::ordered_at(long patch, int site) const {
    if (mode_ == CoupleMode::Projection)
        return lo_eta_[patch] <= hi_patch_pop_[patch];
    const long s = geom_.site_index(patch, site);
    return lo_eta_[s] <= hi_eta_[s];
}

CoupledOutcome CoupledSimulation::run(const Stopping& stopping, Rng& rng) {
    stopping.validate();
    const int N = geom_.N();
    const int two_d = 2 * geom_.d();
    const double phi_hi = hi_params_.phi;
    const double lam_hi = hi_params_.lambda;
    const double per_particle = 1.0 + phi_hi + two_d * lam_hi;
    const double p_death = 1.0 / per_particle;
    const double p_intra = phi_hi / per_particle;
    const double thin_phi = phi_hi > 0.0 ? lo_params_.phi / phi_hi : 0.0;
    const double thin_lam = lam_hi > 0.0 ? lo_params_.lambda / lam_hi : 0.0;

    auto make_outcome = [&](long pop, long peak) {
        Outcome o;
        o.status = pop == 0 ? OutcomeStatus::Extinct
                            : (pop >= stopping.pop_cap ? OutcomeStatus::PopulationCapReached
                                                       : OutcomeStatus::TimeCapReached);
        o.time = time_;
        o.events = events_;
        o.peak_population = peak;
        o.final_population = pop;
        return o;
    };
    auto finish = [&](std::optional<DominationViolation> v) {
        CoupledOutcome out;
        out.violation = std::move(v);
        out.lo = make_outcome(lo_pop_, lo_peak_);
        out.hi = make_outcome(hi_pop_, hi_peak_);
        out.events = events_;
        return out;
    };

    while (true) {
        if (hi_pop_ == 0 || hi_pop_ >= stopping.pop_cap) return finish(std::nullopt);
        const double total = per_particle * static_cast<double>(hi_pop_);
        const double dt = rng.exponential(total);
        if (time_ + dt > stopping.t_max) {
            time_ = stopping.t_max;
            return finish(std::nullopt);
        }
        time_ += dt;
        events_ += 1;

        // pick a hi particle: site proportional to occupancy, level uniform
        const long src_site =
            static_cast<long>(hi_site_tree_.sample(rng.u01() * static_cast<double>(hi_pop_)));
        const long src_patch = src_site / N;
        const int level =
            static_cast<int>(rng.below(static_cast<std::uint64_t>(hi_eta_[src_site])));
        bool shared;
        if (mode_ == CoupleMode::Sitewise) {
            shared = level < lo_eta_[src_site];
        } else {
            // order hi particles within the patch site-by-site; the first
            // xi_lo(patch) of them are the shared ones
            long before = 0;
            for (long s = src_patch * N; s < src_site; ++s) before += hi_eta_[s];
            shared = before + level < lo_eta_[src_patch];
        }

        const double u_kind = rng.u01();
        long touched_patch = src_patch;
        int touched_site = static_cast<int>(src_site - src_patch * N);

        if (u_kind < p_death) {
            hi_change(src_site, -1);
            if (shared) {
                auto& lo =
                    lo_eta_[mode_ == CoupleMode::Sitewise ? src_site : src_patch];
                lo -= 1;
                lo_pop_ -= 1;
            }
        } else if (u_kind < p_death + p_intra) {
            // intra-patch trial: shared target site and acceptance coin
            const int target_r = static_cast<int>(rng.below(static_cast<std::uint64_t>(N)));
            const long target = geom_.site_index(src_patch, target_r);
            const bool lo_attempts = shared && rng.u01() < thin_phi;
            const double coin = rng.u01();
            if (coin < hi_params_.control.acceptance(hi_eta_[target]))
                hi_change(target, 1);
            if (lo_attempts) {
                if (mode_ == CoupleMode::Sitewise) {
                    if (coin < lo_params_.control.acceptance(lo_eta_[target])) {
                        lo_eta_[target] += 1;
                        lo_pop_ += 1;
                        lo_peak_ = std::max(lo_peak_, lo_pop_);
                    }
                } else {
                    if (coin < lo_params_.control.acceptance(lo_eta_[src_patch])) {
                        lo_eta_[src_patch] += 1;
                        lo_pop_ += 1;
                        lo_peak_ = std::max(lo_peak_, lo_pop_);
                    }
                }
            }
            touched_site = target_r;
        } else {
            // inter-patch trial toward a uniform neighboring patch
            const int dir = static_cast<int>(rng.below(static_cast<std::uint64_t>(two_d)));
            const long target_patch = geom_.neighbors(src_patch)[dir];
            const int target_r = static_cast<int>(rng.below(static_cast<std::uint64_t>(N)));
            const bool lo_attempts = shared && rng.u01() < thin_lam;
            if (target_patch >= 0) {
                const long target = geom_.site_index(target_patch, target_r);
                if (hi_eta_[target] == 0) hi_change(target, 1);
                if (lo_attempts) {
                    if (mode_ == CoupleMode::Sitewise) {
                        if (lo_eta_[target] == 0) {
                            lo_eta_[target] = 1;
                            lo_pop_ += 1;
                            lo_peak_ = std::max(lo_peak_, lo_pop_);
                        }
                    } else {
                        if (lo_eta_[target_patch] == 0) {
                            lo_eta_[target_patch] = 1;
                            lo_pop_ += 1;
                            lo_peak_ = std::max(lo_peak_, lo_pop_);
                        }
                    }
                }
                touched_patch = target_patch;
                touched_site = target_r;
            }
        }

        if (!ordered_at(touched_patch, touched_site) ||
            !ordered_at(src_patch, static_cast<int>(src_site - src_patch * N))) {
            const long bad_patch = ordered_at(touched_patch, touched_site)
                                       ? src_patch
                                       : touched_patch;
            const int bad_site = ordered_at(touched_patch, touched_site)
                                     ? static_cast<int>(src_site - src_patch * N)
                                     : touched_site;
            DominationViolation v;
            v.event_index = events_;
            v.time = time_;
            v.patch = bad_patch;
            v.site = mode_ == CoupleMode::Sitewise ? bad_site : -1;
            if (mode_ == CoupleMode::Sitewise) {
                v.lo_value = lo_eta_[geom_.site_index(bad_patch, bad_site)];
                v.hi_value = hi_eta_[geom_.site_index(bad_patch, bad_site)];
            } else {
                v.lo_value = lo_eta_[bad_patch];
                v.hi_value = hi_patch_pop_[bad_patch];
            }
            return finish(v);
        }
    }
}

}  // namespace prp

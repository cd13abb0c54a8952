#include "prp/criticality.hpp"

#include <atomic>
#include <cstdlib>
#include <ostream>
#include <stdexcept>
#include <thread>

#include "prp/rng.hpp"
#include "prp/stats.hpp"

namespace prp {

int resolve_threads(int requested) {
    if (requested > 0) return requested;
    if (const char* env = std::getenv("PRP_THREADS")) {
        const int n = std::atoi(env);
        if (n > 0) return n;
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw > 0 ? static_cast<int>(hw) : 1;
}

SurvivalEstimate estimate_survival(const Params& params, const Geometry& geometry,
                                   const Stopping& stopping, long replicas,
                                   std::uint64_t seed, int threads,
                                   InitialCondition init) {
    if (replicas < 1) throw std::invalid_argument("estimate_survival: replicas must be >= 1");
    params.validate();
    stopping.validate();

    const int n_threads = std::min<long>(resolve_threads(threads), replicas);
    std::atomic<long> next{0};
    std::atomic<long> survivors{0};

    auto worker = [&]() {
        long local = 0;
        while (true) {
            const long r = next.fetch_add(1);
            if (r >= replicas) break;
            Rng rng(derive_seed(seed, static_cast<std::uint64_t>(r)));
            Simulation sim(geometry, params);
            if (init == InitialCondition::SingleAtOrigin) sim.seed_origin();
            const Outcome out = sim.run(stopping, rng);
            if (out.status != OutcomeStatus::Extinct) ++local;
        }
        survivors.fetch_add(local);
    };

    if (n_threads <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(n_threads);
        for (int i = 0; i < n_threads; ++i) pool.emplace_back(worker);
        for (auto& t : pool) t.join();
    }

    SurvivalEstimate est;
    est.replicas = replicas;
    est.survivors = survivors.load();
    auto ci = wilson_interval(est.survivors, est.replicas);
    est.ci_lo = ci.first;
    est.ci_hi = ci.second;
    est.stopping = stopping;
    est.seed = seed;
    return est;
}

std::string axis_name(Axis a) { return a == Axis::Lambda ? "lambda" : "phi"; }

namespace {

Params with_axis(Params p, Axis axis, double v) {
    if (axis == Axis::Lambda)
        p.lambda = v;
    else
        p.phi = v;
    return p;
}

}  // namespace

BisectResult bisect_critical(Axis axis, Params base, const Geometry& geometry,
                             const Stopping& stopping, const BisectOptions& opts,
                             std::uint64_t seed) {
    if (!(opts.tolerance > 0.0)) throw std::invalid_argument("bisect: tolerance must be > 0");
    if (!(opts.threshold > 0.0 && opts.threshold < 1.0))
        throw std::invalid_argument("bisect: threshold must lie in (0,1)");

    BisectResult result;
    auto evaluate = [&](double v) {
        SurvivalEstimate est =
            estimate_survival(with_axis(base, axis, v), geometry, stopping,
                              opts.replicas, seed, opts.threads);
        result.evals.push_back({v, est});
        return est;
    };

    double lo = opts.axis_lo;
    SurvivalEstimate est_lo = evaluate(lo);
    if (est_lo.point() >= opts.threshold) {
        // survival already above threshold at the left end: degenerate bracket
        CriticalBracket b{axis, lo, lo, est_lo, est_lo};
        result.bracketed = true;
        result.bracket = std::move(b);
        result.note = "survival above threshold at the lower end";
        return result;
    }

    double hi = opts.initial_hi;
    SurvivalEstimate est_hi;
    while (true) {
        if (hi > opts.axis_max) {
            result.note = "no bracket: survival stayed below threshold up to axis_max";
            return result;
        }
        est_hi = evaluate(hi);
        if (est_hi.point() >= opts.threshold) break;
        lo = hi;
        est_lo = est_hi;
        hi *= 2.0;
    }

    while (hi - lo > opts.tolerance &&
           static_cast<int>(result.evals.size()) < opts.max_evals) {
        const double mid = 0.5 * (lo + hi);
        const SurvivalEstimate est_mid = evaluate(mid);
        if (est_mid.point() >= opts.threshold) {
            hi = mid;
            est_hi = est_mid;
        } else {
            lo = mid;
            est_lo = est_mid;
        }
    }

    CriticalBracket b{axis, lo, hi, est_lo, est_hi};
    result.bracketed = true;
    result.bracket = std::move(b);
    result.note = hi - lo <= opts.tolerance ? "bracket within tolerance"
                                            : "evaluation budget exhausted";
    return result;
}

std::vector<SweepRow> sweep(const SweepGrid& grid, int d, int half_width,
                            Boundary boundary, const Stopping& stopping, long replicas,
                            std::uint64_t seed, int threads) {
    std::vector<SweepRow> rows;
    for (double lambda : grid.lambdas)
        for (double phi : grid.phis)
            for (int N : grid.Ns)
                for (const ControlFunction& c : grid.controls) {
                    Params p{lambda, phi, d, N, c};
                    Geometry g(d, half_width, N, boundary);
                    SweepRow row{lambda, phi, N, d, c,
                                 estimate_survival(p, g, stopping, replicas, seed, threads)};
                    rows.push_back(std::move(row));
                }
    return rows;
}

void write_sweep_csv(std::ostream& os, const std::vector<SweepRow>& rows) {
    os << "lambda,phi,N,d,family,kappa,replicas,survivors,ci_lo,ci_hi,seed\n";
    for (const SweepRow& r : rows) {
        const auto fam = r.control.family();
        const bool has_kappa =
            fam == ControlFamily::Indicator || fam == ControlFamily::Logistic;
        os << r.lambda << ',' << r.phi << ',' << r.N << ',' << r.d << ','
           << family_name(fam) << ',';
        if (has_kappa) os << r.control.kappa();
        os << ',' << r.estimate.replicas << ',' << r.estimate.survivors << ','
           << r.estimate.ci_lo << ',' << r.estimate.ci_hi << ',' << r.estimate.seed
           << '\n';
    }
}

}  // namespace prp

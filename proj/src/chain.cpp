#include "prp/chain.hpp"

#include <Eigen/Sparse>
#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "prp/stats.hpp"

namespace prp {

double StepDistribution::total() const {
    double t = hold;
    for (double x : up) t += x;
    for (double x : down) t += x;
    return t;
}

StepDistribution embedded_step_distribution(double phi, const ControlFunction& c,
                                            int N, const PatchState& state) {
    if (N < 1) throw std::invalid_argument("embedded step: N must be >= 1");
    if (static_cast<int>(state.size()) != N)
        throw std::invalid_argument("embedded step: state size != N");
    StepDistribution dist;
    dist.up.resize(N);
    dist.down.resize(N);
    const double denom = (1.0 + phi) * static_cast<double>(N);
    double moving = 0.0;
    for (int j = 0; j < N; ++j) {
        if (state[j] < 0) throw std::invalid_argument("embedded step: negative occupancy");
        dist.up[j] = phi * c.acceptance(state[j]) / denom;
        dist.down[j] = state[j] > 0 ? 1.0 / denom : 0.0;
        moving += dist.up[j] + dist.down[j];
    }
    dist.hold = 1.0 - moving;
    return dist;
}

std::string chain_class_name(ChainClass c) {
    switch (c) {
        case ChainClass::Transient: return "transient";
        case ChainClass::PositiveRecurrent: return "positive_recurrent";
        case ChainClass::Inconclusive: return "inconclusive";
    }
    return "?";
}

ClassifyResult classify(double phi, const ControlFunction& c) {
    if (phi < 0) throw std::invalid_argument("classify: phi must be >= 0");
    if (phi == 0.0)
        return {ChainClass::PositiveRecurrent, "phi=0: direct series is the single term 1"};
    if (c.max_occupancy())
        return {ChainClass::PositiveRecurrent,
                "control vanishes: direct series is a finite sum"};

    Rational lim = c.limit_exact();
    if (lim > 1) lim = 1;
    const Rational rho = Rational(phi) * lim;

    if (rho > 1)
        return {ChainClass::Transient,
                "phi*c(inf) > 1: inverse series has a geometric certified tail"};
    if (rho < 1)
        return {ChainClass::PositiveRecurrent,
                "phi*c(inf) < 1: direct series has a geometric certified tail"};

    if (c.family() == ControlFamily::SquareRatio && c.ratio_a() > c.ratio_b())
        return {ChainClass::Transient,
                "phi*c(inf) = 1 with square-ratio law: inverse series terms decay "
                "like n^-2(a-b), summable"};

    return {ChainClass::Inconclusive,
            "phi*c(inf) = 1 with constant tail: both series diverge"};
}

double reversible_measure(double phi, const ControlFunction& c, const PatchState& state) {
    double nu = 1.0;
    for (int occ : state) {
        if (occ < 0) throw std::invalid_argument("reversible_measure: negative occupancy");
        double w = 1.0;
        for (int l = 0; l < occ; ++l) w *= phi * c.acceptance(l);
        nu *= w;
    }
    return nu;
}

TotalMassResult total_mass(double phi, const ControlFunction& c, int N,
                           SeriesBudget budget) {
    if (N < 1) throw std::invalid_argument("total_mass: N must be >= 1");
    const CertifiedSum s = control_series(phi, c, budget);
    TotalMassResult out;
    out.status = s.status;
    out.note = s.note;
    if (s.status != SeriesStatus::Finite) return out;
    const double per_coord = 1.0 + phi * s.value;
    out.value = std::pow(per_coord, N);
    out.tail_bound =
        static_cast<double>(N) * std::pow(per_coord, N - 1) * phi * s.tail_bound;
    return out;
}

namespace {

// Mixed-radix index over {0..H}^N.
struct StateBox {
    int N;
    long H;
    long count;  // (H+1)^N

    StateBox(int n, long h) : N(n), H(h) {
        count = 1;
        for (int k = 0; k < N; ++k) {
            if (count > (1L << 41) / (H + 1))
                throw std::invalid_argument("chain: truncated state space too large");
            count *= H + 1;
        }
    }
    long index(const PatchState& s) const {
        long idx = 0;
        long stride = 1;
        for (int j = 0; j < N; ++j) {
            idx += stride * s[j];
            stride *= H + 1;
        }
        return idx;
    }
};

// Default truncation: smallest H whose per-coordinate nu-tail is below
// 1e-10 of the per-coordinate mass (exact cap when the control vanishes).
long default_height(double phi, const ControlFunction& c, const PatchState& start) {
    long floor_h = 8;
    for (int v : start) floor_h = std::max(floor_h, static_cast<long>(v) + 5);
    if (auto cap = c.max_occupancy()) return std::max(*cap, floor_h);

    double w = 1.0;       // nu weight of height i (per coordinate)
    double mass = 1.0;
    for (long i = 1; i <= 2000000; ++i) {
        w *= phi * c.acceptance(i - 1);
        mass += w;
        const double r = phi * c.acceptance(i);
        if (i >= floor_h && r < 1.0) {
            const double tail = w * r / (1.0 - r);
            if (tail <= 1e-10 * mass) return i;
        }
    }
    throw std::runtime_error("chain: could not certify a truncation height");
}

}  // namespace

static double solve_absorption(double phi, const ControlFunction& c, int N,
                               const PatchState& start, long H) {
    const StateBox box(N, H);
    const double denom = (1.0 + phi) * static_cast<double>(N);
    const long n_states = box.count;  // state 0 is the absorbing origin

    std::vector<Eigen::Triplet<double>> trip;
    trip.reserve(static_cast<std::size_t>(n_states) * (2 * N + 1));
    // unknowns h(s) for s != 0, equation h = 1 + sum p(s,s') h(s');
    // holding mass folded into the diagonal: (1 - p_hold) h(s) - moves = 1.
    PatchState s(static_cast<std::size_t>(N), 0);
    for (long idx = 1; idx < n_states; ++idx) {
        // decode idx
        long rem = idx;
        for (int j = 0; j < N; ++j) {
            s[j] = static_cast<int>(rem % (H + 1));
            rem /= H + 1;
        }
        double moving = 0.0;
        long stride = 1;
        for (int j = 0; j < N; ++j) {
            const double p_up = s[j] < H ? phi * c.acceptance(s[j]) / denom : 0.0;
            const double p_dn = s[j] > 0 ? 1.0 / denom : 0.0;
            if (p_up > 0.0) {
                trip.emplace_back(idx - 1, idx + stride - 1, -p_up);
                moving += p_up;
            }
            if (p_dn > 0.0) {
                const long tgt = idx - stride;
                if (tgt != 0) trip.emplace_back(idx - 1, tgt - 1, -p_dn);
                moving += p_dn;  // moves into the origin leave the system
            }
            stride *= H + 1;
        }
        trip.emplace_back(idx - 1, idx - 1, moving);
    }

    Eigen::SparseMatrix<double> A(n_states - 1, n_states - 1);
    A.setFromTriplets(trip.begin(), trip.end());
    Eigen::SparseLU<Eigen::SparseMatrix<double>> lu;
    lu.analyzePattern(A);
    lu.factorize(A);
    if (lu.info() != Eigen::Success)
        throw std::runtime_error("expected_absorption_time: singular truncated system");
    const Eigen::VectorXd h =
        lu.solve(Eigen::VectorXd::Ones(n_states - 1));

    const long start_idx = box.index(start);
    if (start_idx == 0) return 0.0;
    return h[start_idx - 1];
}

AbsorptionResult expected_absorption_time(double phi, const ControlFunction& c, int N,
                                          const PatchState& start,
                                          std::optional<long> height) {
    if (N < 1) throw std::invalid_argument("expected_absorption_time: N must be >= 1");
    if (static_cast<int>(start.size()) != N)
        throw std::invalid_argument("expected_absorption_time: start size != N");
    const ClassifyResult cls = classify(phi, c);
    if (cls.cls != ChainClass::PositiveRecurrent)
        throw std::domain_error(
            "expected_absorption_time: chain is not certified positive recurrent (" +
            cls.reason + ")");

    long H = height ? *height : default_height(phi, c, start);
    for (int v : start)
        if (v > H) throw std::invalid_argument("expected_absorption_time: start above height");

    AbsorptionResult out;
    out.height = H;
    out.value = solve_absorption(phi, c, N, start, H);
    const auto cap = c.max_occupancy();
    if (cap && H >= *cap) {
        out.refined = out.value;  // truncation is exact
    } else {
        out.refined = solve_absorption(phi, c, N, start, H + 5);
    }
    return out;
}

McMoments mc_absorption_time(double phi, const ControlFunction& c, int N,
                             const PatchState& start, long replicas, Rng& rng) {
    if (replicas < 1) throw std::invalid_argument("mc_absorption_time: replicas >= 1");
    const double denom = (1.0 + phi) * static_cast<double>(N);
    KahanSum sum, sumsq;
    PatchState s;
    for (long rep = 0; rep < replicas; ++rep) {
        s = start;
        long pop = 0;
        for (int v : s) pop += v;
        std::uint64_t steps = 0;
        while (pop > 0) {
            ++steps;
            double u = rng.u01();
            // coordinate moves in fixed order, then holding
            bool moved = false;
            for (int j = 0; j < N && !moved; ++j) {
                const double p_up = phi * c.acceptance(s[j]) / denom;
                if (u < p_up) {
                    s[j] += 1;
                    pop += 1;
                    moved = true;
                    break;
                }
                u -= p_up;
                const double p_dn = s[j] > 0 ? 1.0 / denom : 0.0;
                if (u < p_dn) {
                    s[j] -= 1;
                    pop -= 1;
                    moved = true;
                    break;
                }
                u -= p_dn;
            }
            // otherwise: holding step
        }
        const double x = static_cast<double>(steps);
        sum.add(x);
        sumsq.add(x * x);
    }
    McMoments out;
    out.replicas = replicas;
    out.mean = sum.value() / static_cast<double>(replicas);
    const double var =
        (sumsq.value() - static_cast<double>(replicas) * out.mean * out.mean) /
        std::max(1.0, static_cast<double>(replicas - 1));
    out.std_error = std::sqrt(std::max(0.0, var) / static_cast<double>(replicas));
    return out;
}

SurvivalSolve single_patch_survival(double phi, const ControlFunction& c, int start,
                                    double tol, long initial_height, long max_height) {
    if (start < 1) throw std::invalid_argument("single_patch_survival: start must be >= 1");
    // N = 1 walk; absorption probabilities q(i) with both boundary
    // completions bracket the untruncated value.
    auto solve_q1 = [&](long H, double boundary) {
        // tridiagonal system on 1..H-1 after folding the holding mass:
        // (p_up + p_dn) q(i) = p_up q(i+1) + p_dn q(i-1), q(0)=1, q(H)=boundary
        const long n = H - 1;
        Eigen::VectorXd diag(n), rhs = Eigen::VectorXd::Zero(n);
        Eigen::VectorXd lower(n), upper(n);
        for (long i = 1; i <= n; ++i) {
            const double p_up = phi * c.acceptance(i);
            const double p_dn = 1.0;  // common factor (1+phi) cancels
            diag[i - 1] = p_up + p_dn;
            lower[i - 1] = -p_dn;
            upper[i - 1] = -p_up;
            if (i == 1) rhs[i - 1] += p_dn * 1.0;
            if (i == n) rhs[i - 1] += p_up * boundary;
        }
        // Thomas elimination
        for (long i = 1; i < n; ++i) {
            const double m = lower[i] / diag[i - 1];
            diag[i] -= m * upper[i - 1];
            rhs[i] -= m * rhs[i - 1];
        }
        Eigen::VectorXd q(n);
        q[n - 1] = rhs[n - 1] / diag[n - 1];
        for (long i = n - 2; i >= 0; --i) q[i] = (rhs[i] - upper[i] * q[i + 1]) / diag[i];
        return q[std::min<long>(start, n) - 1];
    };

    for (long H = std::max(initial_height, static_cast<long>(start) + 2); H <= max_height;
         H *= 2) {
        const double q_hi = solve_q1(H, 1.0);  // absorption upper bound
        const double q_lo = solve_q1(H, 0.0);  // absorption lower bound
        const double surv_lo = 1.0 - q_hi;
        const double surv_hi = 1.0 - q_lo;
        if (surv_hi - surv_lo < tol) {
            SurvivalSolve out;
            out.lower = surv_lo;
            out.upper = surv_hi;
            out.probability = 0.5 * (surv_lo + surv_hi);
            out.height = H;
            return out;
        }
    }
    throw std::runtime_error("single_patch_survival: bracket did not stabilize below max height");
}

double trial_vector_pmf(double lambda, double phi, int d, const std::vector<long>& counts) {
    if (d < 1) throw std::invalid_argument("trial_vector_pmf: d must be >= 1");
    if (static_cast<int>(counts.size()) != 2 * d)
        throw std::invalid_argument("trial_vector_pmf: need 2d counts");
    long total = 0;
    for (long n : counts) {
        if (n < 0) throw std::invalid_argument("trial_vector_pmf: negative count");
        total += n;
    }
    if (lambda == 0.0) return total == 0 ? 1.0 : 0.0;
    const double beta = 2.0 * d * lambda / (1.0 + phi);
    double log_p = std::lgamma(static_cast<double>(total) + 1.0) +
                   static_cast<double>(total) * std::log(lambda / (1.0 + phi)) -
                   (1.0 + static_cast<double>(total)) * std::log1p(beta);
    for (long n : counts) log_p -= std::lgamma(static_cast<double>(n) + 1.0);
    return std::exp(log_p);
}

std::vector<long> sample_trial_vector(double lambda, double phi, int d, Rng& rng) {
    std::vector<long> counts(static_cast<std::size_t>(2 * d), 0);
    if (lambda == 0.0) return counts;
    const double beta = 2.0 * d * lambda / (1.0 + phi);
    const double p_more = beta / (1.0 + beta);
    while (rng.u01() < p_more)
        counts[rng.below(static_cast<std::uint64_t>(2 * d))] += 1;
    return counts;
}

double subcritical_lambda_bound(double phi, const ControlFunction& c, int N, int d,
                                std::optional<long> height) {
    if (d < 1) throw std::invalid_argument("subcritical_lambda_bound: d must be >= 1");
    PatchState start(static_cast<std::size_t>(N), 0);
    start[0] = 1;
    const AbsorptionResult tau = expected_absorption_time(phi, c, N, start, height);
    return (1.0 + phi) / (2.0 * d * tau.value);
}

double min_mean_control(const ControlFunction& c, int N, int M) {
    if (N < 1 || M < 0) throw std::invalid_argument("min_mean_control: need N >= 1, M >= 0");
    const double inf = std::numeric_limits<double>::infinity();
    // g[m] = min sum of a(f(j)) over the sites used so far with mass m placed
    std::vector<double> g(static_cast<std::size_t>(M) + 1, inf), next(g.size());
    g[0] = 0.0;
    std::vector<double> a(static_cast<std::size_t>(M) + 1);
    for (int v = 0; v <= M; ++v) a[v] = c.acceptance(v);
    for (int site = 0; site < N; ++site) {
        std::fill(next.begin(), next.end(), inf);
        for (int m = 0; m <= M; ++m) {
            if (g[m] == inf) continue;
            for (int v = 0; v + m <= M; ++v)
                next[m + v] = std::min(next[m + v], g[m] + a[v]);
        }
        g.swap(next);
    }
    return g[static_cast<std::size_t>(M)] / static_cast<double>(N);
}

}  // namespace prp

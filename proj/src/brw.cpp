#include "prp/brw.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace prp {

namespace {

// Apply one step of "sum over lattice neighbors" within the box (outside
// treated as zero). Stride layout matches BoxField.
template <typename Scalar>
void neighbor_sum(const BoxField<Scalar>& in, BoxField<Scalar>& out) {
    const int d = in.d();
    const long R = in.radius();
    const long w = 2 * R + 1;
    const long size = in.size();
    for (long i = 0; i < size; ++i) out[i] = Scalar(0);
    long stride = 1;
    for (int k = 0; k < d; ++k) {
        for (long i = 0; i < size; ++i) {
            const long digit = (i / stride) % w;
            if (digit > 0) out[i] += in[i - stride];
            if (digit < w - 1) out[i] += in[i + stride];
        }
        stride *= w;
    }
}

}  // namespace

std::size_t PathCountTable::slot(int n, int k) const {
    // layers for (0,0), (1,0), (1,1), (2,0), ... : n(n+1)/2 + k
    return static_cast<std::size_t>(n) * (n + 1) / 2 + static_cast<std::size_t>(k);
}

const BigInt& PathCountTable::mu(int n, int k, const std::vector<int>& x) const {
    static const BigInt zero(0);
    if (n < 0 || n > n_max_ || k < 0 || k > n) return zero;
    for (int c : x)
        if (std::abs(c) > R_) return zero;
    return layers_[slot(n, k)].at(x);
}

const BoxField<BigInt>& PathCountTable::layer(int n, int k) const {
    if (n < 0 || n > n_max_ || k < 0 || k > n)
        throw std::out_of_range("path count layer out of range");
    return layers_[slot(n, k)];
}

PathCountTable::PathCountTable(int d, int n_max, long R)
    : d_(d), n_max_(n_max), R_(R), clipped_(R < n_max) {
    if (d < 1 || n_max < 0 || R < 0)
        throw std::invalid_argument("path_counts: need d >= 1, n_max >= 0, R >= 0");
    layers_.reserve(slot(n_max, n_max) + 1);
    for (int n = 0; n <= n_max; ++n)
        for (int k = 0; k <= n; ++k) layers_.emplace_back(d, R, BigInt(0));

    std::vector<int> origin(static_cast<std::size_t>(d), 0);
    layers_[slot(0, 0)].at(origin) = 1;

    BoxField<BigInt> moved(d, R, BigInt(0));
    for (int n = 1; n <= n_max; ++n) {
        for (int k = 0; k <= n; ++k) {
            auto& cur = layers_[slot(n, k)];
            // loop step from (n-1, k-1)
            if (k >= 1) {
                const auto& prev = layers_[slot(n - 1, k - 1)];
                for (long i = 0; i < cur.size(); ++i) cur[i] = prev[i];
            }
            // unit move from (n-1, k)
            if (k <= n - 1) {
                neighbor_sum(layers_[slot(n - 1, k)], moved);
                for (long i = 0; i < cur.size(); ++i) cur[i] += moved[i];
            }
        }
    }
}

PathCountTable path_counts(int d, int n_max, long R) { return {d, n_max, R}; }

std::vector<BoxField<BigInt>> simple_walk_counts(int d, int n_max, long R) {
    std::vector<BoxField<BigInt>> s;
    s.reserve(static_cast<std::size_t>(n_max) + 1);
    s.emplace_back(d, R, BigInt(0));
    std::vector<int> origin(static_cast<std::size_t>(d), 0);
    s[0].at(origin) = 1;
    for (int n = 1; n <= n_max; ++n) {
        s.emplace_back(d, R, BigInt(0));
        neighbor_sum(s[n - 1], s[n]);
    }
    return s;
}

BigInt binomial(long n, long k) {
    if (k < 0 || k > n) return 0;
    k = std::min(k, n - k);
    BigInt r = 1;
    for (long i = 1; i <= k; ++i) {
        r *= n - k + i;
        r /= i;
    }
    return r;
}

std::vector<BoxField<BigInt>> weighted_walk_counts(int d, int n_max, long R,
                                                   const BigInt& stay,
                                                   const BigInt& move) {
    std::vector<BoxField<BigInt>> w;
    w.reserve(static_cast<std::size_t>(n_max) + 1);
    w.emplace_back(d, R, BigInt(0));
    std::vector<int> origin(static_cast<std::size_t>(d), 0);
    w[0].at(origin) = 1;
    BoxField<BigInt> moved(d, R, BigInt(0));
    for (int n = 1; n <= n_max; ++n) {
        w.emplace_back(d, R, BigInt(0));
        neighbor_sum(w[n - 1], moved);
        for (long i = 0; i < w[n].size(); ++i)
            w[n][i] = stay * w[n - 1][i] + move * moved[i];
    }
    return w;
}

BoxField<double> lazy_walk_field(double phi, double lambda, int d, int n) {
    if (!(phi + 2 * d * lambda > 0.0))
        throw std::invalid_argument("lazy_walk: phi + 2d lambda must be > 0");
    if (n < 0) throw std::invalid_argument("lazy_walk: n must be >= 0");
    const double denom = phi + 2.0 * d * lambda;
    const double p_stay = phi / denom;
    const double p_move = lambda / denom;
    BoxField<double> cur(d, n, 0.0);
    std::vector<int> origin(static_cast<std::size_t>(d), 0);
    cur.at(origin) = 1.0;
    BoxField<double> moved(d, n, 0.0);
    for (int step = 1; step <= n; ++step) {
        neighbor_sum(cur, moved);
        for (long i = 0; i < cur.size(); ++i)
            cur[i] = p_stay * cur[i] + p_move * moved[i];
    }
    return cur;
}

double lazy_walk_prob(double phi, double lambda, int d, int n, const std::vector<int>& x) {
    long norm1 = 0;
    for (int c : x) norm1 += std::abs(c);
    if (norm1 > n) return 0.0;
    const BoxField<double> f = lazy_walk_field(phi, lambda, d, n);
    return f.at(x);
}

int brw_series_length(double phi, double lambda, int d, double t, double tol) {
    const double rate = (phi + 2.0 * d * lambda) * t;
    if (rate > 600.0)
        throw std::invalid_argument("brw series: (phi+2d lambda) t too large for the series");
    const double scale = std::exp((phi + 2.0 * d * lambda - 1.0) * t);
    // remaining Poisson mass after n terms, times the total-mass factor
    double w = std::exp(-rate);
    double cum = w;
    for (int n = 0; n < 100000; ++n) {
        if (scale * (1.0 - cum) <= tol) return n;
        w *= rate / (n + 1);
        cum += w;
    }
    throw std::runtime_error("brw series: length search failed");
}

ExpectationField brw_expectation_field(double phi, double lambda, int d, double t,
                                       int n_max, double tol, int exact_cutoff) {
    if (phi < 0 || lambda < 0) throw std::invalid_argument("brw: rates must be >= 0");
    if (t < 0) throw std::invalid_argument("brw: t must be >= 0");
    const double rate_sum = phi + 2.0 * d * lambda;

    ExpectationField out{BoxField<double>(d, std::max(n_max, 0), 0.0), 0.0, n_max};
    std::vector<int> origin(static_cast<std::size_t>(d), 0);
    if (rate_sum == 0.0 || t == 0.0) {
        out.field.at(origin) = std::exp(-t);
        out.tail_bound = 0.0;
        return out;
    }

    const double mu_rate = rate_sum * t;
    const double scale = std::exp((rate_sum - 1.0) * t);
    // certified remainder: scale * P(Poisson(mu_rate) > n_max)
    {
        double w = std::exp(-mu_rate);
        double cum = w;
        for (int n = 1; n <= n_max; ++n) {
            w *= mu_rate / n;
            cum += w;
        }
        out.tail_bound = scale * std::max(0.0, 1.0 - cum);
        if (out.tail_bound > tol) {
            std::ostringstream msg;
            msg << "brw expectation: Poisson tail " << out.tail_bound
                << " beyond n_max=" << n_max << " exceeds tolerance " << tol
                << "; increase n_max";
            throw std::runtime_error(msg.str());
        }
    }

    const int cutoff = std::min(exact_cutoff, n_max);

    // exact-table route for n <= cutoff (counts vanish beyond |x|_inf <= n,
    // so the table box only needs radius cutoff)
    if (cutoff >= 0) {
        const PathCountTable table(d, cutoff, cutoff);
        double tn_factor = std::exp(-t);  // t^n e^{-t} / n!
        for (int n = 0; n <= cutoff; ++n) {
            if (n > 0) tn_factor *= t / n;
            for (int k = 0; k <= n; ++k) {
                const double w_k = std::pow(phi, k) * std::pow(lambda, n - k);
                if (w_k == 0.0) continue;
                const auto& layer = table.layer(n, k);
                for (long i = 0; i < layer.size(); ++i) {
                    if (layer[i] == 0) continue;
                    out.field.at(layer.coords(i)) +=
                        static_cast<double>(layer[i]) * w_k * tn_factor;
                }
            }
        }
    }

    // normalized DP route for n > cutoff
    if (n_max > cutoff) {
        const double p_stay = phi / rate_sum;
        const double p_move = lambda / rate_sum;
        BoxField<double> walk(d, n_max, 0.0);
        walk.at(origin) = 1.0;
        BoxField<double> moved(d, n_max, 0.0);
        double pois = std::exp(-mu_rate);  // Poisson(mu_rate) pmf at n
        for (int n = 1; n <= n_max; ++n) {
            neighbor_sum(walk, moved);
            for (long i = 0; i < walk.size(); ++i)
                walk[i] = p_stay * walk[i] + p_move * moved[i];
            pois *= mu_rate / n;
            if (n <= cutoff) continue;
            const double w = scale * pois;
            for (long i = 0; i < walk.size(); ++i)
                if (walk[i] != 0.0) out.field[i] += w * walk[i];
        }
    }
    return out;
}

double brw_expectation(double phi, double lambda, int d, const std::vector<int>& x,
                       double t, double tol) {
    const int n_max = brw_series_length(phi, lambda, d, t, tol * 0.5);
    const ExpectationField f = brw_expectation_field(phi, lambda, d, t, n_max, tol);
    for (int c : x)
        if (std::abs(c) > f.field.radius()) return 0.0;
    return f.field.at(x);
}

OdeField brw_expectation_ode(double phi, double lambda, int d, long R, double t,
                             double dt, double tol) {
    if (R < 0) throw std::invalid_argument("brw ode: R must be >= 0");
    if (!(dt > 0.0)) throw std::invalid_argument("brw ode: dt must be > 0");
    BoxField<double> u(d, R, 0.0);
    std::vector<int> origin(static_cast<std::size_t>(d), 0);
    u.at(origin) = 1.0;

    const long size = u.size();
    const long w = 2 * R + 1;
    // rhs(u) = (phi - 1) u + lambda * neighbor_sum(u); boundary loss rate =
    // lambda * sum over edge sites of (number of off-box directions) * u.
    BoxField<double> nb(d, R, 0.0);
    auto rhs = [&](const std::vector<double>& v, std::vector<double>& dv, double& dloss) {
        BoxField<double> tmp(d, R, 0.0);
        tmp.data() = v;
        neighbor_sum(tmp, nb);
        dloss = 0.0;
        long stride = 1;
        for (int k = 0; k < d; ++k) {
            for (long i = 0; i < size; ++i) {
                const long digit = (i / stride) % w;
                if (digit == 0) dloss += v[i];
                if (digit == w - 1) dloss += v[i];
            }
            stride *= w;
        }
        dloss *= lambda;
        for (long i = 0; i < size; ++i)
            dv[i] = (phi - 1.0) * v[i] + lambda * nb[i];
    };

    std::vector<double> y = u.data();
    std::vector<double> k1(size), k2(size), k3(size), k4(size), tmp(size);
    double loss = 0.0;
    double l1, l2, l3, l4;
    const long n_steps = static_cast<long>(std::ceil(t / dt - 1e-12));
    double cur = 0.0;
    OdeField out{BoxField<double>(d, R, 0.0), 0.0, 0};
    for (long s = 0; s < n_steps; ++s) {
        const double h = std::min(dt, t - cur);
        rhs(y, k1, l1);
        for (long i = 0; i < size; ++i) tmp[i] = y[i] + 0.5 * h * k1[i];
        rhs(tmp, k2, l2);
        for (long i = 0; i < size; ++i) tmp[i] = y[i] + 0.5 * h * k2[i];
        rhs(tmp, k3, l3);
        for (long i = 0; i < size; ++i) tmp[i] = y[i] + h * k3[i];
        rhs(tmp, k4, l4);
        for (long i = 0; i < size; ++i)
            y[i] += (h / 6.0) * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
        loss += (h / 6.0) * (l1 + 2.0 * l2 + 2.0 * l3 + l4);
        cur += h;
        out.steps += 1;
    }
    if (loss > tol) {
        std::ostringstream msg;
        msg << "brw ode: boundary mass " << loss << " exceeds tolerance " << tol
            << " (R=" << R << ", t=" << t << "); enlarge the box";
        throw std::runtime_error(msg.str());
    }
    out.field.data() = std::move(y);
    out.boundary_loss = loss;
    return out;
}

}  // namespace prp

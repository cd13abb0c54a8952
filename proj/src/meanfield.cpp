#include "prp/meanfield.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "prp/stats.hpp"

namespace prp {

MeanFieldFlavor MeanFieldFlavor::logistic(long kappa) {
    MeanFieldFlavor f;
    f.control = ControlFunction::logistic(kappa);
    f.is_logistic = true;
    f.kappa = kappa;
    return f;
}

MeanFieldFlavor MeanFieldFlavor::selfreg(ControlFunction control) {
    MeanFieldFlavor f;
    f.control = std::move(control);
    return f;
}

double u0_logistic(double lambda, double phi, long kappa) {
    if (!(lambda > 0.0)) throw std::invalid_argument("u0_logistic: lambda must be > 0");
    if (phi < 0.0) throw std::invalid_argument("u0_logistic: phi must be >= 0");
    if (kappa < 1) throw std::invalid_argument("u0_logistic: kappa must be >= 1");
    // sum_{i=0}^{kappa-1} phi^i prod_{j=1}^{i} (1 - j/kappa), running product
    KahanSum sum;
    double term = 1.0;
    sum.add(term);
    for (long i = 1; i < kappa; ++i) {
        term *= phi * (1.0 - static_cast<double>(i) / static_cast<double>(kappa));
        sum.add(term);
    }
    return 1.0 / (lambda * sum.value());
}

U0Result u0_selfreg(double lambda, double phi, const ControlFunction& c,
                    SeriesBudget budget) {
    if (!(lambda > 0.0)) throw std::invalid_argument("u0_selfreg: lambda must be > 0");
    if (phi < 0.0) throw std::invalid_argument("u0_selfreg: phi must be >= 0");
    const CertifiedSum s = control_series(phi, c, budget);
    U0Result out;
    out.status = s.status;
    out.note = s.note;
    switch (s.status) {
        case SeriesStatus::Finite:
            out.value = 1.0 / (lambda * s.value);
            out.tail_bound = s.tail_bound / (lambda * s.value * s.value);
            break;
        case SeriesStatus::Infinite:
            out.value = 0.0;
            break;
        case SeriesStatus::Inconclusive:
            break;
    }
    return out;
}

StationaryResult stationary_profile(const MeanFieldFlavor& flavor, double lambda,
                                    double phi, const StationaryOptions& opts) {
    if (!(lambda > 0.0))
        throw std::invalid_argument("stationary_profile: lambda must be > 0");
    const ControlFunction& c = flavor.control;
    StationaryResult out;

    const U0Result u0r = u0_selfreg(lambda, phi, c, opts.budget);
    if (u0r.status == SeriesStatus::Inconclusive) {
        out.status = ProfileStatus::Inconclusive;
        out.note = "u0 series: " + u0r.note;
        return out;
    }
    out.u0 = u0r.value;
    if (u0r.status == SeriesStatus::Infinite || out.u0 >= 1.0) {
        out.status = ProfileStatus::NoEndemicEquilibrium;
        out.note = "stationary u0 >= 1";
        return out;
    }

    const CertifiedSum norm = profile_normalization_series(phi, c, opts.budget);
    if (norm.status != SeriesStatus::Finite) {
        out.status = ProfileStatus::Inconclusive;
        out.note = "normalization series: " + norm.note;
        return out;
    }
    const double u1 = (1.0 - out.u0) / norm.value;

    long K;
    if (flavor.is_logistic) {
        K = flavor.kappa;
    } else {
        // grow until the top concentration is negligible
        K = 8;
        double term = u1;
        long i = 1;
        auto top_at = [&](long k) {
            while (i < k) {
                ++i;
                term *= phi * c.acceptance(i - 1) * (static_cast<double>(i - 1) / i);
            }
            return term;
        };
        while (top_at(K) >= opts.profile_tail && K < opts.max_truncation) K += K / 2 + 8;
        if (top_at(K) >= opts.profile_tail) {
            out.status = ProfileStatus::Inconclusive;
            out.note = "profile tail does not reach the target below max truncation";
            return out;
        }
    }

    Eigen::VectorXd u = Eigen::VectorXd::Zero(K + 1);
    u[0] = out.u0;
    double term = u1;
    u[1] = term;
    for (long idx = 2; idx <= K; ++idx) {
        term *= phi * c.acceptance(idx - 1) * (static_cast<double>(idx - 1) / idx);
        u[idx] = term;
    }
    out.status = ProfileStatus::Endemic;
    out.profile = MeanFieldProfile{flavor, std::move(u)};
    return out;
}

Eigen::VectorXd meanfield_rhs(const MeanFieldFlavor& flavor, double lambda, double phi,
                              const Eigen::VectorXd& u) {
    const long K = u.size() - 1;
    if (K < 1) throw std::invalid_argument("meanfield_rhs: need at least states 0 and 1");
    const ControlFunction& c = flavor.control;

    double m = 0.0;
    for (long i = 1; i <= K; ++i) m += static_cast<double>(i) * u[i];

    Eigen::VectorXd du(K + 1);
    const double inflow0 = lambda * u[0] * m;
    du[0] = u[1] - inflow0;
    for (long i = 1; i <= K; ++i) {
        const double birth_in =
            i >= 2 ? static_cast<double>(i - 1) * c.acceptance(i - 1) * phi * u[i - 1] : 0.0;
        const double death_in = i < K ? static_cast<double>(i + 1) * u[i + 1] : 0.0;
        // top outflow clipped at the truncation: no birth out of state K
        const double birth_out =
            i < K ? static_cast<double>(i) * phi * c.acceptance(i) * u[i] : 0.0;
        const double death_out = static_cast<double>(i) * u[i];
        du[i] = birth_in + death_in - birth_out - death_out;
    }
    du[1] += inflow0;
    return du;
}

IntegrationResult integrate_meanfield(const MeanFieldFlavor& flavor, double lambda,
                                      double phi, Eigen::VectorXd u_init, double t_end,
                                      const IntegrationOptions& opts) {
    if (!(opts.dt > 0.0)) throw std::invalid_argument("integrate_meanfield: dt must be > 0");
    if (u_init.size() < 2)
        throw std::invalid_argument("integrate_meanfield: need at least states 0 and 1");
    if (flavor.is_logistic && u_init.size() != flavor.kappa + 1)
        throw std::invalid_argument("integrate_meanfield: logistic state must have kappa+1 entries");

    Eigen::VectorXd u = std::move(u_init);
    const double mass0 = u.sum();
    IntegrationResult out;
    out.mass_drift = 0.0;
    out.peak_top = u[u.size() - 1];

    const long n_steps = static_cast<long>(std::ceil(t_end / opts.dt - 1e-12));
    double t = 0.0;
    for (long s = 0; s < n_steps; ++s) {
        const double h = std::min(opts.dt, t_end - t);
        const Eigen::VectorXd k1 = meanfield_rhs(flavor, lambda, phi, u);
        const Eigen::VectorXd k2 = meanfield_rhs(flavor, lambda, phi, u + 0.5 * h * k1);
        const Eigen::VectorXd k3 = meanfield_rhs(flavor, lambda, phi, u + 0.5 * h * k2);
        const Eigen::VectorXd k4 = meanfield_rhs(flavor, lambda, phi, u + h * k3);
        u += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
        t += h;
        out.steps += 1;

        const double top = u[u.size() - 1];
        out.peak_top = std::max(out.peak_top, top);
        if (!flavor.is_logistic && top > opts.grow_threshold &&
            u.size() - 1 < opts.max_truncation) {
            const long K_new =
                std::min<long>(opts.max_truncation, (u.size() - 1) * 3 / 2 + 8);
            Eigen::VectorXd grown = Eigen::VectorXd::Zero(K_new + 1);
            grown.head(u.size()) = u;
            u = std::move(grown);
        }
        if (!flavor.is_logistic && u[u.size() - 1] > opts.leak_tolerance) {
            std::ostringstream msg;
            msg << "integrate_meanfield: truncation leak u_K = " << u[u.size() - 1]
                << " exceeds tolerance " << opts.leak_tolerance << " at t = " << t
                << " (K = " << u.size() - 1 << ")";
            throw std::runtime_error(msg.str());
        }
        out.mass_drift = std::max(out.mass_drift, std::abs(u.sum() - mass0));
        if (opts.sample_every > 0 && (s + 1) % opts.sample_every == 0)
            out.samples.emplace_back(t, u);
    }
    out.truncation = u.size() - 1;
    out.u = std::move(u);
    return out;
}

double u0_limit_logistic(double lambda, double phi) {
    if (!(lambda > 0.0)) throw std::invalid_argument("u0_limit_logistic: lambda must be > 0");
    return std::max(0.0, (1.0 - phi) / lambda);
}

U0Result u0_limit_selfreg(double lambda, double phi, const ControlFunction& c_infinity,
                          SeriesBudget budget) {
    return u0_selfreg(lambda, phi, c_infinity, budget);
}

}  // namespace prp

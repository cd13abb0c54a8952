#include "prp/series.hpp"

#include <cmath>
#include <stdexcept>

#include "prp/stats.hpp"

namespace prp {

namespace {

// Structural verdict about the tail of term ratios r_n = phi * a(n+1):
// they decrease monotonically to phi * c(inf) (clamped), exactly reaching
// it at tail_start for every family except square_ratio.
struct TailLaw {
    Rational limit_ratio;  // phi * min(c(inf), 1), exact
    bool reaches_limit;    // ratio becomes exactly the limit beyond tail_start
    long tail_start;
};

TailLaw tail_law(double phi, const ControlFunction& c) {
    Rational lim = c.limit_exact();
    if (lim > 1) lim = 1;
    return {Rational(phi) * lim, c.family() != ControlFamily::SquareRatio,
            c.tail_start()};
}

}  // namespace

CertifiedSum control_series(double phi, const ControlFunction& c, SeriesBudget budget) {
    if (phi < 0) throw std::invalid_argument("control_series: phi must be >= 0");
    CertifiedSum out;
    const TailLaw law = tail_law(phi, c);

    KahanSum sum;
    double term = c.acceptance(0);  // = 1
    sum.add(term);
    out.terms = 1;

    for (long n = 1; n <= budget.max_terms; ++n) {
        const double a = c.acceptance(n);
        term *= phi * a;
        if (term == 0.0) {
            out.status = SeriesStatus::Finite;
            out.value = sum.value();
            out.tail_bound = 0.0;
            out.note = "control reaches zero: finite sum";
            return out;
        }
        sum.add(term);
        out.terms = n + 1;

        if (n >= law.tail_start) {
            if (law.reaches_limit) {
                // ratio is exactly limit_ratio from here on
                if (law.limit_ratio >= 1) {
                    out.status = SeriesStatus::Infinite;
                    out.note = "tail ratio >= 1: terms do not vanish";
                    return out;
                }
                const double r = static_cast<double>(law.limit_ratio);
                out.status = SeriesStatus::Finite;
                out.value = sum.value() + term * r / (1.0 - r);
                out.tail_bound = 0.0;  // geometric tail summed in closed form
                out.note = "geometric tail";
                return out;
            }
            // square_ratio: ratios decrease strictly toward limit_ratio
            if (law.limit_ratio >= 1) {
                out.status = SeriesStatus::Infinite;
                out.note = "tail ratio stays above 1: terms bounded away from 0";
                return out;
            }
            const double r = phi * c.acceptance(n + 1);
            if (r < 1.0) {
                const double tail = term * r / (1.0 - r);
                if (tail <= budget.tol * std::max(1.0, std::abs(sum.value()))) {
                    out.status = SeriesStatus::Finite;
                    out.value = sum.value() + tail;
                    out.tail_bound = tail;
                    out.note = "ratio-bounded tail";
                    return out;
                }
            }
        }
    }
    out.status = SeriesStatus::Inconclusive;
    out.value = sum.value();
    out.note = "term budget exhausted before a certified tail";
    return out;
}

CertifiedSum profile_normalization_series(double phi, const ControlFunction& c,
                                          SeriesBudget budget) {
    if (phi < 0) throw std::invalid_argument("normalization series: phi must be >= 0");
    CertifiedSum out;
    const TailLaw law = tail_law(phi, c);

    KahanSum sum;
    double term = 1.0;  // i = 1: phi^0 / 1 * empty product
    sum.add(term);
    out.terms = 1;

    for (long i = 2; i <= budget.max_terms; ++i) {
        // U_i / U_{i-1} = phi * a(i-1) * (i-1)/i
        const double a = c.acceptance(i - 1);
        term *= phi * a * (static_cast<double>(i - 1) / static_cast<double>(i));
        if (term == 0.0) {
            out.status = SeriesStatus::Finite;
            out.value = sum.value();
            out.note = "control reaches zero: finite sum";
            return out;
        }
        sum.add(term);
        out.terms = i;

        if (i - 1 >= law.tail_start) {
            // U ratios are bounded by phi * a(i), itself <= the values below
            if (law.reaches_limit && law.limit_ratio >= 1) {
                // terms ~ C/i: still divergent when ratio limit is exactly 1,
                // divergent a fortiori above 1
                out.status = SeriesStatus::Infinite;
                out.note = "harmonic or growing tail";
                return out;
            }
            if (!law.reaches_limit && law.limit_ratio >= 1) {
                out.status = SeriesStatus::Infinite;
                out.note = "tail ratio stays above 1";
                return out;
            }
            const double r = phi * c.acceptance(i);
            if (r < 1.0) {
                const double tail = term * r / (1.0 - r);
                if (tail <= budget.tol * std::max(1.0, std::abs(sum.value()))) {
                    out.status = SeriesStatus::Finite;
                    out.value = sum.value() + tail;
                    out.tail_bound = tail;
                    out.note = "ratio-bounded tail";
                    return out;
                }
            }
        }
    }
    out.status = SeriesStatus::Inconclusive;
    out.value = sum.value();
    out.note = "term budget exhausted before a certified tail";
    return out;
}

}  // namespace prp

#ifndef PRP_STATS_HPP
#define PRP_STATS_HPP

#include <cstdint>
#include <utility>

namespace prp {

/// Compensated (Kahan) accumulator for long series sums.
class KahanSum {
public:
    void add(double x) {
        double y = x - comp_;
        double t = sum_ + y;
        comp_ = (t - sum_) - y;
        sum_ = t;
    }
    double value() const { return sum_; }

private:
    double sum_ = 0.0;
    double comp_ = 0.0;
};

/// Wilson score interval for a binomial proportion (z = 1.96 for 95%).
std::pair<double, double> wilson_interval(long successes, long trials,
                                          double z = 1.959963984540054);

/// Quantile of the chi-squared distribution with df degrees of freedom.
double chi_square_quantile(double df, double p);

}  // namespace prp

#endif  // PRP_STATS_HPP

#ifndef PRP_CONTROL_HPP
#define PRP_CONTROL_HPP

#include <boost/multiprecision/cpp_int.hpp>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace prp {

using Rational = boost::multiprecision::cpp_rational;

enum class ControlFamily { AllOne, Indicator, Logistic, Constant, Table, SquareRatio };

std::string family_name(ControlFamily f);

/// Self-regulation function c : N -> [0, 1], nonincreasing, c(0) = 1.
///
/// Families:
///   all_one      c == 1 (no regulation)
///   indicator(k) c = 1 on {0,...,k-1}, 0 beyond (hard capacity k)
///   logistic(k)  c(i) = max(0, 1 - i/k)
///   constant(p)  c(0) = 1, c(i) = p for i >= 1
///   table(v,t)   explicit rational values, constant tail t beyond them
///   square_ratio c(n) = s*(n+a)^2/(n+b)^2 with a >= b >= 1, exact rationals
///
/// The stored values are what eval()/prefix_product() return; acceptance()
/// clamps at 1 and is the value used wherever c acts as a probability.
/// Entry 0 of table/square_ratio may exceed 1 (it never enters any rate);
/// entries from index 1 on must be probabilities.
///
/// Instances are immutable and cheap to copy (shared representation).
class ControlFunction {
public:
    ControlFunction();  // all_one

    static ControlFunction all_one();
    static ControlFunction indicator(long kappa);
    static ControlFunction logistic(long kappa);
    static ControlFunction constant(double p);
    static ControlFunction table(std::vector<Rational> values, Rational tail);
    static ControlFunction table(const std::vector<double>& values, double tail);
    static ControlFunction square_ratio(long a, long b, Rational scale);

    /// Raw value c(i).
    double eval(long i) const;
    double operator()(long i) const { return eval(i); }

    /// min(c(i), 1): the acceptance probability actually applied to a birth.
    double acceptance(long i) const;

    /// Exact rational value of c(i).
    Rational exact(long i) const;

    /// Running product c!(n) = prod_{l=0}^{n} c(l) of raw values.
    double prefix_product(long n) const;
    Rational prefix_product_exact(long n) const;

    /// c(infinity) = lim c(i) (exists by monotonicity).
    double limit() const;
    Rational limit_exact() const;

    /// Smallest m such that for all i >= m, c(i) equals the tail law
    /// (the constant limit for all families except square_ratio, whose
    /// tail law is the quadratic ratio itself, so tail_start() is 0).
    long tail_start() const;

    /// Largest occupancy reachable under this control: the smallest k with
    /// c(k) = 0, if one exists.
    std::optional<long> max_occupancy() const;

    /// True if c(i) <= other(i) for the exact tail laws and all i (decided
    /// structurally on the rationals, not on a finite horizon).
    bool pointwise_leq(const ControlFunction& other) const;

    ControlFamily family() const;
    long kappa() const;                        // indicator/logistic
    double constant_p() const;                 // constant
    const std::vector<Rational>& table_values() const;
    Rational table_tail() const;
    long ratio_a() const;                      // square_ratio
    long ratio_b() const;
    Rational ratio_scale() const;

    bool operator==(const ControlFunction& other) const;

private:
    struct Impl;
    explicit ControlFunction(std::shared_ptr<const Impl> impl);
    std::shared_ptr<const Impl> impl_;
};

}  // namespace prp

#endif  // PRP_CONTROL_HPP

#ifndef PRP_BRW_HPP
#define PRP_BRW_HPP

#include <Eigen/Core>
#include <boost/multiprecision/cpp_int.hpp>
#include <vector>

namespace prp {

using BigInt = boost::multiprecision::cpp_int;

/// Values on the box {-R,...,R}^d, flat mixed-radix indexing.
template <typename Scalar>
class BoxField {
public:
    BoxField(int d, long R, Scalar init = Scalar(0))
        : d_(d), R_(R), data_(size_of(d, R), init) {}

    int d() const { return d_; }
    long radius() const { return R_; }
    long size() const { return static_cast<long>(data_.size()); }

    Scalar& operator[](long i) { return data_[i]; }
    const Scalar& operator[](long i) const { return data_[i]; }

    Scalar& at(const std::vector<int>& x) { return data_[index(x)]; }
    const Scalar& at(const std::vector<int>& x) const { return data_[index(x)]; }

    long index(const std::vector<int>& x) const {
        long idx = 0, stride = 1;
        const long w = 2 * R_ + 1;
        for (int k = 0; k < d_; ++k) {
            idx += (x[k] + R_) * stride;
            stride *= w;
        }
        return idx;
    }
    std::vector<int> coords(long idx) const {
        std::vector<int> x(static_cast<std::size_t>(d_));
        const long w = 2 * R_ + 1;
        for (int k = 0; k < d_; ++k) {
            x[k] = static_cast<int>(idx % w) - static_cast<int>(R_);
            idx /= w;
        }
        return x;
    }

    const std::vector<Scalar>& data() const { return data_; }
    std::vector<Scalar>& data() { return data_; }

    static long size_of(int d, long R) {
        long s = 1;
        for (int k = 0; k < d; ++k) s *= 2 * R + 1;
        return s;
    }

private:
    int d_;
    long R_;
    std::vector<Scalar> data_;
};

/// Exact counts mu^{(n,k)}(0,x) of length-n lattice paths from the origin
/// to x making exactly k loop (stay) steps.
class PathCountTable {
public:
    PathCountTable(int d, int n_max, long R);

    int d() const { return d_; }
    int n_max() const { return n_max_; }
    long radius() const { return R_; }
    bool clipped() const { return clipped_; }

    const BigInt& mu(int n, int k, const std::vector<int>& x) const;
    const BoxField<BigInt>& layer(int n, int k) const;

private:
    int d_;
    int n_max_;
    long R_;
    bool clipped_;
    std::vector<BoxField<BigInt>> layers_;  // (n,k) with k <= n, row-major by n
    std::size_t slot(int n, int k) const;
};

PathCountTable path_counts(int d, int n_max, long R);

/// Loopless simple-walk counts s^{(n)}(0,x).
std::vector<BoxField<BigInt>> simple_walk_counts(int d, int n_max, long R);

BigInt binomial(long n, long k);

/// Exact weighted walk counts: W^{(n)}(x) = sum_k mu^{(n,k)}(0,x) a^k b^{n-k}
/// by a direct DP with stay weight a and per-neighbor move weight b
/// (independent of the (n,k)-resolved table).
std::vector<BoxField<BigInt>> weighted_walk_counts(int d, int n_max, long R,
                                                   const BigInt& stay,
                                                   const BigInt& move);

/// n-step distribution of the lazy walk with stay probability
/// phi/(phi+2d lambda) and per-neighbor move probability lambda/(phi+2d lambda).
BoxField<double> lazy_walk_field(double phi, double lambda, int d, int n);
double lazy_walk_prob(double phi, double lambda, int d, int n, const std::vector<int>& x);

struct ExpectationField {
    BoxField<double> field;
    double tail_bound = 0.0;  // certified remainder of the truncated series
    int n_terms = 0;
};

/// Expected occupancy field of the branching random walk started from one
/// particle at the origin: Poisson-weighted series over loop-decorated
/// paths, exact integer path counts up to exact_cutoff and the normalized
/// probability DP beyond. Throws std::runtime_error when the Poisson tail
/// beyond n_max exceeds tol.
ExpectationField brw_expectation_field(double phi, double lambda, int d, double t,
                                       int n_max, double tol = 1e-9,
                                       int exact_cutoff = 24);

/// Single-point convenience (n_max chosen automatically for the tolerance).
double brw_expectation(double phi, double lambda, int d, const std::vector<int>& x,
                       double t, double tol = 1e-9);

/// Smallest n_max whose Poisson((phi+2d lambda) t) remainder, scaled by the
/// total-mass factor, is below tol.
int brw_series_length(double phi, double lambda, int d, double t, double tol);

struct OdeField {
    BoxField<double> field;
    double boundary_loss = 0.0;  // mass lost through the absorbing box edge
    long steps = 0;
};

/// Independent oracle: 4th-order integration of the expectation ODE
/// du/dt = (phi-1) u(x) + lambda sum_{y~x} u(y) on the box, absorbing
/// outside. Throws std::runtime_error when the boundary loss exceeds tol.
OdeField brw_expectation_ode(double phi, double lambda, int d, long R, double t,
                             double dt = 1e-3, double tol = 1e-6);

}  // namespace prp

#endif  // PRP_BRW_HPP

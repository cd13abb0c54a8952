#ifndef PRP_SUM_TREE_HPP
#define PRP_SUM_TREE_HPP

#include <cassert>
#include <cstddef>
#include <vector>

namespace prp {

/// Flat binary sum tree over nonnegative weights: O(log n) update and
/// proportional selection. Leaves sit at [cap_, cap_ + n); internal node i
/// holds the sum of its two children.
class SumTree {
public:
    explicit SumTree(std::size_t n = 0) { resize(n); }

    void resize(std::size_t n) {
        n_ = n;
        cap_ = 1;
        while (cap_ < n_) cap_ <<= 1;
        node_.assign(2 * cap_, 0.0);
    }

    std::size_t size() const { return n_; }

    double total() const { return node_[1]; }

    double leaf(std::size_t i) const { return node_[cap_ + i]; }

    void set(std::size_t i, double w) {
        assert(i < n_ && w >= 0.0);
        std::size_t k = cap_ + i;
        node_[k] = w;
        for (k >>= 1; k >= 1; k >>= 1) node_[k] = node_[2 * k] + node_[2 * k + 1];
    }

    /// Index of the leaf containing prefix position u in [0, total()).
    std::size_t sample(double u) const {
        std::size_t k = 1;
        while (k < cap_) {
            k <<= 1;
            if (u >= node_[k]) {
                u -= node_[k];
                k += 1;
            }
        }
        std::size_t i = k - cap_;
        // guard against roundoff walking past the last positive leaf
        if (i >= n_ || node_[k] <= 0.0) {
            i = n_;
            while (i-- > 0)
                if (node_[cap_ + i] > 0.0) break;
        }
        return i;
    }

    /// Recompute all internal sums from the leaves (drift control).
    void rebuild() {
        for (std::size_t k = cap_ - 1; k >= 1; --k)
            node_[k] = node_[2 * k] + node_[2 * k + 1];
    }

private:
    std::size_t n_ = 0;
    std::size_t cap_ = 1;
    std::vector<double> node_;
};

}  // namespace prp

#endif  // PRP_SUM_TREE_HPP

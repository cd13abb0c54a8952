#ifndef PRP_GEOMETRY_HPP
#define PRP_GEOMETRY_HPP

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace prp {

enum class Boundary { Periodic, Absorbing };

std::string boundary_name(Boundary b);
Boundary boundary_from_string(const std::string& s);

/// Finite box {-L,...,L}^d of patches, each a complete graph on N sites.
/// Patch indices are mixed-radix over the box; site index = patch*N + r.
/// Under periodic boundary every patch has exactly 2d distinct neighbors
/// (requires box width >= 3); under absorbing boundary edge patches simply
/// have fewer, and birth attempts off the box are lost.
class Geometry {
public:
    Geometry(int d, int half_width, int N, Boundary boundary);

    int d() const { return d_; }
    int half_width() const { return half_width_; }
    int N() const { return N_; }
    Boundary boundary() const { return boundary_; }

    int width() const { return 2 * half_width_ + 1; }
    long patch_count() const { return patch_count_; }
    long site_count() const { return patch_count_ * N_; }

    /// Neighboring patches of p at Z^d-distance exactly 1 (2d slots; -1
    /// marks an off-box direction under the absorbing boundary).
    std::span<const long> neighbors(long p) const {
        return {neighbors_.data() + 2 * static_cast<std::size_t>(d_) * p,
                static_cast<std::size_t>(2 * d_)};
    }

    long origin_patch() const { return origin_; }
    long site_index(long patch, int r) const { return patch * N_ + r; }

    std::vector<int> patch_coords(long p) const;
    long patch_at(const std::vector<int>& coords) const;

    bool operator==(const Geometry& o) const {
        return d_ == o.d_ && half_width_ == o.half_width_ && N_ == o.N_ &&
               boundary_ == o.boundary_;
    }

private:
    int d_;
    int half_width_;
    int N_;
    Boundary boundary_;
    long patch_count_;
    long origin_;
    std::vector<long> neighbors_;
};

}  // namespace prp

#endif  // PRP_GEOMETRY_HPP

#include "prp/geometry.hpp"

#include <stdexcept>

namespace prp {

std::string boundary_name(Boundary b) {
    return b == Boundary::Periodic ? "periodic" : "absorbing";
}

Boundary boundary_from_string(const std::string& s) {
    if (s == "periodic") return Boundary::Periodic;
    if (s == "absorbing") return Boundary::Absorbing;
    throw std::invalid_argument("unknown boundary: " + s);
}

Geometry::Geometry(int d, int half_width, int N, Boundary boundary)
    : d_(d), half_width_(half_width), N_(N), boundary_(boundary) {
    if (d < 1) throw std::invalid_argument("geometry: d must be >= 1");
    if (N < 1) throw std::invalid_argument("geometry: N must be >= 1");
    if (half_width < 0) throw std::invalid_argument("geometry: half width must be >= 0");
    if (boundary == Boundary::Periodic && half_width < 1)
        throw std::invalid_argument("geometry: periodic boundary needs box width >= 3");

    const long w = width();
    patch_count_ = 1;
    for (int k = 0; k < d; ++k) {
        if (patch_count_ > (1L << 40) / w)
            throw std::invalid_argument("geometry: box too large");
        patch_count_ *= w;
    }

    // origin = all coordinates zero
    std::vector<int> zero(static_cast<std::size_t>(d), 0);
    long stride = 1;
    origin_ = 0;
    for (int k = 0; k < d; ++k) {
        origin_ += stride * half_width_;
        stride *= w;
    }

    neighbors_.assign(static_cast<std::size_t>(2 * d) * patch_count_, -1);
    std::vector<long> strides(static_cast<std::size_t>(d));
    strides[0] = 1;
    for (int k = 1; k < d; ++k) strides[k] = strides[k - 1] * w;

    for (long p = 0; p < patch_count_; ++p) {
        for (int k = 0; k < d; ++k) {
            const long digit = (p / strides[k]) % w;
            for (int dir = 0; dir < 2; ++dir) {
                long nd = digit + (dir == 0 ? -1 : 1);
                long q;
                if (nd < 0 || nd >= w) {
                    if (boundary_ == Boundary::Absorbing) {
                        q = -1;
                    } else {
                        nd = (nd + w) % w;
                        q = p + (nd - digit) * strides[k];
                    }
                } else {
                    q = p + (nd - digit) * strides[k];
                }
                neighbors_[static_cast<std::size_t>(2 * d) * p + 2 * k + dir] = q;
            }
        }
    }
}

std::vector<int> Geometry::patch_coords(long p) const {
    std::vector<int> c(static_cast<std::size_t>(d_));
    const long w = width();
    for (int k = 0; k < d_; ++k) {
        c[k] = static_cast<int>(p % w) - half_width_;
        p /= w;
    }
    return c;
}

long Geometry::patch_at(const std::vector<int>& coords) const {
    if (static_cast<int>(coords.size()) != d_)
        throw std::invalid_argument("geometry: coordinate dimension mismatch");
    const long w = width();
    long p = 0;
    long stride = 1;
    for (int k = 0; k < d_; ++k) {
        const long digit = coords[k] + half_width_;
        if (digit < 0 || digit >= w) throw std::invalid_argument("geometry: coordinate out of box");
        p += digit * stride;
        stride *= w;
    }
    return p;
}

}  // namespace prp

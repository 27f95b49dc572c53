#pragma once

#include <cstddef>
#include <stdexcept>
#include <utility>
#include <vector>

namespace mpdata {

/// Flat 3D storage with a halo rim on every side, x fastest.
///
/// Logical indices run over [-halo, n+halo) per axis; (0,0,0) is the first
/// interior cell. Face-centred quantities reuse the same container with an
/// extent of n+1 along their own axis.
template <class T>
class Array3 {
public:
    Array3() = default;

    Array3(int nx, int ny, int nz, int halo)
        : nx_(nx), ny_(ny), nz_(nz), halo_(halo),
          sy_(nx + 2 * halo),
          sz_(static_cast<std::ptrdiff_t>(nx + 2 * halo) * (ny + 2 * halo)),
          store_(static_cast<std::size_t>(nx + 2 * halo) * (ny + 2 * halo) * (nz + 2 * halo), T(0))
    {
        if (nx < 1 || ny < 1 || nz < 1 || halo < 0)
            throw std::invalid_argument("Array3: extents must be positive and halo >= 0");
        origin_ = store_.data() + halo * (1 + sy_ + sz_);
    }

    Array3(const Array3& o)
        : nx_(o.nx_), ny_(o.ny_), nz_(o.nz_), halo_(o.halo_), sy_(o.sy_), sz_(o.sz_),
          store_(o.store_)
    {
        origin_ = store_.empty() ? nullptr : store_.data() + halo_ * (1 + sy_ + sz_);
    }

    Array3& operator=(const Array3& o)
    {
        if (this != &o) {
            Array3 tmp(o);
            swap(*this, tmp);
        }
        return *this;
    }

    // moves keep the underlying buffer, so the origin pointer stays valid
    Array3(Array3&&) noexcept = default;
    Array3& operator=(Array3&&) noexcept = default;

    int nx() const { return nx_; }
    int ny() const { return ny_; }
    int nz() const { return nz_; }
    int halo() const { return halo_; }

    T& operator()(int i, int j, int k) { return origin_[i + j * sy_ + k * sz_]; }
    const T& operator()(int i, int j, int k) const { return origin_[i + j * sy_ + k * sz_]; }

    void fill(T value)
    {
        for (auto& v : store_) v = value;
    }

    /// Raw storage, halo included. Iteration order is z, then y, then x.
    std::vector<T>& raw() { return store_; }
    const std::vector<T>& raw() const { return store_; }

    friend void swap(Array3& a, Array3& b) noexcept
    {
        std::swap(a.nx_, b.nx_);
        std::swap(a.ny_, b.ny_);
        std::swap(a.nz_, b.nz_);
        std::swap(a.halo_, b.halo_);
        std::swap(a.sy_, b.sy_);
        std::swap(a.sz_, b.sz_);
        std::swap(a.store_, b.store_);
        std::swap(a.origin_, b.origin_);
    }

private:
    int nx_ = 0, ny_ = 0, nz_ = 0, halo_ = 0;
    std::ptrdiff_t sy_ = 0, sz_ = 0;
    std::vector<T> store_;
    T* origin_ = nullptr;
};

} // namespace mpdata

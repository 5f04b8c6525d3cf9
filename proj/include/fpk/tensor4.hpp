#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <vector>

namespace fpk {

// Dense rank-4 tensor on a d-dimensional space, flat row-major storage.
class Tensor4 {
public:
    Tensor4() = default;
    explicit Tensor4(int d) : d_(d), a_(static_cast<std::size_t>(d) * d * d * d, 0.0) {}

    int dim() const { return d_; }

    double& operator()(int i, int j, int k, int m) { return a_[idx(i, j, k, m)]; }
    double operator()(int i, int j, int k, int m) const { return a_[idx(i, j, k, m)]; }

    double max_abs() const {
        double r = 0.0;
        for (double v : a_) r = std::max(r, std::abs(v));
        return r;
    }

    const std::vector<double>& data() const { return a_; }

private:
    std::size_t idx(int i, int j, int k, int m) const {
        return ((static_cast<std::size_t>(i) * d_ + j) * d_ + k) * d_ + m;
    }

    int d_ = 0;
    std::vector<double> a_;
};

}  // namespace fpk

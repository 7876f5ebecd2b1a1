#pragma once

#include <Eigen/Dense>

#include <complex>
#include <cstddef>
#include <vector>

#include "apharm/group.hpp"

namespace apharm {

inline constexpr double kRankTolerance = 1e-8;

// Number of singular values above rel_tol * (largest singular value).
inline std::size_t numerical_rank(const Eigen::MatrixXcd& m, double rel_tol = kRankTolerance) {
    if (m.size() == 0) return 0;
    const Eigen::JacobiSVD<Eigen::MatrixXcd> svd(m);
    const auto& s = svd.singularValues();
    if (s.size() == 0 || s[0] == 0.0) return 0;
    std::size_t r = 0;
    for (Eigen::Index i = 0; i < s.size(); ++i) {
        if (s[i] > rel_tol * s[0]) ++r;
    }
    return r;
}

// One row per function.
inline Eigen::MatrixXcd rows_of(const std::vector<GroupFunction>& fs) {
    if (fs.empty()) return {};
    Eigen::MatrixXcd m(static_cast<Eigen::Index>(fs.size()), static_cast<Eigen::Index>(fs.front().size()));
    for (std::size_t i = 0; i < fs.size(); ++i) {
        for (std::size_t j = 0; j < fs[i].size(); ++j)
            m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = fs[i].values[j];
    }
    return m;
}

inline Eigen::MatrixXcd stack(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b) {
    Eigen::MatrixXcd m(a.rows() + b.rows(), a.cols());
    m << a, b;
    return m;
}

// Row spaces of a and b coincide (numerically).
inline bool same_row_space(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b, double rel_tol = kRankTolerance) {
    const std::size_t ra = numerical_rank(a, rel_tol);
    return ra == numerical_rank(b, rel_tol) && ra == numerical_rank(stack(a, b), rel_tol);
}

} // namespace apharm

#pragma once

// Irreducible characters of a finite group, obtained as the morphisms of the
// center Z of the group algebra: joint eigenvectors of the commuting
// class-sum multiplication operators.

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <random>
#include <string>
#include <vector>

#include "apharm/error.hpp"
#include "apharm/group.hpp"
#include "apharm/rational.hpp"

namespace apharm {

inline constexpr std::uint64_t kDefaultSeed = 0x5eed;
inline constexpr int kCharacterRetryBudget = 8;
inline constexpr double kDegreeRoundingTolerance = 1e-6;

// Structure constants of the class algebra. counts(i, j, k) is the number of
// pairs (x, y) in C_i x C_j with x y = z for a fixed z in C_k; the normalized
// constants c_ijk = counts / n describe 1_{C_i} * 1_{C_j} = sum_k c_ijk 1_{C_k}
// under normalized convolution.
struct ClassAlgebra {
    std::size_t classes = 0;
    std::size_t group_order = 0;
    std::vector<std::int64_t> counts;

    std::int64_t count(std::size_t i, std::size_t j, std::size_t k) const {
        return counts[(i * classes + j) * classes + k];
    }
    Rational c(std::size_t i, std::size_t j, std::size_t k) const {
        return Rational(count(i, j, k), static_cast<std::int64_t>(group_order));
    }
};

inline ClassAlgebra class_algebra_structure(const FiniteGroup& G, const ConjugacyClasses& cc) {
    const std::size_t k = cc.size();
    ClassAlgebra alg{k, G.order(), std::vector<std::int64_t>(k * k * k, 0)};
    for (std::size_t l = 0; l < k; ++l) {
        const std::size_t z = cc.classes[l].front();
        for (std::size_t x = 0; x < G.order(); ++x) {
            const std::size_t y = G.mul(G.inverse(x), z);  // x y = z
            const std::size_t i = cc.class_of[x], j = cc.class_of[y];
            ++alg.counts[(i * k + j) * k + l];
        }
    }
    return alg;
}

struct CharacterTable {
    GroupPtr group;
    ConjugacyClasses classes;
    std::vector<std::vector<Complex>> characters;  // chi_sigma(C), trace characters
    std::vector<int> degrees;
    std::vector<std::vector<Complex>> morphisms;   // omega_sigma(C) = |C| chi_sigma(C) / d_sigma

    std::size_t size() const { return characters.size(); }

    Complex value(std::size_t sigma, std::size_t x) const { return characters[sigma][classes.class_of[x]]; }

    // chi_sigma lifted to a class function on G.
    GroupFunction character_function(std::size_t sigma) const {
        GroupFunction f = GroupFunction::zero(group);
        for (std::size_t x = 0; x < f.size(); ++x) f.values[x] = value(sigma, x);
        return f;
    }
};

namespace detail {

inline std::vector<double> rounded_key(const std::vector<Complex>& row) {
    std::vector<double> key;
    for (const auto& v : row) {
        key.push_back(-std::round(v.real() * 1e6));
        key.push_back(-std::round(v.imag() * 1e6));
    }
    return key;
}

// One diagonalization attempt; returns false on clustering or a failed
// residual check against the individual class-sum matrices.
inline bool try_joint_eigenvectors(const std::vector<Eigen::MatrixXd>& ops, std::mt19937_64& rng, double cluster_tol,
                                   std::vector<Eigen::VectorXcd>& out) {
    const auto k = static_cast<Eigen::Index>(ops.front().rows());
    std::normal_distribution<double> normal;
    Eigen::MatrixXd combo = Eigen::MatrixXd::Zero(k, k);
    for (const auto& op : ops) combo += normal(rng) * op;

    Eigen::EigenSolver<Eigen::MatrixXd> solver(combo);
    if (solver.info() != Eigen::Success) return false;
    const Eigen::VectorXcd lambda = solver.eigenvalues();
    const double scale = std::max(1.0, lambda.cwiseAbs().maxCoeff());
    for (Eigen::Index a = 0; a < k; ++a) {
        for (Eigen::Index b = a + 1; b < k; ++b) {
            if (std::abs(lambda[a] - lambda[b]) <= cluster_tol * scale) return false;
        }
    }

    out.clear();
    const Eigen::MatrixXcd vectors = solver.eigenvectors();
    for (Eigen::Index a = 0; a < k; ++a) {
        Eigen::VectorXcd v = vectors.col(a);
        if (std::abs(v[0]) < 1e-12) return false;
        v /= v[0];
        // v is an eigenvector of every class-sum operator with eigenvalue v[i].
        for (std::size_t i = 0; i < ops.size(); ++i) {
            const Eigen::VectorXcd r = ops[i].cast<Complex>() * v - v[static_cast<Eigen::Index>(i)] * v;
            if (r.norm() > 1e-7 * std::max(1.0, ops[i].norm()) * v.norm()) return false;
        }
        out.push_back(std::move(v));
    }
    return true;
}

} // namespace detail

inline CharacterTable compute_characters(const GroupPtr& group, std::uint64_t seed = kDefaultSeed) {
    const FiniteGroup& G = *group;
    CharacterTable table;
    table.group = group;
    table.classes = conjugacy_classes(G);
    const ConjugacyClasses& cc = table.classes;
    const std::size_t k = cc.size();
    const double n = static_cast<double>(G.order());
    const ClassAlgebra alg = class_algebra_structure(G, cc);

    // (A_i)_{jl} = counts(i, j, l): omega is a right eigenvector of A_i with
    // eigenvalue omega_i.
    std::vector<Eigen::MatrixXd> ops(k, Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(k)));
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < k; ++j)
            for (std::size_t l = 0; l < k; ++l)
                ops[i](static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(l)) = static_cast<double>(alg.count(i, j, l));

    std::mt19937_64 rng(seed);
    std::vector<Eigen::VectorXcd> omegas;
    double cluster_tol = 1e-8;
    bool ok = k == 1;
    if (ok) omegas = {Eigen::VectorXcd::Ones(1)};
    for (int attempt = 0; attempt < kCharacterRetryBudget && !ok; ++attempt, cluster_tol *= 0.5)
        ok = detail::try_joint_eigenvectors(ops, rng, cluster_tol, omegas);
    if (!ok) {
        throw computation_error("DegeneracySplitFailure",
                                "class-sum eigenspaces could not be separated within the retry budget");
    }

    struct Row {
        int degree;
        std::vector<Complex> chi, omega;
    };
    std::vector<Row> rows;
    for (const auto& v : omegas) {
        double weight = 0.0;
        for (std::size_t c = 0; c < k; ++c)
            weight += std::norm(v[static_cast<Eigen::Index>(c)]) / static_cast<double>(cc.classes[c].size());
        const double d = std::sqrt(n / weight);
        const double rounded = std::round(d);
        if (std::abs(d - rounded) >= kDegreeRoundingTolerance || rounded < 1.0) {
            throw computation_error("DegreeRoundingFailure",
                                    "character degree " + std::to_string(d) + " is not close to an integer");
        }
        Row row{static_cast<int>(rounded), {}, {}};
        for (std::size_t c = 0; c < k; ++c) {
            const Complex w = v[static_cast<Eigen::Index>(c)];
            row.omega.push_back(w);
            row.chi.push_back(rounded * w / static_cast<double>(cc.classes[c].size()));
        }
        rows.push_back(std::move(row));
    }

    // Canonical order: degree, then descending rounded trace values (puts the
    // trivial character first).
    std::sort(rows.begin(), rows.end(), [](const Row& a, const Row& b) {
        if (a.degree != b.degree) return a.degree < b.degree;
        return detail::rounded_key(a.chi) < detail::rounded_key(b.chi);
    });
    for (auto& r : rows) {
        table.degrees.push_back(r.degree);
        table.characters.push_back(std::move(r.chi));
        table.morphisms.push_back(std::move(r.omega));
    }
    return table;
}

// Pontryagin dual of a finite abelian group.
struct DualGroup {
    GroupPtr group;
    std::vector<std::vector<Complex>> characters;  // characters[a][x] = alpha_a(x)
    std::vector<std::vector<std::size_t>> table;   // alpha_a * alpha_b = alpha_table[a][b]
};

inline DualGroup dual_group(const GroupPtr& group, std::uint64_t seed = kDefaultSeed) {
    if (!group->is_abelian()) throw computation_error("NotAbelian", "dual group requires an abelian group");
    const CharacterTable ct = compute_characters(group, seed);
    const std::size_t n = group->order();

    DualGroup dual;
    dual.group = group;
    for (std::size_t a = 0; a < ct.size(); ++a) {
        std::vector<Complex> row(n);
        for (std::size_t x = 0; x < n; ++x) row[x] = ct.value(a, x);
        dual.characters.push_back(std::move(row));
    }

    dual.table.assign(n, std::vector<std::size_t>(n));
    for (std::size_t a = 0; a < n; ++a) {
        for (std::size_t b = 0; b < n; ++b) {
            std::size_t match = n;
            for (std::size_t c = 0; c < n && match == n; ++c) {
                double dist = 0.0;
                for (std::size_t x = 0; x < n; ++x)
                    dist = std::max(dist, std::abs(dual.characters[a][x] * dual.characters[b][x] - dual.characters[c][x]));
                if (dist < 1e-6) match = c;
            }
            if (match == n) throw computation_error("DualClosureFailure", "character product is not a character");
            dual.table[a][b] = match;
        }
    }
    return dual;
}

// min over distinct characters of sup_x |alpha(x) - beta(x)|; infinity for
// the trivial group.
inline double verify_dual_discreteness(const DualGroup& dual) {
    double best = std::numeric_limits<double>::infinity();
    const auto& rows = dual.characters;
    for (std::size_t a = 0; a < rows.size(); ++a) {
        for (std::size_t b = a + 1; b < rows.size(); ++b) {
            double sup = 0.0;
            for (std::size_t x = 0; x < rows[a].size(); ++x) sup = std::max(sup, std::abs(rows[a][x] - rows[b][x]));
            best = std::min(best, sup);
        }
    }
    return best;
}

} // namespace apharm

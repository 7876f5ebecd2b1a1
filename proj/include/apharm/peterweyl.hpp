#pragma once

// Isotypic decomposition of the group algebra of a finite group: the
// central idempotents e_sigma = d_sigma chi_sigma, exact reconstruction
// f = sum_sigma e_sigma * f, Plancherel, the positive central expansion, and
// rank checks for (minimal) almost invariance of translate spans.

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <random>
#include <span>
#include <vector>

#include "apharm/characters.hpp"
#include "apharm/error.hpp"
#include "apharm/group.hpp"
#include "apharm/linalg.hpp"

namespace apharm {

enum class Side { left, right };

struct IsotypicPart {
    std::size_t sigma = 0;
    GroupFunction part;
};

struct Decomposition {
    std::vector<IsotypicPart> components;
    double residual = 0.0;  // || f - sum of parts ||_inf
};

struct PlancherelSides {
    double lhs = 0.0;  // (f * f~)(e)
    double rhs = 0.0;  // sum_sigma |(f, chi_sigma)|^2
};

struct ExpansionTerm {
    std::size_t sigma = 0;
    double a = 0.0;
};

namespace detail {

inline void require_table_for(const GroupFunction& f, const CharacterTable& table) {
    if (!(f.group == table.group || *f.group == *table.group)) throw group_mismatch();
}

inline void require_central(const GroupFunction& f) {
    if (!is_central(f, kDefaultTolerance)) throw computation_error("NotCentral", "function is not central");
}

} // namespace detail

// e_sigma = d_sigma chi_sigma as a function on G.
inline GroupFunction central_idempotent(const CharacterTable& table, std::size_t sigma) {
    return static_cast<double>(table.degrees.at(sigma)) * table.character_function(sigma);
}

inline GroupFunction isotypic_project(const GroupFunction& f, const CharacterTable& table, std::size_t sigma) {
    detail::require_table_for(f, table);
    if (sigma >= table.size()) throw invalid_input("character index out of range");
    return convolve(central_idempotent(table, sigma), f);
}

inline Decomposition decompose(const GroupFunction& f, const CharacterTable& table) {
    detail::require_table_for(f, table);
    Decomposition d;
    GroupFunction total = GroupFunction::zero(f.group);
    for (std::size_t sigma = 0; sigma < table.size(); ++sigma) {
        GroupFunction part = isotypic_project(f, table, sigma);
        total = total + part;
        d.components.push_back({sigma, std::move(part)});
    }
    d.residual = sup_distance(f, total);
    return d;
}

inline PlancherelSides plancherel_check(const GroupFunction& f, const CharacterTable& table) {
    detail::require_table_for(f, table);
    detail::require_central(f);
    PlancherelSides s;
    s.lhs = convolve(f, involute(f)).values[f.group->identity()].real();
    for (std::size_t sigma = 0; sigma < table.size(); ++sigma)
        s.rhs += std::norm(inner_product(f, table.character_function(sigma)));
    return s;
}

// f = sum_sigma a_sigma psi_sigma with psi_sigma = chi_sigma / d_sigma, the
// characters normalized to 1 at the identity, and
// a_sigma = (f, psi_sigma) / ||psi_sigma||^2 = d_sigma (f, chi_sigma).
// Then f(e) = sum_sigma a_sigma. Requires every (f, chi_sigma) >= 0.
// Only nonzero coefficients are returned.
inline std::vector<ExpansionTerm> positive_central_expansion(const GroupFunction& f, const CharacterTable& table) {
    detail::require_table_for(f, table);
    detail::require_central(f);
    constexpr double tol = 1e-9;
    std::vector<ExpansionTerm> out;
    for (std::size_t sigma = 0; sigma < table.size(); ++sigma) {
        const Complex fhat = inner_product(f, table.character_function(sigma));
        if (fhat.real() < -tol || std::abs(fhat.imag()) > tol) {
            throw computation_error("NegativeSpectrum",
                                    "coefficient for character " + std::to_string(sigma) + " is not nonnegative");
        }
        const double a = table.degrees[sigma] * fhat.real();
        if (std::abs(a) > 1e-12 * std::max(1.0, sup_norm(f))) out.push_back({sigma, a});
    }
    return out;
}

// psi_sigma = chi_sigma / d_sigma
inline GroupFunction normalized_character_function(const CharacterTable& table, std::size_t sigma) {
    return (1.0 / table.degrees.at(sigma)) * table.character_function(sigma);
}

inline std::vector<GroupFunction> translates(const GroupFunction& f, Side side) {
    std::vector<GroupFunction> out;
    out.reserve(f.size());
    for (std::size_t s = 0; s < f.size(); ++s)
        out.push_back(side == Side::left ? left_translate(s, f) : right_translate(s, f));
    return out;
}

inline std::size_t translate_span_rank(const GroupFunction& f, Side side) {
    return numerical_rank(rows_of(translates(f, side)));
}

// Span of {delta_g * f} (left) or {f * delta_g} (right): the one-sided ideal
// generated by f.
inline std::vector<GroupFunction> ideal_generators(const GroupFunction& f, Side side) {
    std::vector<GroupFunction> out;
    out.reserve(f.size());
    for (std::size_t g = 0; g < f.size(); ++g) {
        const GroupFunction d = GroupFunction::delta(f.group, g);
        out.push_back(side == Side::left ? convolve(d, f) : convolve(f, d));
    }
    return out;
}

// Probabilistic test that every nonzero translation-invariant subspace of
// A = span{translates of f} is A itself: each candidate g in A (explicit
// candidates first, then `trials` random elements) must generate all of A.
inline bool minimality_check(const GroupFunction& f, Side side, int trials, std::uint64_t seed = kDefaultSeed,
                             std::span<const GroupFunction> candidates = {}) {
    if (trials < 1) throw invalid_input("trials must be at least 1");
    const std::vector<GroupFunction> basis = translates(f, side);
    const Eigen::MatrixXcd span_a = rows_of(basis);
    const std::size_t rank_a = numerical_rank(span_a);
    if (rank_a == 0) throw invalid_input("minimality is undefined for the zero function");

    // g lies in A and A is translation invariant, so span{translates of g} is
    // a subspace of A; equal rank means equal space.
    auto generates_a = [&](const GroupFunction& g) { return numerical_rank(rows_of(translates(g, side))) == rank_a; };

    for (const auto& g : candidates) {
        require_same_group(f, g);
        if (sup_norm(g) == 0.0) throw invalid_input("minimality candidate is zero");
        if (numerical_rank(stack(span_a, rows_of({g}))) != rank_a)
            throw invalid_input("minimality candidate is outside the translate span");
        if (!generates_a(g)) return false;
    }

    std::mt19937_64 rng(seed);
    std::normal_distribution<double> normal;
    for (int t = 0; t < trials; ++t) {
        GroupFunction g = GroupFunction::zero(f.group);
        for (const auto& b : basis) g = g + Complex(normal(rng), normal(rng)) * b;
        if (!generates_a(g)) return false;
    }
    return true;
}

// P_Z(f~ * f): a central element of the two-sided ideal generated by f, with
// value ||f||_2^2 at the identity.
inline GroupFunction central_element_of_ideal(const GroupFunction& f) {
    if (!(l2_norm(f) > 1e-9)) throw computation_error("ZeroInput", "central element requested for a zero function");
    return center_project(convolve(involute(f), f));
}

} // namespace apharm

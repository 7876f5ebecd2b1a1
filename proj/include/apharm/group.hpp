#pragma once

// Finite groups given by multiplication tables, and their group algebra
// under normalized Haar (counting / n) measure.
//
//   (f * g)(x) = (1/n) sum_y f(y) g(y^-1 x)
//
// With this normalization the convolution identity is n * delta_e.

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <numeric>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "apharm/error.hpp"

namespace apharm {

using Complex = std::complex<double>;

inline constexpr std::size_t kExhaustiveAssociativityLimit = 64;
inline constexpr std::size_t kSampledAssociativityTriples = 100'000;

class FiniteGroup {
public:
    // Validates the table and derives identity and inverses.
    FiniteGroup(std::string name, std::vector<std::string> names, std::vector<std::vector<std::size_t>> table)
        : name_(std::move(name)), names_(std::move(names)) {
        const std::size_t n = table.size();
        if (n == 0) throw invalid_input("group table is empty");
        if (names_.empty()) {
            for (std::size_t i = 0; i < n; ++i) names_.push_back(std::to_string(i));
        }
        if (names_.size() != n) throw invalid_input("group names do not match table size");
        table_.reserve(n * n);
        for (const auto& row : table) {
            if (row.size() != n) throw invalid_input("group table is not square");
            for (const std::size_t v : row) {
                if (v >= n) throw invalid_input("group table entry out of range");
                table_.push_back(v);
            }
        }
        n_ = n;
        check_latin_square();
        find_identity();
        find_inverses();
        check_associativity();
    }

    const std::string& name() const { return name_; }
    std::size_t order() const { return n_; }
    const std::vector<std::string>& names() const { return names_; }
    std::size_t identity() const { return identity_; }
    std::size_t inverse(std::size_t i) const { return inverses_[i]; }
    const std::vector<std::size_t>& inverses() const { return inverses_; }

    std::size_t mul(std::size_t i, std::size_t j) const { return table_[i * n_ + j]; }

    // z x z^-1
    std::size_t conjugate(std::size_t z, std::size_t x) const { return mul(mul(z, x), inverses_[z]); }

    std::vector<std::vector<std::size_t>> table() const {
        std::vector<std::vector<std::size_t>> out(n_);
        for (std::size_t i = 0; i < n_; ++i) out[i].assign(table_.begin() + i * n_, table_.begin() + (i + 1) * n_);
        return out;
    }

    bool is_abelian() const {
        for (std::size_t i = 0; i < n_; ++i) {
            for (std::size_t j = i + 1; j < n_; ++j) {
                if (mul(i, j) != mul(j, i)) return false;
            }
        }
        return true;
    }

    bool operator==(const FiniteGroup& o) const { return name_ == o.name_ && table_ == o.table_; }

private:
    void check_latin_square() const {
        std::vector<char> seen(n_);
        for (std::size_t i = 0; i < n_; ++i) {
            std::fill(seen.begin(), seen.end(), 0);
            for (std::size_t j = 0; j < n_; ++j) {
                if (seen[mul(i, j)]++) throw invalid_input("group table row " + std::to_string(i) + " is not a permutation");
            }
            std::fill(seen.begin(), seen.end(), 0);
            for (std::size_t j = 0; j < n_; ++j) {
                if (seen[mul(j, i)]++) throw invalid_input("group table column " + std::to_string(i) + " is not a permutation");
            }
        }
    }

    void find_identity() {
        for (std::size_t e = 0; e < n_; ++e) {
            bool ok = true;
            for (std::size_t j = 0; j < n_ && ok; ++j) ok = mul(e, j) == j && mul(j, e) == j;
            if (ok) {
                identity_ = e;
                return;
            }
        }
        throw invalid_input("group table has no identity element");
    }

    void find_inverses() {
        inverses_.assign(n_, n_);
        for (std::size_t i = 0; i < n_; ++i) {
            for (std::size_t j = 0; j < n_; ++j) {
                if (mul(i, j) == identity_) {
                    if (mul(j, i) != identity_) throw invalid_input("left and right inverses differ");
                    inverses_[i] = j;
                    break;
                }
            }
        }
    }

    void check_associativity() const {
        auto check = [&](std::size_t a, std::size_t b, std::size_t c) {
            if (mul(mul(a, b), c) != mul(a, mul(b, c)))
                throw invalid_input("group table is not associative");
        };
        if (n_ <= kExhaustiveAssociativityLimit) {
            for (std::size_t a = 0; a < n_; ++a)
                for (std::size_t b = 0; b < n_; ++b)
                    for (std::size_t c = 0; c < n_; ++c) check(a, b, c);
            return;
        }
        std::mt19937_64 rng(0x9e3779b97f4a7c15ULL);
        std::uniform_int_distribution<std::size_t> pick(0, n_ - 1);
        for (std::size_t t = 0; t < kSampledAssociativityTriples; ++t) check(pick(rng), pick(rng), pick(rng));
    }

    std::string name_;
    std::vector<std::string> names_;
    std::size_t n_ = 0;
    std::vector<std::size_t> table_;
    std::size_t identity_ = 0;
    std::vector<std::size_t> inverses_;
};

using GroupPtr = std::shared_ptr<const FiniteGroup>;

// ---------------------------------------------------------------------------
// Built-in groups

namespace detail {

template <typename T, typename Mul>
GroupPtr group_from_elements(std::string name, const std::vector<T>& elements, std::vector<std::string> labels,
                             Mul mul) {
    std::map<T, std::size_t> index;
    for (std::size_t i = 0; i < elements.size(); ++i) index.emplace(elements[i], i);
    std::vector<std::vector<std::size_t>> table(elements.size(), std::vector<std::size_t>(elements.size()));
    for (std::size_t i = 0; i < elements.size(); ++i) {
        for (std::size_t j = 0; j < elements.size(); ++j) table[i][j] = index.at(mul(elements[i], elements[j]));
    }
    return std::make_shared<const FiniteGroup>(std::move(name), std::move(labels), std::move(table));
}

} // namespace detail

inline GroupPtr cyclic_group(std::size_t n) {
    if (n == 0) throw invalid_input("cyclic group order must be positive");
    std::vector<std::size_t> elems(n);
    std::iota(elems.begin(), elems.end(), std::size_t{0});
    std::vector<std::string> labels;
    for (std::size_t i = 0; i < n; ++i) labels.push_back(std::to_string(i));
    return detail::group_from_elements("Z" + std::to_string(n), elems, labels,
                                       [n](std::size_t a, std::size_t b) { return (a + b) % n; });
}

// Dihedral group of the n-gon (order 2n), elements labelled "r^k" and "sr^k".
inline GroupPtr dihedral_group(std::size_t n) {
    if (n < 2) throw invalid_input("dihedral group needs n >= 2");
    using Elem = std::pair<std::size_t, std::size_t>;  // (reflect, rotate): s^reflect r^rotate
    std::vector<Elem> elems;
    std::vector<std::string> labels;
    for (std::size_t s = 0; s < 2; ++s) {
        for (std::size_t k = 0; k < n; ++k) {
            elems.emplace_back(s, k);
            labels.push_back((s ? "sr^" : "r^") + std::to_string(k));
        }
    }
    // r^k s = s r^-k
    auto mul = [n](const Elem& a, const Elem& b) {
        const std::size_t k = b.first ? (n - a.second % n + b.second) % n : (a.second + b.second) % n;
        return Elem{(a.first + b.first) % 2, k};
    };
    return detail::group_from_elements("D" + std::to_string(n), elems, labels, mul);
}

// Symmetric group on n letters; elements in lexicographic order of their
// one-line notation, composition (p q)(i) = p(q(i)).
inline GroupPtr symmetric_group(std::size_t n) {
    if (n == 0 || n > 6) throw invalid_input("symmetric group supported for 1 <= n <= 6");
    std::vector<std::vector<std::size_t>> elems;
    std::vector<std::size_t> p(n);
    std::iota(p.begin(), p.end(), std::size_t{0});
    do elems.push_back(p);
    while (std::next_permutation(p.begin(), p.end()));
    std::vector<std::string> labels;
    for (const auto& e : elems) {
        std::string s;
        for (const std::size_t v : e) s += std::to_string(v);
        labels.push_back(s);
    }
    auto mul = [n](const std::vector<std::size_t>& a, const std::vector<std::size_t>& b) {
        std::vector<std::size_t> c(n);
        for (std::size_t i = 0; i < n; ++i) c[i] = a[b[i]];
        return c;
    };
    return detail::group_from_elements("S" + std::to_string(n), elems, labels, mul);
}

// Quaternion group {±1, ±i, ±j, ±k}.
inline GroupPtr quaternion_group() {
    // (sign, unit) with unit 0=1, 1=i, 2=j, 3=k
    using Elem = std::pair<int, int>;
    static constexpr int unit_sign[4][4] = {{1, 1, 1, 1}, {1, -1, 1, -1}, {1, -1, -1, 1}, {1, 1, -1, -1}};
    static constexpr int unit_prod[4][4] = {{0, 1, 2, 3}, {1, 0, 3, 2}, {2, 3, 0, 1}, {3, 2, 1, 0}};
    std::vector<Elem> elems;
    std::vector<std::string> labels;
    const char* unit_names[4] = {"1", "i", "j", "k"};
    for (int u = 0; u < 4; ++u) {
        for (int s : {1, -1}) {
            elems.emplace_back(s, u);
            labels.push_back(std::string(s < 0 ? "-" : "") + unit_names[u]);
        }
    }
    auto mul = [](const Elem& a, const Elem& b) {
        return Elem{a.first * b.first * unit_sign[a.second][b.second], unit_prod[a.second][b.second]};
    };
    return detail::group_from_elements("Q8", elems, labels, mul);
}

inline GroupPtr direct_product(const FiniteGroup& g, const FiniteGroup& h) {
    using Elem = std::pair<std::size_t, std::size_t>;
    std::vector<Elem> elems;
    std::vector<std::string> labels;
    for (std::size_t a = 0; a < g.order(); ++a) {
        for (std::size_t b = 0; b < h.order(); ++b) {
            elems.emplace_back(a, b);
            labels.push_back("(" + g.names()[a] + "," + h.names()[b] + ")");
        }
    }
    auto mul = [&](const Elem& x, const Elem& y) { return Elem{g.mul(x.first, y.first), h.mul(x.second, y.second)}; };
    return detail::group_from_elements(g.name() + "x" + h.name(), elems, labels, mul);
}

// Looks up a built-in by name: "Z<n>", "D<n>", "S<n>", "Q8", "Z2xZ2".
inline GroupPtr builtin_group(const std::string& name) {
    auto number = [&](std::size_t from) -> std::size_t {
        const std::string digits = name.substr(from);
        if (digits.empty() || !std::all_of(digits.begin(), digits.end(), [](char c) { return c >= '0' && c <= '9'; }))
            throw invalid_input("unknown built-in group '" + name + "'");
        return std::stoul(digits);
    };
    if (name == "Q8") return quaternion_group();
    if (name == "Z2xZ2") return direct_product(*cyclic_group(2), *cyclic_group(2));
    if (!name.empty() && name[0] == 'Z') return cyclic_group(number(1));
    if (!name.empty() && name[0] == 'D') return dihedral_group(number(1));
    if (!name.empty() && name[0] == 'S') return symmetric_group(number(1));
    throw invalid_input("unknown built-in group '" + name + "'");
}

// ---------------------------------------------------------------------------
// Group algebra

struct GroupFunction {
    GroupPtr group;
    std::vector<Complex> values;

    GroupFunction() = default;
    GroupFunction(GroupPtr g, std::vector<Complex> v) : group(std::move(g)), values(std::move(v)) {
        if (!group) throw invalid_input("group function needs a group");
        if (values.size() != group->order()) throw invalid_input("group function length does not match group order");
    }

    static GroupFunction zero(GroupPtr g) {
        const std::size_t n = g->order();
        return {std::move(g), std::vector<Complex>(n)};
    }
    static GroupFunction constant(GroupPtr g, Complex c) {
        const std::size_t n = g->order();
        return {std::move(g), std::vector<Complex>(n, c)};
    }
    static GroupFunction delta(GroupPtr g, std::size_t at, Complex weight = 1.0) {
        GroupFunction f = zero(std::move(g));
        f.values.at(at) = weight;
        return f;
    }

    std::size_t size() const { return values.size(); }
    Complex operator[](std::size_t i) const { return values[i]; }
    Complex& operator[](std::size_t i) { return values[i]; }
};

inline bool same_group(const GroupFunction& f, const GroupFunction& g) {
    return f.group == g.group || *f.group == *g.group;
}

inline void require_same_group(const GroupFunction& f, const GroupFunction& g) {
    if (!same_group(f, g)) throw group_mismatch();
}

inline GroupFunction operator+(GroupFunction f, const GroupFunction& g) {
    require_same_group(f, g);
    for (std::size_t i = 0; i < f.size(); ++i) f.values[i] += g.values[i];
    return f;
}

inline GroupFunction operator-(GroupFunction f, const GroupFunction& g) {
    require_same_group(f, g);
    for (std::size_t i = 0; i < f.size(); ++i) f.values[i] -= g.values[i];
    return f;
}

inline GroupFunction operator*(Complex s, GroupFunction f) {
    for (auto& v : f.values) v *= s;
    return f;
}

inline double sup_norm(const GroupFunction& f) {
    double m = 0.0;
    for (const auto& v : f.values) m = std::max(m, std::abs(v));
    return m;
}

inline double sup_distance(const GroupFunction& f, const GroupFunction& g) {
    require_same_group(f, g);
    double m = 0.0;
    for (std::size_t i = 0; i < f.size(); ++i) m = std::max(m, std::abs(f.values[i] - g.values[i]));
    return m;
}

// Normalized-measure L1 norm.
inline double l1_norm(const GroupFunction& f) {
    double s = 0.0;
    for (const auto& v : f.values) s += std::abs(v);
    return s / static_cast<double>(f.size());
}

// (f, g) = (1/n) sum_x f(x) conj(g(x))
inline Complex inner_product(const GroupFunction& f, const GroupFunction& g) {
    require_same_group(f, g);
    Complex s = 0.0;
    for (std::size_t i = 0; i < f.size(); ++i) s += f.values[i] * std::conj(g.values[i]);
    return s / static_cast<double>(f.size());
}

inline double l2_norm(const GroupFunction& f) { return std::sqrt(inner_product(f, f).real()); }

// Normalized Haar integral (1/n) sum_x f(x).
inline Complex haar_integral(const GroupFunction& f) {
    Complex s = 0.0;
    for (const auto& v : f.values) s += v;
    return s / static_cast<double>(f.size());
}

inline GroupFunction convolve(const GroupFunction& f, const GroupFunction& g) {
    require_same_group(f, g);
    const FiniteGroup& G = *f.group;
    const std::size_t n = G.order();
    GroupFunction out = GroupFunction::zero(f.group);
    for (std::size_t x = 0; x < n; ++x) {
        Complex s = 0.0;
        for (std::size_t y = 0; y < n; ++y) s += f.values[y] * g.values[G.mul(G.inverse(y), x)];
        out.values[x] = s / static_cast<double>(n);
    }
    return out;
}

// f~(x) = conj(f(x^-1))
inline GroupFunction involute(const GroupFunction& f) {
    GroupFunction out = GroupFunction::zero(f.group);
    for (std::size_t x = 0; x < f.size(); ++x) out.values[x] = std::conj(f.values[f.group->inverse(x)]);
    return out;
}

// (T_s f)(x) = f(s x)
inline GroupFunction left_translate(std::size_t s, const GroupFunction& f) {
    const FiniteGroup& G = *f.group;
    if (s >= G.order()) throw invalid_input("translation element out of range");
    GroupFunction out = GroupFunction::zero(f.group);
    for (std::size_t x = 0; x < G.order(); ++x) out.values[x] = f.values[G.mul(s, x)];
    return out;
}

// (T^s f)(x) = f(x s)
inline GroupFunction right_translate(std::size_t s, const GroupFunction& f) {
    const FiniteGroup& G = *f.group;
    if (s >= G.order()) throw invalid_input("translation element out of range");
    GroupFunction out = GroupFunction::zero(f.group);
    for (std::size_t x = 0; x < G.order(); ++x) out.values[x] = f.values[G.mul(x, s)];
    return out;
}

// (P_Z f)(x) = (1/n) sum_z f(z x z^-1)
inline GroupFunction center_project(const GroupFunction& f) {
    const FiniteGroup& G = *f.group;
    const std::size_t n = G.order();
    GroupFunction out = GroupFunction::zero(f.group);
    for (std::size_t x = 0; x < n; ++x) {
        Complex s = 0.0;
        for (std::size_t z = 0; z < n; ++z) s += f.values[G.conjugate(z, x)];
        out.values[x] = s / static_cast<double>(n);
    }
    return out;
}

inline constexpr double kDefaultTolerance = 1e-9;

// Commutes with every delta function to within tol (sup norm).
inline bool is_central(const GroupFunction& f, double tol = kDefaultTolerance) {
    if (!(tol >= 0.0)) throw invalid_input("tolerance must be nonnegative");
    for (std::size_t g = 0; g < f.size(); ++g) {
        const GroupFunction d = GroupFunction::delta(f.group, g);
        if (sup_distance(convolve(f, d), convolve(d, f)) > tol) return false;
    }
    return true;
}

struct ConjugacyClasses {
    std::vector<std::vector<std::size_t>> classes;  // classes[0] is {identity}
    std::vector<std::size_t> class_of;

    std::size_t size() const { return classes.size(); }
};

// Orbits under conjugation. The identity class comes first, the rest are
// ordered by their smallest element; members are sorted.
inline ConjugacyClasses conjugacy_classes(const FiniteGroup& G) {
    const std::size_t n = G.order();
    constexpr std::size_t unset = static_cast<std::size_t>(-1);
    ConjugacyClasses cc;
    cc.class_of.assign(n, unset);

    std::vector<std::size_t> seeds{G.identity()};
    for (std::size_t x = 0; x < n; ++x) {
        if (x != G.identity()) seeds.push_back(x);
    }
    for (const std::size_t x : seeds) {
        if (cc.class_of[x] != unset) continue;
        const std::size_t id = cc.classes.size();
        std::vector<std::size_t> orbit;
        for (std::size_t z = 0; z < n; ++z) {
            const std::size_t y = G.conjugate(z, x);
            if (cc.class_of[y] == unset) {
                cc.class_of[y] = id;
                orbit.push_back(y);
            }
        }
        std::sort(orbit.begin(), orbit.end());
        cc.classes.push_back(std::move(orbit));
    }
    return cc;
}

template <typename Rng>
GroupFunction random_group_function(const GroupPtr& g, Rng& rng) {
    std::normal_distribution<double> normal;
    GroupFunction f = GroupFunction::zero(g);
    for (auto& v : f.values) v = {normal(rng), normal(rng)};
    return f;
}

} // namespace apharm

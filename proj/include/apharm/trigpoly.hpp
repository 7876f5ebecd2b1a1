#pragma once

// Trigonometric polynomials  f(x) = sum_k c_k exp(i lambda_k x)  whose
// frequencies lambda_k live in a finitely generated Q-module of reals.
// Frequencies are exact rational vectors over a declared basis of real
// symbols; only the coefficients are floating point.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <memory>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "apharm/error.hpp"
#include "apharm/rational.hpp"

namespace apharm {

using Complex = std::complex<double>;

struct BasisSymbol {
    std::string name;
    double value = 0.0;

    bool operator==(const BasisSymbol&) const = default;
};

// Ordered list of named real constants. The symbols are declared (and
// trusted) to be linearly independent over Q.
class FrequencyBasis {
public:
    FrequencyBasis() = default;

    explicit FrequencyBasis(std::vector<BasisSymbol> symbols) : symbols_(std::move(symbols)) {
        std::set<std::string> seen;
        for (const auto& s : symbols_) {
            if (!seen.insert(s.name).second)
                throw invalid_input("duplicate basis symbol '" + s.name + "'");
            if (!(s.value > 0.0) || !std::isfinite(s.value))
                throw invalid_input("basis symbol '" + s.name + "' must have a finite positive value");
        }
    }

    std::size_t size() const { return symbols_.size(); }
    const std::vector<BasisSymbol>& symbols() const { return symbols_; }
    const BasisSymbol& operator[](std::size_t i) const { return symbols_[i]; }

    // Index of a symbol by name, or size() when absent.
    std::size_t index_of(const std::string& name) const {
        for (std::size_t i = 0; i < symbols_.size(); ++i) {
            if (symbols_[i].name == name) return i;
        }
        return symbols_.size();
    }

    bool operator==(const FrequencyBasis&) const = default;

private:
    std::vector<BasisSymbol> symbols_;
};

using BasisPtr = std::shared_ptr<const FrequencyBasis>;

inline BasisPtr make_basis(std::vector<BasisSymbol> symbols) {
    return std::make_shared<const FrequencyBasis>(std::move(symbols));
}

// Exact frequency: one rational coordinate per basis symbol.
class Frequency {
public:
    Frequency() = default;
    explicit Frequency(std::vector<Rational> coords) : coords_(std::move(coords)) {}

    static Frequency zero(std::size_t dim) { return Frequency(std::vector<Rational>(dim)); }

    // coefficient * (basis symbol `index`)
    static Frequency along(std::size_t dim, std::size_t index, Rational coefficient = 1) {
        Frequency f = zero(dim);
        f.coords_.at(index) = std::move(coefficient);
        return f;
    }

    std::size_t size() const { return coords_.size(); }
    const std::vector<Rational>& coords() const { return coords_; }
    const Rational& operator[](std::size_t i) const { return coords_[i]; }

    bool is_zero() const {
        return std::all_of(coords_.begin(), coords_.end(), [](const Rational& r) { return r == 0; });
    }

    double value(const FrequencyBasis& basis) const {
        if (basis.size() != coords_.size())
            throw invalid_input("frequency dimension does not match basis");
        double v = 0.0;
        for (std::size_t i = 0; i < coords_.size(); ++i) v += to_double(coords_[i]) * basis[i].value;
        return v;
    }

    Frequency operator-() const {
        Frequency out = *this;
        for (auto& c : out.coords_) c = -c;
        return out;
    }

    friend Frequency operator+(const Frequency& a, const Frequency& b) {
        if (a.size() != b.size()) throw invalid_input("frequency dimension mismatch");
        Frequency out = a;
        for (std::size_t i = 0; i < a.size(); ++i) out.coords_[i] += b.coords_[i];
        return out;
    }

    friend bool operator==(const Frequency& a, const Frequency& b) { return a.coords_ == b.coords_; }

    // Lexicographic on coordinates.
    friend bool operator<(const Frequency& a, const Frequency& b) {
        return std::lexicographical_compare(a.coords_.begin(), a.coords_.end(), b.coords_.begin(),
                                            b.coords_.end());
    }

private:
    std::vector<Rational> coords_;
};

struct Term {
    Complex coeff;
    Frequency freq;

    bool operator==(const Term& other) const { return coeff == other.coeff && freq == other.freq; }
};

class TrigPolynomial {
public:
    // Builds the canonical form: terms sorted by frequency, equal frequencies
    // merged, exact-zero coefficients removed.
    TrigPolynomial(BasisPtr basis, std::vector<Term> terms) : basis_(std::move(basis)) {
        if (!basis_) throw invalid_input("trigonometric polynomial needs a basis");
        for (const auto& t : terms) {
            if (t.freq.size() != basis_->size())
                throw invalid_input("term frequency dimension does not match basis");
            if (!std::isfinite(t.coeff.real()) || !std::isfinite(t.coeff.imag()))
                throw invalid_input("non-finite coefficient");
        }
        std::stable_sort(terms.begin(), terms.end(),
                         [](const Term& a, const Term& b) { return a.freq < b.freq; });
        for (auto& t : terms) {
            if (!terms_.empty() && terms_.back().freq == t.freq) {
                terms_.back().coeff += t.coeff;
            } else {
                terms_.push_back(std::move(t));
            }
        }
        std::erase_if(terms_, [](const Term& t) { return t.coeff == Complex(0.0, 0.0); });

        numeric_.reserve(terms_.size());
        for (const auto& t : terms_) numeric_.push_back(t.freq.value(*basis_));
    }

    static TrigPolynomial zero(BasisPtr basis) { return TrigPolynomial(std::move(basis), {}); }

    static TrigPolynomial constant(BasisPtr basis, Complex c) {
        const std::size_t dim = basis->size();
        return TrigPolynomial(std::move(basis), {Term{c, Frequency::zero(dim)}});
    }

    // c * exp(i lambda x)
    static TrigPolynomial character(BasisPtr basis, Frequency lambda, Complex c = 1.0) {
        return TrigPolynomial(std::move(basis), {Term{c, std::move(lambda)}});
    }

    const BasisPtr& basis_ptr() const { return basis_; }
    const FrequencyBasis& basis() const { return *basis_; }
    const std::vector<Term>& terms() const { return terms_; }
    std::size_t size() const { return terms_.size(); }
    bool empty() const { return terms_.empty(); }

    // Real value of the k-th frequency.
    double numeric_frequency(std::size_t k) const { return numeric_[k]; }
    const std::vector<double>& numeric_frequencies() const { return numeric_; }

    Complex operator()(double x) const {
        Complex sum = 0.0;
        for (std::size_t k = 0; k < terms_.size(); ++k)
            sum += terms_[k].coeff * std::polar(1.0, numeric_[k] * x);
        return sum;
    }

    bool shares_basis(const TrigPolynomial& other) const {
        return basis_ == other.basis_ || *basis_ == *other.basis_;
    }

    friend bool operator==(const TrigPolynomial& a, const TrigPolynomial& b) {
        return a.shares_basis(b) && a.terms_ == b.terms_;
    }

private:
    BasisPtr basis_;
    std::vector<Term> terms_;
    std::vector<double> numeric_;
};

inline Complex eval(const TrigPolynomial& f, double x) {
    if (!std::isfinite(x)) throw invalid_input("evaluation point must be finite");
    return f(x);
}

inline TrigPolynomial canonicalize(const TrigPolynomial& f) {
    return TrigPolynomial(f.basis_ptr(), f.terms());
}

inline TrigPolynomial add(const TrigPolynomial& f, const TrigPolynomial& g) {
    if (!f.shares_basis(g)) throw basis_mismatch();
    std::vector<Term> terms = f.terms();
    terms.insert(terms.end(), g.terms().begin(), g.terms().end());
    return TrigPolynomial(f.basis_ptr(), std::move(terms));
}

inline TrigPolynomial scale(const TrigPolynomial& f, Complex s) {
    std::vector<Term> terms = f.terms();
    for (auto& t : terms) t.coeff *= s;
    return TrigPolynomial(f.basis_ptr(), std::move(terms));
}

inline TrigPolynomial multiply(const TrigPolynomial& f, const TrigPolynomial& g) {
    if (!f.shares_basis(g)) throw basis_mismatch();
    std::vector<Term> terms;
    terms.reserve(f.size() * g.size());
    for (const auto& a : f.terms()) {
        for (const auto& b : g.terms()) terms.push_back(Term{a.coeff * b.coeff, a.freq + b.freq});
    }
    return TrigPolynomial(f.basis_ptr(), std::move(terms));
}

// sum_k |c_k|, an upper bound on sup_x |f(x)|.
inline double sup_norm_bound(const TrigPolynomial& f) {
    double s = 0.0;
    for (const auto& t : f.terms()) s += std::abs(t.coeff);
    return s;
}

} // namespace apharm

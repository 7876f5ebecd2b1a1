#pragma once

// Bohr analysis on the real line: means, Fourier-Bohr coefficients,
// certified almost-periods, the translate pseudometric d_f, epsilon-nets of
// translates, the rank of the frequency module and the Bohr approximation.
//
// Almost-period claims are always backed by the coefficient-sum bound
//
//     sup_x |f(x + a) - f(x + b)| <= sum_k |c_k| |exp(i l_k a) - exp(i l_k b)|
//
// which is finitely checkable; sampling only ever supplies lower bounds.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <numbers>
#include <numeric>
#include <optional>
#include <vector>

#include "apharm/error.hpp"
#include "apharm/rational.hpp"
#include "apharm/trigpoly.hpp"

namespace apharm {

using Sampler = std::function<Complex(double)>;

inline Sampler sampler_of(TrigPolynomial f) {
    return [f = std::move(f)](double x) { return f(x); };
}

struct AlmostPeriodCertificate {
    double tau = 0.0;
    double upper_bound = 0.0;  // certified bound on sup_x |f(x + tau) - f(x)|
    double lower_bound = 0.0;  // max over the sampled x
    double epsilon = 0.0;
};

struct NetWitness {
    double epsilon = 0.0;
    std::vector<double> centers;
    double covering_bound = 0.0;
};

struct DistanceBounds {
    double lower = 0.0;
    double upper = 0.0;
};

struct SpectralLine {
    double frequency = 0.0;
    Complex coeff;
};

struct SampledApproximation {
    TrigPolynomial poly;
    double residual = 0.0;  // max |f - P f| over the verification grid
};

namespace detail {

// |exp(i theta) - 1| without cancellation.
inline double chord(double theta) { return 2.0 * std::abs(std::sin(0.5 * theta)); }

// x positions used for sampled lower bounds.
inline constexpr double kSampleSpacing = 1.6180339887498949;
inline constexpr std::size_t kCertificateSamples = 1024;

inline double sampled_shift_sup(const TrigPolynomial& f, double a, double b, std::size_t samples) {
    double best = 0.0;
    for (std::size_t j = 0; j < samples; ++j) {
        const double x = static_cast<double>(j) * kSampleSpacing;
        best = std::max(best, std::abs(f(a + x) - f(b + x)));
    }
    return best;
}

inline std::size_t grid_count(double extent, double step) {
    return static_cast<std::size_t>(std::floor(extent / step * (1.0 + 1e-12)));
}

inline void require_positive(double v, const char* what) {
    if (!(v > 0.0) || !std::isfinite(v)) throw invalid_input(std::string(what) + " must be positive and finite");
}

} // namespace detail

// Certified upper bound on sup_x |f(x + tau) - f(x)|.
inline double shift_bound(const TrigPolynomial& f, double tau) {
    double s = 0.0;
    for (std::size_t k = 0; k < f.size(); ++k)
        s += std::abs(f.terms()[k].coeff) * detail::chord(f.numeric_frequency(k) * tau);
    return s;
}

// Exact Bohr mean: the zero-frequency coefficient.
inline Complex bohr_mean_exact(const TrigPolynomial& f) {
    for (const auto& t : f.terms()) {
        if (t.freq.is_zero()) return t.coeff;
    }
    return 0.0;
}

// Composite midpoint estimate of (1/2N) * integral_{-N}^{N} f.
inline Complex bohr_mean_numeric(const Sampler& sampler, double N, std::int64_t steps) {
    detail::require_positive(N, "N");
    if (steps < 2) throw invalid_input("steps must be at least 2");
    const double h = 2.0 * N / static_cast<double>(steps);
    // Neumaier-compensated summation, fixed index order.
    double re = 0.0, im = 0.0, cre = 0.0, cim = 0.0;
    auto accumulate = [](double& sum, double& comp, double v) {
        const double t = sum + v;
        comp += std::abs(sum) >= std::abs(v) ? (sum - t) + v : (v - t) + sum;
        sum = t;
    };
    for (std::int64_t i = 0; i < steps; ++i) {
        const double x = -N + (static_cast<double>(i) + 0.5) * h;
        const Complex v = sampler(x);
        if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
            throw computation_error("NonFiniteSample", "sampler returned a non-finite value");
        accumulate(re, cre, v.real());
        accumulate(im, cim, v.imag());
    }
    const double n = static_cast<double>(steps);
    return {(re + cre) / n, (im + cim) / n};
}

// a(lambda) = M(f * exp(-i lambda x)), exact.
inline Complex fourier_bohr_coefficient(const TrigPolynomial& f, const Frequency& lambda) {
    if (lambda.size() != f.basis().size()) throw basis_mismatch();
    return bohr_mean_exact(multiply(f, TrigPolynomial::character(f.basis_ptr(), -lambda)));
}

inline std::vector<SpectralLine> spectrum_scan(const Sampler& sampler, const std::vector<double>& grid,
                                               double N, std::int64_t steps, double threshold) {
    if (grid.empty()) throw invalid_input("spectrum grid is empty");
    detail::require_positive(threshold, "threshold");
    std::vector<SpectralLine> out;
    for (const double mu : grid) {
        if (!std::isfinite(mu)) throw invalid_input("grid frequency must be finite");
        const Complex a = bohr_mean_numeric(
            [&](double x) { return sampler(x) * std::polar(1.0, -mu * x); }, N, steps);
        if (std::abs(a) >= threshold) out.push_back({mu, a});
    }
    return out;
}

// Bounds on d_f(a, b) = sup_x |f(a + x) - f(b + x)|.
inline DistanceBounds translate_distance_bounds(const TrigPolynomial& f, double a, double b,
                                                std::size_t samples) {
    if (samples < 1) throw invalid_input("samples must be at least 1");
    DistanceBounds d;
    for (std::size_t k = 0; k < f.size(); ++k) {
        const double l = f.numeric_frequency(k);
        d.upper += std::abs(f.terms()[k].coeff) * std::abs(std::polar(1.0, l * a) - std::polar(1.0, l * b));
    }
    d.lower = std::min(detail::sampled_shift_sup(f, a, b, samples), d.upper);  // rounding only
    return d;
}

// Scans tau = step, 2 step, ... <= tau_max. Among certified grid points
// (bound < epsilon) it returns the one with the smallest bound, skipping the
// trivial run of certified points that starts at tau = step unless nothing
// outside that run certifies. Ties go to the smallest tau.
inline AlmostPeriodCertificate find_almost_period(const TrigPolynomial& f, double epsilon,
                                                  double tau_max, double step) {
    detail::require_positive(epsilon, "epsilon");
    detail::require_positive(step, "step");
    if (!(step < tau_max) || !std::isfinite(tau_max)) throw invalid_input("need 0 < step < tau_max");

    const std::size_t count = detail::grid_count(tau_max, step);
    std::size_t k = 1;
    std::optional<std::size_t> best_trivial;
    double best_trivial_bound = 0.0;
    for (; k <= count; ++k) {
        const double b = shift_bound(f, static_cast<double>(k) * step);
        if (!(b < epsilon)) break;
        if (!best_trivial || b < best_trivial_bound) {
            best_trivial = k;
            best_trivial_bound = b;
        }
    }
    std::optional<std::size_t> best;
    double best_bound = 0.0;
    for (; k <= count; ++k) {
        const double b = shift_bound(f, static_cast<double>(k) * step);
        if (b < epsilon && (!best || b < best_bound)) {
            best = k;
            best_bound = b;
        }
    }
    if (!best) {
        best = best_trivial;
        best_bound = best_trivial_bound;
    }
    if (!best) {
        throw computation_error("NotFound", "no grid point in (0, tau_max] certifies an epsilon-almost-period; "
                                            "tau_max or step may be too coarse");
    }

    AlmostPeriodCertificate cert;
    cert.tau = static_cast<double>(*best) * step;
    cert.upper_bound = best_bound;
    cert.lower_bound = std::min(detail::sampled_shift_sup(f, cert.tau, 0.0, detail::kCertificateSamples),
                                best_bound);
    cert.epsilon = epsilon;
    return cert;
}

// Largest gap between consecutive certified epsilon-almost-periods on the
// grid 0, step, ..., horizon. An empirical estimate of the inclusion length.
inline double inclusion_length_estimate(const TrigPolynomial& f, double epsilon, double horizon, double step) {
    detail::require_positive(epsilon, "epsilon");
    detail::require_positive(step, "step");
    detail::require_positive(horizon, "horizon");

    const std::size_t count = detail::grid_count(horizon, step);
    std::optional<std::size_t> previous;
    std::size_t certified = 0;
    std::size_t widest = 0;
    for (std::size_t k = 0; k <= count; ++k) {
        if (!(shift_bound(f, static_cast<double>(k) * step) < epsilon)) continue;
        if (previous) widest = std::max(widest, k - *previous);
        previous = k;
        ++certified;
    }
    if (certified < 2)
        throw computation_error("NotFound", "fewer than two certified almost-periods on the grid");
    return static_cast<double>(widest) * step;
}

// Rank over Q of the frequency vectors of f.
inline std::size_t frequency_module_rank(const TrigPolynomial& f) {
    RationalMatrix rows;
    rows.reserve(f.size());
    for (const auto& t : f.terms()) rows.push_back(t.freq.coords());
    return rational_rank(std::move(rows));
}

// Integer coordinates of every frequency of f over generators mu_1..mu_r of
// a lattice containing them (r = rank).
struct FrequencyLattice {
    std::vector<double> generators;              // numeric mu_j
    std::vector<std::vector<BigInt>> coordinates;  // per term, n_kj
};

inline FrequencyLattice frequency_lattice(const TrigPolynomial& f) {
    RationalMatrix rows;
    for (const auto& t : f.terms()) rows.push_back(t.freq.coords());
    const RowEchelon echelon = reduced_row_echelon(rows);
    const std::size_t r = echelon.rank();

    // In reduced echelon form, lambda_k = sum_j lambda_k[pivot_j] * row_j.
    BigInt lcm = 1;
    for (const auto& t : f.terms()) {
        for (const std::size_t p : echelon.pivots)
            lcm = boost::multiprecision::lcm(lcm, boost::multiprecision::denominator(t.freq[p]));
    }

    FrequencyLattice lattice;
    for (const auto& row : echelon.rows) {
        lattice.generators.push_back(Frequency(row).value(f.basis()) / to_double(Rational(lcm)));
    }
    for (const auto& t : f.terms()) {
        std::vector<BigInt> n(r);
        for (std::size_t j = 0; j < r; ++j) {
            const Rational scaled = t.freq[echelon.pivots[j]] * lcm;
            n[j] = boost::multiprecision::numerator(scaled);
        }
        lattice.coordinates.push_back(std::move(n));
    }
    return lattice;
}

inline constexpr std::size_t kMaxNetNodes = 4'000'000;

// Finite epsilon-net of the translates {T_s f}: every T_s f is within the
// certified covering bound of some T_{s_i} f. Built on a torus grid with m
// nodes per axis (m minimal for the bound to close); centers are reals whose
// phase vector lands in each grid node's cell.
inline NetWitness epsilon_net_translates(const TrigPolynomial& f, double epsilon) {
    detail::require_positive(epsilon, "epsilon");
    constexpr double two_pi = 2.0 * std::numbers::pi;

    NetWitness net;
    net.epsilon = epsilon;
    const FrequencyLattice lattice = frequency_lattice(f);
    const std::size_t r = lattice.generators.size();
    if (r == 0) {
        net.centers = {0.0};
        return net;
    }

    std::vector<double> weight(f.size());  // sum_j |n_kj|
    for (std::size_t k = 0; k < f.size(); ++k) {
        for (const auto& n : lattice.coordinates[k]) weight[k] += to_double(Rational(abs(n)));
    }
    auto covering = [&](std::size_t m) {
        const double mesh = two_pi / static_cast<double>(m);
        double s = 0.0;
        for (std::size_t k = 0; k < f.size(); ++k)
            s += std::abs(f.terms()[k].coeff) * std::min(2.0, weight[k] * mesh);
        return s;
    };

    std::size_t m = 1;
    while (!(covering(m) < epsilon)) {
        ++m;
        if (std::pow(static_cast<double>(m), static_cast<double>(r)) > static_cast<double>(kMaxNetNodes))
            throw computation_error("NetTooLarge", "epsilon-net would exceed the node budget");
    }
    net.covering_bound = covering(m);
    const double mesh = two_pi / static_cast<double>(m);

    if (r == 1) {
        const double mu = std::abs(lattice.generators[0]);
        for (std::size_t j = 0; j < m; ++j) net.centers.push_back(static_cast<double>(j) * mesh / mu);
        return net;
    }

    // Walk along the line s -> (mu_1 s, ..., mu_r s) mod 2 pi, recording the
    // first s that lands in each node's cell. Density of the line on the torus
    // (independent generators) guarantees termination.
    std::size_t nodes = 1;
    for (std::size_t j = 0; j < r; ++j) nodes *= m;
    double fastest = 0.0;
    for (const double mu : lattice.generators) fastest = std::max(fastest, std::abs(mu));
    const double ds = 0.5 * mesh / fastest;

    std::vector<std::optional<double>> first_hit(nodes);
    std::size_t filled = 0;
    constexpr std::uint64_t kMaxWalk = 400'000'000;
    for (std::uint64_t t = 0; filled < nodes; ++t) {
        if (t > kMaxWalk) throw computation_error("NetTooLarge", "torus walk did not cover every cell");
        const double s = static_cast<double>(t) * ds;
        std::size_t node = 0;
        for (std::size_t j = 0; j < r; ++j) {
            double phase = std::fmod(lattice.generators[j] * s, two_pi);
            if (phase < 0) phase += two_pi;
            const auto idx = static_cast<std::size_t>(std::llround(phase / mesh)) % m;
            node = node * m + idx;
        }
        if (!first_hit[node]) {
            first_hit[node] = s;
            ++filled;
        }
    }
    net.centers.reserve(nodes);
    for (const auto& s : first_hit) net.centers.push_back(*s);
    return net;
}

// Drops the smallest-|c| terms while the dropped coefficient sum stays < epsilon.
inline TrigPolynomial bohr_approximate(const TrigPolynomial& f, double epsilon) {
    detail::require_positive(epsilon, "epsilon");
    std::vector<std::size_t> order(f.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        const double ca = std::abs(f.terms()[a].coeff), cb = std::abs(f.terms()[b].coeff);
        return ca != cb ? ca < cb : a > b;
    });

    std::vector<bool> keep(f.size(), true);
    double tail = 0.0;
    for (const std::size_t k : order) {
        const double c = std::abs(f.terms()[k].coeff);
        if (!(tail + c < epsilon)) break;
        tail += c;
        keep[k] = false;
    }
    std::vector<Term> kept;
    for (std::size_t k = 0; k < f.size(); ++k) {
        if (keep[k]) kept.push_back(f.terms()[k]);
    }
    return TrigPolynomial(f.basis_ptr(), std::move(kept));
}

namespace detail {

inline double verification_residual(const Sampler& sampler, const TrigPolynomial& p, double N) {
    constexpr int kPoints = 1000;
    double worst = 0.0;
    for (int j = 0; j <= kPoints; ++j) {
        const double x = -N + 2.0 * N * j / kPoints;
        worst = std::max(worst, std::abs(sampler(x) - p(x)));
    }
    return worst;
}

} // namespace detail

// Spectrum scan over exact candidate frequencies, then reconstruction.
inline SampledApproximation bohr_approximate_sampled(const Sampler& sampler, const BasisPtr& basis,
                                                     const std::vector<Frequency>& grid, double epsilon,
                                                     double N, std::int64_t steps) {
    detail::require_positive(epsilon, "epsilon");
    std::vector<double> numeric;
    numeric.reserve(grid.size());
    for (const auto& g : grid) numeric.push_back(g.value(*basis));
    const auto lines = spectrum_scan(sampler, numeric, N, steps, epsilon);

    std::vector<Term> terms;
    for (const auto& line : lines) {
        const auto it = std::find(numeric.begin(), numeric.end(), line.frequency);
        terms.push_back({line.coeff, grid[static_cast<std::size_t>(it - numeric.begin())]});
    }
    SampledApproximation out{TrigPolynomial(basis, std::move(terms)), 0.0};
    out.residual = detail::verification_residual(sampler, out.poly, N);
    return out;
}

// Real-grid form: each distinct nonzero |mu| becomes its own basis symbol
// "nu0", "nu1", ... (ascending), declared independent.
inline SampledApproximation bohr_approximate_sampled(const Sampler& sampler, const std::vector<double>& grid,
                                                     double epsilon, double N, std::int64_t steps) {
    if (grid.empty()) throw invalid_input("spectrum grid is empty");
    std::vector<double> magnitudes;
    for (const double mu : grid) {
        if (!std::isfinite(mu)) throw invalid_input("grid frequency must be finite");
        if (mu != 0.0) magnitudes.push_back(std::abs(mu));
    }
    std::sort(magnitudes.begin(), magnitudes.end());
    magnitudes.erase(std::unique(magnitudes.begin(), magnitudes.end()), magnitudes.end());

    std::vector<BasisSymbol> symbols;
    for (std::size_t i = 0; i < magnitudes.size(); ++i) symbols.push_back({"nu" + std::to_string(i), magnitudes[i]});
    const BasisPtr basis = make_basis(std::move(symbols));

    std::vector<Frequency> exact;
    for (const double mu : grid) {
        if (mu == 0.0) {
            exact.push_back(Frequency::zero(basis->size()));
            continue;
        }
        const auto idx = static_cast<std::size_t>(
            std::lower_bound(magnitudes.begin(), magnitudes.end(), std::abs(mu)) - magnitudes.begin());
        exact.push_back(Frequency::along(basis->size(), idx, mu > 0 ? 1 : -1));
    }
    return bohr_approximate_sampled(sampler, basis, exact, epsilon, N, steps);
}

} // namespace apharm

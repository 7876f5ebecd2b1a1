// Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any failure.
#include <Eigen/Eigenvalues>

#include <chrono>
#include <cstdio>
#include <functional>
#include <numbers>
#include <random>
#include <sstream>
#include <string>

#include "apharm/apharm.hpp"

using namespace apharm;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

struct Outcome {
    bool pass = false;
    std::string detail;
};

std::string fmt(const char* format, auto... args) {
    char buf[512];
    std::snprintf(buf, sizeof buf, format, args...);
    return buf;
}

const std::vector<GroupPtr>& core_groups() {
    static const std::vector<GroupPtr> gs{cyclic_group(6), symmetric_group(3), dihedral_group(4), quaternion_group(),
                                          symmetric_group(4)};
    return gs;
}

std::vector<GroupPtr> builtin_sample() {
    std::vector<GroupPtr> gs;
    for (std::size_t n = 1; n <= 12; ++n) gs.push_back(cyclic_group(n));
    for (std::size_t n = 3; n <= 8; ++n) gs.push_back(dihedral_group(n));
    for (std::size_t n = 1; n <= 5; ++n) gs.push_back(symmetric_group(n));
    gs.push_back(quaternion_group());
    gs.push_back(builtin_group("Z2xZ2"));
    return gs;
}

Outcome peter_weyl_exactness() {
    const auto t0 = Clock::now();
    std::mt19937_64 rng(101);
    double worst = 0.0;
    for (const auto& g : core_groups()) {
        const auto table = compute_characters(g);
        for (int i = 0; i < 100; ++i) worst = std::max(worst, decompose(random_group_function(g, rng), table).residual);
    }
    const double secs = seconds_since(t0);
    return {worst <= 1e-10 && secs < 10.0, fmt("max residual %.3e, %.2f s", worst, secs)};
}

Outcome plancherel() {
    std::mt19937_64 rng(202);
    double worst = 0.0;
    for (const auto& g : core_groups()) {
        const auto table = compute_characters(g);
        for (int i = 0; i < 100; ++i) {
            const auto s = plancherel_check(center_project(random_group_function(g, rng)), table);
            worst = std::max(worst, std::abs(s.lhs - s.rhs));
        }
    }
    return {worst <= 1e-9, fmt("max |lhs - rhs| %.3e", worst)};
}

Outcome dual_discreteness() {
    double worst = std::numeric_limits<double>::infinity();
    std::vector<GroupPtr> gs;
    for (std::size_t n = 1; n <= 24; ++n) gs.push_back(cyclic_group(n));
    gs.push_back(builtin_group("Z2xZ2"));
    for (const auto& g : gs) worst = std::min(worst, verify_dual_discreteness(dual_group(g)));
    return {worst >= 1.0 - 1e-9, fmt("min pairwise sup-distance %.6f", worst)};
}

Outcome s3_table() {
    const auto t0 = Clock::now();
    const auto s3 = symmetric_group(3);
    const auto table = compute_characters(s3);
    bool ok = table.degrees == std::vector<int>{1, 1, 2};

    // Match expected rows by class trace values (identity, transposition, 3-cycle).
    const std::vector<std::vector<double>> expected{{1, 1, 1}, {1, -1, 1}, {2, 0, -1}};
    const auto& cc = table.classes;
    std::vector<std::size_t> rep_by_kind(3);
    for (std::size_t c = 0; c < cc.size(); ++c) {
        const std::size_t x = cc.classes[c].front();
        std::size_t order = 1;
        for (std::size_t y = x; y != s3->identity(); y = s3->mul(y, x)) ++order;
        rep_by_kind[order == 1 ? 0 : order == 2 ? 1 : 2] = x;
    }
    double worst = 0.0;
    std::vector<bool> used(3, false);
    for (const auto& want : expected) {
        bool matched = false;
        for (std::size_t s = 0; s < 3 && !matched; ++s) {
            if (used[s]) continue;
            double err = 0.0;
            for (int k = 0; k < 3; ++k) err = std::max(err, std::abs(table.value(s, rep_by_kind[k]) - want[k]));
            if (err <= 1e-7) {
                matched = used[s] = true;
                worst = std::max(worst, err);
            }
        }
        ok = ok && matched;
    }

    // Orthogonality from the multiplication table alone: sum over elements, no class data.
    const double n = 6.0;
    double ortho = 0.0;
    for (std::size_t a = 0; a < 3; ++a) {
        for (std::size_t b = 0; b < 3; ++b) {
            Complex ip = 0.0;
            for (std::size_t x = 0; x < 6; ++x) ip += table.value(a, x) * std::conj(table.value(b, x));
            ortho = std::max(ortho, std::abs(ip / n - (a == b ? 1.0 : 0.0)));
        }
    }
    // Column relation: sum_sigma chi(x) conj chi(y) = |centralizer of x| if x ~ y else 0.
    for (std::size_t x = 0; x < 6; ++x) {
        for (std::size_t y = 0; y < 6; ++y) {
            bool conj = false;
            for (std::size_t z = 0; z < 6; ++z) conj = conj || s3->conjugate(z, x) == y;
            std::size_t centralizer = 0;
            for (std::size_t z = 0; z < 6; ++z) centralizer += s3->mul(z, x) == s3->mul(x, z);
            Complex col = 0.0;
            for (std::size_t s = 0; s < 3; ++s) col += table.value(s, x) * std::conj(table.value(s, y));
            ortho = std::max(ortho, std::abs(col - (conj ? static_cast<double>(centralizer) : 0.0)));
        }
    }
    const double secs = seconds_since(t0);
    ok = ok && ortho <= 1e-7 && secs < 1.0;
    return {ok, fmt("max entry error %.2e, orthogonality error %.2e, %.3f s", worst, ortho, secs)};
}

Outcome bohr_mean() {
    const auto basis = make_basis({{"one", 1.0}, {"sqrt2", std::numbers::sqrt2}});
    const TrigPolynomial f(basis, {{3.0, Frequency::zero(2)},
                                   {2.0, Frequency::along(2, 0, 1)},
                                   {-1.0, Frequency::along(2, 1, 1)}});
    const std::int64_t steps = 2'000'000;
    double sum_c_lambda2 = 0.0;
    for (const auto& t : f.terms()) sum_c_lambda2 += std::abs(t.coeff) * std::pow(t.freq.value(f.basis()), 2);

    bool ok = true;
    double prev = -1.0;
    std::ostringstream detail;
    for (const double N : {1e2, 1e3, 1e4}) {
        const double err = std::abs(bohr_mean_numeric(sampler_of(f), N, steps) - 3.0);
        const double h = 2.0 * N / static_cast<double>(steps);
        const double allowed = 5.0 / N + sum_c_lambda2 * h * h / 24.0;
        ok = ok && err <= allowed && (prev < 0.0 || err <= 2.0 * prev);
        prev = err;
        detail << fmt("N=%.0e err %.2e (allowed %.2e) ", N, err, allowed);
    }
    return {ok, detail.str()};
}

Outcome almost_period() {
    const auto t0 = Clock::now();
    const auto basis = make_basis({{"one", 1.0}, {"sqrt2", std::numbers::sqrt2}});
    const TrigPolynomial f(basis, {{1.0, Frequency::along(2, 0, 1)}, {1.0, Frequency::along(2, 1, 1)}});
    const auto cert = find_almost_period(f, 0.2, 200.0, 1e-3);
    const double secs = seconds_since(t0);

    // Independent brute force: the sup over x of |f(x + tau) - f(x)| from direct evaluation.
    double brute = 0.0;
    const int points = 100'000;
    for (int i = 0; i < points; ++i) {
        const double x = -5000.0 + 10000.0 * i / points;
        const Complex shifted = std::exp(Complex(0, x + cert.tau)) + std::exp(Complex(0, std::numbers::sqrt2 * (x + cert.tau)));
        const Complex base = std::exp(Complex(0, x)) + std::exp(Complex(0, std::numbers::sqrt2 * x));
        brute = std::max(brute, std::abs(shifted - base));
    }
    const bool ok = cert.tau >= 182.0 && cert.tau <= 182.5 && cert.upper_bound <= 0.08 &&
                    brute <= cert.upper_bound + 1e-12 && secs < 5.0;
    return {ok, fmt("tau %.4f, bound %.5f, brute-force sup %.5f, %.2f s", cert.tau, cert.upper_bound, brute, secs)};
}

Outcome ranks() {
    const auto irr = make_basis({{"one", 1.0}, {"sqrt2", std::numbers::sqrt2}});
    const TrigPolynomial a(irr, {{1.0, Frequency::along(2, 0, 1)}, {1.0, Frequency::along(2, 1, 1)}});
    const auto one = make_basis({{"one", 1.0}});
    const TrigPolynomial b(one, {{1.0, Frequency::along(1, 0, 1)},
                                 {1.0, Frequency::along(1, 0, 2)},
                                 {1.0, Frequency::along(1, 0, 3)}});
    const TrigPolynomial c = TrigPolynomial::zero(one);
    const auto ra = frequency_module_rank(a), rb = frequency_module_rank(b), rc = frequency_module_rank(c);
    return {ra == 2 && rb == 1 && rc == 0, fmt("ranks %zu, %zu, %zu", ra, rb, rc)};
}

Outcome bohr_approximation() {
    std::mt19937_64 rng(808);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::normal_distribution<double> normal;
    int failures = 0;
    for (int instance = 0; instance < 1000; ++instance) {
        const std::size_t dims = 1 + rng() % 3;
        std::vector<BasisSymbol> symbols;
        for (std::size_t d = 0; d < dims; ++d) symbols.push_back({"b" + std::to_string(d), 0.1 + 3.0 * unit(rng)});
        const auto basis = make_basis(symbols);
        std::vector<Term> terms;
        const int count = static_cast<int>(rng() % 12);
        for (int k = 0; k < count; ++k) {
            std::vector<Rational> coords(dims);
            for (auto& q : coords) q = Rational(static_cast<long>(rng() % 9) - 4, 1 + static_cast<long>(rng() % 4));
            terms.push_back({Complex(normal(rng), normal(rng)) * std::pow(10.0, -3.0 * unit(rng)), Frequency(coords)});
        }
        const TrigPolynomial f(basis, terms);
        const double epsilon = std::pow(10.0, -3.0 + 3.5 * unit(rng));
        const TrigPolynomial g = bohr_approximate(f, epsilon);

        bool ok = true;
        for (const auto& t : g.terms()) {
            ok = ok && std::any_of(f.terms().begin(), f.terms().end(),
                                   [&](const Term& s) { return s.freq == t.freq && s.coeff == t.coeff; });
        }
        const TrigPolynomial tail = add(f, scale(g, -1.0));
        const double bound = sup_norm_bound(tail);
        ok = ok && bound < epsilon && tail.size() + g.size() == f.size();
        for (int i = 0; i < 20 && ok; ++i) {
            const double x = 200.0 * (unit(rng) - 0.5);
            ok = std::abs(eval(f, x) - eval(g, x)) <= bound + 1e-12;
        }
        failures += !ok;
    }
    return {failures == 0, fmt("%d of 1000 instances failed", failures)};
}

// Rank-one idempotent inside the sigma block: Lagrange interpolation in the
// algebra over the distinct eigenvalues of left convolution by a generic z.
GroupFunction primitive_idempotent(const CharacterTable& table, std::size_t sigma, std::mt19937_64& rng) {
    const auto& g = table.group;
    const std::size_t n = g->order();
    const GroupFunction e = central_idempotent(table, sigma);
    const GroupFunction z = isotypic_project(random_group_function(g, rng), table, sigma);
    Eigen::MatrixXcd m(n, n);
    for (std::size_t w = 0; w < n; ++w) {
        const auto col = convolve(z, GroupFunction::delta(g, w));
        for (std::size_t x = 0; x < n; ++x) m(x, w) = col[x];
    }
    const Eigen::VectorXcd ev = Eigen::ComplexEigenSolver<Eigen::MatrixXcd>(m, false).eigenvalues();
    const double scale = ev.cwiseAbs().maxCoeff();
    std::vector<Complex> distinct;
    for (const Complex v : ev) {
        if (std::abs(v) < 1e-8 * scale) continue;
        if (std::none_of(distinct.begin(), distinct.end(), [&](Complex u) { return std::abs(u - v) < 1e-6 * scale; }))
            distinct.push_back(v);
    }
    GroupFunction p = e;
    for (std::size_t j = 1; j < distinct.size(); ++j)
        p = convolve(p, (1.0 / (distinct[0] - distinct[j])) * (z - distinct[j] * e));
    return p;
}

Outcome minimal_invariance() {
    std::mt19937_64 rng(909);
    std::size_t rank_failures = 0, minimal_failures = 0, blocks = 0;
    for (const auto& g : builtin_sample()) {
        const auto table = compute_characters(g);
        for (std::size_t s = 0; s < table.size(); ++s) {
            ++blocks;
            const std::size_t d = static_cast<std::size_t>(table.degrees[s]);
            const auto generic = isotypic_project(random_group_function(g, rng), table, s);
            rank_failures += translate_span_rank(generic, Side::left) != d * d;
            rank_failures += translate_span_rank(generic, Side::right) != d * d;

            const auto p = primitive_idempotent(table, s, rng);
            const bool rank_ok =
                translate_span_rank(p, Side::left) == d && translate_span_rank(p, Side::right) == d;
            const bool minimal = minimality_check(p, Side::left, 50, 0x5eed + s) &&
                                 minimality_check(p, Side::right, 50, 0x5eed + s);
            minimal_failures += !(rank_ok && minimal);
        }
    }
    const auto z4 = cyclic_group(4);
    const auto t4 = compute_characters(z4);
    const auto two = t4.character_function(0) + t4.character_function(1);
    const bool rejected = !minimality_check(two, Side::left, 50, 0x5eed, std::vector<GroupFunction>{t4.character_function(1)});
    return {rank_failures == 0 && minimal_failures == 0 && rejected,
            fmt("%zu blocks: %zu rank mismatches, %zu minimality failures, Z4 counterexample %s", blocks, rank_failures,
                minimal_failures, rejected ? "rejected" : "accepted")};
}

Outcome gibson() {
    const auto basis = make_basis({{"one", 1.0}});
    const std::vector<Rational> as{Rational(1), Rational(1, 2), Rational(1, 10), Rational(1, 50)};
    std::vector<double> lengths;
    for (const auto& a : as) {
        const TrigPolynomial f = TrigPolynomial::character(basis, Frequency::along(1, 0, a));
        const double period = 2.0 * std::numbers::pi / to_double(a);
        lengths.push_back(inclusion_length_estimate(f, 0.1, 3.0 * period, period / 20000.0));
    }
    bool ok = true;
    std::ostringstream detail;
    for (std::size_t k = 0; k < as.size(); ++k) {
        const double normalized = lengths[k] * to_double(as[k]) / (lengths[0] * to_double(as[0]));
        ok = ok && normalized >= 0.5 && normalized <= 2.0;
        detail << fmt("L(%s)=%.3f ", format_rational(as[k]).c_str(), lengths[k]);
    }
    return {ok, detail.str()};
}

} // namespace

int main() {
    const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
        {"peter-weyl exactness", peter_weyl_exactness},
        {"plancherel", plancherel},
        {"dual discreteness", dual_discreteness},
        {"S3 character table", s3_table},
        {"bohr mean convergence", bohr_mean},
        {"almost-period certificate", almost_period},
        {"frequency module rank", ranks},
        {"bohr approximation", bohr_approximation},
        {"minimal almost invariance", minimal_invariance},
        {"gibson inclusion length", gibson},
    };
    int failed = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        Outcome o;
        const auto t0 = Clock::now();
        try {
            o = criteria[i].second();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        failed += !o.pass;
        std::printf("[%s] %2zu %s: %s [%.2f s]\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].first.c_str(),
                    o.detail.c_str(), seconds_since(t0));
    }
    std::printf("%zu/%zu criteria passed\n", criteria.size() - failed, criteria.size());
    return failed == 0 ? 0 : 1;
}

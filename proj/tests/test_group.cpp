#include <gtest/gtest.h>

#include <random>
#include <set>

#include "apharm/group.hpp"
#include "apharm/json_io.hpp"

using namespace apharm;

namespace {

std::vector<GroupPtr> small_groups() {
    return {cyclic_group(6), symmetric_group(3), dihedral_group(4), quaternion_group(), symmetric_group(4),
            direct_product(*cyclic_group(2), *cyclic_group(2))};
}

// Straight from the definition, written independently of convolve().
GroupFunction convolve_oracle(const GroupFunction& f, const GroupFunction& g) {
    const FiniteGroup& G = *f.group;
    GroupFunction out = GroupFunction::zero(f.group);
    for (std::size_t x = 0; x < G.order(); ++x) {
        for (std::size_t y = 0; y < G.order(); ++y) {
            // find w with y w = x
            for (std::size_t w = 0; w < G.order(); ++w) {
                if (G.mul(y, w) == x) out.values[x] += f.values[y] * g.values[w] / static_cast<double>(G.order());
            }
        }
    }
    return out;
}

std::size_t transposition_index(const FiniteGroup& s3) {
    for (std::size_t i = 0; i < s3.order(); ++i) {
        if (i != s3.identity() && s3.mul(i, i) == s3.identity()) return i;
    }
    return s3.order();
}

} // namespace

TEST(FiniteGroup, BuiltinsAreValid) {
    EXPECT_EQ(cyclic_group(7)->order(), 7u);
    EXPECT_EQ(dihedral_group(4)->order(), 8u);
    EXPECT_EQ(symmetric_group(4)->order(), 24u);
    EXPECT_EQ(quaternion_group()->order(), 8u);
    EXPECT_TRUE(cyclic_group(12)->is_abelian());
    EXPECT_FALSE(symmetric_group(3)->is_abelian());
    EXPECT_FALSE(dihedral_group(4)->is_abelian());
    EXPECT_FALSE(quaternion_group()->is_abelian());
    EXPECT_TRUE(builtin_group("Z2xZ2")->is_abelian());
    EXPECT_EQ(builtin_group("D5")->order(), 10u);
    EXPECT_THROW(builtin_group("X3"), Error);

    // Q8: every element other than +-1 squares to -1
    const auto q = quaternion_group();
    std::size_t minus_one = q->order();
    for (std::size_t i = 0; i < q->order(); ++i) {
        if (q->names()[i] == "-1") minus_one = i;
    }
    for (std::size_t i = 0; i < q->order(); ++i) {
        if (q->names()[i] != "1" && q->names()[i] != "-1") EXPECT_EQ(q->mul(i, i), minus_one);
    }
}

TEST(FiniteGroup, RejectsBadTables) {
    EXPECT_THROW(FiniteGroup("bad", {}, {{0, 1}, {0, 1}}), Error);              // not Latin
    EXPECT_THROW(FiniteGroup("bad", {}, {{0, 2, 1}, {2, 1, 0}, {1, 0, 2}}), Error);  // no identity
    EXPECT_THROW(FiniteGroup("bad", {}, {{0, 2}, {1, 0}}), Error);              // out of range
    EXPECT_THROW(FiniteGroup("bad", {"a"}, {{0, 1}, {1, 0}}), Error);           // names
    // Latin square with identity but not associative (order 5 loop)
    EXPECT_THROW(FiniteGroup("loop", {},
                             {{0, 1, 2, 3, 4}, {1, 0, 3, 4, 2}, {2, 4, 0, 1, 3}, {3, 2, 4, 0, 1}, {4, 3, 1, 2, 0}}),
                 Error);
}

TEST(FiniteGroup, IdentityAndInverses) {
    for (const auto& g : small_groups()) {
        for (std::size_t i = 0; i < g->order(); ++i) {
            EXPECT_EQ(g->mul(g->identity(), i), i);
            EXPECT_EQ(g->mul(i, g->inverse(i)), g->identity());
            EXPECT_EQ(g->mul(g->inverse(i), i), g->identity());
        }
    }
}

TEST(GroupAlgebra, HaarIntegral) {
    for (const auto& g : small_groups()) EXPECT_NEAR(std::abs(haar_integral(GroupFunction::constant(g, 1.0)) - 1.0), 0.0, 1e-15);
    const auto z2 = cyclic_group(2);
    EXPECT_EQ(haar_integral(GroupFunction(z2, {2.0, 0.0})), Complex(1.0));

    std::mt19937_64 rng(1);
    for (const auto& g : small_groups()) {
        const auto f = random_group_function(g, rng);
        for (std::size_t s = 0; s < g->order(); ++s) {
            EXPECT_NEAR(std::abs(haar_integral(left_translate(s, f)) - haar_integral(f)), 0.0, 1e-14);
            EXPECT_NEAR(std::abs(haar_integral(right_translate(s, f)) - haar_integral(f)), 0.0, 1e-14);
        }
    }
}

TEST(GroupAlgebra, ConvolutionExamples) {
    const auto z2 = cyclic_group(2);
    const GroupFunction g(z2, {Complex(0.3, 1.0), Complex(-2.0, 0.5)});
    const auto out = convolve(GroupFunction(z2, {2.0, 0.0}), g);
    EXPECT_EQ(out.values, g.values);

    std::mt19937_64 rng(2);
    const auto z6 = cyclic_group(6);
    for (int i = 0; i < 20; ++i) {
        const auto a = random_group_function(z6, rng), b = random_group_function(z6, rng);
        EXPECT_LE(sup_distance(convolve(a, b), convolve(b, a)), 1e-14);
    }

    const auto s3 = symmetric_group(3);
    const auto delta = GroupFunction::delta(s3, transposition_index(*s3));
    const auto h = random_group_function(s3, rng);
    const auto fg = convolve(delta, h), gf = convolve(h, delta);
    EXPECT_LE(sup_distance(fg, convolve_oracle(delta, h)), 1e-15);
    EXPECT_LE(sup_distance(gf, convolve_oracle(h, delta)), 1e-15);
    EXPECT_GT(sup_distance(fg, gf), 1e-3);

    EXPECT_THROW(convolve(delta, GroupFunction::zero(z6)), Error);
}

TEST(GroupAlgebra, ConvolutionLaws) {
    std::mt19937_64 rng(3);
    for (const auto& g : small_groups()) {
        for (int i = 0; i < 10; ++i) {
            const auto a = random_group_function(g, rng), b = random_group_function(g, rng), c = random_group_function(g, rng);
            EXPECT_LE(sup_distance(convolve(convolve(a, b), c), convolve(a, convolve(b, c))), 1e-10);
            EXPECT_LE(l1_norm(convolve(a, b)), l1_norm(a) * l1_norm(b) + 1e-12);
            EXPECT_LE(sup_distance(involute(convolve(a, b)), convolve(involute(b), involute(a))), 1e-12);
            EXPECT_LE(sup_distance(convolve(a, b), convolve_oracle(a, b)), 1e-12);
        }
    }
}

TEST(GroupAlgebra, Involution) {
    const auto s3 = symmetric_group(3);
    GroupFunction sym = GroupFunction::zero(s3);
    for (std::size_t x = 0; x < 6; ++x) sym.values[x] = static_cast<double>(x + s3->inverse(x));
    EXPECT_EQ(involute(sym).values, sym.values);

    std::mt19937_64 rng(4);
    for (const auto& g : small_groups()) {
        const auto f = random_group_function(g, rng);
        EXPECT_EQ(involute(involute(f)).values, f.values);
        const Complex at_e = convolve(involute(f), f).values[g->identity()];
        EXPECT_NEAR(at_e.real(), l2_norm(f) * l2_norm(f), 1e-12);
        EXPECT_NEAR(at_e.imag(), 0.0, 1e-12);
    }

    const auto z2 = cyclic_group(2);
    const auto i_delta = GroupFunction::delta(z2, 0, Complex(0.0, 1.0));
    EXPECT_EQ(involute(i_delta).values, (std::vector<Complex>{Complex(0.0, -1.0), 0.0}));
}

TEST(GroupAlgebra, Translations) {
    std::mt19937_64 rng(5);
    for (const auto& g : small_groups()) {
        const auto f = random_group_function(g, rng);
        EXPECT_EQ(left_translate(g->identity(), f).values, f.values);
        EXPECT_EQ(right_translate(g->identity(), f).values, f.values);
        for (std::size_t s = 0; s < g->order(); ++s) {
            EXPECT_EQ(left_translate(s, left_translate(g->inverse(s), f)).values, f.values);
            if (g->is_abelian()) EXPECT_EQ(left_translate(s, f).values, right_translate(s, f).values);
        }
    }
    EXPECT_THROW(left_translate(99, GroupFunction::zero(cyclic_group(3))), Error);
}

TEST(GroupAlgebra, CenterProjection) {
    std::mt19937_64 rng(6);
    const auto z6 = cyclic_group(6);
    const auto f = random_group_function(z6, rng);
    EXPECT_LE(sup_distance(center_project(f), f), 1e-15);

    const auto s3 = symmetric_group(3);
    const auto h = random_group_function(s3, rng);
    EXPECT_LE(sup_distance(center_project(center_project(h)), center_project(h)), 1e-15);

    // Triple-loop oracle: (P_Z delta_t)(x) = #{z : z x z^-1 = t} / n.
    const std::size_t t = transposition_index(*s3);
    const auto p = center_project(GroupFunction::delta(s3, t));
    const auto cc = conjugacy_classes(*s3);
    for (std::size_t x = 0; x < 6; ++x) {
        double count = 0;
        for (std::size_t z = 0; z < 6; ++z) count += s3->mul(s3->mul(z, x), s3->inverse(z)) == t ? 1.0 : 0.0;
        EXPECT_NEAR(p.values[x].real(), count / 6.0, 1e-15);
        EXPECT_NEAR(p.values[x].real(), cc.class_of[x] == cc.class_of[t] ? 1.0 / 3.0 : 0.0, 1e-15);
    }
}

TEST(GroupAlgebra, Centrality) {
    const auto s3 = symmetric_group(3);
    const auto cc = conjugacy_classes(*s3);
    for (const auto& cls : cc.classes) {
        GroupFunction ind = GroupFunction::zero(s3);
        for (const auto x : cls) ind.values[x] = 1.0;
        EXPECT_TRUE(is_central(ind, 1e-12));
    }
    EXPECT_FALSE(is_central(GroupFunction::delta(s3, transposition_index(*s3)), 1e-9));

    std::mt19937_64 rng(7);
    EXPECT_TRUE(is_central(random_group_function(cyclic_group(6), rng)));
    EXPECT_THROW(is_central(GroupFunction::zero(s3), -1.0), Error);

    for (const auto& g : small_groups()) {
        const auto central = center_project(random_group_function(g, rng));
        ASSERT_TRUE(is_central(central, 1e-12));
        EXPECT_LE(sup_distance(center_project(central), central), 1e-12);
    }
}

TEST(ConjugacyClasses, MatchExhaustiveOracle) {
    auto sizes = [](const ConjugacyClasses& cc) {
        std::vector<std::size_t> s;
        for (const auto& c : cc.classes) s.push_back(c.size());
        return s;
    };
    EXPECT_EQ(conjugacy_classes(*cyclic_group(5)).size(), 5u);
    EXPECT_EQ(sizes(conjugacy_classes(*symmetric_group(3))), (std::vector<std::size_t>{1, 3, 2}));
    EXPECT_EQ(sizes(conjugacy_classes(*quaternion_group())), (std::vector<std::size_t>{1, 1, 2, 2, 2}));

    for (const auto& g : small_groups()) {
        const auto cc = conjugacy_classes(*g);
        EXPECT_EQ(cc.classes.front(), std::vector<std::size_t>{g->identity()});
        for (std::size_t x = 0; x < g->order(); ++x) {
            for (std::size_t y = 0; y < g->order(); ++y) {
                bool conj = false;
                for (std::size_t z = 0; z < g->order() && !conj; ++z) conj = g->conjugate(z, x) == y;
                EXPECT_EQ(conj, cc.class_of[x] == cc.class_of[y]);
            }
        }
    }
}

TEST(GroupJson, RoundTripAndValidation) {
    const auto s3 = symmetric_group(3);
    const auto back = group_from_json(group_to_json(*s3));
    EXPECT_EQ(*back, *s3);
    EXPECT_EQ(back->identity(), s3->identity());
    EXPECT_EQ(back->inverses(), s3->inverses());

    std::mt19937_64 rng(8);
    const auto f = random_group_function(s3, rng);
    EXPECT_EQ(function_from_json(function_to_json(f), back).values, f.values);

    EXPECT_THROW(function_from_json(function_to_json(f), cyclic_group(6)), Error);
    EXPECT_THROW(group_from_json(Json::parse(R"({"name":"x","order":3,"table":[[0,1],[1,0]]})")), Error);
    EXPECT_THROW(group_from_json(Json::parse(R"({"name":"x","table":[[0,1],[0,1]]})")), Error);
}

#include <gtest/gtest.h>

#include "support.hpp"

using namespace polarwitt;
using testing_support::random_witt;

namespace {

PresentationPtr ring(std::uint32_t p, std::vector<Generator> gens, std::vector<Word> rels = {}, std::int64_t bound = 32) {
    return Presentation::make(GradedField::ungraded(Prime(p)), std::move(gens), std::move(rels), {}, DegreeBound{bound, 24});
}

WittVector constants(const PresentationPtr& A, std::vector<std::int64_t> c) {
    std::vector<AlgElement> e;
    for (auto v : c) e.push_back(AlgElement::constant(A, v));
    return WittVector(A, WittDegree{}, e);
}

struct Sample {
    std::string name;
    PresentationPtr A;
    std::int64_t j;
};

std::vector<Sample> samples() {
    return {{"F_2", ring(2, {}), 0},
            {"F_3[t]", ring(3, {{"t", 2}}, {}, 60), 2},
            {"F_2[x,y]/x^3", ring(2, {{"x", 2}, {"y", 2}}, {Word{3, 0}}, 40), 2}};
}

} // namespace

TEST(Witt, UniversalLowDegree) {
    auto U2 = build_universal(Prime(2), 1);
    auto v = [](int n, int i) { return IntPoly::variable(n, i); };
    EXPECT_EQ(U2.S(1), v(4, 1) + v(4, 3) - v(4, 0) * v(4, 2));
    auto U3 = build_universal(Prime(3), 1);
    IntPoly x0 = v(4, 0), y0 = v(4, 2);
    EXPECT_EQ(U3.S(1), v(4, 1) + v(4, 3) - x0 * x0 * y0 - x0 * y0 * y0);
    EXPECT_EQ(U2.verify_ghost_identities(), "");
    EXPECT_EQ(U3.verify_ghost_identities(), "");
}

TEST(Witt, IntegerGhost) {
    EXPECT_EQ(ghost_integer(Prime(2), {1, 1}), (std::vector<mpz_class>{1, 3}));
    EXPECT_EQ(ghost_integer(Prime(3), {0, 0, 0}), (std::vector<mpz_class>{0, 0, 0}));
    // ghost of a sum is the sum of ghosts, over Z
    for (int a0 = -3; a0 <= 3; ++a0)
        for (int b1 = -2; b1 <= 2; ++b1) {
            std::vector<mpz_class> a{a0, 2, -1}, b{5, b1, 3};
            for (std::uint32_t p : {2u, 3u}) {
                auto s = witt_integer_op(Prime(p), '+', a, b), m = witt_integer_op(Prime(p), '*', a, b);
                auto ga = ghost_integer(Prime(p), a), gb = ghost_integer(Prime(p), b);
                auto gs = ghost_integer(Prime(p), s), gm = ghost_integer(Prime(p), m);
                for (int i = 0; i < 3; ++i) {
                    EXPECT_EQ(gs[i], ga[i] + gb[i]);
                    EXPECT_EQ(gm[i], ga[i] * gb[i]);
                }
                auto f = witt_integer_op(Prime(p), 'F', a);
                ASSERT_EQ(f.size(), 2u);
                auto gf = ghost_integer(Prime(p), f);
                EXPECT_EQ(gf[0], ga[1]);
                EXPECT_EQ(gf[1], ga[2]);
            }
        }
}

TEST(Witt, GhostOfTeichmuller) {
    auto A = ring(2, {{"x", 2}});
    auto x = AlgElement::generator(A, 0);
    auto g = ghost(teichmuller(x, 2));
    EXPECT_EQ(g, (std::vector<AlgElement>{x, x.pow(2), x.pow(4)}));
    for (const auto& c : ghost(WittVector::zero(A, WittDegree::integral(2), 2))) EXPECT_TRUE(c.is_zero());
}

TEST(Witt, AdditionOverPrimeField) {
    auto A = ring(2, {});
    EXPECT_EQ(witt_add(constants(A, {1, 0}), constants(A, {1, 0})), constants(A, {0, 1}));
    // against Z/4: [1] + [1] = 2 = 0 + 2*[1]
    auto s = witt_scalar_add(WittScalar::from_components(Prime(2), {1, 0}), WittScalar::from_components(Prime(2), {1, 0}));
    EXPECT_EQ(s.components(), (std::vector<std::uint32_t>{0, 1}));
    auto B = ring(2, {{"x", 2}});
    auto t = teichmuller(AlgElement::generator(B, 0), 2);
    EXPECT_EQ(witt_add(t, WittVector::zero(B, WittDegree::integral(2), 2)), t);
}

TEST(Witt, TeichmullerMultiplicative) {
    auto A = ring(3, {{"x", 2}, {"y", 4}});
    auto x = AlgElement::generator(A, 0), y = AlgElement::generator(A, 1);
    EXPECT_EQ(witt_mul(teichmuller(x, 2), teichmuller(y, 2)), teichmuller(x * y, 2));
    EXPECT_TRUE(witt_mul(teichmuller(x, 2), WittVector::zero(A, WittDegree::integral(4), 2)).is_zero());
    EXPECT_EQ(teichmuller(x, 2).to_string(), "[x;0;0]");
}

TEST(Witt, FrobeniusOfTeichmuller) {
    for (std::uint32_t p : {2u, 3u}) {
        auto A = ring(p, {{"x", 2}, {"y", 2}}, {}, 200);
        auto x = AlgElement::generator(A, 0), y = AlgElement::generator(A, 1);
        for (const auto& a : {x, x * y, x * x + y * y}) {
            if (!a.is_homogeneous()) continue;
            EXPECT_EQ(frobenius(teichmuller(a, 2)), teichmuller(a.pow(p), 1));
        }
    }
}

TEST(Witt, FrobeniusVerschiebungIdentities) {
    for (std::uint32_t p : {2u, 3u}) {
        auto A = ring(p, {{"t", 2}}, {}, 2 * 81 * 3);
        auto g = testing_support::rng(p);
        for (int trial = 0; trial < 10; ++trial) {
            for (int n = 1; n <= 3; ++n) {
                auto x = random_witt(A, 2, n, g);
                EXPECT_EQ(frobenius(verschiebung(x)), witt_times(x, p));
                EXPECT_EQ(verschiebung(frobenius(x)), witt_times(x, p));
            }
        }
    }
}

TEST(Witt, VerschiebungShiftsComponents) {
    auto A = ring(2, {{"x", 2}});
    auto x = AlgElement::generator(A, 0);
    auto v = verschiebung(teichmuller(x * x, 1));
    EXPECT_EQ(v.to_string(), "[0;x^2;0]");
    EXPECT_EQ(v.degree(), WittDegree::integral(2));
    auto odd = verschiebung(teichmuller(x, 0));
    EXPECT_EQ(odd.degree(), (WittDegree{2, 0}.over_p(2)));
    EXPECT_EQ(odd.degree(), WittDegree::integral(1));
}

TEST(Witt, RingLaws) {
    for (const auto& s : samples()) {
        auto g = testing_support::rng(s.name.size());
        for (int trial = 0; trial < 8; ++trial) {
            const int n = 1 + trial % 3;
            auto a = random_witt(s.A, s.j, n, g), b = random_witt(s.A, s.j, n, g), c = random_witt(s.A, s.j, n, g);
            EXPECT_EQ(witt_add(a, b), witt_add(b, a)) << s.name;
            EXPECT_EQ(witt_add(witt_add(a, b), c), witt_add(a, witt_add(b, c))) << s.name;
            EXPECT_EQ(witt_mul(a, b), witt_mul(b, a)) << s.name;
            EXPECT_EQ(witt_mul(witt_mul(a, b), c), witt_mul(a, witt_mul(b, c))) << s.name;
            EXPECT_EQ(witt_mul(a, witt_add(b, c)), witt_add(witt_mul(a, b), witt_mul(a, c))) << s.name;
            EXPECT_TRUE(witt_add(a, witt_neg(a)).is_zero()) << s.name;
            EXPECT_EQ(witt_mul(a, WittVector::one(s.A, n)), a) << s.name;
            auto ga = ghost(a), gb = ghost(b), gs = ghost(witt_add(a, b)), gm = ghost(witt_mul(a, b));
            for (int m = 0; m <= n; ++m) {
                EXPECT_EQ(gs[m], ga[m] + gb[m]);
                EXPECT_EQ(gm[m], ga[m] * gb[m]);
            }
        }
    }
}

TEST(Witt, Homogeneity) {
    for (const auto& s : samples()) {
        if (s.j == 0) continue;
        auto g = testing_support::rng(7 + s.name.size());
        const std::int64_t p = s.A->p();
        for (int trial = 0; trial < 6; ++trial) {
            auto a = random_witt(s.A, s.j, 2, g), b = random_witt(s.A, s.j, 2, g);
            auto sum = witt_add(a, b), prod = witt_mul(a, b);
            std::int64_t e = s.j;
            for (int m = 0; m <= 2; ++m, e *= p) {
                if (!sum[m].is_zero()) EXPECT_EQ(degree_of(sum[m]), (DegreeInfo{DegreeKind::Homogeneous, e}));
                if (!prod[m].is_zero()) EXPECT_EQ(degree_of(prod[m]), (DegreeInfo{DegreeKind::Homogeneous, 2 * e}));
            }
        }
    }
}

TEST(Witt, GhostNaturality) {
    // phi: F_3[x, y] -> F_3[t], x -> t, y -> 2t, all of degree 2
    auto A = ring(3, {{"x", 2}, {"y", 2}}, {}, 60);
    auto B = ring(3, {{"t", 2}}, {}, 60);
    auto t = AlgElement::generator(B, 0);
    auto phi = [&](const AlgElement& a) {
        AlgElement r = AlgElement::zero(B);
        for (const auto& [m, c] : a.terms()) r = r + (t.pow(m.exps[0]) * t.scaled(2).pow(m.exps[1])).scaled(c);
        return r;
    };
    auto g = testing_support::rng(21);
    for (int trial = 0; trial < 10; ++trial) {
        auto a = random_witt(A, 2, 2, g);
        std::vector<AlgElement> mapped;
        for (const auto& c : a.components()) mapped.push_back(phi(c));
        auto ga = ghost(a);
        auto gb = ghost(WittVector(B, a.degree(), mapped));
        for (int m = 0; m <= 2; ++m) EXPECT_EQ(gb[m], phi(ga[m]));
    }
}

TEST(Witt, PolarProduct) {
    auto P = free_polar(GradedField::ungraded(Prime(2)), {{"x", 2}}, DegreeBound{32, 24});
    auto x = AlgElement::generator(P->ambient(), 0);
    auto tx = teichmuller(x, 2, std::nullopt, P);
    EXPECT_EQ(witt_mu({tx, tx}), teichmuller(x * x, 2, std::nullopt, P));
    EXPECT_TRUE(witt_mu({tx, WittVector::zero(P->ambient(), WittDegree::integral(2), 2, P)}).is_zero());
    EXPECT_THROW(witt_mul(tx, tx), DomainError);
    EXPECT_THROW(witt_mu({tx}), DomainError);
}

// Sums and p-fold products on a polar algebra agree with the same operations in its hull,
// pulled back along the unit.
TEST(Witt, PolarAgreesWithHull) {
    for (std::uint32_t p : {2u, 3u}) {
        auto P = free_polar(GradedField::ungraded(Prime(p)), {{"x", 2}, {"y", 2}}, DegreeBound{p == 2 ? 32 : 54, 24});
        Hull H(P);
        auto g = testing_support::rng(40 + p);
        auto random_carrier = [&](std::int64_t e) {
            AlgElement v = AlgElement::zero(P->ambient());
            for (const auto& b : P->basis_in_degree(e)) v = v + b.scaled(static_cast<std::int64_t>(g() % p));
            return v;
        };
        auto to_hull = [&](const WittVector& w) {
            std::vector<AlgElement> c;
            for (const auto& a : w.components()) c.push_back(H.unit(a));
            return WittVector(H.algebra(), w.degree(), c);
        };
        auto from_hull = [&](const WittVector& w) {
            std::vector<AlgElement> c;
            for (const auto& a : w.components()) c.push_back(H.restrict_to_carrier(a));
            return WittVector(P->ambient(), w.degree(), c, P);
        };
        for (int trial = 0; trial < 6; ++trial) {
            std::vector<WittVector> xs;
            for (std::uint32_t k = 0; k < p; ++k) {
                std::vector<AlgElement> c;
                std::int64_t e = 2;
                for (int i = 0; i <= 1; ++i, e *= p) c.push_back(random_carrier(e));
                xs.push_back(WittVector(P->ambient(), WittDegree::integral(2), c, P));
            }
            EXPECT_EQ(witt_add(xs[0], xs[1]), from_hull(witt_add(to_hull(xs[0]), to_hull(xs[1]))));
            WittVector prod = to_hull(xs[0]);
            for (std::uint32_t k = 1; k < p; ++k) prod = witt_mul(prod, to_hull(xs[k]));
            EXPECT_EQ(witt_mu(xs), from_hull(prod));
        }
    }
}

TEST(Witt, PolyRingIsoCheck) {
    auto good = witt_of_poly_ring_iso_check(Prime(2), 3, 2, 8);
    EXPECT_TRUE(good.ok);
    EXPECT_FALSE(good.first_mismatch.has_value());
    auto bad = witt_of_poly_ring_iso_check(Prime(2), 2, 1, 8);
    EXPECT_FALSE(bad.ok);
    ASSERT_TRUE(bad.first_mismatch.has_value());
    EXPECT_EQ(*bad.first_mismatch, 1); // j = 1: component of degree 2 is u, left rank 1, right 0
    EXPECT_TRUE(witt_of_poly_ring_iso_check(Prime(2), 2, 2, 8, true).ok);
    EXPECT_THROW(witt_of_poly_ring_iso_check(Prime(2), 0, 2, 8), DomainError);
}

TEST(Witt, Errors) {
    auto A = ring(2, {{"x", 2}});
    auto x = AlgElement::generator(A, 0);
    try {
        witt_add(teichmuller(x, 1), teichmuller(x, 2));
        FAIL();
    } catch (const DomainError& e) {
        EXPECT_EQ(e.code(), ErrorCode::LengthMismatch);
    }
    try {
        witt_add(teichmuller(x, 1), teichmuller(x * x, 1));
        FAIL();
    } catch (const DomainError& e) {
        EXPECT_EQ(e.code(), ErrorCode::DegreeMismatch);
    }
    EXPECT_THROW(WittVector(A, WittDegree::integral(2), {x, x}), DomainError);
    EXPECT_THROW(teichmuller(x + x * x, 1), DomainError);
    EXPECT_THROW(frobenius(teichmuller(x, 0)), DomainError);
}

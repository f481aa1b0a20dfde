#include <gtest/gtest.h>

#include "support.hpp"

using namespace polarwitt;

namespace {

WittScalar ws(std::uint32_t p, int n, std::int64_t v) { return WittScalar(Prime(p), n, v); }

} // namespace

TEST(Scalars, AdditionExamples) {
    EXPECT_EQ(witt_scalar_add(ws(2, 2, 3), ws(2, 2, 3)), ws(2, 2, 6));
    EXPECT_EQ(witt_scalar_add(ws(3, 0, 2), ws(3, 0, 2)), ws(3, 0, 1));
    EXPECT_EQ(witt_scalar_add(ws(2, 2, 7), ws(2, 2, 1)).value(), 0);
}

TEST(Scalars, FrobeniusIsIdentity) {
    EXPECT_EQ(frob_scalar(ws(2, 2, 5)), ws(2, 2, 5));
    EXPECT_EQ(frob_scalar(ws(3, 1, 0)), ws(3, 1, 0));
    for (std::uint32_t p : {2u, 3u, 5u})
        for (int n = 0; n <= 2; ++n)
            for (std::int64_t a = 0; a < 30; ++a)
                for (std::int64_t b = 0; b < 30; b += 7) {
                    auto x = ws(p, n, a), y = ws(p, n, b);
                    EXPECT_EQ(frob_scalar(x), x);
                    EXPECT_EQ(frob_scalar(witt_scalar_mul(x, y)), witt_scalar_mul(frob_scalar(x), frob_scalar(y)));
                    EXPECT_EQ(frob_scalar(witt_scalar_add(x, y)), witt_scalar_add(frob_scalar(x), frob_scalar(y)));
                }
}

// Every ring of order at most 512; triples exhaustively up to order 128, pairs beyond.
TEST(Scalars, RingLawsExhaustive) {
    for (std::uint32_t p : {2u, 3u, 5u, 7u}) {
        for (int n = 0;; ++n) {
            mpz_class order = mpz_pow(Prime(p), static_cast<unsigned long>(n) + 1);
            if (order > 512) break;
            const long q = order.get_si();
            std::vector<WittScalar> all;
            for (long v = 0; v < q; ++v) all.push_back(ws(p, n, v));
            const auto zero = all[0], one = all[1 % q];
            for (const auto& a : all) {
                ASSERT_EQ(witt_scalar_add(a, witt_scalar_neg(a)), zero);
                ASSERT_EQ(witt_scalar_mul(a, one), a);
                ASSERT_EQ(witt_scalar_sub(a, a), zero);
                for (const auto& b : all) {
                    ASSERT_EQ(witt_scalar_add(a, b), witt_scalar_add(b, a));
                    ASSERT_EQ(witt_scalar_mul(a, b), witt_scalar_mul(b, a));
                    if (q > 128) continue;
                    for (const auto& c : all) {
                        ASSERT_EQ(witt_scalar_add(witt_scalar_add(a, b), c), witt_scalar_add(a, witt_scalar_add(b, c)));
                        ASSERT_EQ(witt_scalar_mul(witt_scalar_mul(a, b), c), witt_scalar_mul(a, witt_scalar_mul(b, c)));
                        ASSERT_EQ(witt_scalar_mul(a, witt_scalar_add(b, c)),
                                  witt_scalar_add(witt_scalar_mul(a, b), witt_scalar_mul(a, c)));
                    }
                }
            }
        }
    }
}

TEST(Scalars, ComponentsRoundTrip) {
    for (std::uint32_t p : {2u, 3u, 5u})
        for (int n = 0; n <= 3; ++n) {
            const long q = mpz_pow(Prime(p), static_cast<unsigned long>(n) + 1).get_si();
            for (long v = 0; v < q; ++v) {
                auto x = ws(p, n, v);
                auto c = x.components();
                ASSERT_EQ(c.size(), static_cast<std::size_t>(n) + 1);
                EXPECT_EQ(WittScalar::from_components(Prime(p), c), x);
            }
        }
}

// Integer model against Witt vectors over F_p computed with the universal polynomials.
TEST(Scalars, AgreesWithWittVectorsOverPrimeField) {
    for (std::uint32_t p : {2u, 3u}) {
        const int n = 2;
        auto A = Presentation::make(GradedField::ungraded(Prime(p)), {});
        auto vec = [&](const std::vector<std::uint32_t>& c) {
            std::vector<AlgElement> e;
            for (auto v : c) e.push_back(AlgElement::constant(A, v));
            return WittVector(A, WittDegree{}, e);
        };
        auto comps_of = [&](const WittVector& w) {
            std::vector<std::uint32_t> c;
            for (const auto& a : w.components()) {
                std::uint32_t v = 0;
                for (const auto& [m, k] : a.terms()) v = k;
                c.push_back(v);
            }
            return c;
        };
        std::vector<std::vector<std::uint32_t>> all;
        std::vector<std::uint32_t> d(n + 1, 0);
        while (true) {
            all.push_back(d);
            std::size_t k = 0;
            while (k < d.size() && ++d[k] == p) d[k++] = 0;
            if (k == d.size()) break;
        }
        for (const auto& a : all)
            for (const auto& b : all) {
                auto sa = WittScalar::from_components(Prime(p), a), sb = WittScalar::from_components(Prime(p), b);
                EXPECT_EQ(WittScalar::from_components(Prime(p), comps_of(witt_add(vec(a), vec(b)))), witt_scalar_add(sa, sb));
                EXPECT_EQ(WittScalar::from_components(Prime(p), comps_of(witt_mul(vec(a), vec(b)))), witt_scalar_mul(sa, sb));
            }
    }
}

TEST(Scalars, Errors) {
    EXPECT_THROW(Prime(4), DomainError);
    EXPECT_THROW(Prime(1), DomainError);
    EXPECT_THROW(ws(2, -1, 0), DomainError);
    try {
        witt_scalar_add(ws(2, 1, 1), ws(2, 2, 1));
        FAIL();
    } catch (const DomainError& e) {
        EXPECT_EQ(e.code(), ErrorCode::LengthMismatch);
    }
    EXPECT_THROW(witt_scalar_mul(ws(2, 1, 1), ws(3, 1, 1)), DomainError);
}

TEST(Scalars, PrimeFieldElements) {
    FpElem a(Prime(5), 3), b(Prime(5), 4);
    EXPECT_EQ((a + b).value(), 2u);
    EXPECT_EQ((a - b).value(), 4u);
    EXPECT_EQ((a * b).value(), 2u);
    EXPECT_EQ((a * a.inverse()).value(), 1u);
    EXPECT_EQ(FpElem(Prime(5), -1).value(), 4u);
    EXPECT_THROW(a + FpElem(Prime(3), 1), DomainError);
}

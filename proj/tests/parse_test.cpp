#include <gtest/gtest.h>

#include "support.hpp"

using namespace polarwitt;

namespace {

struct Position {
    std::size_t line, column;
    std::string message;
};

template <class F>
Position parse_failure(F&& f) {
    try {
        f();
    } catch (const ParseError& e) {
        std::string w = e.what();
        return {e.line(), e.column(), w.substr(w.find(": ") + 2)};
    }
    ADD_FAILURE() << "no parse error";
    return {0, 0, ""};
}

void expect_at(const Position& got, std::size_t line, std::size_t col, const std::string& msg) {
    EXPECT_EQ(got.line, line);
    EXPECT_EQ(got.column, col);
    EXPECT_EQ(got.message, msg);
}

std::vector<PresentationPtr> rings() {
    return {
        parse_algebra("algebra p=2 mode=ungraded gens: x:2, y:6 rels: x^3"),
        parse_algebra("algebra p=3 mode=ungraded strict_even=off gens: x:1, y:2 rels: x^3"),
        parse_algebra("algebra p=2 mode=periodic d=3 gens: x:1, y:2 rels: y^2"),
        parse_algebra("algebra p=5 bound=60 gens: t:2"),
    };
}

} // namespace

TEST(Parse, Elements) {
    auto A = parse_algebra("algebra p=3 mode=ungraded strict_even=off gens: x:1, y:2 rels: x^3");
    auto x = AlgElement::generator(A, 0), y = AlgElement::generator(A, 1);
    EXPECT_EQ(parse_element(A, "2*x^2*y + x*y - y"), (x * x * y).scaled(2) + x * y - y);
    EXPECT_EQ(parse_element(A, "4*x"), x);
    EXPECT_EQ(parse_element(A, " - x + x "), AlgElement::zero(A));
    EXPECT_EQ(parse_element(A, "x^3"), AlgElement::zero(A));
    EXPECT_EQ(parse_element(A, "3"), AlgElement::zero(A));
    EXPECT_EQ(parse_element(A, "x * y*x"), x * x * y);

    auto P = parse_algebra("algebra p=2 mode=periodic d=3 gens: x:1");
    auto u = AlgElement::u_power(P, 1);
    EXPECT_EQ(parse_element(P, "u^-1*x^3"), AlgElement::u_power(P, -1) * AlgElement::generator(P, 0).pow(3));
    EXPECT_EQ(parse_element(P, "u*u^-1"), AlgElement::one(P));
    EXPECT_EQ(parse_element(P, "u^2"), u * u);
}

TEST(Parse, Algebras) {
    auto A = parse_algebra("algebra p=2 mode=ungraded gens: x:2, y:6 rels: x^3, x*y");
    EXPECT_EQ(A->p(), 2u);
    EXPECT_EQ(A->generator_index("y"), std::optional<std::size_t>(1));
    EXPECT_TRUE((AlgElement::generator(A, 0) * AlgElement::generator(A, 1)).is_zero());
    EXPECT_FALSE(AlgElement::generator(A, 0).pow(2).is_zero());
    EXPECT_TRUE(parse_algebra("algebra p=3 mode=periodic d=4 gens: x:2")->field().is_periodic());
    EXPECT_THROW(parse_algebra("algebra p=4 gens: x:2"), DomainError);
}

TEST(Parse, WittAndCoWitt) {
    auto A = parse_algebra("algebra p=3 mode=ungraded strict_even=off gens: x:1, y:2 rels: x^3");
    auto y = AlgElement::generator(A, 1);
    auto w = parse_witt(A, "[0; y; 2*y^3]");
    EXPECT_EQ(w.degree(), (WittDegree{2, 1}));
    EXPECT_EQ(w.components()[1], y);
    EXPECT_EQ(w.to_string(), "[0;y;2*y^3]");
    EXPECT_EQ(parse_witt(A, "[0;0]").to_string(), "[0;0]");

    auto S = CoWittSpace::of(A);
    auto c = parse_cowitt(S, "[...; y; 0]");
    EXPECT_EQ(c.degree(), 6);
    EXPECT_EQ(c.to_string(), "[...;y;0]");
    EXPECT_EQ(parse_cowitt(S, "[...]"), CoWittVector::zero(S, 0));
    auto B = parse_algebra("algebra p=2 mode=ungraded gens: e:0 rels: e^2");
    auto t = parse_cowitt(CoWittSpace::of(B), "[...(e);1]");
    EXPECT_EQ(t.to_string(), "[...(e);1]");
    EXPECT_EQ(t.tail(), AlgElement::generator(B, 0));
}

TEST(Parse, Definitions) {
    auto s = parse_definitions("A = algebra p=2 gens: x:2, y:3 rels: x^2*y   # comment\n"
                               "\n"
                               "P = polar ambient=A gens: x, y^2\n"
                               "Q = freepolar p=3 gens: x:2\n"
                               "R = pol A j=1\n"
                               "T = pol A\n");
    EXPECT_EQ(s.order, (std::vector<std::string>{"A", "P", "Q", "R", "T"}));
    EXPECT_EQ(s.algebras.size(), 1u);
    EXPECT_EQ(s.polars.size(), 4u);
    EXPECT_EQ(s.polars.at("Q")->ambient()->p(), 3u);
    EXPECT_EQ(s.polars.at("P")->closure_violation(), "");
}

TEST(Parse, ErrorPositions) {
    auto A = parse_algebra("algebra p=3 mode=ungraded strict_even=off gens: x:1, y:2 rels: x^3");
    expect_at(parse_failure([&] { parse_element(A, "x + * y"); }), 1, 5, "expected a term");
    expect_at(parse_failure([&] { parse_element(A, "x + z"); }), 1, 5, "unknown generator 'z'");
    expect_at(parse_failure([&] { parse_element(A, "x^-1"); }), 1, 1, "negative exponent on 'x'");
    expect_at(parse_failure([&] { parse_element(A, "x y"); }), 1, 3, "unexpected 'y'");
    expect_at(parse_failure([&] { parse_algebra("algebra p=2 gens x:2"); }), 1, 13, "expected 'gens:'");
    expect_at(parse_failure([&] { parse_algebra("algebra p=2 gens: x:2 rels: x+x^2"); }), 1, 29,
              "relations must be monomials in the generators");
    expect_at(parse_failure([&] { parse_witt(A, "[x; ; y]"); }), 1, 4, "empty component");
    expect_at(parse_failure([&] { parse_witt(A, "[x; y"); }), 1, 2, "missing ']'");
    expect_at(parse_failure([&] { parse_cowitt(CoWittSpace::of(A), "[..;x]"); }), 1, 2, "expected '...'");
    expect_at(parse_failure([&] { parse_definitions("A = algebra p=2 gens: x:2\nP = pol C\n"); }), 2, 9,
              "unknown algebra 'C'");
    expect_at(parse_failure([&] { parse_definitions("A = algebra p=2 gens: x:2\n# c\nA = pol A\n"); }), 3, 1,
              "duplicate definition 'A'");
    expect_at(parse_failure([&] { parse_definitions("A = algebra p=2 gens: x:2\nP = polar ambient=A gens: x, x^2 + x\n"); }),
              2, 30, "carrier generator is not homogeneous");
    expect_at(parse_failure([&] { parse_definitions("X = widget\n"); }), 1, 5, "expected algebra, polar, freepolar or pol");
}

TEST(Parse, PrintedElementsReparse) {
    auto g = testing_support::rng(41);
    for (const auto& A : rings()) {
        for (std::int64_t n = -4; n <= 14; ++n) {
            if (!A->field().is_periodic() && n < 0) continue;
            for (int trial = 0; trial < 4; ++trial) {
                auto x = testing_support::random_homogeneous(A, n, g);
                if (trial == 3) x = x + testing_support::random_homogeneous(A, n + 1, g); // mixed degrees too
                EXPECT_EQ(parse_element(A, x.to_string()), x) << x.to_string();
            }
        }
    }
}

TEST(Parse, PrintedVectorsReparse) {
    auto g = testing_support::rng(42);
    for (const auto& A : rings()) {
        const std::int64_t p = A->p();
        for (std::int64_t j : {1, 2}) {
            for (int trial = 0; trial < 5; ++trial) {
                auto w = testing_support::random_witt(A, j, 2, g);
                EXPECT_EQ(parse_witt(A, w.to_string(), w.degree()), w) << w.to_string();
                if (!w.components()[0].is_zero()) {
                    EXPECT_EQ(parse_witt(A, w.to_string()), w) << w.to_string();
                }
            }
        }
        if (A->field().is_periodic()) continue;
        auto S = CoWittSpace::of(A);
        for (std::int64_t j : {p, p * p}) {
            for (int trial = 0; trial < 5; ++trial) {
                std::vector<AlgElement> c;
                std::int64_t e = j;
                for (int k = 0; e > 0 && e % p == 0 && k < 2; ++k, e /= p) c.push_back(testing_support::random_homogeneous(A, e, g));
                CoWittVector v(S, j, c);
                EXPECT_EQ(parse_cowitt(S, v.to_string(), j), v) << v.to_string();
            }
        }
    }
}

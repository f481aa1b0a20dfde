#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "polarwitt/polarwitt.hpp"

namespace testing_support {

/// Seed for randomized property tests; set from --seed in the test main.
std::uint64_t& seed();

inline std::mt19937_64 rng(std::uint64_t salt) { return std::mt19937_64(seed() ^ (salt * 0x9E3779B97F4A7C15ULL)); }

/// Random element of the degree-n piece (possibly zero).
inline polarwitt::AlgElement random_homogeneous(const polarwitt::PresentationPtr& A, std::int64_t n, std::mt19937_64& g) {
    using namespace polarwitt;
    auto basis = graded_piece(A, n, A->bound());
    AlgElement x = AlgElement::zero(A);
    std::uniform_int_distribution<std::uint32_t> coef(0, A->p() - 1);
    for (const auto& b : basis) x = x + b.scaled(coef(g));
    return x;
}

/// Random Witt vector of degree j with n+1 components.
inline polarwitt::WittVector random_witt(const polarwitt::PresentationPtr& A, std::int64_t j, int n, std::mt19937_64& g) {
    using namespace polarwitt;
    std::vector<AlgElement> c;
    std::int64_t e = j;
    for (int i = 0; i <= n; ++i, e *= A->p()) c.push_back(random_homogeneous(A, e, g));
    return WittVector(A, WittDegree::integral(j), std::move(c));
}

} // namespace testing_support

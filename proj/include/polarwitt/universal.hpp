#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <vector>

#include "intpoly.hpp"
#include "scalars.hpp"

namespace polarwitt {

/// Number of monomials of weighted degree `total` when variable i has weight weights[i].
/// Saturates at UINT64_MAX.
inline std::uint64_t count_weighted_monomials(const std::vector<std::uint64_t>& weights, std::uint64_t total) {
    std::vector<std::uint64_t> ways(total + 1, 0);
    ways[0] = 1;
    for (auto w : weights) {
        if (w == 0 || w > total) continue;
        for (std::uint64_t s = w; s <= total; ++s) {
            std::uint64_t a = ways[s], b = ways[s - w];
            ways[s] = (a > UINT64_MAX - b) ? UINT64_MAX : a + b;
        }
    }
    return ways[total];
}

/// Largest monomial count any single universal polynomial may reach before build_universal
/// refuses to run; the bound is on the a-priori support size, not on the actual size.
constexpr std::uint64_t kUniversalTermBudget = 4'000'000;

/// S, P, Frobenius and negation polynomials over Z for W_n, with ghost polynomials.
/// Variables: x_0..x_n are 0..n and y_0..y_n are n+1..2n+1 for S and P; F and N use x only.
class UniversalWittPolys {
public:
    UniversalWittPolys(Prime p, int n) : p_(p), n_(n) {
        require(n >= 0, ErrorCode::InvalidArgument, "negative truncation");
        require(2 * (n + 1) <= kMaxPolyVars, ErrorCode::ResourceLimit,
                "truncation n=" + std::to_string(n) + " exceeds the packed variable limit");
        check_budget();
        build();
    }

    Prime prime() const noexcept { return p_; }
    int n() const noexcept { return n_; }
    int nvars2() const noexcept { return 2 * (n_ + 1); }
    int nvars1() const noexcept { return n_ + 1; }

    const IntPoly& S(int m) const { return S_.at(static_cast<std::size_t>(m)); }
    const IntPoly& P(int m) const { return P_.at(static_cast<std::size_t>(m)); }
    /// Frobenius component m, defined for m < n, in variables x_0..x_{m+1}.
    const IntPoly& F(int m) const { return F_.at(static_cast<std::size_t>(m)); }
    const IntPoly& N(int m) const { return N_.at(static_cast<std::size_t>(m)); }

    /// Ghost polynomial w_m in x_0..x_m placed at variable offset `offset` in nvars variables.
    IntPoly ghost(int m, int nvars, int offset = 0) const {
        IntPoly w(nvars);
        for (int l = 0; l <= m; ++l) {
            auto e = static_cast<std::uint16_t>(pow_u(p_, m - l));
            w += mpz_pow(p_, static_cast<unsigned long>(l)) * IntPoly::variable(nvars, offset + l, e);
        }
        return w;
    }

    /// A-priori bound on the monomial count of S_m.
    std::uint64_t support_bound_S(int m) const {
        std::vector<std::uint64_t> w;
        for (int r = 0; r < 2; ++r)
            for (int i = 0; i <= m; ++i) w.push_back(pow_u(p_, i));
        return count_weighted_monomials(w, pow_u(p_, m));
    }

    /// A-priori bound on the monomial count of P_m (bihomogeneous).
    std::uint64_t support_bound_P(int m) const {
        std::vector<std::uint64_t> w;
        for (int i = 0; i <= m; ++i) w.push_back(pow_u(p_, i));
        std::uint64_t c = count_weighted_monomials(w, pow_u(p_, m));
        return c > UINT32_MAX ? UINT64_MAX : c * c;
    }

    /// Recomputes w_m(S) and w_m(P) and w_m(F), w_m(N) by direct expansion and compares with the
    /// defining ghost identities; returns the first failing identity or an empty string.
    std::string verify_ghost_identities() const {
        const int v2 = nvars2(), v1 = nvars1();
        for (int m = 0; m <= n_; ++m) {
            IntPoly wx = ghost(m, v2, 0), wy = ghost(m, v2, n_ + 1);
            if (ghost_of(S_, m, v2) != wx + wy) return "S_" + std::to_string(m);
            if (ghost_of(P_, m, v2) != wx * wy) return "P_" + std::to_string(m);
            if (ghost_of(N_, m, v1) != mpz_class(-1) * ghost(m, v1, 0)) return "N_" + std::to_string(m);
            if (m < n_ && ghost_of(F_, m, v1) != ghost(m + 1, v1, 0)) return "F_" + std::to_string(m);
        }
        return {};
    }

    static std::uint64_t pow_u(std::uint64_t b, int e) {
        std::uint64_t r = 1;
        for (int i = 0; i < e; ++i) r *= b;
        return r;
    }

private:
    void check_budget() const {
        for (int m = 0; m <= n_; ++m) {
            auto bs = support_bound_S(m), bp = support_bound_P(m);
            if (bs > kUniversalTermBudget || bp > kUniversalTermBudget)
                fail(ErrorCode::ResourceLimit,
                     "universal polynomials for p=" + std::to_string(p_.value()) + ", n=" + std::to_string(n_) +
                         ": degree-" + std::to_string(m) + " support bound " + std::to_string(bs) + " (sum), " +
                         std::to_string(bp) + " (product) exceeds budget " + std::to_string(kUniversalTermBudget));
        }
    }

    // Evaluates sum_{l<=m} p^l Q_l^{p^{m-l}} by fresh binary powering.
    IntPoly ghost_of(const std::vector<IntPoly>& Q, int m, int nvars) const {
        IntPoly acc(nvars);
        for (int l = 0; l <= m; ++l)
            acc += mpz_pow(p_, static_cast<unsigned long>(l)) * Q[static_cast<std::size_t>(l)].pow(pow_u(p_, m - l));
        return acc;
    }

    // Solves w_m(Q) = target_m recursively: Q_m = (target_m - sum_{i<m} p^i Q_i^{p^{m-i}}) / p^m.
    template <class Target>
    std::vector<IntPoly> solve(int count, int nvars, Target target) const {
        std::vector<IntPoly> Q;
        std::vector<IntPoly> powers; // powers[i] = Q_i^{p^{m-1-i}} at the start of step m
        for (int m = 0; m < count; ++m) {
            IntPoly num = target(m);
            for (int i = 0; i < m; ++i) {
                auto& pw = powers[static_cast<std::size_t>(i)];
                pw = pw.pow(p_);
                num -= mpz_pow(p_, static_cast<unsigned long>(i)) * pw;
            }
            IntPoly q = num.exact_div(mpz_pow(p_, static_cast<unsigned long>(m)));
            Q.push_back(q);
            powers.push_back(q);
        }
        (void)nvars;
        return Q;
    }

    void build() {
        const int v2 = nvars2(), v1 = nvars1();
        S_ = solve(n_ + 1, v2, [&](int m) { return ghost(m, v2, 0) + ghost(m, v2, n_ + 1); });
        P_ = solve(n_ + 1, v2, [&](int m) { return ghost(m, v2, 0) * ghost(m, v2, n_ + 1); });
        N_ = solve(n_ + 1, v1, [&](int m) { return mpz_class(-1) * ghost(m, v1, 0); });
        F_ = solve(n_, v1, [&](int m) { return ghost(m + 1, v1, 0); });
    }

    Prime p_;
    int n_;
    std::vector<IntPoly> S_, P_, F_, N_;
};

/// Process-wide write-once cache; returns polynomials for truncation at least n.
inline std::shared_ptr<const UniversalWittPolys> universal_polys(Prime p, int n) {
    static std::mutex mu;
    static std::map<std::uint32_t, std::shared_ptr<const UniversalWittPolys>> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(p.value());
    if (it != cache.end() && it->second->n() >= n) return it->second;
    auto built = std::make_shared<const UniversalWittPolys>(p, n);
    cache[p.value()] = built;
    return built;
}

/// Builds without touching the cache (used where construction itself is under test).
inline UniversalWittPolys build_universal(Prime p, int n) { return UniversalWittPolys(p, n); }

} // namespace polarwitt

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "errors.hpp"

namespace polarwitt {

/// A validated prime p >= 2.
class Prime {
public:
    explicit Prime(std::int64_t p) : p_(static_cast<std::uint32_t>(p)) {
        require(p >= 2 && p < (1LL << 31) && is_prime(p), ErrorCode::InvalidArgument,
                "p=" + std::to_string(p) + " is not a prime");
    }
    std::uint32_t value() const noexcept { return p_; }
    operator std::uint32_t() const noexcept { return p_; }
    friend bool operator==(Prime a, Prime b) noexcept { return a.p_ == b.p_; }

    static bool is_prime(std::int64_t n) {
        if (n < 2) return false;
        for (std::int64_t q = 2; q * q <= n; ++q)
            if (n % q == 0) return false;
        return true;
    }

private:
    std::uint32_t p_;
};

inline std::uint32_t mod_p(std::int64_t v, std::uint32_t p) {
    std::int64_t r = v % static_cast<std::int64_t>(p);
    return static_cast<std::uint32_t>(r < 0 ? r + p : r);
}

inline std::uint32_t mod_p(const mpz_class& v, std::uint32_t p) {
    return static_cast<std::uint32_t>(mpz_fdiv_ui(v.get_mpz_t(), p));
}

inline std::uint32_t mul_mod(std::uint32_t a, std::uint32_t b, std::uint32_t p) {
    return static_cast<std::uint32_t>(static_cast<std::uint64_t>(a) * b % p);
}

inline std::uint32_t pow_mod(std::uint32_t a, std::uint64_t e, std::uint32_t p) {
    std::uint64_t r = 1 % p, b = a % p;
    while (e) {
        if (e & 1) r = r * b % p;
        b = b * b % p;
        e >>= 1;
    }
    return static_cast<std::uint32_t>(r);
}

inline std::uint32_t inv_mod(std::uint32_t a, std::uint32_t p) {
    require(a % p != 0, ErrorCode::InvalidArgument, "division by zero in F_p");
    return pow_mod(a, p - 2, p);
}

/// p-adic valuation of a nonzero integer.
inline int vp(std::int64_t n, std::uint32_t p) {
    require(n != 0, ErrorCode::InvalidArgument, "valuation of zero");
    int v = 0;
    while (n % static_cast<std::int64_t>(p) == 0) {
        n /= p;
        ++v;
    }
    return v;
}

inline mpz_class mpz_pow(std::uint32_t base, unsigned long e) {
    mpz_class r;
    mpz_ui_pow_ui(r.get_mpz_t(), base, e);
    return r;
}

/// Element of the prime field F_p.
class FpElem {
public:
    FpElem(Prime p, std::int64_t v) : p_(p), v_(mod_p(v, p)) {}
    std::uint32_t value() const noexcept { return v_; }
    Prime prime() const noexcept { return p_; }

    friend FpElem operator+(FpElem a, FpElem b) { check(a, b); return FpElem(a.p_, std::int64_t(a.v_) + b.v_); }
    friend FpElem operator-(FpElem a, FpElem b) { check(a, b); return FpElem(a.p_, std::int64_t(a.v_) - b.v_); }
    friend FpElem operator*(FpElem a, FpElem b) { check(a, b); return FpElem(a.p_, mul_mod(a.v_, b.v_, a.p_)); }
    FpElem inverse() const { return FpElem(p_, inv_mod(v_, p_)); }
    friend bool operator==(FpElem a, FpElem b) noexcept { return a.p_ == b.p_ && a.v_ == b.v_; }

private:
    static void check(FpElem a, FpElem b) {
        require(a.p_ == b.p_, ErrorCode::OwnerMismatch, "F_p elements over different primes");
    }
    Prime p_;
    std::uint32_t v_;
};

/// Element of W_n(F_p), stored through the isomorphism with Z/p^{n+1}.
class WittScalar {
public:
    WittScalar(Prime p, int length, const mpz_class& v) : p_(p), n_(length) {
        require(length >= 0, ErrorCode::InvalidArgument, "negative truncation length");
        modulus_ = mpz_pow(p, static_cast<unsigned long>(length) + 1);
        mpz_fdiv_r(v_.get_mpz_t(), v.get_mpz_t(), modulus_.get_mpz_t());
    }
    WittScalar(Prime p, int length, std::int64_t v) : WittScalar(p, length, mpz_class(static_cast<long>(v))) {}

    Prime prime() const noexcept { return p_; }
    int length() const noexcept { return n_; }
    const mpz_class& value() const noexcept { return v_; }
    const mpz_class& modulus() const noexcept { return modulus_; }

    /// Witt components (a_0..a_n) with value = sum p^i [a_i], [.] the Teichmueller lift.
    std::vector<std::uint32_t> components() const {
        std::vector<std::uint32_t> out;
        mpz_class rest = v_;
        for (int i = 0; i <= n_; ++i) {
            std::uint32_t a = mod_p(rest, p_);
            out.push_back(a);
            rest -= teichmuller_lift(p_, a, n_ - i);
            mpz_class q;
            mpz_fdiv_q_ui(q.get_mpz_t(), rest.get_mpz_t(), p_);
            rest = q;
        }
        return out;
    }

    static WittScalar from_components(Prime p, const std::vector<std::uint32_t>& comps) {
        require(!comps.empty(), ErrorCode::InvalidArgument, "empty Witt scalar");
        int n = static_cast<int>(comps.size()) - 1;
        mpz_class v = 0;
        for (int i = 0; i <= n; ++i) v += mpz_pow(p, i) * teichmuller_lift(p, comps[i] % p, n);
        return WittScalar(p, n, v);
    }

    /// [a] in Z/p^{prec+1}, computed as a^{p^prec}.
    static mpz_class teichmuller_lift(Prime p, std::uint32_t a, int prec) {
        mpz_class mod = mpz_pow(p, static_cast<unsigned long>(prec) + 1);
        mpz_class e = mpz_pow(p, static_cast<unsigned long>(prec));
        mpz_class r;
        mpz_class base = a;
        mpz_powm(r.get_mpz_t(), base.get_mpz_t(), e.get_mpz_t(), mod.get_mpz_t());
        return r;
    }

    friend bool operator==(const WittScalar& a, const WittScalar& b) {
        return a.p_ == b.p_ && a.n_ == b.n_ && a.v_ == b.v_;
    }

private:
    Prime p_;
    int n_;
    mpz_class modulus_;
    mpz_class v_;
};

inline void check_same_ring(const WittScalar& a, const WittScalar& b) {
    require(a.prime() == b.prime(), ErrorCode::OwnerMismatch, "Witt scalars over different primes");
    require(a.length() == b.length(), ErrorCode::LengthMismatch,
            "Witt scalar lengths " + std::to_string(a.length()) + " and " + std::to_string(b.length()));
}

inline WittScalar witt_scalar_add(const WittScalar& a, const WittScalar& b) {
    check_same_ring(a, b);
    return WittScalar(a.prime(), a.length(), a.value() + b.value());
}

inline WittScalar witt_scalar_sub(const WittScalar& a, const WittScalar& b) {
    check_same_ring(a, b);
    return WittScalar(a.prime(), a.length(), a.value() - b.value());
}

inline WittScalar witt_scalar_mul(const WittScalar& a, const WittScalar& b) {
    check_same_ring(a, b);
    return WittScalar(a.prime(), a.length(), a.value() * b.value());
}

inline WittScalar witt_scalar_neg(const WittScalar& a) {
    return WittScalar(a.prime(), a.length(), -a.value());
}

/// Lift of the p-th power map on W(F_p); the identity since the residue field is prime.
inline WittScalar frob_scalar(const WittScalar& a) { return a; }

} // namespace polarwitt

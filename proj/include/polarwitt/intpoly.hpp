#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include <gmpxx.h>

#include "errors.hpp"
#include "scalars.hpp"

namespace polarwitt {

constexpr int kMaxPolyVars = 16;

/// Packed exponent vector for Z-coefficient polynomials in at most kMaxPolyVars variables.
struct Exps {
    std::array<std::uint16_t, kMaxPolyVars> e{};

    std::uint16_t& operator[](int i) { return e[static_cast<std::size_t>(i)]; }
    std::uint16_t operator[](int i) const { return e[static_cast<std::size_t>(i)]; }

    friend Exps operator+(const Exps& a, const Exps& b) {
        Exps r;
        for (int i = 0; i < kMaxPolyVars; ++i) r.e[i] = static_cast<std::uint16_t>(a.e[i] + b.e[i]);
        return r;
    }
    friend bool operator==(const Exps& a, const Exps& b) { return a.e == b.e; }
    friend bool operator<(const Exps& a, const Exps& b) { return a.e < b.e; }

    std::uint64_t total() const {
        std::uint64_t s = 0;
        for (auto v : e) s += v;
        return s;
    }
};

struct ExpsHash {
    std::size_t operator()(const Exps& x) const noexcept {
        std::uint64_t h = 1469598103934665603ULL;
        for (auto v : x.e) {
            h ^= v;
            h *= 1099511628211ULL;
        }
        return static_cast<std::size_t>(h ^ (h >> 29));
    }
};

/// Sparse polynomial with integer coefficients; terms sorted by exponent vector, no zeros.
class IntPoly {
public:
    using Term = std::pair<Exps, mpz_class>;

    IntPoly() = default;
    explicit IntPoly(int nvars) : nvars_(nvars) {
        require(nvars >= 0 && nvars <= kMaxPolyVars, ErrorCode::ResourceLimit,
                "at most " + std::to_string(kMaxPolyVars) + " polynomial variables supported");
    }

    static IntPoly constant(int nvars, const mpz_class& c) {
        IntPoly r(nvars);
        if (c != 0) r.terms_.push_back({Exps{}, c});
        return r;
    }
    static IntPoly variable(int nvars, int i, std::uint16_t power = 1) {
        IntPoly r(nvars);
        Exps e;
        e[i] = power;
        r.terms_.push_back({e, mpz_class(1)});
        return r;
    }
    static IntPoly monomial(int nvars, const Exps& e, const mpz_class& c) {
        IntPoly r(nvars);
        if (c != 0) r.terms_.push_back({e, c});
        return r;
    }

    int nvars() const noexcept { return nvars_; }
    const std::vector<Term>& terms() const noexcept { return terms_; }
    std::size_t size() const noexcept { return terms_.size(); }
    bool is_zero() const noexcept { return terms_.empty(); }

    mpz_class coeff(const Exps& e) const {
        auto it = std::lower_bound(terms_.begin(), terms_.end(), e,
                                   [](const Term& t, const Exps& k) { return t.first < k; });
        if (it != terms_.end() && it->first == e) return it->second;
        return 0;
    }

    friend bool operator==(const IntPoly& a, const IntPoly& b) {
        return a.nvars_ == b.nvars_ && a.terms_ == b.terms_;
    }

    friend IntPoly operator+(const IntPoly& a, const IntPoly& b) { return combine(a, b, 1); }
    friend IntPoly operator-(const IntPoly& a, const IntPoly& b) { return combine(a, b, -1); }
    IntPoly& operator+=(const IntPoly& b) { return *this = combine(*this, b, 1); }
    IntPoly& operator-=(const IntPoly& b) { return *this = combine(*this, b, -1); }

    friend IntPoly operator*(const mpz_class& c, const IntPoly& a) {
        IntPoly r(a.nvars_);
        if (c == 0) return r;
        r.terms_.reserve(a.terms_.size());
        for (const auto& [e, v] : a.terms_) r.terms_.push_back({e, c * v});
        return r;
    }

    friend IntPoly operator*(const IntPoly& a, const IntPoly& b) { return multiply(a, b, nullptr); }

    /// Product with coefficients reduced into [0, q).
    static IntPoly mul_mod(const IntPoly& a, const IntPoly& b, const mpz_class& q) { return multiply(a, b, &q); }

    static IntPoly multiply(const IntPoly& a, const IntPoly& b, const mpz_class* q) {
        require(a.nvars_ == b.nvars_, ErrorCode::OwnerMismatch, "polynomials in different variable sets");
        IntPoly r(a.nvars_);
        if (a.is_zero() || b.is_zero()) return r;
        const IntPoly& big = a.size() >= b.size() ? a : b;
        const IntPoly& small = a.size() >= b.size() ? b : a;
        if (small.size() == 1) {
            const auto& [se, sv] = small.terms_.front();
            r.terms_.reserve(big.size());
            for (const auto& [e, v] : big.terms_) {
                mpz_class c = v * sv;
                if (q) mpz_fdiv_r(c.get_mpz_t(), c.get_mpz_t(), q->get_mpz_t());
                if (c != 0) r.terms_.push_back({e + se, std::move(c)});
            }
            return r;
        }
        std::unordered_map<Exps, mpz_class, ExpsHash> acc;
        acc.reserve(std::min<std::size_t>(big.size() * small.size(), 1u << 24));
        for (const auto& [ea, va] : small.terms_) {
            for (const auto& [eb, vb] : big.terms_) {
                mpz_class& slot = acc[ea + eb];
                mpz_addmul(slot.get_mpz_t(), va.get_mpz_t(), vb.get_mpz_t());
            }
        }
        r.terms_.reserve(acc.size());
        for (auto& [e, v] : acc) {
            if (q) mpz_fdiv_r(v.get_mpz_t(), v.get_mpz_t(), q->get_mpz_t());
            if (v != 0) r.terms_.push_back({e, std::move(v)});
        }
        std::sort(r.terms_.begin(), r.terms_.end(), [](const Term& x, const Term& y) { return x.first < y.first; });
        return r;
    }

    IntPoly pow(unsigned long e) const { return pow_impl(e, nullptr); }
    IntPoly pow_mod(unsigned long e, const mpz_class& q) const { return pow_impl(e, &q); }

    /// Divides every coefficient by d; throws NonIntegralDivision on a nonzero remainder.
    IntPoly exact_div(const mpz_class& d) const {
        IntPoly r(nvars_);
        r.terms_.reserve(terms_.size());
        for (const auto& [e, v] : terms_) {
            if (!mpz_divisible_p(v.get_mpz_t(), d.get_mpz_t()))
                fail(ErrorCode::NonIntegralDivision, "coefficient " + v.get_str() + " not divisible by " + d.get_str());
            mpz_class c;
            mpz_divexact(c.get_mpz_t(), v.get_mpz_t(), d.get_mpz_t());
            r.terms_.push_back({e, std::move(c)});
        }
        return r;
    }

    IntPoly reduce_mod(const mpz_class& q) const {
        IntPoly r(nvars_);
        for (const auto& [e, v] : terms_) {
            mpz_class c;
            mpz_fdiv_r(c.get_mpz_t(), v.get_mpz_t(), q.get_mpz_t());
            if (c != 0) r.terms_.push_back({e, std::move(c)});
        }
        return r;
    }

    /// Re-embeds into a polynomial ring with more variables: variable i goes to slot map[i].
    IntPoly rename(int new_nvars, const std::vector<int>& map) const {
        IntPoly r(new_nvars);
        std::vector<Term> ts;
        ts.reserve(terms_.size());
        for (const auto& [e, v] : terms_) {
            Exps ne;
            for (int i = 0; i < nvars_; ++i)
                if (e[i]) ne[map[static_cast<std::size_t>(i)]] = static_cast<std::uint16_t>(ne[map[static_cast<std::size_t>(i)]] + e[i]);
            ts.push_back({ne, v});
        }
        std::sort(ts.begin(), ts.end(), [](const Term& x, const Term& y) { return x.first < y.first; });
        for (auto& t : ts) {
            if (!r.terms_.empty() && r.terms_.back().first == t.first) {
                r.terms_.back().second += t.second;
                if (r.terms_.back().second == 0) r.terms_.pop_back();
            } else {
                r.terms_.push_back(std::move(t));
            }
        }
        return r;
    }

    /// True when every term has weighted degree w: sum_i weight[i] * e_i == w.
    bool is_weighted_homogeneous(const std::vector<std::int64_t>& weight, std::int64_t w) const {
        for (const auto& [e, v] : terms_) {
            std::int64_t s = 0;
            for (int i = 0; i < nvars_; ++i) s += weight[static_cast<std::size_t>(i)] * e[i];
            if (s != w) return false;
        }
        return true;
    }

    std::string to_string(const std::vector<std::string>& names) const {
        if (terms_.empty()) return "0";
        std::string out;
        for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
            const auto& [e, v] = *it;
            mpz_class a = abs(v);
            bool neg = v < 0;
            if (out.empty()) {
                if (neg) out += "-";
            } else {
                out += neg ? " - " : " + ";
            }
            std::string mono;
            for (int i = 0; i < nvars_; ++i) {
                if (!e[i]) continue;
                if (!mono.empty()) mono += "*";
                mono += names[static_cast<std::size_t>(i)];
                if (e[i] > 1) mono += "^" + std::to_string(e[i]);
            }
            if (mono.empty()) out += a.get_str();
            else if (a == 1) out += mono;
            else out += a.get_str() + "*" + mono;
        }
        return out;
    }

private:
    static IntPoly combine(const IntPoly& a, const IntPoly& b, int sign) {
        require(a.nvars_ == b.nvars_, ErrorCode::OwnerMismatch, "polynomials in different variable sets");
        IntPoly r(a.nvars_);
        r.terms_.reserve(a.terms_.size() + b.terms_.size());
        auto i = a.terms_.begin();
        auto j = b.terms_.begin();
        while (i != a.terms_.end() || j != b.terms_.end()) {
            if (j == b.terms_.end() || (i != a.terms_.end() && i->first < j->first)) {
                r.terms_.push_back(*i++);
            } else if (i == a.terms_.end() || j->first < i->first) {
                r.terms_.push_back({j->first, sign > 0 ? j->second : mpz_class(-j->second)});
                ++j;
            } else {
                mpz_class c = sign > 0 ? mpz_class(i->second + j->second) : mpz_class(i->second - j->second);
                if (c != 0) r.terms_.push_back({i->first, std::move(c)});
                ++i;
                ++j;
            }
        }
        return r;
    }

    IntPoly pow_impl(unsigned long e, const mpz_class* q) const {
        IntPoly result = constant(nvars_, 1);
        IntPoly base = *this;
        bool first = true;
        while (e) {
            if (e & 1) {
                result = first ? base : multiply(result, base, q);
                first = false;
            }
            e >>= 1;
            if (e) base = multiply(base, base, q);
        }
        return result;
    }

    int nvars_ = 0;
    std::vector<Term> terms_;
};

/// Ring operations needed to evaluate an IntPoly in a commutative ring R.
template <class R>
struct EvalOps {
    std::function<R()> one;
    std::function<R()> zero;
    std::function<R(const R&, const R&)> add;
    std::function<R(const R&, const R&)> mul;
    std::function<R(const R&, const mpz_class&)> scale;
    std::function<bool(const R&)> is_zero;
};

/// Evaluates f at vals, caching the powers of each value.
template <class R>
R evaluate(const IntPoly& f, const std::vector<R>& vals, const EvalOps<R>& ops) {
    require(static_cast<int>(vals.size()) >= f.nvars(), ErrorCode::LengthMismatch, "too few evaluation points");
    std::vector<std::vector<R>> powers(static_cast<std::size_t>(f.nvars()));
    auto power = [&](int i, std::uint16_t k) -> const R& {
        auto& tab = powers[static_cast<std::size_t>(i)];
        if (tab.empty()) {
            tab.push_back(ops.one());
            tab.push_back(vals[static_cast<std::size_t>(i)]);
        }
        while (tab.size() <= k) tab.push_back(ops.mul(tab.back(), vals[static_cast<std::size_t>(i)]));
        return tab[k];
    };
    std::vector<bool> zero_val(static_cast<std::size_t>(f.nvars()));
    for (int i = 0; i < f.nvars(); ++i) zero_val[static_cast<std::size_t>(i)] = ops.is_zero(vals[static_cast<std::size_t>(i)]);
    R acc = ops.zero();
    for (const auto& [e, c] : f.terms()) {
        bool vanishes = false;
        for (int i = 0; i < f.nvars() && !vanishes; ++i)
            if (e[i] && zero_val[static_cast<std::size_t>(i)]) vanishes = true;
        if (vanishes) continue;
        R t = ops.one();
        bool first = true;
        for (int i = 0; i < f.nvars(); ++i) {
            if (!e[i]) continue;
            t = first ? power(i, e[i]) : ops.mul(t, power(i, e[i]));
            first = false;
        }
        acc = ops.add(acc, ops.scale(t, c));
    }
    return acc;
}

inline EvalOps<mpz_class> integer_ops() {
    EvalOps<mpz_class> ops;
    ops.one = [] { return mpz_class(1); };
    ops.zero = [] { return mpz_class(0); };
    ops.add = [](const mpz_class& a, const mpz_class& b) { return mpz_class(a + b); };
    ops.mul = [](const mpz_class& a, const mpz_class& b) { return mpz_class(a * b); };
    ops.scale = [](const mpz_class& a, const mpz_class& c) { return mpz_class(a * c); };
    ops.is_zero = [](const mpz_class& a) { return a == 0; };
    return ops;
}

/// Ring operations on IntPoly in a fixed number of variables (used for substitution).
inline EvalOps<IntPoly> intpoly_ops(int nvars) {
    EvalOps<IntPoly> ops;
    ops.one = [nvars] { return IntPoly::constant(nvars, 1); };
    ops.zero = [nvars] { return IntPoly(nvars); };
    ops.add = [](const IntPoly& a, const IntPoly& b) { return a + b; };
    ops.mul = [](const IntPoly& a, const IntPoly& b) { return a * b; };
    ops.scale = [](const IntPoly& a, const mpz_class& c) { return c * a; };
    ops.is_zero = [](const IntPoly& a) { return a.is_zero(); };
    return ops;
}

/// Same as intpoly_ops but with coefficients kept in [0, q).
inline EvalOps<IntPoly> intpoly_mod_ops(int nvars, const mpz_class& q) {
    EvalOps<IntPoly> ops;
    ops.one = [nvars] { return IntPoly::constant(nvars, 1); };
    ops.zero = [nvars] { return IntPoly(nvars); };
    ops.add = [q](const IntPoly& a, const IntPoly& b) { return (a + b).reduce_mod(q); };
    ops.mul = [q](const IntPoly& a, const IntPoly& b) { return IntPoly::mul_mod(a, b, q); };
    ops.scale = [q](const IntPoly& a, const mpz_class& c) { return (c * a).reduce_mod(q); };
    ops.is_zero = [](const IntPoly& a) { return a.is_zero(); };
    return ops;
}

} // namespace polarwitt

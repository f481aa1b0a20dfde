#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "errors.hpp"
#include "gradedpoly.hpp"
#include "intpoly.hpp"
#include "polar.hpp"
#include "scalars.hpp"
#include "universal.hpp"

namespace polarwitt {

/// Degree of a Witt vector: num / p^shift with p not dividing num unless shift = 0.
/// Fractional degrees arise from V; their components are zero wherever j p^i is not integral.
struct WittDegree {
    std::int64_t num = 0;
    int shift = 0;

    static WittDegree integral(std::int64_t j) { return {j, 0}; }

    WittDegree normalized(std::uint32_t p) const {
        WittDegree r = *this;
        while (r.shift > 0 && r.num % static_cast<std::int64_t>(p) == 0) {
            r.num /= p;
            --r.shift;
        }
        if (r.num == 0) r.shift = 0;
        return r;
    }
    WittDegree times_p(std::uint32_t p) const {
        return shift > 0 ? WittDegree{num, shift - 1} : WittDegree{num * static_cast<std::int64_t>(p), 0};
    }
    WittDegree over_p(std::uint32_t p) const { return WittDegree{num, shift + 1}.normalized(p); }

    /// Degree of component i, when integral.
    std::optional<std::int64_t> at(int i, std::uint32_t p) const {
        if (i < shift) return num == 0 ? std::optional<std::int64_t>(0) : std::nullopt;
        std::int64_t v = num;
        for (int k = shift; k < i; ++k) v *= p;
        return v;
    }

    std::string to_string() const {
        if (shift == 0) return std::to_string(num);
        return std::to_string(num) + "/p^" + std::to_string(shift);
    }
    friend bool operator==(const WittDegree&, const WittDegree&) = default;
};

inline WittDegree add_degrees(WittDegree a, WittDegree b, std::uint32_t p) {
    while (a.shift < b.shift) a = {a.num * static_cast<std::int64_t>(p), a.shift + 1};
    while (b.shift < a.shift) b = {b.num * static_cast<std::int64_t>(p), b.shift + 1};
    return WittDegree{a.num + b.num, a.shift}.normalized(p);
}

/// Universal polynomials reduced mod p, ready for evaluation in characteristic p.
struct ModPWittPolys {
    std::shared_ptr<const UniversalWittPolys> integral;
    std::vector<IntPoly> S, P, F, N;
    int n = 0;
};

inline std::shared_ptr<const ModPWittPolys> modp_polys(Prime p, int n) {
    static std::mutex mu;
    static std::map<std::uint32_t, std::shared_ptr<const ModPWittPolys>> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(p.value());
    if (it != cache.end() && it->second->n >= n) return it->second;
    auto U = universal_polys(p, n);
    auto out = std::make_shared<ModPWittPolys>();
    out->integral = U;
    out->n = U->n();
    const mpz_class q = p.value();
    for (int m = 0; m <= U->n(); ++m) {
        out->S.push_back(U->S(m).reduce_mod(q));
        out->P.push_back(U->P(m).reduce_mod(q));
        out->N.push_back(U->N(m).reduce_mod(q));
        if (m < U->n()) out->F.push_back(U->F(m).reduce_mod(q));
    }
    cache[p.value()] = out;
    return out;
}

/// Truncated graded Witt vector (a_0..a_n) with a_i of degree j p^i, over a presented algebra
/// or over a polar algebra (then every a_i lies in the carrier).
class WittVector {
public:
    WittVector(PresentationPtr A, WittDegree j, std::vector<AlgElement> comps, PolarPtr polar = nullptr)
        : A_(std::move(A)), polar_(std::move(polar)), j_(j.normalized(A_->p())), comps_(std::move(comps)) {
        require(!comps_.empty(), ErrorCode::LengthMismatch, "a Witt vector needs at least one component");
        require(!polar_ || polar_->ambient() == A_, ErrorCode::OwnerMismatch, "polar algebra over another ambient");
        for (std::size_t i = 0; i < comps_.size(); ++i) {
            const auto& a = comps_[i];
            require(a.owner() == A_, ErrorCode::OwnerMismatch, "component from another algebra");
            if (a.is_zero()) continue;
            auto want = j_.at(static_cast<int>(i), A_->p());
            auto di = a.degree_info();
            require(want.has_value() && di.kind == DegreeKind::Homogeneous && di.degree == *want, ErrorCode::DegreeMismatch,
                    "component " + std::to_string(i) + " = " + a.to_string() + " is not of degree " +
                        (want ? std::to_string(*want) : j_.to_string() + "*p^" + std::to_string(i)));
            if (polar_)
                require(polar_->contains(a), ErrorCode::NotInCarrier,
                        "component " + std::to_string(i) + " = " + a.to_string() + " is not in the carrier");
        }
    }

    static WittVector zero(const PresentationPtr& A, WittDegree j, int n, PolarPtr polar = nullptr) {
        return WittVector(A, j, std::vector<AlgElement>(static_cast<std::size_t>(n) + 1, AlgElement::zero(A)), std::move(polar));
    }

    /// The unit (1,0,..,0) of W_n(A) in degree 0.
    static WittVector one(const PresentationPtr& A, int n) {
        auto z = zero(A, WittDegree{}, n);
        z.comps_[0] = AlgElement::one(A);
        return z;
    }

    const PresentationPtr& algebra() const noexcept { return A_; }
    const PolarPtr& polar() const noexcept { return polar_; }
    const WittDegree& degree() const noexcept { return j_; }
    int length() const noexcept { return static_cast<int>(comps_.size()) - 1; }
    const std::vector<AlgElement>& components() const noexcept { return comps_; }
    const AlgElement& operator[](std::size_t i) const { return comps_.at(i); }
    Prime prime() const noexcept { return A_->prime(); }

    bool is_zero() const {
        for (const auto& a : comps_)
            if (!a.is_zero()) return false;
        return true;
    }

    /// `[a0; a1; a2]`
    std::string to_string() const {
        std::string s = "[";
        for (std::size_t i = 0; i < comps_.size(); ++i) s += (i ? ";" : "") + comps_[i].to_string();
        return s + "]";
    }

    friend bool operator==(const WittVector& a, const WittVector& b) {
        if (a.A_ != b.A_ || a.comps_.size() != b.comps_.size()) return false;
        if (!(a.j_ == b.j_) && !(a.is_zero() && b.is_zero())) return false;
        for (std::size_t i = 0; i < a.comps_.size(); ++i)
            if (!(a.comps_[i] == b.comps_[i])) return false;
        return true;
    }

private:
    PresentationPtr A_;
    PolarPtr polar_;
    WittDegree j_;
    std::vector<AlgElement> comps_;
};

namespace detail {

inline void check_compatible(const WittVector& x, const WittVector& y, bool same_degree) {
    require(x.algebra() == y.algebra(), ErrorCode::OwnerMismatch, "Witt vectors over different algebras");
    require(x.polar() == y.polar(), ErrorCode::OwnerMismatch, "Witt vectors over different polar algebras");
    require(x.length() == y.length(), ErrorCode::LengthMismatch,
            "Witt lengths " + std::to_string(x.length()) + " and " + std::to_string(y.length()));
    if (same_degree)
        require(x.degree() == y.degree() || x.is_zero() || y.is_zero(), ErrorCode::DegreeMismatch,
                "Witt degrees " + x.degree().to_string() + " and " + y.degree().to_string());
}

// Evaluation points for two-argument universal polynomials: x_i at i, y_i at U.n+1+i.
inline std::vector<AlgElement> pair_values(const WittVector& x, const WittVector& y, int un) {
    std::vector<AlgElement> v(static_cast<std::size_t>(2 * (un + 1)), AlgElement::zero(x.algebra()));
    for (int i = 0; i <= x.length(); ++i) {
        v[static_cast<std::size_t>(i)] = x[static_cast<std::size_t>(i)];
        v[static_cast<std::size_t>(un + 1 + i)] = y[static_cast<std::size_t>(i)];
    }
    return v;
}

inline std::vector<AlgElement> single_values(const WittVector& x, int un) {
    std::vector<AlgElement> v(static_cast<std::size_t>(un + 1), AlgElement::zero(x.algebra()));
    for (int i = 0; i <= x.length(); ++i) v[static_cast<std::size_t>(i)] = x[static_cast<std::size_t>(i)];
    return v;
}

inline WittDegree pick_degree(const WittVector& x, const WittVector& y) { return x.is_zero() ? y.degree() : x.degree(); }

} // namespace detail

inline WittVector witt_add(const WittVector& x, const WittVector& y) {
    detail::check_compatible(x, y, true);
    const int n = x.length();
    auto T = modp_polys(x.prime(), n);
    auto vals = detail::pair_values(x, y, T->n);
    auto ops = alg_ops(x.algebra());
    std::vector<AlgElement> c;
    for (int m = 0; m <= n; ++m) c.push_back(evaluate(T->S[static_cast<std::size_t>(m)], vals, ops));
    return WittVector(x.algebra(), detail::pick_degree(x, y), std::move(c), x.polar());
}

inline WittVector witt_neg(const WittVector& x) {
    const int n = x.length();
    auto T = modp_polys(x.prime(), n);
    auto vals = detail::single_values(x, T->n);
    auto ops = alg_ops(x.algebra());
    std::vector<AlgElement> c;
    for (int m = 0; m <= n; ++m) c.push_back(evaluate(T->N[static_cast<std::size_t>(m)], vals, ops));
    return WittVector(x.algebra(), x.degree(), std::move(c), x.polar());
}

inline WittVector witt_sub(const WittVector& x, const WittVector& y) { return witt_add(x, witt_neg(y)); }

namespace detail {

// Product in W_n of the ambient ring, no carrier checks.
inline std::vector<AlgElement> ambient_product(const WittVector& x, const WittVector& y) {
    const int n = x.length();
    auto T = modp_polys(x.prime(), n);
    auto vals = pair_values(x, y, T->n);
    auto ops = alg_ops(x.algebra());
    std::vector<AlgElement> c;
    for (int m = 0; m <= n; ++m) c.push_back(evaluate(T->P[static_cast<std::size_t>(m)], vals, ops));
    return c;
}

} // namespace detail

/// Ring product in W_n(A); A must be a genuine algebra.
inline WittVector witt_mul(const WittVector& x, const WittVector& y) {
    detail::check_compatible(x, y, false);
    require(!x.polar(), ErrorCode::PolarOnly, "W_n of a polar algebra has no general product; use witt_mu");
    auto c = detail::ambient_product(x, y);
    return WittVector(x.algebra(), add_degrees(x.degree(), y.degree(), x.prime()), std::move(c));
}

/// The p-fold product of equal-degree Witt vectors; over a polar algebra the result must lie in
/// the carrier.
inline WittVector witt_mu(const std::vector<WittVector>& xs) {
    require(!xs.empty(), ErrorCode::InvalidArgument, "witt_mu needs arguments");
    const auto p = xs.front().prime();
    require(xs.size() == p.value(), ErrorCode::InvalidArgument, "witt_mu takes exactly p arguments");
    for (const auto& x : xs) detail::check_compatible(xs.front(), x, true);
    WittDegree j = xs.front().degree();
    for (const auto& x : xs)
        if (!x.is_zero()) j = x.degree();
    // intermediate products live in the ambient ring only
    auto strip = [&](const WittVector& x) { return WittVector(x.algebra(), j, x.components()); };
    WittDegree dk = add_degrees(j, j, p);
    WittVector acc(xs.front().algebra(), dk, detail::ambient_product(strip(xs[0]), strip(xs[1])));
    for (std::size_t i = 2; i < xs.size(); ++i) {
        dk = add_degrees(dk, j, p);
        acc = WittVector(acc.algebra(), dk, detail::ambient_product(acc, strip(xs[i])));
    }
    const auto& polar = xs.front().polar();
    if (polar)
        for (std::size_t i = 0; i < acc.components().size(); ++i)
            require(polar->contains(acc[i]), ErrorCode::NotMultipliable,
                    "component " + std::to_string(i) + " of the p-fold product, " + acc[i].to_string() +
                        ", is not in the carrier");
    return WittVector(acc.algebra(), acc.degree(), acc.components(), polar);
}

/// Action of a W_n(F_p) scalar (given by its residue mod p^{n+1}).
inline WittVector witt_scale(const WittVector& x, const WittScalar& c) {
    require(c.prime() == x.prime(), ErrorCode::OwnerMismatch, "scalar over another prime");
    require(c.length() == x.length(), ErrorCode::LengthMismatch, "scalar of another length");
    std::vector<AlgElement> cc;
    for (auto v : c.components()) cc.push_back(AlgElement::constant(x.algebra(), v));
    WittVector s(x.algebra(), WittDegree{}, std::move(cc));
    WittVector xa(x.algebra(), x.degree(), x.components());
    auto prod = detail::ambient_product(s, xa);
    return WittVector(x.algebra(), x.degree(), std::move(prod), x.polar());
}

/// k * x for an integer k, by repeated doubling inside the Witt group.
inline WittVector witt_times(const WittVector& x, std::int64_t k) {
    WittVector acc = WittVector::zero(x.algebra(), x.degree(), x.length(), x.polar());
    WittVector base = k < 0 ? witt_neg(x) : x;
    std::uint64_t e = static_cast<std::uint64_t>(k < 0 ? -k : k);
    while (e) {
        if (e & 1) acc = witt_add(acc, base);
        e >>= 1;
        if (e) base = witt_add(base, base);
    }
    return acc;
}

/// V: W_n(A)(1) -> W_{n+1}(A), (x_0, x_1, ..) -> (0, x_0, x_1, ..).
inline WittVector verschiebung(const WittVector& x) {
    std::vector<AlgElement> c{AlgElement::zero(x.algebra())};
    c.insert(c.end(), x.components().begin(), x.components().end());
    return WittVector(x.algebra(), x.degree().over_p(x.prime()), std::move(c), x.polar());
}

/// F: W_n(A) -> W_{n-1}(A)(1), from the universal Frobenius polynomials.
inline WittVector frobenius(const WittVector& x) {
    const int n = x.length();
    require(n >= 1, ErrorCode::LengthMismatch, "Frobenius needs length at least 1");
    auto T = modp_polys(x.prime(), n);
    auto vals = detail::single_values(x, T->n);
    auto ops = alg_ops(x.algebra());
    std::vector<AlgElement> c;
    for (int m = 0; m < n; ++m) c.push_back(evaluate(T->F[static_cast<std::size_t>(m)], vals, ops));
    return WittVector(x.algebra(), x.degree().times_p(x.prime()), std::move(c), x.polar());
}

/// (a, 0, .., 0) of length n; the degree of a zero input must be supplied.
inline WittVector teichmuller(const AlgElement& a, int n, std::optional<std::int64_t> degree = std::nullopt,
                              PolarPtr polar = nullptr) {
    auto di = a.degree_info();
    require(!di.is_mixed(), ErrorCode::Inhomogeneous, "Teichmueller lift of inhomogeneous " + a.to_string());
    std::int64_t j = di.kind == DegreeKind::Homogeneous ? di.degree : degree.value_or(0);
    std::vector<AlgElement> c(static_cast<std::size_t>(n) + 1, AlgElement::zero(a.owner()));
    c[0] = a;
    return WittVector(a.owner(), WittDegree::integral(j), std::move(c), std::move(polar));
}

/// Ghost components w_m = sum_l p^l a_l^{p^{m-l}}, evaluated in A (so only a_0^{p^m} survives).
inline std::vector<AlgElement> ghost(const WittVector& x) {
    const auto p = x.prime().value();
    std::vector<AlgElement> out;
    for (int m = 0; m <= x.length(); ++m) {
        AlgElement w = AlgElement::zero(x.algebra());
        mpz_class pl = 1;
        for (int l = 0; l <= m; ++l) {
            std::uint64_t e = UniversalWittPolys::pow_u(p, m - l);
            w = w + x[static_cast<std::size_t>(l)].pow(e).scaled(mod_p(pl, p));
            pl *= p;
        }
        out.push_back(w);
    }
    return out;
}

/// Ghost components of an integer Witt vector (the Z-lift used by the universal checks).
inline std::vector<mpz_class> ghost_integer(Prime p, const std::vector<mpz_class>& a) {
    std::vector<mpz_class> out;
    for (std::size_t m = 0; m < a.size(); ++m) {
        mpz_class w = 0;
        for (std::size_t l = 0; l <= m; ++l) {
            mpz_class t;
            mpz_pow_ui(t.get_mpz_t(), a[l].get_mpz_t(), UniversalWittPolys::pow_u(p, static_cast<int>(m - l)));
            w += mpz_pow(p, l) * t;
        }
        out.push_back(w);
    }
    return out;
}

/// Integer Witt sum/product/Frobenius through the universal polynomials.
inline std::vector<mpz_class> witt_integer_op(Prime p, char op, const std::vector<mpz_class>& a,
                                              const std::vector<mpz_class>& b = {}) {
    const int n = static_cast<int>(a.size()) - 1;
    auto U = universal_polys(p, n);
    std::vector<mpz_class> vals(static_cast<std::size_t>(2 * (U->n() + 1)), 0);
    for (int i = 0; i <= n; ++i) {
        vals[static_cast<std::size_t>(i)] = a[static_cast<std::size_t>(i)];
        if (!b.empty()) vals[static_cast<std::size_t>(U->n() + 1 + i)] = b[static_cast<std::size_t>(i)];
    }
    std::vector<mpz_class> out;
    auto ops = integer_ops();
    for (int m = 0; m <= n; ++m) {
        switch (op) {
        case '+': out.push_back(evaluate(U->S(m), vals, ops)); break;
        case '*': out.push_back(evaluate(U->P(m), vals, ops)); break;
        case '-': out.push_back(evaluate(U->N(m), vals, ops)); break;
        case 'F':
            if (m < n) out.push_back(evaluate(U->F(m), vals, ops));
            break;
        default: fail(ErrorCode::InvalidArgument, std::string("unknown Witt operation ") + op);
        }
    }
    return out;
}

struct IsoCheckReport {
    bool ok = true;
    std::vector<std::string> lines;
    std::optional<std::int64_t> first_mismatch;
};

/// Compares W_n(k_0[u])_j with (W_n(k_0)[u])_j for |u| = d > 0 and 0 <= j <= max_degree: the
/// ranks (number of nonzero components, i.e. log_p of the order) must agree, and where d | j
/// multiplication by the Teichmueller lift of u^{j/d} must carry W_n(k_0) bijectively onto the
/// degree-j piece. With trivial = true the ring is the zero ring and both sides vanish.
inline IsoCheckReport witt_of_poly_ring_iso_check(Prime p, std::int64_t d, int n, std::int64_t max_degree,
                                                  bool trivial = false) {
    require(d > 0, ErrorCode::InvalidArgument, "the polynomial generator needs positive degree");
    require(n >= 0, ErrorCode::InvalidArgument, "negative truncation");
    IsoCheckReport rep;
    if (trivial) {
        for (std::int64_t j = 0; j <= max_degree; ++j)
            rep.lines.push_back("degree " + std::to_string(j) + ": W_n(R) rank 0, W_n(k0)[u] rank 0 ok");
        return rep;
    }
    auto ring = Presentation::make(GradedField::ungraded(p, false), {{"u", d}}, {}, {},
                                   DegreeBound{max_degree * static_cast<std::int64_t>(UniversalWittPolys::pow_u(p, n)), 24});
    for (std::int64_t j = 0; j <= max_degree; ++j) {
        int left = 0;
        std::int64_t e = j;
        for (int i = 0; i <= n; ++i, e *= p.value())
            if (e % d == 0) ++left;
        int right = j % d == 0 ? n + 1 : 0;
        bool good = left == right;
        if (good && right > 0) {
            // x -> x * [u^{j/d}] on all of W_n(F_p)
            auto t = teichmuller(AlgElement::generator(ring, 0, static_cast<std::uint32_t>(j / d)), n);
            std::set<std::string> images;
            std::vector<std::uint32_t> digits(static_cast<std::size_t>(n) + 1, 0);
            while (true) {
                std::vector<AlgElement> cc;
                for (auto v : digits) cc.push_back(AlgElement::constant(ring, v));
                auto img = witt_mul(WittVector(ring, WittDegree{}, std::move(cc)), t);
                images.insert(img.to_string());
                std::size_t k = 0;
                while (k < digits.size() && ++digits[k] == p.value()) digits[k++] = 0;
                if (k == digits.size()) break;
            }
            good = images.size() == static_cast<std::size_t>(UniversalWittPolys::pow_u(p, n + 1));
        }
        if (!good && !rep.first_mismatch) rep.first_mismatch = j;
        rep.ok = rep.ok && good;
        rep.lines.push_back("degree " + std::to_string(j) + ": W_n(k0[u]) rank " + std::to_string(left) +
                            ", W_n(k0)[u] rank " + std::to_string(right) + (good ? " ok" : " MISMATCH"));
    }
    return rep;
}

} // namespace polarwitt

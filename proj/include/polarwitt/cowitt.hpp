#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <gmpxx.h>

#include "errors.hpp"
#include "gradedpoly.hpp"
#include "linalg.hpp"
#include "polar.hpp"
#include "witt.hpp"

namespace polarwitt {

/// Where co-Witt components live: a presented algebra, or a polar algebra inside its ambient.
struct CoWittSpace {
    PresentationPtr A;
    PolarPtr polar;
    DegreeBound bound;

    static CoWittSpace of(const PresentationPtr& A) { return {A, nullptr, A->bound()}; }
    static CoWittSpace of(const PolarPtr& P) { return {P->ambient(), P, P->bound()}; }

    const GradedField& field() const { return A->field(); }
    std::uint32_t p() const { return A->p(); }

    /// F_p-basis of the degree-n piece (carrier piece for polar spaces).
    std::vector<AlgElement> basis(std::int64_t n) const {
        if (polar) return polar->basis_in_degree(n);
        if (!field().is_periodic() && (n < 0 || n > bound.max_degree)) return {};
        return graded_piece(A, n, bound);
    }

    bool contains(const AlgElement& a) const { return !polar || polar->contains(a); }

    friend bool operator==(const CoWittSpace& a, const CoWittSpace& b) { return a.A == b.A && a.polar == b.polar; }
};

/// dim_k of the ambient when it is finite: every generator needs a pure-power monomial relation.
inline std::optional<std::size_t> finite_dimension(const CoWittSpace& S) {
    if (S.polar) {
        // the carrier is finite within its bound only when the ambient is
        auto amb = finite_dimension(CoWittSpace::of(S.A));
        if (!amb) return std::nullopt;
        return S.polar->dimension();
    }
    const auto& A = *S.A;
    if (A.has_rules()) return std::nullopt;
    std::int64_t top = 0;
    for (std::size_t g = 0; g < A.ngens(); ++g) {
        std::optional<std::uint32_t> k;
        for (const auto& r : A.monomial_relations()) {
            bool pure = true;
            for (std::size_t h = 0; h < r.size(); ++h)
                if (h != g && r[h]) pure = false;
            if (pure && r[g]) k = k ? std::min(*k, r[g]) : r[g];
        }
        if (!k) return std::nullopt;
        top += static_cast<std::int64_t>(*k - 1) * std::max<std::int64_t>(A.generators()[g].degree, 0);
    }
    require(top <= A.bound().max_degree, ErrorCode::BoundExceeded, "finite algebra exceeds its degree bound");
    std::size_t dim = 0;
    for (std::int64_t e = 0; e <= top; ++e) dim += xdegree_basis(A, e).size();
    return dim;
}

namespace detail {

inline std::int64_t inverse_mod(std::int64_t a, std::int64_t m) {
    std::int64_t g = m, x = 0, x1 = 1, a1 = ((a % m) + m) % m;
    while (a1) {
        std::int64_t q = g / a1;
        std::tie(g, a1) = std::make_pair(a1, g - q * a1);
        std::tie(x, x1) = std::make_pair(x1, x - q * x1);
    }
    require(g == 1, ErrorCode::InvalidArgument, "p is not invertible modulo d");
    return ((x % m) + m) % m;
}

} // namespace detail

/// Degree of co-Witt position -k for a vector of degree j, or nullopt when the position is
/// forced to vanish (ungraded, p^k not dividing j). Periodic positions use the representative
/// in [0, d) of j p^{-k}; so do vectors of degree divisible by d (identified with degree 0).
inline std::optional<std::int64_t> cw_position_degree(const GradedField& k, std::int64_t j, int pos) {
    const std::int64_t p = k.p.value();
    if (!k.is_periodic()) {
        std::int64_t v = j;
        for (int i = 0; i < pos; ++i) {
            if (v % p) return std::nullopt;
            v /= p;
        }
        return v;
    }
    std::int64_t r = k.class_of(j), pinv = detail::inverse_mod(p, k.d);
    for (int i = 0; i < pos; ++i) r = (r * pinv) % k.d;
    return r;
}

/// Canonical tag of a co-Witt degree: j itself when ungraded, its residue mod d when periodic.
inline std::int64_t cw_tag(const GradedField& k, std::int64_t j) { return k.is_periodic() ? k.class_of(j) : j; }

/// Left-infinite vector (.., a_{-2}, a_{-1}, a_0): explicit components comps[k] = a_{-k} and a tail
/// repeated forever beyond them. The tail is zero (unipotent) except in degree 0 over a
/// finite-dimensional ungraded algebra, where a nilpotent constant tail is allowed.
class CoWittVector {
public:
    CoWittVector(CoWittSpace S, std::int64_t j, std::vector<AlgElement> comps, std::optional<AlgElement> tail = std::nullopt)
        : S_(std::move(S)), j_(cw_tag(S_.field(), j)), comps_(std::move(comps)) {
        tail_ = tail ? *tail : AlgElement::zero(S_.A);
        for (std::size_t k = 0; k < comps_.size(); ++k) comps_[k] = checked(comps_[k], static_cast<int>(k));
        if (!tail_.is_zero()) {
            require(!S_.field().is_periodic() && j_ == 0, ErrorCode::InvalidArgument,
                    "non-unipotent co-Witt vectors are supported in degree 0 over an ungraded field only");
            auto dim = finite_dimension(S_);
            require(dim.has_value(), ErrorCode::NotFiniteDimensional,
                    "nilpotent tail needs a finite-dimensional algebra");
            tail_ = checked(tail_, 0);
            require(tail_.pow(*dim + 1).is_zero(), ErrorCode::InvalidArgument, "tail " + tail_.to_string() + " is not nilpotent");
        }
        trim();
    }

    static CoWittVector zero(const CoWittSpace& S, std::int64_t j) { return CoWittVector(S, j, {}); }

    const CoWittSpace& space() const noexcept { return S_; }
    std::int64_t degree() const noexcept { return j_; }
    /// Number of explicit components (a_0 .. a_{-(extent-1)}).
    int extent() const noexcept { return static_cast<int>(comps_.size()); }
    const AlgElement& tail() const noexcept { return tail_; }
    bool unipotent() const noexcept { return tail_.is_zero(); }
    bool is_zero() const noexcept { return comps_.empty() && tail_.is_zero(); }

    /// a_{-k}.
    AlgElement at(int k) const {
        if (k < 0) return AlgElement::zero(S_.A);
        if (k < extent()) return comps_[static_cast<std::size_t>(k)];
        return tail_;
    }

    /// `[...;a_{-1};a_0]`, or `[...(t);a_{-1};a_0]` with a repeating tail t.
    std::string to_string() const {
        std::string s = tail_.is_zero() ? "[..." : "[...(" + tail_.to_string() + ")";
        for (int k = extent() - 1; k >= 0; --k) s += ";" + comps_[static_cast<std::size_t>(k)].to_string();
        if (comps_.empty()) s += ";0";
        return s + "]";
    }

    friend bool operator==(const CoWittVector& a, const CoWittVector& b) {
        if (!(a.S_ == b.S_) || a.comps_.size() != b.comps_.size() || !(a.tail_ == b.tail_)) return false;
        if (a.j_ != b.j_ && !(a.is_zero() && b.is_zero())) return false;
        for (std::size_t k = 0; k < a.comps_.size(); ++k)
            if (!(a.comps_[k] == b.comps_[k])) return false;
        return true;
    }

private:
    AlgElement checked(const AlgElement& a, int k) const {
        require(a.owner() == S_.A, ErrorCode::OwnerMismatch, "co-Witt component from another algebra");
        if (a.is_zero()) return a;
        auto want = cw_position_degree(S_.field(), j_, k);
        require(want.has_value(), ErrorCode::DegreeMismatch,
                "position -" + std::to_string(k) + " of a degree-" + std::to_string(j_) + " co-Witt vector must vanish");
        AlgElement b = S_.field().is_periodic() ? a.shifted_to_degree(*want) : a;
        require(b.is_homogeneous(), ErrorCode::Inhomogeneous, "co-Witt component " + a.to_string() + " not homogeneous");
        require(b.degree_info().degree == *want, ErrorCode::DegreeMismatch,
                "co-Witt component " + a.to_string() + " at position -" + std::to_string(k) + " must have degree " +
                    std::to_string(*want));
        require(S_.contains(b), ErrorCode::NotInCarrier, "co-Witt component " + a.to_string() + " not in the carrier");
        return b;
    }

    void trim() {
        while (!comps_.empty() && comps_.back() == tail_) comps_.pop_back();
    }

    CoWittSpace S_;
    std::int64_t j_;
    std::vector<AlgElement> comps_;
    AlgElement tail_;
};

namespace detail {

inline void check_cw(const CoWittVector& x, const CoWittVector& y) {
    require(x.space() == y.space(), ErrorCode::OwnerMismatch, "co-Witt vectors over different algebras");
    require(x.degree() == y.degree() || x.is_zero() || y.is_zero(), ErrorCode::DegreeMismatch,
            "co-Witt degrees " + std::to_string(x.degree()) + " and " + std::to_string(y.degree()));
}

// Tail levels that make the stabilized formulas exact for nilpotent tails: monomials of the
// universal polynomials that reach deeper than T levels carry a tail power of at least
// 1 + T(p-1), which vanishes once it reaches the nilpotency index.
inline int tail_levels(const CoWittVector& x, const CoWittVector& y) {
    if (x.unipotent() && y.unipotent()) return 0;
    auto dim = finite_dimension(x.space());
    const int p = static_cast<int>(x.space().p());
    // least N with every product of N tail factors zero; dim + 1 always works
    int N = 1;
    for (; N <= static_cast<int>(*dim); ++N) {
        bool all_zero = true;
        for (int a = 0; a <= N && all_zero; ++a)
            all_zero = (x.tail().pow(static_cast<std::uint64_t>(a)) * y.tail().pow(static_cast<std::uint64_t>(N - a))).is_zero();
        if (all_zero) break;
    }
    return (N - 1 + p - 2) / (p - 1);
}

// With a tail, positions 0..L are explicit (F reads one level above) and L+1 lies wholly in
// the tail region, where every formula has constant inputs.
inline int positions_needed(int L, bool tails) { return tails ? L + 2 : L; }

inline std::optional<AlgElement> split_tail(std::vector<AlgElement>& c, bool tails) {
    if (!tails) return std::nullopt;
    AlgElement t = c.back();
    c.pop_back();
    return t;
}

inline AlgElement normalize_at(const CoWittSpace& S, std::int64_t j, int k, AlgElement a) {
    if (a.is_zero() || !S.field().is_periodic()) return a;
    return a.shifted_to_degree(*cw_position_degree(S.field(), j, k));
}

// Evaluates a universal polynomial in the x variables (offset 0) and optionally y variables
// (offset U.n + 1) at the windows a_{-m-n}..a_{-n}, shifting the top by `top`.
inline AlgElement eval_window(const IntPoly& poly, int m, int n, int un, const CoWittVector& x,
                              const CoWittVector* y, int extra_top = 0) {
    const auto& A = x.space().A;
    std::vector<AlgElement> vals(static_cast<std::size_t>(2 * (un + 1)), AlgElement::zero(A));
    for (int i = 0; i <= m + extra_top; ++i) {
        int pos = m + n - i; // variable i holds a_{-(m+n-i)}
        vals[static_cast<std::size_t>(i)] = x.at(pos);
        if (y) vals[static_cast<std::size_t>(un + 1 + i)] = y->at(pos);
    }
    return evaluate(poly, vals, alg_ops(A));
}

} // namespace detail

/// Stabilized sum: c_{-n} = S_m(a_{-m-n}..a_{-n}, b_{-m-n}..b_{-n}) with m past both supports.
/// `extra` raises m beyond the stabilization index (used to test well-definedness).
inline CoWittVector cw_add(const CoWittVector& x, const CoWittVector& y, int extra = 0) {
    detail::check_cw(x, y);
    const auto& S = x.space();
    const std::int64_t j = x.is_zero() ? y.degree() : x.degree();
    const int L = std::max(x.extent(), y.extent());
    const int T = detail::tail_levels(x, y);
    const bool tails = !(x.unipotent() && y.unipotent());
    const int positions = detail::positions_needed(L, tails);
    const int mmax = std::max(0, L - 1) + T + extra;
    (void)mmax;
    auto Pm = modp_polys(Prime(S.p()), mmax);
    std::vector<AlgElement> c;
    for (int n = 0; n < positions; ++n) {
        int m = std::max(0, L - 1 - n) + T + extra;
        auto v = detail::eval_window(Pm->S[static_cast<std::size_t>(m)], m, n, Pm->n, x, &y);
        c.push_back(detail::normalize_at(S, j, n, v));
    }
    auto tail = detail::split_tail(c, tails);
    return CoWittVector(S, j, std::move(c), tail);
}

inline CoWittVector cw_neg(const CoWittVector& x, int extra = 0) {
    const auto& S = x.space();
    const int L = x.extent();
    const int T = detail::tail_levels(x, x);
    const bool tails = !x.unipotent();
    const int positions = detail::positions_needed(L, tails);
    auto Pm = modp_polys(Prime(S.p()), std::max(0, L - 1) + T + extra);
    std::vector<AlgElement> c;
    for (int n = 0; n < positions; ++n) {
        int m = std::max(0, L - 1 - n) + T + extra;
        auto v = detail::eval_window(Pm->N[static_cast<std::size_t>(m)], m, n, Pm->n, x, nullptr);
        c.push_back(detail::normalize_at(S, x.degree(), n, v));
    }
    auto tail = detail::split_tail(c, tails);
    return CoWittVector(S, x.degree(), std::move(c), tail);
}

inline CoWittVector cw_sub(const CoWittVector& x, const CoWittVector& y) { return cw_add(x, cw_neg(y)); }

inline CoWittVector cw_times(const CoWittVector& x, std::int64_t k) {
    CoWittVector acc = CoWittVector::zero(x.space(), x.degree());
    CoWittVector base = k < 0 ? cw_neg(x) : x;
    std::uint64_t e = static_cast<std::uint64_t>(k < 0 ? -k : k);
    while (e) {
        if (e & 1) acc = cw_add(acc, base);
        e >>= 1;
        if (e) base = cw_add(base, base);
    }
    return acc;
}

/// V: CW(A)(1) -> CW(A), dropping a_0 (on the finite stages this is the restriction
/// W_i -> W_{i-1}); the result has degree j/p.
inline CoWittVector cw_V(const CoWittVector& x) {
    const auto& k = x.space().field();
    const std::int64_t p = k.p.value();
    std::int64_t j;
    if (k.is_periodic()) {
        j = (x.degree() * detail::inverse_mod(p, k.d)) % k.d;
    } else {
        require(x.degree() % p == 0 || x.extent() <= 1, ErrorCode::DegreeMismatch,
                "V needs a degree divisible by p");
        j = x.degree() % p == 0 ? x.degree() / p : 0;
    }
    std::vector<AlgElement> c;
    for (int n = 1; n < x.extent(); ++n) c.push_back(detail::normalize_at(x.space(), j, n - 1, x.at(n)));
    std::optional<AlgElement> tail;
    if (!x.unipotent()) tail = x.tail();
    return CoWittVector(x.space(), j, std::move(c), tail);
}

/// F: CW(A) -> CW(A)(1), F(a)_{-n} = F_m(a_{-m-n}, .., a_{-n}, a_{-n+1}); the result has degree pj.
inline CoWittVector cw_F(const CoWittVector& x, int extra = 0) {
    const auto& S = x.space();
    const std::int64_t j = cw_tag(S.field(), x.degree() * static_cast<std::int64_t>(S.p()));
    const int L = x.extent();
    const int T = detail::tail_levels(x, x);
    const bool tails = !x.unipotent();
    const int positions = detail::positions_needed(L, tails);
    auto Pm = modp_polys(Prime(S.p()), std::max(0, L - 1) + T + extra + 1);
    std::vector<AlgElement> c;
    for (int n = 0; n < positions; ++n) {
        int m = std::max(0, L - 1 - n) + T + extra;
        auto v = detail::eval_window(Pm->F[static_cast<std::size_t>(m)], m, n, Pm->n, x, nullptr, 1);
        c.push_back(detail::normalize_at(S, j, n, v));
    }
    auto tail = detail::split_tail(c, tails);
    return CoWittVector(S, j, std::move(c), tail);
}

// ---------------------------------------------------------------- group structure

/// Position -k of a degree-j co-Witt vector and a basis of the piece there.
struct CwPosition {
    int k = 0;
    std::int64_t degree = 0;
    std::vector<AlgElement> basis;
};

/// Nonzero positions up to the given extent.
inline std::vector<CwPosition> cw_positions(const CoWittSpace& S, std::int64_t j, int extent) {
    std::vector<CwPosition> out;
    for (int k = 0; k < extent; ++k) {
        auto deg = cw_position_degree(S.field(), j, k);
        if (!deg) continue;
        auto b = S.basis(*deg);
        if (!b.empty()) out.push_back({k, *deg, std::move(b)});
    }
    return out;
}

/// Least extent containing every nonzero position; nullopt when positions never stop
/// (degree 0 over an algebra with nonzero degree-0 part, or periodic mode).
inline std::optional<int> cw_natural_extent(const CoWittSpace& S, std::int64_t j, int search = 64) {
    if (S.field().is_periodic()) return std::nullopt;
    if (j == 0) return S.basis(0).empty() ? std::optional<int>(0) : std::nullopt;
    int last = 0;
    for (int k = 0; k < search; ++k) {
        auto deg = cw_position_degree(S.field(), j, k);
        if (!deg) break;
        if (!S.basis(*deg).empty()) last = k + 1;
    }
    return last;
}

/// CW(A)_j cut to extent L as a finite abelian group: generators g_{k,b} (basis element b at
/// position -k), relations p g_{k,b} = its digit expansion in shallower positions.
struct CwGroup {
    CoWittSpace space;
    std::int64_t degree = 0;
    int extent = 0;
    std::vector<CwPosition> positions;
    std::vector<std::pair<std::size_t, std::size_t>> generators; // (position index, basis index)
    std::vector<std::string> names;
    IntMatrix relations;
    std::vector<mpz_class> invariants; // Smith invariant factors > 1
    mpz_class order = 1;

    CoWittVector generator(std::size_t g) const {
        auto [pi, bi] = generators[g];
        const auto& pos = positions[pi];
        std::vector<AlgElement> c(static_cast<std::size_t>(pos.k) + 1, AlgElement::zero(space.A));
        c[static_cast<std::size_t>(pos.k)] = pos.basis[bi];
        return CoWittVector(space, degree, std::move(c));
    }

    /// Integer coordinates (digits in [0, p)) of a vector of extent <= L in the generators.
    std::vector<mpz_class> digits(CoWittVector x) const {
        require(x.unipotent() && x.extent() <= extent, ErrorCode::BoundExceeded, "vector beyond the group extent");
        std::vector<mpz_class> out(generators.size(), 0);
        const auto p = space.p();
        for (std::size_t pi = positions.size(); pi-- > 0;) {
            const auto& pos = positions[pi];
            auto a = x.at(pos.k);
            if (a.is_zero()) continue;
            auto co = coordinates_in(pos, a);
            CoWittVector sub = CoWittVector::zero(space, degree);
            for (std::size_t g = 0; g < generators.size(); ++g) {
                if (generators[g].first != pi) continue;
                auto c = co.count(generators[g].second) ? co.at(generators[g].second) : 0u;
                if (!c) continue;
                out[g] = c;
                sub = cw_add(sub, cw_times(generator(g), c));
            }
            x = cw_sub(x, sub);
            require(x.at(pos.k).is_zero(), ErrorCode::InvalidArgument, "digit peeling failed");
        }
        for (int k = 0; k < x.extent(); ++k)
            require(x.at(k).is_zero(), ErrorCode::NotInCarrier, "vector has components outside the enumerated positions");
        (void)p;
        return out;
    }

    static std::map<std::size_t, std::uint32_t> coordinates_in(const CwPosition& pos, const AlgElement& a) {
        std::map<Monomial, std::size_t> cols;
        auto col = [&](const Monomial& m) {
            auto it = cols.find(m);
            if (it != cols.end()) return it->second;
            return cols[m] = cols.size();
        };
        FpEchelon ech(a.p());
        for (const auto& b : pos.basis) {
            FpVec v;
            for (const auto& [m, c] : b.terms()) v[col(m)] = c;
            ech.insert(v);
        }
        FpVec v;
        for (const auto& [m, c] : a.terms()) v[col(m)] = c;
        auto co = ech.coordinates(v);
        require(co.has_value(), ErrorCode::NotInCarrier, a.to_string() + " is outside the piece");
        return {co->begin(), co->end()};
    }
};

inline CwGroup cw_group_structure(const CoWittSpace& S, std::int64_t j, std::optional<int> extent = std::nullopt) {
    CwGroup G;
    G.space = S;
    G.degree = cw_tag(S.field(), j);
    auto natural = cw_natural_extent(S, G.degree);
    if (!extent) {
        require(natural.has_value(), ErrorCode::BoundExceeded,
                "co-Witt positions do not terminate in degree " + std::to_string(j) + "; give an extent");
        extent = *natural;
    }
    G.extent = *extent;
    G.positions = cw_positions(S, G.degree, G.extent);
    for (std::size_t pi = 0; pi < G.positions.size(); ++pi)
        for (std::size_t bi = 0; bi < G.positions[pi].basis.size(); ++bi) {
            G.generators.push_back({pi, bi});
            G.names.push_back("g[" + std::to_string(G.positions[pi].k) + "," + G.positions[pi].basis[bi].to_string() + "]");
        }
    const auto p = S.p();
    const std::size_t N = G.generators.size();
    for (std::size_t g = 0; g < N; ++g) {
        std::vector<mpz_class> row(N, 0);
        row[g] = p;
        auto d = G.digits(cw_times(G.generator(g), p));
        for (std::size_t h = 0; h < N; ++h) row[h] -= d[h];
        G.relations.push_back(row);
        G.order *= p;
    }
    for (auto& f : smith_invariants(G.relations))
        if (f > 1) G.invariants.push_back(f);
    return G;
}

// ---------------------------------------------------------------- periodic route through the hull

/// CW of a typical polar algebra over Periodic(d) computed as phi^{-1}(CW(hull(phi A))_(1)):
/// components move to the regraded hull, are combined there, and are pulled back.
class PeriodicCoWitt {
public:
    explicit PeriodicCoWitt(PolarPtr A) : A_(std::move(A)), reg_(regrade(A_)), hull_(reg_.image) {
        require(A_->field().is_periodic(), ErrorCode::TypicalityMissing, "periodic route needs a periodic base field");
    }

    const Hull& hull_data() const noexcept { return hull_; }
    const Regrading& regrading() const noexcept { return reg_; }

    /// Degree of the image of a degree-j vector in the regraded hull (class 1 p^i).
    std::int64_t hull_degree(std::int64_t j) const {
        const auto& k = A_->field();
        const auto tj = A_->typicality().j;
        std::int64_t cur = tj;
        for (int i = 0; i < reg_.h; ++i) {
            if (k.class_of(cur) == k.class_of(j)) return ipow(k.p.value(), i);
            cur *= k.p.value();
        }
        fail(ErrorCode::RegradeUnsupported, "degree " + std::to_string(j) + " is outside the typical class");
    }

    CoWittVector to_hull(const CoWittVector& x) const {
        require(x.space().polar == A_, ErrorCode::OwnerMismatch, "vector over another polar algebra");
        const auto jh = hull_degree(x.degree());
        CoWittSpace HS = CoWittSpace::of(hull_.algebra());
        std::vector<AlgElement> c;
        for (int k = 0; k < x.extent(); ++k) {
            auto img = hull_.unit(relabel(x.at(k), reg_.image->ambient()));
            c.push_back(detail::normalize_at(HS, jh, k, img));
        }
        return CoWittVector(HS, jh, std::move(c));
    }

    CoWittVector from_hull(const CoWittVector& h, std::int64_t j) const {
        std::vector<AlgElement> c;
        CoWittSpace S = CoWittSpace::of(A_);
        for (int k = 0; k < h.extent(); ++k) {
            auto back = relabel(hull_.restrict_to_carrier(h.at(k)), A_->ambient());
            c.push_back(detail::normalize_at(S, cw_tag(A_->field(), j), k, back));
        }
        return CoWittVector(S, j, std::move(c));
    }

    CoWittVector add(const CoWittVector& x, const CoWittVector& y) const {
        detail::check_cw(x, y);
        const auto j = x.is_zero() ? y.degree() : x.degree();
        return from_hull(cw_add(to_hull(x), to_hull(y)), j);
    }

    CoWittVector neg(const CoWittVector& x) const { return from_hull(cw_neg(to_hull(x)), x.degree()); }

private:
    // Same exponents, u dropped: the x-part transported between the source and regraded ambients.
    static AlgElement relabel(const AlgElement& a, const PresentationPtr& target) {
        AlgElement::Terms t;
        for (const auto& [m, c] : a.terms()) t[Monomial{m.exps, 0}] = c;
        return AlgElement(target, std::move(t));
    }

    PolarPtr A_;
    Regrading reg_;
    Hull hull_;
};

} // namespace polarwitt

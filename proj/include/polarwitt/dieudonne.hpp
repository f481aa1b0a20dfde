#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include <gmpxx.h>

#include "cowitt.hpp"
#include "errors.hpp"
#include "gradedpoly.hpp"
#include "intpoly.hpp"
#include "linalg.hpp"
#include "polar.hpp"
#include "universal.hpp"

namespace polarwitt {

// ---------------------------------------------------------------- Dieudonne modules

/// Finite-length graded module over W_n(F_p) = Z/p^{n+1} on generators g_i of given degrees,
/// with relations (integer rows), F: M_m -> M_{pm} and V: M_{pm} -> M_m on generators. An
/// F row left empty marks a window boundary where F leaves the presented degrees.
struct DieudonneModulePresentation {
    Prime p{2};
    int length = 0; // scalars are W_length(F_p)
    std::vector<std::string> names;
    std::vector<std::int64_t> degrees;
    IntMatrix relations;
    std::vector<std::optional<std::vector<mpz_class>>> F; // F(g_i) as a row, or boundary
    std::vector<std::vector<mpz_class>> V;
    /// Action of the Frobenius of W(k) on scalars; the identity for the prime field.
    std::function<mpz_class(const mpz_class&)> twist = [](const mpz_class& a) { return a; };

    std::size_t size() const { return names.size(); }

    std::vector<mpz_class> unit(std::size_t i) const {
        std::vector<mpz_class> v(size(), 0);
        v[i] = 1;
        return v;
    }
};

struct DieudonneReport {
    std::vector<std::string> lines;
    bool valid = true;
    bool unipotent = false;
    std::string text() const {
        std::string s;
        for (const auto& l : lines) s += l + "\n";
        return s;
    }
};

namespace detail {

inline std::string row_string(const std::vector<mpz_class>& v) {
    std::string s = "(";
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + v[i].get_str();
    return s + ")";
}

struct RelationLattice {
    IntMatrix hermite;

    RelationLattice(const DieudonneModulePresentation& M) {
        IntMatrix rows = M.relations;
        mpz_class top = mpz_pow(M.p, static_cast<unsigned long>(M.length) + 1);
        for (std::size_t i = 0; i < M.size(); ++i) {
            auto r = M.unit(i);
            r[i] = top;
            rows.push_back(r);
        }
        hermite = hermite_rows(rows, M.size());
    }
    bool zero(const std::vector<mpz_class>& v) const { return lattice_contains(hermite, v); }
};

// Applies an endomorphism given on generators (rows) to a vector, twisting scalars.
inline std::optional<std::vector<mpz_class>> apply_rows(const DieudonneModulePresentation& M,
                                                        const std::vector<std::optional<std::vector<mpz_class>>>& rows,
                                                        const std::vector<mpz_class>& v) {
    std::vector<mpz_class> out(M.size(), 0);
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (v[i] == 0) continue;
        if (!rows[i]) return std::nullopt;
        auto c = M.twist(v[i]);
        for (std::size_t k = 0; k < M.size(); ++k) out[k] += c * (*rows[i])[k];
    }
    return out;
}

inline std::vector<std::optional<std::vector<mpz_class>>> as_optional(const std::vector<std::vector<mpz_class>>& rows) {
    return {rows.begin(), rows.end()};
}

} // namespace detail

/// Checks typing, well-definedness on relations, FV = p, VF = p, and classifies unipotence.
/// Lines read `AXIOM <name> PASS|FAIL|SKIP <witness>` and `CLASS <name> YES|NO <witness>`.
inline DieudonneReport check_dieudonne(const DieudonneModulePresentation& M) {
    DieudonneReport rep;
    const auto n = M.size();
    const auto p = M.p.value();
    require(M.degrees.size() == n && M.F.size() == n && M.V.size() == n, ErrorCode::LengthMismatch,
            "Dieudonne data sizes disagree");
    detail::RelationLattice L(M);
    auto Vopt = detail::as_optional(M.V);
    auto line = [&](const std::string& name, int status, const std::string& wit) {
        static const char* tags[] = {"PASS", "FAIL", "SKIP"};
        rep.lines.push_back("AXIOM " + name + " " + tags[status] + (wit.empty() ? "" : " " + wit));
        if (status == 1) rep.valid = false;
    };

    // typing: F(g) lives in degree p*deg(g), V(g) in degree deg(g)/p
    {
        std::string bad;
        for (std::size_t i = 0; i < n && bad.empty(); ++i) {
            if (M.F[i])
                for (std::size_t k = 0; k < n; ++k)
                    if ((*M.F[i])[k] != 0 && M.degrees[k] != M.degrees[i] * static_cast<std::int64_t>(p) &&
                        !L.zero(M.unit(k)))
                        bad = "F(" + M.names[i] + ") meets " + M.names[k];
            for (std::size_t k = 0; k < n && bad.empty(); ++k)
                if (M.V[i][k] != 0 && M.degrees[k] * static_cast<std::int64_t>(p) != M.degrees[i] && !L.zero(M.unit(k)))
                    bad = "V(" + M.names[i] + ") meets " + M.names[k];
        }
        line("typing", bad.empty() ? 0 : 1, bad);
    }
    // F and V preserve the relations (linearity over the twisted scalars)
    for (int which = 0; which < 2; ++which) {
        std::string bad;
        bool skipped = false;
        const auto& rows = which == 0 ? M.F : Vopt;
        IntMatrix rel = M.relations;
        for (const auto& r : rel) {
            auto img = detail::apply_rows(M, rows, r);
            if (!img) {
                skipped = true;
                continue;
            }
            if (!L.zero(*img) && bad.empty()) bad = "relation " + detail::row_string(r);
        }
        line(which == 0 ? "linear_F" : "linear_V", bad.empty() ? (skipped ? 2 : 0) : 1,
             bad.empty() ? (skipped ? "open boundary" : "twist=identity") : bad);
    }
    // FV = p and VF = p on generators
    for (int which = 0; which < 2; ++which) {
        std::string bad;
        std::size_t skipped = 0;
        for (std::size_t i = 0; i < n && bad.empty(); ++i) {
            auto first = detail::apply_rows(M, which == 0 ? Vopt : M.F, M.unit(i));
            if (!first) {
                ++skipped;
                continue;
            }
            auto second = detail::apply_rows(M, which == 0 ? M.F : Vopt, *first);
            if (!second) {
                ++skipped;
                continue;
            }
            for (std::size_t k = 0; k < n; ++k) (*second)[k] -= (k == i ? mpz_class(p) : mpz_class(0));
            if (!L.zero(*second)) bad = M.names[i];
        }
        std::string name = which == 0 ? "FV=p" : "VF=p";
        if (!bad.empty())
            line(name, 1, "at " + bad);
        else
            line(name, 0, skipped ? std::to_string(skipped) + " generator(s) at the open boundary" : "");
    }
    // unipotent: V^r(M) = 0 for r = number of generators times the length
    {
        const std::size_t r = n * (static_cast<std::size_t>(M.length) + 1) + 1;
        bool nil = true;
        std::string wit;
        for (std::size_t i = 0; i < n && nil; ++i) {
            auto v = M.unit(i);
            for (std::size_t s = 0; s < r; ++s) v = *detail::apply_rows(M, Vopt, v);
            if (!L.zero(v)) {
                nil = false;
                wit = "V^" + std::to_string(r) + "(" + M.names[i] + ") != 0";
            }
        }
        rep.unipotent = nil;
        rep.lines.push_back(std::string("CLASS unipotent ") + (nil ? "YES" : "NO") + (wit.empty() ? "" : " " + wit));
        rep.lines.push_back("CLASS p-adic YES finite length");
    }
    return rep;
}

/// Pieces of a co-Witt Dieudonne module together with the presentation.
struct CwDieudonne {
    DieudonneModulePresentation module;
    std::vector<CwGroup> pieces; // one per window degree
    std::vector<std::int64_t> window;
};

/// CW^u(A) on a window of degrees with its F and V. V must stay inside the window (or hit a
/// zero piece); F may leave it only from the top of the window, which is marked as an open
/// boundary.
inline CwDieudonne cw_as_dieudonne(const CoWittSpace& S, std::vector<std::int64_t> window) {
    require(!S.field().is_periodic(), ErrorCode::InvalidArgument, "co-Witt Dieudonne windows need an ungraded base field");
    std::sort(window.begin(), window.end());
    window.erase(std::unique(window.begin(), window.end()), window.end());
    CwDieudonne out;
    out.window = window;
    auto& M = out.module;
    M.p = Prime(S.p());
    std::map<std::int64_t, std::size_t> offset, piece_of;
    int max_extent = 0;
    for (auto j : window) {
        piece_of[j] = out.pieces.size();
        offset[j] = M.size();
        out.pieces.push_back(cw_group_structure(S, j));
        const auto& G = out.pieces.back();
        max_extent = std::max(max_extent, G.extent);
        for (std::size_t g = 0; g < G.generators.size(); ++g) {
            M.names.push_back(G.names[g]);
            M.degrees.push_back(j);
        }
    }
    M.length = std::max(0, max_extent - 1);
    const std::size_t N = M.size();
    auto embed = [&](std::int64_t j, const std::vector<mpz_class>& local) {
        std::vector<mpz_class> row(N, 0);
        for (std::size_t i = 0; i < local.size(); ++i) row[offset[j] + i] = local[i];
        return row;
    };
    for (auto j : window)
        for (const auto& r : out.pieces[piece_of[j]].relations) M.relations.push_back(embed(j, r));
    const std::int64_t p = S.p();
    for (auto j : window) {
        const auto& G = out.pieces[piece_of[j]];
        for (std::size_t g = 0; g < G.generators.size(); ++g) {
            auto x = G.generator(g);
            // F lands in degree pj
            if (piece_of.count(j * p)) {
                M.F.push_back(embed(j * p, out.pieces[piece_of[j * p]].digits(cw_F(x))));
            } else if (j == window.back()) {
                M.F.push_back(std::nullopt);
            } else {
                require(cw_F(x).is_zero(), ErrorCode::WindowNotClosed, "F leaves the window from degree " + std::to_string(j));
                M.F.push_back(std::vector<mpz_class>(N, 0));
            }
            // V lands in degree j/p
            auto vx = j % p == 0 || x.extent() <= 1 ? cw_V(x) : CoWittVector::zero(S, 0);
            if (vx.is_zero()) {
                M.V.push_back(std::vector<mpz_class>(N, 0));
            } else {
                require(j % p == 0 && piece_of.count(j / p), ErrorCode::WindowNotClosed,
                        "V leaves the window from degree " + std::to_string(j));
                M.V.push_back(embed(j / p, out.pieces[piece_of[j / p]].digits(vx)));
            }
        }
    }
    return out;
}

// ---------------------------------------------------------------- the Hopf algebra of Witt components

/// (Lambda_p)_j = F_p[theta_0..theta_n], |theta_i| = j p^i, with the coproduct
/// psi(theta_m) = S_m(theta' , theta'') induced by Witt addition.
struct HopfTruncation {
    Prime p{2};
    std::int64_t j = 2;
    int n = 0;
    std::int64_t max_degree = 0;
    PresentationPtr algebra;
    std::vector<IntPoly> coproduct; // in 2(n+1) variables: theta' at i, theta'' at n+1+i
};

inline HopfTruncation hopf_truncation(Prime p, std::int64_t j, std::int64_t max_degree) {
    require(j > 0, ErrorCode::InvalidArgument, "Hopf truncation needs j > 0");
    HopfTruncation H;
    H.p = p;
    H.j = j;
    H.max_degree = max_degree;
    int n = -1;
    for (std::int64_t d = j; d <= max_degree; d *= p.value()) ++n;
    require(n >= 0, ErrorCode::BoundExceeded, "window below the lowest generator degree");
    H.n = n;
    std::vector<Generator> gens;
    std::int64_t d = j;
    for (int i = 0; i <= n; ++i, d *= p.value()) gens.push_back({"theta" + std::to_string(i), d});
    H.algebra = Presentation::make(GradedField::ungraded(p), gens, {}, {}, DegreeBound{max_degree, 24});
    auto U = universal_polys(p, n);
    std::vector<int> map(static_cast<std::size_t>(2 * (U->n() + 1)), -1);
    for (int i = 0; i <= n; ++i) {
        map[static_cast<std::size_t>(i)] = i;
        map[static_cast<std::size_t>(U->n() + 1 + i)] = n + 1 + i;
    }
    for (int m = 0; m <= n; ++m) H.coproduct.push_back(U->S(m).rename(2 * (n + 1), map).reduce_mod(p.value()));
    return H;
}

namespace detail {

inline IntPoly hopf_psi(const HopfTruncation& H, const Word& w) {
    const int v = 2 * (H.n + 1);
    const mpz_class q = H.p.value();
    IntPoly acc = IntPoly::constant(v, 1);
    for (std::size_t i = 0; i < w.size(); ++i)
        if (w[i]) acc = IntPoly::mul_mod(acc, H.coproduct[i].pow_mod(w[i], q), q);
    return acc;
}

inline IntPoly word_poly(const Word& w, int nvars, int offset) {
    Exps e{};
    for (std::size_t i = 0; i < w.size(); ++i) e[static_cast<std::size_t>(offset) + i] = static_cast<std::uint16_t>(w[i]);
    return IntPoly::monomial(nvars, e, 1);
}

} // namespace detail

/// Primitives degree by degree: kernel of x -> psi(x) - x(x)1 - 1(x)x on the monomial basis.
inline std::map<std::int64_t, std::vector<AlgElement>> primitives(const HopfTruncation& H, std::int64_t upto) {
    require(upto <= H.max_degree, ErrorCode::BoundExceeded, "window beyond the truncation");
    const int v = 2 * (H.n + 1);
    const auto p = H.p.value();
    std::map<std::int64_t, std::vector<AlgElement>> out;
    for (std::int64_t e = 1; e <= upto; ++e) {
        auto words = xdegree_basis(*H.algebra, e);
        if (words.empty()) continue;
        std::map<Exps, std::size_t> cols;
        std::vector<FpVec> images;
        for (const auto& w : words) {
            IntPoly f = detail::hopf_psi(H, w) - detail::word_poly(w, v, 0) - detail::word_poly(w, v, H.n + 1);
            f = f.reduce_mod(p);
            FpVec col;
            for (const auto& [ex, c] : f.terms()) {
                auto it = cols.emplace(ex, cols.size()).first;
                col[it->second] = mod_p(c, p);
            }
            images.push_back(col);
        }
        auto ker = fp_kernel(images, p);
        if (ker.empty()) continue;
        // canonical basis of the kernel, expressed in the word basis
        FpEchelon ech(p);
        for (const auto& k : ker) ech.insert(k);
        for (const auto& row : ech.basis_rows()) {
            AlgElement::Terms t;
            for (const auto& [i, c] : row) t[Monomial{words[i], 0}] = c;
            out[e].push_back(AlgElement(H.algebra, std::move(t)));
        }
    }
    return out;
}

/// Whether x is primitive, by direct re-substitution into the coproduct.
inline bool is_primitive(const HopfTruncation& H, const AlgElement& x) {
    const int v = 2 * (H.n + 1);
    const mpz_class q = H.p.value();
    IntPoly f(v);
    for (const auto& [m, c] : x.terms()) {
        IntPoly g = detail::hopf_psi(H, m.exps) - detail::word_poly(m.exps, v, 0) - detail::word_poly(m.exps, v, H.n + 1);
        f += mpz_class(c) * g;
    }
    return f.reduce_mod(q).terms().empty();
}

/// Coassociativity, cocommutativity and the counit law of the coproduct on every theta_m.
inline std::string check_hopf_axioms(const HopfTruncation& H) {
    const int n = H.n, v3 = 3 * (n + 1), v2 = 2 * (n + 1);
    const mpz_class q = H.p.value();
    auto ops = intpoly_mod_ops(v3, q);
    // variables of the triple tensor: x at 0.., y at n+1.., z at 2(n+1)..
    auto var = [&](int block, int i) { return IntPoly::variable(v3, block * (n + 1) + i, 1); };
    std::vector<IntPoly> xy(static_cast<std::size_t>(n + 1), IntPoly(v3)), yz = xy;
    for (int m = 0; m <= n; ++m) {
        std::vector<IntPoly> a(static_cast<std::size_t>(v2), IntPoly(v3)), b = a;
        for (int i = 0; i <= n; ++i) {
            a[static_cast<std::size_t>(i)] = var(0, i);
            a[static_cast<std::size_t>(n + 1 + i)] = var(1, i);
            b[static_cast<std::size_t>(i)] = var(1, i);
            b[static_cast<std::size_t>(n + 1 + i)] = var(2, i);
        }
        xy[static_cast<std::size_t>(m)] = evaluate(H.coproduct[static_cast<std::size_t>(m)], a, ops);
        yz[static_cast<std::size_t>(m)] = evaluate(H.coproduct[static_cast<std::size_t>(m)], b, ops);
    }
    for (int m = 0; m <= n; ++m) {
        std::vector<IntPoly> left(static_cast<std::size_t>(v2), IntPoly(v3)), right = left;
        for (int i = 0; i <= n; ++i) {
            left[static_cast<std::size_t>(i)] = xy[static_cast<std::size_t>(i)];
            left[static_cast<std::size_t>(n + 1 + i)] = var(2, i);
            right[static_cast<std::size_t>(i)] = var(0, i);
            right[static_cast<std::size_t>(n + 1 + i)] = yz[static_cast<std::size_t>(i)];
        }
        if (evaluate(H.coproduct[static_cast<std::size_t>(m)], left, ops) !=
            evaluate(H.coproduct[static_cast<std::size_t>(m)], right, ops))
            return "coassociativity at theta" + std::to_string(m);
        std::vector<int> swap(static_cast<std::size_t>(v2));
        for (int i = 0; i <= n; ++i) {
            swap[static_cast<std::size_t>(i)] = n + 1 + i;
            swap[static_cast<std::size_t>(n + 1 + i)] = i;
        }
        if (H.coproduct[static_cast<std::size_t>(m)].rename(v2, swap) != H.coproduct[static_cast<std::size_t>(m)])
            return "cocommutativity at theta" + std::to_string(m);
        // setting the second factor to zero must return theta_m
        IntPoly counit(v2);
        for (const auto& [e, c] : H.coproduct[static_cast<std::size_t>(m)].terms()) {
            bool touches = false;
            for (int i = 0; i <= n; ++i) touches = touches || e[static_cast<std::size_t>(n + 1 + i)] != 0;
            if (!touches) counit += IntPoly::monomial(v2, e, c);
        }
        if (counit != IntPoly::variable(v2, m, 1)) return "counit at theta" + std::to_string(m);
    }
    return {};
}

/// The p-typical polarization pol_(j) of the truncation: spanned by the monomials in degrees
/// j p^k, which are exactly the multipliable monomials in the theta's.
inline PolarPtr polar_part_of_lambda(const HopfTruncation& H) {
    return polarization_typical(H.algebra, typical_class(H.algebra->field(), H.j), DegreeBound{H.max_degree, 24});
}

/// The retraction onto the primitives: the algebra map theta_0 -> theta_0, theta_i -> 0 (i > 0).
inline AlgElement lambda_retraction(const HopfTruncation& H, const AlgElement& x) {
    require(x.owner() == H.algebra, ErrorCode::OwnerMismatch, "element outside the Hopf truncation");
    AlgElement::Terms t;
    for (const auto& [m, c] : x.terms()) {
        bool higher = false;
        for (std::size_t i = 1; i < m.exps.size(); ++i) higher = higher || m.exps[i] != 0;
        if (!higher) t[m] = c;
    }
    return AlgElement(H.algebra, std::move(t));
}

} // namespace polarwitt

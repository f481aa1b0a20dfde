#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include <gmpxx.h>

#include "errors.hpp"
#include "gradedpoly.hpp"
#include "linalg.hpp"
#include "scalars.hpp"

namespace polarwitt {

// ---------------------------------------------------------------- typicality and h(j, d)

/// h = nullopt stands for h = infinity (ungraded base field).
struct TypicalityData {
    std::int64_t j = 0;
    std::optional<int> h;
};

/// Least h >= 1 with d | (p^h - 1) j; infinite when the field is ungraded.
inline std::optional<int> compute_h(std::int64_t j, const GradedField& k) {
    const std::int64_t p = k.p.value();
    require(j % p != 0, ErrorCode::InvalidArgument, "compute_h needs p not dividing j=" + std::to_string(j));
    if (!k.is_periodic()) return std::nullopt;
    const std::int64_t d = k.d;
    for (int h = 1; h <= d; ++h) {
        mpz_class v = (mpz_pow(k.p, static_cast<unsigned long>(h)) - 1) * j;
        if (mpz_divisible_ui_p(v.get_mpz_t(), static_cast<unsigned long>(d))) return h;
    }
    fail(ErrorCode::InvalidArgument, "no h found; p and d not coprime");
}

/// Least m >= 0 with sum n_a p^a = p^m (h infinite) or congruent to p^m mod p^h - 1.
inline std::optional<int> is_multipliable(const std::vector<std::uint64_t>& counts, Prime p, std::optional<int> h) {
    std::uint64_t total = 0;
    for (auto c : counts) total += c;
    require(total >= 1, ErrorCode::InvalidArgument, "multipliability needs at least one factor");
    mpz_class s = 0;
    for (std::size_t a = 0; a < counts.size(); ++a) s += mpz_pow(p, a) * mpz_class(static_cast<unsigned long>(counts[a]));
    if (!h) {
        mpz_class q = 1;
        for (int m = 0;; ++m) {
            if (q == s) return m;
            if (q > s) return std::nullopt;
            q *= p.value();
        }
    }
    require(*h >= 1, ErrorCode::InvalidArgument, "h must be positive");
    mpz_class M = mpz_pow(p, static_cast<unsigned long>(*h)) - 1;
    mpz_class r;
    mpz_fdiv_r(r.get_mpz_t(), s.get_mpz_t(), M.get_mpz_t());
    mpz_class q = 1;
    for (int m = 0; m < *h; ++m) {
        mpz_class qm;
        mpz_fdiv_r(qm.get_mpz_t(), q.get_mpz_t(), M.get_mpz_t());
        if (qm == r) return m;
        q *= p.value();
    }
    return std::nullopt;
}

/// Representative of the p-typical class of degree e: 0, or j with p not dividing j such that
/// e = j p^i (ungraded), or the least residue of the orbit of e mod d under multiplication by p.
inline std::int64_t typical_class(const GradedField& k, std::int64_t e) {
    const std::int64_t p = k.p.value();
    if (!k.is_periodic()) {
        if (e == 0) return 0;
        while (e % p == 0) e /= p;
        return e;
    }
    std::int64_t r = k.class_of(e);
    if (r == 0) return 0;
    std::int64_t best = r, cur = r;
    for (std::int64_t i = 0; i < k.d; ++i) {
        cur = (cur * p) % k.d;
        best = std::min(best, cur);
    }
    return best;
}

// ---------------------------------------------------------------- mu-trees

/// A formal iterated p-fold product: a leaf (basis index with degree) or p equal-degree children.
struct MuTree {
    std::optional<std::size_t> leaf;
    std::int64_t degree = 0;
    std::vector<MuTree> children;

    static MuTree make_leaf(std::size_t index, std::int64_t degree) { return MuTree{index, degree, {}}; }
    static MuTree make_node(std::vector<MuTree> kids) {
        std::int64_t d = kids.empty() ? 0 : kids.front().degree * static_cast<std::int64_t>(kids.size());
        return MuTree{std::nullopt, d, std::move(kids)};
    }
};

/// Multiset of leaves (index -> multiplicity) of a well-formed tree.
inline std::map<std::size_t, std::uint32_t> normalize_mu_tree(const MuTree& t, Prime p) {
    std::map<std::size_t, std::uint32_t> out;
    auto rec = [&](auto&& self, const MuTree& n) -> void {
        if (n.leaf) {
            require(n.children.empty(), ErrorCode::MalformedTree, "leaf with children");
            ++out[*n.leaf];
            return;
        }
        require(n.children.size() == p.value(), ErrorCode::MalformedTree,
                "node with " + std::to_string(n.children.size()) + " children, expected " + std::to_string(p.value()));
        for (const auto& c : n.children) {
            require(c.degree == n.children.front().degree, ErrorCode::MalformedTree, "children of unequal degree");
            self(self, c);
        }
        require(n.degree == n.children.front().degree * static_cast<std::int64_t>(p.value()), ErrorCode::MalformedTree,
                "node degree is not p times the child degree");
    };
    rec(rec, t);
    return out;
}

// ---------------------------------------------------------------- polar algebras

struct Typicality {
    bool all = true;
    std::int64_t j = 0;
    static Typicality everything() { return {true, 0}; }
    static Typicality typical(std::int64_t j) { return {false, j}; }
    friend bool operator==(const Typicality&, const Typicality&) = default;
};

/// Carrier in one generator-degree: a subspace of the ambient piece, stored canonically.
struct CarrierPiece {
    std::int64_t xdeg = 0;
    std::vector<Word> columns;            // ambient basis words, ascending
    std::map<Word, std::size_t> index;    // word -> column
    std::vector<AlgElement> basis;        // canonical (reduced) basis, u-free
    std::shared_ptr<FpEchelon> coord;     // built from `basis` in order
    std::size_t first_global = 0;         // index of basis[0] in the global carrier basis
};

class PolarAlgebra;
using PolarPtr = std::shared_ptr<const PolarAlgebra>;

/// A p-polar algebra given as a submodule of an ambient presented algebra, closed under the
/// p-fold product of equal-degree elements.
class PolarAlgebra {
public:
    PolarAlgebra(PresentationPtr ambient, std::vector<AlgElement> gens, Typicality typ, DegreeBound bound)
        : ambient_(std::move(ambient)), gens_(std::move(gens)), typ_(typ), bound_(bound) {
        require(bound_.max_degree <= ambient_->bound().max_degree || !ambient_->has_rules(), ErrorCode::BoundExceeded,
                "polar bound exceeds the ambient rewriting bound");
        for (const auto& g : gens_) {
            require(g.owner() == ambient_, ErrorCode::OwnerMismatch, "carrier generator from another algebra");
            require(g.is_homogeneous(), ErrorCode::Inhomogeneous, "carrier generator " + g.to_string() + " not homogeneous");
            xdegree_of(g); // validates generator-degree homogeneity
        }
        build();
    }

    static PolarPtr make(PresentationPtr ambient, std::vector<AlgElement> gens, Typicality typ = Typicality::everything(),
                         std::optional<DegreeBound> bound = std::nullopt) {
        auto b = bound ? *bound : ambient->bound();
        return std::make_shared<const PolarAlgebra>(std::move(ambient), std::move(gens), typ, b);
    }

    const PresentationPtr& ambient() const noexcept { return ambient_; }
    const GradedField& field() const noexcept { return ambient_->field(); }
    Prime prime() const noexcept { return ambient_->prime(); }
    const std::vector<AlgElement>& generators() const noexcept { return gens_; }
    const Typicality& typicality() const noexcept { return typ_; }
    const DegreeBound& bound() const noexcept { return bound_; }
    const std::map<std::int64_t, CarrierPiece>& pieces() const noexcept { return pieces_; }

    /// All carrier basis elements, generator-degree ascending.
    std::vector<AlgElement> carrier_basis() const {
        std::vector<AlgElement> out;
        for (const auto& [e, pc] : pieces_) out.insert(out.end(), pc.basis.begin(), pc.basis.end());
        return out;
    }

    std::size_t dimension() const {
        std::size_t n = 0;
        for (const auto& [e, pc] : pieces_) n += pc.basis.size();
        return n;
    }

    /// Carrier basis in degree n (periodic mode: every generator-degree in the class of n,
    /// moved to degree n by powers of u).
    std::vector<AlgElement> basis_in_degree(std::int64_t n) const {
        std::vector<AlgElement> out;
        const auto d = field().d;
        for (auto it = pieces_.rbegin(); it != pieces_.rend(); ++it) {
            const auto& [e, pc] = *it;
            if (d == 0 ? e != n : field().class_of(e) != field().class_of(n)) continue;
            for (const auto& b : pc.basis) out.push_back(d ? b.shifted_to_degree(n) : b);
        }
        return out;
    }

    /// Generator-degree of a u-free-homogeneous element (all terms share one).
    std::int64_t xdegree_of(const AlgElement& x) const {
        std::optional<std::int64_t> e;
        for (const auto& [m, c] : x.terms()) {
            auto em = ambient_->xdegree(m.exps);
            require(!e || *e == em, ErrorCode::Inhomogeneous,
                    "element " + x.to_string() + " mixes generator-degrees");
            e = em;
        }
        return e.value_or(0);
    }

    /// Coordinates of x in the global carrier basis, split by power of u; nullopt if x is not
    /// in the carrier.
    std::optional<std::map<std::pair<std::size_t, std::int64_t>, std::uint32_t>> coordinates(const AlgElement& x) const {
        require(x.owner() == ambient_, ErrorCode::OwnerMismatch, "element of another algebra");
        std::map<std::pair<std::int64_t, std::int64_t>, AlgElement::Terms> groups; // (u, xdeg) -> x-part terms
        for (const auto& [m, c] : x.terms()) groups[{m.u, ambient_->xdegree(m.exps)}][Monomial{m.exps, 0}] = c;
        std::map<std::pair<std::size_t, std::int64_t>, std::uint32_t> out;
        for (const auto& [key, terms] : groups) {
            auto it = pieces_.find(key.second);
            if (it == pieces_.end()) {
                if (key.second > bound_.max_degree)
                    fail(ErrorCode::BoundExceeded, "degree " + std::to_string(key.second) + " beyond the carrier bound");
                return std::nullopt;
            }
            const auto& pc = it->second;
            FpVec v;
            for (const auto& [m, c] : terms) {
                auto ci = pc.index.find(m.exps);
                if (ci == pc.index.end()) return std::nullopt;
                v[ci->second] = c;
            }
            auto co = pc.coord->coordinates(v);
            if (!co) return std::nullopt;
            for (const auto& [i, c] : *co) out[{pc.first_global + i, key.first}] = c;
        }
        return out;
    }

    bool contains(const AlgElement& x) const { return coordinates(x).has_value(); }

    /// The p-fold product of carrier elements of one common degree.
    AlgElement mu(const std::vector<AlgElement>& xs) const {
        require(xs.size() == prime().value(), ErrorCode::InvalidArgument, "mu takes exactly p arguments");
        std::optional<std::int64_t> deg;
        for (const auto& x : xs) {
            require(x.owner() == ambient_, ErrorCode::OwnerMismatch, "mu argument from another algebra");
            auto di = x.degree_info();
            require(!di.is_mixed(), ErrorCode::Inhomogeneous, "mu argument " + x.to_string() + " not homogeneous");
            if (di.kind == DegreeKind::Homogeneous) {
                require(!deg || *deg == di.degree, ErrorCode::DegreeMismatch,
                        "mu arguments of degrees " + std::to_string(*deg ? *deg : 0) + " and " + std::to_string(di.degree));
                deg = di.degree;
            }
            require(contains(x), ErrorCode::NotInCarrier, x.to_string() + " is not in the carrier");
        }
        AlgElement r = AlgElement::one(ambient_);
        for (const auto& x : xs) r = r * x;
        require(contains(r), ErrorCode::NotInCarrier, "product " + r.to_string() + " left the carrier");
        return r;
    }

    /// Recomputes every p-fold product of basis elements within the bound and checks it lies
    /// in the carrier; returns a failing product or empty string.
    std::string closure_violation() const {
        std::string bad;
        for_each_product([&](const std::vector<std::size_t>&, const AlgElement& prod, std::int64_t) {
            if (bad.empty() && !contains(prod)) bad = prod.to_string();
        });
        return bad;
    }

    /// Visits every p-multiset of global basis elements of one degree class with total
    /// generator-degree within the bound, passing the x-part product and its generator-degree.
    template <class Fn>
    void for_each_product(Fn&& fn) const {
        std::vector<std::pair<std::int64_t, AlgElement>> items;
        for (const auto& [e, pc] : pieces_)
            for (const auto& b : pc.basis) items.push_back({e, b});
        const auto p = prime().value();
        std::vector<std::size_t> cur;
        auto rec = [&](auto&& self, std::size_t start, std::int64_t sum) -> void {
            if (cur.size() == p) {
                AlgElement prod = AlgElement::one(ambient_);
                for (auto i : cur) prod = prod * items[i].second;
                fn(cur, prod.xpart(), sum);
                return;
            }
            for (std::size_t i = start; i < items.size(); ++i) {
                if (!cur.empty() && field().class_of(items[i].first) != field().class_of(items[cur[0]].first)) continue;
                if (sum + items[i].first > bound_.max_degree) continue;
                cur.push_back(i);
                self(self, i, sum + items[i].first);
                cur.pop_back();
            }
        };
        rec(rec, 0, 0);
    }

    /// Equality of presentations and of degreewise carrier bases.
    bool same_as(const PolarAlgebra& o) const {
        if (!ambient_->same_as(*o.ambient_) || !(typ_ == o.typ_)) return false;
        if (pieces_.size() != o.pieces_.size()) return false;
        for (auto a = pieces_.begin(), b = o.pieces_.begin(); a != pieces_.end(); ++a, ++b) {
            if (a->first != b->first || a->second.basis.size() != b->second.basis.size()) return false;
            for (std::size_t i = 0; i < a->second.basis.size(); ++i)
                if (a->second.basis[i].terms() != b->second.basis[i].terms()) return false;
        }
        return true;
    }

private:
    CarrierPiece new_piece(std::int64_t e) const {
        CarrierPiece pc;
        pc.xdeg = e;
        pc.columns = xdegree_basis(*ambient_, e);
        std::sort(pc.columns.begin(), pc.columns.end());
        for (std::size_t i = 0; i < pc.columns.size(); ++i) pc.index[pc.columns[i]] = i;
        return pc;
    }

    static FpVec vec_of(const CarrierPiece& pc, const AlgElement& x) {
        FpVec v;
        for (const auto& [m, c] : x.terms()) {
            auto it = pc.index.find(m.exps);
            require(it != pc.index.end(), ErrorCode::BoundExceeded, "monomial outside the ambient basis");
            auto& slot = v[it->second];
            slot = (slot + c) % x.p();
            if (!slot) v.erase(it->second);
        }
        return v;
    }

    void build() {
        const auto p = prime().value();
        const auto B = bound_.max_degree;
        std::map<std::int64_t, std::vector<AlgElement>> gens_by_e;
        for (const auto& g : gens_) {
            if (g.is_zero()) continue;
            auto e = xdegree_of(g);
            require(e >= 0, ErrorCode::InvalidArgument, "negative generator-degree in carrier");
            if (e <= B) gens_by_e[e].push_back(g.xpart());
        }
        // items across finished degrees for product enumeration
        std::vector<std::pair<std::int64_t, AlgElement>> done;
        std::size_t global = 0;
        for (std::int64_t e = 0; e <= B; ++e) {
            CarrierPiece pc = new_piece(e);
            if (pc.columns.empty()) continue;
            FpEchelon ech(p);
            for (const auto& g : gens_by_e[e]) ech.insert(vec_of(pc, g));
            bool again = true;
            while (again) {
                again = false;
                std::vector<std::pair<std::int64_t, AlgElement>> items = done;
                for (const auto& row : ech.basis_rows()) items.push_back({e, element_of(pc, row)});
                bool has_zero_degree = false;
                for (const auto& it : items) has_zero_degree = has_zero_degree || it.first == 0;
                std::vector<std::size_t> cur;
                auto rec = [&](auto&& self, std::size_t start, std::int64_t sum) -> void {
                    if (cur.size() == p) {
                        if (sum != e) return;
                        AlgElement prod = AlgElement::one(ambient_);
                        for (auto i : cur) prod = prod * items[i].second;
                        if (ech.insert(vec_of(pc, prod.xpart()))) again = true;
                        return;
                    }
                    for (std::size_t i = start; i < items.size(); ++i) {
                        if (!cur.empty() && field().class_of(items[i].first) != field().class_of(items[cur[0]].first)) continue;
                        if (sum + items[i].first > e) continue;
                        cur.push_back(i);
                        self(self, i, sum + items[i].first);
                        cur.pop_back();
                    }
                };
                rec(rec, 0, 0);
                if (!has_zero_degree || field().class_of(e) != field().class_of(0)) again = false;
            }
            if (ech.rank() == 0) continue;
            pc.coord = std::make_shared<FpEchelon>(p);
            for (const auto& row : ech.basis_rows()) {
                pc.basis.push_back(element_of(pc, row));
                pc.coord->insert(row);
            }
            pc.first_global = global;
            global += pc.basis.size();
            for (const auto& b : pc.basis) done.push_back({e, b});
            pieces_.emplace(e, std::move(pc));
        }
    }

    AlgElement element_of(const CarrierPiece& pc, const FpVec& row) const {
        AlgElement::Terms t;
        for (const auto& [c, v] : row) t[Monomial{pc.columns[c], 0}] = v;
        return AlgElement(ambient_, std::move(t));
    }

    PresentationPtr ambient_;
    std::vector<AlgElement> gens_;
    Typicality typ_;
    DegreeBound bound_;
    std::map<std::int64_t, CarrierPiece> pieces_;
};

/// Typicality shared by all nonzero-degree generators, if any single class covers them.
inline Typicality infer_typicality(const GradedField& k, const std::vector<std::int64_t>& degrees) {
    std::optional<std::int64_t> j;
    for (auto d : degrees) {
        auto c = typical_class(k, d);
        if (j && *j != c) return Typicality::everything();
        j = c;
    }
    return j ? Typicality::typical(*j) : Typicality::everything();
}

/// The free p-polar algebra on the given generators, inside the polynomial ring on them.
inline PolarPtr free_polar(const GradedField& k, const std::vector<Generator>& gens, DegreeBound bound = {}) {
    auto ambient = Presentation::make(k, gens, {}, {}, bound);
    std::vector<AlgElement> g;
    std::vector<std::int64_t> degs;
    for (std::size_t i = 0; i < gens.size(); ++i) {
        g.push_back(AlgElement::generator(ambient, i));
        degs.push_back(gens[i].degree);
    }
    return PolarAlgebra::make(ambient, std::move(g), infer_typicality(k, degs), bound);
}

/// pol(B): all of B (within the bound) with the p-fold product.
inline PolarPtr polarization(const PresentationPtr& B, std::optional<DegreeBound> bound = std::nullopt) {
    auto b = bound ? *bound : B->bound();
    std::vector<AlgElement> g;
    for (std::int64_t e = 0; e <= b.max_degree; ++e)
        for (const auto& w : xdegree_basis(*B, e)) g.push_back(AlgElement::monomial(B, Monomial{w, 0}));
    return PolarAlgebra::make(B, std::move(g), Typicality::everything(), b);
}

/// pol_(j)(B): the part of B in the p-typical class of j.
inline PolarPtr polarization_typical(const PresentationPtr& B, std::int64_t j, std::optional<DegreeBound> bound = std::nullopt) {
    auto b = bound ? *bound : B->bound();
    std::vector<AlgElement> g;
    for (std::int64_t e = 0; e <= b.max_degree; ++e) {
        if (typical_class(B->field(), e) != j) continue;
        for (const auto& w : xdegree_basis(*B, e)) g.push_back(AlgElement::monomial(B, Monomial{w, 0}));
    }
    return PolarAlgebra::make(B, std::move(g), Typicality::typical(j), b);
}

/// A = A_0 x prod_j A_(j): components keyed by typical class.
inline std::map<std::int64_t, PolarPtr> ptypical_split(const PolarAlgebra& A) {
    std::map<std::int64_t, std::vector<AlgElement>> parts;
    for (const auto& [e, pc] : A.pieces())
        for (const auto& b : pc.basis) parts[typical_class(A.field(), e)].push_back(b);
    std::map<std::int64_t, PolarPtr> out;
    for (auto& [j, gens] : parts)
        out[j] = PolarAlgebra::make(A.ambient(), std::move(gens), Typicality::typical(j), A.bound());
    return out;
}

// ---------------------------------------------------------------- abstract candidates and hulls

/// A graded module with a candidate p-fold product given by structure constants. Degrees are
/// integer weights; in periodic mode the product applies to equal weights mod d.
struct PolarCandidate {
    GradedField field;
    std::vector<std::string> names;
    std::vector<std::int64_t> weights;
    std::map<std::vector<std::size_t>, FpVec> mu; // sorted p-multiset -> combination of basis
    DegreeBound bound;

    std::uint32_t p() const { return field.p.value(); }
    std::int64_t cls(std::size_t i) const { return field.class_of(weights[i]); }

    std::int64_t weight_of(const std::vector<std::size_t>& key) const {
        std::int64_t w = 0;
        for (auto i : key) w += weights[i];
        return w;
    }

    void validate() const {
        require(names.size() == weights.size(), ErrorCode::InvalidArgument, "candidate names and weights differ in length");
        for (const auto& [key, val] : mu) {
            require(key.size() == p(), ErrorCode::InvalidArgument, "structure constant key must have p entries");
            require(std::is_sorted(key.begin(), key.end()), ErrorCode::InvalidArgument, "structure constant key not sorted");
            for (auto i : key)
                require(i < weights.size() && cls(i) == cls(key[0]), ErrorCode::DegreeMismatch,
                        "structure constant on unequal degrees");
            for (const auto& [b, c] : val)
                require(b < weights.size() && weights[b] == weight_of(key), ErrorCode::Inhomogeneous,
                        "structure constant of the wrong degree");
        }
    }

    /// Multilinear extension of mu to combinations.
    FpVec apply(const std::vector<FpVec>& args) const {
        FpVec out;
        std::vector<std::size_t> key(args.size());
        auto rec = [&](auto&& self, std::size_t i, std::uint32_t coef) -> void {
            if (i == args.size()) {
                std::vector<std::size_t> k = key;
                std::sort(k.begin(), k.end());
                for (auto b : k)
                    if (cls(b) != cls(k[0])) fail(ErrorCode::DegreeMismatch, "mu applied to unequal degrees");
                if (weight_of(k) > bound.max_degree) fail(ErrorCode::BoundExceeded, "product beyond the bound");
                auto it = mu.find(k);
                if (it != mu.end()) fp_axpy(out, coef, it->second, p());
                return;
            }
            for (const auto& [b, c] : args[i]) {
                key[i] = b;
                self(self, i + 1, mul_mod(coef, c, p()));
            }
        };
        rec(rec, 0, 1);
        return out;
    }
};

/// The candidate underlying a polar algebra: its carrier basis and products within the bound.
inline PolarCandidate candidate_of(const PolarAlgebra& A) {
    PolarCandidate c;
    c.field = A.field();
    c.bound = A.bound();
    for (const auto& [e, pc] : A.pieces())
        for (const auto& b : pc.basis) {
            c.names.push_back("[" + b.to_string() + "]");
            c.weights.push_back(e);
        }
    A.for_each_product([&](const std::vector<std::size_t>& key, const AlgElement& prod, std::int64_t) {
        auto co = A.coordinates(prod);
        require(co.has_value(), ErrorCode::NotInCarrier, "carrier not closed: " + prod.to_string());
        FpVec v;
        for (const auto& [k, val] : *co) v[k.first] = val;
        if (!v.empty()) c.mu[key] = v;
    });
    return c;
}

/// Sym(A)/(x_1...x_p - mu(x_1..x_p)): generator i is the i-th basis element of the candidate.
inline PresentationPtr hull_presentation(const PolarCandidate& c) {
    c.validate();
    std::vector<Generator> gens;
    for (std::size_t i = 0; i < c.names.size(); ++i) gens.push_back({"e" + std::to_string(i + 1), c.weights[i]});
    std::vector<HullRule> rules;
    std::vector<std::uint32_t> cur;
    const auto p = c.p();
    auto rec = [&](auto&& self, std::size_t start, std::int64_t sum) -> void {
        if (cur.size() == p) {
            std::vector<std::size_t> key(cur.begin(), cur.end());
            auto it = c.mu.find(key);
            rules.push_back({cur, it == c.mu.end() ? FpVec{} : it->second});
            return;
        }
        for (std::size_t i = start; i < c.weights.size(); ++i) {
            if (!cur.empty() && c.cls(i) != c.cls(cur[0])) continue;
            if (sum + c.weights[i] > c.bound.max_degree) continue;
            cur.push_back(static_cast<std::uint32_t>(i));
            self(self, i, sum + c.weights[i]);
            cur.pop_back();
        }
    };
    rec(rec, 0, 0);
    GradedField f = c.field;
    f.strict_even = false; // weights are bookkeeping here, not admissibility data
    return Presentation::make(f, std::move(gens), {}, std::move(rules), c.bound);
}

struct PolarCheck {
    bool polar = true;
    std::string certificate;
};

/// Injectivity of the unit A -> pol(hull(A)) in every weight within the bound.
inline PolarCheck is_polar(const PolarCandidate& c) {
    auto H = hull_presentation(c);
    std::map<std::int64_t, std::vector<std::size_t>> by_weight;
    for (std::size_t i = 0; i < c.weights.size(); ++i) by_weight[c.weights[i]].push_back(i);
    for (const auto& [w, idx] : by_weight) {
        const auto& rd = H->rule_degree(w);
        std::vector<FpVec> images;
        for (auto i : idx) {
            Word word(c.weights.size(), 0);
            word[i] = 1;
            images.push_back(rd.normal_form(FpVec{{rd.index(word), 1}}));
        }
        auto ker = fp_kernel(images, c.p());
        if (!ker.empty()) {
            std::string wit;
            for (const auto& [k, v] : ker.front()) {
                if (!wit.empty()) wit += " + ";
                wit += (v == 1 ? "" : std::to_string(v) + "*") + c.names[idx[k]];
            }
            return {false, "unit kills " + wit + " in degree " + std::to_string(w)};
        }
    }
    return {true, "unit injective through degree " + std::to_string(c.bound.max_degree)};
}

struct AxiomCheck {
    bool ok = true;
    std::string witness;
};

/// The ungraded axiom: mu(mu(x_1..x_p), y_2..y_p) is invariant under all permutations of the
/// 2p-1 arguments, checked on basis tuples.
inline AxiomCheck check_assoc_ungraded(const PolarCandidate& c) {
    for (auto w : c.weights)
        require(w == 0, ErrorCode::DegreeMismatch, "ungraded associativity needs a candidate concentrated in degree 0");
    const auto p = c.p();
    const std::size_t n = c.weights.size(), total = 2 * p - 1;
    std::vector<std::size_t> ms;
    AxiomCheck res;
    auto value = [&](const std::vector<std::size_t>& inner, const std::vector<std::size_t>& outer) {
        std::vector<FpVec> a;
        for (auto i : inner) a.push_back(FpVec{{i, 1}});
        std::vector<FpVec> b{c.apply(a)};
        for (auto i : outer) b.push_back(FpVec{{i, 1}});
        return c.apply(b);
    };
    auto rec = [&](auto&& self, std::size_t start) -> void {
        if (!res.ok) return;
        if (ms.size() == total) {
            std::optional<FpVec> ref;
            // every choice of p positions forms the inner product
            std::vector<bool> pick(total, false);
            std::fill(pick.begin(), pick.begin() + p, true);
            std::sort(pick.begin(), pick.end());
            do {
                std::vector<std::size_t> inner, outer;
                for (std::size_t i = 0; i < total; ++i) (pick[i] ? inner : outer).push_back(ms[i]);
                auto v = value(inner, outer);
                if (!ref) ref = v;
                else if (*ref != v) {
                    res.ok = false;
                    std::string w;
                    for (auto i : ms) w += (w.empty() ? "" : ",") + c.names[i];
                    res.witness = "tuple (" + w + ")";
                    return;
                }
            } while (std::next_permutation(pick.begin(), pick.end()));
            return;
        }
        for (std::size_t i = start; i < n; ++i) {
            ms.push_back(i);
            self(self, i);
            ms.pop_back();
        }
    };
    rec(rec, 0);
    return res;
}

/// The graded axiom: mu(mu(x_1..x_p), mu(x_{p+1}..x_{2p}), y_3..y_p) is invariant under
/// permutations of the 2p x's (x's of one degree j, y's of degree pj).
inline AxiomCheck check_assoc_graded(const PolarCandidate& c) {
    const auto p = c.p();
    const std::size_t n = c.weights.size();
    AxiomCheck res;
    std::set<std::int64_t> classes;
    for (std::size_t i = 0; i < n; ++i) classes.insert(c.cls(i));
    for (auto cl : classes) {
        std::vector<std::size_t> X, Y;
        for (std::size_t i = 0; i < n; ++i) {
            if (c.cls(i) == cl) X.push_back(i);
            if (c.cls(i) == c.field.class_of(cl * static_cast<std::int64_t>(p))) Y.push_back(i);
        }
        std::vector<std::size_t> xs, ys;
        auto eval = [&](const std::vector<std::size_t>& g1, const std::vector<std::size_t>& g2) {
            std::vector<FpVec> a1, a2;
            for (auto i : g1) a1.push_back(FpVec{{i, 1}});
            for (auto i : g2) a2.push_back(FpVec{{i, 1}});
            std::vector<FpVec> outer{c.apply(a1), c.apply(a2)};
            for (auto i : ys) outer.push_back(FpVec{{i, 1}});
            return c.apply(outer);
        };
        auto check_xs = [&]() {
            std::int64_t w = 0;
            for (auto i : xs) w += c.weights[i];
            for (auto i : ys) w += c.weights[i];
            if (w > c.bound.max_degree) return;
            std::optional<FpVec> ref;
            const std::size_t m = 2 * p;
            std::vector<bool> pick(m, false);
            // position 0 always in the first group; choose p-1 more from the remaining 2p-1
            std::vector<bool> rest(m - 1, false);
            std::fill(rest.begin(), rest.begin() + (p - 1), true);
            std::sort(rest.begin(), rest.end());
            do {
                std::vector<std::size_t> g1{xs[0]}, g2;
                for (std::size_t i = 1; i < m; ++i) (rest[i - 1] ? g1 : g2).push_back(xs[i]);
                std::sort(g1.begin(), g1.end());
                std::sort(g2.begin(), g2.end());
                auto v = eval(g1, g2);
                if (!ref) ref = v;
                else if (*ref != v && res.ok) {
                    res.ok = false;
                    std::string wx;
                    for (auto i : xs) wx += (wx.empty() ? "" : ",") + c.names[i];
                    for (auto i : ys) wx += ";" + c.names[i];
                    res.witness = "arguments (" + wx + ")";
                    return;
                }
            } while (std::next_permutation(rest.begin(), rest.end()));
        };
        auto rec_y = [&](auto&& self, std::size_t start) -> void {
            if (!res.ok) return;
            if (ys.size() == p - 2) {
                check_xs();
                return;
            }
            for (std::size_t i = start; i < Y.size(); ++i) {
                ys.push_back(Y[i]);
                self(self, i);
                ys.pop_back();
            }
        };
        auto rec_x = [&](auto&& self, std::size_t start, std::int64_t w) -> void {
            if (!res.ok) return;
            if (xs.size() == 2 * p) {
                rec_y(rec_y, 0);
                return;
            }
            for (std::size_t i = start; i < X.size(); ++i) {
                if (w + c.weights[X[i]] > c.bound.max_degree) continue;
                xs.push_back(X[i]);
                self(self, i, w + c.weights[X[i]]);
                xs.pop_back();
            }
        };
        rec_x(rec_x, 0, 0);
        if (!res.ok) return res;
    }
    return res;
}

/// hull(A) together with the unit map A -> hull(A) and its partial inverse on the image.
class Hull {
public:
    Hull(PolarPtr A) : A_(std::move(A)), candidate_(candidate_of(*A_)) { algebra_ = hull_presentation(candidate_); }

    const PresentationPtr& algebra() const noexcept { return algebra_; }
    const PolarCandidate& candidate() const noexcept { return candidate_; }
    const PolarPtr& source() const noexcept { return A_; }

    AlgElement unit(const AlgElement& a) const {
        auto co = A_->coordinates(a);
        require(co.has_value(), ErrorCode::NotInCarrier, a.to_string() + " is not in the carrier");
        AlgElement::Terms t;
        for (const auto& [key, c] : *co) {
            Word w(candidate_.weights.size(), 0);
            w[key.first] = 1;
            t[Monomial{w, key.second}] = c;
        }
        return AlgElement(algebra_, std::move(t));
    }

    /// Inverse of the unit on its image; throws NotInCarrier for elements outside it.
    AlgElement restrict_to_carrier(const AlgElement& h) const {
        require(h.owner() == algebra_, ErrorCode::OwnerMismatch, "element of another algebra");
        const auto basis = A_->carrier_basis();
        AlgElement out = AlgElement::zero(A_->ambient());
        for (const auto& [m, c] : h.terms()) {
            std::optional<std::size_t> g;
            std::uint32_t len = 0;
            for (std::size_t i = 0; i < m.exps.size(); ++i) {
                len += m.exps[i];
                if (m.exps[i]) g = i;
            }
            require(len == 1, ErrorCode::NotInCarrier, "hull element " + h.to_string() + " is outside the unit image");
            AlgElement b = basis[*g];
            if (m.u) b = b * AlgElement::u_power(A_->ambient(), m.u);
            out = out + b.scaled(c);
        }
        return out;
    }

private:
    PolarPtr A_;
    PolarCandidate candidate_;
    PresentationPtr algebra_;
};

inline Hull hull(const PolarPtr& A) { return Hull(A); }

// ---------------------------------------------------------------- regrading

inline std::int64_t ipow(std::int64_t b, int e) {
    std::int64_t r = 1;
    for (int i = 0; i < e; ++i) r *= b;
    return r;
}

/// phi(A) for a typical polar algebra over Periodic(d), with the data to undo it.
struct Regrading {
    PolarPtr image;
    GradedField source_field;
    std::vector<std::int64_t> source_degrees;
    Typicality source_typicality;
    int h = 1;
    bool identity = false;
};

/// Relabels the degree j p^i (mod d) to p^i over Periodic(p^h - 1). Supported when every ambient
/// generator lies in the p-typical class of j and the relabelled carrier stays typical.
inline Regrading regrade(const PolarPtr& A) {
    const auto& k = A->field();
    require(!A->typicality().all, ErrorCode::TypicalityMissing, "regrading needs a typical polar algebra");
    require(k.is_periodic(), ErrorCode::TypicalityMissing, "regrading needs a periodic base field");
    const std::int64_t j = A->typicality().j;
    const std::int64_t p = k.p.value();
    require(j % k.d != 0, ErrorCode::RegradeUnsupported, "the class of degree 0 mod d is handled by the ungraded route");
    auto h = compute_h(j, k);
    Regrading r;
    r.source_field = k;
    r.source_typicality = A->typicality();
    r.h = *h;
    const std::int64_t D = ipow(p, *h) - 1;
    for (const auto& g : A->ambient()->generators()) r.source_degrees.push_back(g.degree);
    if (j == 1 && k.d == D) {
        r.image = A;
        r.identity = true;
        return r;
    }
    auto target_field = GradedField::periodic(k.p, D, k.strict_even);
    std::vector<Generator> gens = A->ambient()->generators();
    for (auto& g : gens) {
        std::optional<int> level;
        std::int64_t jp = j;
        for (int i = 0; i < *h; ++i) {
            if (k.class_of(g.degree) == k.class_of(jp)) {
                level = i;
                break;
            }
            jp *= p;
        }
        require(level.has_value(), ErrorCode::RegradeUnsupported,
                "generator " + g.name + " of degree " + std::to_string(g.degree) + " is outside the typical class of j");
        g.degree = ipow(p, *level);
    }
    auto amb = Presentation::make(target_field, gens, A->ambient()->monomial_relations(), {}, A->ambient()->bound());
    std::vector<AlgElement> cgens;
    for (const auto& b : A->carrier_basis()) {
        AlgElement::Terms t;
        for (const auto& [m, c] : b.terms()) t[Monomial{m.exps, 0}] = c;
        AlgElement nb(amb, std::move(t));
        auto di = nb.degree_info();
        require(!di.is_mixed(), ErrorCode::RegradeUnsupported, "relabelled carrier element is not homogeneous");
        if (di.kind == DegreeKind::Homogeneous) {
            auto tc = typical_class(target_field, di.degree);
            require(tc == 1, ErrorCode::RegradeUnsupported,
                    "relabelled carrier element " + nb.to_string() + " is not in the typical class of 1");
        }
        cgens.push_back(nb);
    }
    r.image = PolarAlgebra::make(amb, std::move(cgens), Typicality::typical(1), A->bound());
    return r;
}

/// phi^{-1}: restores the source degrees and field.
inline PolarPtr regrade_inverse(const Regrading& r) {
    if (r.identity) return r.image;
    std::vector<Generator> gens = r.image->ambient()->generators();
    for (std::size_t i = 0; i < gens.size(); ++i) gens[i].degree = r.source_degrees[i];
    auto amb = Presentation::make(r.source_field, gens, r.image->ambient()->monomial_relations(), {},
                                  r.image->ambient()->bound());
    std::vector<AlgElement> cgens;
    for (const auto& b : r.image->carrier_basis()) {
        AlgElement::Terms t;
        for (const auto& [m, c] : b.terms()) t[Monomial{m.exps, 0}] = c;
        cgens.push_back(AlgElement(amb, std::move(t)));
    }
    return PolarAlgebra::make(amb, std::move(cgens), r.source_typicality, r.image->bound());
}

struct RetractReport {
    bool ok = true;
    std::vector<std::string> lines;
};

/// Checks that A -> phi^{-1}(hull(phi A)_(1)) is an isomorphism in every degree within the bound.
inline RetractReport retract_check(const PolarPtr& A) {
    RetractReport rep;
    auto r = regrade(A);
    Hull H(r.image);
    const auto& B = *r.image;
    const auto& kf = B.field();
    for (std::int64_t e = 0; e <= B.bound().max_degree; ++e) {
        if (typical_class(kf, e) != 1) continue;
        auto hull_dim = xdegree_basis(*H.algebra(), e).size();
        auto it = B.pieces().find(e);
        std::size_t carrier_dim = it == B.pieces().end() ? 0 : it->second.basis.size();
        // unit images must be independent and span the hull piece
        FpEchelon ech(kf.p.value());
        const auto& rd = H.algebra()->rule_degree(e);
        if (it != B.pieces().end())
            for (const auto& b : it->second.basis) ech.insert(rd.normal_form(FpVec{{rd.index(H.unit(b).terms().begin()->first.exps), 1}}));
        bool good = carrier_dim == hull_dim && ech.rank() == carrier_dim;
        rep.ok = rep.ok && good;
        rep.lines.push_back("degree " + std::to_string(e) + ": carrier " + std::to_string(carrier_dim) + ", hull " +
                            std::to_string(hull_dim) + (good ? " ok" : " MISMATCH"));
    }
    return rep;
}

} // namespace polarwitt

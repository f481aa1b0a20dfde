#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <numeric>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include <gmpxx.h>

#include "errors.hpp"
#include "intpoly.hpp"
#include "linalg.hpp"
#include "scalars.hpp"

namespace polarwitt {

/// The base field: F_p, or F_p[u, u^-1] with |u| = d when d > 0.
struct GradedField {
    Prime p{2};
    std::int64_t d = 0;
    bool strict_even = true;

    static GradedField ungraded(Prime p, bool strict_even = true) { return GradedField{p, 0, strict_even}; }

    static GradedField periodic(Prime p, std::int64_t d, bool strict_even = true) {
        require(d > 0, ErrorCode::InvalidArgument, "periodic degree d must be positive");
        require(d % static_cast<std::int64_t>(p.value()) != 0, ErrorCode::InvalidArgument,
                "p divides d=" + std::to_string(d) + ": the graded field is not perfect");
        require(!(p.value() > 2 && strict_even && d % 2 != 0), ErrorCode::InadmissibleDegree,
                "odd |u|=" + std::to_string(d) + " with p>2 under the strict-even rule");
        return GradedField{p, d, strict_even};
    }

    bool is_periodic() const noexcept { return d != 0; }

    /// Degree class used for equal-degree tests: the degree itself, or its residue mod d.
    std::int64_t class_of(std::int64_t e) const noexcept { return d ? ((e % d) + d) % d : e; }

    std::string describe() const {
        std::string s = "p=" + std::to_string(p.value());
        s += d ? " mode=periodic d=" + std::to_string(d) : std::string(" mode=ungraded");
        return s;
    }

    friend bool operator==(const GradedField& a, const GradedField& b) {
        return a.p == b.p && a.d == b.d && a.strict_even == b.strict_even;
    }
};

/// Caps enumeration: largest generator-degree total, and the largest total exponent of
/// degree-0 generators (which would otherwise make a degree piece infinite).
struct DegreeBound {
    std::int64_t max_degree = 32;
    int max_word_length = 24;
    friend bool operator==(const DegreeBound&, const DegreeBound&) = default;
};

struct Generator {
    std::string name;
    std::int64_t degree = 0;
    friend bool operator==(const Generator&, const Generator&) = default;
};

/// Exponents of the generators together with the power of u (always 0 when ungraded).
struct Monomial {
    std::vector<std::uint32_t> exps;
    std::int64_t u = 0;
    friend bool operator==(const Monomial&, const Monomial&) = default;
    friend bool operator<(const Monomial& a, const Monomial& b) {
        if (a.u != b.u) return a.u < b.u;
        return a.exps < b.exps;
    }
};

/// Rewrite rule of a hull presentation: product of p generators of one degree class -> linear
/// combination of generators.
struct HullRule {
    std::vector<std::uint32_t> lhs; // sorted generator indices, size p
    FpVec rhs;                      // generator index -> coefficient
};

using Word = std::vector<std::uint32_t>; // exponent vector over generators

class Presentation;
using PresentationPtr = std::shared_ptr<const Presentation>;

/// Finitely presented graded commutative algebra: monomial relations and hull rules only.
class Presentation {
public:
    Presentation(GradedField field, std::vector<Generator> gens, std::vector<Word> monomial_relations = {},
                 std::vector<HullRule> rules = {}, DegreeBound bound = {})
        : field_(field), gens_(std::move(gens)), mono_rels_(std::move(monomial_relations)), rules_(std::move(rules)),
          bound_(bound) {
        validate();
        for (const auto& r : rules_) rule_index_[r.lhs] = &r - rules_.data();
    }

    static PresentationPtr make(GradedField field, std::vector<Generator> gens, std::vector<Word> monomial_relations = {},
                                std::vector<HullRule> rules = {}, DegreeBound bound = {}) {
        return std::make_shared<const Presentation>(field, std::move(gens), std::move(monomial_relations),
                                                    std::move(rules), bound);
    }

    const GradedField& field() const noexcept { return field_; }
    Prime prime() const noexcept { return field_.p; }
    std::uint32_t p() const noexcept { return field_.p.value(); }
    const std::vector<Generator>& generators() const noexcept { return gens_; }
    std::size_t ngens() const noexcept { return gens_.size(); }
    const std::vector<Word>& monomial_relations() const noexcept { return mono_rels_; }
    const std::vector<HullRule>& rules() const noexcept { return rules_; }
    bool has_rules() const noexcept { return !rules_.empty(); }
    const DegreeBound& bound() const noexcept { return bound_; }

    std::optional<std::size_t> generator_index(const std::string& name) const {
        for (std::size_t i = 0; i < gens_.size(); ++i)
            if (gens_[i].name == name) return i;
        return std::nullopt;
    }

    std::int64_t xdegree(const Word& w) const {
        std::int64_t s = 0;
        for (std::size_t i = 0; i < w.size(); ++i) s += static_cast<std::int64_t>(w[i]) * gens_[i].degree;
        return s;
    }
    std::int64_t degree(const Monomial& m) const { return xdegree(m.exps) + field_.d * m.u; }

    bool killed(const Word& w) const {
        for (const auto& r : mono_rels_) {
            bool divides = true;
            for (std::size_t i = 0; i < r.size() && divides; ++i) divides = r[i] <= w[i];
            if (divides) return true;
        }
        return false;
    }

    /// Structural equality (generators, relations, rules, field).
    bool same_as(const Presentation& o) const {
        if (!(field_ == o.field_ && gens_ == o.gens_ && mono_rels_ == o.mono_rels_)) return false;
        if (rules_.size() != o.rules_.size()) return false;
        for (std::size_t i = 0; i < rules_.size(); ++i)
            if (rules_[i].lhs != o.rules_[i].lhs || rules_[i].rhs != o.rules_[i].rhs) return false;
        return true;
    }

    /// All words of generator-degree e within the word-length cap, shorter words first.
    std::vector<Word> words_of_xdegree(std::int64_t e) const {
        require(e <= bound_.max_degree, ErrorCode::BoundExceeded,
                "degree " + std::to_string(e) + " beyond bound " + std::to_string(bound_.max_degree));
        std::vector<Word> out;
        if (e < 0) {
            for (const auto& g : gens_)
                require(g.degree >= 0, ErrorCode::InvalidArgument, "enumeration needs nonnegative generator degrees");
            return out;
        }
        for (const auto& g : gens_)
            require(g.degree >= 0, ErrorCode::InvalidArgument, "enumeration needs nonnegative generator degrees");
        Word w(gens_.size(), 0);
        const int cap = bound_.max_word_length;
        constexpr std::size_t kMaxWords = 400000;
        auto rec = [&](auto&& self, std::size_t i, std::int64_t rest, int len) -> void {
            if (i == gens_.size()) {
                if (rest == 0) {
                    out.push_back(w);
                    require(out.size() <= kMaxWords, ErrorCode::ResourceLimit,
                            "more than " + std::to_string(kMaxWords) + " words in one degree");
                }
                return;
            }
            std::int64_t dg = gens_[i].degree;
            for (std::uint32_t k = 0;; ++k) {
                // only degree-0 generators can repeat without raising the degree, so only they are capped
                if (dg == 0 && len + static_cast<int>(k) > cap) break;
                if (dg > 0 && static_cast<std::int64_t>(k) * dg > rest) break;
                w[i] = k;
                self(self, i + 1, rest - static_cast<std::int64_t>(k) * dg, len + (dg == 0 ? static_cast<int>(k) : 0));
                if (dg == 0 && cap <= 0) break;
            }
            w[i] = 0;
        };
        rec(rec, 0, e, 0);
        std::stable_sort(out.begin(), out.end(), [](const Word& a, const Word& b) {
            auto la = std::accumulate(a.begin(), a.end(), 0u), lb = std::accumulate(b.begin(), b.end(), 0u);
            if (la != lb) return la < lb;
            return a > b;
        });
        return out;
    }

    /// Per-degree rewriting data for presentations with hull rules.
    class RuleDegree {
    public:
        RuleDegree(const Presentation& P, std::int64_t e) : P_(P), ech_(P.p()) {
            words_ = P.words_of_xdegree(e);
            for (std::size_t i = 0; i < words_.size(); ++i) index_[words_[i]] = i;
            nf0_.resize(words_.size());
            for (std::size_t i = 0; i < words_.size(); ++i) {
                FpVec base = nf0(i);
                for (const auto& choice : choices(words_[i])) {
                    FpVec diff = nf0_of(rewrite(words_[i], choice));
                    fp_axpy(diff, P.p() - 1, base, P.p());
                    if (!diff.empty()) ech_.insert(diff);
                }
            }
        }

        const std::vector<Word>& words() const noexcept { return words_; }

        std::size_t index(const Word& w) const {
            auto it = index_.find(w);
            require(it != index_.end(), ErrorCode::BoundExceeded, "word outside the enumeration cap");
            return it->second;
        }

        FpVec normal_form(const FpVec& v) const {
            FpVec out;
            for (const auto& [i, c] : v) fp_axpy(out, c, nf0_[i].value(), P_.p());
            return ech_.reduce(out);
        }

        /// Indices of words forming a basis of the quotient in this degree.
        std::vector<std::size_t> standard_words() const {
            std::set<std::size_t> used;
            for (std::size_t i = 0; i < words_.size(); ++i)
                for (const auto& [j, c] : nf0_[i].value()) used.insert(j);
            auto piv = ech_.pivots();
            std::vector<std::size_t> out;
            for (auto j : used)
                if (!std::binary_search(piv.begin(), piv.end(), j)) out.push_back(j);
            return out;
        }

    private:
        // all p-submultisets of w lying in one degree class and carrying a rule
        std::vector<std::vector<std::uint32_t>> choices(const Word& w) const {
            std::vector<std::vector<std::uint32_t>> out;
            const auto p = P_.p();
            std::vector<std::uint32_t> cur;
            auto rec = [&](auto&& self, std::size_t i) -> void {
                if (cur.size() == p) {
                    if (P_.rule_index_.count(cur)) out.push_back(cur);
                    return;
                }
                if (i == w.size()) return;
                std::uint32_t avail = w[i];
                for (std::uint32_t k = 0; k <= avail && cur.size() + k <= p; ++k) {
                    for (std::uint32_t t = 0; t < k; ++t) cur.push_back(static_cast<std::uint32_t>(i));
                    self(self, i + 1);
                    for (std::uint32_t t = 0; t < k; ++t) cur.pop_back();
                }
            };
            rec(rec, 0);
            return out;
        }

        // w with the factors `lhs` replaced by the rule's right-hand side, as a word vector
        std::vector<std::pair<Word, std::uint32_t>> rewrite(const Word& w, const std::vector<std::uint32_t>& lhs) const {
            Word rest = w;
            for (auto g : lhs) --rest[g];
            const auto& rule = P_.rules_[P_.rule_index_.at(lhs)];
            std::vector<std::pair<Word, std::uint32_t>> out;
            for (const auto& [g, c] : rule.rhs) {
                Word t = rest;
                ++t[g];
                out.push_back({t, c});
            }
            return out;
        }

        FpVec nf0_of(const std::vector<std::pair<Word, std::uint32_t>>& comb) {
            FpVec out;
            for (const auto& [t, c] : comb) fp_axpy(out, c, nf0(index(t)), P_.p());
            return out;
        }

        // canonical rewriting: first applicable rule until irreducible; killed words vanish
        const FpVec& nf0(std::size_t i) {
            if (nf0_[i]) return *nf0_[i];
            const Word& w = words_[i];
            if (P_.killed(w)) {
                nf0_[i] = FpVec{};
                return *nf0_[i];
            }
            auto ch = choices(w);
            if (ch.empty()) {
                nf0_[i] = FpVec{{i, 1}};
                return *nf0_[i];
            }
            FpVec r = nf0_of(rewrite(w, ch.front()));
            nf0_[i] = std::move(r);
            return *nf0_[i];
        }

        const Presentation& P_;
        std::vector<Word> words_;
        std::map<Word, std::size_t> index_;
        std::vector<std::optional<FpVec>> nf0_;
        FpEchelon ech_;
    };

    const RuleDegree& rule_degree(std::int64_t e) const {
        std::lock_guard<std::mutex> lock(cache_mu_);
        auto it = rule_cache_.find(e);
        if (it != rule_cache_.end()) return *it->second;
        auto data = std::make_shared<RuleDegree>(*this, e);
        rule_cache_[e] = data;
        return *data;
    }

private:
    void validate() const {
        std::set<std::string> names;
        for (const auto& g : gens_) {
            require(!g.name.empty(), ErrorCode::InvalidArgument, "empty generator name");
            require(!field_.is_periodic() || g.name != "u", ErrorCode::InvalidArgument, "generator name 'u' is reserved for the periodic unit");
            require(names.insert(g.name).second, ErrorCode::InvalidArgument, "duplicate generator " + g.name);
            require(!(field_.p.value() > 2 && field_.strict_even && g.degree % 2 != 0), ErrorCode::InadmissibleDegree,
                    "generator " + g.name + " has odd degree " + std::to_string(g.degree) + " with p>2");
        }
        for (const auto& r : mono_rels_)
            require(r.size() == gens_.size(), ErrorCode::InvalidArgument, "monomial relation of wrong arity");
        for (const auto& r : rules_) {
            require(r.lhs.size() == field_.p.value(), ErrorCode::InvalidArgument, "hull rule must have p factors");
            std::int64_t w = 0;
            for (auto g : r.lhs) {
                require(g < gens_.size(), ErrorCode::InvalidArgument, "hull rule generator out of range");
                require(field_.class_of(gens_[g].degree) == field_.class_of(gens_[r.lhs[0]].degree),
                        ErrorCode::DegreeMismatch, "hull rule factors of different degree classes");
                w += gens_[g].degree;
            }
            for (const auto& [g, c] : r.rhs)
                require(g < gens_.size() && gens_[g].degree == w, ErrorCode::Inhomogeneous, "hull rule not homogeneous");
        }
    }

    GradedField field_;
    std::vector<Generator> gens_;
    std::vector<Word> mono_rels_;
    std::vector<HullRule> rules_;
    std::map<std::vector<std::uint32_t>, std::size_t> rule_index_;
    DegreeBound bound_;
    mutable std::mutex cache_mu_;
    mutable std::map<std::int64_t, std::shared_ptr<RuleDegree>> rule_cache_;
};

enum class DegreeKind { Zero, Homogeneous, Mixed };

struct DegreeInfo {
    DegreeKind kind = DegreeKind::Zero;
    std::int64_t degree = 0;
    bool is_mixed() const noexcept { return kind == DegreeKind::Mixed; }
    friend bool operator==(const DegreeInfo&, const DegreeInfo&) = default;
};

/// Element of a presented algebra in normal form.
class AlgElement {
public:
    using Terms = std::map<Monomial, std::uint32_t>;

    AlgElement() = default;
    explicit AlgElement(PresentationPtr owner) : owner_(std::move(owner)) {}
    AlgElement(PresentationPtr owner, Terms terms) : owner_(std::move(owner)), terms_(std::move(terms)) { normalize(); }

    static AlgElement zero(const PresentationPtr& A) { return AlgElement(A); }
    static AlgElement constant(const PresentationPtr& A, std::int64_t c) {
        Terms t;
        auto v = mod_p(c, A->p());
        if (v) t[Monomial{Word(A->ngens(), 0), 0}] = v;
        return AlgElement(A, std::move(t));
    }
    static AlgElement one(const PresentationPtr& A) { return constant(A, 1); }
    static AlgElement generator(const PresentationPtr& A, std::size_t i, std::uint32_t power = 1) {
        Word w(A->ngens(), 0);
        w.at(i) = power;
        return AlgElement(A, Terms{{Monomial{w, 0}, 1}});
    }
    static AlgElement monomial(const PresentationPtr& A, const Monomial& m, std::uint32_t c = 1) {
        Terms t;
        if (c % A->p()) t[m] = c % A->p();
        return AlgElement(A, std::move(t));
    }
    /// u^k; requires periodic mode unless k == 0.
    static AlgElement u_power(const PresentationPtr& A, std::int64_t k) {
        require(k == 0 || A->field().is_periodic(), ErrorCode::InvalidArgument, "u is only available in periodic mode");
        return monomial(A, Monomial{Word(A->ngens(), 0), k});
    }

    const PresentationPtr& owner() const noexcept { return owner_; }
    const Terms& terms() const noexcept { return terms_; }
    bool is_zero() const noexcept { return terms_.empty(); }
    std::uint32_t p() const { return owner_->p(); }

    friend bool operator==(const AlgElement& a, const AlgElement& b) {
        return a.owner_ == b.owner_ && a.terms_ == b.terms_;
    }

    friend AlgElement operator+(const AlgElement& a, const AlgElement& b) { return a.axpy(1, b); }
    friend AlgElement operator-(const AlgElement& a, const AlgElement& b) { return a.axpy(a.p() - 1, b); }
    AlgElement operator-() const { return AlgElement(owner_).axpy(p() - 1, *this); }

    AlgElement scaled(std::int64_t c) const {
        auto v = mod_p(c, p());
        Terms t;
        if (v)
            for (const auto& [m, x] : terms_) t[m] = mul_mod(x, v, p());
        AlgElement r(owner_);
        r.terms_ = std::move(t); // scaling preserves normal form
        return r;
    }

    friend AlgElement operator*(const AlgElement& a, const AlgElement& b) {
        check_owner(a, b);
        Terms t;
        const auto p = a.p();
        for (const auto& [ma, ca] : a.terms_) {
            for (const auto& [mb, cb] : b.terms_) {
                Monomial m{ma.exps, ma.u + mb.u};
                for (std::size_t i = 0; i < m.exps.size(); ++i) m.exps[i] += mb.exps[i];
                auto& slot = t[m];
                slot = static_cast<std::uint32_t>((slot + static_cast<std::uint64_t>(ca) * cb) % p);
                if (!slot) t.erase(m);
            }
        }
        return AlgElement(a.owner_, std::move(t));
    }

    AlgElement pow(std::uint64_t e) const {
        AlgElement r = one(owner_), b = *this;
        while (e) {
            if (e & 1) r = r * b;
            e >>= 1;
            if (e) b = b * b;
        }
        return r;
    }

    DegreeInfo degree_info() const {
        if (terms_.empty()) return {DegreeKind::Zero, 0};
        std::optional<std::int64_t> d;
        for (const auto& [m, c] : terms_) {
            auto dm = owner_->degree(m);
            if (d && *d != dm) return {DegreeKind::Mixed, 0};
            d = dm;
        }
        return {DegreeKind::Homogeneous, *d};
    }

    bool is_homogeneous() const { return degree_info().kind != DegreeKind::Mixed; }

    /// Requires homogeneity; zero has every degree and reports `fallback`.
    std::int64_t degree_or(std::int64_t fallback) const {
        auto di = degree_info();
        require(!di.is_mixed(), ErrorCode::Inhomogeneous, "element " + to_string() + " is not homogeneous");
        return di.kind == DegreeKind::Zero ? fallback : di.degree;
    }

    /// Periodic mode: multiplies by the power of u that moves a class-homogeneous element to
    /// exact degree `target`; every term must have degree congruent to target mod d.
    AlgElement shifted_to_degree(std::int64_t target) const {
        if (terms_.empty()) return *this;
        const auto d = owner_->field().d;
        Terms t;
        for (const auto& [m, c] : terms_) {
            auto dm = owner_->degree(m);
            if (dm == target) {
                t[m] = (t[m] + c) % p();
                continue;
            }
            require(d != 0 && (target - dm) % d == 0, ErrorCode::DegreeMismatch,
                    "cannot move degree " + std::to_string(dm) + " to " + std::to_string(target));
            Monomial mm = m;
            mm.u += (target - dm) / d;
            t[mm] = (t[mm] + c) % p();
        }
        // distinct x-parts may meet after the shift
        AlgElement r(owner_);
        for (auto& [m, c] : t)
            if (c) r.terms_.emplace(m, c);
        return r;
    }

    /// The same element with every u-power removed (x-part); used for class-level comparisons.
    AlgElement xpart() const {
        Terms t;
        for (const auto& [m, c] : terms_) {
            Monomial mm{m.exps, 0};
            auto& slot = t[mm];
            slot = (slot + c) % p();
            if (!slot) t.erase(mm);
        }
        AlgElement r(owner_);
        r.terms_ = std::move(t);
        return r;
    }

    /// Coefficient vector over the given monomial index (u-powers ignored).
    FpVec coordinates(const std::map<Word, std::size_t>& index) const {
        FpVec v;
        for (const auto& [m, c] : terms_) {
            auto it = index.find(m.exps);
            require(it != index.end(), ErrorCode::BoundExceeded, "monomial outside the enumerated basis");
            auto& slot = v[it->second];
            slot = (slot + c) % p();
            if (!slot) v.erase(it->second);
        }
        return v;
    }

    /// Terms in canonical printing order: higher degree first, then graded-lex over generators.
    std::vector<std::pair<Monomial, std::uint32_t>> ordered_terms() const {
        std::vector<std::pair<Monomial, std::uint32_t>> v(terms_.begin(), terms_.end());
        const auto& A = *owner_;
        std::sort(v.begin(), v.end(), [&](const auto& a, const auto& b) {
            auto da = A.degree(a.first), db = A.degree(b.first);
            if (da != db) return da > db;
            auto xa = A.xdegree(a.first.exps), xb = A.xdegree(b.first.exps);
            if (xa != xb) return xa > xb;
            if (a.first.exps != b.first.exps) return a.first.exps > b.first.exps;
            return a.first.u > b.first.u;
        });
        return v;
    }

    std::string to_string() const {
        if (terms_.empty()) return "0";
        std::string out;
        for (const auto& [m, c] : ordered_terms()) {
            if (!out.empty()) out += " + ";
            std::string mono;
            if (m.u != 0) mono = m.u == 1 ? "u" : "u^" + std::to_string(m.u);
            for (std::size_t i = 0; i < m.exps.size(); ++i) {
                if (!m.exps[i]) continue;
                if (!mono.empty()) mono += "*";
                mono += owner_->generators()[i].name;
                if (m.exps[i] > 1) mono += "^" + std::to_string(m.exps[i]);
            }
            if (mono.empty()) out += std::to_string(c);
            else if (c == 1) out += mono;
            else out += std::to_string(c) + "*" + mono;
        }
        return out;
    }

    /// Re-applies the normal form (idempotent).
    AlgElement normalized() const { return AlgElement(owner_, terms_); }

private:
    static void check_owner(const AlgElement& a, const AlgElement& b) {
        require(a.owner_ && a.owner_ == b.owner_, ErrorCode::OwnerMismatch, "elements of different algebras");
    }

    AlgElement axpy(std::uint32_t c, const AlgElement& b) const {
        check_owner(*this, b);
        Terms t = terms_;
        for (const auto& [m, x] : b.terms_) {
            auto& slot = t[m];
            slot = static_cast<std::uint32_t>((slot + static_cast<std::uint64_t>(c) * x) % p());
            if (!slot) t.erase(m);
        }
        AlgElement r(owner_);
        r.terms_ = std::move(t); // sums of normal forms are normal forms (normal form is linear)
        return r;
    }

    void normalize() {
        if (!owner_) return;
        const auto& A = *owner_;
        for (auto it = terms_.begin(); it != terms_.end();) {
            if (it->second % A.p() == 0 || A.killed(it->first.exps)) it = terms_.erase(it);
            else ++it;
        }
        if (!A.has_rules() || terms_.empty()) return;
        std::map<std::pair<std::int64_t, std::int64_t>, std::vector<std::pair<Word, std::uint32_t>>> groups;
        for (const auto& [m, c] : terms_) groups[{m.u, A.xdegree(m.exps)}].push_back({m.exps, c});
        Terms out;
        for (const auto& [key, items] : groups) {
            const auto& rd = A.rule_degree(key.second);
            FpVec v;
            for (const auto& [w, c] : items) fp_axpy(v, c, FpVec{{rd.index(w), 1}}, A.p());
            for (const auto& [j, c] : rd.normal_form(v)) out[Monomial{rd.words()[j], key.first}] = c;
        }
        terms_ = std::move(out);
    }

    PresentationPtr owner_;
    Terms terms_;
};

inline DegreeInfo degree_of(const AlgElement& x) { return x.degree_info(); }

inline AlgElement alg_add(const AlgElement& x, const AlgElement& y) { return x + y; }
inline AlgElement alg_mul(const AlgElement& x, const AlgElement& y) { return x * y; }
inline AlgElement alg_scale(const AlgElement& x, std::int64_t c) { return x.scaled(c); }

/// Ring operations on a presented algebra (coefficients act through reduction mod p).
inline EvalOps<AlgElement> alg_ops(const PresentationPtr& A) {
    EvalOps<AlgElement> ops;
    ops.one = [A] { return AlgElement::one(A); };
    ops.zero = [A] { return AlgElement::zero(A); };
    ops.add = [](const AlgElement& a, const AlgElement& b) { return a + b; };
    ops.mul = [](const AlgElement& a, const AlgElement& b) { return a * b; };
    ops.scale = [A](const AlgElement& a, const mpz_class& c) { return a.scaled(mod_p(c, A->p())); };
    ops.is_zero = [](const AlgElement& a) { return a.is_zero(); };
    return ops;
}

/// Basis words (u-free) of the generator-degree-e part of A.
inline std::vector<Word> xdegree_basis(const Presentation& A, std::int64_t e) {
    std::vector<Word> out;
    if (A.has_rules()) {
        const auto& rd = A.rule_degree(e);
        for (auto j : rd.standard_words()) out.push_back(rd.words()[j]);
        std::sort(out.begin(), out.end(), [&](const Word& a, const Word& b) { return a > b; });
        return out;
    }
    for (auto& w : A.words_of_xdegree(e))
        if (!A.killed(w)) out.push_back(w);
    std::sort(out.begin(), out.end(), [](const Word& a, const Word& b) { return a > b; });
    return out;
}

/// k_0-basis of A_n among monomials within the bound. In periodic mode every generator-degree
/// e <= bound with e = n mod d contributes, multiplied by the matching power of u.
inline std::vector<AlgElement> graded_piece(const PresentationPtr& A, std::int64_t n, const DegreeBound& bound) {
    require(bound.max_degree <= A->bound().max_degree || !A->has_rules(), ErrorCode::BoundExceeded,
            "requested bound exceeds the presentation's rewriting bound");
    std::vector<AlgElement> out;
    const auto d = A->field().d;
    std::vector<std::int64_t> xdegs;
    if (d == 0) {
        require(n <= bound.max_degree, ErrorCode::BoundExceeded,
                "degree " + std::to_string(n) + " beyond bound " + std::to_string(bound.max_degree));
        xdegs.push_back(n);
    } else {
        for (std::int64_t e = A->field().class_of(n); e <= bound.max_degree; e += d) xdegs.push_back(e);
    }
    for (auto it = xdegs.rbegin(); it != xdegs.rend(); ++it) {
        auto e = *it;
        if (e < 0) continue;
        std::vector<Word> basis;
        if (A->has_rules()) {
            basis = xdegree_basis(*A, e);
        } else {
            Presentation local(A->field(), A->generators(), A->monomial_relations(), {}, bound);
            for (auto& w : local.words_of_xdegree(e))
                if (!A->killed(w)) basis.push_back(w);
            std::sort(basis.begin(), basis.end(), [](const Word& a, const Word& b) { return a > b; });
        }
        for (auto& w : basis) out.push_back(AlgElement::monomial(A, Monomial{w, d ? (n - e) / d : 0}));
    }
    return out;
}

// ---------------------------------------------------------------- shift functors

/// Graded k_0-vector space data: degree -> basis labels. In periodic mode keys are residues
/// mod d (pieces in degrees n and n+d are identified through u).
struct GradedData {
    GradedField field;
    std::map<std::int64_t, std::vector<std::string>> pieces;

    std::size_t dim(std::int64_t n) const {
        auto key = field.class_of(n);
        auto it = pieces.find(key);
        return it == pieces.end() ? 0 : it->second.size();
    }
    friend bool operator==(const GradedData& a, const GradedData& b) {
        return a.field == b.field && a.pieces == b.pieces;
    }
};

/// M(i)_n = M_{p^i n}; for negative i in the ungraded case M(-1)_n = M_{n/p} (0 unless p | n).
inline GradedData shift_module(const GradedData& M, int i) {
    const std::int64_t p = M.field.p.value();
    GradedData out{M.field, {}};
    if (M.field.is_periodic()) {
        const std::int64_t d = M.field.d;
        // M(i)_r = M_{p^i r}; p is invertible mod d so negative i uses the inverse
        std::int64_t mult = 1;
        std::int64_t pp = i >= 0 ? p % d : static_cast<std::int64_t>(inv_mod(static_cast<std::uint32_t>(p % d), static_cast<std::uint32_t>(d)));
        if (d == 1) pp = 0;
        for (int k = 0; k < std::abs(i); ++k) mult = (mult * pp) % d;
        for (std::int64_t r = 0; r < d; ++r) {
            auto src = ((mult * r) % d + d) % d;
            auto it = M.pieces.find(src);
            if (it != M.pieces.end() && !it->second.empty()) out.pieces[r] = it->second;
        }
        return out;
    }
    for (const auto& [deg, basis] : M.pieces) {
        if (basis.empty()) continue;
        if (i >= 0) {
            std::int64_t q = 1;
            for (int k = 0; k < i; ++k) q *= p;
            if (deg % q == 0) out.pieces[deg / q] = basis;
        } else {
            std::int64_t q = 1;
            for (int k = 0; k < -i; ++k) q *= p;
            out.pieces[deg * q] = basis;
        }
    }
    return out;
}

/// For periodic k and p^l = 1 mod d, the exponent t with M_j -> M(l)_j = M_{jp^l}, m -> u^t m.
inline std::int64_t shift_period_exponent(const GradedField& k, int l, std::int64_t j) {
    require(k.is_periodic(), ErrorCode::InvalidArgument, "shift periodicity needs a periodic field");
    std::int64_t pl = 1;
    for (int i = 0; i < l; ++i) pl *= k.p.value();
    require((pl - 1) % k.d == 0, ErrorCode::InvalidArgument, "d does not divide p^l - 1");
    return (pl - 1) / k.d * j;
}

} // namespace polarwitt

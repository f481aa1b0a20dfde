#pragma once

#include <cctype>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "cowitt.hpp"
#include "errors.hpp"
#include "gradedpoly.hpp"
#include "polar.hpp"
#include "witt.hpp"

namespace polarwitt {

/// Whitespace-insensitive cursor over one logical input line. Columns are 1-based and refer to
/// the original text.
class Cursor {
public:
    Cursor(std::string_view s, std::size_t line = 1, std::size_t col0 = 1) : s_(s), line_(line), col0_(col0) {}

    void skip_ws() {
        while (i_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[i_]))) ++i_;
    }
    bool at_end() {
        skip_ws();
        return i_ >= s_.size();
    }
    char peek() {
        skip_ws();
        return i_ < s_.size() ? s_[i_] : '\0';
    }
    bool accept(char c) {
        if (peek() != c) return false;
        ++i_;
        return true;
    }
    bool accept(std::string_view w) {
        skip_ws();
        if (s_.substr(i_, w.size()) != w) return false;
        i_ += w.size();
        return true;
    }
    void expect(char c) {
        if (!accept(c)) fail(std::string("expected '") + c + "'");
    }
    void expect(std::string_view w) {
        if (!accept(w)) fail("expected '" + std::string(w) + "'");
    }

    std::string ident() {
        skip_ws();
        std::size_t b = i_;
        if (i_ < s_.size() && (std::isalpha(static_cast<unsigned char>(s_[i_])) || s_[i_] == '_')) ++i_;
        else fail("expected a name");
        while (i_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[i_])) || s_[i_] == '_')) ++i_;
        return std::string(s_.substr(b, i_ - b));
    }

    bool peek_ident() {
        char c = peek();
        return std::isalpha(static_cast<unsigned char>(c)) || c == '_';
    }
    bool peek_digit() { return std::isdigit(static_cast<unsigned char>(peek())) != 0; }

    std::int64_t integer(bool allow_sign = true) {
        skip_ws();
        std::size_t b = i_;
        bool neg = false;
        if (allow_sign && i_ < s_.size() && (s_[i_] == '-' || s_[i_] == '+')) neg = s_[i_++] == '-';
        std::size_t d0 = i_;
        while (i_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[i_]))) ++i_;
        if (i_ == d0) {
            i_ = b;
            fail("expected an integer");
        }
        if (i_ - d0 > 17) {
            i_ = d0;
            fail("integer too large");
        }
        std::int64_t v = std::stoll(std::string(s_.substr(d0, i_ - d0)));
        return neg ? -v : v;
    }

    std::size_t pos() const noexcept { return i_; }
    void reset(std::size_t i) noexcept { i_ = i; }
    std::string_view rest() const { return s_.substr(i_); }

    [[noreturn]] void fail(const std::string& what) const { throw ParseError(line_, col0_ + i_, what); }
    [[noreturn]] void fail_at(std::size_t i, const std::string& what) const { throw ParseError(line_, col0_ + i, what); }

private:
    std::string_view s_;
    std::size_t line_;
    std::size_t col0_;
    std::size_t i_ = 0;
};

namespace detail {

// term := [int '*'] factor ('*' factor)*  |  int
inline AlgElement parse_term(Cursor& c, const PresentationPtr& A) {
    AlgElement t = AlgElement::one(A);
    bool any = false;
    if (c.peek_digit()) {
        t = AlgElement::constant(A, c.integer(false));
        any = true;
        if (!c.accept('*')) return t;
    }
    do {
        if (!c.peek_ident()) c.fail(any ? "expected a generator after '*'" : "expected a term");
        c.skip_ws();
        std::size_t at = c.pos();
        auto name = c.ident();
        std::int64_t e = 1;
        if (c.accept('^')) e = c.integer(true);
        if (name == "u" && A->field().is_periodic()) {
            t = t * AlgElement::u_power(A, e);
        } else {
            auto gi = A->generator_index(name);
            if (!gi) c.fail_at(at, "unknown generator '" + name + "'");
            if (e < 0) c.fail_at(at, "negative exponent on '" + name + "'");
            t = t * AlgElement::generator(A, *gi, static_cast<std::uint32_t>(e));
        }
        any = true;
    } while (c.accept('*'));
    return t;
}

} // namespace detail

/// `2*x^2*y + x*y - u^-1*x`; coefficients are reduced mod p.
inline AlgElement parse_element(Cursor& c, const PresentationPtr& A) {
    AlgElement acc = AlgElement::zero(A);
    bool neg = c.accept('-');
    if (!neg) c.accept('+');
    while (true) {
        auto t = detail::parse_term(c, A);
        acc = neg ? acc - t : acc + t;
        if (c.accept('+')) neg = false;
        else if (c.accept('-')) neg = true;
        else break;
    }
    return acc;
}

inline AlgElement parse_element(const PresentationPtr& A, std::string_view text, std::size_t line = 1) {
    Cursor c(text, line);
    auto e = parse_element(c, A);
    if (!c.at_end()) c.fail("unexpected '" + std::string(1, c.peek()) + "'");
    return e;
}

namespace detail {

// key=value options up to a keyword
inline std::map<std::string, std::pair<std::string, std::size_t>> parse_options(Cursor& c, std::string_view stop) {
    std::map<std::string, std::pair<std::string, std::size_t>> out;
    while (!c.at_end()) {
        std::size_t save = c.pos();
        c.skip_ws();
        if (c.rest().substr(0, stop.size()) == stop) break;
        auto key = c.ident();
        if (!c.accept('=')) {
            c.reset(save);
            break;
        }
        c.skip_ws();
        std::size_t at = c.pos();
        std::string val;
        while (!c.rest().empty() && !std::isspace(static_cast<unsigned char>(c.rest()[0]))) {
            val += c.rest()[0];
            c.reset(c.pos() + 1);
        }
        if (out.count(key)) c.fail_at(at, "duplicate option '" + key + "'");
        out[key] = {val, at};
    }
    return out;
}

inline std::int64_t option_int(const Cursor& c, const std::pair<std::string, std::size_t>& v) {
    const auto& s = v.first;
    std::size_t k = (s.size() > 0 && s[0] == '-') ? 1 : 0;
    if (k == s.size() || s.size() > 17) c.fail_at(v.second, "expected an integer, got '" + s + "'");
    for (std::size_t i = k; i < s.size(); ++i)
        if (!std::isdigit(static_cast<unsigned char>(s[i]))) c.fail_at(v.second, "expected an integer, got '" + s + "'");
    return std::stoll(s);
}

struct FieldOptions {
    GradedField field;
    DegreeBound bound;
};

inline FieldOptions field_options(const Cursor& c, const std::map<std::string, std::pair<std::string, std::size_t>>& opt,
                                  std::size_t head) {
    auto it = opt.find("p");
    if (it == opt.end()) c.fail_at(head, "missing p=");
    std::int64_t p = option_int(c, it->second);
    std::string mode = "ungraded";
    if (auto m = opt.find("mode"); m != opt.end()) mode = m->second.first;
    bool strict = true;
    if (auto s = opt.find("strict_even"); s != opt.end()) {
        if (s->second.first == "on") strict = true;
        else if (s->second.first == "off") strict = false;
        else c.fail_at(s->second.second, "strict_even must be on or off");
    }
    std::int64_t d = 0;
    if (auto di = opt.find("d"); di != opt.end()) d = option_int(c, di->second);
    DegreeBound b;
    if (auto bi = opt.find("bound"); bi != opt.end()) b.max_degree = option_int(c, bi->second);
    if (auto wi = opt.find("wordlen"); wi != opt.end()) b.max_word_length = static_cast<int>(option_int(c, wi->second));
    for (const auto& [k, v] : opt)
        if (k != "p" && k != "mode" && k != "strict_even" && k != "d" && k != "bound" && k != "wordlen")
            c.fail_at(v.second, "unknown option '" + k + "'");
    if (p < 2 || p > 1000000) c.fail_at(opt.at("p").second, "p out of range");
    Prime pr(static_cast<std::uint32_t>(p));
    if (mode == "ungraded") {
        if (d != 0) c.fail_at(opt.at("d").second, "d= requires mode=periodic");
        return {GradedField::ungraded(pr, strict), b};
    }
    if (mode != "periodic") c.fail_at(opt.at("mode").second, "mode must be ungraded or periodic");
    if (d == 0) c.fail_at(head, "mode=periodic needs d=");
    return {GradedField::periodic(pr, d, strict), b};
}

inline std::vector<Generator> parse_generator_list(Cursor& c) {
    std::vector<Generator> gens;
    do {
        auto name = c.ident();
        c.expect(':');
        gens.push_back({name, c.integer(true)});
    } while (c.accept(','));
    return gens;
}

} // namespace detail

/// `algebra p=2 mode=ungraded gens: x:2, y:6 rels: x^3`
/// Further options: `d=<int>` (periodic), `strict_even=on|off`, `bound=<int>`, `wordlen=<int>`.
inline PresentationPtr parse_algebra(Cursor& c) {
    c.skip_ws();
    std::size_t head = c.pos();
    c.expect("algebra");
    auto opt = detail::parse_options(c, "gens:");
    auto fo = detail::field_options(c, opt, head);
    c.expect("gens:");
    auto gens = detail::parse_generator_list(c);
    std::vector<Word> rels;
    if (c.accept("rels:")) {
        auto free = Presentation::make(fo.field, gens, {}, {}, fo.bound);
        do {
            c.skip_ws();
            std::size_t at = c.pos();
            auto r = parse_element(c, free);
            if (r.terms().size() != 1 || r.terms().begin()->second != 1 || r.terms().begin()->first.u != 0)
                c.fail_at(at, "relations must be monomials in the generators");
            rels.push_back(r.terms().begin()->first.exps);
        } while (c.accept(','));
    }
    return Presentation::make(fo.field, std::move(gens), std::move(rels), {}, fo.bound);
}

inline PresentationPtr parse_algebra(std::string_view text, std::size_t line = 1) {
    Cursor c(text, line);
    auto A = parse_algebra(c);
    if (!c.at_end()) c.fail("unexpected trailing input");
    return A;
}

namespace detail {

// Components between brackets, split at top-level ';'. Returns (text, offset) pairs.
inline std::vector<std::pair<std::string_view, std::size_t>> bracket_items(Cursor& c, std::string_view text) {
    c.expect('[');
    std::size_t start = c.pos();
    std::size_t close = text.find(']', start);
    if (close == std::string_view::npos) c.fail("missing ']'");
    std::vector<std::pair<std::string_view, std::size_t>> out;
    std::size_t b = start;
    for (std::size_t i = start; i <= close; ++i) {
        if (i == close || text[i] == ';') {
            out.push_back({text.substr(b, i - b), b});
            b = i + 1;
        }
    }
    c.reset(close + 1);
    if (!c.at_end()) c.fail("unexpected trailing input after ']'");
    return out;
}

inline bool blank(std::string_view s) {
    for (char ch : s)
        if (!std::isspace(static_cast<unsigned char>(ch))) return false;
    return true;
}

} // namespace detail

/// `[a0; a1; a2]`. The degree is read off the first nonzero component unless given.
inline WittVector parse_witt(const PresentationPtr& A, std::string_view text, std::optional<WittDegree> degree = std::nullopt,
                             PolarPtr polar = nullptr, std::size_t line = 1) {
    Cursor c(text, line);
    auto items = detail::bracket_items(c, text);
    std::vector<AlgElement> comps;
    std::optional<WittDegree> found;
    for (std::size_t i = 0; i < items.size(); ++i) {
        const auto& [s, off] = items[i];
        if (detail::blank(s)) c.fail_at(off, "empty component");
        Cursor ci(s, line, off + 1);
        auto a = parse_element(ci, A);
        if (!ci.at_end()) ci.fail("unexpected '" + std::string(1, ci.peek()) + "'");
        if (!found && !a.is_zero()) {
            auto di = a.degree_info();
            if (di.kind == DegreeKind::Mixed) c.fail_at(off, "component " + std::to_string(i) + " is not homogeneous");
            found = WittDegree{di.degree, static_cast<int>(i)}.normalized(A->p());
        }
        comps.push_back(std::move(a));
    }
    WittDegree j = degree ? *degree : (found ? *found : WittDegree{});
    return WittVector(A, j, std::move(comps), std::move(polar));
}

/// `[...;a_{-1};a_0]` or `[...(t);a_{-1};a_0]`. Degree from the rightmost nonzero component
/// unless given.
inline CoWittVector parse_cowitt(const CoWittSpace& S, std::string_view text, std::optional<std::int64_t> degree = std::nullopt,
                                 std::size_t line = 1) {
    Cursor c(text, line);
    auto items = detail::bracket_items(c, text);
    if (items.empty()) c.fail("expected '...'");
    auto [head, hoff] = items.front();
    Cursor hc(head, line, hoff + 1);
    hc.expect("...");
    std::optional<AlgElement> tail;
    if (hc.accept('(')) {
        tail = parse_element(hc, S.A);
        hc.expect(')');
    }
    if (!hc.at_end()) hc.fail("unexpected input after '...'");
    std::vector<AlgElement> comps;
    std::optional<std::int64_t> found;
    const auto p = static_cast<std::int64_t>(S.p());
    for (std::size_t r = items.size(); r-- > 1;) {
        const auto& [s, off] = items[r];
        if (detail::blank(s)) c.fail_at(off, "empty component");
        Cursor ci(s, line, off + 1);
        auto a = parse_element(ci, S.A);
        if (!ci.at_end()) ci.fail("unexpected '" + std::string(1, ci.peek()) + "'");
        std::size_t k = comps.size();
        if (!found && !a.is_zero()) {
            auto di = a.degree_info();
            if (di.kind == DegreeKind::Mixed) c.fail_at(off, "component is not homogeneous");
            std::int64_t j = di.degree;
            for (std::size_t t = 0; t < k; ++t) j *= p;
            found = j;
        }
        comps.push_back(std::move(a));
    }
    if (!found && tail && !tail->is_zero()) found = 0;
    return CoWittVector(S, degree ? *degree : (found ? *found : 0), std::move(comps), tail);
}

/// Named definitions read from a file, one per line:
///   `A = algebra p=2 gens: x:2, y:6 rels: x^3`
///   `P = polar ambient=A gens: x, y^2`  carrier generated by elements of A
///   `Q = freepolar p=3 gens: x:2`       free p-polar algebra, options as for algebra
///   `R = pol A` / `R = pol A j=1`        polarization (optionally p-typical part)
/// `#` starts a comment.
struct Session {
    std::map<std::string, PresentationPtr> algebras;
    std::map<std::string, PolarPtr> polars;
    std::vector<std::string> order;

    bool has(const std::string& n) const { return algebras.count(n) || polars.count(n); }
};

inline void parse_definition_line(Session& s, std::string_view text, std::size_t line) {
    Cursor c(text, line);
    c.skip_ws();
    std::size_t at = c.pos();
    auto name = c.ident();
    if (s.has(name)) c.fail_at(at, "duplicate definition '" + name + "'");
    c.expect('=');
    c.skip_ws();
    if (c.rest().substr(0, 7) == "algebra") {
        s.algebras[name] = parse_algebra(c);
    } else if (c.accept("freepolar")) {
        c.skip_ws();
        std::size_t head = c.pos();
        auto opt = detail::parse_options(c, "gens:");
        auto fo = detail::field_options(c, opt, head);
        c.expect("gens:");
        s.polars[name] = free_polar(fo.field, detail::parse_generator_list(c), fo.bound);
    } else if (c.accept("polar")) {
        c.expect("ambient=");
        c.skip_ws();
        std::size_t ra = c.pos();
        auto ref = c.ident();
        auto it = s.algebras.find(ref);
        if (it == s.algebras.end()) c.fail_at(ra, "unknown algebra '" + ref + "'");
        c.expect("gens:");
        std::vector<AlgElement> gens;
        std::vector<std::int64_t> xdegs;
        do {
            c.skip_ws();
            std::size_t ga = c.pos();
            auto g = parse_element(c, it->second);
            if (!g.is_homogeneous()) c.fail_at(ga, "carrier generator is not homogeneous");
            gens.push_back(g);
            if (!g.is_zero()) xdegs.push_back(g.degree_info().degree);
        } while (c.accept(','));
        s.polars[name] = PolarAlgebra::make(it->second, std::move(gens), infer_typicality(it->second->field(), xdegs));
    } else if (c.accept("pol")) {
        c.skip_ws();
        std::size_t ra = c.pos();
        auto ref = c.ident();
        auto it = s.algebras.find(ref);
        if (it == s.algebras.end()) c.fail_at(ra, "unknown algebra '" + ref + "'");
        if (c.accept("j=")) s.polars[name] = polarization_typical(it->second, c.integer(false));
        else s.polars[name] = polarization(it->second);
    } else {
        c.fail("expected algebra, polar, freepolar or pol");
    }
    if (!c.at_end()) c.fail("unexpected trailing input");
    s.order.push_back(name);
}

inline Session parse_definitions(std::string_view text) {
    Session s;
    std::size_t line = 1, b = 0;
    while (b <= text.size()) {
        std::size_t e = text.find('\n', b);
        if (e == std::string_view::npos) e = text.size();
        auto ln = text.substr(b, e - b);
        if (auto h = ln.find('#'); h != std::string_view::npos) ln = ln.substr(0, h);
        if (!detail::blank(ln)) parse_definition_line(s, ln, line);
        ++line;
        b = e + 1;
    }
    return s;
}

} // namespace polarwitt

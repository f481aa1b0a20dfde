// Acceptance suite: one PASS/FAIL line per criterion. Exit status is nonzero if any selected
// criterion fails.
//
//   acceptance [--only N] [--seed S] [--cli PATH] [--golden DIR] [--case NAME]
//
// With --case only that golden case is run (against --cli, from --golden).

#include <fcntl.h>
#include <sys/wait.h>
#include <unistd.h>

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <set>
#include <sstream>

#include <CLI11.hpp>

#include "support.hpp"

using namespace polarwitt;

std::uint64_t& testing_support::seed() {
    static std::uint64_t s = 20261015;
    return s;
}

namespace {

using Clock = std::chrono::steady_clock;

struct Outcome {
    bool pass = true;
    std::string detail;

    void fail(const std::string& why) {
        if (pass) detail = why;
        pass = false;
    }
};

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

std::string fmt_seconds(double s) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f s", s);
    return buf;
}

void time_limit(Outcome& o, double took, double limit) {
    if (took >= limit) o.fail("took " + fmt_seconds(took) + ", limit " + fmt_seconds(limit));
}

PresentationPtr ring(std::uint32_t p, std::vector<Generator> gens, std::vector<Word> rels, std::int64_t bound) {
    return Presentation::make(GradedField::ungraded(Prime(p), false), std::move(gens), std::move(rels), {},
                              DegreeBound{bound, 24});
}

// ---------------------------------------------------------------- 1

Outcome universal_integrality() {
    const auto t0 = Clock::now();
    Outcome o;
    std::vector<std::string> done;
    for (std::uint32_t p : {2u, 3u, 5u}) {
        // W_n polynomials contain those of every smaller n, so the largest buildable n decides
        int reached = -1;
        for (int n = 4; n >= 0 && reached < 0; --n) {
            try {
                auto U = build_universal(Prime(p), n);
                auto bad = U.verify_ghost_identities();
                if (!bad.empty()) o.fail("p=" + std::to_string(p) + ": ghost identity for " + bad + " fails");
                reached = n;
            } catch (const DomainError& e) {
                if (n == 4) o.fail("(p,n)=(" + std::to_string(p) + ",4): " + e.what());
            }
        }
        done.push_back("p=" + std::to_string(p) + " n<=" + std::to_string(reached));
    }
    const double took = seconds_since(t0);
    time_limit(o, took, 10.0);
    std::string all;
    for (const auto& d : done) all += (all.empty() ? "" : ", ") + d;
    o.detail = (o.pass ? "" : o.detail + "; ") + "built " + all + " in " + fmt_seconds(took);
    return o;
}

// ---------------------------------------------------------------- 2

Outcome witt_ring_laws() {
    const auto t0 = Clock::now();
    Outcome o;
    struct Sample {
        std::string name;
        PresentationPtr A;
        std::vector<std::int64_t> degrees;
    };
    std::vector<Sample> samples = {
        {"F_2", ring(2, {}, {}, 0), {0}},
        {"F_3[t]", ring(3, {{"t", 2}}, {}, 400), {0, 2, 4}},
        {"F_2[x,y]/x^3", ring(2, {{"x", 1}, {"y", 1}}, {Word{3, 0}}, 64), {0, 1, 2}},
    };
    const int n = 3, triples = 200;
    int checked = 0;
    for (const auto& s : samples) {
        auto g = testing_support::rng(1000 + s.name.size());
        std::uniform_int_distribution<std::size_t> pick(0, s.degrees.size() - 1);
        for (int t = 0; t < triples && o.pass; ++t) {
            const auto ja = s.degrees[pick(g)], jb = s.degrees[pick(g)];
            auto a = testing_support::random_witt(s.A, ja, n, g);
            auto b = testing_support::random_witt(s.A, jb, n, g);
            auto c = testing_support::random_witt(s.A, jb, n, g);
            auto a2 = testing_support::random_witt(s.A, ja, n, g);
            const std::string where = s.name + " triple " + std::to_string(t);
            if (witt_add(b, c) != witt_add(c, b)) o.fail(where + ": addition not commutative");
            if (witt_add(witt_add(a, a2), a) != witt_add(a, witt_add(a2, a))) o.fail(where + ": addition not associative");
            if (witt_mul(a, b) != witt_mul(b, a)) o.fail(where + ": product not commutative");
            if (witt_mul(witt_mul(a, b), c) != witt_mul(a, witt_mul(b, c))) o.fail(where + ": product not associative");
            if (witt_mul(a, witt_add(b, c)) != witt_add(witt_mul(a, b), witt_mul(a, c))) o.fail(where + ": not distributive");
            if (!witt_add(a, witt_neg(a)).is_zero()) o.fail(where + ": a + (-a) != 0");
            auto ga = ghost(a), gb = ghost(b), gc = ghost(c), gs = ghost(witt_add(b, c)), gm = ghost(witt_mul(a, b));
            for (int m = 0; m <= n; ++m) {
                if (gs[m] != gb[m] + gc[m]) o.fail(where + ": ghost not additive in component " + std::to_string(m));
                if (gm[m] != ga[m] * gb[m]) o.fail(where + ": ghost not multiplicative in component " + std::to_string(m));
            }
            ++checked;
        }
    }
    const double took = seconds_since(t0);
    time_limit(o, took, 30.0);
    if (o.pass) o.detail = std::to_string(checked) + " triples in W_3 over 3 algebras, " + fmt_seconds(took);
    return o;
}

// ---------------------------------------------------------------- 3

Outcome operator_identities() {
    Outcome o;
    int checked = 0;
    for (std::uint32_t p : {2u, 3u}) {
        auto A = ring(p, {{"t", 2}, {"s", 4}}, {}, 4 * 27 * 3);
        auto g = testing_support::rng(2000 + p);
        std::uniform_int_distribution<int> len(1, 3);
        std::uniform_int_distribution<std::int64_t> deg(0, 2);
        for (int t = 0; t < 100 && o.pass; ++t) {
            const int n = len(g);
            const std::int64_t j = 2 * deg(g);
            auto x = testing_support::random_witt(A, j, n, g);
            const std::string where = "p=" + std::to_string(p) + " " + x.to_string();
            if (frobenius(verschiebung(x)) != witt_times(x, p)) o.fail(where + ": FV != p");
            if (verschiebung(frobenius(x)) != witt_times(x, p)) o.fail(where + ": VF != p");
            auto a = testing_support::random_homogeneous(A, j, g);
            if (frobenius(teichmuller(a, n)) != teichmuller(a.pow(p), n - 1)) o.fail(where + ": F(teich a) != teich(a^p)");
            ++checked;
        }
    }
    if (o.pass) o.detail = std::to_string(checked) + " vectors, exact";
    return o;
}

// ---------------------------------------------------------------- 4

// Every (leaf counts per level, degree) realised by a mu-tree with at most `max_leaves` leaves.
// A leaf at level a has degree p^a; degrees are reduced mod p^h - 1 for finite h.
std::map<std::vector<std::uint64_t>, std::set<std::int64_t>> enumerate_trees(std::uint32_t p, std::optional<int> h, int levels,
                                                                             std::uint64_t max_leaves) {
    using Item = std::pair<std::vector<std::uint64_t>, std::int64_t>;
    const std::int64_t D = h ? ipow(p, *h) - 1 : 0;
    auto cls = [&](std::int64_t e) { return D ? e % D : e; };
    std::set<Item> all;
    for (int a = 0; a < levels; ++a) {
        std::vector<std::uint64_t> c(static_cast<std::size_t>(levels), 0);
        c[static_cast<std::size_t>(a)] = 1;
        all.insert({c, cls(ipow(p, a))});
    }
    bool grew = true;
    while (grew) {
        grew = false;
        std::map<std::int64_t, std::vector<Item>> by_degree;
        for (const auto& it : all) by_degree[it.second].push_back(it);
        for (const auto& [deg, items] : by_degree) {
            std::vector<std::size_t> pick;
            auto rec = [&](auto&& self, std::size_t start, std::uint64_t leaves) -> void {
                if (pick.size() == p) {
                    std::vector<std::uint64_t> c(static_cast<std::size_t>(levels), 0);
                    for (auto i : pick)
                        for (int a = 0; a < levels; ++a) c[static_cast<std::size_t>(a)] += items[i].first[static_cast<std::size_t>(a)];
                    if (all.insert({c, cls(deg * static_cast<std::int64_t>(p))}).second) grew = true;
                    return;
                }
                for (std::size_t i = start; i < items.size(); ++i) {
                    std::uint64_t l = 0;
                    for (auto v : items[i].first) l += v;
                    if (leaves + l + (p - pick.size() - 1) > max_leaves) continue;
                    pick.push_back(i);
                    self(self, i, leaves + l);
                    pick.pop_back();
                }
            };
            rec(rec, 0, 0);
        }
    }
    std::map<std::vector<std::uint64_t>, std::set<std::int64_t>> out;
    for (const auto& [c, d] : all) out[c].insert(d);
    return out;
}

Outcome multipliability_oracle() {
    const auto t0 = Clock::now();
    Outcome o;
    const int levels = 5;
    const std::uint64_t max_leaves = 8;
    std::size_t compared = 0;
    for (std::uint32_t p : {2u, 3u}) {
        for (std::optional<int> h : {std::optional<int>(2), std::optional<int>(3), std::optional<int>()}) {
            const std::string tag = "p=" + std::to_string(p) + " h=" + (h ? std::to_string(*h) : std::string("inf"));
            auto trees = enumerate_trees(p, h, levels, max_leaves);
            const std::int64_t D = h ? ipow(p, *h) - 1 : 0;
            std::vector<std::uint64_t> c(levels, 0);
            while (true) {
                std::uint64_t tot = 0;
                for (auto v : c) tot += v;
                if (tot >= 1 && tot <= max_leaves) {
                    auto got = is_multipliable(c, Prime(p), h);
                    auto it = trees.find(c);
                    std::string counts;
                    for (auto v : c) counts += (counts.empty() ? "" : ",") + std::to_string(v);
                    if (got.has_value() != (it != trees.end())) {
                        o.fail(tag + " counts (" + counts + "): library says " + (got ? "multipliable" : "not multipliable"));
                    } else if (got) {
                        std::int64_t pm = ipow(p, *got);
                        if (it->second.size() != 1 || *it->second.begin() != (D ? pm % D : pm))
                            o.fail(tag + " counts (" + counts + "): degree p^" + std::to_string(*got) + " not the tree degree");
                    }
                    ++compared;
                }
                std::size_t k = 0;
                while (k < c.size() && ++c[k] > max_leaves) c[k++] = 0;
                if (k == c.size()) break;
            }
        }
    }
    const double took = seconds_since(t0);
    time_limit(o, took, 60.0);
    if (o.pass) o.detail = std::to_string(compared) + " leaf-count vectors over 5 levels, " + fmt_seconds(took);
    return o;
}

// ---------------------------------------------------------------- 5

Outcome cw_example() {
    Outcome o;
    std::string summary;
    for (std::uint32_t p : {2u, 3u}) {
        std::vector<std::int64_t> window;
        for (int i = 0; i <= 4; ++i) window.push_back(2 * ipow(p, i));
        auto P = free_polar(GradedField::ungraded(Prime(p)), {{"x", 2}}, DegreeBound{window.back(), 24});
        auto S = CoWittSpace::of(P);
        auto D = cw_as_dieudonne(S, window);
        auto rep = check_dieudonne(D.module);
        if (!rep.valid) o.fail("p=" + std::to_string(p) + ": module axioms fail");
        auto x = AlgElement::generator(P->ambient(), 0);
        auto gen = [&](std::size_t i) {
            std::vector<AlgElement> c(i + 1, AlgElement::zero(P->ambient()));
            c[i] = x;
            return CoWittVector(S, window[i], c);
        };
        for (std::size_t i = 0; i < window.size(); ++i) {
            const std::string where = "p=" + std::to_string(p) + " degree " + std::to_string(window[i]);
            // W_i(k) has i+1 components, so order p^(i+1), cyclic, generated by x at the deepest position
            const mpz_class want = mpz_pow(Prime(p), static_cast<unsigned long>(i + 1));
            if (D.pieces[i].order != want) o.fail(where + ": order " + D.pieces[i].order.get_str() + ", want " + want.get_str());
            if (D.pieces[i].invariants != std::vector<mpz_class>{want}) o.fail(where + ": not cyclic");
            auto g = gen(i);
            if (cw_times(g, ipow(p, static_cast<int>(i))).is_zero() || !cw_times(g, ipow(p, static_cast<int>(i) + 1)).is_zero())
                o.fail(where + ": generator has the wrong order");
            if (i + 1 < window.size()) {
                if (cw_V(gen(i + 1)) != g) o.fail(where + ": V is not truncation");
                if (cw_F(g) != cw_times(gen(i + 1), p)) o.fail(where + ": F is not multiplication by p");
            }
        }
        summary += (summary.empty() ? "" : "; ") + std::string("p=") + std::to_string(p) + " orders p^1..p^5";
    }
    if (o.pass) o.detail = summary + ", V truncation, F times p";
    return o;
}

// ---------------------------------------------------------------- 6

Outcome hull_and_retract() {
    Outcome o;
    for (std::uint32_t p : {2u, 3u}) {
        auto A = free_polar(GradedField::ungraded(Prime(p)), {{"x", 2}}, DegreeBound{32, 24});
        Hull H(A);
        auto t = H.unit(AlgElement::generator(A->ambient(), 0));
        for (std::int64_t e = 0; e <= 32; ++e) {
            const std::size_t want = e % 2 == 0 ? 1 : 0; // k[x] with |x| = 2
            const auto got = xdegree_basis(*H.algebra(), e).size();
            if (got != want)
                o.fail("p=" + std::to_string(p) + " hull degree " + std::to_string(e) + ": dimension " + std::to_string(got));
            if (want && t.pow(static_cast<std::uint32_t>(e / 2)).is_zero())
                o.fail("p=" + std::to_string(p) + ": x^" + std::to_string(e / 2) + " vanishes in the hull");
        }
    }
    auto B = free_polar(GradedField::periodic(Prime(2), 3), {{"x", 1}}, DegreeBound{32, 24});
    auto rep = retract_check(B);
    if (!rep.ok)
        for (const auto& l : rep.lines)
            if (l.find("MISMATCH") != std::string::npos) o.fail("retract: " + l);
    auto r = regrade(B);
    Hull H(r.image);
    for (const auto& b : r.image->carrier_basis())
        if (H.restrict_to_carrier(H.unit(b)) != b) o.fail("retract: " + b.to_string() + " does not come back");
    auto back = regrade_inverse(r);
    std::vector<std::string> before, after;
    for (const auto& b : B->carrier_basis()) before.push_back(b.to_string());
    for (const auto& b : back->carrier_basis()) after.push_back(b.to_string());
    if (before != after) o.fail("regrading round trip changes the carrier basis");
    if (o.pass)
        o.detail = "hull = k[x] to degree 32 for p=2,3; retract identity on " + std::to_string(before.size()) +
                   " basis elements (p=2, d=3, j=1)";
    return o;
}

// ---------------------------------------------------------------- 7

Outcome polynomial_witt_ranks() {
    Outcome o;
    for (int n = 0; n <= 2; ++n) {
        auto rep = witt_of_poly_ring_iso_check(Prime(2), 2, n, 8);
        if (!rep.ok) {
            std::string line;
            for (const auto& l : rep.lines)
                if (l.find("MISMATCH") != std::string::npos || l.find("mismatch") != std::string::npos) {
                    line = l;
                    break;
                }
            o.fail("n=" + std::to_string(n) + " first mismatch at degree " +
                   (rep.first_mismatch ? std::to_string(*rep.first_mismatch) : std::string("?")) + (line.empty() ? "" : " (" + line + ")") +
                   "; p=2 divides |u|=2");
        }
    }
    if (o.pass) o.detail = "ranks agree for n<=2, degrees<=8";
    return o;
}

// ---------------------------------------------------------------- 8

Outcome primitives_of_lambda() {
    Outcome o;
    for (std::uint32_t p : {2u, 3u}) {
        const std::int64_t j = 2, top = j * p * p;
        auto H = hopf_truncation(Prime(p), j, top);
        auto prim = primitives(H, top);
        auto theta0 = AlgElement::generator(H.algebra, 0);
        for (std::int64_t e = 0; e <= top; ++e) {
            std::size_t want = 0;
            std::optional<AlgElement> expect;
            for (int k = 0; k <= 2; ++k)
                if (e == j * ipow(p, k)) {
                    want = 1;
                    expect = theta0.pow(static_cast<std::uint32_t>(ipow(p, k)));
                }
            const auto it = prim.find(e);
            const std::size_t got = it == prim.end() ? 0 : it->second.size();
            const std::string where = "p=" + std::to_string(p) + " degree " + std::to_string(e);
            if (got != want) o.fail(where + ": " + std::to_string(got) + " primitives");
            if (expect && got == 1 && it->second[0] != *expect) o.fail(where + ": got " + it->second[0].to_string());
            // exhaustive count of primitive elements in the piece
            auto basis = graded_piece(H.algebra, e, H.algebra->bound());
            if (basis.size() > 8) continue;
            std::size_t count = 0;
            std::vector<std::uint32_t> digit(basis.size(), 0);
            while (true) {
                AlgElement v = AlgElement::zero(H.algebra);
                for (std::size_t i = 0; i < basis.size(); ++i) v = v + basis[i].scaled(digit[i]);
                if (is_primitive(H, v)) ++count;
                std::size_t i = 0;
                while (i < digit.size() && ++digit[i] == p) digit[i++] = 0;
                if (i == digit.size()) break;
            }
            if (count != static_cast<std::size_t>(ipow(p, static_cast<int>(want))))
                o.fail(where + ": " + std::to_string(count) + " primitive elements by enumeration");
        }
    }
    if (o.pass) o.detail = "span{theta0^(p^k)} in degrees 2,2p,2p^2 for p=2,3";
    return o;
}

// ---------------------------------------------------------------- 9

Outcome homogeneity() {
    Outcome o;
    struct Sample {
        std::string name;
        PresentationPtr A;
        std::vector<std::int64_t> degrees;
    };
    std::vector<Sample> samples = {
        {"F_2[x,y]/x^3", ring(2, {{"x", 1}, {"y", 3}}, {Word{3, 0}}, 96), {1, 2, 3}},
        {"F_3[t,s]", ring(3, {{"t", 1}, {"s", 2}}, {}, 120), {1, 2}},
        {"F_5[t]", ring(5, {{"t", 2}}, {}, 200), {2, 4}},
    };
    int checked = 0;
    auto typed = [&](const WittVector& w, WittDegree j, const std::string& what) {
        // component i lives in degree j p^i
        const std::int64_t p = w.algebra()->p();
        for (std::size_t i = 0; i < w.components().size(); ++i) {
            const auto& c = w.components()[i];
            if (c.is_zero()) continue;
            auto d = degree_of(c);
            std::int64_t num = j.num;
            int shift = static_cast<int>(i) - j.shift;
            bool integral = shift >= 0;
            if (integral) num *= ipow(p, shift);
            if (!integral || d.kind != DegreeKind::Homogeneous || d.degree != num)
                o.fail(what + ": component " + std::to_string(i) + " = " + c.to_string() + " has the wrong degree");
        }
        ++checked;
    };
    for (const auto& s : samples) {
        auto g = testing_support::rng(3000 + s.name.size());
        std::uniform_int_distribution<std::size_t> pick(0, s.degrees.size() - 1);
        for (int t = 0; t < 30 && o.pass; ++t) {
            const auto ja = s.degrees[pick(g)], jb = s.degrees[pick(g)];
            auto a = testing_support::random_witt(s.A, ja, 2, g), a2 = testing_support::random_witt(s.A, ja, 2, g);
            auto b = testing_support::random_witt(s.A, jb, 2, g);
            const std::string where = s.name + " sample " + std::to_string(t);
            typed(witt_add(a, a2), WittDegree::integral(ja), where + " sum");
            typed(witt_mul(a, b), WittDegree::integral(ja + jb), where + " product");
            typed(witt_neg(a), WittDegree::integral(ja), where + " negative");
            typed(verschiebung(a), WittDegree::integral(ja).over_p(s.A->p()), where + " V");
        }
    }
    if (o.pass) o.detail = std::to_string(checked) + " results typed W_j = prod A_{j p^i}";
    return o;
}

// ---------------------------------------------------------------- 10

struct RunResult {
    int code = -1;
    std::string out, err;
};

std::string slurp(const std::filesystem::path& f) {
    std::ifstream in(f, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

RunResult run_cli(const std::string& cli, const std::vector<std::string>& args, const std::filesystem::path& cwd) {
    namespace fs = std::filesystem;
    auto tmp = fs::temp_directory_path();
    const std::string tag = std::to_string(::getpid());
    fs::path out_file = tmp / ("acceptance_" + tag + ".out"), err_file = tmp / ("acceptance_" + tag + ".err");
    pid_t pid = ::fork();
    if (pid == 0) {
        int fo = ::open(out_file.c_str(), O_WRONLY | O_CREAT | O_TRUNC, 0600);
        int fe = ::open(err_file.c_str(), O_WRONLY | O_CREAT | O_TRUNC, 0600);
        ::dup2(fo, 1);
        ::dup2(fe, 2);
        if (::chdir(cwd.c_str()) != 0) ::_exit(126);
        std::vector<char*> argv;
        argv.push_back(const_cast<char*>(cli.c_str()));
        for (const auto& a : args) argv.push_back(const_cast<char*>(a.c_str()));
        argv.push_back(nullptr);
        ::execv(cli.c_str(), argv.data());
        ::_exit(127);
    }
    RunResult r;
    int status = 0;
    ::waitpid(pid, &status, 0);
    r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    r.out = slurp(out_file);
    r.err = slurp(err_file);
    fs::remove(out_file);
    fs::remove(err_file);
    return r;
}

std::vector<std::string> read_args(const std::filesystem::path& f) {
    std::vector<std::string> args;
    std::istringstream in(slurp(f));
    for (std::string line; std::getline(in, line);)
        if (!line.empty()) args.push_back(line);
    return args;
}

// Case NAME: NAME.args (one argument per line), NAME.out (stdout), NAME.code (exit code) and
// optionally NAME.err (stderr). Runs twice; both runs must match the files byte for byte.
Outcome golden_case(const std::string& cli, const std::filesystem::path& dir, const std::string& name) {
    Outcome o;
    auto args = read_args(dir / (name + ".args"));
    const std::string want_out = slurp(dir / (name + ".out"));
    const int want_code = std::stoi(slurp(dir / (name + ".code")));
    const bool has_err = std::filesystem::exists(dir / (name + ".err"));
    const std::string want_err = has_err ? slurp(dir / (name + ".err")) : "";
    auto first = run_cli(cli, args, dir), second = run_cli(cli, args, dir);
    if (first.out != second.out || first.err != second.err || first.code != second.code) o.fail(name + ": reruns differ");
    if (first.code != want_code) o.fail(name + ": exit code " + std::to_string(first.code) + ", want " + std::to_string(want_code));
    if (first.out != want_out) o.fail(name + ": stdout differs from " + name + ".out");
    if (has_err && first.err != want_err) o.fail(name + ": stderr differs from " + name + ".err");
    return o;
}

std::vector<std::string> golden_names(const std::filesystem::path& dir) {
    std::vector<std::string> names;
    for (const auto& e : std::filesystem::directory_iterator(dir))
        if (e.path().extension() == ".args") names.push_back(e.path().stem().string());
    std::sort(names.begin(), names.end());
    return names;
}

Outcome cli_determinism(const std::string& cli, const std::string& golden) {
    Outcome o;
    if (cli.empty() || golden.empty()) {
        o.fail("needs --cli and --golden");
        return o;
    }
    auto names = golden_names(golden);
    std::set<std::string> commands;
    for (const auto& n : names) {
        auto r = golden_case(cli, golden, n);
        if (!r.pass) o.fail(r.detail);
        auto args = read_args(std::filesystem::path(golden) / (n + ".args"));
        std::string path;
        for (const auto& a : args) {
            if (a.empty() || a[0] == '-' || a[0] == '[') break;
            path += (path.empty() ? "" : " ") + a;
        }
        commands.insert(path);
    }
    // every leaf subcommand must have at least one case
    for (const char* c : {"witt ghost", "witt add", "witt sub", "witt mul", "witt neg", "witt frob", "witt versch", "witt teich",
                          "witt mu", "polar multipliable", "polar basis", "polar hull", "polar split", "polar regrade",
                          "cw example", "cw add", "cw neg", "cw frob", "cw versch", "cw group", "hopf primitives",
                          "hopf polar", "hopf check", "dieudonne check"})
        if (!commands.count(c)) o.fail(std::string("no golden case for '") + c + "'");
    if (o.pass) o.detail = std::to_string(names.size()) + " golden cases, byte-identical on rerun";
    return o;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"acceptance criteria"};
    int only = 0;
    std::string cli, golden, case_name;
    app.add_option("--only", only, "run a single criterion (1-10)")->check(CLI::Range(1, 10));
    app.add_option("--seed", testing_support::seed(), "seed for sampled criteria");
    app.add_option("--cli", cli, "path of the polarwitt executable");
    app.add_option("--golden", golden, "golden case directory");
    app.add_option("--case", case_name, "run one golden case");
    CLI11_PARSE(app, argc, argv);

    if (!case_name.empty()) {
        auto r = golden_case(cli, golden, case_name);
        std::cout << "golden " << case_name << ": " << (r.pass ? "PASS" : "FAIL " + r.detail) << "\n";
        return r.pass ? 0 : 1;
    }

    const std::vector<std::function<Outcome()>> criteria = {
        universal_integrality, witt_ring_laws,      operator_identities, multipliability_oracle, cw_example,
        hull_and_retract,      polynomial_witt_ranks, primitives_of_lambda, homogeneity,
        [&] { return cli_determinism(cli, golden); },
    };
    std::cout << "seed " << testing_support::seed() << "\n";
    bool all = true;
    for (int i = 1; i <= 10; ++i) {
        if (only && i != only) continue;
        Outcome r;
        try {
            r = criteria[static_cast<std::size_t>(i - 1)]();
        } catch (const std::exception& e) {
            r.fail(std::string("exception: ") + e.what());
        }
        all = all && r.pass;
        std::cout << "criterion " << i << ": " << (r.pass ? "PASS" : "FAIL") << " " << r.detail << std::endl;
    }
    return all ? 0 : 1;
}

// Command-line front end. Output is assembled completely before anything is printed, so a
// failing command prints only its error. Exit codes: 0 success, 1 parse/usage error, 2 domain error.

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "polarwitt/polarwitt.hpp"

using namespace polarwitt;
using Json = nlohmann::ordered_json;

namespace {

/// Bad command-line usage; reported like a parse error (exit 1).
class UsageError : public Error {
public:
    using Error::Error;
};

struct Options {
    std::uint32_t p = 2;
    std::int64_t d = 0;
    int len = 3;
    bool len_given = false;
    std::int64_t bound = 32;
    std::string format = "text";
    std::string defs;
    std::string alg;
    std::string gens = "x:2";
};

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw UsageError("cannot read " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

GradedField field_of(const Options& o) {
    Prime p(o.p);
    return o.d == 0 ? GradedField::ungraded(p) : GradedField::periodic(p, o.d);
}

DegreeBound bound_of(const Options& o) { return DegreeBound{o.bound, 24}; }

std::vector<Generator> gens_of(const Options& o) {
    Cursor c(o.gens);
    auto g = detail::parse_generator_list(c);
    if (!c.at_end()) c.fail("unexpected input in --gens");
    return g;
}

/// The algebra (and optional polar carrier) a command works in: a definition named by --alg,
/// or the polynomial ring on --gens over the field given by --p/--d.
struct Context {
    PresentationPtr A;
    PolarPtr polar;
};

Context context(const Options& o, bool want_polar) {
    if (!o.alg.empty()) {
        if (o.defs.empty()) throw UsageError("--alg needs --defs");
        auto s = parse_definitions(read_file(o.defs));
        if (auto it = s.polars.find(o.alg); it != s.polars.end()) return {it->second->ambient(), it->second};
        if (auto it = s.algebras.find(o.alg); it != s.algebras.end())
            return {it->second, want_polar ? polarization(it->second) : nullptr};
        throw UsageError("no definition named '" + o.alg + "'");
    }
    if (want_polar) {
        auto P = free_polar(field_of(o), gens_of(o), bound_of(o));
        return {P->ambient(), P};
    }
    return {Presentation::make(field_of(o), gens_of(o), {}, {}, bound_of(o)), nullptr};
}

std::vector<std::string> split_list(const std::string& s) {
    std::vector<std::string> out;
    std::string cur;
    for (char ch : s) {
        if (ch == ',') {
            out.push_back(cur);
            cur.clear();
        } else if (!std::isspace(static_cast<unsigned char>(ch))) {
            cur += ch;
        }
    }
    if (!cur.empty()) out.push_back(cur);
    return out;
}

std::int64_t to_int(const std::string& s, const std::string& what) {
    Cursor c(s);
    auto v = c.integer(true);
    if (!c.at_end()) c.fail("expected an integer for " + what);
    return v;
}

std::string join(const std::vector<std::string>& v, const std::string& sep) {
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? sep : "") + v[i];
    return s;
}

// ---------------------------------------------------------------- rendering

std::string scalar_text(const Json& v) {
    if (v.is_string()) return v.get<std::string>();
    if (v.is_boolean()) return v.get<bool>() ? "yes" : "no";
    return v.dump();
}

/// Text form of a result object: `result` prints bare (arrays joined by ", "), `lines` prints
/// one entry per line, other keys print as `key: value`; arrays of objects become indented rows.
std::string render_text(const Json& out) {
    std::string s;
    for (const auto& [k, v] : out.items()) {
        if (k == "result") {
            if (v.is_array()) {
                std::vector<std::string> parts;
                for (const auto& e : v) parts.push_back(scalar_text(e));
                s += join(parts, ", ") + "\n";
            } else {
                s += scalar_text(v) + "\n";
            }
        } else if (k == "lines") {
            for (const auto& e : v) s += scalar_text(e) + "\n";
        } else if (v.is_array() && !v.empty() && v[0].is_object()) {
            s += k + ":\n";
            for (const auto& row : v) {
                std::vector<std::string> parts;
                for (const auto& [rk, rv] : row.items()) {
                    if (rv.is_array()) {
                        std::vector<std::string> xs;
                        for (const auto& e : rv) xs.push_back(scalar_text(e));
                        parts.push_back(rk + "=" + join(xs, ", "));
                    } else {
                        parts.push_back(rk + "=" + scalar_text(rv));
                    }
                }
                s += "  " + join(parts, " ") + "\n";
            }
        } else if (v.is_array()) {
            std::vector<std::string> parts;
            for (const auto& e : v) parts.push_back(scalar_text(e));
            s += k + ": " + join(parts, ", ") + "\n";
        } else {
            s += k + ": " + scalar_text(v) + "\n";
        }
    }
    return s;
}

// ---------------------------------------------------------------- witt

std::vector<mpz_class> parse_int_vector(const std::string& text) {
    Cursor c(text);
    c.expect('[');
    std::vector<mpz_class> out;
    if (!c.accept(']')) {
        do {
            c.skip_ws();
            std::size_t b = c.pos();
            if (c.peek() == '-') c.reset(c.pos() + 1);
            while (!c.rest().empty() && std::isdigit(static_cast<unsigned char>(c.rest()[0]))) c.reset(c.pos() + 1);
            std::string tok(text.substr(b, c.pos() - b));
            if (tok.empty() || tok == "-") c.fail_at(b, "expected an integer");
            out.emplace_back(tok);
        } while (c.accept(';'));
        c.expect(']');
    }
    if (!c.at_end()) c.fail("unexpected trailing input");
    return out;
}

std::string int_vector_text(const std::vector<mpz_class>& v) {
    std::vector<std::string> parts;
    for (const auto& x : v) parts.push_back(x.get_str());
    return "[" + join(parts, ";") + "]";
}

WittVector read_witt(const Options& o, const Context& c, const std::string& text) {
    auto w = parse_witt(c.A, text, std::nullopt, c.polar);
    if (o.len_given && w.length() + 1 != o.len)
        throw DomainError(ErrorCode::LengthMismatch, text + " has " + std::to_string(w.length() + 1) +
                                                         " components, --len is " + std::to_string(o.len));
    return w;
}

Json witt_command(const std::string& op, const Options& o, const std::vector<std::string>& args, const std::string& elem,
                  const std::string& elem_teich, bool integers) {
    Json out;
    auto need = [&](std::size_t k) {
        if (args.size() != k)
            throw UsageError("witt " + op + " takes " + std::to_string(k) + " vector argument(s)");
    };
    if (integers) {
        Prime p(o.p);
        std::vector<std::vector<mpz_class>> vs;
        for (const auto& a : args) vs.push_back(parse_int_vector(a));
        if (op == "ghost") {
            need(1);
            out["result"] = int_vector_text(ghost_integer(p, vs[0]));
        } else if (op == "add" || op == "mul") {
            need(2);
            out["result"] = int_vector_text(witt_integer_op(p, op == "add" ? '+' : '*', vs[0], vs[1]));
        } else if (op == "neg" || op == "frob") {
            need(1);
            out["result"] = int_vector_text(witt_integer_op(p, op == "neg" ? '-' : 'F', vs[0], {}));
        } else {
            throw UsageError("--int is not available for witt " + op);
        }
        return out;
    }
    const bool polar_cmd = op == "mu";
    Context c = context(o, polar_cmd);
    const int n = o.len - 1;
    if (op == "teich" || ((op == "frob" || op == "ghost") && !elem_teich.empty())) {
        std::string src = op == "teich" ? (elem.empty() ? elem_teich : elem) : elem_teich;
        if (op == "teich" && src.empty()) {
            need(1);
            src = args[0];
        } else {
            need(0);
        }
        if (src.empty()) throw UsageError("witt teich needs --elem");
        auto t = teichmuller(parse_element(c.A, src), n, std::nullopt, c.polar);
        if (op == "teich") out["result"] = t.to_string();
        else if (op == "frob") out["result"] = frobenius(t).to_string();
        else {
            std::vector<std::string> g;
            for (const auto& a : ghost(t)) g.push_back(a.to_string());
            out["result"] = "[" + join(g, ";") + "]";
        }
        return out;
    }
    std::vector<WittVector> vs;
    for (const auto& a : args) vs.push_back(read_witt(o, c, a));
    if (op == "add") {
        need(2);
        out["result"] = witt_add(vs[0], vs[1]).to_string();
    } else if (op == "sub") {
        need(2);
        out["result"] = witt_sub(vs[0], vs[1]).to_string();
    } else if (op == "mul") {
        need(2);
        out["result"] = witt_mul(vs[0], vs[1]).to_string();
    } else if (op == "neg") {
        need(1);
        out["result"] = witt_neg(vs[0]).to_string();
    } else if (op == "frob") {
        need(1);
        out["result"] = frobenius(vs[0]).to_string();
    } else if (op == "versch") {
        need(1);
        out["result"] = verschiebung(vs[0]).to_string();
    } else if (op == "ghost") {
        need(1);
        std::vector<std::string> g;
        for (const auto& a : ghost(vs[0])) g.push_back(a.to_string());
        out["result"] = "[" + join(g, ";") + "]";
    } else if (op == "mu") {
        if (vs.size() != o.p) throw UsageError("witt mu takes exactly p vectors");
        out["result"] = witt_mu(vs).to_string();
    }
    return out;
}

// ---------------------------------------------------------------- polar

Json polar_multipliable(const Options& o, const std::string& h_text, const std::string& counts_text) {
    std::optional<int> h;
    if (h_text != "inf") {
        auto v = to_int(h_text, "--h");
        if (v < 1) throw DomainError(ErrorCode::InvalidArgument, "h must be positive or inf");
        h = static_cast<int>(v);
    }
    std::vector<std::uint64_t> counts;
    for (const auto& s : split_list(counts_text)) {
        auto v = to_int(s, "--counts");
        if (v < 0) throw DomainError(ErrorCode::InvalidArgument, "leaf counts must be non-negative");
        counts.push_back(static_cast<std::uint64_t>(v));
    }
    if (counts.empty()) throw UsageError("--counts needs at least one entry");
    auto m = is_multipliable(counts, Prime(o.p), h);
    Json out;
    out["result"] = m ? "m=" + std::to_string(*m) : std::string("not multipliable");
    return out;
}

Json basis_rows(const PolarAlgebra& P) {
    Json rows = Json::array();
    for (const auto& [e, pc] : P.pieces()) {
        Json row;
        row["degree"] = std::to_string(e);
        Json b = Json::array();
        for (const auto& x : pc.basis) b.push_back(x.to_string());
        row["basis"] = b;
        rows.push_back(row);
    }
    return rows;
}

Json polar_command(const std::string& op, const Options& o) {
    Context c = context(o, true);
    const auto& P = c.polar;
    Json out;
    if (op == "basis") {
        out["dimension"] = std::to_string(P->dimension());
        out["pieces"] = basis_rows(*P);
    } else if (op == "hull") {
        Hull H(P);
        auto chk = is_polar(H.candidate());
        out["polar"] = chk.polar ? std::string("yes") : "no, " + chk.certificate;
        Json gens = Json::array();
        const auto& hc = H.candidate();
        auto basis = P->carrier_basis();
        for (std::size_t i = 0; i < hc.names.size(); ++i) {
            Json g;
            g["name"] = H.algebra()->generators()[i].name;
            g["degree"] = std::to_string(hc.weights[i]);
            g["image"] = basis[i].to_string();
            gens.push_back(g);
        }
        out["generators"] = gens;
        Json rules = Json::array();
        const auto& HA = H.algebra();
        for (const auto& r : HA->rules()) {
            std::map<std::uint32_t, std::uint32_t> mult;
            for (auto i : r.lhs) ++mult[i];
            std::vector<std::string> f;
            for (const auto& [i, m] : mult)
                f.push_back(HA->generators()[i].name + (m > 1 ? "^" + std::to_string(m) : ""));
            AlgElement rhs = AlgElement::zero(HA);
            for (const auto& [i, cf] : r.rhs) rhs = rhs + AlgElement::generator(HA, i).scaled(cf);
            rules.push_back(join(f, "*") + " = " + rhs.to_string());
        }
        out["rules"] = rules;
    } else if (op == "split") {
        Json parts = Json::array();
        for (const auto& [j, Q] : ptypical_split(*P)) {
            Json row;
            row["class"] = std::to_string(j);
            row["dimension"] = std::to_string(Q->dimension());
            Json b = Json::array();
            for (const auto& x : Q->carrier_basis()) b.push_back(x.to_string());
            row["basis"] = b;
            parts.push_back(row);
        }
        out["parts"] = parts;
    } else if (op == "regrade") {
        auto r = regrade(P);
        out["h"] = std::to_string(r.h);
        out["field"] = r.image->field().describe();
        out["identity"] = r.identity ? "yes" : "no";
        Json gens = Json::array();
        const auto& src = P->ambient()->generators();
        const auto& dst = r.image->ambient()->generators();
        for (std::size_t i = 0; i < src.size(); ++i) {
            Json g;
            g["name"] = src[i].name;
            g["from"] = std::to_string(src[i].degree);
            g["to"] = std::to_string(dst[i].degree);
            gens.push_back(g);
        }
        out["generators"] = gens;
        auto rc = retract_check(P);
        out["retract"] = rc.ok ? "identity" : "FAILED";
        out["lines"] = rc.lines;
    }
    return out;
}

// ---------------------------------------------------------------- co-Witt

Json cw_group_json(const CwGroup& G) {
    Json out;
    out["degree"] = std::to_string(G.degree);
    out["extent"] = std::to_string(G.extent);
    out["generators"] = G.names;
    std::vector<std::string> inv;
    for (const auto& x : G.invariants) inv.push_back(x.get_str());
    out["invariants"] = inv;
    out["order"] = G.order.get_str();
    return out;
}

Json cw_example(const Options& o, int upto) {
    const std::int64_t p = o.p;
    std::int64_t top = 2;
    for (int i = 0; i < upto; ++i) top *= p;
    auto P = free_polar(GradedField::ungraded(Prime(o.p)), {{"x", 2}}, DegreeBound{std::max(top, o.bound), 24});
    auto S = CoWittSpace::of(P);
    std::vector<std::int64_t> window;
    for (std::int64_t j = 2; j <= top; j *= p) window.push_back(j);
    auto D = cw_as_dieudonne(S, window);
    Json rows = Json::array();
    for (std::size_t i = 0; i < D.pieces.size(); ++i) {
        const auto& G = D.pieces[i];
        Json row;
        row["degree"] = std::to_string(G.degree);
        row["order"] = G.order.get_str();
        std::vector<std::string> inv;
        for (const auto& x : G.invariants) inv.push_back(x.get_str());
        row["invariants"] = inv;
        row["equals"] = "W_" + std::to_string(i) + "(k)";
        rows.push_back(row);
    }
    Json out;
    out["algebra"] = "free polar on x, |x|=2, " + P->field().describe();
    out["pieces"] = rows;
    out["lines"] = check_dieudonne(D.module).lines;
    return out;
}

Json cw_command(const std::string& op, const Options& o, const std::vector<std::string>& args, std::optional<std::int64_t> j,
                std::optional<int> extent) {
    Context c = context(o, true);
    auto S = CoWittSpace::of(c.polar);
    Json out;
    auto need = [&](std::size_t k) {
        if (args.size() != k) throw UsageError("cw " + op + " takes " + std::to_string(k) + " vector argument(s)");
    };
    std::vector<CoWittVector> vs;
    if (op != "group")
        for (const auto& a : args) vs.push_back(parse_cowitt(S, a, j));
    if (op == "add") {
        need(2);
        out["result"] = cw_add(vs[0], vs[1]).to_string();
    } else if (op == "neg") {
        need(1);
        out["result"] = cw_neg(vs[0]).to_string();
    } else if (op == "frob") {
        need(1);
        out["result"] = cw_F(vs[0]).to_string();
    } else if (op == "versch") {
        need(1);
        out["result"] = cw_V(vs[0]).to_string();
    } else if (op == "group") {
        need(0);
        if (!j) throw UsageError("cw group needs --j");
        out = cw_group_json(cw_group_structure(S, *j, extent));
    }
    return out;
}

// ---------------------------------------------------------------- hopf and dieudonne

Json hopf_command(const std::string& op, const Options& o, std::int64_t j, std::int64_t upto) {
    auto H = hopf_truncation(Prime(o.p), j, upto);
    Json out;
    if (op == "primitives") {
        Json r = Json::array();
        for (const auto& [deg, xs] : primitives(H, upto))
            for (const auto& x : xs) r.push_back(x.to_string());
        out["result"] = r;
    } else if (op == "polar") {
        auto P = polar_part_of_lambda(H);
        Json r = Json::array();
        for (const auto& x : P->carrier_basis()) r.push_back(x.to_string());
        out["result"] = r;
    } else if (op == "check") {
        auto fail = check_hopf_axioms(H);
        out["result"] = fail.empty() ? std::string("coassociative, cocommutative, counital: PASS") : "FAIL " + fail;
    }
    return out;
}

std::vector<mpz_class> json_row(const Json& r, std::size_t n, const std::string& what) {
    if (!r.is_array() || r.size() != n) throw UsageError(what + " must be a row of " + std::to_string(n) + " integers");
    std::vector<mpz_class> out;
    for (const auto& x : r) {
        if (x.is_number_integer()) out.emplace_back(std::to_string(x.get<long long>()));
        else if (x.is_string()) out.emplace_back(x.get<std::string>());
        else throw UsageError(what + " entries must be integers");
    }
    return out;
}

/// {"p":3,"length":1,"generators":[{"name":"g","degree":0}],"relations":[],"F":[[3]],"V":[[1]]}
/// A null F row marks an open boundary.
DieudonneModulePresentation module_from_json(const std::string& text) {
    Json j;
    try {
        j = Json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw UsageError("module file is not valid JSON (byte " + std::to_string(e.byte) + ")");
    }
    try {
        DieudonneModulePresentation M;
        M.p = Prime(j.at("p").get<std::uint32_t>());
        M.length = j.at("length").get<int>();
        for (const auto& g : j.at("generators")) {
            M.names.push_back(g.at("name").get<std::string>());
            M.degrees.push_back(g.at("degree").get<std::int64_t>());
        }
        const auto n = M.size();
        if (j.contains("relations"))
            for (const auto& r : j.at("relations")) M.relations.push_back(json_row(r, n, "relation"));
        if (j.at("F").size() != n || j.at("V").size() != n) throw UsageError("F and V need one row per generator");
        for (const auto& r : j.at("F")) {
            if (r.is_null()) M.F.push_back(std::nullopt);
            else M.F.push_back(json_row(r, n, "F row"));
        }
        for (const auto& r : j.at("V")) M.V.push_back(json_row(r, n, "V row"));
        return M;
    } catch (const nlohmann::json::exception& e) {
        throw UsageError(std::string("module file: ") + e.what());
    }
}

Json dieudonne_command(const Options& o, const std::string& module_file, const std::string& window) {
    DieudonneModulePresentation M;
    if (!module_file.empty()) {
        M = module_from_json(read_file(module_file));
    } else {
        if (window.empty()) throw UsageError("dieudonne check needs --module or --window");
        std::vector<std::int64_t> w;
        for (const auto& s : split_list(window)) w.push_back(to_int(s, "--window"));
        Context c = context(o, true);
        M = cw_as_dieudonne(CoWittSpace::of(c.polar), w).module;
    }
    auto rep = check_dieudonne(M);
    Json out;
    out["lines"] = rep.lines;
    return out;
}

std::vector<std::string> extras(const CLI::App* sc) {
    auto r = sc->remaining();
    for (const auto& a : r)
        if (a.size() > 1 && a[0] == '-' && !std::isdigit(static_cast<unsigned char>(a[1])))
            throw UsageError("unknown option " + a);
    return r;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"graded p-polar algebras, Witt and co-Witt vectors"};
    app.require_subcommand(1);
    Options o;
    // Global options are accepted on every command, before or after the subcommand path.
    auto add_globals = [&o](CLI::App* a) {
        a->add_option("--p", o.p, "prime")->capture_default_str();
        a->add_option("--d", o.d, "degree of u; 0 = ungraded")->capture_default_str();
        a->add_option("--len", o.len, "number of Witt components")
            ->capture_default_str()
            ->each([&o](const std::string&) { o.len_given = true; });
        a->add_option("--bound", o.bound, "degree bound")->capture_default_str();
        a->add_option("--format", o.format, "text or json")->check(CLI::IsMember({"text", "json"}))->capture_default_str();
        a->add_option("--defs", o.defs, "definitions file");
        a->add_option("--alg", o.alg, "definition to work in");
        a->add_option("--gens", o.gens, "generators of the default algebra")->capture_default_str();
    };
    add_globals(&app);

    std::function<Json()> run;

    // witt
    auto* witt = app.add_subcommand("witt", "truncated Witt vectors");
    witt->require_subcommand(1);
    std::vector<std::string> witt_args;
    std::string elem, elem_teich;
    bool integers = false;
    for (const std::string op : {"ghost", "add", "sub", "mul", "neg", "frob", "versch", "teich", "mu"}) {
        auto* sc = witt->add_subcommand(op);
        add_globals(sc);
        sc->allow_extras(); // vectors are read raw: CLI11 would strip their brackets
        if (op == "teich") sc->add_option("--elem", elem);
        if (op == "frob" || op == "ghost" || op == "teich") sc->add_option("--elem-teich", elem_teich);
        if (op == "ghost" || op == "add" || op == "mul" || op == "neg" || op == "frob")
            sc->add_flag("--int", integers, "integer components (Witt vectors over Z)");
        sc->callback([&, op, sc] {
            witt_args = extras(sc);
            run = [&, op] { return witt_command(op, o, witt_args, elem, elem_teich, integers); };
        });
    }

    // polar
    auto* polar = app.add_subcommand("polar", "p-polar algebras");
    polar->require_subcommand(1);
    std::string h_text = "inf", counts_text;
    {
        auto* sc = polar->add_subcommand("multipliable");
        add_globals(sc);
        sc->set_help_flag("--help", "Print this help message and exit");
        sc->add_option("--h", h_text)->capture_default_str();
        sc->add_option("--counts", counts_text)->required();
        sc->callback([&] { run = [&] { return polar_multipliable(o, h_text, counts_text); }; });
    }
    for (const std::string op : {"basis", "hull", "split", "regrade"}) {
        auto* sc = polar->add_subcommand(op);
        add_globals(sc);
        sc->callback([&, op] { run = [&, op] { return polar_command(op, o); }; });
    }

    // co-Witt
    auto* cw = app.add_subcommand("cw", "co-Witt vectors");
    cw->require_subcommand(1);
    std::vector<std::string> cw_args;
    std::optional<std::int64_t> cw_j;
    std::optional<int> cw_extent;
    int upto = 4;
    {
        auto* sc = cw->add_subcommand("example");
        add_globals(sc);
        sc->add_option("--upto", upto)->capture_default_str()->check(CLI::Range(0, 8));
        sc->callback([&] { run = [&] { return cw_example(o, upto); }; });
    }
    for (const std::string op : {"add", "neg", "frob", "versch", "group"}) {
        auto* sc = cw->add_subcommand(op);
        add_globals(sc);
        sc->allow_extras();
        sc->add_option("--j", cw_j, "degree");
        if (op == "group") sc->add_option("--extent", cw_extent);
        sc->callback([&, op, sc] {
            cw_args = extras(sc);
            run = [&, op] { return cw_command(op, o, cw_args, cw_j, cw_extent); };
        });
    }

    // hopf
    auto* hopf = app.add_subcommand("hopf", "the Hopf algebra of Witt components");
    hopf->require_subcommand(1);
    std::int64_t hj = 2, hupto = 8;
    for (const std::string op : {"primitives", "polar", "check"}) {
        auto* sc = hopf->add_subcommand(op);
        add_globals(sc);
        sc->add_option("--j", hj)->capture_default_str();
        sc->add_option("--upto", hupto)->capture_default_str();
        sc->callback([&, op] { run = [&, op] { return hopf_command(op, o, hj, hupto); }; });
    }

    // dieudonne
    auto* dd = app.add_subcommand("dieudonne", "graded Dieudonne modules");
    dd->require_subcommand(1);
    std::string module_file, window;
    {
        auto* sc = dd->add_subcommand("check");
        add_globals(sc);
        sc->add_option("--module", module_file, "JSON module file");
        sc->add_option("--window", window, "co-Witt degree window, e.g. 2,4,8");
        sc->callback([&] { run = [&] { return dieudonne_command(o, module_file, window); }; });
    }

    try {
        try {
            app.parse(argc, argv);
        } catch (const CLI::ParseError& e) {
            return app.exit(e) == 0 ? 0 : 1;
        }
        if (o.len < 1) throw UsageError("--len must be at least 1");
        Json out = run();
        std::string text = o.format == "json" ? out.dump(2) + "\n" : render_text(out);
        std::cout << text;
        return 0;
    } catch (const ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const DomainError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}

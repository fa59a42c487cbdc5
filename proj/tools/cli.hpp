#pragma once

// Command-line front end: flag parsing, the expression grammar over algebra
// atoms, command dispatch, and machine-readable emitters.  Kept header-only so
// the parser and dispatcher are unit-testable.

#include <cmath>
#include <complex>
#include <cstdio>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "cqk/cfunc.hpp"
#include "cqk/haar.hpp"
#include "cqk/qtrace.hpp"
#include "verify.hpp"

namespace cqk::cli {

// --- errors and exit codes --------------------------------------------------

inline constexpr int kExitOk = 0;
inline constexpr int kExitVerifyFail = 2;
inline constexpr int kExitParse = 3;
inline constexpr int kExitDomain = 4;

/// Syntax error with the byte offset of the offending character.
struct ParseError : Error {
    size_t offset;
    ParseError(const std::string& msg, size_t off)
        : Error(msg + " at byte " + std::to_string(off)), offset(off) {}
};

// --- expression grammar -----------------------------------------------------
//
// expr := atom ('*' atom)*
// atom := '1' | 'mon(' fam ',' m ',' p ',' r ')' | 'mc(' wt ';' int ';' int ')'
//       | 'a(' wt ')' | 'astar(' wt ')' | 'd(' cwt ')'
// wt   := '[' ints ']' | 'rho' | '2rho'
// cwt  := '[' complex (';' complex)* ']' with complex := re | re ',' im

struct Atom {
    enum class Kind { Unit, Mon, Mc, A, Astar, D };
    Kind kind = Kind::Unit;
    int fam = 0;
    long m = 0, p = 0, r = 0;  // Mon
    WKey wt;                   // Mc / A / Astar, explicit coordinates
    int rho_mult = 0;          // nonzero: wt = rho_mult * rho (printed symbolically)
    size_t li = 0, vi = 0;     // Mc, 1-based
    WeightC cwt;               // D
};

struct Expression {
    std::vector<Atom> atoms;
    std::string print() const;
};

namespace detail {

struct Cursor {
    const std::string& s;
    size_t i = 0;

    void skip() {
        while (i < s.size() && (s[i] == ' ' || s[i] == '\t')) ++i;
    }
    bool eat(char c) {
        skip();
        if (i < s.size() && s[i] == c) {
            ++i;
            return true;
        }
        return false;
    }
    void expect(char c) {
        if (!eat(c)) throw ParseError(std::string("expected '") + c + "'", i);
    }
    long integer() {
        skip();
        size_t start = i;
        if (i < s.size() && (s[i] == '-' || s[i] == '+')) ++i;
        while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
        if (i == start || (i == start + 1 && !std::isdigit(static_cast<unsigned char>(s[start]))))
            throw ParseError("expected integer", start);
        return std::stol(s.substr(start, i - start));
    }
    double number() {
        skip();
        size_t start = i;
        if (i < s.size() && (s[i] == '-' || s[i] == '+')) ++i;
        while (i < s.size() && (std::isdigit(static_cast<unsigned char>(s[i])) || s[i] == '.' ||
                                s[i] == 'e' || s[i] == 'E' ||
                                ((s[i] == '-' || s[i] == '+') &&
                                 (s[i - 1] == 'e' || s[i - 1] == 'E'))))
            ++i;
        if (i == start) throw ParseError("expected number", start);
        return std::stod(s.substr(start, i - start));
    }
    std::string ident() {
        skip();
        size_t start = i;
        while (i < s.size() && (std::isalnum(static_cast<unsigned char>(s[i])))) ++i;
        return s.substr(start, i - start);
    }
};

inline void parse_weight(Cursor& c, Atom& a) {
    c.skip();
    if (c.i < c.s.size() && (c.s[c.i] == 'r' || c.s[c.i] == '2')) {
        size_t start = c.i;
        std::string id = c.ident();
        if (id == "rho") {
            a.rho_mult = 1;
            return;
        }
        if (id == "2rho") {
            a.rho_mult = 2;
            return;
        }
        throw ParseError("unknown weight name '" + id + "'", start);
    }
    c.expect('[');
    a.wt.push_back(c.integer());
    while (c.eat(',')) a.wt.push_back(c.integer());
    c.expect(']');
}

inline void parse_cweight(Cursor& c, Atom& a) {
    c.expect('[');
    do {
        double re = c.number();
        double im = 0.0;
        if (c.eat(',')) im = c.number();
        a.cwt.push_back({re, im});
    } while (c.eat(';'));
    c.expect(']');
}

inline Atom parse_atom(Cursor& c) {
    c.skip();
    size_t start = c.i;
    if (c.eat('1')) return Atom{};
    std::string id = c.ident();
    Atom a;
    if (id == "mon") {
        a.kind = Atom::Kind::Mon;
        c.expect('(');
        a.fam = int(c.integer());
        c.expect(',');
        a.m = c.integer();
        c.expect(',');
        a.p = c.integer();
        c.expect(',');
        a.r = c.integer();
        c.expect(')');
        if (a.fam != 1 && a.fam != 2) throw ParseError("monomial family must be 1 or 2", start);
        if (a.m < 0 || a.p < 0 || a.r < 0) throw ParseError("monomial exponents must be >= 0", start);
        return a;
    }
    if (id == "mc") {
        a.kind = Atom::Kind::Mc;
        c.expect('(');
        parse_weight(c, a);
        c.expect(';');
        long l = c.integer();
        c.expect(';');
        long v = c.integer();
        c.expect(')');
        if (l < 1 || v < 1) throw ParseError("coefficient indices are 1-based", start);
        a.li = size_t(l);
        a.vi = size_t(v);
        return a;
    }
    if (id == "a" || id == "astar") {
        a.kind = id == "a" ? Atom::Kind::A : Atom::Kind::Astar;
        c.expect('(');
        parse_weight(c, a);
        c.expect(')');
        return a;
    }
    if (id == "d") {
        a.kind = Atom::Kind::D;
        c.expect('(');
        parse_cweight(c, a);
        c.expect(')');
        return a;
    }
    throw ParseError("unknown atom '" + id + "'", start);
}

inline std::string fmt_double(double x) {
    std::ostringstream os;
    os.precision(15);
    os << x;
    return os.str();
}

}  // namespace detail

inline Expression parse_expression(const std::string& text) {
    detail::Cursor c{text};
    Expression e;
    e.atoms.push_back(detail::parse_atom(c));
    while (c.eat('*')) e.atoms.push_back(detail::parse_atom(c));
    c.skip();
    if (c.i != text.size()) throw ParseError("trailing input", c.i);
    return e;
}

inline std::string Expression::print() const {
    std::string out;
    for (size_t k = 0; k < atoms.size(); ++k) {
        if (k) out += " * ";
        const Atom& a = atoms[k];
        std::ostringstream os;
        auto wt_str = [&]() -> std::string {
            if (a.rho_mult == 1) return "rho";
            if (a.rho_mult == 2) return "2rho";
            std::string s = "[";
            for (size_t i = 0; i < a.wt.size(); ++i)
                s += (i ? "," : "") + std::to_string(a.wt[i]);
            return s + "]";
        };
        switch (a.kind) {
            case Atom::Kind::Unit: os << "1"; break;
            case Atom::Kind::Mon:
                os << "mon(" << a.fam << "," << a.m << "," << a.p << "," << a.r << ")";
                break;
            case Atom::Kind::Mc:
                os << "mc(" << wt_str() << ";" << a.li << ";" << a.vi << ")";
                break;
            case Atom::Kind::A: os << "a(" << wt_str() << ")"; break;
            case Atom::Kind::Astar: os << "astar(" << wt_str() << ")"; break;
            case Atom::Kind::D: {
                os << "d([";
                for (size_t i = 0; i < a.cwt.size(); ++i) {
                    if (i) os << ";";
                    os << detail::fmt_double(a.cwt[i].real()) << ","
                       << detail::fmt_double(a.cwt[i].imag());
                }
                os << "])";
                break;
            }
        }
        out += os.str();
    }
    return out;
}

// --- run configuration ------------------------------------------------------

struct RunConfig {
    std::string group = "A1";
    std::optional<WeylWord> word;      // default: longest element
    std::vector<double> torus_turns;   // empty: symbolic torus point
    QParams par = QParams::exact(Rational(2), 32);
    std::string format = "json";       // json | csv | text
    std::string expr;
    std::string lambda;
    std::string suite = "all";
    bool sweep = false;
};

inline WeylWord parse_word(const std::string& s) {
    WeylWord w;
    std::stringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, ','))
        if (!tok.empty()) w.push_back(std::stoi(tok));
    return w;
}

inline Rational parse_rational(const std::string& s) {
    auto slash = s.find('/');
    if (slash == std::string::npos) return Rational(std::stol(s));
    return Rational(std::stol(s.substr(0, slash)), std::stol(s.substr(slash + 1)));
}

/// Spectral parameter: coordinates separated by ';', each "re" or "re,im";
/// enclosing brackets optional.
inline WeightC parse_lambda(std::string s) {
    if (!s.empty() && s.front() == '[') s = s.substr(1);
    if (!s.empty() && s.back() == ']') s.pop_back();
    WeightC out;
    std::stringstream ss(s);
    std::string coord;
    while (std::getline(ss, coord, ';')) {
        auto comma = coord.find(',');
        double re = std::stod(coord.substr(0, comma));
        double im = comma == std::string::npos ? 0.0 : std::stod(coord.substr(comma + 1));
        out.push_back({re, im});
    }
    if (out.empty()) throw Error("empty spectral parameter");
    return out;
}

inline RunConfig parse_args(const std::vector<std::string>& args) {
    RunConfig cfg;
    bool mode_set = false;
    std::string qstr;
    for (size_t i = 0; i < args.size(); ++i) {
        const std::string& a = args[i];
        auto next = [&]() -> const std::string& {
            if (i + 1 >= args.size()) throw Error("missing value for " + a);
            return args[++i];
        };
        if (a == "--group") cfg.group = next();
        else if (a == "--word") cfg.word = parse_word(next());
        else if (a == "--t") {
            std::stringstream ss(next());
            std::string tok;
            while (std::getline(ss, tok, ','))
                if (!tok.empty()) cfg.torus_turns.push_back(std::stod(tok));
        } else if (a == "--q") qstr = next();
        else if (a == "--mode") {
            std::string m = next();
            if (m == "exact") cfg.par.mode = Mode::Exact;
            else if (m == "float") cfg.par.mode = Mode::Float;
            else throw Error("mode must be exact or float");
            mode_set = true;
        } else if (a == "--trunc") cfg.par.trunc = std::stoi(next());
        else if (a == "--tol") cfg.par.tol = std::stod(next());
        else if (a == "--format") cfg.format = next();
        else if (a == "--expr" || a == "--op") cfg.expr = next();
        else if (a == "--lambda") cfg.lambda = next();
        else if (a == "--suite") cfg.suite = next();
        else if (a == "--sweep") cfg.sweep = true;
        else throw Error("unknown flag " + a);
    }
    if (!mode_set && (!cfg.lambda.empty() || !cfg.torus_turns.empty())) cfg.par.mode = Mode::Float;
    if (!qstr.empty()) {
        if (cfg.par.mode == Mode::Exact) cfg.par.q_exact = parse_rational(qstr);
        else cfg.par.q_float = std::stod(qstr);
    }
    if (cfg.format != "json" && cfg.format != "csv" && cfg.format != "text")
        throw Error("format must be json, csv, or text");
    cfg.par.validate();
    return cfg;
}

// --- evaluation -------------------------------------------------------------

/// Per-process cache of irreducible modules keyed by (group label, weight).
inline std::shared_ptr<const UqModule> module_cached(const CartanDatum& cd,
                                                     const std::string& group,
                                                     const WKey& La) {
    static std::map<std::pair<std::string, WKey>, std::shared_ptr<const UqModule>> cache;
    auto key = std::make_pair(group, La);
    auto it = cache.find(key);
    if (it == cache.end())
        it = cache.emplace(key, std::make_shared<const UqModule>(build_irreducible(cd, La)))
                 .first;
    return it->second;
}

inline WKey resolve_weight(const Atom& a, int rank) {
    if (a.rho_mult) return WKey(size_t(rank), a.rho_mult);
    if (a.wt.size() != size_t(rank)) throw Error("weight rank mismatch in expression");
    return a.wt;
}

template <class S>
TensorOp<S> evaluate_atom(const RepContext& ctx, const std::string& group, const Atom& a) {
    switch (a.kind) {
        case Atom::Kind::Unit: return TensorOp<S>::identity(ctx);
        case Atom::Kind::Mon: {
            if (ctx.cd.rank != 1)
                throw Error("mon(...) atoms need the rank-one group A1");
            return evaluate_su2_element<S>(ctx, NormalFormElem::monomial(a.fam, a.m, a.p, a.r));
        }
        case Atom::Kind::Mc: {
            WKey La = resolve_weight(a, ctx.cd.rank);
            auto M = module_cached(ctx.cd, group, La);
            if (a.li > M->dim || a.vi > M->dim)
                throw Error("coefficient index exceeds module dimension " +
                            std::to_string(M->dim));
            MatrixCoefficient c;
            c.M = M;
            c.l = Vec(M->dim);
            c.v = Vec(M->dim);
            c.l[a.li - 1] = RatQ(1);
            c.v[a.vi - 1] = RatQ(1);
            return evaluate_coefficient<S>(ctx, c);
        }
        case Atom::Kind::A: return a_operator<S>(ctx, resolve_weight(a, ctx.cd.rank));
        case Atom::Kind::Astar:
            return a_operator<S>(ctx, resolve_weight(a, ctx.cd.rank), true);
        case Atom::Kind::D: {
            if (a.cwt.size() != size_t(ctx.cd.rank))
                throw Error("spectral weight rank mismatch in expression");
            if constexpr (std::is_same_v<S, std::complex<double>>) {
                return d_operator(ctx, a.cwt);
            } else {
                WKey mu(a.cwt.size());
                for (size_t i = 0; i < a.cwt.size(); ++i) {
                    double re = a.cwt[i].real();
                    long r = std::lround(re);
                    if (a.cwt[i].imag() != 0.0 || re != double(r))
                        throw Error("exact mode needs an integral spectral weight in d(...)");
                    mu[i] = r;
                }
                return d_operator_exact<S>(ctx, mu);
            }
        }
    }
    throw Error("unreachable atom kind");
}

template <class S>
TensorOp<S> evaluate_expression(const RepContext& ctx, const std::string& group,
                                const Expression& e) {
    TensorOp<S> out = evaluate_atom<S>(ctx, group, e.atoms[0]);
    for (size_t k = 1; k < e.atoms.size(); ++k)
        out = out * evaluate_atom<S>(ctx, group, e.atoms[k]);
    return out;
}

// --- emitters ---------------------------------------------------------------

/// One output field: key, pre-rendered value, and whether the value is a raw
/// JSON token (number / boolean / null) as opposed to a string.
struct Field {
    std::string key;
    std::string value;
    bool raw = false;
};
using Fields = std::vector<Field>;

inline std::string json_escape(const std::string& s) {
    std::string out;
    for (char c : s) {
        if (c == '"' || c == '\\') out += '\\';
        out += c;
    }
    return out;
}

inline void emit(FILE* f, const std::string& format, const Fields& fields) {
    if (format == "json") {
        std::string out = "{";
        for (size_t i = 0; i < fields.size(); ++i) {
            if (i) out += ",";
            out += "\"" + fields[i].key + "\":";
            out += fields[i].raw ? fields[i].value : "\"" + json_escape(fields[i].value) + "\"";
        }
        out += "}\n";
        std::fputs(out.c_str(), f);
    } else if (format == "csv") {
        std::string h, r;
        for (size_t i = 0; i < fields.size(); ++i) {
            if (i) {
                h += ",";
                r += ",";
            }
            h += fields[i].key;
            std::string v = fields[i].value;
            if (v.find(',') != std::string::npos) v = "\"" + v + "\"";
            r += v;
        }
        std::fputs((h + "\n" + r + "\n").c_str(), f);
    } else {
        for (const auto& fd : fields)
            std::fprintf(f, "%s: %s\n", fd.key.c_str(), fd.value.c_str());
    }
}

inline std::string num(double x) { return detail::fmt_double(x); }

inline Fields result_fields(const HaarResult& r) {
    Fields f;
    f.push_back({"value_re", num(r.value.real()), true});
    f.push_back({"value_im", num(r.value.imag()), true});
    f.push_back({"tail_bound", num(r.tail), true});
    f.push_back({"certified", r.certified ? "true" : "false", true});
    if (r.has_exact)
        f.push_back({"exact", r.exact.str(), false});
    else
        f.push_back({"exact", "null", true});
    return f;
}

// --- commands ---------------------------------------------------------------

inline TorusPoint torus_from(const RunConfig& cfg, size_t rank) {
    if (cfg.torus_turns.empty()) return TorusPoint::symbolic();
    if (cfg.torus_turns.size() != rank) throw Error("torus point rank mismatch");
    if (cfg.par.mode == Mode::Exact)
        throw Error("numeric torus angles require float mode");
    std::vector<std::complex<double>> z;
    for (double a : cfg.torus_turns)
        z.push_back(std::polar(1.0, 2.0 * M_PI * a));
    return TorusPoint::numeric(std::move(z));
}

inline int cmd_haar(const RunConfig& cfg, FILE* out) {
    auto cd = build_cartan(cfg.group);
    if (cfg.expr.empty()) throw Error("haar needs --expr");
    Expression e = parse_expression(cfg.expr);
    WeylWord w = cfg.word ? *cfg.word : longest_element(cd);
    auto ctx = make_context(cd, w, torus_from(cfg, size_t(cd.rank)), cfg.par);
    HaarResult r;
    if (cfg.par.mode == Mode::Exact)
        r = haar_trace(ctx, evaluate_expression<EdgeScalar>(ctx, cfg.group, e));
    else
        r = haar_trace(ctx, evaluate_expression<std::complex<double>>(ctx, cfg.group, e));
    Fields f;
    f.push_back({"command", "haar", false});
    f.push_back({"expr", e.print(), false});
    for (auto& kv : result_fields(r)) f.push_back(kv);
    emit(out, cfg.format, f);
    return kExitOk;
}

inline int cmd_qtr(const RunConfig& cfg, FILE* out) {
    auto cd = build_cartan(cfg.group);
    if (cfg.expr.empty()) throw Error("qtr needs --op");
    Expression e = parse_expression(cfg.expr);
    WeylWord w = cfg.word ? *cfg.word : longest_element(cd);
    auto qc = make_qtrace_context(make_context(cd, w, torus_from(cfg, size_t(cd.rank)), cfg.par));
    HaarResult r;
    if (cfg.par.mode == Mode::Exact)
        r = qtr(qc, evaluate_expression<EdgeScalar>(qc.rep, cfg.group, e));
    else
        r = qtr(qc, evaluate_expression<std::complex<double>>(qc.rep, cfg.group, e));
    Fields f;
    f.push_back({"command", "qtr", false});
    f.push_back({"expr", e.print(), false});
    for (auto& kv : result_fields(r)) f.push_back(kv);
    f.push_back({"const_w", qc.cw.str(), false});
    emit(out, cfg.format, f);
    return kExitOk;
}

inline int cmd_cfunc(const RunConfig& cfg, FILE* out) {
    auto cd = build_cartan(cfg.group);
    if (cfg.lambda.empty()) throw Error("cfunc needs --lambda");
    WeightC la = parse_lambda(cfg.lambda);
    if (la.size() != size_t(cd.rank)) throw Error("lambda rank mismatch");
    WeylWord w = cfg.word ? *cfg.word : longest_element(cd);
    if (cfg.sweep) {
        std::fputs("scale,trace_re,trace_im,product_re,product_im,abs_diff\n", out);
        for (int step = 1; step <= 12; ++step) {
            double s = 0.25 * step;
            WeightC ls(la.size());
            for (size_t i = 0; i < la.size(); ++i) ls[i] = s * la[i];
            CFunctionQuery qy{cd, w, ls, cfg.par};
            auto tr = c_function_trace(qy);
            auto pr = c_function_product(qy);
            std::fprintf(out, "%s,%s,%s,%s,%s,%s\n", num(s).c_str(),
                         num(tr.value.real()).c_str(), num(tr.value.imag()).c_str(),
                         num(pr.value.real()).c_str(), num(pr.value.imag()).c_str(),
                         num(std::abs(tr.value - pr.value)).c_str());
        }
        return kExitOk;
    }
    CFunctionQuery qy{cd, w, la, cfg.par};
    auto tr = c_function_trace(qy);
    auto pr = c_function_product(qy);
    Fields f;
    f.push_back({"command", "cfunc", false});
    f.push_back({"trace_re", num(tr.value.real()), true});
    f.push_back({"trace_im", num(tr.value.imag()), true});
    f.push_back({"trace_tail", num(tr.tail), true});
    f.push_back({"product_re", num(pr.value.real()), true});
    f.push_back({"product_im", num(pr.value.imag()), true});
    f.push_back({"abs_diff", num(std::abs(tr.value - pr.value)), true});
    f.push_back({"exact_trace", tr.has_exact ? tr.exact.str() : "null", !tr.has_exact});
    f.push_back({"exact_product", pr.has_exact ? pr.exact.str() : "null", !pr.has_exact});
    emit(out, cfg.format, f);
    return kExitOk;
}

inline int cmd_verify(const RunConfig& cfg, FILE* out) {
    static const std::map<std::string, int> suites = {
        {"su2-haar", 1},    {"unit", 2},        {"vanishing", 3},  {"schur", 4},
        {"extreme", 5},     {"trace-norm", 6},  {"cfunc", 7},      {"multiplicativity", 8},
        {"properties", 9},  {"word-indep", 10}, {"cross-mode", 11}};
    std::vector<int> ids;
    if (cfg.suite == "all") {
        for (int i = 1; i <= 11; ++i) ids.push_back(i);
    } else if (auto it = suites.find(cfg.suite); it != suites.end()) {
        ids.push_back(it->second);
    } else {
        try {
            ids.push_back(std::stoi(cfg.suite));
        } catch (...) {
            throw Error("unknown suite '" + cfg.suite + "'");
        }
    }
    int failures = 0;
    for (int id : ids) {
        auto r = verify::run_criterion(id);
        std::fprintf(out, "[%s] criterion %2d: %s — %s\n", r.pass ? "PASS" : "FAIL", r.id,
                     r.name.c_str(), r.detail.c_str());
        if (!r.pass) ++failures;
    }
    return failures ? kExitVerifyFail : kExitOk;
}

inline int cmd_info(const RunConfig& cfg, FILE* out) {
    auto cd = build_cartan(cfg.group);
    WeylWord w0 = longest_element(cd);
    Fields f;
    f.push_back({"command", "info", false});
    f.push_back({"group", cfg.group, false});
    f.push_back({"rank", std::to_string(cd.rank), true});
    f.push_back({"positive_roots", std::to_string(cd.pos_roots.size()), true});
    std::string ws;
    for (size_t i = 0; i < w0.size(); ++i) ws += (i ? "," : "") + std::to_string(w0[i]);
    f.push_back({"longest_word", ws, false});
    f.push_back({"const_longest", const_w(cd, w0).str(), false});
    emit(out, cfg.format, f);
    return kExitOk;
}

inline int dispatch(const std::string& cmd, const RunConfig& cfg, FILE* out) {
    if (cmd == "haar") return cmd_haar(cfg, out);
    if (cmd == "qtr") return cmd_qtr(cfg, out);
    if (cmd == "cfunc") return cmd_cfunc(cfg, out);
    if (cmd == "verify") return cmd_verify(cfg, out);
    if (cmd == "info") return cmd_info(cfg, out);
    throw Error("unknown command '" + cmd + "'");
}

inline int run(int argc, char** argv, FILE* out, FILE* err) {
    if (argc < 2) {
        std::fputs(
            "usage: cqk <haar|qtr|cfunc|verify|info> [flags]\n"
            "  --group A1|A2|A3|B2|...   --word 1,2,1   --t 0.25,0.5 (turns)\n"
            "  --mode exact|float  --q 2 or 3/2  --trunc K  --tol eps\n"
            "  --expr/--op \"a(2rho)*astar(2rho)\"  --lambda \"0,-2;0,-2\"  --sweep\n"
            "  --suite all|<name>|<id>  --format json|csv|text\n",
            err);
        return kExitParse;
    }
    std::string cmd = argv[1];
    try {
        RunConfig cfg = parse_args({argv + 2, argv + argc});
        return dispatch(cmd, cfg, out);
    } catch (const ParseError& e) {
        std::fprintf(err, "parse error: %s\n", e.what());
        return kExitParse;
    } catch (const DomainError& e) {
        std::fprintf(err, "domain error: %s\n", e.what());
        return kExitDomain;
    } catch (const PoleError& e) {
        std::fprintf(err, "pole: %s\n", e.what());
        return kExitDomain;
    } catch (const NotSummable& e) {
        std::fprintf(err, "divergent: %s\n", e.what());
        return kExitDomain;
    } catch (const Error& e) {
        std::fprintf(err, "error: %s\n", e.what());
        return kExitParse;
    }
}

}  // namespace cqk::cli

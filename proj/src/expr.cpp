#include "tadic/expr.hpp"

#include <algorithm>
#include <cctype>
#include <functional>
#include <sstream>

namespace tadic::expr {

namespace {

TermPtr mk(Sort s, Op op, std::vector<TermPtr> args = {}) {
    auto t = std::make_shared<Term>();
    t->sort = s;
    t->op = op;
    t->args = std::move(args);
    return t;
}

}  // namespace

TermPtr v_var(const std::string& name) {
    auto t = mk(Sort::Val, Op::VVar);
    std::const_pointer_cast<Term>(t)->name = name;
    return t;
}

TermPtr v_const(FieldElement k) {
    auto t = mk(Sort::Val, Op::VConst);
    std::const_pointer_cast<Term>(t)->kconst = std::move(k);
    return t;
}

TermPtr v_add(TermPtr a, TermPtr b) { return mk(Sort::Val, Op::VAdd, {std::move(a), std::move(b)}); }
TermPtr v_sub(TermPtr a, TermPtr b) { return mk(Sort::Val, Op::VSub, {std::move(a), std::move(b)}); }
TermPtr v_neg(TermPtr a) { return mk(Sort::Val, Op::VNeg, {std::move(a)}); }
TermPtr v_mul(TermPtr a, TermPtr b) { return mk(Sort::Val, Op::VMul, {std::move(a), std::move(b)}); }

TermPtr v_pow(TermPtr a, long long k) {
    auto t = mk(Sort::Val, Op::VPow, {std::move(a)});
    std::const_pointer_cast<Term>(t)->iconst = k;
    return t;
}

TermPtr i_ord(TermPtr val) { return mk(Sort::Int, Op::IOrd, {std::move(val)}); }
TermPtr i_min(TermPtr a, TermPtr b) { return mk(Sort::Int, Op::IMin, {std::move(a), std::move(b)}); }

static void collect_vars(const TermPtr& t, std::vector<std::string>& out) {
    if (t->op == Op::VVar) {
        if (std::find(out.begin(), out.end(), t->name) == out.end()) out.push_back(t->name);
    }
    for (const auto& a : t->args) collect_vars(a, out);
}

std::vector<std::string> free_vars(const TermPtr& t) {
    std::vector<std::string> out;
    collect_vars(t, out);
    return out;
}

// ---------------------------------------------------------------------------
// Tokenizer / parser
// ---------------------------------------------------------------------------

namespace {

enum class Tok { End, Ident, Number, LParen, RParen, LBracket, RBracket, Comma,
                 Plus, Minus, Star, Caret, Pipe, Eq, Le, Lt };

struct Lexer {
    std::string s;
    size_t i = 0;
    Tok tok = Tok::End;
    std::string ident;
    long long number = 0;
    size_t tok_pos = 0;

    explicit Lexer(std::string text) : s(std::move(text)) { next(); }

    [[noreturn]] void fail(const std::string& what) const {
        throw InputError("parse error at position " + std::to_string(tok_pos) + ": " + what);
    }

    void next() {
        while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
        tok_pos = i;
        if (i >= s.size()) { tok = Tok::End; return; }
        char c = s[i];
        if (std::isdigit(static_cast<unsigned char>(c))) {
            size_t j = i;
            while (j < s.size() && std::isdigit(static_cast<unsigned char>(s[j]))) ++j;
            number = std::stoll(s.substr(i, j - i));
            i = j;
            tok = Tok::Number;
            return;
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            size_t j = i;
            while (j < s.size() && (std::isalnum(static_cast<unsigned char>(s[j])) || s[j] == '_')) ++j;
            ident = s.substr(i, j - i);
            i = j;
            tok = Tok::Ident;
            return;
        }
        ++i;
        switch (c) {
            case '(': tok = Tok::LParen; return;
            case ')': tok = Tok::RParen; return;
            case '[': tok = Tok::LBracket; return;
            case ']': tok = Tok::RBracket; return;
            case ',': tok = Tok::Comma; return;
            case '+': tok = Tok::Plus; return;
            case '-': tok = Tok::Minus; return;
            case '*': tok = Tok::Star; return;
            case '^': tok = Tok::Caret; return;
            case '|': tok = Tok::Pipe; return;
            case '=': tok = Tok::Eq; return;
            case '<':
                if (i < s.size() && s[i] == '=') { ++i; tok = Tok::Le; } else { tok = Tok::Lt; }
                return;
            default:
                tok_pos = i - 1;
                fail(std::string("unexpected character '") + c + "'");
        }
    }
};

// Parse result with integer literals kept pending until a sorted context
// forces them.
struct P {
    TermPtr t;          // null when literal
    long long lit = 0;
    bool is_lit() const { return t == nullptr; }
};

struct Parser {
    Lexer lx;
    const Context& ctx;
    const std::map<std::string, Sort>& var_sorts;

    Parser(const std::string& text, const Context& c, const std::map<std::string, Sort>& vs)
        : lx(text), ctx(c), var_sorts(vs) {}

    bool is_kw(const char* kw) const { return lx.tok == Tok::Ident && lx.ident == kw; }

    TermPtr to_val(const P& p) {
        if (p.is_lit()) return v_const(FieldElement::of_int(ctx.F(), p.lit));
        if (p.t->sort == Sort::Val) return p.t;
        if (p.t->sort == Sort::Res && p.t->op == Op::RConst) {
            // residue constant embedded at t^0
            return v_const(FieldElement::from_coeffs(ctx.F(), 0, {p.t->rconst}));
        }
        lx.fail("expected a valued-field term");
    }
    TermPtr to_int(const P& p) {
        if (p.is_lit()) {
            auto t = mk(Sort::Int, Op::IConst);
            std::const_pointer_cast<Term>(t)->iconst = p.lit;
            return t;
        }
        if (p.t->sort == Sort::Int) return p.t;
        lx.fail("expected an integer-sort term");
    }
    TermPtr to_res(const P& p) {
        if (p.is_lit()) {
            auto t = mk(Sort::Res, Op::RConst);
            std::const_pointer_cast<Term>(t)->rconst = ResidueElement::of_int(ctx.F(), p.lit);
            return t;
        }
        if (p.t->sort == Sort::Res) return p.t;
        lx.fail("expected a residue-sort term");
    }
    TermPtr to_bool(const P& p) {
        if (!p.is_lit() && p.t->sort == Sort::Bool) return p.t;
        lx.fail("expected a boolean formula");
    }

    P parse_or() {
        P a = parse_and();
        while (is_kw("or")) {
            lx.next();
            P b = parse_and();
            a = P{mk(Sort::Bool, Op::BOr, {to_bool(a), to_bool(b)})};
        }
        return a;
    }

    P parse_and() {
        P a = parse_not();
        while (is_kw("and")) {
            lx.next();
            P b = parse_not();
            a = P{mk(Sort::Bool, Op::BAnd, {to_bool(a), to_bool(b)})};
        }
        return a;
    }

    P parse_not() {
        if (is_kw("not")) {
            lx.next();
            P a = parse_not();
            return P{mk(Sort::Bool, Op::BNot, {to_bool(a)})};
        }
        return parse_cmp();
    }

    P parse_cmp() {
        P a = parse_add();
        if (lx.tok == Tok::Pipe) {
            if (!a.is_lit()) lx.fail("divisibility needs an integer literal modulus on the left");
            if (a.lit <= 0) lx.fail("divisibility modulus must be positive");
            lx.next();
            P b = parse_add();
            auto t = mk(Sort::Bool, Op::BDivides, {to_int(b)});
            std::const_pointer_cast<Term>(t)->iconst = a.lit;
            return P{t};
        }
        Op op;
        if (lx.tok == Tok::Eq) op = Op::BEqInt;
        else if (lx.tok == Tok::Le) op = Op::BLeInt;
        else if (lx.tok == Tok::Lt) op = Op::BLtInt;
        else return a;
        lx.next();
        P b = parse_add();
        bool res_side = (!a.is_lit() && a.t->sort == Sort::Res) ||
                        (!b.is_lit() && b.t->sort == Sort::Res);
        if (res_side) {
            if (op != Op::BEqInt) lx.fail("residue sort supports '=' only");
            return P{mk(Sort::Bool, Op::BEqRes, {to_res(a), to_res(b)})};
        }
        return P{mk(Sort::Bool, op, {to_int(a), to_int(b)})};
    }

    Sort dominant(const P& a, const P& b) {
        // literals adapt; Res constants may lift to Val when mixed with Val
        Sort sa = a.is_lit() ? Sort::Int : a.t->sort;
        Sort sb = b.is_lit() ? Sort::Int : b.t->sort;
        if (sa == Sort::Val || sb == Sort::Val) return Sort::Val;
        if (sa == Sort::Res || sb == Sort::Res) return Sort::Res;
        return Sort::Int;
    }

    P parse_add() {
        P a = parse_mul();
        while (lx.tok == Tok::Plus || lx.tok == Tok::Minus) {
            bool plus = lx.tok == Tok::Plus;
            lx.next();
            P b = parse_mul();
            if (a.is_lit() && b.is_lit()) {
                a.lit = plus ? a.lit + b.lit : a.lit - b.lit;
                continue;
            }
            Sort s = dominant(a, b);
            if (s == Sort::Val) {
                a = P{mk(Sort::Val, plus ? Op::VAdd : Op::VSub, {to_val(a), to_val(b)})};
            } else if (s == Sort::Int) {
                a = P{mk(Sort::Int, plus ? Op::IAdd : Op::ISub, {to_int(a), to_int(b)})};
            } else {
                lx.fail("residue-sort arithmetic is not part of the language");
            }
        }
        return a;
    }

    P parse_mul() {
        P a = parse_unary();
        while (lx.tok == Tok::Star || is_kw("mod")) {
            if (is_kw("mod")) {
                lx.next();
                if (lx.tok != Tok::Number) lx.fail("mod needs an integer literal");
                long long n = lx.number;
                lx.next();
                if (n <= 0) lx.fail("mod modulus must be positive");
                auto t = mk(Sort::Int, Op::IMod, {to_int(a)});
                std::const_pointer_cast<Term>(t)->iconst = n;
                a = P{t};
                continue;
            }
            lx.next();
            P b = parse_unary();
            if (a.is_lit() && b.is_lit()) {
                a.lit = a.lit * b.lit;
                continue;
            }
            Sort s = dominant(a, b);
            if (s == Sort::Val) {
                a = P{mk(Sort::Val, Op::VMul, {to_val(a), to_val(b)})};
            } else if (s == Sort::Int) {
                // integer sort multiplies by constants only
                P lit = a.is_lit() ? a : b;
                P other = a.is_lit() ? b : a;
                if (!lit.is_lit()) lx.fail("integer multiplication needs a constant factor");
                auto t = mk(Sort::Int, Op::IMulC, {to_int(other)});
                std::const_pointer_cast<Term>(t)->iconst = lit.lit;
                a = P{t};
            } else {
                lx.fail("residue-sort arithmetic is not part of the language");
            }
        }
        return a;
    }

    P parse_unary() {
        if (lx.tok == Tok::Minus) {
            lx.next();
            P a = parse_unary();
            if (a.is_lit()) { a.lit = -a.lit; return a; }
            if (a.t->sort == Sort::Val) return P{mk(Sort::Val, Op::VNeg, {a.t})};
            if (a.t->sort == Sort::Int) return P{mk(Sort::Int, Op::INeg, {a.t})};
            lx.fail("unary minus on an unsupported sort");
        }
        if (lx.tok == Tok::Plus) {
            lx.next();
            return parse_unary();
        }
        return parse_pow();
    }

    P parse_pow() {
        P base = parse_atom();
        if (lx.tok != Tok::Caret) return base;
        lx.next();
        long long k;
        if (lx.tok == Tok::Number) {
            k = lx.number;
            lx.next();
        } else if (lx.tok == Tok::Minus) {
            lx.next();
            if (lx.tok != Tok::Number) lx.fail("expected exponent");
            k = -lx.number;
            lx.next();
        } else {
            lx.fail("expected exponent");
        }
        if (base.is_lit()) {
            if (k < 0) lx.fail("negative power of an integer literal");
            long long r = 1;
            for (long long j = 0; j < k; ++j) r *= base.lit;
            return P{.t = nullptr, .lit = r};
        }
        if (base.t->sort != Sort::Val) lx.fail("powers apply to valued-field terms");
        if (base.t->op == Op::VConst) return P{v_const(const_pow(base.t->kconst, k))};
        if (k < 0) lx.fail("negative power of a non-constant term");
        return P{v_pow(base.t, k)};
    }

    FieldElement const_pow(const FieldElement& c, long long k) {
        if (k >= 0) {
            FieldElement r = ctx.fe_one();
            for (long long j = 0; j < k; ++j) r = r * c;
            return r;
        }
        // negative power: constant must be a monomial a*t^j with a invertible
        if (c.is_zero_in_window()) lx.fail("negative power of zero");
        Ord o = c.ord();
        FieldElement mono = FieldElement::from_coeffs(ctx.F(), o, {c.ac()});
        if (!(c - mono).is_exact_zero()) lx.fail("negative power of a non-monomial constant");
        const ResidueField& F = ctx.F();
        uint32_t inv = 0;
        for (uint32_t b = 1; b < F.q(); ++b)
            if (F.mul(c.ac().index(), b) == 1) { inv = b; break; }
        FieldElement base = FieldElement::from_coeffs(F, -o, {ResidueElement(&F, inv)});
        FieldElement r = ctx.fe_one();
        for (long long j = 0; j < -k; ++j) r = r * base;
        return r;
    }

    P parse_atom() {
        if (lx.tok == Tok::Number) {
            long long n = lx.number;
            lx.next();
            return P{.t = nullptr, .lit = n};
        }
        if (lx.tok == Tok::LParen) {
            lx.next();
            P inner = parse_or();
            if (lx.tok != Tok::RParen) lx.fail("expected ')'");
            lx.next();
            return inner;
        }
        if (lx.tok == Tok::LBracket) {
            lx.next();
            std::vector<uint32_t> coords;
            while (true) {
                long long sign = 1;
                if (lx.tok == Tok::Minus) { sign = -1; lx.next(); }
                if (lx.tok != Tok::Number) lx.fail("expected residue coordinate");
                long long v = sign * lx.number;
                lx.next();
                long long pm = ctx.F().p();
                coords.push_back(static_cast<uint32_t>(((v % pm) + pm) % pm));
                if (lx.tok == Tok::Comma) { lx.next(); continue; }
                break;
            }
            if (lx.tok != Tok::RBracket) lx.fail("expected ']'");
            lx.next();
            auto t = mk(Sort::Res, Op::RConst);
            std::const_pointer_cast<Term>(t)->rconst =
                ResidueElement(&ctx.F(), ctx.F().from_coords(coords));
            return P{t};
        }
        if (lx.tok == Tok::Ident) {
            std::string id = lx.ident;
            if (id == "ord" || id == "ac" || id == "min" || id == "max") {
                lx.next();
                if (lx.tok != Tok::LParen) lx.fail("expected '(' after " + id);
                lx.next();
                P a = parse_or();
                if (id == "min" || id == "max") {
                    if (lx.tok != Tok::Comma) lx.fail(id + " needs two arguments");
                    lx.next();
                    P b = parse_or();
                    if (lx.tok != Tok::RParen) lx.fail("expected ')'");
                    lx.next();
                    return P{mk(Sort::Int, id == "min" ? Op::IMin : Op::IMax,
                                {to_int(a), to_int(b)})};
                }
                if (lx.tok != Tok::RParen) lx.fail("expected ')'");
                lx.next();
                if (id == "ord") return P{mk(Sort::Int, Op::IOrd, {to_val(a)})};
                return P{mk(Sort::Res, Op::RAc, {to_val(a)})};
            }
            if (id == "t") {
                lx.next();
                return P{v_const(ctx.t_pow(1))};
            }
            lx.next();
            auto it = var_sorts.find(id);
            Sort s = it == var_sorts.end() ? Sort::Val : it->second;
            if (s == Sort::Val) return P{v_var(id)};
            if (s == Sort::Int) {
                auto t = mk(Sort::Int, Op::IConst);  // replaced below
                std::const_pointer_cast<Term>(t)->op = Op::IVar;
                std::const_pointer_cast<Term>(t)->name = id;
                return P{t};
            }
            lx.fail("variables exist in the valued-field and integer sorts only");
        }
        lx.fail("expected a term");
    }
};

}  // namespace

TermPtr parse(const std::string& text, const Context& ctx,
              const std::map<std::string, Sort>& var_sorts) {
    Parser p(text, ctx, var_sorts);
    P r = p.parse_or();
    if (p.lx.tok != Tok::End) p.lx.fail("trailing input");
    if (r.is_lit()) return p.to_int(r);
    return r.t;
}

// ---------------------------------------------------------------------------
// Printer
// ---------------------------------------------------------------------------

namespace {

int prec_of(const Term& t) {
    switch (t.op) {
        case Op::BOr: return 0;
        case Op::BAnd: return 1;
        case Op::BNot: return 2;
        case Op::BEqInt: case Op::BLeInt: case Op::BLtInt:
        case Op::BEqRes: case Op::BDivides: return 3;
        case Op::VAdd: case Op::VSub: case Op::IAdd: case Op::ISub: return 4;
        case Op::VMul: case Op::IMulC: case Op::IMod: return 5;
        case Op::VNeg: case Op::INeg: return 6;
        case Op::VPow: return 7;
        default: return 8;
    }
}

std::string print_field_const(const FieldElement& k, uint32_t f);

void print_rec(const Term& t, std::ostream& os, uint32_t f) {
    auto child = [&](const TermPtr& c, bool strict = false) {
        int pp = prec_of(t), cp = prec_of(*c);
        bool need = strict ? cp <= pp : cp < pp;
        if (need) os << '(';
        print_rec(*c, os, f);
        if (need) os << ')';
    };
    switch (t.op) {
        case Op::VVar: case Op::IVar: os << t.name; return;
        case Op::VConst: os << print_field_const(t.kconst, f); return;
        case Op::IConst: os << t.iconst; return;
        case Op::RConst: os << t.rconst.to_text(); return;
        case Op::VAdd: case Op::IAdd: child(t.args[0]); os << " + "; child(t.args[1], true); return;
        case Op::VSub: case Op::ISub: child(t.args[0]); os << " - "; child(t.args[1], true); return;
        case Op::VNeg: case Op::INeg: os << '-'; child(t.args[0], true); return;
        case Op::VMul: child(t.args[0]); os << '*'; child(t.args[1], true); return;
        case Op::IMulC: os << t.iconst << '*'; child(t.args[0], true); return;
        case Op::IMod: child(t.args[0]); os << " mod " << t.iconst; return;
        case Op::VPow: child(t.args[0], true); os << '^' << t.iconst; return;
        case Op::IOrd: os << "ord("; print_rec(*t.args[0], os, f); os << ')'; return;
        case Op::RAc: os << "ac("; print_rec(*t.args[0], os, f); os << ')'; return;
        case Op::IMin: case Op::IMax:
            os << (t.op == Op::IMin ? "min(" : "max(");
            print_rec(*t.args[0], os, f); os << ", "; print_rec(*t.args[1], os, f); os << ')';
            return;
        case Op::BEqInt: case Op::BEqRes: child(t.args[0]); os << " = "; child(t.args[1]); return;
        case Op::BLeInt: child(t.args[0]); os << " <= "; child(t.args[1]); return;
        case Op::BLtInt: child(t.args[0]); os << " < "; child(t.args[1]); return;
        case Op::BDivides: os << t.iconst << " | "; child(t.args[0], true); return;
        case Op::BAnd: child(t.args[0]); os << " and "; child(t.args[1], true); return;
        case Op::BOr: child(t.args[0]); os << " or "; child(t.args[1], true); return;
        case Op::BNot: os << "not "; child(t.args[0], true); return;
    }
}

std::string print_field_const(const FieldElement& k, uint32_t f) {
    if (k.is_zero_in_window()) return "0";
    int nterms = 0;
    for (Ord e = k.ord(); e <= k.top_exp(); ++e)
        if (!k.coeff_at(e).is_zero()) ++nterms;
    std::ostringstream os;
    if (nterms > 1) os << '(';
    bool first = true;
    for (Ord e = k.ord(); e <= k.top_exp(); ++e) {
        ResidueElement c = k.coeff_at(e);
        if (c.is_zero()) continue;
        if (!first) os << " + ";
        first = false;
        std::string coeff = f == 1 ? std::to_string(c.index()) : c.to_text();
        if (e == 0) {
            os << coeff;
        } else if (c.index() == 1) {
            os << "t^" << e;
        } else {
            os << coeff << "*t^" << e;
        }
    }
    if (nterms > 1) os << ')';
    return os.str();
}

}  // namespace

std::string print(const TermPtr& t) {
    std::ostringstream os;
    uint32_t f = 1;
    // residue coordinate width is only cosmetic; recover it if a constant is
    // in reach
    std::function<void(const Term&)> scan = [&](const Term& n) {
        if (n.op == Op::RConst) f = n.rconst.field().f();
        if (n.op == Op::VConst && !n.kconst.is_zero_in_window()) f = n.kconst.field().f();
        for (const auto& a : n.args) scan(*a);
    };
    scan(*t);
    print_rec(*t, os, f);
    return os.str();
}

// ---------------------------------------------------------------------------
// Evaluation
// ---------------------------------------------------------------------------

namespace {

Value make_val(FieldElement x) {
    Value v;
    v.sort = Sort::Val;
    v.v = std::move(x);
    return v;
}

}  // namespace

namespace {

Value eval_impl(const TermPtr& t, const Assignment& a, const Context& ctx, bool* saw_ord_inf);

FieldElement eval_val_impl(const TermPtr& t, const Assignment& a, const Context& ctx,
                           bool* flag) {
    if (t->sort != Sort::Val) throw InputError("term is not valued-field sorted");
    return eval_impl(t, a, ctx, flag).v;
}

Ord eval_int_impl(const TermPtr& t, const Assignment& a, const Context& ctx, bool* flag) {
    if (t->sort != Sort::Int) throw InputError("term is not integer sorted");
    return eval_impl(t, a, ctx, flag).i;
}

bool eval_bool_impl(const TermPtr& t, const Assignment& a, const Context& ctx, bool* flag) {
    if (t->sort != Sort::Bool) throw InputError("term is not boolean sorted");
    return eval_impl(t, a, ctx, flag).b;
}

Value eval_impl(const TermPtr& t, const Assignment& a, const Context& ctx, bool* saw_ord_inf) {
    switch (t->op) {
        case Op::VVar: {
            auto it = a.vals.find(t->name);
            if (it == a.vals.end()) throw InputError("unbound variable " + t->name);
            return make_val(it->second);
        }
        case Op::VConst: return make_val(t->kconst);
        case Op::VAdd: return make_val(eval_val_impl(t->args[0], a, ctx, saw_ord_inf) + eval_val_impl(t->args[1], a, ctx, saw_ord_inf));
        case Op::VSub: return make_val(eval_val_impl(t->args[0], a, ctx, saw_ord_inf) - eval_val_impl(t->args[1], a, ctx, saw_ord_inf));
        case Op::VNeg: return make_val(-eval_val_impl(t->args[0], a, ctx, saw_ord_inf));
        case Op::VMul: return make_val(eval_val_impl(t->args[0], a, ctx, saw_ord_inf) * eval_val_impl(t->args[1], a, ctx, saw_ord_inf));
        case Op::VPow: {
            FieldElement b = eval_val_impl(t->args[0], a, ctx, saw_ord_inf);
            FieldElement r = ctx.fe_one();
            for (long long j = 0; j < t->iconst; ++j) r = r * b;
            return make_val(r);
        }
        case Op::IVar: {
            auto it = a.ints.find(t->name);
            if (it == a.ints.end()) throw InputError("unbound integer variable " + t->name);
            Value v;
            v.sort = Sort::Int;
            v.i = it->second;
            return v;
        }
        case Op::IConst: {
            Value v;
            v.sort = Sort::Int;
            v.i = t->iconst;
            return v;
        }
        case Op::IOrd: {
            Value v;
            v.sort = Sort::Int;
            v.i = eval_val_impl(t->args[0], a, ctx, saw_ord_inf).ord();  // +inf sentinel for ord 0
            if (is_inf(v.i) && saw_ord_inf) *saw_ord_inf = true;
            return v;
        }
        case Op::IAdd: {
            Value v;
            v.sort = Sort::Int;
            v.i = ord_add(eval_int_impl(t->args[0], a, ctx, saw_ord_inf), eval_int_impl(t->args[1], a, ctx, saw_ord_inf));
            return v;
        }
        case Op::ISub: {
            Ord x = eval_int_impl(t->args[0], a, ctx, saw_ord_inf), y = eval_int_impl(t->args[1], a, ctx, saw_ord_inf);
            if (is_inf(y)) throw InputError("ord(0) sentinel on the right of a subtraction");
            Value v;
            v.sort = Sort::Int;
            v.i = is_inf(x) ? kOrdInf : x - y;
            return v;
        }
        case Op::INeg: {
            Ord x = eval_int_impl(t->args[0], a, ctx, saw_ord_inf);
            if (is_inf(x)) throw InputError("negation of the ord(0) sentinel");
            Value v;
            v.sort = Sort::Int;
            v.i = -x;
            return v;
        }
        case Op::IMulC: {
            Ord x = eval_int_impl(t->args[0], a, ctx, saw_ord_inf);
            Value v;
            v.sort = Sort::Int;
            if (is_inf(x)) {
                if (t->iconst > 0) v.i = kOrdInf;
                else if (t->iconst == 0) v.i = 0;
                else throw InputError("negative multiple of the ord(0) sentinel");
            } else {
                v.i = t->iconst * x;
            }
            return v;
        }
        case Op::IMin: {
            Value v;
            v.sort = Sort::Int;
            v.i = std::min(eval_int_impl(t->args[0], a, ctx, saw_ord_inf), eval_int_impl(t->args[1], a, ctx, saw_ord_inf));
            return v;
        }
        case Op::IMax: {
            Value v;
            v.sort = Sort::Int;
            v.i = std::max(eval_int_impl(t->args[0], a, ctx, saw_ord_inf), eval_int_impl(t->args[1], a, ctx, saw_ord_inf));
            return v;
        }
        case Op::IMod: {
            Ord x = eval_int_impl(t->args[0], a, ctx, saw_ord_inf);
            Value v;
            v.sort = Sort::Int;
            v.i = is_inf(x) ? 0 : ((x % t->iconst) + t->iconst) % t->iconst;
            return v;
        }
        case Op::RAc: {
            Value v;
            v.sort = Sort::Res;
            FieldElement x = eval_val_impl(t->args[0], a, ctx, saw_ord_inf);
            v.r = x.is_exact_zero() ? ResidueElement::zero(ctx.F()) : x.ac();
            return v;
        }
        case Op::RConst: {
            Value v;
            v.sort = Sort::Res;
            v.r = t->rconst;
            return v;
        }
        case Op::BEqInt: case Op::BLeInt: case Op::BLtInt: {
            Ord x = eval_int_impl(t->args[0], a, ctx, saw_ord_inf), y = eval_int_impl(t->args[1], a, ctx, saw_ord_inf);
            Value v;
            v.sort = Sort::Bool;
            if (t->op == Op::BEqInt) v.b = x == y || (is_inf(x) && is_inf(y));
            else if (t->op == Op::BLeInt) v.b = x <= y || is_inf(y);
            else v.b = x < y && !is_inf(x);
            return v;
        }
        case Op::BEqRes: {
            Value v;
            v.sort = Sort::Bool;
            Value x = eval(t->args[0], a, ctx), y = eval(t->args[1], a, ctx);
            v.b = x.r == y.r;
            return v;
        }
        case Op::BDivides: {
            Ord x = eval_int_impl(t->args[0], a, ctx, saw_ord_inf);
            Value v;
            v.sort = Sort::Bool;
            v.b = is_inf(x) ? true : (x % t->iconst) == 0;
            return v;
        }
        case Op::BAnd: {
            Value v;
            v.sort = Sort::Bool;
            v.b = eval_bool_impl(t->args[0], a, ctx, saw_ord_inf) && eval_bool_impl(t->args[1], a, ctx, saw_ord_inf);
            return v;
        }
        case Op::BOr: {
            Value v;
            v.sort = Sort::Bool;
            v.b = eval_bool_impl(t->args[0], a, ctx, saw_ord_inf) || eval_bool_impl(t->args[1], a, ctx, saw_ord_inf);
            return v;
        }
        case Op::BNot: {
            Value v;
            v.sort = Sort::Bool;
            v.b = !eval_bool_impl(t->args[0], a, ctx, saw_ord_inf);
            return v;
        }
    }
    throw InputError("unhandled term op");
}

}  // namespace

Value eval(const TermPtr& t, const Assignment& a, const Context& ctx) {
    return eval_impl(t, a, ctx, nullptr);
}

FieldElement eval_val(const TermPtr& t, const Assignment& a, const Context& ctx) {
    return eval_val_impl(t, a, ctx, nullptr);
}

Ord eval_int(const TermPtr& t, const Assignment& a, const Context& ctx) {
    return eval_int_impl(t, a, ctx, nullptr);
}

bool eval_bool(const TermPtr& t, const Assignment& a, const Context& ctx) {
    return eval_bool_impl(t, a, ctx, nullptr);
}

Ord eval_int_watch(const TermPtr& t, const Assignment& a, const Context& ctx,
                   bool* saw_ord_inf) {
    return eval_int_impl(t, a, ctx, saw_ord_inf);
}

// ---------------------------------------------------------------------------
// Flat multivariate polynomials over K, used by grad / taylor_remainder
// ---------------------------------------------------------------------------

namespace {

struct MultiPoly {
    // exponent vector over the ordered variable list -> coefficient in K
    std::map<std::vector<uint32_t>, FieldElement> mono;
    size_t nvars = 0;

    explicit MultiPoly(size_t n) : nvars(n) {}

    void add_term(std::vector<uint32_t> e, const FieldElement& c) {
        if (c.is_zero_in_window() && c.is_exact()) return;
        auto it = mono.find(e);
        if (it == mono.end()) {
            mono.emplace(std::move(e), c);
        } else {
            it->second = it->second + c;
            if (it->second.is_exact_zero()) mono.erase(it);
        }
    }
    MultiPoly operator+(const MultiPoly& o) const {
        MultiPoly r = *this;
        for (const auto& [e, c] : o.mono) r.add_term(e, c);
        return r;
    }
    MultiPoly operator-() const {
        MultiPoly r(nvars);
        for (const auto& [e, c] : mono) r.mono.emplace(e, -c);
        return r;
    }
    MultiPoly operator*(const MultiPoly& o) const {
        MultiPoly r(nvars);
        for (const auto& [e1, c1] : mono)
            for (const auto& [e2, c2] : o.mono) {
                std::vector<uint32_t> e(nvars);
                for (size_t i = 0; i < nvars; ++i) e[i] = e1[i] + e2[i];
                r.add_term(std::move(e), c1 * c2);
            }
        return r;
    }
};

MultiPoly poly_const(size_t n, const FieldElement& c) {
    MultiPoly r(n);
    r.add_term(std::vector<uint32_t>(n, 0), c);
    return r;
}

MultiPoly to_poly(const TermPtr& t, const std::vector<std::string>& vars, const Context& ctx) {
    size_t n = vars.size();
    switch (t->op) {
        case Op::VVar: {
            auto it = std::find(vars.begin(), vars.end(), t->name);
            if (it == vars.end()) throw InputError("variable " + t->name + " missing from list");
            MultiPoly r(n);
            std::vector<uint32_t> e(n, 0);
            e[static_cast<size_t>(it - vars.begin())] = 1;
            r.add_term(std::move(e), ctx.fe_one());
            return r;
        }
        case Op::VConst: return poly_const(n, t->kconst);
        case Op::VAdd: return to_poly(t->args[0], vars, ctx) + to_poly(t->args[1], vars, ctx);
        case Op::VSub: return to_poly(t->args[0], vars, ctx) + (-to_poly(t->args[1], vars, ctx));
        case Op::VNeg: return -to_poly(t->args[0], vars, ctx);
        case Op::VMul: return to_poly(t->args[0], vars, ctx) * to_poly(t->args[1], vars, ctx);
        case Op::VPow: {
            if (t->iconst < 0) throw InputError("negative power in a polynomial");
            MultiPoly b = to_poly(t->args[0], vars, ctx);
            MultiPoly r = poly_const(n, ctx.fe_one());
            for (long long j = 0; j < t->iconst; ++j) r = r * b;
            return r;
        }
        default:
            throw InputError("non-polynomial construct in a valued-field polynomial");
    }
}

TermPtr from_poly(const MultiPoly& p, const std::vector<std::string>& vars, const Context& ctx) {
    TermPtr acc;
    for (const auto& [e, c] : p.mono) {
        TermPtr term;
        bool coeff_is_one = false;
        if (!c.is_zero_in_window() && c.is_exact()) {
            FieldElement one = ctx.fe_one();
            coeff_is_one = c.same_exact(one);
        }
        if (!coeff_is_one) term = v_const(c);
        for (size_t i = 0; i < vars.size(); ++i) {
            if (e[i] == 0) continue;
            TermPtr v = e[i] == 1 ? v_var(vars[i]) : v_pow(v_var(vars[i]), e[i]);
            term = term ? v_mul(term, v) : v;
        }
        if (!term) term = v_const(c);  // constant monomial
        acc = acc ? v_add(acc, term) : term;
    }
    if (!acc) acc = v_const(FieldElement());
    return acc;
}

MultiPoly derivative(const MultiPoly& p, size_t i, const Context& ctx) {
    MultiPoly r(p.nvars);
    for (const auto& [e, c] : p.mono) {
        if (e[i] == 0) continue;
        FieldElement scale = FieldElement::of_int(ctx.F(), e[i]);
        if (scale.is_zero_in_window()) continue;  // char p kills this monomial
        std::vector<uint32_t> e2 = e;
        e2[i] -= 1;
        r.add_term(std::move(e2), c * scale);
    }
    return r;
}

long long binom(uint32_t n, uint32_t k) {
    long long r = 1;
    for (uint32_t j = 1; j <= k; ++j) r = r * (n - k + j) / j;
    return r;
}

// substitute x_i -> x_i + y_i for i in [0, m), where the poly lives over the
// extended variable list (x vars first, then y vars at offset `off`).
MultiPoly shift_vars(const MultiPoly& p, size_t m, size_t off, const Context& ctx) {
    MultiPoly r(p.nvars);
    for (const auto& [e, c] : p.mono) {
        // expand prod_i (x_i + y_i)^{e_i}
        std::vector<std::pair<std::vector<uint32_t>, FieldElement>> acc = {
            {std::vector<uint32_t>(p.nvars, 0), c}};
        for (size_t i = 0; i < p.nvars; ++i) {
            if (e[i] == 0) continue;
            if (i >= m) {  // not a shifted variable
                for (auto& [ee, cc] : acc) ee[i] += e[i];
                continue;
            }
            std::vector<std::pair<std::vector<uint32_t>, FieldElement>> next;
            for (const auto& [ee, cc] : acc) {
                for (uint32_t k = 0; k <= e[i]; ++k) {
                    FieldElement b = FieldElement::of_int(ctx.F(), binom(e[i], k));
                    if (b.is_zero_in_window()) continue;
                    auto e2 = ee;
                    e2[i] += k;
                    e2[off + i] += e[i] - k;
                    next.emplace_back(std::move(e2), cc * b);
                }
            }
            acc = std::move(next);
        }
        for (auto& [ee, cc] : acc) r.add_term(std::move(ee), cc);
    }
    return r;
}

}  // namespace

std::vector<TermPtr> grad(const TermPtr& poly, std::span<const std::string> vars,
                          const Context& ctx) {
    std::vector<std::string> all = free_vars(poly);
    for (const auto& v : vars)
        if (std::find(all.begin(), all.end(), v) == all.end()) all.push_back(v);
    MultiPoly p = to_poly(poly, all, ctx);
    std::vector<TermPtr> out;
    for (const auto& v : vars) {
        size_t i = static_cast<size_t>(std::find(all.begin(), all.end(), v) - all.begin());
        out.push_back(from_poly(derivative(p, i, ctx), all, ctx));
    }
    return out;
}

std::vector<std::vector<TermPtr>> taylor_remainder(const TermPtr& poly,
                                                   std::span<const std::string> vars,
                                                   const Context& ctx,
                                                   const std::string& y_suffix) {
    std::vector<std::string> all = free_vars(poly);
    for (const auto& v : vars)
        if (std::find(all.begin(), all.end(), v) == all.end()) all.push_back(v);
    size_t m = vars.size();
    // reorder: requested vars first, then the remaining frees, then y vars
    std::vector<std::string> ext(vars.begin(), vars.end());
    for (const auto& v : all)
        if (std::find(ext.begin(), ext.end(), v) == ext.end()) ext.push_back(v);
    size_t off = ext.size();
    for (size_t i = 0; i < m; ++i) ext.push_back(std::string(vars[i]) + y_suffix);

    MultiPoly g(ext.size());
    {
        MultiPoly base = to_poly(poly, ext, ctx);
        g = base;
    }
    MultiPoly shifted = shift_vars(g, m, off, ctx);
    MultiPoly rem = shifted + (-g);
    for (size_t i = 0; i < m; ++i) {
        MultiPoly gi = derivative(g, i, ctx);
        // subtract grad_i(x) * y_i
        MultiPoly yi(ext.size());
        std::vector<uint32_t> e(ext.size(), 0);
        e[off + i] = 1;
        yi.add_term(std::move(e), ctx.fe_one());
        rem = rem + (-(gi * yi));
    }
    // assign monomials (y-degree >= 2) to R entries lexicographically
    std::vector<std::vector<MultiPoly>> R(m, std::vector<MultiPoly>(m, MultiPoly(ext.size())));
    for (const auto& [e, c] : rem.mono) {
        uint32_t ydeg = 0;
        for (size_t i = 0; i < m; ++i) ydeg += e[off + i];
        if (ydeg < 2) throw InputError("taylor remainder has a low-order monomial (internal)");
        size_t i = 0;
        while (e[off + i] == 0) ++i;
        auto e2 = e;
        e2[off + i] -= 1;
        size_t j = 0;
        while (e2[off + j] == 0) ++j;
        e2[off + j] -= 1;
        R[i][j].add_term(std::move(e2), c);
    }
    std::vector<std::vector<TermPtr>> out(m, std::vector<TermPtr>(m));
    for (size_t i = 0; i < m; ++i)
        for (size_t j = 0; j < m; ++j) out[i][j] = from_poly(R[i][j], ext, ctx);
    return out;
}

// ---------------------------------------------------------------------------
// Valuation bounds by exhaustive enumeration
// ---------------------------------------------------------------------------

namespace {

struct CosetScan {
    std::set<Ord> values;
    Ord lo = kOrdInf;
    Ord hi = -kOrdInf;
    bool capped = false;
    long long flagged = 0;
    bool any_finite = false;
};

CosetScan scan_ball(const TermPtr& t, std::span<const std::string> vars, const BallDomain& ball,
                    Ord depth, const Assignment& params, const Context& ctx) {
    if (t->sort != Sort::Int) throw InputError("valuation bounds need an integer-sort term");
    if (ball.center.size() != vars.size())
        throw InputError("ball dimension does not match the variable list");
    size_t m = vars.size();
    auto reps = enumerate_coset_reps(ctx.F(), ball.center, ball.alpha, depth, ctx.budget());
    long long qm = 1;
    for (size_t i = 0; i < m; ++i) qm *= ctx.q();
    if (static_cast<long long>(reps.size()) * (qm + 1) > ctx.budget())
        throw BudgetError("valuation scan exceeds budget");
    CosetScan out;
    for (const auto& rep : reps) {
        Assignment a = params;
        for (size_t i = 0; i < m; ++i) a.vals[std::string(vars[i])] = rep[i];
        bool saw_inf = false;
        Ord v0 = eval_int_watch(t, a, ctx, &saw_inf);
        auto children = enumerate_coset_reps(ctx.F(), rep, depth, depth + 1, ctx.budget());
        bool unstable = false;
        std::vector<Ord> observed{v0};
        for (const auto& ch : children) {
            Assignment ac = params;
            for (size_t i = 0; i < m; ++i) ac.vals[std::string(vars[i])] = ch[i];
            Ord vc = eval_int_watch(t, ac, ctx, &saw_inf);
            if (vc != v0) unstable = true;
            observed.push_back(vc);
        }
        if (!unstable && !saw_inf) {
            out.values.insert(v0);
            out.lo = std::min(out.lo, v0);
            out.hi = std::max(out.hi, v0);
            out.any_finite = true;
            continue;
        }
        if (saw_inf) {
            // The zero locus of an inner ord() meets this coset.  Finite
            // observed values are genuinely attained; the sup cannot be
            // certified by this scan.
            ++out.flagged;
            out.capped = true;
            for (Ord v : observed) {
                out.values.insert(v);
                if (!is_inf(v)) {
                    out.lo = std::min(out.lo, v);
                    out.hi = std::max(out.hi, v);
                    out.any_finite = true;
                }
            }
            continue;
        }
        Ord cmin = *std::min_element(observed.begin(), observed.end());
        Ord cmax = *std::max_element(observed.begin(), observed.end());
        std::ostringstream msg;
        msg << "stability test failed at depth " << depth << ": value " << v0 << " at "
            << rep[0].to_text() << " changes to [" << cmin << "," << cmax
            << "] at depth " << (depth + 1) << "; increase the depth";
        throw DataError(msg.str());
    }
    return out;
}

}  // namespace

ValuationBounds valuation_bounds(const TermPtr& t, std::span<const std::string> vars,
                                 const BallDomain& ball, Ord depth, const Assignment& params,
                                 const Context& ctx) {
    CosetScan s = scan_ball(t, vars, ball, depth, params, ctx);
    ValuationBounds b;
    b.capped = s.capped;
    b.flagged_cosets = s.flagged;
    if (!s.any_finite) {
        b.all_infinite = true;
        b.lo = kOrdInf;
        b.hi = kOrdInf;
        return b;
    }
    b.lo = s.lo;
    b.hi = s.hi;
    return b;
}

RangeResult range_enumerate(const TermPtr& t, std::span<const std::string> vars,
                            const BallDomain& ball, Ord depth, const Assignment& params,
                            const Context& ctx) {
    CosetScan s = scan_ball(t, vars, ball, depth, params, ctx);
    return {s.values, s.capped};
}

// ---------------------------------------------------------------------------
// Polynomial maps
// ---------------------------------------------------------------------------

FieldVec PolyMap::apply(const FieldVec& x, const Context& ctx) const {
    if (x.size() != vars.size()) throw InputError("polynomial map applied to wrong dimension");
    Assignment a;
    for (size_t i = 0; i < vars.size(); ++i) a.vals[vars[i]] = x[i];
    FieldVec y(comps.size());
    for (size_t j = 0; j < comps.size(); ++j) y[j] = eval_val(comps[j], a, ctx);
    return y;
}

std::vector<std::vector<TermPtr>> PolyMap::jacobian(const Context& ctx) const {
    std::vector<std::vector<TermPtr>> out;
    for (const auto& c : comps) out.push_back(grad(c, vars, ctx));
    return out;
}

PolyMap PolyMap::identity(size_t m) {
    PolyMap f;
    for (size_t i = 0; i < m; ++i) {
        f.vars.push_back("x" + std::to_string(i + 1));
        f.comps.push_back(v_var(f.vars.back()));
    }
    return f;
}

PolyMap PolyMap::translation(const FieldVec& a) {
    PolyMap f;
    for (size_t i = 0; i < a.size(); ++i) {
        f.vars.push_back("x" + std::to_string(i + 1));
        f.comps.push_back(v_add(v_var(f.vars.back()), v_const(a[i])));
    }
    return f;
}

PolyMap PolyMap::parse(const std::vector<std::string>& comps, const std::vector<std::string>& vars,
                       const Context& ctx) {
    PolyMap f;
    f.vars = vars;
    for (const auto& c : comps) {
        TermPtr t = expr::parse(c, ctx);
        if (t->sort != Sort::Val) throw InputError("map component is not a valued-field term");
        f.comps.push_back(t);
    }
    return f;
}

}  // namespace tadic::expr

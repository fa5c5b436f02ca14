#include "hyperpdl/syntax.hpp"

#include <algorithm>
#include <cctype>
#include <functional>

namespace hyperpdl {

int Signature::ap_id(const std::string& name) const {
    auto it = std::find(aps.begin(), aps.end(), name);
    return it == aps.end() ? -1 : static_cast<int>(it - aps.begin());
}

int Signature::program_id(const std::string& name) const {
    auto it = std::find(programs.begin(), programs.end(), name);
    return it == programs.end() ? -1 : static_cast<int>(it - programs.begin());
}

bool TupleSym::matches(const std::vector<int>& progs) const {
    if (progs.size() != entries.size()) return false;
    for (std::size_t i = 0; i < entries.size(); ++i)
        if (entries[i] != kWildcard && entries[i] != progs[i]) return false;
    return true;
}

bool TupleSym::all_wildcard() const {
    return std::all_of(entries.begin(), entries.end(), [](int e) { return e == kWildcard; });
}

namespace {

FormulaPtr make(FKind k) {
    auto f = std::make_shared<Formula>();
    f->kind = k;
    return f;
}

FormulaPtr make_unary(FKind k, FormulaPtr a) {
    auto f = std::make_shared<Formula>();
    f->kind = k;
    f->left = std::move(a);
    return f;
}

FormulaPtr make_binary(FKind k, FormulaPtr a, FormulaPtr b) {
    auto f = std::make_shared<Formula>();
    f->kind = k;
    f->left = std::move(a);
    f->right = std::move(b);
    return f;
}

FormulaPtr make_quant(FKind k, int var, std::string name, FormulaPtr body) {
    auto f = std::make_shared<Formula>();
    f->kind = k;
    f->var = var;
    f->name = std::move(name);
    f->left = std::move(body);
    return f;
}

FormulaPtr make_modal(FKind k, ProgramPtr p, FormulaPtr body) {
    auto f = std::make_shared<Formula>();
    f->kind = k;
    f->prog = std::move(p);
    f->left = std::move(body);
    return f;
}

}  // namespace

FormulaPtr f_true() { return make(FKind::True); }
FormulaPtr f_false() { return make(FKind::False); }

FormulaPtr f_atom(int ap, int var, std::string name) {
    auto f = std::make_shared<Formula>();
    f->kind = FKind::Atom;
    f->ap = ap;
    f->var = var;
    f->name = std::move(name);
    return f;
}

FormulaPtr f_not(FormulaPtr f) { return make_unary(FKind::Not, std::move(f)); }
FormulaPtr f_and(FormulaPtr l, FormulaPtr r) { return make_binary(FKind::And, std::move(l), std::move(r)); }
FormulaPtr f_or(FormulaPtr l, FormulaPtr r) { return make_binary(FKind::Or, std::move(l), std::move(r)); }

FormulaPtr f_exists(int var, std::string name, FormulaPtr body) {
    return make_quant(FKind::Exists, var, std::move(name), std::move(body));
}
FormulaPtr f_forall(int var, std::string name, FormulaPtr body) {
    return make_quant(FKind::Forall, var, std::move(name), std::move(body));
}
FormulaPtr f_not_exists(int var, std::string name, FormulaPtr body) {
    return make_quant(FKind::NotExists, var, std::move(name), std::move(body));
}

FormulaPtr f_diamond(ProgramPtr p, FormulaPtr body) { return make_modal(FKind::Diamond, std::move(p), std::move(body)); }
FormulaPtr f_box(ProgramPtr p, FormulaPtr body) { return make_modal(FKind::Box, std::move(p), std::move(body)); }
FormulaPtr f_delta(ProgramPtr p) { return make_modal(FKind::Delta, std::move(p), nullptr); }
FormulaPtr f_not_delta(ProgramPtr p) { return make_modal(FKind::NotDelta, std::move(p), nullptr); }

ProgramPtr p_tup(TupleSym t) {
    auto p = std::make_shared<Program>();
    p->kind = PKind::Tup;
    p->tup = std::move(t);
    return p;
}

ProgramPtr p_any(std::size_t arity) {
    return p_tup(TupleSym{std::vector<int>(arity, kWildcard)});
}

ProgramPtr p_eps() {
    auto p = std::make_shared<Program>();
    p->kind = PKind::Eps;
    return p;
}

ProgramPtr p_sum(ProgramPtr l, ProgramPtr r) {
    auto p = std::make_shared<Program>();
    p->kind = PKind::Sum;
    p->left = std::move(l);
    p->right = std::move(r);
    return p;
}

ProgramPtr p_concat(ProgramPtr l, ProgramPtr r) {
    auto p = std::make_shared<Program>();
    p->kind = PKind::Concat;
    p->left = std::move(l);
    p->right = std::move(r);
    return p;
}

ProgramPtr p_star(ProgramPtr body) {
    auto p = std::make_shared<Program>();
    p->kind = PKind::Star;
    p->left = std::move(body);
    return p;
}

ProgramPtr p_test(FormulaPtr f) {
    auto p = std::make_shared<Program>();
    p->kind = PKind::Test;
    p->test = std::move(f);
    return p;
}

bool is_quantifier(FKind k) {
    return k == FKind::Exists || k == FKind::Forall || k == FKind::NotExists;
}

bool equal(const Formula& a, const Formula& b) {
    if (&a == &b) return true;
    if (a.kind != b.kind) return false;
    switch (a.kind) {
    case FKind::True:
    case FKind::False:
        return true;
    case FKind::Atom:
        return a.ap == b.ap && a.var == b.var;
    case FKind::Not:
        return equal(*a.left, *b.left);
    case FKind::And:
    case FKind::Or:
        return equal(*a.left, *b.left) && equal(*a.right, *b.right);
    case FKind::Exists:
    case FKind::Forall:
    case FKind::NotExists:
        return a.var == b.var && equal(*a.left, *b.left);
    case FKind::Diamond:
    case FKind::Box:
        return equal(*a.prog, *b.prog) && equal(*a.left, *b.left);
    case FKind::Delta:
    case FKind::NotDelta:
        return equal(*a.prog, *b.prog);
    }
    return false;
}

bool equal(const Program& a, const Program& b) {
    if (&a == &b) return true;
    if (a.kind != b.kind) return false;
    switch (a.kind) {
    case PKind::Tup:
        return a.tup == b.tup;
    case PKind::Eps:
        return true;
    case PKind::Sum:
    case PKind::Concat:
        return equal(*a.left, *b.left) && equal(*a.right, *b.right);
    case PKind::Star:
        return equal(*a.left, *b.left);
    case PKind::Test:
        return equal(*a.test, *b.test);
    }
    return false;
}

namespace {

inline std::size_t mix(std::size_t h, std::size_t v) {
    return h ^ (v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2));
}

}  // namespace

std::size_t hash_value(const Formula& f) {
    std::size_t h = static_cast<std::size_t>(f.kind) * 1315423911u;
    switch (f.kind) {
    case FKind::True:
    case FKind::False:
        break;
    case FKind::Atom:
        h = mix(mix(h, f.ap), f.var);
        break;
    case FKind::Exists:
    case FKind::Forall:
    case FKind::NotExists:
        h = mix(mix(h, f.var), hash_value(*f.left));
        break;
    default:
        if (f.prog) h = mix(h, hash_value(*f.prog));
        if (f.left) h = mix(h, hash_value(*f.left));
        if (f.right) h = mix(h, hash_value(*f.right));
    }
    return h;
}

std::size_t hash_value(const Program& p) {
    std::size_t h = static_cast<std::size_t>(p.kind) * 2654435761u + 7;
    switch (p.kind) {
    case PKind::Tup:
        for (int e : p.tup.entries) h = mix(h, static_cast<std::size_t>(e + 2));
        break;
    case PKind::Eps:
        break;
    case PKind::Test:
        h = mix(h, hash_value(*p.test));
        break;
    default:
        if (p.left) h = mix(h, hash_value(*p.left));
        if (p.right) h = mix(h, hash_value(*p.right));
    }
    return h;
}

std::size_t size(const Formula& f) {
    std::size_t s = 1;
    if (f.prog) s += size(*f.prog);
    if (f.left) s += size(*f.left);
    if (f.right) s += size(*f.right);
    return s;
}

std::size_t size(const Program& p) {
    std::size_t s = 1;
    if (p.left) s += size(*p.left);
    if (p.right) s += size(*p.right);
    return s;
}

namespace {

bool program_quantifier_free(const Program& p);

bool formula_quantifier_free(const Formula& f) {
    if (is_quantifier(f.kind)) return false;
    if (f.prog && !program_quantifier_free(*f.prog)) return false;
    if (f.left && !formula_quantifier_free(*f.left)) return false;
    if (f.right && !formula_quantifier_free(*f.right)) return false;
    return true;
}

bool program_quantifier_free(const Program& p) {
    if (p.kind == PKind::Test) return formula_quantifier_free(*p.test);
    if (p.left && !program_quantifier_free(*p.left)) return false;
    if (p.right && !program_quantifier_free(*p.right)) return false;
    return true;
}

bool program_nnf(const Program& p);

bool formula_nnf(const Formula& f) {
    switch (f.kind) {
    case FKind::Forall:
        return false;
    case FKind::Not:
        return f.left->kind == FKind::Atom;
    default:
        break;
    }
    if (f.prog && !program_nnf(*f.prog)) return false;
    if (f.left && !formula_nnf(*f.left)) return false;
    if (f.right && !formula_nnf(*f.right)) return false;
    return true;
}

bool program_nnf(const Program& p) {
    if (p.kind == PKind::Test) return formula_nnf(*p.test);
    if (p.left && !program_nnf(*p.left)) return false;
    if (p.right && !program_nnf(*p.right)) return false;
    return true;
}

}  // namespace

bool is_quantifier_free(const Formula& f) { return formula_quantifier_free(f); }
bool is_nnf(const Formula& f) { return formula_nnf(f); }

// ---------------------------------------------------------------- printing

namespace {

// binding strength for the printer
int prec(const Formula& f) {
    switch (f.kind) {
    case FKind::Or:
        return 1;
    case FKind::And:
        return 2;
    case FKind::Exists:
    case FKind::Forall:
    case FKind::NotExists:
        return 0;
    default:
        return 3;
    }
}

int prec(const Program& p) {
    switch (p.kind) {
    case PKind::Sum:
        return 1;
    case PKind::Concat:
        return 2;
    case PKind::Star:
        return 3;
    default:
        return 4;
    }
}

struct Printer {
    const Signature& sig;
    std::string out;

    void quantifier(const char* kw, const Formula& f) {
        out += kw;
        out += ' ';
        out += f.name;
        out += ". ";
        formula(*f.left);
    }

    // operand of a unary operator; anything binary or quantified is wrapped
    void operand(const Formula& f, int min_prec) {
        bool paren = prec(f) < min_prec;
        if (paren) out += '(';
        formula(f);
        if (paren) out += ')';
    }

    void formula(const Formula& f) {
        switch (f.kind) {
        case FKind::True:
            out += "true";
            break;
        case FKind::False:
            out += "false";
            break;
        case FKind::Atom:
            out += sig.aps.at(f.ap);
            out += '@';
            out += f.name;
            break;
        case FKind::Not:
            out += '!';
            operand(*f.left, 3);
            break;
        case FKind::And:
            operand(*f.left, 2);
            out += " & ";
            operand(*f.right, 3);
            break;
        case FKind::Or:
            operand(*f.left, 1);
            out += " | ";
            operand(*f.right, 2);
            break;
        case FKind::Exists:
            quantifier("exists", f);
            break;
        case FKind::Forall:
            quantifier("forall", f);
            break;
        case FKind::NotExists:
            out += "!(";
            quantifier("exists", f);
            out += ')';
            break;
        case FKind::Diamond:
            out += "<";
            program(*f.prog);
            out += "> ";
            operand(*f.left, 3);
            break;
        case FKind::Box:
            out += "[";
            program(*f.prog);
            out += "] ";
            operand(*f.left, 3);
            break;
        case FKind::Delta:
            out += "delta ";
            prog_operand(*f.prog, 3);
            break;
        case FKind::NotDelta:
            out += "!delta ";
            prog_operand(*f.prog, 3);
            break;
        }
    }

    void prog_operand(const Program& p, int min_prec) {
        bool paren = prec(p) < min_prec;
        if (paren) out += '(';
        program(p);
        if (paren) out += ')';
    }

    void program(const Program& p) {
        switch (p.kind) {
        case PKind::Tup:
            out += '(';
            for (std::size_t i = 0; i < p.tup.entries.size(); ++i) {
                if (i) out += ", ";
                int e = p.tup.entries[i];
                out += e == kWildcard ? std::string("_") : sig.programs.at(e);
            }
            out += ')';
            break;
        case PKind::Eps:
            out += "eps";
            break;
        case PKind::Sum:
            prog_operand(*p.left, 1);
            out += " + ";
            prog_operand(*p.right, 2);
            break;
        case PKind::Concat:
            prog_operand(*p.left, 2);
            out += " ; ";
            prog_operand(*p.right, 3);
            break;
        case PKind::Star:
            prog_operand(*p.left, 4);
            out += '*';
            break;
        case PKind::Test:
            out += '{';
            formula(*p.test);
            out += "}?";
            break;
        }
    }
};

}  // namespace

std::string print(const Formula& f, const Signature& sig) {
    Printer p{sig, {}};
    p.formula(f);
    return p.out;
}

std::string print(const Program& p, const Signature& sig) {
    Printer pr{sig, {}};
    pr.program(p);
    return pr.out;
}

// ----------------------------------------------------------------- parsing

ParseError::ParseError(Kind k, std::size_t pos, const std::string& msg)
    : std::runtime_error(msg + " (at offset " + std::to_string(pos) + ")"), kind_(k), pos_(pos) {}

namespace {

enum class Tok {
    Ident, Wild, At, Dot, LParen, RParen, Lt, Gt, LBrack, RBrack, LBrace, RBrace,
    Quest, Star, Plus, Semi, Comma, Bang, Amp, Bar, Arrow, Iff, End
};

struct Token {
    Tok kind;
    std::string text;
    std::size_t pos;
};

std::vector<Token> lex(const std::string& s) {
    std::vector<Token> toks;
    std::size_t i = 0;
    auto single = [&](Tok k) {
        toks.push_back({k, std::string(1, s[i]), i});
        ++i;
    };
    while (i < s.size()) {
        char c = s[i];
        if (std::isspace(static_cast<unsigned char>(c))) {
            ++i;
            continue;
        }
        if (c == '#') {
            while (i < s.size() && s[i] != '\n') ++i;
            continue;
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::size_t j = i;
            while (j < s.size() && (std::isalnum(static_cast<unsigned char>(s[j])) || s[j] == '_' || s[j] == '\''))
                ++j;
            std::string word = s.substr(i, j - i);
            toks.push_back({word == "_" ? Tok::Wild : Tok::Ident, word, i});
            i = j;
            continue;
        }
        switch (c) {
        case '@': single(Tok::At); break;
        case '.': single(Tok::Dot); break;
        case '(': single(Tok::LParen); break;
        case ')': single(Tok::RParen); break;
        case '>': single(Tok::Gt); break;
        case '[': single(Tok::LBrack); break;
        case ']': single(Tok::RBrack); break;
        case '{': single(Tok::LBrace); break;
        case '}': single(Tok::RBrace); break;
        case '?': single(Tok::Quest); break;
        case '*': single(Tok::Star); break;
        case '+': single(Tok::Plus); break;
        case ';': single(Tok::Semi); break;
        case ',': single(Tok::Comma); break;
        case '!': single(Tok::Bang); break;
        case '&': single(Tok::Amp); break;
        case '|': single(Tok::Bar); break;
        case '<':
            if (s.compare(i, 3, "<->") == 0) {
                toks.push_back({Tok::Iff, "<->", i});
                i += 3;
            } else {
                single(Tok::Lt);
            }
            break;
        case '-':
            if (s.compare(i, 2, "->") == 0) {
                toks.push_back({Tok::Arrow, "->", i});
                i += 2;
                break;
            }
            [[fallthrough]];
        default:
            throw ParseError(ParseError::Kind::Syntax, i, std::string("unexpected character '") + c + "'");
        }
    }
    toks.push_back({Tok::End, "", s.size()});
    return toks;
}

bool is_keyword(const std::string& w) {
    static const char* kws[] = {"exists", "forall", "true", "false", "delta", "any", "eps"};
    return std::any_of(std::begin(kws), std::end(kws), [&](const char* k) { return w == k; });
}

class Parser {
public:
    Parser(const std::string& text, const Signature& sig, std::vector<std::string> scope)
        : toks_(lex(text)), sig_(sig), scope_(std::move(scope)), base_(scope_.size()) {}

    FormulaPtr whole_formula() {
        auto f = formula();
        expect(Tok::End, "end of input");
        return f;
    }

    ProgramPtr whole_program() {
        auto p = program();
        expect(Tok::End, "end of input");
        return p;
    }

private:
    std::vector<Token> toks_;
    std::size_t at_ = 0;
    const Signature& sig_;
    std::vector<std::string> scope_;  // innermost last
    std::size_t base_;                // number of free variables

    const Token& peek() const { return toks_[at_]; }
    bool is(Tok k) const { return peek().kind == k; }
    bool is_word(const char* w) const { return peek().kind == Tok::Ident && peek().text == w; }

    Token take() { return toks_[at_++]; }

    Token expect(Tok k, const char* what) {
        if (!is(k)) fail(std::string("expected ") + what);
        return take();
    }

    [[noreturn]] void fail(const std::string& msg) const {
        std::string got = peek().kind == Tok::End ? "end of input" : "'" + peek().text + "'";
        throw ParseError(ParseError::Kind::Syntax, peek().pos, msg + ", got " + got);
    }

    FormulaPtr formula() { return iff(); }

    FormulaPtr iff() {
        auto l = imp();
        while (is(Tok::Iff)) {
            take();
            auto r = imp();
            l = f_and(f_or(f_not(l), r), f_or(f_not(r), l));
        }
        return l;
    }

    FormulaPtr imp() {
        auto l = disj();
        if (is(Tok::Arrow)) {
            take();
            auto r = imp();
            return f_or(f_not(l), r);
        }
        return l;
    }

    FormulaPtr disj() {
        auto l = conj();
        while (is(Tok::Bar)) {
            take();
            l = f_or(l, conj());
        }
        return l;
    }

    FormulaPtr conj() {
        auto l = unary();
        while (is(Tok::Amp)) {
            take();
            l = f_and(l, unary());
        }
        return l;
    }

    void need_quantifier(std::size_t pos, const char* what) const {
        if (scope_.empty())
            throw ParseError(ParseError::Kind::ModalityOutsideQuantifier, pos,
                             std::string(what) + " outside the scope of any path quantifier");
    }

    FormulaPtr quantified(bool exists) {
        take();
        Token v = expect(Tok::Ident, "path variable");
        if (is_keyword(v.text))
            throw ParseError(ParseError::Kind::Syntax, v.pos, "reserved word '" + v.text + "' used as path variable");
        expect(Tok::Dot, "'.'");
        int idx = static_cast<int>(scope_.size());
        scope_.push_back(v.text);
        auto body = formula();  // extends maximally right
        scope_.pop_back();
        return exists ? f_exists(idx, v.text, body) : f_forall(idx, v.text, body);
    }

    FormulaPtr unary() {
        const Token& t = peek();
        if (t.kind == Tok::Bang) {
            take();
            return f_not(unary());
        }
        if (t.kind == Tok::Lt) {
            need_quantifier(t.pos, "diamond modality");
            take();
            auto p = program();
            expect(Tok::Gt, "'>'");
            return f_diamond(p, unary());
        }
        if (t.kind == Tok::LBrack) {
            need_quantifier(t.pos, "box modality");
            take();
            auto p = program();
            expect(Tok::RBrack, "']'");
            return f_box(p, unary());
        }
        if (t.kind == Tok::LParen) {
            take();
            auto f = formula();
            expect(Tok::RParen, "')'");
            return f;
        }
        if (t.kind == Tok::Ident) {
            if (t.text == "exists") return quantified(true);
            if (t.text == "forall") return quantified(false);
            if (t.text == "true") {
                take();
                return f_true();
            }
            if (t.text == "false") {
                take();
                return f_false();
            }
            if (t.text == "delta") {
                need_quantifier(t.pos, "delta modality");
                take();
                return f_delta(program_atom_starred());
            }
            return atom();
        }
        fail("expected formula");
    }

    FormulaPtr atom() {
        Token a = take();
        int ap = sig_.ap_id(a.text);
        if (ap < 0) throw ParseError(ParseError::Kind::Syntax, a.pos, "unknown atomic proposition '" + a.text + "'");
        expect(Tok::At, "'@'");
        Token v = expect(Tok::Ident, "path variable");
        for (std::size_t i = scope_.size(); i-- > 0;) {
            if (scope_[i] == v.text) return f_atom(ap, static_cast<int>(i), v.text);
        }
        throw ParseError(ParseError::Kind::Unbound, v.pos, "unbound path variable '" + v.text + "'");
    }

    // delta takes a full program; sum and concatenation never clash with
    // formula operators so the program can extend maximally.
    ProgramPtr program_atom_starred() { return program(); }

    ProgramPtr program() {
        auto l = concat();
        while (is(Tok::Plus)) {
            take();
            l = p_sum(l, concat());
        }
        return l;
    }

    ProgramPtr concat() {
        auto l = starred();
        while (is(Tok::Semi)) {
            take();
            l = p_concat(l, starred());
        }
        return l;
    }

    ProgramPtr starred() {
        auto p = prog_atom();
        while (is(Tok::Star)) {
            take();
            p = p_star(p);
        }
        return p;
    }

    ProgramPtr prog_atom() {
        const Token& t = peek();
        if (t.kind == Tok::Ident && t.text == "any") {
            take();
            return p_any(scope_.size());
        }
        if (t.kind == Tok::Ident && t.text == "eps") {
            take();
            return p_eps();
        }
        if (t.kind == Tok::LBrace) {
            take();
            auto f = formula();
            expect(Tok::RBrace, "'}'");
            expect(Tok::Quest, "'?'");
            return p_test(f);
        }
        if (t.kind == Tok::LParen) {
            const Token& next = toks_[at_ + 1];
            bool tuple = next.kind == Tok::Wild || (next.kind == Tok::Ident && !is_keyword(next.text));
            if (tuple) return tuple_sym();
            take();
            auto p = program();
            expect(Tok::RParen, "')'");
            return p;
        }
        fail("expected program");
    }

    ProgramPtr tuple_sym() {
        Token open = take();
        TupleSym t;
        while (true) {
            Token e = take();
            if (e.kind == Tok::Wild) {
                t.entries.push_back(kWildcard);
            } else if (e.kind == Tok::Ident) {
                int id = sig_.program_id(e.text);
                if (id < 0)
                    throw ParseError(ParseError::Kind::Syntax, e.pos, "unknown atomic program '" + e.text + "'");
                t.entries.push_back(id);
            } else {
                --at_;
                fail("expected atomic program or '_'");
            }
            if (is(Tok::Comma)) {
                take();
                continue;
            }
            expect(Tok::RParen, "')'");
            break;
        }
        if (t.arity() != scope_.size()) {
            throw ParseError(ParseError::Kind::Arity, open.pos,
                             "tuple of length " + std::to_string(t.arity()) + " where " +
                                 std::to_string(scope_.size()) + " path variables are in scope");
        }
        return p_tup(std::move(t));
    }
};

}  // namespace

FormulaPtr parse_formula(const std::string& text, const Signature& sig,
                         const std::vector<std::string>& free_vars) {
    Parser p(text, sig, free_vars);
    return p.whole_formula();
}

ProgramPtr parse_program(const std::string& text, const Signature& sig, std::size_t arity,
                         const std::vector<std::string>& free_vars) {
    std::vector<std::string> scope = free_vars;
    if (scope.empty()) {
        for (std::size_t i = 1; i <= arity; ++i) scope.push_back("p" + std::to_string(i));
    }
    if (scope.size() != arity) throw std::invalid_argument("free variable list does not match arity");
    Parser p(text, sig, scope);
    return p.whole_program();
}

// --------------------------------------------------------------------- NNF

namespace {

FormulaPtr nnf(const FormulaPtr& f, bool neg);

ProgramPtr nnf_prog(const ProgramPtr& p) {
    switch (p->kind) {
    case PKind::Tup:
    case PKind::Eps:
        return p;
    case PKind::Sum:
        return p_sum(nnf_prog(p->left), nnf_prog(p->right));
    case PKind::Concat:
        return p_concat(nnf_prog(p->left), nnf_prog(p->right));
    case PKind::Star:
        return p_star(nnf_prog(p->left));
    case PKind::Test:
        return p_test(nnf(p->test, false));
    }
    return p;
}

FormulaPtr nnf(const FormulaPtr& f, bool neg) {
    switch (f->kind) {
    case FKind::True:
        return neg ? f_false() : f;
    case FKind::False:
        return neg ? f_true() : f;
    case FKind::Atom:
        return neg ? f_not(f) : f;
    case FKind::Not:
        return nnf(f->left, !neg);
    case FKind::And:
        return neg ? f_or(nnf(f->left, true), nnf(f->right, true))
                   : f_and(nnf(f->left, false), nnf(f->right, false));
    case FKind::Or:
        return neg ? f_and(nnf(f->left, true), nnf(f->right, true))
                   : f_or(nnf(f->left, false), nnf(f->right, false));
    case FKind::Exists:
        return neg ? f_not_exists(f->var, f->name, nnf(f->left, false))
                   : f_exists(f->var, f->name, nnf(f->left, false));
    case FKind::NotExists:
        return neg ? f_exists(f->var, f->name, nnf(f->left, false))
                   : f_not_exists(f->var, f->name, nnf(f->left, false));
    case FKind::Forall:
        return neg ? f_exists(f->var, f->name, nnf(f->left, true))
                   : f_not_exists(f->var, f->name, nnf(f->left, true));
    case FKind::Diamond:
        return neg ? f_box(nnf_prog(f->prog), nnf(f->left, true))
                   : f_diamond(nnf_prog(f->prog), nnf(f->left, false));
    case FKind::Box:
        return neg ? f_diamond(nnf_prog(f->prog), nnf(f->left, true))
                   : f_box(nnf_prog(f->prog), nnf(f->left, false));
    case FKind::Delta:
        return neg ? f_not_delta(nnf_prog(f->prog)) : f_delta(nnf_prog(f->prog));
    case FKind::NotDelta:
        return neg ? f_delta(nnf_prog(f->prog)) : f_not_delta(nnf_prog(f->prog));
    }
    return f;
}

}  // namespace

FormulaPtr to_nnf(const FormulaPtr& f) { return nnf(f, false); }
ProgramPtr to_nnf(const ProgramPtr& p) { return nnf_prog(p); }

}  // namespace hyperpdl

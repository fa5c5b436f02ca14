#include "hyperpdl/omega.hpp"

#include <cctype>
#include <sstream>

namespace hyperpdl {

RegexPtr re_eps() { return std::make_shared<const Regex>(); }

RegexPtr re_sym(OmegaSymbol s) {
    Regex r;
    r.kind = Regex::Kind::Sym;
    r.sym = std::move(s);
    return std::make_shared<const Regex>(std::move(r));
}

namespace {

RegexPtr binary(Regex::Kind k, RegexPtr a, RegexPtr b) {
    Regex r;
    r.kind = k;
    r.left = std::move(a);
    r.right = std::move(b);
    return std::make_shared<const Regex>(std::move(r));
}

}  // namespace

RegexPtr re_union(RegexPtr a, RegexPtr b) { return binary(Regex::Kind::Union, std::move(a), std::move(b)); }
RegexPtr re_concat(RegexPtr a, RegexPtr b) { return binary(Regex::Kind::Concat, std::move(a), std::move(b)); }
RegexPtr re_star(RegexPtr a) { return binary(Regex::Kind::Star, std::move(a), nullptr); }

bool nullable(const Regex& r) {
    switch (r.kind) {
    case Regex::Kind::Eps: return true;
    case Regex::Kind::Sym: return false;
    case Regex::Kind::Union: return nullable(*r.left) || nullable(*r.right);
    case Regex::Kind::Concat: return nullable(*r.left) && nullable(*r.right);
    case Regex::Kind::Star: return true;
    }
    return false;
}

std::vector<std::string> omega_path_names(std::size_t arity) {
    std::vector<std::string> out;
    for (std::size_t i = 1; i <= arity; ++i) out.push_back("p" + std::to_string(i));
    return out;
}

namespace {

class RegexParser {
public:
    RegexParser(const std::string& s, const Signature& sig, std::size_t arity) : s_(s), sig_(sig), n_(arity) {}

    RegexPtr parse() {
        auto r = alt();
        skip();
        if (i_ != s_.size()) fail("unexpected '" + std::string(1, s_[i_]) + "'");
        return r;
    }

private:
    const std::string& s_;
    const Signature& sig_;
    std::size_t n_;
    std::size_t i_ = 0;

    [[noreturn]] void fail(const std::string& msg) const {
        throw OmegaError(0, "column " + std::to_string(i_ + 1) + ": " + msg);
    }

    void skip() {
        while (i_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[i_]))) ++i_;
    }

    bool at(char c) {
        skip();
        return i_ < s_.size() && s_[i_] == c;
    }

    void expect(char c) {
        if (!at(c)) fail(std::string("expected '") + c + "'");
        ++i_;
    }

    std::string ident() {
        skip();
        std::size_t b = i_;
        while (i_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[i_])) || s_[i_] == '_')) ++i_;
        if (b == i_) fail("expected a name");
        return s_.substr(b, i_ - b);
    }

    RegexPtr alt() {
        auto l = seq();
        while (at('+')) {
            ++i_;
            l = re_union(l, seq());
        }
        return l;
    }

    bool starts_atom() {
        skip();
        if (i_ >= s_.size()) return false;
        char c = s_[i_];
        return c == '[' || c == '(' || s_.compare(i_, 3, "eps") == 0;
    }

    RegexPtr seq() {
        auto l = postfix();
        while (true) {
            if (at(';')) {
                ++i_;
                l = re_concat(l, postfix());
            } else if (starts_atom()) {
                l = re_concat(l, postfix());
            } else {
                return l;
            }
        }
    }

    RegexPtr postfix() {
        auto r = atom();
        while (at('*')) {
            ++i_;
            r = re_star(r);
        }
        return r;
    }

    RegexPtr atom() {
        skip();
        if (at('(')) {
            ++i_;
            auto r = alt();
            expect(')');
            return r;
        }
        if (at('[')) return re_sym(symbol());
        if (s_.compare(i_, 3, "eps") == 0) {
            i_ += 3;
            return re_eps();
        }
        fail("expected a symbol, 'eps' or '('");
    }

    OmegaSymbol symbol() {
        OmegaSymbol out;
        expect('[');
        while (true) {
            expect('{');
            std::uint64_t set = 0;
            while (!at('}')) {
                std::string a = ident();
                int id = sig_.ap_id(a);
                if (id < 0) fail("undeclared proposition '" + a + "'");
                set |= std::uint64_t{1} << id;
                if (at(',')) ++i_;
            }
            ++i_;
            out.sets.push_back(set);
            if (at(',')) {
                ++i_;
                continue;
            }
            expect(']');
            break;
        }
        expect('|');
        expect('(');
        while (true) {
            std::string p = ident();
            if (p == "_") {
                out.tup.entries.push_back(kWildcard);
            } else {
                int id = sig_.program_id(p);
                if (id < 0) fail("undeclared program '" + p + "'");
                out.tup.entries.push_back(id);
            }
            if (at(',')) {
                ++i_;
                continue;
            }
            expect(')');
            break;
        }
        if (out.sets.size() != n_ || out.tup.arity() != n_)
            fail("symbol arity differs from the declared arity " + std::to_string(n_));
        return out;
    }
};

std::string trim(const std::string& s) {
    std::size_t b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    return s.substr(b, s.find_last_not_of(" \t\r") - b + 1);
}

std::vector<std::string> split_words(const std::string& s) {
    std::istringstream in(s);
    std::vector<std::string> out;
    std::string w;
    while (in >> w) out.push_back(w);
    return out;
}

}  // namespace

RegexPtr parse_regex(const std::string& text, const Signature& sig, std::size_t arity) {
    return RegexParser(text, sig, arity).parse();
}

OmegaRegularSpec parse_omega_spec(const std::string& text) {
    OmegaRegularSpec spec;
    std::istringstream in(text);
    std::string raw;
    std::size_t ln = 0;
    struct Pending {
        std::string stem, loop;
        std::size_t stem_line = 0, loop_line = 0, line = 0;
    };
    std::vector<Pending> blocks;
    while (std::getline(in, raw)) {
        ++ln;
        auto h = raw.find('#');
        if (h != std::string::npos) raw.erase(h);
        std::string line = trim(raw);
        if (line.empty()) continue;
        auto w = split_words(line);
        if (w[0] == "aps") {
            spec.sig.aps.assign(w.begin() + 1, w.end());
        } else if (w[0] == "programs") {
            spec.sig.programs.assign(w.begin() + 1, w.end());
        } else if (w[0] == "arity") {
            if (w.size() != 2) throw OmegaError(ln, "arity takes one number");
            try {
                spec.arity = std::stoul(w[1]);
            } catch (const std::exception&) {
                throw OmegaError(ln, "arity takes one number");
            }
            if (spec.arity == 0) throw OmegaError(ln, "arity must be positive");
        } else if (line == "pair:") {
            blocks.push_back({});
            blocks.back().line = ln;
        } else if (line.rfind("stem:", 0) == 0 || line.rfind("loop:", 0) == 0) {
            if (blocks.empty()) throw OmegaError(ln, "stem/loop outside a pair: block");
            bool stem = line[0] == 's';
            auto& b = blocks.back();
            std::string& slot = stem ? b.stem : b.loop;
            std::size_t& sl = stem ? b.stem_line : b.loop_line;
            if (sl) throw OmegaError(ln, std::string("duplicate ") + (stem ? "stem" : "loop"));
            slot = trim(line.substr(5));
            sl = ln;
        } else {
            throw OmegaError(ln, "unknown directive '" + w[0] + "'");
        }
    }
    if (spec.sig.programs.empty()) throw OmegaError(ln, "no programs declared");
    if (blocks.empty()) throw OmegaError(ln, "no pair: blocks");
    for (const auto& b : blocks) {
        if (!b.loop_line) throw OmegaError(b.line, "pair without a loop");
        OmegaPair p;
        try {
            p.stem = b.stem_line && !b.stem.empty() ? parse_regex(b.stem, spec.sig, spec.arity) : re_eps();
        } catch (const OmegaError& e) {
            throw OmegaError(b.stem_line, e.what());
        }
        try {
            p.loop = parse_regex(b.loop, spec.sig, spec.arity);
        } catch (const OmegaError& e) {
            throw OmegaError(b.loop_line, e.what());
        }
        if (nullable(*p.loop)) throw OmegaError(b.loop_line, "loop language contains the empty word");
        spec.pairs.push_back(p);
    }
    return spec;
}

std::string print_regex(const Regex& r, const Signature& sig) {
    switch (r.kind) {
    case Regex::Kind::Eps: return "eps";
    case Regex::Kind::Sym: {
        std::string s = "[";
        for (std::size_t l = 0; l < r.sym.sets.size(); ++l) {
            s += l ? ",{" : "{";
            bool first = true;
            for (std::size_t a = 0; a < sig.aps.size(); ++a) {
                if (!((r.sym.sets[l] >> a) & 1)) continue;
                s += (first ? "" : " ") + sig.aps[a];
                first = false;
            }
            s += "}";
        }
        s += "]|(";
        for (std::size_t l = 0; l < r.sym.tup.entries.size(); ++l) {
            int e = r.sym.tup.entries[l];
            s += (l ? "," : "") + (e == kWildcard ? std::string("_") : sig.programs.at(e));
        }
        return s + ")";
    }
    case Regex::Kind::Union: return "(" + print_regex(*r.left, sig) + " + " + print_regex(*r.right, sig) + ")";
    case Regex::Kind::Concat: return print_regex(*r.left, sig) + " " + print_regex(*r.right, sig);
    case Regex::Kind::Star: return "(" + print_regex(*r.left, sig) + ")*";
    }
    return "";
}

FormulaPtr symbol_test(const OmegaSymbol& s, const Signature& sig) {
    auto names = omega_path_names(s.sets.size());
    FormulaPtr out;
    for (std::size_t l = 0; l < s.sets.size(); ++l) {
        for (std::size_t a = 0; a < sig.aps.size(); ++a) {
            FormulaPtr lit = f_atom(static_cast<int>(a), static_cast<int>(l), names[l]);
            if (!((s.sets[l] >> a) & 1)) lit = f_not(lit);
            out = out ? f_and(out, lit) : lit;
        }
    }
    return out ? out : f_true();
}

ProgramPtr regex_program(const Regex& r, std::size_t arity, const Signature& sig) {
    switch (r.kind) {
    case Regex::Kind::Eps: return p_eps();
    case Regex::Kind::Sym: return p_concat(p_test(symbol_test(r.sym, sig)), p_tup(r.sym.tup));
    case Regex::Kind::Union: return p_sum(regex_program(*r.left, arity, sig), regex_program(*r.right, arity, sig));
    case Regex::Kind::Concat:
        return p_concat(regex_program(*r.left, arity, sig), regex_program(*r.right, arity, sig));
    case Regex::Kind::Star: return p_star(regex_program(*r.left, arity, sig));
    }
    return p_eps();
}

FormulaPtr compile_omega(const OmegaRegularSpec& spec) {
    if (spec.pairs.empty()) throw OmegaError(0, "no pairs");
    FormulaPtr out;
    for (const auto& p : spec.pairs) {
        if (nullable(*p.loop)) throw OmegaError(0, "loop language contains the empty word");
        FormulaPtr d = f_diamond(regex_program(*p.stem, spec.arity, spec.sig),
                                 f_delta(regex_program(*p.loop, spec.arity, spec.sig)));
        out = out ? f_or(out, d) : d;
    }
    return out;
}

}  // namespace hyperpdl

#include "hyperpdl/marked_nfa.hpp"

#include <algorithm>
#include <set>
#include <sstream>
#include <stdexcept>

namespace hyperpdl {

GuardPtr Guard::t() {
    static const GuardPtr g = std::make_shared<Guard>(Guard{Kind::True, -1, nullptr, nullptr});
    return g;
}

GuardPtr Guard::f() {
    static const GuardPtr g = std::make_shared<Guard>(Guard{Kind::False, -1, nullptr, nullptr});
    return g;
}

GuardPtr Guard::v(int k) { return std::make_shared<Guard>(Guard{Kind::Var, k, nullptr, nullptr}); }

GuardPtr Guard::conj(GuardPtr a, GuardPtr b) {
    if (a->kind == Kind::False || b->kind == Kind::False) return f();
    if (a->kind == Kind::True) return b;
    if (b->kind == Kind::True) return a;
    return std::make_shared<Guard>(Guard{Kind::And, -1, std::move(a), std::move(b)});
}

GuardPtr Guard::disj(GuardPtr a, GuardPtr b) {
    if (a->kind == Kind::True || b->kind == Kind::True) return t();
    if (a->kind == Kind::False) return b;
    if (b->kind == Kind::False) return a;
    return std::make_shared<Guard>(Guard{Kind::Or, -1, std::move(a), std::move(b)});
}

bool Guard::eval(TestMask assignment) const {
    switch (kind) {
    case Kind::True: return true;
    case Kind::False: return false;
    case Kind::Var: return (assignment >> var) & 1;
    case Kind::And: return left->eval(assignment) && right->eval(assignment);
    case Kind::Or: return left->eval(assignment) || right->eval(assignment);
    }
    return false;
}

std::size_t Guard::size() const {
    if (kind == Kind::And || kind == Kind::Or) return 1 + left->size() + right->size();
    return 1;
}

std::string Guard::str() const {
    switch (kind) {
    case Kind::True: return "true";
    case Kind::False: return "false";
    case Kind::Var: return "v" + std::to_string(var);
    case Kind::And: return "(" + left->str() + " & " + right->str() + ")";
    case Kind::Or: return "(" + left->str() + " | " + right->str() + ")";
    }
    return "?";
}

namespace {

// Nodes of one sub-automaton occupy the id range [lo, hi).
struct Frag {
    int q0, qf, lo, hi;
};

class Builder {
public:
    explicit Builder(MarkedNfa& m) : m_(m) {}

    Frag build(const Program& p) {
        switch (p.kind) {
        case PKind::Tup: {
            int a = node(), b = node();
            add_tup(a, p.tup, b);
            set_dp(a, a, Guard::t());
            set_dp(b, b, Guard::t());
            set_dp(a, b, Guard::f());
            set_dp(b, a, Guard::f());
            return {a, b, a, b + 1};
        }
        case PKind::Eps: {
            int a = node(), b = node();
            m_.eps[a].push_back(b);
            set_dp(a, a, Guard::t());
            set_dp(b, b, Guard::t());
            set_dp(a, b, Guard::t());
            set_dp(b, a, Guard::f());
            return {a, b, a, b + 1};
        }
        case PKind::Test: {
            int k = test_id(p.test);
            int a = node(), b = node(), c = node();
            m_.marking[b] = k;
            m_.eps[a].push_back(b);
            m_.eps[b].push_back(c);
            int ids[3] = {a, b, c};
            for (int i = 0; i < 3; ++i) {
                for (int j = 0; j < 3; ++j) {
                    GuardPtr g;
                    if (i == j && i != 1) g = Guard::t();
                    else if (i > j) g = Guard::f();
                    else g = Guard::v(k);
                    set_dp(ids[i], ids[j], g);
                }
            }
            return {a, c, a, c + 1};
        }
        case PKind::Sum: {
            int q0 = node();
            Frag l = build(*p.left);
            Frag r = build(*p.right);
            int qf = node();
            m_.eps[q0].push_back(l.q0);
            m_.eps[q0].push_back(r.q0);
            m_.eps[l.qf].push_back(qf);
            m_.eps[r.qf].push_back(qf);
            Frag me{q0, qf, q0, qf + 1};
            clear_cross(me, {l, r});
            // the fresh states are unmarked, so their reflexive pairs hold
            set_dp(q0, q0, Guard::t());
            set_dp(qf, qf, Guard::t());
            for (const Frag& c : {l, r}) {
                for (int q = c.lo; q < c.hi; ++q) {
                    set_dp(q0, q, dp_at(c.q0, q));
                    set_dp(q, qf, dp_at(q, c.qf));
                }
            }
            set_dp(q0, qf, Guard::disj(dp_at(l.q0, l.qf), dp_at(r.q0, r.qf)));
            return me;
        }
        case PKind::Concat: {
            Frag l = build(*p.left);
            Frag r = build(*p.right);
            m_.eps[l.qf].push_back(r.q0);
            Frag me{l.q0, r.qf, l.lo, r.hi};
            clear_cross(me, {l, r});
            for (int q = l.lo; q < l.hi; ++q)
                for (int q2 = r.lo; q2 < r.hi; ++q2)
                    set_dp(q, q2, Guard::conj(dp_at(q, l.qf), dp_at(r.q0, q2)));
            return me;
        }
        case PKind::Star: {
            int id = static_cast<int>(m_.star_q0.size());
            m_.star_q0.push_back(-1);
            m_.star_qf.push_back(-1);
            scope_.push_back(id);
            int q0 = node();
            Frag b = build(*p.left);
            int qf = node();
            scope_.pop_back();
            m_.star_q0[id] = q0;
            m_.star_qf[id] = qf;
            m_.eps[q0].push_back(b.q0);
            m_.eps[q0].push_back(qf);
            m_.eps[qf].push_back(q0);  // backwards edge, ignored by dp
            m_.eps[b.qf].push_back(qf);
            Frag me{q0, qf, q0, qf + 1};
            clear_cross(me, {b});
            set_dp(q0, q0, Guard::t());
            set_dp(qf, qf, Guard::t());
            set_dp(q0, qf, Guard::t());
            for (int q = b.lo; q < b.hi; ++q) {
                set_dp(q0, q, dp_at(b.q0, q));
                set_dp(q, qf, dp_at(q, b.qf));
            }
            return me;
        }
        }
        throw std::logic_error("unknown program kind");
    }

private:
    MarkedNfa& m_;
    std::vector<int> scope_;

    int node() {
        int id = m_.num_states();
        m_.eps.emplace_back();
        m_.tup_out.emplace_back();
        m_.marking.push_back(-1);
        m_.star_scope.push_back(scope_);
        for (auto& row : m_.dp) row.push_back(Guard::f());
        m_.dp.emplace_back(m_.eps.size(), Guard::f());
        return id;
    }

    void add_tup(int a, const TupleSym& t, int b) {
        m_.tup_out[a].push_back(static_cast<int>(m_.tup_edges.size()));
        m_.tup_edges.push_back({a, t, b});
    }

    int test_id(const FormulaPtr& f) {
        for (std::size_t i = 0; i < m_.tests.size(); ++i)
            if (equal(*m_.tests[i], *f)) return static_cast<int>(i);
        if (m_.tests.size() >= 64) throw std::length_error("more than 64 distinct tests in one program");
        m_.tests.push_back(f);
        return static_cast<int>(m_.tests.size()) - 1;
    }

    void set_dp(int q, int q2, GuardPtr g) { m_.dp[q][q2] = std::move(g); }
    const GuardPtr& dp_at(int q, int q2) const { return m_.dp[q][q2]; }

    // pairs inside `me` that are not inside one child default to false
    void clear_cross(const Frag& me, std::initializer_list<Frag> kids) {
        auto child_of = [&](int q) {
            int i = 0;
            for (const Frag& c : kids) {
                if (q >= c.lo && q < c.hi) return i;
                ++i;
            }
            return -1;
        };
        for (int q = me.lo; q < me.hi; ++q) {
            int cq = child_of(q);
            for (int q2 = me.lo; q2 < me.hi; ++q2) {
                if (cq < 0 || cq != child_of(q2)) set_dp(q, q2, Guard::f());
            }
        }
    }
};

}  // namespace

MarkedNfa build_marked_nfa(const ProgramPtr& alpha, std::size_t n) {
    MarkedNfa m;
    m.arity = n;
    m.program_size = size(*alpha);
    Builder b(m);
    Frag top = b.build(*alpha);
    m.initial = top.q0;
    m.final_state = top.qf;
    for (const TupEdge& e : m.tup_edges) {
        if (e.guard.arity() != n) throw std::logic_error("tuple arity does not match the number of paths");
    }
    if (static_cast<std::size_t>(m.num_states()) > 3 * m.program_size)
        throw std::logic_error("marked NFA exceeds 3*size(alpha) states");
    if (m.marking[m.initial] >= 0 || m.marking[m.final_state] >= 0)
        throw std::logic_error("initial or final state of a marked NFA carries a test");
    return m;
}

std::vector<std::pair<TestMask, int>> eps_closure(const MarkedNfa& m, int q) {
    std::set<std::pair<int, TestMask>> seen;
    std::vector<std::pair<int, TestMask>> stack{{q, m.mark_mask(q)}};
    seen.insert(stack.back());
    while (!stack.empty()) {
        auto [x, mask] = stack.back();
        stack.pop_back();
        for (int y : m.eps[x]) {
            std::pair<int, TestMask> next{y, mask | m.mark_mask(y)};
            if (seen.insert(next).second) stack.push_back(next);
        }
    }
    std::vector<std::pair<TestMask, int>> out;
    out.reserve(seen.size());
    for (auto [x, mask] : seen) out.emplace_back(mask, x);
    return out;
}

std::vector<ReachFact> eps_reach(const MarkedNfa& m) {
    std::vector<ReachFact> out;
    for (int q = 0; q < m.num_states(); ++q)
        for (auto [mask, q2] : eps_closure(m, q)) out.push_back({q, mask, q2});
    return out;
}

std::vector<std::pair<TestMask, int>> tau_reach(const MarkedNfa& m, int q, const std::vector<int>& progs) {
    std::set<std::pair<TestMask, int>> out;
    for (auto [mask, q1] : eps_closure(m, q)) {
        for (int ei : m.tup_out[q1]) {
            const TupEdge& e = m.tup_edges[ei];
            if (e.guard.matches(progs)) out.insert({mask, e.dst});
        }
    }
    return {out.begin(), out.end()};
}

const GuardPtr& dp(const MarkedNfa& m, int q, int q2) { return m.dp[q][q2]; }

int common_star(const MarkedNfa& m, int q, int q2) {
    const auto& a = m.star_scope[q];
    const auto& b = m.star_scope[q2];
    std::size_t i = 0;
    while (i < a.size() && i < b.size() && a[i] == b[i]) ++i;
    return i == 0 ? -1 : a[i - 1];
}

GuardPtr eps_formula(const MarkedNfa& m, int q, int q2) {
    int s = common_star(m, q, q2);
    if (s < 0) return m.dp[q][q2];
    return Guard::disj(m.dp[q][q2], Guard::conj(m.dp[q][m.star_qf[s]], m.dp[m.star_q0[s]][q2]));
}

bool is_deterministic(const MarkedNfa& m) {
    // per position: program ids used in guards plus one fresh id
    std::vector<std::vector<int>> choices(m.arity);
    for (std::size_t l = 0; l < m.arity; ++l) {
        std::set<int> ids;
        for (const TupEdge& e : m.tup_edges)
            if (e.guard.entries[l] != kWildcard) ids.insert(e.guard.entries[l]);
        int fresh = ids.empty() ? 0 : *ids.rbegin() + 1;
        choices[l].assign(ids.begin(), ids.end());
        choices[l].push_back(fresh);
    }
    std::vector<int> letter(m.arity, 0);
    std::vector<std::size_t> idx(m.arity, 0);
    while (true) {
        for (std::size_t l = 0; l < m.arity; ++l) letter[l] = choices[l][idx[l]];
        for (int q = 0; q < m.num_states(); ++q) {
            std::set<int> targets;
            for (auto [mask, q2] : tau_reach(m, q, letter)) targets.insert(q2);
            if (targets.size() > 1) return false;
        }
        std::size_t l = 0;
        while (l < m.arity && ++idx[l] == choices[l].size()) idx[l++] = 0;
        if (l == m.arity) break;
    }
    return true;
}

std::string to_dot(const MarkedNfa& m, const Signature& sig) {
    std::ostringstream os;
    os << "digraph marked_nfa {\n  rankdir=LR;\n";
    for (int q = 0; q < m.num_states(); ++q) {
        std::string label = "q" + std::to_string(q);
        if (m.marking[q] >= 0) label += "\\n" + print(*m.tests[m.marking[q]], sig) + "?";
        os << "  n" << q << " [label=\"" << label << "\"";
        if (q == m.final_state) os << ", shape=doublecircle";
        else os << ", shape=circle";
        os << "];\n";
    }
    os << "  start [shape=point];\n  start -> n" << m.initial << ";\n";
    for (int q = 0; q < m.num_states(); ++q)
        for (int q2 : m.eps[q]) os << "  n" << q << " -> n" << q2 << " [style=dashed, label=\"eps\"];\n";
    for (const TupEdge& e : m.tup_edges)
        os << "  n" << e.src << " -> n" << e.dst << " [label=\"" << print(*p_tup(e.guard), sig) << "\"];\n";
    os << "}\n";
    return os.str();
}

}  // namespace hyperpdl

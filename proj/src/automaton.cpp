#include "hyperpdl/automaton.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <set>
#include <sstream>
#include <stdexcept>

namespace hyperpdl {

// ------------------------------------------------------------------ PosBool

PosBool PosBool::t() {
    static const PosBool v(std::make_shared<const Node>(Node{Kind::True, 0, {}}));
    return v;
}

PosBool PosBool::f() {
    static const PosBool v(std::make_shared<const Node>(Node{Kind::False, 0, {}}));
    return v;
}

PosBool PosBool::var(StateId q) {
    if (q == kSinkTrue) return t();
    if (q == kSinkFalse) return f();
    return PosBool(std::make_shared<const Node>(Node{Kind::Var, q, {}}));
}

PosBool PosBool::conj(std::vector<PosBool> kids) {
    std::vector<PosBool> flat;
    std::set<StateId> vars;
    for (auto& k : kids) {
        if (k.is_false()) return f();
        if (k.is_true()) continue;
        if (k.kind() == Kind::And) {
            for (const auto& g : k.kids()) {
                if (g.kind() == Kind::Var && !vars.insert(g.state()).second) continue;
                flat.push_back(g);
            }
        } else {
            if (k.kind() == Kind::Var && !vars.insert(k.state()).second) continue;
            flat.push_back(std::move(k));
        }
    }
    if (flat.empty()) return t();
    if (flat.size() == 1) return flat.front();
    return PosBool(std::make_shared<const Node>(Node{Kind::And, 0, std::move(flat)}));
}

PosBool PosBool::disj(std::vector<PosBool> kids) {
    std::vector<PosBool> flat;
    std::set<StateId> vars;
    for (auto& k : kids) {
        if (k.is_true()) return t();
        if (k.is_false()) continue;
        if (k.kind() == Kind::Or) {
            for (const auto& g : k.kids()) {
                if (g.kind() == Kind::Var && !vars.insert(g.state()).second) continue;
                flat.push_back(g);
            }
        } else {
            if (k.kind() == Kind::Var && !vars.insert(k.state()).second) continue;
            flat.push_back(std::move(k));
        }
    }
    if (flat.empty()) return f();
    if (flat.size() == 1) return flat.front();
    return PosBool(std::make_shared<const Node>(Node{Kind::Or, 0, std::move(flat)}));
}

PosBool PosBool::dual() const {
    switch (kind()) {
    case Kind::True: return f();
    case Kind::False: return t();
    case Kind::Var: return *this;
    case Kind::And:
    case Kind::Or: {
        std::vector<PosBool> ks;
        for (const auto& k : kids()) ks.push_back(k.dual());
        return kind() == Kind::And ? disj(std::move(ks)) : conj(std::move(ks));
    }
    }
    return *this;
}

bool PosBool::eval(const StateSet& chosen) const {
    switch (kind()) {
    case Kind::True: return true;
    case Kind::False: return false;
    case Kind::Var: return std::binary_search(chosen.begin(), chosen.end(), state());
    case Kind::And:
        return std::all_of(kids().begin(), kids().end(), [&](const PosBool& k) { return k.eval(chosen); });
    case Kind::Or:
        return std::any_of(kids().begin(), kids().end(), [&](const PosBool& k) { return k.eval(chosen); });
    }
    return false;
}

void PosBool::collect_vars(StateSet& out) const {
    if (kind() == Kind::Var) {
        out.push_back(state());
        return;
    }
    for (const auto& k : kids()) k.collect_vars(out);
}

std::string PosBool::str() const {
    switch (kind()) {
    case Kind::True: return "true";
    case Kind::False: return "false";
    case Kind::Var: return std::to_string(state());
    case Kind::And:
    case Kind::Or: {
        std::string s = "(";
        for (std::size_t i = 0; i < kids().size(); ++i) {
            if (i) s += kind() == Kind::And ? " & " : " | ";
            s += kids()[i].str();
        }
        return s + ")";
    }
    }
    return "?";
}

namespace {

StateSet set_union(const StateSet& a, const StateSet& b) {
    StateSet out;
    std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

void prune(std::vector<StateSet>& ms) {
    std::sort(ms.begin(), ms.end(), [](const StateSet& a, const StateSet& b) {
        return a.size() != b.size() ? a.size() < b.size() : a < b;
    });
    ms.erase(std::unique(ms.begin(), ms.end()), ms.end());
    std::vector<StateSet> keep;
    for (auto& m : ms) {
        bool dominated = std::any_of(keep.begin(), keep.end(), [&](const StateSet& k) {
            return std::includes(m.begin(), m.end(), k.begin(), k.end());
        });
        if (!dominated) keep.push_back(std::move(m));
    }
    ms = std::move(keep);
}

}  // namespace

std::vector<StateSet> minimal_models(const PosBool& b) {
    switch (b.kind()) {
    case PosBool::Kind::True: return {StateSet{}};
    case PosBool::Kind::False: return {};
    case PosBool::Kind::Var: return {StateSet{b.state()}};
    case PosBool::Kind::Or: {
        std::vector<StateSet> out;
        for (const auto& k : b.kids()) {
            auto km = minimal_models(k);
            out.insert(out.end(), std::make_move_iterator(km.begin()), std::make_move_iterator(km.end()));
        }
        prune(out);
        return out;
    }
    case PosBool::Kind::And: {
        std::vector<StateSet> acc{StateSet{}};
        for (const auto& k : b.kids()) {
            auto km = minimal_models(k);
            std::vector<StateSet> next;
            for (const auto& a : acc)
                for (const auto& m : km) next.push_back(set_union(a, m));
            prune(next);
            acc = std::move(next);
            if (acc.empty()) break;
        }
        return acc;
    }
    }
    return {};
}

// ----------------------------------------------------------------- letters

std::size_t LetterDomain::size() const {
    std::size_t base = static_cast<std::size_t>(num_worlds) * static_cast<std::size_t>(num_programs);
    std::size_t n = 1;
    for (std::size_t i = 0; i < arity; ++i) n *= base;
    return n;
}

Letter LetterDomain::letter(std::size_t index) const {
    Letter a;
    a.worlds.resize(arity);
    a.progs.resize(arity);
    for (std::size_t i = 0; i < arity; ++i) {
        a.progs[i] = static_cast<int>(index % num_programs);
        index /= num_programs;
        a.worlds[i] = static_cast<int>(index % num_worlds);
        index /= num_worlds;
    }
    return a;
}

std::size_t LetterDomain::index(const Letter& a) const {
    if (!contains(a)) throw std::out_of_range("letter outside the automaton's domain");
    std::size_t idx = 0;
    for (std::size_t i = arity; i-- > 0;) {
        idx = idx * num_worlds + static_cast<std::size_t>(a.worlds[i]);
        idx = idx * num_programs + static_cast<std::size_t>(a.progs[i]);
    }
    return idx;
}

bool LetterDomain::contains(const Letter& a) const {
    if (a.worlds.size() != arity || a.progs.size() != arity) return false;
    for (std::size_t i = 0; i < arity; ++i) {
        if (a.worlds[i] < 0 || a.worlds[i] >= num_worlds) return false;
        if (a.progs[i] < 0 || a.progs[i] >= num_programs) return false;
    }
    return true;
}

std::string Automaton::state_name(StateId q) const {
    if (q == kSinkTrue) return "true";
    if (q == kSinkFalse) return "false";
    return "q" + std::to_string(q);
}

AutomatonPtr borrow(const Automaton& a) {
    return AutomatonPtr(&a, [](const Automaton*) {});
}

// --------------------------------------------------------------- explicit

ExplicitAba::ExplicitAba(LetterDomain d, std::size_t n, StateId init)
    : dom_(d), init_(init), acc_(std::max<std::size_t>(n, 2), false),
      table_(std::max<std::size_t>(n, 2), std::vector<PosBool>(d.size(), PosBool::f())),
      names_(std::max<std::size_t>(n, 2)) {
    acc_[kSinkTrue] = true;
    for (auto& b : table_[kSinkTrue]) b = PosBool::t();
}

PosBool ExplicitAba::rho(StateId q, const Letter& a) const {
    if (q == kSinkTrue) return PosBool::t();
    if (q == kSinkFalse) return PosBool::f();
    return table_.at(q).at(dom_.index(a));
}

std::string ExplicitAba::state_name(StateId q) const {
    if (q < names_.size() && !names_[q].empty()) return names_[q];
    return Automaton::state_name(q);
}

// ---------------------------------------------------------------------- MH

MhNba::MhNba(AutomatonPtr src) : src_(std::move(src)) {
    pairs_.resize(2);  // sinks; (empty, empty) is the true sink
    ids_[{StateSet{}, StateSet{}}] = kSinkTrue;
    StateId q0 = src_->initial();
    if (q0 == kSinkTrue) init_ = kSinkTrue;
    else if (q0 == kSinkFalse) init_ = kSinkFalse;
    else init_ = intern({q0}, src_->accepting(q0) ? StateSet{} : StateSet{q0});
}

StateId MhNba::intern(StateSet s, StateSet o) const {
    auto key = std::make_pair(std::move(s), std::move(o));
    auto it = ids_.find(key);
    if (it != ids_.end()) return it->second;
    auto id = static_cast<StateId>(pairs_.size());
    pairs_.push_back(key);
    ids_.emplace(std::move(key), id);
    return id;
}

std::size_t MhNba::num_states() const {
    std::lock_guard<std::mutex> lock(mu_);
    return pairs_.size();
}

bool MhNba::accepting(StateId q) const {
    if (q == kSinkTrue) return true;
    if (q == kSinkFalse) return false;
    std::lock_guard<std::mutex> lock(mu_);
    return pairs_.at(q).second.empty();
}

std::pair<StateSet, StateSet> MhNba::pair_of(StateId q) const {
    std::lock_guard<std::mutex> lock(mu_);
    return pairs_.at(q);
}

std::string MhNba::state_name(StateId q) const {
    if (q == kSinkTrue || q == kSinkFalse) return Automaton::state_name(q);
    auto [s, o] = pair_of(q);
    std::string out = "({";
    for (std::size_t i = 0; i < s.size(); ++i) out += (i ? "," : "") + src_->state_name(s[i]);
    out += "},{";
    for (std::size_t i = 0; i < o.size(); ++i) out += (i ? "," : "") + src_->state_name(o[i]);
    return out + "})";
}

namespace {

bool subset(const StateSet& a, const StateSet& b) { return std::includes(b.begin(), b.end(), a.begin(), a.end()); }

std::vector<std::pair<StateSet, StateSet>> prune_dominated(std::vector<std::pair<StateSet, StateSet>> v) {
    std::sort(v.begin(), v.end(), [](const auto& x, const auto& y) {
        return x.first.size() + x.second.size() < y.first.size() + y.second.size();
    });
    std::vector<std::pair<StateSet, StateSet>> out;
    for (auto& p : v) {
        bool dominated = std::any_of(out.begin(), out.end(), [&](const auto& o) {
            return subset(o.first, p.first) && subset(o.second, p.second);
        });
        if (!dominated) out.push_back(std::move(p));
    }
    return out;
}

}  // namespace

PosBool MhNba::rho(StateId q, const Letter& a) const {
    if (q == kSinkTrue) return PosBool::t();
    if (q == kSinkFalse) return PosBool::f();
    const LetterDomain& dom = src_->domain();
    std::lock_guard<std::mutex> lock(mu_);
    std::uint64_t key = 0;
    bool cacheable = dom.contains(a);
    if (cacheable) {
        key = static_cast<std::uint64_t>(q) * dom.size() + dom.index(a);
        auto it = cache_.find(key);
        if (it != cache_.end()) return it->second;
    }
    const auto [S, O] = pairs_.at(q);
    std::vector<std::vector<StateSet>> models;
    models.reserve(S.size());
    for (StateId s : S) {
        models.push_back(minimal_models(src_->rho(s, a)));
        if (models.back().empty()) {
            if (cacheable) cache_.emplace(key, PosBool::f());
            return PosBool::f();
        }
    }
    // partial successor pairs, deduplicated after every state; a pair that
    // contains another one componentwise is dropped
    using Pair = std::pair<StateSet, StateSet>;
    std::vector<Pair> frontier{{{}, {}}};
    for (std::size_t i = 0; i < S.size(); ++i) {
        bool owes = std::binary_search(O.begin(), O.end(), S[i]);
        std::set<Pair> next;
        for (const auto& [s1, o1] : frontier)
            for (const StateSet& m : models[i]) next.emplace(set_union(s1, m), owes ? set_union(o1, m) : o1);
        frontier = prune_dominated(std::vector<Pair>(next.begin(), next.end()));
    }
    std::set<Pair> succ;
    for (auto& [s1, o1] : frontier) {
        const StateSet& base = O.empty() ? s1 : o1;
        StateSet o2;
        for (StateId x : base)
            if (!src_->accepting(x)) o2.push_back(x);
        succ.emplace(s1, std::move(o2));
    }
    std::vector<PosBool> out;
    for (auto& [s1, o1] : succ) out.push_back(PosBool::var(intern(s1, o1)));
    PosBool res = PosBool::disj(std::move(out));
    if (cacheable) cache_.emplace(key, res);
    return res;
}

std::size_t MhNba::materialize() const {
    reachable_states(*this);
    return num_states();
}

// -------------------------------------------------------------- complement

ComplementAba::ComplementAba(AutomatonPtr src) : src_(std::move(src)) {
    for (StateId q : reachable_states(*src_)) {
        if (q == kSinkTrue || q == kSinkFalse) continue;
        index_[q] = states_.size();
        states_.push_back(q);
    }
    m_ = states_.size();
    StateId q0 = src_->initial();
    if (q0 == kSinkTrue) init_ = kSinkFalse;
    else if (q0 == kSinkFalse) init_ = kSinkTrue;
    else init_ = encode(index_.at(q0), 2 * m_);
}

bool ComplementAba::accepting(StateId q) const {
    if (q == kSinkTrue) return true;
    if (q == kSinkFalse) return false;
    return ((q - 2) % (2 * m_ + 1)) % 2 == 1;
}

PosBool ComplementAba::release(StateId q, std::size_t r) const {
    auto it = index_.find(q);
    if (it == index_.end()) throw std::logic_error("complement reached an unexplored source state");
    bool fin = src_->accepting(q);
    // ranks only shrink, and a higher rank of the same parity accepts a
    // superset, so the two highest admissible ranks suffice
    std::vector<PosBool> opts;
    std::size_t even = r % 2 == 0 ? r : r - 1;
    opts.push_back(PosBool::var(encode(it->second, even)));
    if (!fin) {
        if (r % 2 == 1) opts.push_back(PosBool::var(encode(it->second, r)));
        else if (r >= 1) opts.push_back(PosBool::var(encode(it->second, r - 1)));
    }
    return PosBool::disj(std::move(opts));
}

PosBool ComplementAba::rho(StateId q, const Letter& a) const {
    if (q == kSinkTrue) return PosBool::t();
    if (q == kSinkFalse) return PosBool::f();
    std::size_t i = (q - 2) / (2 * m_ + 1);
    std::size_t r = (q - 2) % (2 * m_ + 1);
    StateId s = states_.at(i);
    if (r % 2 == 1 && src_->accepting(s)) return PosBool::f();
    return src_->rho(s, a).dual().map_vars([&](StateId x) { return release(x, r); });
}

std::string ComplementAba::state_name(StateId q) const {
    if (q == kSinkTrue || q == kSinkFalse) return Automaton::state_name(q);
    std::size_t i = (q - 2) / (2 * m_ + 1);
    std::size_t r = (q - 2) % (2 * m_ + 1);
    return "<" + src_->state_name(states_.at(i)) + "," + std::to_string(r) + ">";
}

// --------------------------------------------------------------- searching

std::vector<StateId> reachable_states(const Automaton& a, std::size_t limit) {
    const LetterDomain& dom = a.domain();
    std::size_t nl = dom.size();
    std::vector<Letter> letters;
    letters.reserve(nl);
    for (std::size_t i = 0; i < nl; ++i) letters.push_back(dom.letter(i));
    std::set<StateId> seen{a.initial()};
    std::deque<StateId> work{a.initial()};
    while (!work.empty()) {
        StateId q = work.front();
        work.pop_front();
        StateSet vars;
        for (const Letter& l : letters) a.rho(q, l).collect_vars(vars);
        for (StateId v : vars) {
            if (seen.insert(v).second) {
                if (seen.size() > limit) throw std::length_error("state exploration limit exceeded");
                work.push_back(v);
            }
        }
    }
    return {seen.begin(), seen.end()};
}

namespace {

struct LabeledGraph {
    std::vector<std::vector<std::pair<std::size_t, int>>> adj;
    std::vector<char> acc;
};

struct GraphLasso {
    std::vector<int> stem_nodes, cycle_nodes;
    std::vector<std::size_t> stem_labels, cycle_labels;
};

// iterative Tarjan
std::vector<int> scc_ids(const LabeledGraph& g) {
    int n = static_cast<int>(g.adj.size());
    std::vector<int> index(n, -1), low(n, 0), comp(n, -1);
    std::vector<char> on(n, 0);
    std::vector<int> stack;
    int counter = 0, ncomp = 0;
    for (int root = 0; root < n; ++root) {
        if (index[root] >= 0) continue;
        std::vector<std::pair<int, std::size_t>> call{{root, 0}};
        index[root] = low[root] = counter++;
        stack.push_back(root);
        on[root] = 1;
        while (!call.empty()) {
            auto& [v, i] = call.back();
            if (i < g.adj[v].size()) {
                int w = g.adj[v][i].second;
                ++i;
                if (index[w] < 0) {
                    index[w] = low[w] = counter++;
                    stack.push_back(w);
                    on[w] = 1;
                    call.push_back({w, 0});
                } else if (on[w]) {
                    low[v] = std::min(low[v], index[w]);
                }
            } else {
                int vv = v;
                if (low[vv] == index[vv]) {
                    int w;
                    do {
                        w = stack.back();
                        stack.pop_back();
                        on[w] = 0;
                        comp[w] = ncomp;
                    } while (w != vv);
                    ++ncomp;
                }
                call.pop_back();
                if (!call.empty()) low[call.back().first] = std::min(low[call.back().first], low[vv]);
            }
        }
    }
    return comp;
}

// shortest path by BFS; returns nodes (from excluded) and labels
bool bfs_path(const LabeledGraph& g, int from, int to, const std::function<bool(int)>& allowed,
              bool need_edge, std::vector<int>& nodes, std::vector<std::size_t>& labels) {
    int n = static_cast<int>(g.adj.size());
    std::vector<int> prev(n, -2);
    std::vector<std::size_t> prev_label(n, 0);
    std::deque<int> work;
    if (!need_edge) {
        if (from == to) return true;
    }
    // seed with successors of `from` so that a cycle back to `from` is found
    for (auto [l, w] : g.adj[from]) {
        if (!allowed(w) || prev[w] != -2) continue;
        prev[w] = from;
        prev_label[w] = l;
        work.push_back(w);
    }
    while (!work.empty() && prev[to] == -2) {
        int v = work.front();
        work.pop_front();
        for (auto [l, w] : g.adj[v]) {
            if (!allowed(w) || prev[w] != -2) continue;
            prev[w] = v;
            prev_label[w] = l;
            work.push_back(w);
        }
    }
    if (prev[to] == -2) return false;
    std::vector<int> rn;
    std::vector<std::size_t> rl;
    int cur = to;
    do {
        rl.push_back(prev_label[cur]);
        cur = prev[cur];
        rn.push_back(cur);
    } while (cur != from);
    nodes.assign(rn.rbegin(), rn.rend());
    labels.assign(rl.rbegin(), rl.rend());
    return true;
}

std::optional<GraphLasso> find_accepting_lasso(const LabeledGraph& g, int start) {
    auto comp = scc_ids(g);
    int n = static_cast<int>(g.adj.size());
    std::vector<int> comp_size(n, 0);
    for (int c : comp) ++comp_size[c];
    for (int f = 0; f < n; ++f) {
        if (!g.acc[f]) continue;
        bool nontrivial = comp_size[comp[f]] > 1 ||
                          std::any_of(g.adj[f].begin(), g.adj[f].end(), [&](auto& e) { return e.second == f; });
        if (!nontrivial) continue;
        GraphLasso out;
        if (!bfs_path(g, start, f, [](int) { return true; }, false, out.stem_nodes, out.stem_labels)) continue;
        int cf = comp[f];
        bfs_path(g, f, f, [&](int w) { return comp[w] == cf; }, true, out.cycle_nodes, out.cycle_labels);
        return out;
    }
    return std::nullopt;
}

}  // namespace

EmptinessResult is_empty(const Automaton& nba) {
    const LetterDomain& dom = nba.domain();
    std::size_t nl = dom.size();
    std::vector<Letter> letters;
    letters.reserve(nl);
    for (std::size_t i = 0; i < nl; ++i) letters.push_back(dom.letter(i));

    LabeledGraph g;
    std::vector<StateId> state_of;
    std::unordered_map<StateId, int> node_of;
    auto node = [&](StateId q) {
        auto it = node_of.find(q);
        if (it != node_of.end()) return it->second;
        int id = static_cast<int>(state_of.size());
        node_of.emplace(q, id);
        state_of.push_back(q);
        g.adj.emplace_back();
        g.acc.push_back(nba.accepting(q) ? 1 : 0);
        return id;
    };
    node(nba.initial());
    for (std::size_t v = 0; v < state_of.size(); ++v) {
        StateId q = state_of[v];
        for (std::size_t li = 0; li < nl; ++li) {
            for (const StateSet& m : minimal_models(nba.rho(q, letters[li]))) {
                if (m.size() > 1) throw std::invalid_argument("emptiness check needs a nondeterministic automaton");
                int w = node(m.empty() ? kSinkTrue : m.front());
                g.adj[v].emplace_back(li, w);
            }
        }
    }
    EmptinessResult res;
    auto lasso = find_accepting_lasso(g, 0);
    if (!lasso) return res;
    res.empty = false;
    LassoWord<Letter> w;
    for (std::size_t l : lasso->stem_labels) w.stem.push_back(letters[l]);
    for (std::size_t l : lasso->cycle_labels) w.period.push_back(letters[l]);
    for (int v : lasso->stem_nodes) res.run.stem.push_back(state_of[v]);
    for (int v : lasso->cycle_nodes) res.run.period.push_back(state_of[v]);
    res.witness = std::move(w);
    return res;
}

namespace {

// Acceptance game of an automaton on a lasso: one vertex per (state,
// position) plus one per transition-formula node below it.  The automaton
// player resolves Or, the pathfinder resolves And.
struct LassoGame {
    std::vector<char> universal, accepting;
    std::vector<std::vector<int>> succ;

    int add(bool univ, bool acc) {
        universal.push_back(univ ? 1 : 0);
        accepting.push_back(acc ? 1 : 0);
        succ.emplace_back();
        return static_cast<int>(succ.size()) - 1;
    }

    // vertices that can force infinitely many visits to accepting vertices
    std::vector<char> solve() const {
        std::size_t n = succ.size();
        std::vector<std::vector<int>> pred(n);
        for (std::size_t v = 0; v < n; ++v)
            for (int u : succ[v]) pred[static_cast<std::size_t>(u)].push_back(static_cast<int>(v));
        std::vector<char> z(n, 1);
        while (true) {
            // attractor of the accepting vertices that can step into z
            std::vector<char> y(n, 0);
            std::vector<int> count(n, 0);
            std::vector<int> work;
            auto cpre = [&](std::size_t v, const std::vector<char>& set) {
                if (universal[v])
                    return std::all_of(succ[v].begin(), succ[v].end(), [&](int u) { return set[u] != 0; });
                return std::any_of(succ[v].begin(), succ[v].end(), [&](int u) { return set[u] != 0; });
            };
            for (std::size_t v = 0; v < n; ++v) {
                if (accepting[v] && cpre(v, z)) {
                    y[v] = 1;
                    work.push_back(static_cast<int>(v));
                }
            }
            while (!work.empty()) {
                int u = work.back();
                work.pop_back();
                for (int v : pred[static_cast<std::size_t>(u)]) {
                    if (y[v]) continue;
                    bool in = !universal[v] || ++count[v] == static_cast<int>(succ[v].size());
                    if (in) {
                        y[v] = 1;
                        work.push_back(v);
                    }
                }
            }
            if (y == z) return z;
            z = std::move(y);
        }
    }
};

}  // namespace

bool accepts_lasso(const Automaton& a, const LassoWord<Letter>& w) {
    if (w.period.empty()) throw std::invalid_argument("lasso word with an empty period");
    for (std::size_t i = 0; i < w.length(); ++i)
        if (!a.domain().contains(w.at(i))) throw std::out_of_range("lasso letter outside the automaton's domain");
    LassoGame g;
    std::map<std::pair<StateId, std::size_t>, int> vertex;
    std::vector<std::pair<StateId, std::size_t>> todo;
    auto state_vertex = [&](StateId q, std::size_t pos) {
        auto key = std::make_pair(q, pos);
        auto it = vertex.find(key);
        if (it != vertex.end()) return it->second;
        int v = g.add(false, a.accepting(q));
        vertex.emplace(key, v);
        todo.push_back(key);
        return v;
    };
    std::function<int(const PosBool&, std::size_t)> formula = [&](const PosBool& b, std::size_t nxt) -> int {
        switch (b.kind()) {
        case PosBool::Kind::Var: return state_vertex(b.state(), nxt);
        case PosBool::Kind::True: return state_vertex(kSinkTrue, nxt);
        case PosBool::Kind::False: return state_vertex(kSinkFalse, nxt);
        case PosBool::Kind::And:
        case PosBool::Kind::Or: {
            std::vector<int> kids;
            for (const PosBool& k : b.kids()) kids.push_back(formula(k, nxt));
            int v = g.add(b.kind() == PosBool::Kind::And, false);
            g.succ[static_cast<std::size_t>(v)] = std::move(kids);
            return v;
        }
        }
        return state_vertex(kSinkFalse, nxt);
    };
    int init = state_vertex(a.initial(), 0);
    while (!todo.empty()) {
        auto [q, pos] = todo.back();
        todo.pop_back();
        int v = vertex.at({q, pos});
        if (q == kSinkFalse) continue;
        std::size_t nxt = w.next(pos);
        int t = q == kSinkTrue ? state_vertex(kSinkTrue, nxt) : formula(a.rho(q, w.at(pos)), nxt);
        g.succ[static_cast<std::size_t>(v)].push_back(t);
    }
    return g.solve()[static_cast<std::size_t>(init)] != 0;
}

// --------------------------------------------------------------------- DOT

namespace {

std::string letter_str(const Letter& a) {
    std::string s = "(";
    for (std::size_t i = 0; i < a.worlds.size(); ++i) s += (i ? "," : "") + std::to_string(a.worlds[i]);
    s += "|";
    for (std::size_t i = 0; i < a.progs.size(); ++i) s += (i ? "," : "") + std::to_string(a.progs[i]);
    return s + ")";
}

std::string escape(const std::string& s) {
    std::string out;
    for (char c : s) {
        if (c == '"' || c == '\\') out += '\\';
        out += c;
    }
    return out;
}

}  // namespace

std::string to_dot(const Automaton& a, std::size_t max_states) {
    const LetterDomain& dom = a.domain();
    std::vector<Letter> letters;
    for (std::size_t i = 0; i < dom.size(); ++i) letters.push_back(dom.letter(i));
    std::ostringstream os;
    os << "digraph automaton {\n  rankdir=LR;\n  start [shape=point];\n";
    std::set<StateId> seen{a.initial()};
    std::deque<StateId> work{a.initial()};
    std::size_t and_nodes = 0;
    std::ostringstream edges;
    while (!work.empty()) {
        StateId q = work.front();
        work.pop_front();
        os << "  s" << q << " [label=\"" << escape(a.state_name(q)) << "\", shape="
           << (a.accepting(q) ? "doublecircle" : "circle") << "];\n";
        if (q == kSinkTrue || q == kSinkFalse) continue;
        // letters grouped by identical transition
        std::map<std::string, std::pair<PosBool, std::vector<std::size_t>>> groups;
        for (std::size_t li = 0; li < letters.size(); ++li) {
            PosBool b = a.rho(q, letters[li]);
            auto key = b.str();
            auto it = groups.find(key);
            if (it == groups.end()) groups.emplace(key, std::make_pair(b, std::vector<std::size_t>{li}));
            else it->second.second.push_back(li);
        }
        for (auto& [key, grp] : groups) {
            std::string label;
            for (std::size_t i = 0; i < grp.second.size() && i < 4; ++i)
                label += (i ? " " : "") + letter_str(letters[grp.second[i]]);
            if (grp.second.size() > 4) label += " +" + std::to_string(grp.second.size() - 4);
            for (const StateSet& m : minimal_models(grp.first)) {
                StateSet targets = m.empty() ? StateSet{kSinkTrue} : m;
                for (StateId t : targets)
                    if (seen.size() < max_states && seen.insert(t).second) work.push_back(t);
                if (targets.size() == 1) {
                    if (seen.count(targets[0]))
                        edges << "  s" << q << " -> s" << targets[0] << " [label=\"" << label << "\"];\n";
                    continue;
                }
                // conjunctive branch: one arc marker node fanning out
                std::size_t k = and_nodes++;
                edges << "  and" << k << " [shape=point, label=\"\"];\n";
                edges << "  s" << q << " -> and" << k << " [label=\"" << label << "\", arrowhead=none];\n";
                for (StateId t : targets)
                    if (seen.count(t)) edges << "  and" << k << " -> s" << t << ";\n";
            }
        }
    }
    os << "  start -> s" << a.initial() << ";\n" << edges.str() << "}\n";
    return os.str();
}

}  // namespace hyperpdl

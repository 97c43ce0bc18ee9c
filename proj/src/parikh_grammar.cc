// parikh_grammar.cc -- exact Parikh images of hierarchy expressions.  The
// grammar case replaces every right-hand side by a Parikh-equivalent
// bounded shape and then enumerates constant and pump trees in which no
// nonterminal repeats along a path, closing constants under pumping when a
// pump enlarges the set of nonterminals involved.

#include "parikh/langexpr.hh"

#include <algorithm>
#include <map>
#include <tuple>

namespace parikh {

namespace {

// Symbols of the flat grammar: values >= 0 index terminals, values < 0
// encode nonterminal ~v.
using Sym = int;
Sym nt_sym(size_t v) { return -static_cast<Sym>(v) - 1; }
bool is_nt(Sym s) { return s < 0; }
size_t nt_index(Sym s) { return static_cast<size_t>(-s - 1); }

struct FlatGrammar {
    size_t num_nts = 0;
    size_t num_terminals = 0;
    std::vector<std::pair<size_t, std::vector<Sym>>> productions;
};

using Counts = std::vector<long long>;

struct Summary {
    size_t root;
    int leaf;  // -1 = ground; otherwise nonterminal index of the open leaf
    std::set<size_t> nts;  // nonterminals on the tree, root included
    Counts counts;

    auto key() const { return std::tie(root, leaf, nts, counts); }
};

constexpr size_t kSummaryLimit = 250000;

struct Engine {
    const FlatGrammar& g;
    std::set<std::tuple<size_t, int, std::set<size_t>, Counts>> seen;
    std::vector<Summary> base;           // combinable summaries
    std::vector<std::vector<size_t>> ground_by_root;
    std::vector<std::vector<size_t>> open_by_root;

    explicit Engine(const FlatGrammar& grammar)
        : g(grammar), ground_by_root(grammar.num_nts),
          open_by_root(grammar.num_nts) {}

    bool insert(Summary s) {
        if (!seen.insert(s.key()).second) return false;
        if (seen.size() > kSummaryLimit)
            throw limit_error("parikh tree enumeration exceeded its limit");
        size_t idx = base.size();
        if (s.leaf < 0) ground_by_root[s.root].push_back(idx);
        else open_by_root[s.root].push_back(idx);
        base.push_back(std::move(s));
        return true;
    }

    // One saturation round over all productions; returns whether anything
    // new appeared.
    bool round() {
        struct Partial {
            std::set<size_t> nts;
            Counts counts;
            int leaf;
        };
        bool grew = false;
        for (const auto& [lhs, body] : g.productions) {
            std::vector<Partial> partials{
                {{}, Counts(g.num_terminals, 0), -1}};
            for (Sym s : body) {
                std::vector<Partial> next;
                auto push = [&](Partial p) {
                    for (const auto& q : next)
                        if (q.leaf == p.leaf && q.nts == p.nts &&
                            q.counts == p.counts)
                            return;
                    next.push_back(std::move(p));
                };
                for (const auto& p : partials) {
                    if (!is_nt(s)) {
                        Partial q = p;
                        ++q.counts[static_cast<size_t>(s)];
                        push(std::move(q));
                        continue;
                    }
                    size_t v = nt_index(s);
                    for (size_t i : ground_by_root[v]) {
                        const Summary& c = base[i];
                        Partial q = p;
                        q.nts.insert(c.nts.begin(), c.nts.end());
                        for (size_t k = 0; k < q.counts.size(); ++k)
                            q.counts[k] += c.counts[k];
                        push(std::move(q));
                    }
                    if (p.leaf < 0) {
                        Partial q = p;  // the open leaf sits right here
                        q.leaf = static_cast<int>(v);
                        push(std::move(q));
                        for (size_t i : open_by_root[v]) {
                            const Summary& c = base[i];
                            Partial q2 = p;
                            q2.nts.insert(c.nts.begin(), c.nts.end());
                            for (size_t k = 0; k < q2.counts.size(); ++k)
                                q2.counts[k] += c.counts[k];
                            q2.leaf = c.leaf;
                            push(std::move(q2));
                        }
                    }
                }
                partials = std::move(next);
                if (partials.size() > kSummaryLimit)
                    throw limit_error("parikh tree combination blow-up");
            }
            for (auto& p : partials) {
                if (p.nts.count(lhs)) continue;  // would repeat on a path
                Summary s{lhs, p.leaf, std::move(p.nts), std::move(p.counts)};
                s.nts.insert(lhs);
                if (insert(std::move(s))) grew = true;
            }
        }
        return grew;
    }
};

}  // namespace

namespace detail {

// Exposed for the grammar case below; start is a nonterminal index.
SemilinearSet parikh_of_flat_grammar(const FlatGrammar& g, size_t start,
                                     const Alphabet& terminals);

SemilinearSet parikh_of_flat_grammar(const FlatGrammar& g, size_t start,
                                     const Alphabet& terminals) {
    Engine engine(g);
    while (engine.round()) {
    }

    // Periods: open summaries whose leaf equals their root.
    struct Period {
        size_t root;
        std::set<size_t> nts;
        Counts counts;
    };
    std::vector<Period> periods;
    for (const auto& s : engine.base)
        if (s.leaf >= 0 && static_cast<size_t>(s.leaf) == s.root)
            periods.push_back({s.root, s.nts, s.counts});

    // Constants: ground summaries, closed under pumping whenever a period
    // enlarges the nonterminal set.
    struct Constant {
        size_t root;
        std::set<size_t> nts;
        Counts counts;
    };
    std::vector<Constant> constants;
    std::set<std::tuple<size_t, std::set<size_t>, Counts>> cseen;
    for (const auto& s : engine.base) {
        if (s.leaf >= 0) continue;
        if (cseen.insert({s.root, s.nts, s.counts}).second)
            constants.push_back({s.root, s.nts, s.counts});
    }
    for (size_t i = 0; i < constants.size(); ++i) {
        Constant c = constants[i];
        for (const auto& p : periods) {
            if (!c.nts.count(p.root)) continue;
            bool enlarges = std::any_of(
                p.nts.begin(), p.nts.end(),
                [&](size_t v) { return c.nts.count(v) == 0; });
            if (!enlarges) continue;
            Constant c2 = c;
            c2.nts.insert(p.nts.begin(), p.nts.end());
            for (size_t k = 0; k < c2.counts.size(); ++k)
                c2.counts[k] += p.counts[k];
            if (cseen.insert({c2.root, c2.nts, c2.counts}).second)
                constants.push_back(std::move(c2));
            if (constants.size() > kSummaryLimit)
                throw limit_error("parikh pump closure exceeded its limit");
        }
    }

    std::vector<LinearSet> comps;
    for (const auto& c : constants) {
        if (c.root != start) continue;
        Multiset base(terminals, c.counts);
        std::vector<Multiset> ps;
        for (const auto& p : periods)
            if (c.nts.count(p.root)) ps.emplace_back(terminals, p.counts);
        LinearSet ls(std::move(base), std::move(ps));
        if (std::find(comps.begin(), comps.end(), ls) == comps.end())
            comps.push_back(std::move(ls));
    }
    return SemilinearSet(terminals, std::move(comps));
}

}  // namespace detail

SemilinearSet parikh_image(const LangExpr& e) {
    switch (e.kind()) {
    case LangExpr::Kind::Finite: {
        std::vector<LinearSet> comps;
        for (const auto& w : e.finite_words()) {
            LinearSet ls(parikh_of(w, e.alphabet()));
            if (std::find(comps.begin(), comps.end(), ls) == comps.end())
                comps.push_back(std::move(ls));
        }
        return SemilinearSet(e.alphabet(), std::move(comps));
    }
    case LangExpr::Kind::Sli:
        return sl_image(e.morphism().abelianization(),
                        sl_intersect(parikh_image(e.inner()), e.constraint()));
    case LangExpr::Kind::Grammar:
        break;
    }

    const LangExpr g = flatten_grammar(e);
    const Alphabet& n = g.nonterminals();
    const Alphabet& t = g.terminals();
    Alphabet symbols = g.grammar_symbols();

    FlatGrammar flat;
    flat.num_terminals = t.size();
    size_t next_nt = n.size();
    auto sym_code = [&](const Symbol& s) -> Sym {
        if (auto i = n.index_of(s)) return nt_sym(*i);
        return static_cast<Sym>(*t.index_of(s));
    };
    // Replace each body by productions realizing a Parikh-equivalent
    // language: one production per linear component, with a pump
    // nonterminal per period.
    for (const auto& [nt, bodies] : g.productions()) {
        size_t lhs = *n.index_of(nt);
        for (const auto& body : bodies) {
            SemilinearSet body_sl = parikh_image(body);
            for (const auto& comp : body_sl.components()) {
                std::vector<Sym> word;
                Multiset base = comp.base().embedded_into(symbols);
                for (size_t i = 0; i < symbols.size(); ++i)
                    for (long long k = 0; k < base.at(i); ++k)
                        word.push_back(sym_code(symbols.symbol(i)));
                for (const auto& p : comp.periods()) {
                    size_t pump = next_nt++;
                    word.push_back(nt_sym(pump));
                    Multiset pm = p.embedded_into(symbols);
                    std::vector<Sym> pump_body;
                    for (size_t i = 0; i < symbols.size(); ++i)
                        for (long long k = 0; k < pm.at(i); ++k)
                            pump_body.push_back(sym_code(symbols.symbol(i)));
                    pump_body.push_back(nt_sym(pump));
                    flat.productions.push_back({pump, std::move(pump_body)});
                    flat.productions.push_back({pump, {}});
                }
                flat.productions.push_back({lhs, std::move(word)});
            }
        }
    }
    flat.num_nts = next_nt;
    return detail::parikh_of_flat_grammar(flat, *n.index_of(g.start()), t);
}

}  // namespace parikh

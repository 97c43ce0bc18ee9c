// enumerate.cc -- the bounded enumeration oracle for hierarchy expressions.
//
// Enumeration is driven by a per-symbol weight spec rather than plain word
// length: a symbol's weight is the length its image will eventually have
// after the morphisms still pending above it.  Zero-weight symbols are
// invisible in the output, so they are budgeted separately; cutting them is
// the only lossy pruning and is reported via the `complete` flag.

#include "parikh/langexpr.hh"

#include <algorithm>
#include <deque>
#include <functional>
#include <map>

namespace parikh {

namespace {

struct SymbolCost {
    size_t weight = 1;  // output length this symbol will contribute
    size_t zero = 0;    // budgeted count of invisible content
};

struct Spec {
    Alphabet alphabet;
    std::vector<SymbolCost> cost;  // per symbol
    size_t max_weight = 0;
    size_t max_zero = 0;
};

struct Measure {
    size_t weight = 0;
    size_t zero = 0;
};

Measure measure_word(const Word& w, const Spec& spec) {
    Measure m;
    for (const auto& s : w) {
        auto i = spec.alphabet.index_of(s);
        if (!i) throw input_error("enumeration spec misses symbol " + s);
        m.weight += spec.cost[*i].weight;
        m.zero += spec.cost[*i].zero;
    }
    return m;
}

struct Result {
    std::set<Word> words;
    bool complete = true;
};

struct Ctx {
    const EnumBudget& budget;
};

const void* node_id(const LangExpr& e) {
    return static_cast<const void*>(&e.alphabet());
}

Result enumerate_rec(const LangExpr& e, const Spec& spec, Ctx& ctx);

Result enumerate_grammar(const LangExpr& g, const Spec& spec, Ctx& ctx) {
    const Alphabet symbols = g.grammar_symbols();
    const Alphabet& n = g.nonterminals();

    // Enumerate each body once.  Finite bodies are taken exactly.
    std::map<const void*, Result> body_en;
    bool bodies_complete = true;

    // Lower bounds (weight, zero) per nonterminal; non-finite bodies
    // contribute the safe bound (0, 0).
    std::map<Symbol, Measure> nt_min;
    for (const auto& s : n.symbols())
        nt_min[s] = {SIZE_MAX, SIZE_MAX};
    auto word_lower_bound = [&](const Word& w) -> std::optional<Measure> {
        Measure m;
        for (const auto& s : w) {
            if (n.contains(s)) {
                const Measure& b = nt_min[s];
                if (b.weight == SIZE_MAX) return std::nullopt;
                m.weight += b.weight;
                m.zero += b.zero;
            } else {
                auto i = spec.alphabet.index_of(s);
                if (!i) throw input_error("grammar body symbol outside spec");
                m.weight += spec.cost[*i].weight;
                m.zero += spec.cost[*i].zero;
            }
        }
        return m;
    };
    {
        bool changed = true;
        while (changed) {
            changed = false;
            for (const auto& [nt, bodies] : g.productions()) {
                for (const auto& body : bodies) {
                    if (!body.is_finite()) {
                        // unknown body: assume it may derive epsilon
                        if (nt_min[nt].weight > 0 || nt_min[nt].zero > 0) {
                            nt_min[nt] = {0, 0};
                            changed = true;
                        }
                        continue;
                    }
                    for (const auto& w : body.finite_words()) {
                        auto m = word_lower_bound(w);
                        if (!m) continue;
                        if (m->weight < nt_min[nt].weight) {
                            nt_min[nt].weight = m->weight;
                            changed = true;
                        }
                        if (m->zero < nt_min[nt].zero) {
                            nt_min[nt].zero = m->zero;
                            changed = true;
                        }
                    }
                }
            }
        }
        for (auto& [nt, m] : nt_min)
            if (m.weight == SIZE_MAX) m = {0, 0};  // unproductive; harmless
    }

    // Spec for enumerating non-finite bodies: terminals keep their cost,
    // nonterminal letters cost their lower bound.
    Spec body_spec;
    body_spec.alphabet = symbols;
    body_spec.cost.resize(symbols.size());
    for (size_t i = 0; i < symbols.size(); ++i) {
        const Symbol& s = symbols.symbol(i);
        if (n.contains(s)) {
            body_spec.cost[i] = {nt_min[s].weight, nt_min[s].zero};
        } else {
            auto j = spec.alphabet.index_of(s);
            if (!j) throw input_error("grammar terminal outside spec");
            body_spec.cost[i] = spec.cost[*j];
        }
    }
    body_spec.max_weight = spec.max_weight;
    body_spec.max_zero = spec.max_zero + ctx.budget.slack;

    for (const auto& [nt, bodies] : g.productions()) {
        for (const auto& body : bodies) {
            if (body_en.count(node_id(body))) continue;
            Result r;
            if (body.is_finite()) {
                // kept exactly; pruning happens on sentential forms
                for (const auto& w : body.finite_words()) r.words.insert(w);
                r.complete = true;
            } else {
                r = enumerate_rec(body, body_spec, ctx);
                if (!r.complete) bodies_complete = false;
            }
            body_en.emplace(node_id(body), std::move(r));
        }
    }

    // Sentential-form search from the start symbol, pruning by the
    // lower-bound potential of each form.
    const size_t len_cap =
        spec.max_weight + spec.max_zero + 2 * ctx.budget.slack + 8;
    bool lossy = false;
    auto potential = [&](const Word& form) -> Measure {
        Measure m;
        for (const auto& s : form) {
            if (n.contains(s)) {
                m.weight += nt_min[s].weight;
                m.zero += nt_min[s].zero;
            } else {
                auto i = spec.alphabet.index_of(s);
                m.weight += spec.cost[*i].weight;
                m.zero += spec.cost[*i].zero;
            }
        }
        return m;
    };

    std::set<Word> visited;
    std::deque<Word> queue;
    std::set<Word> out;
    Word start{g.start()};
    visited.insert(start);
    queue.push_back(start);
    while (!queue.empty()) {
        Word form = queue.front();
        queue.pop_front();
        size_t nt_pos = form.size();
        for (size_t i = 0; i < form.size(); ++i)
            if (n.contains(form[i])) {
                nt_pos = i;
                break;
            }
        if (nt_pos == form.size()) {
            Measure m = measure_word(form, spec);
            if (m.weight <= spec.max_weight && m.zero <= spec.max_zero)
                out.insert(form);
            continue;
        }
        auto it = g.productions().find(form[nt_pos]);
        if (it == g.productions().end()) continue;
        for (const auto& body : it->second) {
            for (const auto& bw : body_en[node_id(body)].words) {
                Word next;
                next.reserve(form.size() + bw.size());
                next.insert(next.end(), form.begin(),
                            form.begin() + static_cast<long>(nt_pos));
                next.insert(next.end(), bw.begin(), bw.end());
                next.insert(next.end(),
                            form.begin() + static_cast<long>(nt_pos) + 1,
                            form.end());
                Measure pot = potential(next);
                if (pot.weight > spec.max_weight) continue;  // lossless prune
                if (pot.zero > spec.max_zero) {
                    lossy = true;
                    continue;
                }
                if (next.size() > len_cap) {
                    lossy = true;
                    continue;
                }
                if (visited.size() > ctx.budget.max_words) {
                    lossy = true;
                    continue;
                }
                if (visited.insert(next).second) queue.push_back(next);
            }
        }
    }

    return {std::move(out), bodies_complete && !lossy};
}

Result enumerate_rec(const LangExpr& e, const Spec& spec, Ctx& ctx) {
    switch (e.kind()) {
    case LangExpr::Kind::Finite: {
        Result out;
        for (const auto& w : e.finite_words()) {
            Measure m = measure_word(w, spec);
            if (m.weight <= spec.max_weight && m.zero <= spec.max_zero)
                out.words.insert(w);
        }
        return out;
    }
    case LangExpr::Kind::Sli: {
        const WordMorphism& h = e.morphism();
        // Pull the spec back through h: a letter costs what its image
        // costs; erased letters become budgeted zero-weight content.
        Spec inner_spec;
        inner_spec.alphabet = e.inner().alphabet();
        inner_spec.cost.resize(inner_spec.alphabet.size());
        bool any_budgeted_zero = false;
        for (size_t i = 0; i < inner_spec.alphabet.size(); ++i) {
            const Word& img = h.image(i);
            SymbolCost c{0, 0};
            if (img.empty()) {
                c.zero = 1;
            } else {
                for (const auto& y : img) {
                    auto j = spec.alphabet.index_of(y);
                    if (!j)
                        throw input_error("morphism image outside spec");
                    c.weight += spec.cost[*j].weight;
                    c.zero += spec.cost[*j].zero;
                }
                if (c.weight == 0 && c.zero == 0) c.zero = 1;
            }
            if (c.weight == 0) any_budgeted_zero = true;
            inner_spec.cost[i] = c;
        }
        inner_spec.max_weight = spec.max_weight;
        inner_spec.max_zero = spec.max_zero + ctx.budget.slack;

        Result inner = enumerate_rec(e.inner(), inner_spec, ctx);
        Result out;
        for (const auto& w : inner.words) {
            if (!sl_member(parikh_of(w, e.inner().alphabet()), e.constraint()))
                continue;
            Word u = h.apply(w);
            Measure m = measure_word(u, spec);
            if (m.weight <= spec.max_weight && m.zero <= spec.max_zero)
                out.words.insert(std::move(u));
        }
        // The inner zero budget may have cut words whose images fit; only
        // a finite inner (enumerated exactly) escapes that.
        out.complete = inner.complete &&
                       (!any_budgeted_zero || e.inner().is_finite());
        if (e.inner().is_finite()) {
            out.words.clear();
            for (const auto& w : e.inner().finite_words()) {
                if (!sl_member(parikh_of(w, e.inner().alphabet()),
                               e.constraint()))
                    continue;
                Word u = h.apply(w);
                Measure m = measure_word(u, spec);
                if (m.weight <= spec.max_weight && m.zero <= spec.max_zero)
                    out.words.insert(std::move(u));
            }
            out.complete = true;
        }
        return out;
    }
    case LangExpr::Kind::Grammar:
        return enumerate_grammar(e, spec, ctx);
    }
    throw std::logic_error("unreachable");
}

}  // namespace

Enumeration enumerate_expr(const LangExpr& e, size_t max_len,
                           const EnumBudget& budget) {
    Spec spec;
    spec.alphabet = e.alphabet();
    spec.cost.assign(spec.alphabet.size(), SymbolCost{1, 0});
    spec.max_weight = max_len;
    spec.max_zero = 0;
    Ctx ctx{budget};
    Result r = enumerate_rec(e, spec, ctx);
    return {std::move(r.words), r.complete};
}

}  // namespace parikh

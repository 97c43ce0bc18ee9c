#include "parikh/langexpr.hh"

#include <algorithm>
#include <deque>
#include <functional>

namespace parikh {

// ------------------------------------------------------------------- Node

struct LangExpr::Node {
    Kind kind;
    // finite
    Alphabet alphabet;  // terminal alphabet of the denotation
    std::vector<Word> words;
    // grammar
    Alphabet nonterminals;
    Symbol start;
    std::map<Symbol, std::vector<LangExpr>> productions;
    // sli
    std::shared_ptr<const LangExpr> inner;
    std::shared_ptr<const SemilinearSet> constraint;
    std::shared_ptr<const WordMorphism> morphism;
};

LangExpr LangExpr::finite(Alphabet alphabet, std::vector<Word> words) {
    auto node = std::make_shared<Node>();
    node->kind = Kind::Finite;
    for (const auto& w : words)
        for (const auto& s : w)
            if (!alphabet.contains(s))
                throw input_error("finite-language word uses unknown symbol: " +
                                  s);
    std::sort(words.begin(), words.end());
    words.erase(std::unique(words.begin(), words.end()), words.end());
    node->alphabet = std::move(alphabet);
    node->words = std::move(words);
    return LangExpr(std::move(node));
}

LangExpr LangExpr::grammar(Alphabet nonterminals, Alphabet terminals,
                           Symbol start,
                           std::map<Symbol, std::vector<LangExpr>> productions) {
    if (!nonterminals.disjoint_with(terminals))
        throw input_error("grammar nonterminals and terminals overlap");
    if (!nonterminals.contains(start))
        throw input_error("grammar start symbol is not a nonterminal");
    Alphabet symbols = nonterminals.merged_with(terminals);
    for (const auto& [nt, bodies] : productions) {
        if (!nonterminals.contains(nt))
            throw input_error("production for unknown nonterminal " + nt);
        for (const auto& body : bodies)
            if (!symbols.contains_all(body.alphabet()))
                throw input_error("production body alphabet escapes N u T");
    }
    auto node = std::make_shared<Node>();
    node->kind = Kind::Grammar;
    node->alphabet = std::move(terminals);
    node->nonterminals = std::move(nonterminals);
    node->start = std::move(start);
    node->productions = std::move(productions);
    return LangExpr(std::move(node));
}

LangExpr LangExpr::sli(LangExpr inner, SemilinearSet constraint,
                       WordMorphism morphism) {
    if (constraint.alphabet() != inner.alphabet())
        throw input_error("sli constraint alphabet differs from inner");
    if (morphism.domain() != inner.alphabet())
        throw input_error("sli morphism domain differs from inner");
    auto node = std::make_shared<Node>();
    node->kind = Kind::Sli;
    node->alphabet = morphism.codomain();
    node->inner = std::make_shared<const LangExpr>(std::move(inner));
    node->constraint =
        std::make_shared<const SemilinearSet>(std::move(constraint));
    node->morphism = std::make_shared<const WordMorphism>(std::move(morphism));
    return LangExpr(std::move(node));
}

LangExpr LangExpr::empty(const Alphabet& alphabet) {
    return finite(alphabet, {});
}

LangExpr::Kind LangExpr::kind() const { return node_->kind; }
const Alphabet& LangExpr::alphabet() const { return node_->alphabet; }

const std::vector<Word>& LangExpr::finite_words() const {
    if (!is_finite()) throw input_error("expression is not finite");
    return node_->words;
}

const Alphabet& LangExpr::nonterminals() const {
    if (!is_grammar()) throw input_error("expression is not a grammar");
    return node_->nonterminals;
}

const Symbol& LangExpr::start() const {
    if (!is_grammar()) throw input_error("expression is not a grammar");
    return node_->start;
}

const std::map<Symbol, std::vector<LangExpr>>& LangExpr::productions() const {
    if (!is_grammar()) throw input_error("expression is not a grammar");
    return node_->productions;
}

Alphabet LangExpr::grammar_symbols() const {
    return nonterminals().merged_with(terminals());
}

const LangExpr& LangExpr::inner() const {
    if (!is_sli()) throw input_error("expression is not an sli");
    return *node_->inner;
}

const SemilinearSet& LangExpr::constraint() const {
    if (!is_sli()) throw input_error("expression is not an sli");
    return *node_->constraint;
}

const WordMorphism& LangExpr::morphism() const {
    if (!is_sli()) throw input_error("expression is not an sli");
    return *node_->morphism;
}

// ------------------------------------------------------------------ Names

Symbol fresh_symbol(const std::string& base, const std::set<Symbol>& taken) {
    if (!taken.count(base)) return base;
    for (size_t i = 0;; ++i) {
        Symbol cand = base + "_" + std::to_string(i);
        if (!taken.count(cand)) return cand;
    }
}

std::string to_string(const HierarchyLevel& l) {
    return (l.tier == HierarchyLevel::Tier::F ? std::string("F")
                                              : std::string("G")) +
           std::to_string(l.index);
}

// ------------------------------------------------------------------ Level

HierarchyLevel level(const LangExpr& e) {
    switch (e.kind()) {
    case LangExpr::Kind::Finite:
        return {HierarchyLevel::Tier::F, 0};
    case LangExpr::Kind::Grammar: {
        int idx = 0;
        for (const auto& [nt, bodies] : e.productions())
            for (const auto& body : bodies)
                idx = std::max(idx, level(body).f_index());
        return {HierarchyLevel::Tier::G, idx};
    }
    case LangExpr::Kind::Sli:
        return {HierarchyLevel::Tier::F, level(e.inner()).g_index() + 1};
    }
    throw std::logic_error("unreachable");
}

// -------------------------------------------------------------- Emptiness

namespace {

std::vector<Word> filter_words(const std::vector<Word>& words,
                               const std::set<Symbol>& allowed) {
    std::vector<Word> out;
    for (const auto& w : words) {
        bool ok = std::all_of(w.begin(), w.end(), [&](const Symbol& s) {
            return allowed.count(s) > 0;
        });
        if (ok) out.push_back(w);
    }
    return out;
}

bool body_nonempty_over(const LangExpr& body, const std::set<Symbol>& allowed) {
    if (body.is_finite())
        return !filter_words(body.finite_words(), allowed).empty();
    Alphabet restricted = body.alphabet().restricted_to(allowed);
    Nfa universe = nfa_universal(restricted).embedded_into(body.alphabet());
    return !is_empty(intersect_regular(body, universe));
}

std::set<Symbol> productive_nonterminals(const LangExpr& g) {
    std::set<Symbol> productive;
    std::set<Symbol> allowed(g.terminals().symbols().begin(),
                             g.terminals().symbols().end());
    bool grown = true;
    while (grown) {
        grown = false;
        for (const auto& [nt, bodies] : g.productions()) {
            if (productive.count(nt)) continue;
            for (const auto& body : bodies) {
                if (!body_nonempty_over(body, allowed)) continue;
                productive.insert(nt);
                allowed.insert(nt);
                grown = true;
                break;
            }
        }
    }
    return productive;
}

}  // namespace

bool is_empty(const LangExpr& e) {
    switch (e.kind()) {
    case LangExpr::Kind::Finite:
        return e.finite_words().empty();
    case LangExpr::Kind::Grammar:
        return productive_nonterminals(e).count(e.start()) == 0;
    case LangExpr::Kind::Sli:
        return sl_intersect(parikh_image(e.inner()), e.constraint())
            .has_no_components();
    }
    throw std::logic_error("unreachable");
}

// -------------------------------------------------------------- Morphisms

namespace {

// Renames the nonterminals of `g` away from `avoid`.
LangExpr rename_nonterminals_away(const LangExpr& g,
                                  const std::set<Symbol>& avoid) {
    bool clash = std::any_of(
        g.nonterminals().symbols().begin(), g.nonterminals().symbols().end(),
        [&](const Symbol& s) { return avoid.count(s) > 0; });
    if (!clash) return g;
    std::set<Symbol> taken = avoid;
    for (const auto& s : g.terminals().symbols()) taken.insert(s);
    std::vector<Symbol> renamed;
    for (const auto& s : g.nonterminals().symbols()) {
        Symbol r = fresh_symbol(s + "'", taken);
        taken.insert(r);
        renamed.push_back(r);
    }
    Alphabet n2(renamed);
    const Alphabet& n = g.nonterminals();
    Alphabet new_syms = n2.merged_with(g.terminals());
    auto rename_image = [&](const Symbol& s) -> Word {
        if (auto i = n.index_of(s)) return {n2.symbol(*i)};
        return {s};
    };
    std::map<Symbol, std::vector<LangExpr>> prods;
    for (const auto& [nt, bodies] : g.productions()) {
        auto& list = prods[n2.symbol(*n.index_of(nt))];
        for (const auto& body : bodies) {
            std::vector<Word> body_imgs;
            for (const auto& s : body.alphabet().symbols())
                body_imgs.push_back(rename_image(s));
            list.push_back(apply_word_morphism(
                WordMorphism(body.alphabet(), new_syms, body_imgs), body));
        }
    }
    return LangExpr::grammar(n2, g.terminals(),
                             n2.symbol(*n.index_of(g.start())),
                             std::move(prods));
}

std::set<Symbol> taken_symbols(const LangExpr& g) {
    std::set<Symbol> out(g.nonterminals().symbols().begin(),
                         g.nonterminals().symbols().end());
    for (const auto& s : g.terminals().symbols()) out.insert(s);
    return out;
}

}  // namespace

LangExpr apply_word_morphism(const WordMorphism& h, const LangExpr& e) {
    if (h.domain() != e.alphabet())
        throw input_error("morphism domain differs from expression alphabet");
    switch (e.kind()) {
    case LangExpr::Kind::Finite: {
        std::vector<Word> words;
        words.reserve(e.finite_words().size());
        for (const auto& w : e.finite_words()) words.push_back(h.apply(w));
        return LangExpr::finite(h.codomain(), std::move(words));
    }
    case LangExpr::Kind::Grammar: {
        LangExpr g = e;
        std::set<Symbol> avoid(h.codomain().symbols().begin(),
                               h.codomain().symbols().end());
        g = rename_nonterminals_away(g, avoid);
        const Alphabet& n = g.nonterminals();
        Alphabet new_symbols = n.merged_with(h.codomain());
        auto image = [&](const Symbol& s) -> Word {
            if (n.contains(s)) return {s};
            return h.image_of(s);
        };
        std::map<Symbol, std::vector<LangExpr>> prods;
        for (const auto& [nt, bodies] : g.productions()) {
            auto& list = prods[nt];
            for (const auto& body : bodies) {
                std::vector<Word> imgs;
                for (const auto& s : body.alphabet().symbols())
                    imgs.push_back(image(s));
                list.push_back(apply_word_morphism(
                    WordMorphism(body.alphabet(), new_symbols, imgs), body));
            }
        }
        return LangExpr::grammar(n, h.codomain(), g.start(), std::move(prods));
    }
    case LangExpr::Kind::Sli:
        return LangExpr::sli(e.inner(), e.constraint(),
                             h.compose_after(e.morphism()));
    }
    throw std::logic_error("unreachable");
}

// -------------------------------------------------------- Grammar helpers

LangExpr to_grammar_form(const LangExpr& e) {
    if (e.is_grammar()) return e;
    std::set<Symbol> taken(e.alphabet().symbols().begin(),
                           e.alphabet().symbols().end());
    Symbol s = fresh_symbol("S", taken);
    return LangExpr::grammar(Alphabet({s}), e.alphabet(), s, {{s, {e}}});
}

LangExpr flatten_grammar(const LangExpr& g0) {
    LangExpr g = g0;
    while (true) {
        bool nested = false;
        for (const auto& [nt, bodies] : g.productions())
            for (const auto& body : bodies)
                if (body.is_grammar()) nested = true;
        if (!nested) return g;

        std::set<Symbol> taken = taken_symbols(g);
        std::map<Symbol, std::vector<LangExpr>> prods;
        std::vector<Symbol> nts(g.nonterminals().symbols());
        for (const auto& [nt, bodies] : g.productions()) {
            auto& list = prods[nt];
            for (const auto& body : bodies) {
                if (!body.is_grammar()) {
                    list.push_back(body);
                    continue;
                }
                LangExpr sub = rename_nonterminals_away(body, taken);
                for (const auto& s : sub.nonterminals().symbols()) {
                    taken.insert(s);
                    nts.push_back(s);
                }
                for (const auto& [sn, sbodies] : sub.productions()) {
                    auto& slist = prods[sn];
                    slist.insert(slist.end(), sbodies.begin(), sbodies.end());
                }
                list.push_back(LangExpr::finite(Alphabet({sub.start()}),
                                                {Word{sub.start()}}));
            }
        }
        g = LangExpr::grammar(Alphabet(nts), g.terminals(), g.start(),
                              std::move(prods));
    }
}

// ------------------------------------------------------------------ Union

LangExpr union_expr(const LangExpr& a, const LangExpr& b) {
    if (a.is_finite() && b.is_finite()) {
        Alphabet merged = a.alphabet().merged_with(b.alphabet());
        std::vector<Word> words = a.finite_words();
        words.insert(words.end(), b.finite_words().begin(),
                     b.finite_words().end());
        return LangExpr::finite(merged, std::move(words));
    }
    // Two F-tier languages stay on the F tier: disjoint inner copies,
    // constraint union, merged morphism.
    if (!a.is_grammar() && !b.is_grammar()) {
        auto as_sli = [](const LangExpr& e) {
            if (e.is_sli()) return e;
            return LangExpr::sli(e, SemilinearSet::full(e.alphabet()),
                                 WordMorphism::identity(e.alphabet()));
        };
        LangExpr sa = as_sli(a), sb = as_sli(b);
        const Alphabet& x1 = sa.inner().alphabet();
        const Alphabet& x2 = sb.inner().alphabet();
        std::set<Symbol> taken(x1.symbols().begin(), x1.symbols().end());
        std::vector<Symbol> copy_syms;
        for (const auto& s : x2.symbols()) {
            Symbol r = fresh_symbol(s + "~u", taken);
            taken.insert(r);
            copy_syms.push_back(r);
        }
        Alphabet x2c(copy_syms);
        std::vector<Word> rename_imgs;
        for (size_t i = 0; i < x2.size(); ++i)
            rename_imgs.push_back({x2c.symbol(i)});
        WordMorphism rename(x2, x2c, rename_imgs);
        LangExpr inner2 = apply_word_morphism(rename, sb.inner());
        SemilinearSet s2 = sl_image(rename.abelianization(), sb.constraint());

        LangExpr inner_union = union_expr(sa.inner(), inner2);
        Alphabet inner_alpha = inner_union.alphabet();
        auto embed = [&](const SemilinearSet& s) {
            std::vector<LinearSet> comps;
            for (const auto& c : s.components()) {
                std::vector<Multiset> periods;
                for (const auto& p : c.periods())
                    periods.push_back(p.embedded_into(inner_alpha));
                comps.emplace_back(c.base().embedded_into(inner_alpha),
                                   std::move(periods));
            }
            return SemilinearSet(inner_alpha, std::move(comps));
        };
        SemilinearSet constraint = sl_union(embed(sa.constraint()), embed(s2));
        Alphabet y =
            sa.morphism().codomain().merged_with(sb.morphism().codomain());
        std::vector<Word> h_imgs;
        for (const auto& s : inner_alpha.symbols()) {
            if (x1.contains(s)) h_imgs.push_back(sa.morphism().image_of(s));
            else
                h_imgs.push_back(
                    sb.morphism().image_of(x2.symbol(*x2c.index_of(s))));
        }
        return LangExpr::sli(inner_union, constraint,
                             WordMorphism(inner_alpha, y, h_imgs));
    }
    // General case: fresh grammar whose start has the bodies of both.
    LangExpr ga = to_grammar_form(a);
    LangExpr gb = to_grammar_form(b);
    Alphabet terms = ga.terminals().merged_with(gb.terminals());
    std::set<Symbol> avoid(terms.symbols().begin(), terms.symbols().end());
    ga = rename_nonterminals_away(ga, avoid);
    for (const auto& s : ga.nonterminals().symbols()) avoid.insert(s);
    gb = rename_nonterminals_away(gb, avoid);
    for (const auto& s : gb.nonterminals().symbols()) avoid.insert(s);

    std::vector<Symbol> nts;
    Symbol start = fresh_symbol("U", avoid);
    nts.push_back(start);
    for (const auto& s : ga.nonterminals().symbols()) nts.push_back(s);
    for (const auto& s : gb.nonterminals().symbols()) nts.push_back(s);
    std::map<Symbol, std::vector<LangExpr>> prods;
    for (const auto& [nt, bodies] : ga.productions())
        prods[nt].insert(prods[nt].end(), bodies.begin(), bodies.end());
    for (const auto& [nt, bodies] : gb.productions())
        prods[nt].insert(prods[nt].end(), bodies.begin(), bodies.end());
    auto& sb2 = prods[start];
    sb2.push_back(
        LangExpr::finite(Alphabet({ga.start()}), {Word{ga.start()}}));
    sb2.push_back(
        LangExpr::finite(Alphabet({gb.start()}), {Word{gb.start()}}));
    return LangExpr::grammar(Alphabet(nts), terms, start, std::move(prods));
}

// ----------------------------------------------------------------- Reduce

LangExpr reduce(const LangExpr& e) {
    if (!e.is_grammar()) throw input_error("reduce expects a grammar");
    LangExpr g = flatten_grammar(e);

    std::set<Symbol> productive = productive_nonterminals(g);
    if (!productive.count(g.start()))
        return LangExpr::grammar(
            Alphabet({g.start()}), g.terminals(), g.start(),
            {{g.start(), {LangExpr::empty(g.terminals())}}});

    std::set<Symbol> allowed(g.terminals().symbols().begin(),
                             g.terminals().symbols().end());
    allowed.insert(productive.begin(), productive.end());

    // Reachability over bodies restricted to productive symbols; for
    // non-finite bodies occurrence of B means body ^ Sigma* B Sigma* != 0.
    auto occurs = [&](const LangExpr& body, const Symbol& b) {
        if (body.is_finite()) {
            for (const auto& w : filter_words(body.finite_words(), allowed))
                if (std::find(w.begin(), w.end(), b) != w.end()) return true;
            return false;
        }
        if (!body.alphabet().contains(b)) return false;
        Alphabet restricted = body.alphabet().restricted_to(allowed);
        if (!restricted.contains(b)) return false;
        Nfa universe = nfa_universal(restricted);
        Nfa witness = reg_concat(
            reg_concat(universe, nfa_word({b}, restricted)), universe);
        return !is_empty(
            intersect_regular(body, witness.embedded_into(body.alphabet())));
    };
    std::set<Symbol> reachable{g.start()};
    std::deque<Symbol> queue{g.start()};
    while (!queue.empty()) {
        Symbol a = queue.front();
        queue.pop_front();
        auto it = g.productions().find(a);
        if (it == g.productions().end()) continue;
        for (const auto& body : it->second) {
            for (const auto& b : g.nonterminals().symbols()) {
                if (reachable.count(b) || !productive.count(b)) continue;
                if (occurs(body, b)) {
                    reachable.insert(b);
                    queue.push_back(b);
                }
            }
        }
    }

    std::vector<Symbol> kept;
    for (const auto& s : g.nonterminals().symbols())
        if (productive.count(s) && reachable.count(s)) kept.push_back(s);
    std::set<Symbol> kept_allowed(g.terminals().symbols().begin(),
                                  g.terminals().symbols().end());
    kept_allowed.insert(kept.begin(), kept.end());

    std::map<Symbol, std::vector<LangExpr>> prods;
    Alphabet kept_nts(kept);
    for (const auto& s : kept) {
        auto it = g.productions().find(s);
        if (it == g.productions().end()) continue;
        auto& list = prods[s];
        for (const auto& body : it->second) {
            if (body.is_finite()) {
                auto words = filter_words(body.finite_words(), kept_allowed);
                if (!words.empty())
                    list.push_back(LangExpr::finite(
                        body.alphabet().restricted_to(kept_allowed),
                        std::move(words)));
                continue;
            }
            Alphabet restricted = body.alphabet().restricted_to(kept_allowed);
            Nfa universe =
                nfa_universal(restricted).embedded_into(body.alphabet());
            LangExpr cut = intersect_regular(body, universe);
            if (!is_empty(cut)) list.push_back(cut);
        }
    }
    return LangExpr::grammar(kept_nts, g.terminals(), g.start(),
                             std::move(prods));
}

// ------------------------------------------------ Parikh-level constraints

LangExpr constrain_parikh(const LangExpr& e, const SemilinearSet& s) {
    if (s.alphabet() != e.alphabet())
        throw input_error("constraint alphabet differs from expression");
    switch (e.kind()) {
    case LangExpr::Kind::Finite: {
        std::vector<Word> words;
        for (const auto& w : e.finite_words())
            if (sl_member(parikh_of(w, e.alphabet()), s)) words.push_back(w);
        return LangExpr::finite(e.alphabet(), std::move(words));
    }
    case LangExpr::Kind::Sli: {
        SemilinearSet pulled = sl_preimage(e.morphism().abelianization(), s);
        return LangExpr::sli(e.inner(), sl_intersect(e.constraint(), pulled),
                             e.morphism());
    }
    case LangExpr::Kind::Grammar:
        return LangExpr::sli(e, s, WordMorphism::identity(e.alphabet()));
    }
    throw std::logic_error("unreachable");
}

// ------------------------------------------------------------ Transduction

namespace {

// Flattens an NFA over nonterminal/terminal letters into right-linear
// productions of the host grammar; returns the body standing for its
// language.
LangExpr flatten_nfa_body(const Nfa& nfa0, const Symbol& base,
                          std::set<Symbol>& taken,
                          std::vector<Symbol>& host_nts,
                          std::map<Symbol, std::vector<LangExpr>>& host_prods) {
    Nfa nfa = trim(nfa0);
    if (nfa.finals().empty()) return LangExpr::empty(nfa.alphabet());
    if (auto words = nfa_finite_language(nfa, 64))
        return LangExpr::finite(nfa.alphabet(), std::move(*words));
    std::vector<Symbol> state_syms;
    for (size_t q = 0; q < nfa.num_states(); ++q) {
        Symbol s = fresh_symbol(base + "." + std::to_string(q), taken);
        taken.insert(s);
        state_syms.push_back(s);
        host_nts.push_back(s);
    }
    for (size_t q = 0; q < nfa.num_states(); ++q) {
        std::vector<Word> words;
        std::set<Symbol> used;
        for (const auto& t : nfa.transitions()) {
            if (t.src != q) continue;
            Word w;
            if (t.label != kEpsilon) {
                w.push_back(
                    nfa.alphabet().symbol(static_cast<size_t>(t.label)));
                used.insert(w.back());
            }
            w.push_back(state_syms[t.dst]);
            used.insert(state_syms[t.dst]);
            words.push_back(std::move(w));
        }
        if (nfa.finals().count(q)) words.push_back({});
        host_prods[state_syms[q]].push_back(LangExpr::finite(
            Alphabet(std::vector<Symbol>(used.begin(), used.end())),
            std::move(words)));
    }
    return LangExpr::finite(Alphabet({state_syms[nfa.initial()]}),
                            {Word{state_syms[nfa.initial()]}});
}

LangExpr right_linear_grammar(const Nfa& nfa) {
    std::set<Symbol> taken(nfa.alphabet().symbols().begin(),
                           nfa.alphabet().symbols().end());
    std::vector<Symbol> nts;
    std::map<Symbol, std::vector<LangExpr>> prods;
    LangExpr start_body = flatten_nfa_body(nfa, "Q", taken, nts, prods);
    Symbol s = fresh_symbol("S", taken);
    nts.insert(nts.begin(), s);
    prods[s].push_back(start_body);
    return LangExpr::grammar(Alphabet(nts), nfa.alphabet(), s,
                             std::move(prods));
}

// Exact productivity/reachability over finite bodies, conservative for the
// rest.  Keeps triple-construction output at a sane size.
LangExpr cheap_prune(const LangExpr& g) {
    std::set<Symbol> productive;
    std::set<Symbol> term_syms(g.terminals().symbols().begin(),
                               g.terminals().symbols().end());
    bool grown = true;
    while (grown) {
        grown = false;
        for (const auto& [nt, bodies] : g.productions()) {
            if (productive.count(nt)) continue;
            for (const auto& body : bodies) {
                bool maybe;
                if (body.is_finite()) {
                    maybe = false;
                    for (const auto& w : body.finite_words()) {
                        bool ok = std::all_of(
                            w.begin(), w.end(), [&](const Symbol& s) {
                                return term_syms.count(s) > 0 ||
                                       productive.count(s) > 0;
                            });
                        if (ok) {
                            maybe = true;
                            break;
                        }
                    }
                } else {
                    maybe = true;
                }
                if (maybe) {
                    productive.insert(nt);
                    grown = true;
                    break;
                }
            }
        }
    }
    if (!productive.count(g.start())) return LangExpr::empty(g.terminals());

    std::set<Symbol> reachable{g.start()};
    std::deque<Symbol> queue{g.start()};
    while (!queue.empty()) {
        Symbol a = queue.front();
        queue.pop_front();
        auto it = g.productions().find(a);
        if (it == g.productions().end()) continue;
        for (const auto& body : it->second) {
            auto visit = [&](const Symbol& s) {
                if (g.nonterminals().contains(s) && productive.count(s) &&
                    !reachable.count(s)) {
                    reachable.insert(s);
                    queue.push_back(s);
                }
            };
            if (body.is_finite()) {
                for (const auto& w : body.finite_words())
                    for (const auto& s : w) visit(s);
            } else {
                for (const auto& s : body.alphabet().symbols()) visit(s);
            }
        }
    }

    std::vector<Symbol> kept;
    for (const auto& s : g.nonterminals().symbols())
        if (productive.count(s) && reachable.count(s)) kept.push_back(s);
    std::set<Symbol> kept_syms = term_syms;
    kept_syms.insert(kept.begin(), kept.end());
    std::map<Symbol, std::vector<LangExpr>> prods;
    for (const auto& s : kept) {
        auto it = g.productions().find(s);
        if (it == g.productions().end()) continue;
        auto& list = prods[s];
        for (const auto& body : it->second) {
            if (body.is_finite()) {
                auto words = filter_words(body.finite_words(), kept_syms);
                if (!words.empty())
                    list.push_back(LangExpr::finite(
                        body.alphabet().restricted_to(kept_syms),
                        std::move(words)));
            } else {
                list.push_back(body);
            }
        }
    }
    if (prods.find(g.start()) == prods.end())
        return LangExpr::empty(g.terminals());
    return LangExpr::grammar(Alphabet(kept), g.terminals(), g.start(),
                             std::move(prods));
}

LangExpr finite_transduction(const LangExpr& e, const Transducer& t) {
    Nfa image = nfa_empty(t.out_alphabet());
    for (const auto& w : e.finite_words())
        image = reg_union(image, transducer_image_of_word(t, w));
    image = trim(image);
    if (auto words = nfa_finite_language(image, 4096))
        return LangExpr::finite(t.out_alphabet(), std::move(*words));
    return right_linear_grammar(image);
}

std::string state_tag(size_t q) { return std::to_string(q); }

LangExpr grammar_transduction(const LangExpr& g0, const Transducer& t0) {
    // Prefix trick: a fresh first letter makes every input nonempty, which
    // the state-pair decoration requires.
    std::set<Symbol> taken = taken_symbols(g0);
    for (const auto& s : t0.out_alphabet().symbols()) taken.insert(s);
    Symbol hat = fresh_symbol("hat", taken);
    taken.insert(hat);

    Alphabet terms2 = g0.terminals().merged_with(Alphabet({hat}));
    Symbol s0 = fresh_symbol("Shat", taken);
    taken.insert(s0);
    std::vector<Symbol> nts2{s0};
    for (const auto& s : g0.nonterminals().symbols()) nts2.push_back(s);
    std::map<Symbol, std::vector<LangExpr>> prods2 = g0.productions();
    prods2[s0].push_back(LangExpr::finite(Alphabet({hat, g0.start()}),
                                          {Word{hat, g0.start()}}));
    LangExpr g =
        LangExpr::grammar(Alphabet(nts2), terms2, s0, std::move(prods2));

    Transducer t = t0.with_input_prefix(hat).with_single_final();
    size_t nq = t.num_states();
    size_t final_state = *t.finals().begin();
    const Alphabet& y = t.out_alphabet();

    std::map<std::tuple<size_t, Symbol, size_t>, Symbol> triple_name;
    std::vector<Symbol> host_nts;
    for (size_t p = 0; p < nq; ++p)
        for (const auto& a : g.nonterminals().symbols())
            for (size_t q = 0; q < nq; ++q) {
                Symbol name = fresh_symbol(
                    a + "@" + state_tag(p) + "." + state_tag(q), taken);
                taken.insert(name);
                triple_name[{p, a, q}] = name;
                host_nts.push_back(name);
            }

    std::map<Symbol, std::vector<LangExpr>> host_prods;

    std::vector<Symbol> body_alpha_syms(y.symbols());
    for (const auto& [key, name] : triple_name)
        body_alpha_syms.push_back(name);
    Alphabet fused_alpha(body_alpha_syms);

    // Fused decorate-and-substitute for one finite body word between
    // transducer states p and q: the product of the transducer with w,
    // where nonterminal letters emit a triple name and jump the state.
    auto fused_word_nfa = [&](const Word& w, size_t p, size_t q) {
        size_t n = w.size();
        auto id = [&](size_t state, size_t i) { return state * (n + 1) + i; };
        std::vector<Nfa::Transition> ts;
        for (const auto& e : t.edges()) {
            int label = e.out == kEpsilon
                            ? kEpsilon
                            : static_cast<int>(*fused_alpha.index_of(
                                  y.symbol(static_cast<size_t>(e.out))));
            for (size_t i = 0; i <= n; ++i) {
                if (e.in == kEpsilon) {
                    ts.push_back({id(e.src, i), label, id(e.dst, i)});
                } else if (i < n &&
                           t.in_alphabet().symbol(static_cast<size_t>(e.in)) ==
                               w[i] &&
                           !g.nonterminals().contains(w[i])) {
                    ts.push_back({id(e.src, i), label, id(e.dst, i + 1)});
                }
            }
        }
        for (size_t i = 0; i < n; ++i) {
            if (!g.nonterminals().contains(w[i])) continue;
            for (size_t r = 0; r < nq; ++r)
                for (size_t r2 = 0; r2 < nq; ++r2) {
                    const Symbol& name = triple_name[{r, w[i], r2}];
                    ts.push_back(
                        {id(r, i),
                         static_cast<int>(*fused_alpha.index_of(name)),
                         id(r2, i + 1)});
                }
        }
        return Nfa(fused_alpha, nq * (n + 1), std::move(ts), id(p, 0),
                   {id(q, n)});
    };

    // Two-phase route for non-finite bodies: decorate with state pairs,
    // then substitute transducer output languages for decorated terminals.
    Alphabet body_syms = g.grammar_symbols();
    std::map<std::pair<std::pair<size_t, size_t>, Symbol>, Symbol> z_name;
    std::vector<Symbol> decorated_syms;
    for (const auto& [key, name] : triple_name) decorated_syms.push_back(name);
    for (size_t p = 0; p < nq; ++p)
        for (const auto& x : g.terminals().symbols())
            for (size_t q = 0; q < nq; ++q) {
                Symbol name = fresh_symbol(
                    x + "$" + state_tag(p) + "." + state_tag(q), taken);
                taken.insert(name);
                z_name[{{p, q}, x}] = name;
                decorated_syms.push_back(name);
            }
    Alphabet decorated(decorated_syms);

    auto u_pq = [&](size_t p, size_t q) {
        std::vector<Transducer::Rule> rules;
        for (size_t r = 0; r < nq; ++r)
            for (size_t r2 = 0; r2 < nq; ++r2)
                for (const auto& x : body_syms.symbols()) {
                    Symbol out = g.nonterminals().contains(x)
                                     ? triple_name[{r, x, r2}]
                                     : z_name[{{r, r2}, x}];
                    rules.push_back({r, {out}, {x}, r2});
                }
        return Transducer(decorated, body_syms, nq, rules, p, {q});
    };

    std::vector<Symbol> v_out_syms;
    for (const auto& [key, name] : triple_name) v_out_syms.push_back(name);
    for (const auto& s : y.symbols()) v_out_syms.push_back(s);
    Alphabet v_out(v_out_syms);
    Transducer v_subst = [&]() {
        std::vector<Transducer::Rule> rules;
        size_t states = 1;
        for (const auto& [key, name] : triple_name)
            rules.push_back({0, {name}, {name}, 0});
        std::map<std::pair<std::pair<size_t, size_t>, Symbol>, size_t> base_of;
        for (const auto& [key, zsym] : z_name) {
            base_of[key] = states;
            states += 2 * nq;
        }
        for (const auto& [key, zsym] : z_name) {
            auto [pq, x] = key;
            auto [p, q] = pq;
            size_t base = base_of[key];
            auto lid = [&](size_t s, int layer) {
                return base + 2 * s + static_cast<size_t>(layer);
            };
            rules.push_back({0, {}, {zsym}, lid(p, 0)});
            rules.push_back({lid(q, 1), {}, {}, 0});
            int xi = static_cast<int>(*t.in_alphabet().index_of(x));
            for (const auto& e : t.edges()) {
                for (int layer : {0, 1}) {
                    if (e.in == kEpsilon) {
                        Word out =
                            e.out == kEpsilon
                                ? Word{}
                                : Word{y.symbol(static_cast<size_t>(e.out))};
                        rules.push_back(
                            {lid(e.src, layer), out, {}, lid(e.dst, layer)});
                    } else if (e.in == xi && layer == 0) {
                        rules.push_back(
                            {lid(e.src, 0), {}, {}, lid(e.dst, 1)});
                    }
                }
            }
        }
        return Transducer(v_out, decorated, states, rules, 0, {0});
    }();

    for (const auto& [a, bodies] : g.productions()) {
        for (size_t p = 0; p < nq; ++p)
            for (size_t q = 0; q < nq; ++q) {
                const Symbol& lhs = triple_name[{p, a, q}];
                for (const auto& body : bodies) {
                    if (body.is_finite()) {
                        if (body.finite_words().empty()) continue;
                        Nfa acc = nfa_empty(fused_alpha);
                        for (const auto& w : body.finite_words())
                            acc = reg_union(acc, fused_word_nfa(w, p, q));
                        LangExpr flat = flatten_nfa_body(acc, lhs, taken,
                                                         host_nts, host_prods);
                        if (flat.is_finite() && flat.finite_words().empty())
                            continue;
                        host_prods[lhs].push_back(flat);
                    } else {
                        LangExpr decorated_body =
                            apply_transduction(body, u_pq(p, q));
                        LangExpr substituted =
                            apply_transduction(decorated_body, v_subst);
                        host_prods[lhs].push_back(substituted);
                    }
                }
            }
    }

    Symbol host_start = triple_name[{t.initial(), g.start(), final_state}];
    LangExpr host = LangExpr::grammar(Alphabet(host_nts), y, host_start,
                                      std::move(host_prods));
    LangExpr pruned = cheap_prune(host);
    if (!pruned.is_grammar()) return pruned;
    return flatten_grammar(pruned);
}

LangExpr sli_transduction(const LangExpr& e, const Transducer& t) {
    const WordMorphism& h = e.morphism();
    Transducer u = transducer_compose(t, transducer_morphism_graph(h));
    const Alphabet& x = e.inner().alphabet();
    std::set<Symbol> taken(x.symbols().begin(), x.symbols().end());
    for (const auto& s : t.out_alphabet().symbols()) taken.insert(s);
    std::vector<Symbol> copy_syms;
    for (const auto& s : t.out_alphabet().symbols()) {
        Symbol c = fresh_symbol(s + "~", taken);
        taken.insert(c);
        copy_syms.push_back(c);
    }
    Alphabet z(copy_syms);
    Nfa r = transducer_interleaving(u, z);

    LangExpr shuffled =
        apply_transduction(e.inner(), transducer_shuffle(x, z));
    Alphabet xz = shuffled.alphabet();
    LangExpr constrained = intersect_regular(shuffled, r.embedded_into(xz));

    std::vector<LinearSet> comps;
    for (const auto& c : e.constraint().components()) {
        std::vector<Multiset> periods;
        for (const auto& p : c.periods())
            periods.push_back(p.embedded_into(xz));
        for (const auto& s : z.symbols()) {
            std::vector<long long> v(xz.size(), 0);
            v[*xz.index_of(s)] = 1;
            periods.emplace_back(xz, std::move(v));
        }
        comps.emplace_back(c.base().embedded_into(xz), std::move(periods));
    }
    SemilinearSet constraint(xz, std::move(comps));

    std::vector<Word> pi_imgs;
    for (const auto& s : xz.symbols()) {
        if (auto i = z.index_of(s))
            pi_imgs.push_back({t.out_alphabet().symbol(*i)});
        else
            pi_imgs.push_back({});
    }
    WordMorphism pi(xz, t.out_alphabet(), pi_imgs);
    return LangExpr::sli(constrained, constraint, pi);
}

}  // namespace

LangExpr apply_transduction(const LangExpr& e, const Transducer& t) {
    if (t.in_alphabet() != e.alphabet())
        throw input_error("transducer input alphabet differs from expression");
    switch (e.kind()) {
    case LangExpr::Kind::Finite:
        return finite_transduction(e, t);
    case LangExpr::Kind::Grammar:
        return grammar_transduction(e, t);
    case LangExpr::Kind::Sli:
        return sli_transduction(e, t);
    }
    throw std::logic_error("unreachable");
}

LangExpr intersect_regular(const LangExpr& e, const Nfa& n0) {
    Nfa n = n0;
    if (n.alphabet() != e.alphabet()) {
        if (e.alphabet().contains_all(n.alphabet()))
            n = n.embedded_into(e.alphabet());
        else
            throw input_error("intersect_regular alphabet mismatch");
    }
    if (e.is_finite()) {
        std::vector<Word> words;
        for (const auto& w : e.finite_words())
            if (accepts(n, w)) words.push_back(w);
        return LangExpr::finite(e.alphabet(), std::move(words));
    }
    return apply_transduction(e, transducer_identity_restricted(n));
}

// --------------------------------------------------- Semilinear -> regular

Nfa semilinear_to_regular(const SemilinearSet& s) {
    const Alphabet& x = s.alphabet();
    auto spell = [&](const Multiset& m) {
        Word w;
        for (size_t i = 0; i < x.size(); ++i)
            for (long long k = 0; k < m.at(i); ++k) w.push_back(x.symbol(i));
        return w;
    };
    Nfa acc = nfa_empty(x);
    for (const auto& c : s.components()) {
        Nfa comp = nfa_word(spell(c.base()), x);
        for (const auto& p : c.periods())
            comp = reg_concat(comp, reg_star(nfa_word(spell(p), x)));
        acc = reg_union(acc, comp);
    }
    return trim(acc);
}

// -------------------------------------------------------- Derivation trees

Word DerivationTree::yield() const {
    if (is_leaf()) {
        if (label.empty()) return {};  // epsilon leaf
        return {label};
    }
    Word out;
    for (const auto& c : children) {
        Word cy = c.yield();
        out.insert(out.end(), cy.begin(), cy.end());
    }
    return out;
}

size_t DerivationTree::node_count() const {
    size_t n = 1;
    for (const auto& c : children) n += c.node_count();
    return n;
}

bool derivation_tree_valid(const DerivationTree& t, const LangExpr& grammar,
                           size_t body_len_bound) {
    if (!grammar.is_grammar())
        throw input_error("derivation trees need a grammar");
    std::function<bool(const DerivationTree&)> check =
        [&](const DerivationTree& node) {
            if (node.is_leaf())
                return !grammar.nonterminals().contains(node.label);
            if (!grammar.nonterminals().contains(node.label)) return false;
            Word child_word;
            for (const auto& c : node.children)
                if (!c.label.empty()) child_word.push_back(c.label);
            auto it = grammar.productions().find(node.label);
            if (it == grammar.productions().end()) return false;
            bool matched = false;
            for (const auto& body : it->second) {
                auto en = enumerate_expr(body, body_len_bound);
                if (en.words.count(child_word)) {
                    matched = true;
                    break;
                }
            }
            if (!matched) return false;
            return std::all_of(node.children.begin(), node.children.end(),
                               check);
        };
    return check(t);
}

}  // namespace parikh

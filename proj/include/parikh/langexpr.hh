// langexpr.hh -- the hierarchy expression language: finite languages,
// grammars with language-valued right-hand sides (algebraic extension), and
// semilinear constraints with morphisms (SLI).  Operations cover level
// bookkeeping, grammar reduction, rational-transduction closure, Parikh
// images, emptiness, and the bounded enumeration oracle.

#ifndef PARIKH_LANGEXPR_HH_
#define PARIKH_LANGEXPR_HH_

#include <map>
#include <memory>
#include <set>
#include <vector>

#include "parikh/automata.hh"
#include "parikh/multiset.hh"

namespace parikh {

/// Position of an expression in the hierarchy: F_0 = finite languages,
/// G_i = Alg(F_i), F_{i+1} = HomSLI(G_i).
struct HierarchyLevel {
    enum class Tier { F, G };
    Tier tier;
    int index;

    /// F_i sits inside G_i; this is the G-tier index of the level.
    int g_index() const { return index; }
    /// G_i sits inside F_{i+1}.
    int f_index() const { return tier == Tier::F ? index : index + 1; }

    bool operator==(const HierarchyLevel&) const = default;
};

std::string to_string(const HierarchyLevel& l);

/// An immutable expression denoting a language of the hierarchy.  Cheap to
/// copy; subexpressions are shared.
class LangExpr {
public:
    enum class Kind { Finite, Grammar, Sli };

    // -- constructors
    static LangExpr finite(Alphabet alphabet, std::vector<Word> words);
    static LangExpr grammar(Alphabet nonterminals, Alphabet terminals,
                            Symbol start,
                            std::map<Symbol, std::vector<LangExpr>> productions);
    static LangExpr sli(LangExpr inner, SemilinearSet constraint,
                        WordMorphism morphism);
    static LangExpr empty(const Alphabet& alphabet);

    Kind kind() const;
    bool is_finite() const { return kind() == Kind::Finite; }
    bool is_grammar() const { return kind() == Kind::Grammar; }
    bool is_sli() const { return kind() == Kind::Sli; }

    /// The terminal alphabet of the denoted language.
    const Alphabet& alphabet() const;

    // -- finite accessors
    const std::vector<Word>& finite_words() const;

    // -- grammar accessors
    const Alphabet& nonterminals() const;
    const Alphabet& terminals() const { return alphabet(); }
    const Symbol& start() const;
    const std::map<Symbol, std::vector<LangExpr>>& productions() const;
    /// Nonterminals and terminals merged (the alphabet production bodies
    /// live over).
    Alphabet grammar_symbols() const;

    // -- sli accessors
    const LangExpr& inner() const;
    const SemilinearSet& constraint() const;
    const WordMorphism& morphism() const;

    bool operator==(const LangExpr& other) const { return node_ == other.node_; }

private:
    struct Node;
    explicit LangExpr(std::shared_ptr<const Node> node)
        : node_(std::move(node)) {}
    std::shared_ptr<const Node> node_;
};

// -------------------------------------------------------------- Operations

/// Minimal hierarchy level of an expression (structural bookkeeping).
HierarchyLevel level(const LangExpr& e);

/// Language emptiness.
bool is_empty(const LangExpr& e);

/// Equivalent reduced grammar: every nonterminal productive and reachable,
/// bodies restricted to the surviving symbols.  An unproductive start yields
/// the distinguished empty grammar (start with a single empty finite body).
LangExpr reduce(const LangExpr& grammar_expr);

/// Union of two languages (terminal alphabets are merged).  Stays on the
/// F tier when both arguments are on it.
LangExpr union_expr(const LangExpr& a, const LangExpr& b);

/// Image under a word morphism, computed structurally.
LangExpr apply_word_morphism(const WordMorphism& h, const LangExpr& e);

/// T L(e).  Finite inputs come back at their G tier (as a grammar) when the
/// image is infinite; SLI inputs stay on their F tier.
LangExpr apply_transduction(const LangExpr& e, const Transducer& t);

/// L(e) restricted to L(n).
LangExpr intersect_regular(const LangExpr& e, const Nfa& n);

/// L(e) restricted to Parikh preimages of s.  Finite and SLI expressions
/// absorb the constraint; grammars are wrapped in an SLI with the identity
/// morphism.
LangExpr constrain_parikh(const LangExpr& e, const SemilinearSet& s);

/// Exact semilinear representation of the Parikh image.
SemilinearSet parikh_image(const LangExpr& e);

/// A regular language Parikh-equivalent to s: each component mu + F^+ is
/// realized as word(mu) (word(f1))* ... (word(fk))* with symbols spelled in
/// alphabet order.
Nfa semilinear_to_regular(const SemilinearSet& s);

/// One-nonterminal grammar wrapper (identity on grammars).
LangExpr to_grammar_form(const LangExpr& e);

/// Inlines grammar-kind production bodies into their host grammar, so that
/// algebraic extensions never nest.
LangExpr flatten_grammar(const LangExpr& grammar_expr);

/// A symbol based on `base` that avoids `taken`.
Symbol fresh_symbol(const std::string& base, const std::set<Symbol>& taken);

// ------------------------------------------------------------- Enumeration

struct EnumBudget {
    /// Extra length allowed when enumerating grammar bodies and SLI inners
    /// beyond the requested word length.
    size_t slack = 4;
    /// Hard cap on enumerated words per (sub)language.
    size_t max_words = 2'000'000;
};

struct Enumeration {
    std::set<Word> words;
    /// True when the result is provably exactly L(e) within the length
    /// bound; false when a budget may have cut words.
    bool complete = true;
};

/// Sound bounded enumeration: every returned word is in L(e); with
/// non-erasing morphisms and adequate slack the result is exactly
/// L(e) restricted to words of length <= max_len.
Enumeration enumerate_expr(const LangExpr& e, size_t max_len,
                           const EnumBudget& budget = {});

// -------------------------------------------------------- Derivation trees

/// A node-labeled ordered tree recording a grammar derivation.  Inner nodes
/// carry nonterminals; the yield is the left-to-right leaf sequence.
struct DerivationTree {
    Symbol label;
    std::vector<DerivationTree> children;

    bool is_leaf() const { return children.empty(); }
    Word yield() const;
    size_t node_count() const;
};

/// Checks that every inner node's child word belongs to the denotation of
/// one of its nonterminal's production bodies (bodies checked by bounded
/// enumeration).
bool derivation_tree_valid(const DerivationTree& t, const LangExpr& grammar,
                           size_t body_len_bound);

}  // namespace parikh

#endif  // PARIKH_LANGEXPR_HH_

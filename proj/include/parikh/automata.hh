// automata.hh -- nondeterministic finite automata and finite-state
// transducers: regular operations, downward closure, shuffle with fresh
// letters, the Parikh-inverse automaton of a downward-closed set, and the
// Parikh image of a regular language.

#ifndef PARIKH_AUTOMATA_HH_
#define PARIKH_AUTOMATA_HH_

#include <string>
#include <vector>

#include "parikh/multiset.hh"

namespace parikh {

/// Label index for the empty word on a transition.
constexpr int kEpsilon = -1;

/// An NFA with a single initial state.  Labels are indices into the
/// alphabet, or kEpsilon.
class Nfa {
public:
    struct Transition {
        size_t src;
        int label;
        size_t dst;
        auto operator<=>(const Transition&) const = default;
    };

    Nfa(Alphabet alphabet, size_t num_states,
        std::vector<Transition> transitions, size_t initial,
        std::set<size_t> finals);

    const Alphabet& alphabet() const { return alphabet_; }
    size_t num_states() const { return num_states_; }
    const std::vector<Transition>& transitions() const { return transitions_; }
    size_t initial() const { return initial_; }
    const std::set<size_t>& finals() const { return finals_; }

    /// Same automaton viewed over a larger alphabet.
    Nfa embedded_into(const Alphabet& bigger) const;

private:
    Alphabet alphabet_;
    size_t num_states_;
    std::vector<Transition> transitions_;
    size_t initial_;
    std::set<size_t> finals_;
};

// --------------------------------------------------------------- Factories

Nfa nfa_empty(const Alphabet& a);
Nfa nfa_epsilon(const Alphabet& a);
Nfa nfa_word(const Word& w, const Alphabet& a);
Nfa nfa_finite(const std::vector<Word>& ws, const Alphabet& a);
/// All words over the alphabet.
Nfa nfa_universal(const Alphabet& a);

// --------------------------------------------------------- Regular algebra

Nfa reg_union(const Nfa& a, const Nfa& b);
Nfa reg_concat(const Nfa& a, const Nfa& b);
Nfa reg_star(const Nfa& a);
Nfa reg_intersect(const Nfa& a, const Nfa& b);

/// Subset construction (epsilon closed); result is a complete DFA.
Nfa determinize(const Nfa& a);
/// Minimal complete DFA (input may be any NFA).
Nfa minimize(const Nfa& a);
Nfa complement(const Nfa& a);

bool is_empty(const Nfa& a);
bool accepts(const Nfa& a, const Word& w);
/// Language equality via minimized DFAs.
bool equivalent(const Nfa& a, const Nfa& b);

/// Drop states that are not both reachable and co-reachable.
Nfa trim(const Nfa& a);
/// Equivalent epsilon-free automaton.
Nfa remove_epsilon(const Nfa& a);

// ---------------------------------------------------- Downward closure etc.

/// Recognizes the scattered-subword closure: an epsilon transition is added
/// parallel to every letter transition.
Nfa nfa_downward(const Nfa& a);
bool nfa_is_downward_closed(const Nfa& a);

/// L(a) shuffled with Z*: a self-loop for every z in Z at every state.
/// The alphabets must be disjoint; the result is over their union.
Nfa nfa_shuffle_letters(const Nfa& a, const Alphabet& z);

/// Image under a word morphism: letter edges become word paths.
Nfa nfa_word_morphism(const WordMorphism& h, const Nfa& a);

/// Recognizes Psi^-1(down-closure of S): words whose Parikh image lies in
/// the downward closure of S.  Built directly from the box-ideal form as a
/// union of per-letter bounded counters.
Nfa parikh_inverse_dc_automaton(const SemilinearSet& s);
Nfa parikh_inverse_dc_automaton(const DownwardClosedSet& d);

/// Exact Parikh image of a regular language via the simple-path /
/// simple-cycle decomposition.  Deliberately exponential; desk scale only.
SemilinearSet parikh_regular(const Nfa& a);

/// Deterministic DOT rendering.
std::string to_dot(const Nfa& a);

// ------------------------------------------------------------- Transducers

/// A finite-state transducer defining a rational transduction
/// T subseteq out* x in*.  Applying T to a language L over the `in`
/// alphabet yields TL = { u : (u, v) in T for some v in L }.  Edges carry
/// at most one letter per side; longer labels are split at construction.
class Transducer {
public:
    struct Edge {
        size_t src;
        int out;  // kEpsilon or index into out_alphabet
        int in;   // kEpsilon or index into in_alphabet
        size_t dst;
    };
    /// Pre-normalization edge with word labels.
    struct Rule {
        size_t src;
        Word out;
        Word in;
        size_t dst;
    };

    Transducer(Alphabet out_alphabet, Alphabet in_alphabet, size_t num_states,
               const std::vector<Rule>& rules, size_t initial,
               std::set<size_t> finals);

    const Alphabet& out_alphabet() const { return out_alphabet_; }
    const Alphabet& in_alphabet() const { return in_alphabet_; }
    size_t num_states() const { return num_states_; }
    const std::vector<Edge>& edges() const { return edges_; }
    size_t initial() const { return initial_; }
    const std::set<size_t>& finals() const { return finals_; }

    /// Identical transduction with exactly one final state.
    Transducer with_single_final() const;
    /// { (u, cv) : (u, v) in T } for a fresh first input letter c.
    Transducer with_input_prefix(const Symbol& c) const;

private:
    Transducer() = default;
    Alphabet out_alphabet_;
    Alphabet in_alphabet_;
    size_t num_states_ = 0;
    std::vector<Edge> edges_;
    size_t initial_ = 0;
    std::set<size_t> finals_;
};

/// Identity transduction on an alphabet.
Transducer transducer_identity(const Alphabet& a);
/// Identity restricted to L(n): applying it intersects with L(n).
Transducer transducer_identity_restricted(const Nfa& n);
/// The graph { (h(v), v) : v in domain* } of a word morphism.
Transducer transducer_morphism_graph(const WordMorphism& h);
/// { (w, pi_X(w)) : w in (X u Z)* } -- shuffling Z letters into the input.
Transducer transducer_shuffle(const Alphabet& x, const Alphabet& z);
/// Relational composition: { (u, w) : (u, v) in a, (v, w) in b }.
Transducer transducer_compose(const Transducer& a, const Transducer& b);

/// T L(n) as an NFA over the out alphabet.
Nfa apply_transducer_regular(const Transducer& t, const Nfa& n);
/// T {w} as an NFA over the out alphabet.
Nfa transducer_image_of_word(const Transducer& t, const Word& w);

/// An interleaving regular language R over z u in-alphabet with
/// T = { (rename(pi_Z(w)), pi_X(w)) : w in R }, where rename maps the i-th
/// symbol of z to the i-th symbol of the out alphabet.  `z` must be
/// disjoint from the in alphabet and in bijection with the out alphabet.
Nfa transducer_interleaving(const Transducer& t, const Alphabet& z);

/// The finite language of a trimmed acyclic NFA; nullopt if the useful part
/// has a cycle or exceeds `cap` words.
std::optional<std::vector<Word>> nfa_finite_language(const Nfa& a, size_t cap);

}  // namespace parikh

#endif  // PARIKH_AUTOMATA_HH_

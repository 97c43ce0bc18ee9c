#include "parikh/automata.hh"

#include <algorithm>
#include <deque>
#include <map>

namespace parikh {

Transducer::Transducer(Alphabet out_alphabet, Alphabet in_alphabet,
                       size_t num_states, const std::vector<Rule>& rules,
                       size_t initial, std::set<size_t> finals)
    : out_alphabet_(std::move(out_alphabet)),
      in_alphabet_(std::move(in_alphabet)), num_states_(num_states),
      initial_(initial), finals_(std::move(finals)) {
    if (num_states_ == 0) throw input_error("transducer needs a state");
    if (initial_ >= num_states_) throw input_error("bad initial state");
    for (size_t f : finals_)
        if (f >= num_states_) throw input_error("bad final state");
    auto out_idx = [&](const Symbol& s) {
        auto i = out_alphabet_.index_of(s);
        if (!i) throw input_error("transducer output symbol unknown: " + s);
        return static_cast<int>(*i);
    };
    auto in_idx = [&](const Symbol& s) {
        auto i = in_alphabet_.index_of(s);
        if (!i) throw input_error("transducer input symbol unknown: " + s);
        return static_cast<int>(*i);
    };
    // Split word labels into a chain of edges carrying one letter on one
    // side each.
    const size_t declared_states = num_states_;
    for (const auto& r : rules) {
        if (r.src >= declared_states || r.dst >= declared_states)
            throw input_error("transducer rule references missing state");
        size_t steps = r.out.size() + r.in.size();
        if (steps <= 1) {
            Edge e{r.src,
                   r.out.empty() ? kEpsilon : out_idx(r.out[0]),
                   r.in.empty() ? kEpsilon : in_idx(r.in[0]), r.dst};
            edges_.push_back(e);
            continue;
        }
        size_t cur = r.src;
        for (size_t i = 0; i < r.out.size(); ++i) {
            size_t nxt = (i + 1 == steps) ? r.dst : num_states_++;
            edges_.push_back({cur, out_idx(r.out[i]), kEpsilon, nxt});
            cur = nxt;
        }
        for (size_t j = 0; j < r.in.size(); ++j) {
            size_t nxt = (r.out.size() + j + 1 == steps) ? r.dst : num_states_++;
            edges_.push_back({cur, kEpsilon, in_idx(r.in[j]), nxt});
            cur = nxt;
        }
    }
}

Transducer Transducer::with_single_final() const {
    if (finals_.size() == 1) return *this;
    Transducer t = *this;
    size_t f = t.num_states_++;
    for (size_t old : t.finals_)
        t.edges_.push_back({old, kEpsilon, kEpsilon, f});
    t.finals_ = {f};
    return t;
}

Transducer Transducer::with_input_prefix(const Symbol& c) const {
    Alphabet in2 = in_alphabet_.merged_with(Alphabet({c}));
    Transducer t;
    t.out_alphabet_ = out_alphabet_;
    t.in_alphabet_ = in2;
    t.num_states_ = num_states_ + 1;
    for (const auto& e : edges_) {
        int in = e.in == kEpsilon
                     ? kEpsilon
                     : static_cast<int>(*in2.index_of(
                           in_alphabet_.symbol(static_cast<size_t>(e.in))));
        t.edges_.push_back({e.src, e.out, in, e.dst});
    }
    size_t fresh = num_states_;
    t.edges_.push_back(
        {fresh, kEpsilon, static_cast<int>(*in2.index_of(c)), initial_});
    t.initial_ = fresh;
    t.finals_ = finals_;
    return t;
}

Transducer transducer_identity(const Alphabet& a) {
    std::vector<Transducer::Rule> rules;
    for (const auto& s : a.symbols()) rules.push_back({0, {s}, {s}, 0});
    return Transducer(a, a, 1, rules, 0, {0});
}

Transducer transducer_identity_restricted(const Nfa& n) {
    std::vector<Transducer::Rule> rules;
    for (const auto& t : n.transitions()) {
        if (t.label == kEpsilon) {
            rules.push_back({t.src, {}, {}, t.dst});
        } else {
            Symbol s = n.alphabet().symbol(static_cast<size_t>(t.label));
            rules.push_back({t.src, {s}, {s}, t.dst});
        }
    }
    return Transducer(n.alphabet(), n.alphabet(), n.num_states(), rules,
                      n.initial(), n.finals());
}

Transducer transducer_morphism_graph(const WordMorphism& h) {
    std::vector<Transducer::Rule> rules;
    for (const auto& s : h.domain().symbols())
        rules.push_back({0, h.image_of(s), {s}, 0});
    return Transducer(h.codomain(), h.domain(), 1, rules, 0, {0});
}

Transducer transducer_shuffle(const Alphabet& x, const Alphabet& z) {
    if (!x.disjoint_with(z))
        throw input_error("shuffle letters must be fresh");
    Alphabet merged = x.merged_with(z);
    std::vector<Transducer::Rule> rules;
    for (const auto& s : x.symbols()) rules.push_back({0, {s}, {s}, 0});
    for (const auto& s : z.symbols()) rules.push_back({0, {s}, {}, 0});
    return Transducer(merged, x, 1, rules, 0, {0});
}

Transducer transducer_compose(const Transducer& a, const Transducer& b) {
    if (a.in_alphabet() != b.out_alphabet())
        throw input_error("transducer composition alphabet mismatch");
    auto id = [&](size_t p, size_t q) { return p * b.num_states() + q; };
    std::vector<Transducer::Rule> rules;
    auto out_sym = [&](int i) {
        return Word{a.out_alphabet().symbol(static_cast<size_t>(i))};
    };
    auto in_sym = [&](int i) {
        return Word{b.in_alphabet().symbol(static_cast<size_t>(i))};
    };
    for (size_t q = 0; q < b.num_states(); ++q)
        for (const auto& ea : a.edges())
            if (ea.in == kEpsilon)
                rules.push_back({id(ea.src, q),
                                 ea.out == kEpsilon ? Word{} : out_sym(ea.out),
                                 {},
                                 id(ea.dst, q)});
    for (size_t p = 0; p < a.num_states(); ++p)
        for (const auto& eb : b.edges())
            if (eb.out == kEpsilon)
                rules.push_back({id(p, eb.src),
                                 {},
                                 eb.in == kEpsilon ? Word{} : in_sym(eb.in),
                                 id(p, eb.dst)});
    for (const auto& ea : a.edges()) {
        if (ea.in == kEpsilon) continue;
        for (const auto& eb : b.edges()) {
            if (eb.out != ea.in) continue;
            rules.push_back({id(ea.src, eb.src),
                             ea.out == kEpsilon ? Word{} : out_sym(ea.out),
                             eb.in == kEpsilon ? Word{} : in_sym(eb.in),
                             id(ea.dst, eb.dst)});
        }
    }
    std::set<size_t> finals;
    for (size_t fa : a.finals())
        for (size_t fb : b.finals()) finals.insert(id(fa, fb));
    return Transducer(a.out_alphabet(), b.in_alphabet(),
                      a.num_states() * b.num_states(), rules,
                      id(a.initial(), b.initial()), std::move(finals));
}

Nfa apply_transducer_regular(const Transducer& t, const Nfa& n0) {
    if (t.in_alphabet() != n0.alphabet())
        throw input_error("transducer input alphabet mismatch");
    Nfa n = remove_epsilon(n0);
    auto id = [&](size_t p, size_t q) { return p * n.num_states() + q; };
    std::vector<Nfa::Transition> ts;
    for (const auto& e : t.edges()) {
        if (e.in == kEpsilon) {
            for (size_t q = 0; q < n.num_states(); ++q)
                ts.push_back({id(e.src, q), e.out, id(e.dst, q)});
        } else {
            for (const auto& tn : n.transitions())
                if (tn.label == e.in)
                    ts.push_back({id(e.src, tn.src), e.out, id(e.dst, tn.dst)});
        }
    }
    std::set<size_t> finals;
    for (size_t ft : t.finals())
        for (size_t fn : n.finals()) finals.insert(id(ft, fn));
    return trim(Nfa(t.out_alphabet(), t.num_states() * n.num_states(),
                    std::move(ts), id(t.initial(), n.initial()),
                    std::move(finals)));
}

Nfa transducer_image_of_word(const Transducer& t, const Word& w) {
    for (const auto& s : w)
        if (!t.in_alphabet().contains(s))
            throw input_error("word symbol outside transducer input: " + s);
    auto id = [&](size_t p, size_t i) { return p * (w.size() + 1) + i; };
    std::vector<Nfa::Transition> ts;
    for (const auto& e : t.edges()) {
        for (size_t i = 0; i <= w.size(); ++i) {
            if (e.in == kEpsilon) {
                ts.push_back({id(e.src, i), e.out, id(e.dst, i)});
            } else if (i < w.size() &&
                       t.in_alphabet().symbol(static_cast<size_t>(e.in)) ==
                           w[i]) {
                ts.push_back({id(e.src, i), e.out, id(e.dst, i + 1)});
            }
        }
    }
    std::set<size_t> finals;
    for (size_t f : t.finals()) finals.insert(id(f, w.size()));
    return trim(Nfa(t.out_alphabet(), t.num_states() * (w.size() + 1),
                    std::move(ts), id(t.initial(), 0), std::move(finals)));
}

Nfa transducer_interleaving(const Transducer& t, const Alphabet& z) {
    if (z.size() != t.out_alphabet().size())
        throw input_error("interleaving copy alphabet has wrong size");
    if (!z.disjoint_with(t.in_alphabet()))
        throw input_error("interleaving copy alphabet must be fresh");
    Alphabet merged = z.merged_with(t.in_alphabet());
    std::vector<Nfa::Transition> ts;
    for (const auto& e : t.edges()) {
        int label = kEpsilon;
        if (e.out != kEpsilon)
            label = static_cast<int>(
                *merged.index_of(z.symbol(static_cast<size_t>(e.out))));
        else if (e.in != kEpsilon)
            label = static_cast<int>(*merged.index_of(
                t.in_alphabet().symbol(static_cast<size_t>(e.in))));
        ts.push_back({e.src, label, e.dst});
    }
    return Nfa(merged, t.num_states(), std::move(ts), t.initial(),
               t.finals());
}

}  // namespace parikh

#include "parikh/automata.hh"

#include <algorithm>
#include <deque>
#include <functional>
#include <map>
#include <sstream>

namespace parikh {

Nfa::Nfa(Alphabet alphabet, size_t num_states,
         std::vector<Transition> transitions, size_t initial,
         std::set<size_t> finals)
    : alphabet_(std::move(alphabet)), num_states_(num_states),
      transitions_(std::move(transitions)), initial_(initial),
      finals_(std::move(finals)) {
    if (num_states_ == 0) throw input_error("automaton needs a state");
    if (initial_ >= num_states_) throw input_error("bad initial state");
    for (size_t f : finals_)
        if (f >= num_states_) throw input_error("bad final state");
    for (const auto& t : transitions_) {
        if (t.src >= num_states_ || t.dst >= num_states_)
            throw input_error("transition references missing state");
        if (t.label != kEpsilon &&
            (t.label < 0 || static_cast<size_t>(t.label) >= alphabet_.size()))
            throw input_error("transition label outside alphabet");
    }
    std::sort(transitions_.begin(), transitions_.end());
    transitions_.erase(std::unique(transitions_.begin(), transitions_.end()),
                       transitions_.end());
}

Nfa Nfa::embedded_into(const Alphabet& bigger) const {
    if (bigger == alphabet_) return *this;
    if (!bigger.contains_all(alphabet_))
        throw input_error("alphabet embedding misses symbols");
    std::vector<Transition> ts;
    ts.reserve(transitions_.size());
    for (const auto& t : transitions_) {
        int label = t.label == kEpsilon
                        ? kEpsilon
                        : static_cast<int>(*bigger.index_of(
                              alphabet_.symbol(static_cast<size_t>(t.label))));
        ts.push_back({t.src, label, t.dst});
    }
    return Nfa(bigger, num_states_, std::move(ts), initial_, finals_);
}

// --------------------------------------------------------------- Factories

Nfa nfa_empty(const Alphabet& a) { return Nfa(a, 1, {}, 0, {}); }

Nfa nfa_epsilon(const Alphabet& a) { return Nfa(a, 1, {}, 0, {0}); }

Nfa nfa_word(const Word& w, const Alphabet& a) {
    std::vector<Nfa::Transition> ts;
    for (size_t i = 0; i < w.size(); ++i) {
        auto idx = a.index_of(w[i]);
        if (!idx) throw input_error("word symbol not in alphabet: " + w[i]);
        ts.push_back({i, static_cast<int>(*idx), i + 1});
    }
    return Nfa(a, w.size() + 1, std::move(ts), 0, {w.size()});
}

Nfa nfa_finite(const std::vector<Word>& ws, const Alphabet& a) {
    Nfa acc = nfa_empty(a);
    for (const auto& w : ws) acc = reg_union(acc, nfa_word(w, a));
    return acc;
}

Nfa nfa_universal(const Alphabet& a) {
    std::vector<Nfa::Transition> ts;
    for (size_t i = 0; i < a.size(); ++i)
        ts.push_back({0, static_cast<int>(i), 0});
    return Nfa(a, 1, std::move(ts), 0, {0});
}

// --------------------------------------------------------- Regular algebra

Nfa reg_union(const Nfa& a, const Nfa& b) {
    if (a.alphabet() != b.alphabet())
        throw input_error("reg_union alphabet mismatch");
    std::vector<Nfa::Transition> ts;
    size_t offa = 1, offb = 1 + a.num_states();
    for (const auto& t : a.transitions())
        ts.push_back({t.src + offa, t.label, t.dst + offa});
    for (const auto& t : b.transitions())
        ts.push_back({t.src + offb, t.label, t.dst + offb});
    ts.push_back({0, kEpsilon, a.initial() + offa});
    ts.push_back({0, kEpsilon, b.initial() + offb});
    std::set<size_t> finals;
    for (size_t f : a.finals()) finals.insert(f + offa);
    for (size_t f : b.finals()) finals.insert(f + offb);
    return Nfa(a.alphabet(), 1 + a.num_states() + b.num_states(),
               std::move(ts), 0, std::move(finals));
}

Nfa reg_concat(const Nfa& a, const Nfa& b) {
    if (a.alphabet() != b.alphabet())
        throw input_error("reg_concat alphabet mismatch");
    std::vector<Nfa::Transition> ts = a.transitions();
    size_t offb = a.num_states();
    for (const auto& t : b.transitions())
        ts.push_back({t.src + offb, t.label, t.dst + offb});
    for (size_t f : a.finals())
        ts.push_back({f, kEpsilon, b.initial() + offb});
    std::set<size_t> finals;
    for (size_t f : b.finals()) finals.insert(f + offb);
    return Nfa(a.alphabet(), a.num_states() + b.num_states(), std::move(ts),
               a.initial(), std::move(finals));
}

Nfa reg_star(const Nfa& a) {
    std::vector<Nfa::Transition> ts;
    for (const auto& t : a.transitions())
        ts.push_back({t.src + 1, t.label, t.dst + 1});
    ts.push_back({0, kEpsilon, a.initial() + 1});
    for (size_t f : a.finals()) ts.push_back({f + 1, kEpsilon, 0});
    return Nfa(a.alphabet(), a.num_states() + 1, std::move(ts), 0, {0});
}

// --------------------------------------------------------- Epsilon handling

namespace {

std::vector<std::set<size_t>> epsilon_closures(const Nfa& a) {
    std::vector<std::set<size_t>> closure(a.num_states());
    std::vector<std::vector<size_t>> eps(a.num_states());
    for (const auto& t : a.transitions())
        if (t.label == kEpsilon) eps[t.src].push_back(t.dst);
    for (size_t s = 0; s < a.num_states(); ++s) {
        std::deque<size_t> queue{s};
        closure[s].insert(s);
        while (!queue.empty()) {
            size_t cur = queue.front();
            queue.pop_front();
            for (size_t nxt : eps[cur])
                if (closure[s].insert(nxt).second) queue.push_back(nxt);
        }
    }
    return closure;
}

}  // namespace

Nfa remove_epsilon(const Nfa& a) {
    auto closure = epsilon_closures(a);
    std::vector<Nfa::Transition> ts;
    std::set<size_t> finals;
    for (size_t s = 0; s < a.num_states(); ++s) {
        for (size_t c : closure[s]) {
            if (a.finals().count(c)) finals.insert(s);
            for (const auto& t : a.transitions())
                if (t.src == c && t.label != kEpsilon)
                    ts.push_back({s, t.label, t.dst});
        }
    }
    return Nfa(a.alphabet(), a.num_states(), std::move(ts), a.initial(),
               std::move(finals));
}

Nfa trim(const Nfa& a) {
    std::vector<bool> reach(a.num_states(), false);
    std::deque<size_t> queue{a.initial()};
    reach[a.initial()] = true;
    while (!queue.empty()) {
        size_t s = queue.front();
        queue.pop_front();
        for (const auto& t : a.transitions())
            if (t.src == s && !reach[t.dst]) {
                reach[t.dst] = true;
                queue.push_back(t.dst);
            }
    }
    std::vector<bool> co(a.num_states(), false);
    for (size_t f : a.finals())
        if (!co[f]) {
            co[f] = true;
            queue.push_back(f);
        }
    while (!queue.empty()) {
        size_t s = queue.front();
        queue.pop_front();
        for (const auto& t : a.transitions())
            if (t.dst == s && !co[t.src]) {
                co[t.src] = true;
                queue.push_back(t.src);
            }
    }
    std::vector<size_t> remap(a.num_states(), SIZE_MAX);
    size_t next = 0;
    for (size_t s = 0; s < a.num_states(); ++s)
        if (reach[s] && co[s]) remap[s] = next++;
    if (remap[a.initial()] == SIZE_MAX) return nfa_empty(a.alphabet());
    std::vector<Nfa::Transition> ts;
    for (const auto& t : a.transitions())
        if (remap[t.src] != SIZE_MAX && remap[t.dst] != SIZE_MAX)
            ts.push_back({remap[t.src], t.label, remap[t.dst]});
    std::set<size_t> finals;
    for (size_t f : a.finals())
        if (remap[f] != SIZE_MAX) finals.insert(remap[f]);
    return Nfa(a.alphabet(), next, std::move(ts), remap[a.initial()],
               std::move(finals));
}

Nfa reg_intersect(const Nfa& a0, const Nfa& b0) {
    if (a0.alphabet() != b0.alphabet())
        throw input_error("reg_intersect alphabet mismatch");
    Nfa a = remove_epsilon(a0);
    Nfa b = remove_epsilon(b0);
    std::map<std::pair<size_t, size_t>, size_t> ids;
    std::vector<std::pair<size_t, size_t>> order;
    auto id_of = [&](size_t p, size_t q) {
        auto [it, fresh] = ids.emplace(std::make_pair(p, q), ids.size());
        if (fresh) order.emplace_back(p, q);
        return it->second;
    };
    std::vector<Nfa::Transition> ts;
    id_of(a.initial(), b.initial());
    for (size_t done = 0; done < order.size(); ++done) {
        auto [p, q] = order[done];
        size_t src = id_of(p, q);
        for (const auto& ta : a.transitions()) {
            if (ta.src != p) continue;
            for (const auto& tb : b.transitions()) {
                if (tb.src != q || tb.label != ta.label) continue;
                ts.push_back({src, ta.label, id_of(ta.dst, tb.dst)});
            }
        }
    }
    std::set<size_t> finals;
    for (const auto& [pq, id] : ids)
        if (a.finals().count(pq.first) && b.finals().count(pq.second))
            finals.insert(id);
    return trim(Nfa(a.alphabet(), ids.size(), std::move(ts),
                    id_of(a.initial(), b.initial()), std::move(finals)));
}

// --------------------------------------------------- Determinize / minimize

Nfa determinize(const Nfa& a) {
    auto closure = epsilon_closures(a);
    size_t nsym = a.alphabet().size();
    std::map<std::vector<size_t>, size_t> ids;
    std::vector<std::vector<size_t>> subsets;
    auto id_of = [&](std::vector<size_t> subset) {
        auto [it, fresh] = ids.emplace(subset, ids.size());
        if (fresh) subsets.push_back(std::move(subset));
        return it->second;
    };
    id_of(std::vector<size_t>(closure[a.initial()].begin(),
                              closure[a.initial()].end()));
    std::vector<Nfa::Transition> ts;
    for (size_t done = 0; done < subsets.size(); ++done) {
        std::vector<size_t> cur = subsets[done];
        for (size_t x = 0; x < nsym; ++x) {
            std::set<size_t> next;
            for (size_t s : cur)
                for (const auto& t : a.transitions())
                    if (t.src == s && t.label == static_cast<int>(x))
                        next.insert(closure[t.dst].begin(),
                                    closure[t.dst].end());
            size_t dst = id_of(std::vector<size_t>(next.begin(), next.end()));
            ts.push_back({done, static_cast<int>(x), dst});
        }
    }
    std::set<size_t> finals;
    for (const auto& [subset, id] : ids)
        for (size_t s : subset)
            if (a.finals().count(s)) {
                finals.insert(id);
                break;
            }
    return Nfa(a.alphabet(), std::max<size_t>(ids.size(), 1), std::move(ts), 0,
               std::move(finals));
}

Nfa minimize(const Nfa& a0) {
    Nfa a = determinize(a0);
    size_t n = a.num_states(), nsym = a.alphabet().size();
    std::vector<std::vector<size_t>> delta(n, std::vector<size_t>(nsym, 0));
    for (const auto& t : a.transitions())
        delta[t.src][static_cast<size_t>(t.label)] = t.dst;
    std::vector<size_t> block(n, 0);
    for (size_t s = 0; s < n; ++s) block[s] = a.finals().count(s) ? 1 : 0;
    while (true) {
        std::map<std::vector<size_t>, size_t> sig_ids;
        std::vector<size_t> next_block(n);
        for (size_t s = 0; s < n; ++s) {
            std::vector<size_t> sig{block[s]};
            for (size_t x = 0; x < nsym; ++x) sig.push_back(block[delta[s][x]]);
            next_block[s] = sig_ids.emplace(sig, sig_ids.size()).first->second;
        }
        size_t old_count =
            1 + *std::max_element(block.begin(), block.end());
        block = std::move(next_block);
        if (sig_ids.size() == old_count) break;
    }
    // canonical numbering by BFS from the initial block keeps output stable
    size_t nblocks = 1 + *std::max_element(block.begin(), block.end());
    std::vector<size_t> canon(nblocks, SIZE_MAX);
    std::vector<size_t> rep(nblocks, SIZE_MAX);
    for (size_t s = 0; s < n; ++s)
        if (rep[block[s]] == SIZE_MAX) rep[block[s]] = s;
    std::deque<size_t> queue{block[a.initial()]};
    canon[block[a.initial()]] = 0;
    size_t next_id = 1;
    while (!queue.empty()) {
        size_t b = queue.front();
        queue.pop_front();
        for (size_t x = 0; x < nsym; ++x) {
            size_t tgt = block[delta[rep[b]][x]];
            if (canon[tgt] == SIZE_MAX) {
                canon[tgt] = next_id++;
                queue.push_back(tgt);
            }
        }
    }
    std::vector<Nfa::Transition> ts;
    std::set<size_t> finals;
    for (size_t b = 0; b < nblocks; ++b) {
        if (canon[b] == SIZE_MAX) continue;
        for (size_t x = 0; x < nsym; ++x)
            ts.push_back({canon[b], static_cast<int>(x),
                          canon[block[delta[rep[b]][x]]]});
        if (a.finals().count(rep[b])) finals.insert(canon[b]);
    }
    return Nfa(a.alphabet(), next_id, std::move(ts), 0, std::move(finals));
}

Nfa complement(const Nfa& a) {
    Nfa d = determinize(a);
    std::set<size_t> finals;
    for (size_t s = 0; s < d.num_states(); ++s)
        if (!d.finals().count(s)) finals.insert(s);
    return Nfa(d.alphabet(), d.num_states(), d.transitions(), d.initial(),
               std::move(finals));
}

bool is_empty(const Nfa& a) {
    std::vector<bool> seen(a.num_states(), false);
    std::deque<size_t> queue{a.initial()};
    seen[a.initial()] = true;
    while (!queue.empty()) {
        size_t s = queue.front();
        queue.pop_front();
        if (a.finals().count(s)) return false;
        for (const auto& t : a.transitions())
            if (t.src == s && !seen[t.dst]) {
                seen[t.dst] = true;
                queue.push_back(t.dst);
            }
    }
    return true;
}

bool accepts(const Nfa& a, const Word& w) {
    auto closure = epsilon_closures(a);
    std::set<size_t> cur = closure[a.initial()];
    for (const auto& sym : w) {
        auto idx = a.alphabet().index_of(sym);
        if (!idx) return false;
        std::set<size_t> next;
        for (size_t s : cur)
            for (const auto& t : a.transitions())
                if (t.src == s && t.label == static_cast<int>(*idx))
                    next.insert(closure[t.dst].begin(), closure[t.dst].end());
        cur = std::move(next);
        if (cur.empty()) return false;
    }
    return std::any_of(cur.begin(), cur.end(),
                       [&](size_t s) { return a.finals().count(s) > 0; });
}

bool equivalent(const Nfa& a, const Nfa& b) {
    if (a.alphabet() != b.alphabet())
        throw input_error("equivalent alphabet mismatch");
    Nfa ma = minimize(a);
    Nfa mb = minimize(b);
    if (ma.num_states() != mb.num_states()) return false;
    size_t nsym = ma.alphabet().size();
    auto delta_of = [&](const Nfa& m) {
        std::vector<std::vector<size_t>> delta(m.num_states(),
                                               std::vector<size_t>(nsym, 0));
        for (const auto& t : m.transitions())
            delta[t.src][static_cast<size_t>(t.label)] = t.dst;
        return delta;
    };
    auto da = delta_of(ma), db = delta_of(mb);
    std::vector<size_t> map(ma.num_states(), SIZE_MAX);
    std::deque<size_t> queue{ma.initial()};
    map[ma.initial()] = mb.initial();
    while (!queue.empty()) {
        size_t s = queue.front();
        queue.pop_front();
        if (ma.finals().count(s) != mb.finals().count(map[s])) return false;
        for (size_t x = 0; x < nsym; ++x) {
            size_t ta = da[s][x], tb = db[map[s]][x];
            if (map[ta] == SIZE_MAX) {
                map[ta] = tb;
                queue.push_back(ta);
            } else if (map[ta] != tb) {
                return false;
            }
        }
    }
    return true;
}

// ---------------------------------------------------- Downward closure etc.

Nfa nfa_downward(const Nfa& a) {
    std::vector<Nfa::Transition> ts = a.transitions();
    for (const auto& t : a.transitions())
        if (t.label != kEpsilon) ts.push_back({t.src, kEpsilon, t.dst});
    return Nfa(a.alphabet(), a.num_states(), std::move(ts), a.initial(),
               a.finals());
}

bool nfa_is_downward_closed(const Nfa& a) {
    return equivalent(a, nfa_downward(a));
}

Nfa nfa_shuffle_letters(const Nfa& a, const Alphabet& z) {
    if (!a.alphabet().disjoint_with(z))
        throw input_error("shuffle letters must be fresh");
    Alphabet merged = a.alphabet().merged_with(z);
    Nfa base = a.embedded_into(merged);
    std::vector<Nfa::Transition> ts = base.transitions();
    for (const auto& sym : z.symbols()) {
        int label = static_cast<int>(*merged.index_of(sym));
        for (size_t s = 0; s < base.num_states(); ++s)
            ts.push_back({s, label, s});
    }
    return Nfa(merged, base.num_states(), std::move(ts), base.initial(),
               base.finals());
}

Nfa nfa_word_morphism(const WordMorphism& h, const Nfa& a) {
    if (h.domain() != a.alphabet())
        throw input_error("nfa_word_morphism domain mismatch");
    const Alphabet& y = h.codomain();
    std::vector<Nfa::Transition> ts;
    size_t next_state = a.num_states();
    for (const auto& t : a.transitions()) {
        if (t.label == kEpsilon) {
            ts.push_back({t.src, kEpsilon, t.dst});
            continue;
        }
        const Word& img = h.image(static_cast<size_t>(t.label));
        if (img.empty()) {
            ts.push_back({t.src, kEpsilon, t.dst});
            continue;
        }
        size_t cur = t.src;
        for (size_t i = 0; i < img.size(); ++i) {
            size_t nxt = (i + 1 == img.size()) ? t.dst : next_state++;
            ts.push_back({cur, static_cast<int>(*y.index_of(img[i])), nxt});
            cur = nxt;
        }
    }
    return Nfa(y, next_state, std::move(ts), a.initial(), a.finals());
}

Nfa parikh_inverse_dc_automaton(const DownwardClosedSet& d) {
    const Alphabet& x = d.alphabet();
    Nfa acc = nfa_empty(x);
    for (const auto& ideal : d.ideals()) {
        // Product of per-letter counters over the bounded coordinates;
        // unbounded letters self-loop everywhere.
        std::vector<size_t> bounded;
        std::vector<long long> bounds;
        for (size_t i = 0; i < x.size(); ++i)
            if (!ideal.unbounded[i]) {
                bounded.push_back(i);
                bounds.push_back(ideal.bound.at(i));
            }
        size_t states = 1;
        for (long long b : bounds) {
            states *= static_cast<size_t>(b + 1);
            if (states > 200000) throw limit_error("counter automaton too big");
        }
        auto encode = [&](const std::vector<long long>& counts) {
            size_t id = 0;
            for (size_t k = 0; k < bounded.size(); ++k)
                id = id * static_cast<size_t>(bounds[k] + 1) +
                     static_cast<size_t>(counts[k]);
            return id;
        };
        std::vector<Nfa::Transition> ts;
        std::vector<long long> counts(bounded.size(), 0);
        while (true) {
            size_t src = encode(counts);
            for (size_t i = 0; i < x.size(); ++i) {
                auto pos = std::find(bounded.begin(), bounded.end(), i);
                if (pos == bounded.end()) {
                    ts.push_back({src, static_cast<int>(i), src});
                } else {
                    size_t k = static_cast<size_t>(pos - bounded.begin());
                    if (counts[k] < bounds[k]) {
                        ++counts[k];
                        ts.push_back({src, static_cast<int>(i), encode(counts)});
                        --counts[k];
                    }
                }
            }
            size_t k = 0;
            while (k < counts.size() && counts[k] == bounds[k]) counts[k++] = 0;
            if (k == counts.size()) break;
            ++counts[k];
        }
        std::set<size_t> finals;
        for (size_t s = 0; s < states; ++s) finals.insert(s);
        acc = reg_union(acc,
                        Nfa(x, states, std::move(ts), 0, std::move(finals)));
    }
    return acc;
}

Nfa parikh_inverse_dc_automaton(const SemilinearSet& s) {
    return parikh_inverse_dc_automaton(sl_downward(s));
}

// ------------------------------------------------------------ Parikh image

namespace {

constexpr size_t kMaxSimplePaths = 50000;
constexpr size_t kMaxSimpleCycles = 16;

struct CycleInfo {
    std::set<size_t> states;
    Multiset image;
};

void enumerate_simple_paths(
    const Nfa& a, std::vector<std::pair<std::set<size_t>, Multiset>>& out) {
    std::vector<size_t> path_states{a.initial()};
    Multiset image{a.alphabet()};
    std::function<void()> dfs = [&]() {
        size_t cur = path_states.back();
        if (a.finals().count(cur)) {
            out.emplace_back(
                std::set<size_t>(path_states.begin(), path_states.end()),
                image);
            if (out.size() > kMaxSimplePaths)
                throw limit_error("too many simple paths in parikh_regular");
        }
        for (const auto& t : a.transitions()) {
            if (t.src != cur) continue;
            if (std::find(path_states.begin(), path_states.end(), t.dst) !=
                path_states.end())
                continue;
            std::vector<long long> unit(a.alphabet().size(), 0);
            unit[static_cast<size_t>(t.label)] = 1;
            Multiset prev = image;
            image = image.plus(Multiset(a.alphabet(), std::move(unit)));
            path_states.push_back(t.dst);
            dfs();
            path_states.pop_back();
            image = prev;
        }
    };
    dfs();
}

void enumerate_simple_cycles(const Nfa& a, std::vector<CycleInfo>& out) {
    // Each cycle is enumerated from its minimal state, which avoids
    // duplicates.
    for (size_t s = 0; s < a.num_states(); ++s) {
        std::vector<size_t> path{s};
        Multiset image{a.alphabet()};
        std::function<void()> dfs = [&]() {
            size_t cur = path.back();
            for (const auto& t : a.transitions()) {
                if (t.src != cur || t.dst < s) continue;
                std::vector<long long> unit(a.alphabet().size(), 0);
                unit[static_cast<size_t>(t.label)] = 1;
                Multiset step(a.alphabet(), std::move(unit));
                if (t.dst == s) {
                    out.push_back({std::set<size_t>(path.begin(), path.end()),
                                   image.plus(step)});
                    if (out.size() > kMaxSimpleCycles)
                        throw limit_error(
                            "too many simple cycles in parikh_regular");
                    continue;
                }
                if (std::find(path.begin(), path.end(), t.dst) != path.end())
                    continue;
                Multiset prev = image;
                image = image.plus(step);
                path.push_back(t.dst);
                dfs();
                path.pop_back();
                image = prev;
            }
        };
        dfs();
    }
}

bool cycles_connect(const std::set<size_t>& path_states,
                    const std::vector<CycleInfo>& cycles,
                    const std::vector<size_t>& chosen) {
    std::set<size_t> support = path_states;
    std::vector<bool> used(chosen.size(), false);
    size_t attached = 0;
    bool grew = true;
    while (grew) {
        grew = false;
        for (size_t k = 0; k < chosen.size(); ++k) {
            if (used[k]) continue;
            const auto& st = cycles[chosen[k]].states;
            bool touches = std::any_of(st.begin(), st.end(), [&](size_t q) {
                return support.count(q) > 0;
            });
            if (touches) {
                support.insert(st.begin(), st.end());
                used[k] = true;
                ++attached;
                grew = true;
            }
        }
    }
    return attached == chosen.size();
}

}  // namespace

SemilinearSet parikh_regular(const Nfa& a0) {
    Nfa a = remove_epsilon(trim(a0));
    if (a.finals().empty()) return SemilinearSet::empty(a0.alphabet());
    std::vector<std::pair<std::set<size_t>, Multiset>> paths;
    enumerate_simple_paths(a, paths);
    std::vector<CycleInfo> cycles;
    enumerate_simple_cycles(a, cycles);

    std::vector<LinearSet> comps;
    for (const auto& [pstates, pimage] : paths) {
        size_t m = cycles.size();
        for (size_t mask = 0; mask < (size_t{1} << m); ++mask) {
            std::vector<size_t> chosen;
            for (size_t k = 0; k < m; ++k)
                if (mask & (size_t{1} << k)) chosen.push_back(k);
            if (!cycles_connect(pstates, cycles, chosen)) continue;
            Multiset base = pimage;
            std::vector<Multiset> periods;
            for (size_t k : chosen) {
                base = base.plus(cycles[k].image);
                periods.push_back(cycles[k].image);
            }
            LinearSet ls(base, std::move(periods));
            if (std::find(comps.begin(), comps.end(), ls) == comps.end())
                comps.push_back(std::move(ls));
        }
    }
    return SemilinearSet(a0.alphabet(), std::move(comps));
}

std::string to_dot(const Nfa& a) {
    std::ostringstream out;
    out << "digraph nfa {\n  rankdir=LR;\n  node [shape=circle];\n";
    out << "  start [shape=point];\n";
    out << "  start -> q" << a.initial() << ";\n";
    for (size_t s = 0; s < a.num_states(); ++s)
        if (a.finals().count(s))
            out << "  q" << s << " [shape=doublecircle];\n";
    for (const auto& t : a.transitions()) {
        std::string label =
            t.label == kEpsilon
                ? std::string("\xce\xb5")
                : a.alphabet().symbol(static_cast<size_t>(t.label));
        out << "  q" << t.src << " -> q" << t.dst << " [label=\"" << label
            << "\"];\n";
    }
    out << "}\n";
    return out.str();
}

std::optional<std::vector<Word>> nfa_finite_language(const Nfa& a0,
                                                     size_t cap) {
    Nfa a = trim(a0);
    if (a.finals().empty()) return std::vector<Word>{};
    std::vector<int> color(a.num_states(), 0);
    std::function<bool(size_t)> has_cycle = [&](size_t s) {
        color[s] = 1;
        for (const auto& t : a.transitions()) {
            if (t.src != s) continue;
            if (color[t.dst] == 1) return true;
            if (color[t.dst] == 0 && has_cycle(t.dst)) return true;
        }
        color[s] = 2;
        return false;
    };
    if (has_cycle(a.initial())) return std::nullopt;
    std::set<Word> words;
    Word cur;
    bool overflow = false;
    std::function<void(size_t)> dfs = [&](size_t s) {
        if (overflow) return;
        if (a.finals().count(s)) {
            words.insert(cur);
            if (words.size() > cap) {
                overflow = true;
                return;
            }
        }
        for (const auto& t : a.transitions()) {
            if (t.src != s) continue;
            if (t.label != kEpsilon)
                cur.push_back(
                    a.alphabet().symbol(static_cast<size_t>(t.label)));
            dfs(t.dst);
            if (t.label != kEpsilon) cur.pop_back();
        }
    };
    dfs(a.initial());
    if (overflow) return std::nullopt;
    return std::vector<Word>(words.begin(), words.end());
}

}  // namespace parikh

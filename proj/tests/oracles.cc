#include "oracles.hh"

#include <algorithm>
#include <deque>

namespace parikh::testing {

std::vector<Multiset> box_multisets(const Alphabet& a, long long bound) {
    std::vector<std::vector<long long>> vecs{{}};
    for (size_t i = 0; i < a.size(); ++i) {
        std::vector<std::vector<long long>> next;
        for (const auto& v : vecs) {
            for (long long n = 0; n <= bound; ++n) {
                auto w = v;
                w.push_back(n);
                next.push_back(std::move(w));
            }
        }
        vecs = std::move(next);
    }
    std::vector<Multiset> out;
    out.reserve(vecs.size());
    for (auto& v : vecs) out.emplace_back(a, std::move(v));
    return out;
}

std::set<std::vector<long long>> box_members(const SemilinearSet& s,
                                             long long bound) {
    std::set<std::vector<long long>> seen;
    auto in_box = [&](const Multiset& m) {
        return std::all_of(m.counts().begin(), m.counts().end(),
                           [&](long long n) { return n <= bound; });
    };
    for (const auto& comp : s.components()) {
        if (!in_box(comp.base())) continue;
        std::deque<Multiset> queue{comp.base()};
        std::set<std::vector<long long>> visited{comp.base().counts()};
        seen.insert(comp.base().counts());
        while (!queue.empty()) {
            Multiset cur = queue.front();
            queue.pop_front();
            for (const auto& p : comp.periods()) {
                Multiset next = cur.plus(p);
                if (!in_box(next)) continue;
                if (visited.insert(next.counts()).second) {
                    seen.insert(next.counts());
                    queue.push_back(next);
                }
            }
        }
    }
    return seen;
}

std::vector<std::vector<long long>>
brute_solutions(const std::vector<std::vector<long long>>& rows,
                const std::vector<long long>& rhs, size_t unknowns,
                long long bound) {
    std::vector<std::vector<long long>> out;
    std::vector<long long> x(unknowns, 0);
    auto satisfies = [&]() {
        for (size_t r = 0; r < rows.size(); ++r) {
            long long acc = 0;
            for (size_t j = 0; j < unknowns; ++j) acc += rows[r][j] * x[j];
            if (acc != rhs[r]) return false;
        }
        return true;
    };
    while (true) {
        if (satisfies()) out.push_back(x);
        size_t j = 0;
        while (j < unknowns && x[j] == bound) x[j++] = 0;
        if (j == unknowns) break;
        ++x[j];
    }
    return out;
}

std::vector<std::vector<long long>>
minimal_vectors(std::vector<std::vector<long long>> vs) {
    auto leq = [](const std::vector<long long>& a,
                  const std::vector<long long>& b) {
        for (size_t i = 0; i < a.size(); ++i)
            if (a[i] > b[i]) return false;
        return true;
    };
    std::vector<std::vector<long long>> out;
    for (const auto& v : vs) {
        bool dominated = std::any_of(vs.begin(), vs.end(), [&](const auto& o) {
            return o != v && leq(o, v);
        });
        if (!dominated && std::find(out.begin(), out.end(), v) == out.end())
            out.push_back(v);
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<Word> all_words(const Alphabet& a, size_t maxlen) {
    std::vector<Word> out{{}};
    std::vector<Word> layer{{}};
    for (size_t len = 1; len <= maxlen; ++len) {
        std::vector<Word> next;
        for (const auto& w : layer) {
            for (const auto& s : a.symbols()) {
                Word w2 = w;
                w2.push_back(s);
                next.push_back(w2);
                out.push_back(std::move(w2));
            }
        }
        layer = std::move(next);
    }
    return out;
}

bool is_subword(const Word& u, const Word& v) {
    size_t i = 0;
    for (size_t j = 0; j < v.size() && i < u.size(); ++j)
        if (u[i] == v[j]) ++i;
    return i == u.size();
}

std::set<Word> subword_closure(const std::set<Word>& ws, size_t maxlen) {
    std::set<Word> out;
    std::deque<Word> queue;
    for (const auto& w : ws) {
        if (out.insert(w).second) queue.push_back(w);
    }
    while (!queue.empty()) {
        Word w = queue.front();
        queue.pop_front();
        for (size_t i = 0; i < w.size(); ++i) {
            Word u = w;
            u.erase(u.begin() + static_cast<long>(i));
            if (out.insert(u).second) queue.push_back(u);
        }
    }
    std::erase_if(out, [&](const Word& w) { return w.size() > maxlen; });
    return out;
}

std::set<Word> shuffle_words(const Word& u, const Word& v) {
    if (u.empty()) return {v};
    if (v.empty()) return {u};
    std::set<Word> out;
    Word u1(u.begin() + 1, u.end());
    for (auto w : shuffle_words(u1, v)) {
        w.insert(w.begin(), u.front());
        out.insert(std::move(w));
    }
    Word v1(v.begin() + 1, v.end());
    for (auto w : shuffle_words(u, v1)) {
        w.insert(w.begin(), v.front());
        out.insert(std::move(w));
    }
    return out;
}

}  // namespace parikh::testing

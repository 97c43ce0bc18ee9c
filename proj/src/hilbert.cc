// hilbert.cc -- minimal nonnegative solutions of linear Diophantine systems
// via the Contejean-Devie completion procedure with Pottier-style pruning.

#include "parikh/multiset.hh"

#include <algorithm>
#include <set>

#include <boost/multiprecision/cpp_int.hpp>

namespace parikh {

namespace {

using big_int = boost::multiprecision::cpp_int;
using Vec = std::vector<long long>;

bool leq(const Vec& a, const Vec& b) {
    for (size_t i = 0; i < a.size(); ++i)
        if (a[i] > b[i]) return false;
    return true;
}

std::vector<big_int> value_of(const std::vector<std::vector<long long>>& rows,
                              const Vec& t) {
    std::vector<big_int> v(rows.size(), 0);
    for (size_t r = 0; r < rows.size(); ++r)
        for (size_t j = 0; j < t.size(); ++j)
            if (t[j] != 0) v[r] += big_int(rows[r][j]) * t[j];
    return v;
}

bool is_zero(const std::vector<big_int>& v) {
    return std::all_of(v.begin(), v.end(),
                       [](const big_int& x) { return x == 0; });
}

// The completion explores t + e_j only when A(t + e_j) points back toward
// the origin, i.e. <A t, A e_j> < 0.
bool descends(const std::vector<big_int>& value,
              const std::vector<std::vector<long long>>& rows, size_t j) {
    big_int dot = 0;
    for (size_t r = 0; r < rows.size(); ++r)
        dot += value[r] * rows[r][j];
    return dot < 0;
}

constexpr size_t kFrontierLimit = 2'000'000;

}  // namespace

std::vector<std::vector<long long>>
hilbert_basis(const std::vector<std::vector<long long>>& rows, size_t unknowns) {
    for (const auto& row : rows)
        if (row.size() != unknowns)
            throw input_error("hilbert_basis row has wrong dimension");

    std::vector<Vec> basis;
    auto dominated = [&](const Vec& t) {
        return std::any_of(basis.begin(), basis.end(),
                           [&](const Vec& b) { return leq(b, t); });
    };

    std::set<Vec> frontier;
    for (size_t j = 0; j < unknowns; ++j) {
        Vec e(unknowns, 0);
        e[j] = 1;
        frontier.insert(std::move(e));
    }

    size_t explored = 0;
    while (!frontier.empty()) {
        std::set<Vec> next;
        for (const Vec& t : frontier) {
            if (dominated(t)) continue;
            auto value = value_of(rows, t);
            if (is_zero(value)) {
                basis.push_back(t);
                continue;
            }
            for (size_t j = 0; j < unknowns; ++j) {
                if (!descends(value, rows, j)) continue;
                Vec t2 = t;
                ++t2[j];
                if (!dominated(t2)) next.insert(std::move(t2));
            }
            if (++explored > kFrontierLimit)
                throw limit_error("hilbert_basis exceeded its search limit");
        }
        frontier = std::move(next);
    }

    // The pruning already keeps the basis an antichain; drop any stragglers
    // found before a smaller solution appeared.
    std::vector<Vec> minimal;
    for (const auto& b : basis) {
        bool keep = std::none_of(basis.begin(), basis.end(), [&](const Vec& o) {
            return o != b && leq(o, b);
        });
        if (keep) minimal.push_back(b);
    }
    std::sort(minimal.begin(), minimal.end());
    minimal.erase(std::unique(minimal.begin(), minimal.end()), minimal.end());
    return minimal;
}

std::vector<std::vector<long long>>
min_solutions(const std::vector<std::vector<long long>>& rows,
              const std::vector<long long>& rhs, size_t unknowns) {
    if (rows.size() != rhs.size())
        throw input_error("min_solutions right-hand side has wrong dimension");
    // Homogenize: solutions of A x = b correspond to Hilbert basis elements
    // of A x - b t = 0 with t = 1.
    std::vector<std::vector<long long>> hrows;
    hrows.reserve(rows.size());
    for (size_t r = 0; r < rows.size(); ++r) {
        std::vector<long long> row = rows[r];
        row.push_back(-rhs[r]);
        hrows.push_back(std::move(row));
    }
    auto hb = hilbert_basis(hrows, unknowns + 1);
    std::vector<std::vector<long long>> mins;
    for (auto& v : hb) {
        if (v[unknowns] != 1) continue;
        v.pop_back();
        mins.push_back(std::move(v));
    }
    std::sort(mins.begin(), mins.end());
    return mins;
}

}  // namespace parikh

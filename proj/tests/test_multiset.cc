#include "doctest.h"

#include <functional>
#include <set>

#include "oracles.hh"
#include "parikh/multiset.hh"

using namespace parikh;
namespace oracle = parikh::testing;

namespace {

const Alphabet ab({"a", "b"});
const Alphabet abc({"a", "b", "c"});

Multiset ms(const Alphabet& a, std::vector<long long> v) {
    return Multiset(a, std::move(v));
}

Word word(const std::string& s) {
    Word w;
    for (char c : s) w.push_back(std::string(1, c));
    return w;
}

}  // namespace

TEST_CASE("parikh map counts letters") {
    CHECK(parikh_of(word("aab"), ab) == ms(ab, {2, 1}));
    CHECK(parikh_of(word(""), ab) == ms(ab, {0, 0}));
    CHECK(parikh_of(word("abab"), ab) == ms(ab, {2, 2}));
    CHECK_THROWS_AS(parikh_of(word("ax"), ab), input_error);
}

TEST_CASE("linear sets canonicalize periods") {
    LinearSet l(ms(ab, {1, 0}),
                {ms(ab, {0, 0}), ms(ab, {1, 1}), ms(ab, {1, 1})});
    CHECK(l.periods().size() == 1);
}

TEST_CASE("sl_member decides membership") {
    SemilinearSet diag(ab, {LinearSet(ms(ab, {0, 0}), {ms(ab, {1, 1})})});
    CHECK(sl_member(ms(ab, {3, 3}), diag));
    CHECK_FALSE(sl_member(ms(ab, {2, 3}), diag));

    SemilinearSet shifted(ab, {LinearSet(ms(ab, {1, 0}), {ms(ab, {1, 1})})});
    CHECK(sl_member(ms(ab, {2, 1}), shifted));

    CHECK_FALSE(sl_member(ms(ab, {0, 0}), SemilinearSet::empty(ab)));
    CHECK(sl_member(ms(ab, {5, 2}), SemilinearSet::full(ab)));
}

TEST_CASE("sl_member agrees with forward-generation oracle") {
    SemilinearSet s(ab, {LinearSet(ms(ab, {1, 0}), {ms(ab, {2, 1})}),
                         LinearSet(ms(ab, {0, 3}), {ms(ab, {1, 1}), ms(ab, {0, 2})})});
    auto members = oracle::box_members(s, 8);
    for (const auto& mu : oracle::box_multisets(ab, 8))
        CHECK(sl_member(mu, s) == (members.count(mu.counts()) > 0));
}

TEST_CASE("hilbert basis on frozen examples") {
    // x - y = 0
    CHECK(hilbert_basis({{1, -1}}, 2) ==
          std::vector<std::vector<long long>>{{1, 1}});
    // 2x - y = 0
    CHECK(hilbert_basis({{2, -1}}, 2) ==
          std::vector<std::vector<long long>>{{1, 2}});
    // x + y - z = 0 (expected values frozen from the brute-force oracle)
    auto brute = oracle::minimal_vectors([] {
        auto all = oracle::brute_solutions({{1, 1, -1}}, {0}, 3, 3);
        std::erase_if(all, [](const auto& v) {
            return std::all_of(v.begin(), v.end(),
                               [](long long n) { return n == 0; });
        });
        return all;
    }());
    CHECK(brute == std::vector<std::vector<long long>>{{0, 1, 1}, {1, 0, 1}});
    CHECK(hilbert_basis({{1, 1, -1}}, 3) == brute);
    // empty system -> unit vectors
    CHECK(hilbert_basis({}, 2) ==
          std::vector<std::vector<long long>>{{0, 1}, {1, 0}});
}

TEST_CASE("hilbert basis minimality and completeness on a box") {
    std::vector<std::vector<long long>> rows{{1, 2, -2, 0}, {0, 1, 1, -3}};
    auto basis = hilbert_basis(rows, 4);
    // pairwise incomparable
    auto leq = [](const auto& a, const auto& b) {
        for (size_t i = 0; i < a.size(); ++i)
            if (a[i] > b[i]) return false;
        return true;
    };
    for (const auto& u : basis)
        for (const auto& v : basis)
            if (u != v) CHECK_FALSE(leq(u, v));
    // every box solution decomposes over the basis
    auto sols = oracle::brute_solutions(rows, {0, 0}, 4, 5);
    for (auto sol : sols) {
        // greedy decomposition with backtracking
        std::function<bool(std::vector<long long>, size_t)> decompose =
            [&](std::vector<long long> rest, size_t from) {
                if (std::all_of(rest.begin(), rest.end(),
                                [](long long n) { return n == 0; }))
                    return true;
                if (from >= basis.size()) return false;
                while (true) {
                    if (decompose(rest, from + 1)) return true;
                    for (size_t i = 0; i < rest.size(); ++i) {
                        rest[i] -= basis[from][i];
                        if (rest[i] < 0) return false;
                    }
                }
            };
        CHECK(decompose(sol, 0));
    }
}

TEST_CASE("min_solutions on frozen examples") {
    CHECK(min_solutions({{1, -1}}, {1}, 2) ==
          std::vector<std::vector<long long>>{{1, 0}});
    CHECK(min_solutions({{1, 1}}, {2}, 2) ==
          std::vector<std::vector<long long>>{{0, 2}, {1, 1}, {2, 0}});
    // 2x - 3y = 1: brute force over [0,10]^2 gives (2,1) as the only minimum
    auto brute = oracle::minimal_vectors(
        oracle::brute_solutions({{2, -3}}, {1}, 2, 10));
    CHECK(brute == std::vector<std::vector<long long>>{{2, 1}});
    CHECK(min_solutions({{2, -3}}, {1}, 2) == brute);
    // infeasible
    CHECK(min_solutions({{2}}, {3}, 1).empty());
}

TEST_CASE("sl_intersect matches the box oracle") {
    SemilinearSet s1(ab, {LinearSet(ms(ab, {1, 0}), {ms(ab, {1, 1})})});
    SemilinearSet s2(ab, {LinearSet(ms(ab, {0, 0}), {ms(ab, {2, 1})})});
    auto inter = sl_intersect(s1, s2);
    // frozen from brute force over [0,10]^2: only (2,1) lies in both
    CHECK(sl_member(ms(ab, {2, 1}), inter));
    for (const auto& mu : oracle::box_multisets(ab, 10))
        CHECK(sl_member(mu, inter) == (sl_member(mu, s1) && sl_member(mu, s2)));

    SemilinearSet diag(ab, {LinearSet(ms(ab, {0, 0}), {ms(ab, {1, 1})})});
    SemilinearSet as(ab, {LinearSet(ms(ab, {0, 0}), {ms(ab, {1, 0})})});
    auto zero_only = sl_intersect(diag, as);
    for (const auto& mu : oracle::box_multisets(ab, 8))
        CHECK(sl_member(mu, zero_only) == mu.is_zero());

    // idempotence on the box
    auto self = sl_intersect(s1, s1);
    for (const auto& mu : oracle::box_multisets(ab, 8))
        CHECK(sl_member(mu, self) == sl_member(mu, s1));
}

TEST_CASE("image, sum and union") {
    Alphabet just_a({"a"});
    MonoidMorphism drop_b(ab, just_a, {ms(just_a, {1}), ms(just_a, {0})});
    SemilinearSet s(ab, {LinearSet(ms(ab, {1, 2}), {ms(ab, {1, 1})})});
    auto img = sl_image(drop_b, s);
    REQUIRE(img.components().size() == 1);
    CHECK(img.components()[0].base() == ms(just_a, {1}));
    CHECK(img.components()[0].periods() ==
          std::vector<Multiset>{ms(just_a, {1})});

    auto sum = sl_sum(SemilinearSet::singleton(ms(ab, {1, 0})),
                      SemilinearSet(ab, {LinearSet(ms(ab, {0, 0}),
                                                   {ms(ab, {0, 1})})}));
    REQUIRE(sum.components().size() == 1);
    CHECK(sum.components()[0].base() == ms(ab, {1, 0}));

    auto u = sl_union(SemilinearSet::empty(ab), s);
    CHECK(u.components() == s.components());
}

TEST_CASE("sl_preimage matches the pointwise definition") {
    Alphabet just_x({"x"});
    MonoidMorphism both_to_x(ab, just_x, {ms(just_x, {1}), ms(just_x, {1})});
    SemilinearSet two_x = SemilinearSet::singleton(ms(just_x, {2}));
    auto pre = sl_preimage(both_to_x, two_x);
    for (const auto& mu : oracle::box_multisets(ab, 5))
        CHECK(sl_member(mu, pre) == (mu.at(0) + mu.at(1) == 2));

    // identity morphism: preimage is the set itself
    SemilinearSet s(ab, {LinearSet(ms(ab, {1, 0}), {ms(ab, {1, 1})})});
    auto pre_id = sl_preimage(MonoidMorphism::identity(ab), s);
    for (const auto& mu : oracle::box_multisets(ab, 8))
        CHECK(sl_member(mu, pre_id) == sl_member(mu, s));

    // erasing morphism, target without zero -> empty
    Alphabet empty_dom = ab;
    MonoidMorphism erase(ab, just_x, {ms(just_x, {0}), ms(just_x, {0})});
    auto pre_erase = sl_preimage(erase, two_x);
    CHECK(pre_erase.has_no_components());
    // ... and with zero in the target, everything
    auto pre_all = sl_preimage(
        erase, SemilinearSet::singleton(Multiset(just_x)));
    for (const auto& mu : oracle::box_multisets(ab, 4))
        CHECK(sl_member(mu, pre_all));
}

TEST_CASE("sl_downward agrees with the box oracle") {
    auto check_downward = [&](const SemilinearSet& s, long long bound) {
        auto down = sl_downward(s);
        auto members = oracle::box_members(s, 3 * bound);
        for (const auto& mu : oracle::box_multisets(s.alphabet(), bound)) {
            bool expect = false;
            for (const auto& sigma : members) {
                bool le = true;
                for (size_t i = 0; i < sigma.size(); ++i)
                    if (mu.counts()[i] > sigma[i]) le = false;
                if (le) { expect = true; break; }
            }
            CHECK(down.member(mu) == expect);
        }
    };
    check_downward(SemilinearSet(ab, {LinearSet(ms(ab, {2, 1}),
                                                {ms(ab, {1, 1})})}), 8);
    check_downward(SemilinearSet(ab, {LinearSet(ms(ab, {2, 1}),
                                                {ms(ab, {1, 0})})}), 8);
    check_downward(SemilinearSet::singleton(Multiset(ab)), 4);

    // full plane: one diagonal period makes everything reachable downward
    auto full = sl_downward(
        SemilinearSet(ab, {LinearSet(ms(ab, {2, 1}), {ms(ab, {1, 1})})}));
    CHECK(full.is_full());
}

TEST_CASE("upward_complement_minimals") {
    // complement of {(a,b): a <= 1} has minimal element (2,0)
    DownwardClosedSet d1(ab, {BoxIdeal{ms(ab, {1, 0}), {false, true}}});
    CHECK(upward_complement_minimals(d1) ==
          std::vector<Multiset>{ms(ab, {2, 0})});

    // complement of everything is empty
    DownwardClosedSet all(ab, {BoxIdeal{ms(ab, {0, 0}), {true, true}}});
    CHECK(upward_complement_minimals(all).empty());

    // complement of {a<=1} u {b<=0} -> frozen from the box oracle: {(2,1)}
    DownwardClosedSet d2(ab, {BoxIdeal{ms(ab, {1, 0}), {false, true}},
                              BoxIdeal{ms(ab, {0, 0}), {true, false}}});
    auto mins = upward_complement_minimals(d2);
    CHECK(mins == std::vector<Multiset>{ms(ab, {2, 1})});
    // oracle check on the box: minimals are outside, everything outside
    // dominates a minimal
    for (const auto& mu : oracle::box_multisets(ab, 5)) {
        bool outside = !d2.member(mu);
        bool dominates = std::any_of(
            mins.begin(), mins.end(),
            [&](const Multiset& m) { return m.leq(mu); });
        CHECK(outside == dominates);
    }
}

TEST_CASE("morphism plumbing") {
    WordMorphism h(ab, abc, {word("ab"), word("c")});
    CHECK(h.apply(word("ab")) == word("abc"));
    CHECK(h.abelianization().apply(ms(ab, {1, 1})) == ms(abc, {1, 1, 1}));
    CHECK(h.is_non_erasing());
    WordMorphism pi = WordMorphism::projection(abc, ab);
    CHECK(pi.apply(word("acb")) == word("ab"));
    CHECK_FALSE(pi.is_non_erasing());
}

#include "doctest.h"

#include <set>

#include "oracles.hh"
#include "parikh/langexpr.hh"

using namespace parikh;
namespace oracle = parikh::testing;

namespace {

Word word(const std::string& s) {
    Word w;
    for (char c : s) w.push_back(std::string(1, c));
    return w;
}

Multiset ms(const Alphabet& a, std::vector<long long> v) {
    return Multiset(a, std::move(v));
}

std::set<Word> words_of(std::initializer_list<std::string> ss) {
    std::set<Word> out;
    for (const auto& s : ss) out.insert(word(s));
    return out;
}

// S -> eps | a S b
LangExpr anbn() {
    Alphabet n({"S"}), t({"a", "b"});
    LangExpr body = LangExpr::finite(Alphabet({"S", "a", "b"}),
                                     {word(""), word("aSb")});
    return LangExpr::grammar(n, t, "S", {{"S", {body}}});
}

// W -> eps | aW | bW | cW   (all words over {a,b,c})
LangExpr sigma_star_abc() {
    Alphabet n({"W"}), t({"a", "b", "c"});
    LangExpr body = LangExpr::finite(
        Alphabet({"W", "a", "b", "c"}),
        {word(""), word("aW"), word("bW"), word("cW")});
    return LangExpr::grammar(n, t, "W", {{"W", {body}}});
}

// equal numbers of a, b, c in {a,b,c}*, as an F1 expression
LangExpr mix_expr() {
    Alphabet t({"a", "b", "c"});
    SemilinearSet equal_counts(
        t, {LinearSet(Multiset(t), {ms(t, {1, 1, 1})})});
    return LangExpr::sli(sigma_star_abc(), equal_counts,
                         WordMorphism::identity(t));
}

}  // namespace

TEST_CASE("levels") {
    Alphabet ab({"a", "b"});
    LangExpr fin = LangExpr::finite(ab, {word("ab")});
    CHECK(level(fin) == HierarchyLevel{HierarchyLevel::Tier::F, 0});
    CHECK(level(anbn()) == HierarchyLevel{HierarchyLevel::Tier::G, 0});
    CHECK(level(mix_expr()) == HierarchyLevel{HierarchyLevel::Tier::F, 1});
    CHECK(to_string(level(mix_expr())) == "F1");
    // a grammar with an F1 body sits at G1
    Alphabet n({"T"});
    LangExpr g1 = LangExpr::grammar(
        n, Alphabet({"a", "b", "c"}), "T", {{"T", {mix_expr()}}});
    CHECK(level(g1) == HierarchyLevel{HierarchyLevel::Tier::G, 1});
}

TEST_CASE("enumerate") {
    auto en = enumerate_expr(anbn(), 4);
    CHECK(en.complete);
    CHECK(en.words == words_of({"", "ab", "aabb"}));

    auto fin = LangExpr::finite(Alphabet({"a"}), {word("a"), word("aaa")});
    CHECK(enumerate_expr(fin, 1).words == words_of({"a"}));

    auto mix = enumerate_expr(mix_expr(), 3);
    CHECK(mix.words ==
          words_of({"", "abc", "acb", "bac", "bca", "cab", "cba"}));
}

TEST_CASE("is_empty") {
    Alphabet ab({"a", "b"});
    CHECK(is_empty(LangExpr::empty(ab)));
    CHECK_FALSE(is_empty(anbn()));
    // unsatisfiable constraint: a-count both zero and one
    SemilinearSet unsat(ab, {});
    CHECK(is_empty(LangExpr::sli(anbn(), SemilinearSet::empty(ab),
                                 WordMorphism::identity(ab))));
}

TEST_CASE("reduce removes useless nonterminals") {
    Alphabet n({"S", "A"}), t({"a", "b"});
    Alphabet syms({"S", "A", "a", "b"});
    LangExpr g = LangExpr::grammar(
        n, t, "S",
        {{"S", {LangExpr::finite(syms, {word(""), word("aSb")})}},
         {"A", {LangExpr::finite(syms, {word("aA")})}}});
    LangExpr r = reduce(g);
    CHECK(r.nonterminals().size() == 1);
    CHECK(r.nonterminals().contains("S"));
    CHECK(enumerate_expr(r, 6).words == enumerate_expr(g, 6).words);

    // unproductive start
    LangExpr loop = LangExpr::grammar(
        Alphabet({"S"}), t, "S",
        {{"S", {LangExpr::finite(Alphabet({"S"}), {word("S")})}}});
    LangExpr rl = reduce(loop);
    CHECK(is_empty(rl));

    // all-productive grammar keeps its denotation
    LangExpr r2 = reduce(anbn());
    CHECK(enumerate_expr(r2, 6).words == enumerate_expr(anbn(), 6).words);
}

TEST_CASE("union_expr") {
    Alphabet ab({"a", "b"});
    LangExpr la = LangExpr::finite(Alphabet({"a"}), {word("a")});
    LangExpr lb = LangExpr::finite(Alphabet({"b"}), {word("b")});
    LangExpr u = union_expr(la, lb);
    CHECK(enumerate_expr(u, 3).words == words_of({"a", "b"}));

    LangExpr u2 = union_expr(anbn(), LangExpr::empty(ab));
    CHECK(enumerate_expr(u2, 4).words == words_of({"", "ab", "aabb"}));

    // {a^n b^n} u {b^n a^n}, enumerated
    Alphabet n2({"T"});
    LangExpr bnan = LangExpr::grammar(
        n2, ab, "T",
        {{"T", {LangExpr::finite(Alphabet({"T", "a", "b"}),
                                 {word(""), word("bTa")})}}});
    LangExpr u3 = union_expr(anbn(), bnan);
    CHECK(enumerate_expr(u3, 4).words ==
          words_of({"", "ab", "aabb", "ba", "bbaa"}));
    CHECK(level(u3).tier == HierarchyLevel::Tier::G);
    CHECK(level(u3).index == 0);

    // F-tier union stays on the F tier
    LangExpr fu = union_expr(mix_expr(), mix_expr());
    CHECK(level(fu).tier == HierarchyLevel::Tier::F);
    CHECK(level(fu).index == 1);
    CHECK(enumerate_expr(fu, 3).words == enumerate_expr(mix_expr(), 3).words);
}

TEST_CASE("apply_word_morphism") {
    Alphabet ab({"a", "b"});
    Alphabet xy({"x", "y"});
    WordMorphism h(ab, xy, {word("xy"), word("y")});
    LangExpr img = apply_word_morphism(h, anbn());
    CHECK(enumerate_expr(img, 6).words == words_of({"", "xyy", "xyxyyy"}));
}

TEST_CASE("apply_transduction on a grammar") {
    Alphabet ab({"a", "b"});

    SUBCASE("identity keeps the language") {
        LangExpr out = apply_transduction(anbn(), transducer_identity(ab));
        CHECK(enumerate_expr(out, 6).words ==
              words_of({"", "ab", "aabb", "aaabbb"}));
    }
    SUBCASE("erasing b yields a*") {
        WordMorphism erase_b(ab, Alphabet({"a"}), {word("a"), word("")});
        LangExpr out =
            apply_transduction(anbn(), transducer_morphism_graph(erase_b));
        CHECK(enumerate_expr(out, 3).words == words_of({"", "a", "aa", "aaa"}));
    }
    SUBCASE("prefixing c") {
        Alphabet abc({"a", "b", "c"});
        // transducer outputting c, then copying
        Transducer prefix(abc, ab, 2,
                          {{0, word("c"), {}, 1},
                           {1, word("a"), word("a"), 1},
                           {1, word("b"), word("b"), 1}},
                          0, {1});
        LangExpr out = apply_transduction(anbn(), prefix);
        CHECK(enumerate_expr(out, 5).words == words_of({"c", "cab", "caabb"}));
    }
}

TEST_CASE("apply_transduction on an sli") {
    Alphabet abc({"a", "b", "c"});
    WordMorphism erase_c(abc, Alphabet({"a", "b"}),
                         {word("a"), word("b"), word("")});
    LangExpr out =
        apply_transduction(mix_expr(), transducer_morphism_graph(erase_c));
    CHECK(level(out).tier == HierarchyLevel::Tier::F);
    // image: words with equal a- and b-counts whose count also matched some
    // c-count -- i.e. all balanced ab-words
    auto en = enumerate_expr(out, 4);
    std::set<Word> expect;
    Alphabet ab({"a", "b"});
    for (const auto& w : oracle::all_words(ab, 4)) {
        auto p = parikh_of(w, ab);
        if (p.at(0) == p.at(1)) expect.insert(w);
    }
    CHECK(en.words == expect);
}

TEST_CASE("intersect_regular") {
    Alphabet ab({"a", "b"});
    LangExpr e = anbn();
    CHECK(enumerate_expr(intersect_regular(e, nfa_universal(ab)), 6).words ==
          enumerate_expr(e, 6).words);
    // a*b*b : nonempty b-block
    Nfa bplus = reg_concat(
        reg_concat(reg_star(nfa_word(word("a"), ab)),
                   reg_star(nfa_word(word("b"), ab))),
        nfa_word(word("b"), ab));
    auto got = enumerate_expr(intersect_regular(e, bplus), 6).words;
    CHECK(got == words_of({"ab", "aabb", "aaabbb"}));
    CHECK(enumerate_expr(intersect_regular(e, nfa_empty(ab)), 6).words.empty());
}

TEST_CASE("parikh_image") {
    Alphabet ab({"a", "b"});
    SUBCASE("a^n b^n is the diagonal") {
        auto s = parikh_image(anbn());
        auto en = enumerate_expr(anbn(), 10);
        for (const auto& w : en.words)
            CHECK(sl_member(parikh_of(w, ab), s));
        for (const auto& mu : oracle::box_multisets(ab, 5))
            CHECK(sl_member(mu, s) == (mu.at(0) == mu.at(1)));
    }
    SUBCASE("finite") {
        Alphabet abc({"a", "b", "c"});
        auto s = parikh_image(
            LangExpr::finite(abc, {word("ab"), word("c")}));
        CHECK(s.components().size() == 2);
        CHECK(sl_member(ms(abc, {1, 1, 0}), s));
        CHECK(sl_member(ms(abc, {0, 0, 1}), s));
        CHECK_FALSE(sl_member(ms(abc, {1, 1, 1}), s));
    }
    SUBCASE("sli with erasing morphism") {
        Alphabet ab2({"a", "b"});
        Alphabet just_a({"a"});
        // words over {a,b} with equal counts, then b erased
        Alphabet n({"W"});
        LangExpr star = LangExpr::grammar(
            n, ab2, "W",
            {{"W", {LangExpr::finite(Alphabet({"W", "a", "b"}),
                                     {word(""), word("aW"), word("bW")})}}});
        SemilinearSet diag(ab2,
                           {LinearSet(Multiset(ab2), {ms(ab2, {1, 1})})});
        WordMorphism erase_b(ab2, just_a, {word("a"), word("")});
        auto s = parikh_image(LangExpr::sli(star, diag, erase_b));
        for (const auto& mu : oracle::box_multisets(just_a, 8))
            CHECK(sl_member(mu, s));
    }
    SUBCASE("grammar with two nonterminals") {
        // S -> A A, A -> a | b : all two-letter words
        Alphabet n({"S", "A"}), t({"a", "b"});
        LangExpr g = LangExpr::grammar(
            n, t, "S",
            {{"S", {LangExpr::finite(Alphabet({"A"}), {word("AA")})}},
             {"A", {LangExpr::finite(t, {word("a"), word("b")})}}});
        auto s = parikh_image(g);
        for (const auto& mu : oracle::box_multisets(t, 3))
            CHECK(sl_member(mu, s) == (mu.at(0) + mu.at(1) == 2));
    }
}

TEST_CASE("semilinear_to_regular") {
    Alphabet ab({"a", "b"});
    auto one_one = SemilinearSet::singleton(ms(ab, {1, 1}));
    Nfa n = semilinear_to_regular(one_one);
    CHECK(accepts(n, word("ab")));
    CHECK_FALSE(accepts(n, word("ba")));  // fixed spelling order

    SemilinearSet diag(ab, {LinearSet(Multiset(ab), {ms(ab, {1, 1})})});
    Nfa d = semilinear_to_regular(diag);
    CHECK(accepts(d, word("")));
    CHECK(accepts(d, word("abab")));

    // round trip: parikh_regular inverts semilinear_to_regular on a box
    SemilinearSet s(ab, {LinearSet(ms(ab, {1, 0}),
                                   {ms(ab, {0, 2}), ms(ab, {1, 1})})});
    auto back = parikh_regular(semilinear_to_regular(s));
    for (const auto& mu : oracle::box_multisets(ab, 8))
        CHECK(sl_member(mu, back) == sl_member(mu, s));
}

TEST_CASE("transduction soundness against the relational oracle") {
    Alphabet ab({"a", "b"});
    // swap a and b
    WordMorphism swap(ab, ab, {word("b"), word("a")});
    Transducer t = transducer_morphism_graph(swap);
    LangExpr e = anbn();
    auto out = enumerate_expr(apply_transduction(e, t), 5).words;
    std::set<Word> expect;
    for (const auto& w : enumerate_expr(e, 5).words) {
        Word img = swap.apply(w);
        if (img.size() <= 5) expect.insert(img);
    }
    CHECK(out == expect);
}

TEST_CASE("derivation trees") {
    DerivationTree t{"S",
                     {{"a", {}}, {"S", {{"", {}}}}, {"b", {}}}};
    CHECK(t.yield() == word("ab"));
    CHECK(derivation_tree_valid(t, anbn(), 4));
    DerivationTree bad{"S", {{"b", {}}, {"a", {}}}};
    CHECK_FALSE(derivation_tree_valid(bad, anbn(), 4));
}

// oracles.hh -- independent brute-force oracles used by the test suites.
// Everything here enumerates; nothing shares code with the solver or
// automata paths it is used to check.

#ifndef PARIKH_TESTS_ORACLES_HH_
#define PARIKH_TESTS_ORACLES_HH_

#include <set>
#include <vector>

#include "parikh/multiset.hh"

namespace parikh::testing {

/// All multisets over `a` with every coordinate <= bound.
std::vector<Multiset> box_multisets(const Alphabet& a, long long bound);

/// Members of `s` inside the box, generated forward from the bases by
/// repeatedly adding periods (never via sl_member).
std::set<std::vector<long long>> box_members(const SemilinearSet& s,
                                             long long bound);

/// All solutions of A x = b with every coordinate <= bound.
std::vector<std::vector<long long>>
brute_solutions(const std::vector<std::vector<long long>>& rows,
                const std::vector<long long>& rhs, size_t unknowns,
                long long bound);

/// The <=-minimal elements of a set of vectors.
std::vector<std::vector<long long>>
minimal_vectors(std::vector<std::vector<long long>> vs);

/// All words over `a` of length <= maxlen, in length-lexicographic order.
std::vector<Word> all_words(const Alphabet& a, size_t maxlen);

/// Scattered-subword test: u embeds into v.
bool is_subword(const Word& u, const Word& v);

/// All scattered subwords of members of `ws`, filtered to length <= maxlen.
std::set<Word> subword_closure(const std::set<Word>& ws, size_t maxlen);

/// All interleavings of u and v.
std::set<Word> shuffle_words(const Word& u, const Word& v);

}  // namespace parikh::testing

#endif  // PARIKH_TESTS_ORACLES_HH_

// multiset.hh -- alphabets, multisets (Parikh vectors), morphisms and
// semilinear sets, together with the Diophantine machinery (Hilbert bases)
// the rest of the library is built on.

#ifndef PARIKH_MULTISET_HH_
#define PARIKH_MULTISET_HH_

#include <map>
#include <memory>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace parikh {

using Symbol = std::string;
using Word = std::vector<Symbol>;

/// Raised on malformed inputs (unknown symbols, alphabet mismatches, ...).
class input_error : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Raised when an internal desk-scale limit is exceeded.
class limit_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// An ordered finite set of distinct symbols. The order is fixed at
/// construction and used for vector indexing and deterministic output.
class Alphabet {
public:
    Alphabet();
    explicit Alphabet(std::vector<Symbol> symbols);

    size_t size() const { return data_->symbols.size(); }
    const Symbol& symbol(size_t i) const { return data_->symbols.at(i); }
    const std::vector<Symbol>& symbols() const { return data_->symbols; }

    std::optional<size_t> index_of(const Symbol& s) const;
    bool contains(const Symbol& s) const { return index_of(s).has_value(); }
    bool contains_all(const Alphabet& other) const;
    bool disjoint_with(const Alphabet& other) const;

    bool operator==(const Alphabet& other) const;
    bool operator!=(const Alphabet& other) const { return !(*this == other); }

    /// Union, keeping this alphabet's order and appending new symbols of
    /// `other` in their order.
    Alphabet merged_with(const Alphabet& other) const;
    /// Subset restriction, keeping order.
    Alphabet restricted_to(const std::set<Symbol>& keep) const;

private:
    struct Data {
        std::vector<Symbol> symbols;
        std::map<Symbol, size_t> index;
    };
    std::shared_ptr<const Data> data_;
};

/// A multiset over an alphabet: a map symbol -> nonnegative count, stored
/// densely in alphabet order.
class Multiset {
public:
    explicit Multiset(Alphabet alphabet);
    Multiset(Alphabet alphabet, const std::map<Symbol, long long>& counts);
    Multiset(Alphabet alphabet, std::vector<long long> counts);

    const Alphabet& alphabet() const { return alphabet_; }
    const std::vector<long long>& counts() const { return counts_; }
    long long at(size_t i) const { return counts_.at(i); }
    long long of(const Symbol& s) const;

    bool is_zero() const;
    long long total() const;

    Multiset plus(const Multiset& other) const;
    Multiset scaled(long long k) const;
    /// Pointwise difference; nullopt if any coordinate would go negative.
    std::optional<Multiset> minus(const Multiset& other) const;
    bool leq(const Multiset& other) const;

    /// Same counts re-indexed over an extended alphabet.
    Multiset embedded_into(const Alphabet& bigger) const;
    /// Drop coordinates outside `smaller` (they need not be zero).
    Multiset projected_to(const Alphabet& smaller) const;

    bool operator==(const Multiset& other) const;
    bool operator!=(const Multiset& other) const { return !(*this == other); }
    bool operator<(const Multiset& other) const;  // lexicographic, for sets

private:
    Alphabet alphabet_;
    std::vector<long long> counts_;
};

/// Parikh map: w |-> (|w|_x)_x.  Unknown symbols are an input error.
Multiset parikh_of(const Word& w, const Alphabet& alphabet);

/// A monoid morphism X^+ -> Y^+ given by the images of the generators.
class MonoidMorphism {
public:
    MonoidMorphism(Alphabet domain, Alphabet codomain,
                   std::vector<Multiset> images);
    static MonoidMorphism identity(const Alphabet& a);

    const Alphabet& domain() const { return domain_; }
    const Alphabet& codomain() const { return codomain_; }
    const Multiset& image(size_t i) const { return images_.at(i); }

    Multiset apply(const Multiset& m) const;
    /// this o other (apply other first).
    MonoidMorphism compose_after(const MonoidMorphism& other) const;

private:
    Alphabet domain_;
    Alphabet codomain_;
    std::vector<Multiset> images_;
};

/// A word morphism X* -> Y* given by the images of the letters.
class WordMorphism {
public:
    WordMorphism(Alphabet domain, Alphabet codomain, std::vector<Word> images);
    static WordMorphism identity(const Alphabet& a);
    /// Projection onto a subalphabet (other letters erased).
    static WordMorphism projection(const Alphabet& domain, const Alphabet& onto);

    const Alphabet& domain() const { return domain_; }
    const Alphabet& codomain() const { return codomain_; }
    const Word& image(size_t i) const { return images_.at(i); }
    const Word& image_of(const Symbol& s) const;

    Word apply(const Word& w) const;
    MonoidMorphism abelianization() const;
    bool is_non_erasing() const;

    WordMorphism compose_after(const WordMorphism& other) const;

private:
    Alphabet domain_;
    Alphabet codomain_;
    std::vector<Word> images_;
};

/// A linear set base + periods^+.  Periods are deduplicated and zero
/// periods dropped at construction.
class LinearSet {
public:
    explicit LinearSet(Multiset base, std::vector<Multiset> periods = {});

    const Alphabet& alphabet() const { return base_.alphabet(); }
    const Multiset& base() const { return base_; }
    const std::vector<Multiset>& periods() const { return periods_; }

    bool operator==(const LinearSet& other) const;

private:
    Multiset base_;
    std::vector<Multiset> periods_;
};

/// A finite union of linear sets over one alphabet; an empty component list
/// denotes the empty set.
class SemilinearSet {
public:
    explicit SemilinearSet(Alphabet alphabet,
                           std::vector<LinearSet> components = {});
    static SemilinearSet empty(const Alphabet& a) { return SemilinearSet(a); }
    /// All of N^X (base 0, unit periods).
    static SemilinearSet full(const Alphabet& a);
    static SemilinearSet singleton(const Multiset& m);

    const Alphabet& alphabet() const { return alphabet_; }
    const std::vector<LinearSet>& components() const { return components_; }
    bool has_no_components() const { return components_.empty(); }

private:
    Alphabet alphabet_;
    std::vector<LinearSet> components_;
};

// ---------------------------------------------------------------------------
// Diophantine solver layer.
//
// Systems are given as integer coefficient matrices; unknowns range over the
// naturals.  Solver internals use arbitrary-precision integers.

/// Hilbert basis of A x = 0: the finite set of <=-minimal nonzero solutions.
/// An empty system yields the unit vectors.
std::vector<std::vector<long long>>
hilbert_basis(const std::vector<std::vector<long long>>& rows, size_t unknowns);

/// <=-minimal solutions of A x = b over the naturals (empty if infeasible).
/// The full solution set is min_solutions + hilbert_basis(A)^+.
std::vector<std::vector<long long>>
min_solutions(const std::vector<std::vector<long long>>& rows,
              const std::vector<long long>& rhs, size_t unknowns);

// ---------------------------------------------------------------------------
// Semilinear algebra.

/// Decides mu in S by bounded coefficient search per component.
bool sl_member(const Multiset& mu, const SemilinearSet& s);

SemilinearSet sl_union(const SemilinearSet& a, const SemilinearSet& b);
SemilinearSet sl_sum(const SemilinearSet& a, const SemilinearSet& b);
SemilinearSet sl_image(const MonoidMorphism& f, const SemilinearSet& s);
SemilinearSet sl_intersect(const SemilinearSet& a, const SemilinearSet& b);
/// { mu : f(mu) in t }, computed per component via min_solutions.
SemilinearSet sl_preimage(const MonoidMorphism& f, const SemilinearSet& t);

/// A box ideal: all multisets bounded by `bound` on the non-`unbounded`
/// coordinates and unconstrained elsewhere.  `bound` is zero on unbounded
/// coordinates.  Equivalently the downward closure of the linear set
/// bound + {unit vectors of unbounded coordinates}^+.
struct BoxIdeal {
    Multiset bound;
    std::vector<bool> unbounded;  // aligned with the alphabet

    bool contains(const Multiset& m) const;
    bool subsumes(const BoxIdeal& other) const;  // other subset of this
};

/// A downward-closed set of multisets as a finite union of box ideals.
class DownwardClosedSet {
public:
    explicit DownwardClosedSet(Alphabet alphabet,
                               std::vector<BoxIdeal> ideals = {});

    const Alphabet& alphabet() const { return alphabet_; }
    const std::vector<BoxIdeal>& ideals() const { return ideals_; }
    bool member(const Multiset& m) const;
    bool is_full() const;

    /// The ideals as ordinary linear sets (each denoting its own downward
    /// closure); used for serialization.
    SemilinearSet as_semilinear() const;

private:
    Alphabet alphabet_;
    std::vector<BoxIdeal> ideals_;  // subsumed ideals removed
};

/// Downward closure of a semilinear set in box-ideal form.
DownwardClosedSet sl_downward(const SemilinearSet& s);

/// The <=-minimal elements of the complement of a downward-closed set.
std::vector<Multiset> upward_complement_minimals(const DownwardClosedSet& d);

}  // namespace parikh

#endif  // PARIKH_MULTISET_HH_

#include "parikh/multiset.hh"

#include <algorithm>
#include <limits>

namespace parikh {

namespace {

long long checked_add(long long a, long long b) {
    if (a > std::numeric_limits<long long>::max() - b)
        throw limit_error("multiset count overflow");
    return a + b;
}

long long checked_mul(long long a, long long b) {
    if (a != 0 && b > std::numeric_limits<long long>::max() / a)
        throw limit_error("multiset count overflow");
    return a * b;
}

}  // namespace

// --------------------------------------------------------------- Alphabet

Alphabet::Alphabet() : data_(std::make_shared<Data>()) {}

Alphabet::Alphabet(std::vector<Symbol> symbols) {
    auto data = std::make_shared<Data>();
    data->symbols = std::move(symbols);
    for (size_t i = 0; i < data->symbols.size(); ++i) {
        if (data->symbols[i].empty())
            throw input_error("alphabet symbol must be nonempty");
        if (!data->index.emplace(data->symbols[i], i).second)
            throw input_error("duplicate alphabet symbol: " + data->symbols[i]);
    }
    data_ = std::move(data);
}

std::optional<size_t> Alphabet::index_of(const Symbol& s) const {
    auto it = data_->index.find(s);
    if (it == data_->index.end()) return std::nullopt;
    return it->second;
}

bool Alphabet::contains_all(const Alphabet& other) const {
    for (const auto& s : other.symbols())
        if (!contains(s)) return false;
    return true;
}

bool Alphabet::disjoint_with(const Alphabet& other) const {
    const Alphabet& small = size() <= other.size() ? *this : other;
    const Alphabet& big = size() <= other.size() ? other : *this;
    for (const auto& s : small.symbols())
        if (big.contains(s)) return false;
    return true;
}

bool Alphabet::operator==(const Alphabet& other) const {
    return data_ == other.data_ || data_->symbols == other.data_->symbols;
}

Alphabet Alphabet::merged_with(const Alphabet& other) const {
    if (*this == other) return *this;
    std::vector<Symbol> merged = symbols();
    for (const auto& s : other.symbols())
        if (!contains(s)) merged.push_back(s);
    return Alphabet(std::move(merged));
}

Alphabet Alphabet::restricted_to(const std::set<Symbol>& keep) const {
    std::vector<Symbol> kept;
    for (const auto& s : symbols())
        if (keep.count(s)) kept.push_back(s);
    return Alphabet(std::move(kept));
}

// --------------------------------------------------------------- Multiset

Multiset::Multiset(Alphabet alphabet)
    : alphabet_(std::move(alphabet)), counts_(alphabet_.size(), 0) {}

Multiset::Multiset(Alphabet alphabet, const std::map<Symbol, long long>& counts)
    : alphabet_(std::move(alphabet)), counts_(alphabet_.size(), 0) {
    for (const auto& [sym, n] : counts) {
        auto i = alphabet_.index_of(sym);
        if (!i) throw input_error("multiset symbol not in alphabet: " + sym);
        if (n < 0) throw input_error("negative multiset count for " + sym);
        counts_[*i] = n;
    }
}

Multiset::Multiset(Alphabet alphabet, std::vector<long long> counts)
    : alphabet_(std::move(alphabet)), counts_(std::move(counts)) {
    if (counts_.size() != alphabet_.size())
        throw input_error("multiset count vector has wrong dimension");
    for (long long n : counts_)
        if (n < 0) throw input_error("negative multiset count");
}

long long Multiset::of(const Symbol& s) const {
    auto i = alphabet_.index_of(s);
    if (!i) throw input_error("multiset symbol not in alphabet: " + s);
    return counts_[*i];
}

bool Multiset::is_zero() const {
    return std::all_of(counts_.begin(), counts_.end(),
                       [](long long n) { return n == 0; });
}

long long Multiset::total() const {
    long long t = 0;
    for (long long n : counts_) t = checked_add(t, n);
    return t;
}

Multiset Multiset::plus(const Multiset& other) const {
    if (alphabet_ != other.alphabet_)
        throw input_error("multiset alphabet mismatch in plus");
    std::vector<long long> out(counts_.size());
    for (size_t i = 0; i < counts_.size(); ++i)
        out[i] = checked_add(counts_[i], other.counts_[i]);
    return Multiset(alphabet_, std::move(out));
}

Multiset Multiset::scaled(long long k) const {
    if (k < 0) throw input_error("negative multiset scale");
    std::vector<long long> out(counts_.size());
    for (size_t i = 0; i < counts_.size(); ++i)
        out[i] = checked_mul(k, counts_[i]);
    return Multiset(alphabet_, std::move(out));
}

std::optional<Multiset> Multiset::minus(const Multiset& other) const {
    if (alphabet_ != other.alphabet_)
        throw input_error("multiset alphabet mismatch in minus");
    std::vector<long long> out(counts_.size());
    for (size_t i = 0; i < counts_.size(); ++i) {
        if (counts_[i] < other.counts_[i]) return std::nullopt;
        out[i] = counts_[i] - other.counts_[i];
    }
    return Multiset(alphabet_, std::move(out));
}

bool Multiset::leq(const Multiset& other) const {
    if (alphabet_ != other.alphabet_)
        throw input_error("multiset alphabet mismatch in leq");
    for (size_t i = 0; i < counts_.size(); ++i)
        if (counts_[i] > other.counts_[i]) return false;
    return true;
}

Multiset Multiset::embedded_into(const Alphabet& bigger) const {
    if (bigger == alphabet_) return *this;
    std::vector<long long> out(bigger.size(), 0);
    for (size_t i = 0; i < counts_.size(); ++i) {
        if (counts_[i] == 0) continue;
        auto j = bigger.index_of(alphabet_.symbol(i));
        if (!j) throw input_error("embedding alphabet misses symbol " +
                                  alphabet_.symbol(i));
        out[*j] = counts_[i];
    }
    return Multiset(bigger, std::move(out));
}

Multiset Multiset::projected_to(const Alphabet& smaller) const {
    std::vector<long long> out(smaller.size(), 0);
    for (size_t j = 0; j < smaller.size(); ++j) {
        auto i = alphabet_.index_of(smaller.symbol(j));
        if (i) out[j] = counts_[*i];
    }
    return Multiset(smaller, std::move(out));
}

bool Multiset::operator==(const Multiset& other) const {
    return alphabet_ == other.alphabet_ && counts_ == other.counts_;
}

bool Multiset::operator<(const Multiset& other) const {
    if (!(alphabet_ == other.alphabet_))
        throw input_error("multiset alphabet mismatch in compare");
    return counts_ < other.counts_;
}

Multiset parikh_of(const Word& w, const Alphabet& alphabet) {
    std::vector<long long> counts(alphabet.size(), 0);
    for (const auto& s : w) {
        auto i = alphabet.index_of(s);
        if (!i) throw input_error("word symbol not in alphabet: " + s);
        ++counts[*i];
    }
    return Multiset(alphabet, std::move(counts));
}

// -------------------------------------------------------------- Morphisms

MonoidMorphism::MonoidMorphism(Alphabet domain, Alphabet codomain,
                               std::vector<Multiset> images)
    : domain_(std::move(domain)), codomain_(std::move(codomain)),
      images_(std::move(images)) {
    if (images_.size() != domain_.size())
        throw input_error("monoid morphism must be total on its domain");
    for (const auto& m : images_)
        if (m.alphabet() != codomain_)
            throw input_error("monoid morphism image over wrong alphabet");
}

MonoidMorphism MonoidMorphism::identity(const Alphabet& a) {
    std::vector<Multiset> images;
    for (size_t i = 0; i < a.size(); ++i) {
        std::vector<long long> v(a.size(), 0);
        v[i] = 1;
        images.emplace_back(a, std::move(v));
    }
    return MonoidMorphism(a, a, std::move(images));
}

Multiset MonoidMorphism::apply(const Multiset& m) const {
    if (m.alphabet() != domain_)
        throw input_error("monoid morphism applied outside its domain");
    Multiset out{codomain_};
    for (size_t i = 0; i < domain_.size(); ++i)
        if (m.at(i) != 0) out = out.plus(images_[i].scaled(m.at(i)));
    return out;
}

MonoidMorphism MonoidMorphism::compose_after(const MonoidMorphism& other) const {
    if (other.codomain_ != domain_)
        throw input_error("monoid morphism composition mismatch");
    std::vector<Multiset> images;
    images.reserve(other.domain_.size());
    for (size_t i = 0; i < other.domain_.size(); ++i)
        images.push_back(apply(other.images_[i]));
    return MonoidMorphism(other.domain_, codomain_, std::move(images));
}

WordMorphism::WordMorphism(Alphabet domain, Alphabet codomain,
                           std::vector<Word> images)
    : domain_(std::move(domain)), codomain_(std::move(codomain)),
      images_(std::move(images)) {
    if (images_.size() != domain_.size())
        throw input_error("word morphism must be total on its domain");
    for (const auto& w : images_)
        for (const auto& s : w)
            if (!codomain_.contains(s))
                throw input_error("word morphism image symbol not in codomain: " + s);
}

WordMorphism WordMorphism::identity(const Alphabet& a) {
    std::vector<Word> images;
    for (const auto& s : a.symbols()) images.push_back({s});
    return WordMorphism(a, a, std::move(images));
}

WordMorphism WordMorphism::projection(const Alphabet& domain,
                                      const Alphabet& onto) {
    std::vector<Word> images;
    for (const auto& s : domain.symbols()) {
        if (onto.contains(s)) images.push_back({s});
        else images.push_back({});
    }
    return WordMorphism(domain, onto, std::move(images));
}

const Word& WordMorphism::image_of(const Symbol& s) const {
    auto i = domain_.index_of(s);
    if (!i) throw input_error("word morphism applied to unknown symbol " + s);
    return images_[*i];
}

Word WordMorphism::apply(const Word& w) const {
    Word out;
    for (const auto& s : w) {
        const Word& img = image_of(s);
        out.insert(out.end(), img.begin(), img.end());
    }
    return out;
}

MonoidMorphism WordMorphism::abelianization() const {
    std::vector<Multiset> images;
    images.reserve(images_.size());
    for (const auto& w : images_) images.push_back(parikh_of(w, codomain_));
    return MonoidMorphism(domain_, codomain_, std::move(images));
}

bool WordMorphism::is_non_erasing() const {
    return std::all_of(images_.begin(), images_.end(),
                       [](const Word& w) { return !w.empty(); });
}

WordMorphism WordMorphism::compose_after(const WordMorphism& other) const {
    if (other.codomain_ != domain_)
        throw input_error("word morphism composition mismatch");
    std::vector<Word> images;
    images.reserve(other.domain_.size());
    for (size_t i = 0; i < other.domain_.size(); ++i)
        images.push_back(apply(other.images_[i]));
    return WordMorphism(other.domain_, codomain_, std::move(images));
}

// ------------------------------------------------------- (Semi)linear sets

LinearSet::LinearSet(Multiset base, std::vector<Multiset> periods)
    : base_(std::move(base)) {
    for (auto& p : periods) {
        if (p.alphabet() != base_.alphabet())
            throw input_error("linear set period over wrong alphabet");
        if (p.is_zero()) continue;
        if (std::find(periods_.begin(), periods_.end(), p) == periods_.end())
            periods_.push_back(std::move(p));
    }
}

bool LinearSet::operator==(const LinearSet& other) const {
    return base_ == other.base_ && periods_ == other.periods_;
}

SemilinearSet::SemilinearSet(Alphabet alphabet, std::vector<LinearSet> components)
    : alphabet_(std::move(alphabet)), components_(std::move(components)) {
    for (const auto& c : components_)
        if (c.alphabet() != alphabet_)
            throw input_error("semilinear component over wrong alphabet");
}

SemilinearSet SemilinearSet::full(const Alphabet& a) {
    std::vector<Multiset> units;
    for (size_t i = 0; i < a.size(); ++i) {
        std::vector<long long> v(a.size(), 0);
        v[i] = 1;
        units.emplace_back(a, std::move(v));
    }
    return SemilinearSet(a, {LinearSet(Multiset(a), std::move(units))});
}

SemilinearSet SemilinearSet::singleton(const Multiset& m) {
    return SemilinearSet(m.alphabet(), {LinearSet(m)});
}

// ------------------------------------------------------------- Membership

namespace {

// DFS over period coefficients; periods are nonzero, so each coefficient is
// bounded by the residual.
bool residual_reachable(const Multiset& residual,
                        const std::vector<Multiset>& periods, size_t from) {
    if (residual.is_zero()) return true;
    if (from >= periods.size()) return false;
    const Multiset& p = periods[from];
    Multiset r = residual;
    while (true) {
        if (residual_reachable(r, periods, from + 1)) return true;
        auto next = r.minus(p);
        if (!next) return false;
        r = *next;
    }
}

}  // namespace

bool sl_member(const Multiset& mu, const SemilinearSet& s) {
    if (mu.alphabet() != s.alphabet())
        throw input_error("sl_member alphabet mismatch");
    for (const auto& comp : s.components()) {
        auto residual = mu.minus(comp.base());
        if (!residual) continue;
        if (residual_reachable(*residual, comp.periods(), 0)) return true;
    }
    return false;
}

// ------------------------------------------------------------ Basic algebra

SemilinearSet sl_union(const SemilinearSet& a, const SemilinearSet& b) {
    if (a.alphabet() != b.alphabet())
        throw input_error("sl_union alphabet mismatch");
    std::vector<LinearSet> comps = a.components();
    for (const auto& c : b.components())
        if (std::find(comps.begin(), comps.end(), c) == comps.end())
            comps.push_back(c);
    return SemilinearSet(a.alphabet(), std::move(comps));
}

SemilinearSet sl_sum(const SemilinearSet& a, const SemilinearSet& b) {
    if (a.alphabet() != b.alphabet())
        throw input_error("sl_sum alphabet mismatch");
    std::vector<LinearSet> comps;
    for (const auto& ca : a.components()) {
        for (const auto& cb : b.components()) {
            std::vector<Multiset> periods = ca.periods();
            periods.insert(periods.end(), cb.periods().begin(),
                           cb.periods().end());
            comps.emplace_back(ca.base().plus(cb.base()), std::move(periods));
        }
    }
    return SemilinearSet(a.alphabet(), std::move(comps));
}

SemilinearSet sl_image(const MonoidMorphism& f, const SemilinearSet& s) {
    if (f.domain() != s.alphabet())
        throw input_error("sl_image alphabet mismatch");
    std::vector<LinearSet> comps;
    for (const auto& c : s.components()) {
        std::vector<Multiset> periods;
        for (const auto& p : c.periods()) periods.push_back(f.apply(p));
        comps.emplace_back(f.apply(c.base()), std::move(periods));
    }
    return SemilinearSet(f.codomain(), std::move(comps));
}

// ------------------------------------------------- Solver-backed operations

namespace {

Multiset combine(const Multiset& base, const std::vector<Multiset>& gens,
                 const std::vector<long long>& coeffs, size_t offset) {
    Multiset out = base;
    for (size_t i = 0; i < gens.size(); ++i)
        if (coeffs[offset + i] != 0)
            out = out.plus(gens[i].scaled(coeffs[offset + i]));
    return out;
}

void append_component_if_new(std::vector<LinearSet>& comps, LinearSet c) {
    if (std::find(comps.begin(), comps.end(), c) == comps.end())
        comps.push_back(std::move(c));
}

}  // namespace

SemilinearSet sl_intersect(const SemilinearSet& a, const SemilinearSet& b) {
    if (a.alphabet() != b.alphabet())
        throw input_error("sl_intersect alphabet mismatch");
    const Alphabet& x = a.alphabet();
    std::vector<LinearSet> comps;
    for (const auto& ca : a.components()) {
        for (const auto& cb : b.components()) {
            // Solve base_a + Fa . u = base_b + Fb . v over the naturals.
            size_t na = ca.periods().size(), nb = cb.periods().size();
            std::vector<std::vector<long long>> rows;
            std::vector<long long> rhs;
            for (size_t i = 0; i < x.size(); ++i) {
                std::vector<long long> row(na + nb, 0);
                for (size_t j = 0; j < na; ++j) row[j] = ca.periods()[j].at(i);
                for (size_t k = 0; k < nb; ++k)
                    row[na + k] = -cb.periods()[k].at(i);
                rows.push_back(std::move(row));
                rhs.push_back(cb.base().at(i) - ca.base().at(i));
            }
            auto mins = min_solutions(rows, rhs, na + nb);
            if (mins.empty()) continue;
            auto homog = hilbert_basis(rows, na + nb);
            std::vector<Multiset> periods;
            for (const auto& h : homog)
                periods.push_back(combine(Multiset(x), ca.periods(), h, 0));
            for (const auto& m : mins)
                append_component_if_new(
                    comps, LinearSet(combine(ca.base(), ca.periods(), m, 0),
                                     periods));
        }
    }
    return SemilinearSet(x, std::move(comps));
}

SemilinearSet sl_preimage(const MonoidMorphism& f, const SemilinearSet& t) {
    if (f.codomain() != t.alphabet())
        throw input_error("sl_preimage alphabet mismatch");
    const Alphabet& x = f.domain();
    const Alphabet& y = t.alphabet();
    std::vector<Multiset> units;
    for (size_t i = 0; i < x.size(); ++i) {
        std::vector<long long> v(x.size(), 0);
        v[i] = 1;
        units.emplace_back(x, std::move(v));
    }
    std::vector<LinearSet> comps;
    for (const auto& c : t.components()) {
        // Solve f(mu) = base + F . v in unknowns (mu, v).
        size_t nx = x.size(), np = c.periods().size();
        std::vector<std::vector<long long>> rows;
        std::vector<long long> rhs;
        for (size_t i = 0; i < y.size(); ++i) {
            std::vector<long long> row(nx + np, 0);
            for (size_t j = 0; j < nx; ++j) row[j] = f.image(j).at(i);
            for (size_t k = 0; k < np; ++k) row[nx + k] = -c.periods()[k].at(i);
            rows.push_back(std::move(row));
            rhs.push_back(c.base().at(i));
        }
        auto mins = min_solutions(rows, rhs, nx + np);
        if (mins.empty()) continue;
        auto homog = hilbert_basis(rows, nx + np);
        std::vector<Multiset> periods;
        for (const auto& h : homog)
            periods.push_back(combine(Multiset(x), units, h, 0));
        for (const auto& m : mins)
            append_component_if_new(
                comps, LinearSet(combine(Multiset(x), units, m, 0), periods));
    }
    return SemilinearSet(x, std::move(comps));
}

// --------------------------------------------------------- Downward closure

bool BoxIdeal::contains(const Multiset& m) const {
    for (size_t i = 0; i < unbounded.size(); ++i)
        if (!unbounded[i] && m.at(i) > bound.at(i)) return false;
    return true;
}

bool BoxIdeal::subsumes(const BoxIdeal& other) const {
    for (size_t i = 0; i < unbounded.size(); ++i) {
        if (unbounded[i]) continue;
        if (other.unbounded[i] || other.bound.at(i) > bound.at(i)) return false;
    }
    return true;
}

DownwardClosedSet::DownwardClosedSet(Alphabet alphabet,
                                     std::vector<BoxIdeal> ideals)
    : alphabet_(std::move(alphabet)) {
    for (auto& id : ideals) {
        if (id.bound.alphabet() != alphabet_ ||
            id.unbounded.size() != alphabet_.size())
            throw input_error("box ideal over wrong alphabet");
        bool subsumed = std::any_of(
            ideals_.begin(), ideals_.end(),
            [&](const BoxIdeal& have) { return have.subsumes(id); });
        if (subsumed) continue;
        std::erase_if(ideals_,
                      [&](const BoxIdeal& have) { return id.subsumes(have); });
        ideals_.push_back(std::move(id));
    }
}

bool DownwardClosedSet::member(const Multiset& m) const {
    if (m.alphabet() != alphabet_)
        throw input_error("downward-closed membership alphabet mismatch");
    return std::any_of(ideals_.begin(), ideals_.end(),
                       [&](const BoxIdeal& id) { return id.contains(m); });
}

bool DownwardClosedSet::is_full() const {
    return std::any_of(ideals_.begin(), ideals_.end(), [](const BoxIdeal& id) {
        return std::all_of(id.unbounded.begin(), id.unbounded.end(),
                           [](bool u) { return u; });
    });
}

SemilinearSet DownwardClosedSet::as_semilinear() const {
    std::vector<LinearSet> comps;
    for (const auto& id : ideals_) {
        std::vector<Multiset> periods;
        for (size_t i = 0; i < alphabet_.size(); ++i) {
            if (!id.unbounded[i]) continue;
            std::vector<long long> v(alphabet_.size(), 0);
            v[i] = 1;
            periods.emplace_back(alphabet_, std::move(v));
        }
        comps.emplace_back(id.bound, std::move(periods));
    }
    return SemilinearSet(alphabet_, std::move(comps));
}

DownwardClosedSet sl_downward(const SemilinearSet& s) {
    const Alphabet& x = s.alphabet();
    std::vector<BoxIdeal> ideals;
    for (const auto& c : s.components()) {
        std::vector<bool> unbounded(x.size(), false);
        for (const auto& p : c.periods())
            for (size_t i = 0; i < x.size(); ++i)
                if (p.at(i) > 0) unbounded[i] = true;
        std::vector<long long> bound(x.size(), 0);
        for (size_t i = 0; i < x.size(); ++i)
            if (!unbounded[i]) bound[i] = c.base().at(i);
        ideals.push_back(BoxIdeal{Multiset(x, std::move(bound)), unbounded});
    }
    return DownwardClosedSet(x, std::move(ideals));
}

std::vector<Multiset> upward_complement_minimals(const DownwardClosedSet& d) {
    const Alphabet& x = d.alphabet();
    // Per ideal, the complement is generated by (bound(x)+1) e_x over its
    // bounded coordinates; the minimals of the intersection come from
    // pointwise maxima over one generator per ideal.
    std::vector<std::vector<Multiset>> generators;
    for (const auto& id : d.ideals()) {
        std::vector<Multiset> gens;
        for (size_t i = 0; i < x.size(); ++i) {
            if (id.unbounded[i]) continue;
            std::vector<long long> v(x.size(), 0);
            v[i] = id.bound.at(i) + 1;
            gens.emplace_back(x, std::move(v));
        }
        if (gens.empty()) return {};  // ideal covers all of N^X
        generators.push_back(std::move(gens));
    }
    std::vector<Multiset> candidates{Multiset(x)};
    for (const auto& gens : generators) {
        std::vector<Multiset> next;
        for (const auto& cand : candidates) {
            for (const auto& g : gens) {
                std::vector<long long> v(x.size());
                for (size_t i = 0; i < x.size(); ++i)
                    v[i] = std::max(cand.at(i), g.at(i));
                Multiset m(x, std::move(v));
                if (std::find(next.begin(), next.end(), m) == next.end())
                    next.push_back(std::move(m));
            }
        }
        candidates = std::move(next);
    }
    std::vector<Multiset> minimal;
    for (const auto& c : candidates) {
        bool dominated = std::any_of(
            candidates.begin(), candidates.end(),
            [&](const Multiset& o) { return o.leq(c) && !(o == c); });
        if (!dominated &&
            std::find(minimal.begin(), minimal.end(), c) == minimal.end())
            minimal.push_back(c);
    }
    std::sort(minimal.begin(), minimal.end());
    return minimal;
}

}  // namespace parikh

#pragma once

#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "anskit/automata.hpp"

namespace anskit {

// Rank and unrank accepted words of an automaton in radix order, the letter
// order being the alphabet order.
class RadixRanker {
public:
    explicit RadixRanker(const Dfa& d) : counter_(trim(d)) {}
    const Dfa& dfa() const { return counter_.dfa(); }

    BigInt rank(const LetterWord& w) const {
        const Dfa& d = dfa();
        if (!d.accepts(w)) throw ValidationError("word is not in the numeration language");
        BigInt r = 0;
        for (std::size_t len = 0; len < w.size(); ++len) r += counter_.count(d.initial(), len);
        int q = d.initial();
        for (std::size_t i = 0; i < w.size(); ++i) {
            for (int a = 0; a < w[i]; ++a) {
                int t = d.next(q, a);
                if (t >= 0) r += counter_.count(t, w.size() - i - 1);
            }
            q = d.next(q, w[i]);
        }
        return r;
    }

    LetterWord unrank(BigInt n) const {
        const Dfa& d = dfa();
        if (n < 0) throw ValidationError("negative rank");
        const bool infinite = is_infinite(d);
        std::size_t len = 0;
        while (true) {
            BigInt c = counter_.count(d.initial(), len);
            if (n < c) break;
            n -= c;
            ++len;
            if (!infinite && len > d.size()) throw ValidationError("rank exceeds the size of a finite language");
        }
        LetterWord w;
        int q = d.initial();
        for (std::size_t i = 0; i < len; ++i) {
            for (std::size_t a = 0; a < d.letters(); ++a) {
                int t = d.next(q, static_cast<int>(a));
                if (t < 0) continue;
                BigInt c = counter_.count(t, len - i - 1);
                if (n < c) {
                    w.push_back(static_cast<int>(a));
                    q = t;
                    break;
                }
                n -= c;
            }
        }
        return w;
    }

private:
    WordCounter counter_;
};

// Structural equality of two automata (meaningful on minimized automata,
// whose numbering is canonical).
inline bool same_structure(const Dfa& a, const Dfa& b) {
    if (!(a.alphabet() == b.alphabet()) || a.size() != b.size() || a.initial() != b.initial()) return false;
    for (std::size_t q = 0; q < a.size(); ++q) {
        if (a.is_final(static_cast<int>(q)) != b.is_final(static_cast<int>(q))) return false;
        for (std::size_t l = 0; l < a.letters(); ++l)
            if (a.next(static_cast<int>(q), static_cast<int>(l)) != b.next(static_cast<int>(q), static_cast<int>(l)))
                return false;
    }
    return true;
}

// One-dimensional abstract numeration system: an infinite regular language
// over a totally ordered alphabet of one-tape letters.
class Ans {
public:
    static Ans from_dfa(const Dfa& d, std::string name = "") {
        if (d.alphabet().arity() != 1) throw ValidationError("a numeration language must be over one-tape letters");
        for (const Letter& l : d.alphabet().letters())
            if (l[0] == kPad || l[0] == kRelPad) throw ValidationError("padding symbols cannot be digits");
        Dfa m = minimize(d);
        if (!is_infinite(m)) throw ValidationError("a numeration language must be infinite");
        Ans a;
        a.ranker_ = std::make_shared<RadixRanker>(m);
        a.name_ = std::move(name);
        return a;
    }

    // Language {1..b-1}{0..b-1}* together with the empty word.
    static Ans integer_base(unsigned b) {
        if (b < 2) throw ValidationError("integer base must be at least 2");
        std::vector<Letter> letters;
        for (unsigned i = 0; i < b; ++i) letters.push_back({std::to_string(i)});
        Dfa d{Alphabet(letters)};
        d.add_state(true);
        d.add_state(true);
        for (unsigned i = 1; i < b; ++i) d.set_next(0, static_cast<int>(i), 1);
        for (unsigned i = 0; i < b; ++i) d.set_next(1, static_cast<int>(i), 1);
        return from_dfa(d, "base:" + std::to_string(b));
    }
    // Greedy Fibonacci representations 1{0,01}* together with the empty word.
    static Ans zeckendorf() {
        Dfa d{Alphabet({{"0"}, {"1"}})};
        for (int i = 0; i < 3; ++i) d.add_state(true);
        d.set_next(0, 1, 1);
        d.set_next(1, 0, 2);
        d.set_next(2, 0, 2);
        d.set_next(2, 1, 1);
        return from_dfa(d, "zeckendorf");
    }
    static Ans unary() {
        Dfa d{Alphabet({{"c"}})};
        d.add_state(true);
        d.set_next(0, 0, 0);
        return from_dfa(d, "unary");
    }
    // a*b* with a < b.
    static Ans ab_star() {
        Dfa d{Alphabet({{"a"}, {"b"}})};
        d.add_state(true);
        d.add_state(true);
        d.set_next(0, 0, 0);
        d.set_next(0, 1, 1);
        d.set_next(1, 1, 1);
        return from_dfa(d, "ab-star");
    }
    static Ans preset(const std::string& name) {
        if (name == "zeckendorf") return zeckendorf();
        if (name == "unary") return unary();
        if (name == "ab-star") return ab_star();
        if (name.rfind("base:", 0) == 0) {
            std::string digits = name.substr(5);
            if (digits.empty() || digits.size() > 6 || !std::all_of(digits.begin(), digits.end(), ::isdigit))
                throw ValidationError("bad base in '" + name + "'");
            return integer_base(static_cast<unsigned>(std::stoul(digits)));
        }
        throw ValidationError("unknown numeration system '" + name + "'");
    }

    const Dfa& dfa() const { return ranker_->dfa(); }
    const Alphabet& alphabet() const { return dfa().alphabet(); }
    const std::string& name() const { return name_; }

    LetterWord rep(const BigInt& n) const { return ranker_->unrank(n); }
    BigInt val(const LetterWord& w) const { return ranker_->rank(w); }
    bool contains(const LetterWord& w) const { return dfa().accepts(w); }

    std::string rep_string(const BigInt& n) const {
        std::string s;
        for (int a : rep(n)) s += alphabet()[static_cast<std::size_t>(a)][0];
        return s;
    }

    // Every prefix of an accepted word is accepted.
    bool is_prefix_closed() const {
        const Dfa& d = dfa();
        for (std::size_t q = 0; q < d.size(); ++q)
            if (!d.is_final(static_cast<int>(q))) return false;
        return true;
    }

    friend bool operator==(const Ans& a, const Ans& b) { return same_structure(a.dfa(), b.dfa()); }

private:
    std::shared_ptr<const RadixRanker> ranker_;
    std::string name_;
};

// d-tuple of numeration systems with left padding by '#'.
class MultiAns {
public:
    MultiAns() = default;
    explicit MultiAns(std::vector<Ans> systems) : systems_(std::move(systems)) {
        if (systems_.empty()) throw ValidationError("a numeration system needs at least one component");
        build();
    }
    MultiAns(const Ans& a, std::size_t d) : MultiAns(std::vector<Ans>(d, a)) {}

    std::size_t dim() const { return systems_.size(); }
    const Ans& system(std::size_t i) const { return systems_.at(i); }
    const std::vector<Ans>& systems() const { return systems_; }
    const Alphabet& alphabet() const { return data_->alphabet; }
    const Dfa& language() const { return data_->language; }

    MultiAns concat(const MultiAns& other) const {
        std::vector<Ans> s = systems_;
        s.insert(s.end(), other.systems_.begin(), other.systems_.end());
        return MultiAns(std::move(s));
    }
    MultiAns power(std::size_t m) const {
        std::vector<Ans> s;
        for (std::size_t i = 0; i < m; ++i) s.insert(s.end(), systems_.begin(), systems_.end());
        return MultiAns(std::move(s));
    }
    // The system obtained by deleting one component.
    MultiAns without(std::size_t axis) const {
        std::vector<Ans> s = systems_;
        s.erase(s.begin() + static_cast<long>(axis));
        return MultiAns(std::move(s));
    }

    LetterWord rep(const std::vector<BigInt>& n) const {
        if (n.size() != dim()) throw ValidationError("expected a " + std::to_string(dim()) + "-tuple");
        std::vector<LetterWord> comps;
        std::size_t len = 0;
        for (std::size_t i = 0; i < dim(); ++i) {
            comps.push_back(systems_[i].rep(n[i]));
            len = std::max(len, comps.back().size());
        }
        LetterWord w;
        for (std::size_t p = 0; p < len; ++p) {
            Letter l;
            for (std::size_t i = 0; i < dim(); ++i) {
                std::size_t off = len - comps[i].size();
                l.push_back(p < off ? kPad : systems_[i].alphabet()[static_cast<std::size_t>(comps[i][p - off])][0]);
            }
            w.push_back(alphabet().require(l));
        }
        return w;
    }
    Word rep_word(const std::vector<BigInt>& n) const { return alphabet().decode(rep(n)); }

    // Component words with padding removed; rejects non-canonical padding.
    std::vector<LetterWord> components(const LetterWord& w) const {
        std::vector<LetterWord> comps(dim());
        std::vector<char> started(dim(), 0);
        for (int code : w) {
            const Letter& l = alphabet()[static_cast<std::size_t>(code)];
            for (std::size_t i = 0; i < dim(); ++i) {
                if (l[i] == kPad) {
                    if (started[i]) throw ValidationError("padding symbol after a digit");
                    continue;
                }
                started[i] = 1;
                comps[i].push_back(systems_[i].alphabet().require({l[i]}));
            }
        }
        return comps;
    }

    std::vector<BigInt> val(const LetterWord& w) const {
        std::vector<LetterWord> comps = components(w);
        std::vector<BigInt> out;
        for (std::size_t i = 0; i < dim(); ++i) {
            if (!systems_[i].contains(comps[i]))
                throw ValidationError("component " + std::to_string(i + 1) + " is not in its numeration language");
            out.push_back(systems_[i].val(comps[i]));
        }
        return out;
    }
    std::vector<BigInt> val_word(const Word& w) const {
        for (const Letter& l : w)
            if (is_all(l, kPad)) throw ValidationError("the all-padding letter is not a valid letter");
        return val(alphabet().encode(w));
    }

    bool is_prefix_closed() const {
        return std::all_of(systems_.begin(), systems_.end(), [](const Ans& a) { return a.is_prefix_closed(); });
    }

    friend bool operator==(const MultiAns& a, const MultiAns& b) { return a.systems_ == b.systems_; }

private:
    struct Data {
        Alphabet alphabet;
        Dfa language;
    };

    void build() {
        auto data = std::make_shared<Data>();
        std::vector<Letter> letters{{}};
        for (const Ans& a : systems_) {
            std::vector<Symbol> syms{kPad};
            for (const Letter& l : a.alphabet().letters()) syms.push_back(l[0]);
            std::vector<Letter> next;
            for (const Letter& prefix : letters)
                for (const Symbol& s : syms) {
                    Letter l = prefix;
                    l.push_back(s);
                    next.push_back(std::move(l));
                }
            letters.swap(next);
        }
        letters.erase(letters.begin());  // the all-padding tuple sorts first
        data->alphabet = Alphabet(letters);

        // Product of component automata; state -1 means "still padding".
        Dfa d(data->alphabet);
        std::unordered_map<std::vector<int>, int, VectorHash> ids;
        std::vector<std::vector<int>> states;
        auto intern = [&](std::vector<int>&& s) {
            auto it = ids.find(s);
            if (it != ids.end()) return it->second;
            bool fin = true;
            for (std::size_t i = 0; i < dim(); ++i) {
                const Dfa& c = systems_[i].dfa();
                fin = fin && c.is_final(s[i] < 0 ? c.initial() : s[i]);
            }
            int id = d.add_state(fin);
            ids.emplace(s, id);
            states.push_back(std::move(s));
            return id;
        };
        d.set_initial(intern(std::vector<int>(dim(), -1)));
        for (std::size_t idx = 0; idx < states.size(); ++idx)
            for (std::size_t l = 0; l < data->alphabet.size(); ++l) {
                const Letter& letter = data->alphabet[l];
                std::vector<int> nx(dim());
                bool ok = true;
                for (std::size_t i = 0; i < dim() && ok; ++i) {
                    int cur = states[idx][i];
                    if (letter[i] == kPad) {
                        ok = cur < 0;
                        nx[i] = -1;
                    } else {
                        const Dfa& c = systems_[i].dfa();
                        int t = c.next(cur < 0 ? c.initial() : cur, c.alphabet().require({letter[i]}));
                        ok = t >= 0;
                        nx[i] = t;
                    }
                }
                if (ok) d.set_next(static_cast<int>(idx), static_cast<int>(l), intern(std::move(nx)));
            }
        data->language = minimize(d);
        data_ = std::move(data);
    }

    std::vector<Ans> systems_;
    std::shared_ptr<const Data> data_;
};

// A total order on the letters of a MultiAns; the induced radix order on the
// numeration language enumerates N^d.
class EnumOrder {
public:
    // Componentwise lexicographic order with '#' least.
    static EnumOrder lex(const MultiAns& m) { return with_letters(m, m.alphabet().letters()); }

    static EnumOrder with_letters(const MultiAns& m, const std::vector<Letter>& order) {
        if (order.size() != m.alphabet().size()) throw ValidationError("letter order must list every letter once");
        EnumOrder e;
        e.multi_ = m;
        e.ordered_ = Alphabet(order);
        e.rank_.assign(m.alphabet().size(), -1);
        for (std::size_t i = 0; i < order.size(); ++i) {
            int idx = m.alphabet().require(order[i]);
            e.rank_[static_cast<std::size_t>(idx)] = static_cast<int>(i);
        }
        e.ranker_ = std::make_shared<RadixRanker>(reindex(m.language(), e.ordered_));
        return e;
    }

    // The explicit eight-letter order used with the pair system (a*b*, a*b*).
    static EnumOrder ab_pairs() {
        MultiAns m(Ans::ab_star(), 2);
        return with_letters(m, {{"#", "a"}, {"#", "b"}, {"a", "#"}, {"a", "a"}, {"a", "b"}, {"b", "#"}, {"b", "a"}, {"b", "b"}});
    }

    const MultiAns& multi() const { return multi_; }
    const std::vector<Letter>& order() const { return ordered_.letters(); }
    // Position of a MultiAns letter index in this order.
    int rank_of(int letter) const { return rank_.at(static_cast<std::size_t>(letter)); }

    BigInt index(const std::vector<BigInt>& n) const {
        LetterWord w = multi_.rep(n);
        for (int& a : w) a = rank_of(a);
        return ranker_->rank(w);
    }
    std::vector<BigInt> unindex(const BigInt& i) const {
        LetterWord w = ranker_->unrank(i);
        for (int& a : w) a = multi_.alphabet().require(ordered_[static_cast<std::size_t>(a)]);
        return multi_.val(w);
    }

private:
    MultiAns multi_;
    Alphabet ordered_;
    std::vector<int> rank_;
    std::shared_ptr<const RadixRanker> ranker_;
};

enum class OrderRel { Eq, Lt, Gt };

// Automaton over 2d-tuples recognizing the pairs (m, n) with
// E(m) rel E(n); built as a three-state comparator with the all-padding
// block letter least, intersected with the pair numeration language.
inline Dfa order_predicate(const EnumOrder& e, OrderRel rel) {
    const MultiAns& m = e.multi();
    const std::size_t d = m.dim();
    MultiAns pair = m.power(2);
    const Alphabet& alpha = pair.alphabet();
    std::vector<std::size_t> left(d), right(d);
    std::iota(left.begin(), left.end(), 0);
    std::iota(right.begin(), right.end(), d);
    auto block_rank = [&](const Letter& l) { return is_all(l, kPad) ? -1 : e.rank_of(m.alphabet().require(l)); };
    // states: 0 equal so far, 1 less, 2 greater
    Dfa cmp(alpha);
    for (int i = 0; i < 3; ++i) cmp.add_state(false);
    cmp.set_final(rel == OrderRel::Eq ? 0 : rel == OrderRel::Lt ? 1 : 2, true);
    for (std::size_t l = 0; l < alpha.size(); ++l) {
        int x = block_rank(restrict_letter(alpha[l], left));
        int y = block_rank(restrict_letter(alpha[l], right));
        cmp.set_next(0, static_cast<int>(l), x < y ? 1 : (x > y ? 2 : 0));
        cmp.set_next(1, static_cast<int>(l), 1);
        cmp.set_next(2, static_cast<int>(l), 2);
    }
    return minimize(intersect(cmp, pair.language()));
}

// Value in base b of the perfect shuffle of the (zero-padded) base-b
// representations of the components.
inline BigInt shuffle_value(unsigned b, const std::vector<BigInt>& n) {
    if (b < 2) throw ValidationError("base must be at least 2");
    std::vector<std::vector<unsigned>> digits;
    std::size_t len = 0;
    for (BigInt x : n) {
        if (x < 0) throw ValidationError("negative component");
        std::vector<unsigned> ds;
        while (x > 0) {
            ds.push_back(static_cast<unsigned>(x % b));
            x /= b;
        }
        std::reverse(ds.begin(), ds.end());
        len = std::max(len, ds.size());
        digits.push_back(std::move(ds));
    }
    BigInt v = 0;
    for (std::size_t p = 0; p < len; ++p)
        for (const auto& ds : digits) {
            std::size_t off = len - ds.size();
            v = v * b + (p < off ? 0U : ds[p - off]);
        }
    return v;
}

}  // namespace anskit

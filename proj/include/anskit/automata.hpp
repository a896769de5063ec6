#pragma once

#include <algorithm>
#include <deque>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <numeric>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "anskit/errors.hpp"
#include "anskit/semiring.hpp"

namespace anskit {

using Symbol = std::string;
using Letter = std::vector<Symbol>;
using Word = std::vector<Letter>;
using LetterWord = std::vector<int>;  // word as indices into an alphabet

inline const Symbol kPad = "#";
inline const Symbol kRelPad = "$";

inline bool is_all(const Letter& l, const Symbol& s) {
    return std::all_of(l.begin(), l.end(), [&](const Symbol& x) { return x == s; });
}

inline Letter restrict_letter(const Letter& l, const std::vector<std::size_t>& tapes) {
    Letter out;
    out.reserve(tapes.size());
    for (std::size_t t : tapes) out.push_back(l.at(t));
    return out;
}

inline std::string letter_str(const Letter& l) {
    if (l.size() == 1) return l[0];
    std::string s = "(";
    for (std::size_t i = 0; i < l.size(); ++i) s += (i ? "," : "") + l[i];
    return s + ")";
}

struct VectorHash {
    std::size_t operator()(const std::vector<int>& v) const noexcept {
        std::size_t h = v.size();
        for (int x : v) h ^= static_cast<std::size_t>(x) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
        return h;
    }
};

// Immutable ordered list of tuple letters; copies share storage.
class Alphabet {
public:
    Alphabet() : data_(std::make_shared<Data>()) {}
    explicit Alphabet(std::vector<Letter> letters) {
        auto d = std::make_shared<Data>();
        d->arity = letters.empty() ? 0 : letters.front().size();
        for (std::size_t i = 0; i < letters.size(); ++i) {
            const Letter& l = letters[i];
            if (l.empty()) throw ValidationError("letters must have at least one component");
            if (l.size() != d->arity) throw ValidationError("letters of one alphabet must share their arity");
            if (is_all(l, kPad) || is_all(l, kRelPad))
                throw ValidationError("padding tuple " + letter_str(l) + " cannot be an alphabet letter");
            if (!d->index.emplace(l, static_cast<int>(i)).second)
                throw ValidationError("duplicate letter " + letter_str(l));
        }
        d->letters = std::move(letters);
        data_ = std::move(d);
    }

    std::size_t size() const { return data_->letters.size(); }
    std::size_t arity() const { return data_->arity; }
    const Letter& operator[](std::size_t i) const { return data_->letters[i]; }
    const std::vector<Letter>& letters() const { return data_->letters; }
    int index_of(const Letter& l) const {
        auto it = data_->index.find(l);
        return it == data_->index.end() ? -1 : it->second;
    }
    int require(const Letter& l) const {
        int i = index_of(l);
        if (i < 0) throw ValidationError("letter " + letter_str(l) + " is not in the alphabet");
        return i;
    }
    LetterWord encode(const Word& w) const {
        LetterWord out;
        out.reserve(w.size());
        for (const Letter& l : w) out.push_back(require(l));
        return out;
    }
    Word decode(const LetterWord& w) const {
        Word out;
        out.reserve(w.size());
        for (int i : w) out.push_back(data_->letters.at(static_cast<std::size_t>(i)));
        return out;
    }

    friend bool operator==(const Alphabet& a, const Alphabet& b) {
        return a.data_ == b.data_ || a.data_->letters == b.data_->letters;
    }

private:
    struct Data {
        std::vector<Letter> letters;
        std::map<Letter, int> index;
        std::size_t arity = 0;
    };
    std::shared_ptr<const Data> data_;
};

// Deterministic automaton with a partial transition table (-1 = undefined).
class Dfa {
public:
    Dfa() = default;
    explicit Dfa(Alphabet a) : alphabet_(std::move(a)) {}

    const Alphabet& alphabet() const { return alphabet_; }
    std::size_t size() const { return finals_.size(); }
    std::size_t letters() const { return alphabet_.size(); }

    int add_state(bool final = false) {
        finals_.push_back(final ? 1 : 0);
        delta_.resize(delta_.size() + alphabet_.size(), -1);
        return static_cast<int>(finals_.size()) - 1;
    }
    int initial() const { return initial_; }
    void set_initial(int q) { initial_ = q; }
    bool is_final(int q) const { return finals_[static_cast<std::size_t>(q)] != 0; }
    void set_final(int q, bool f) { finals_[static_cast<std::size_t>(q)] = f ? 1 : 0; }
    int next(int q, int a) const { return delta_[static_cast<std::size_t>(q) * alphabet_.size() + static_cast<std::size_t>(a)]; }
    void set_next(int q, int a, int to) {
        delta_[static_cast<std::size_t>(q) * alphabet_.size() + static_cast<std::size_t>(a)] = to;
    }

    int run(int q, const LetterWord& w) const {
        for (int a : w) {
            if (q < 0) return -1;
            q = next(q, a);
        }
        return q;
    }
    bool accepts(const LetterWord& w) const {
        int q = run(initial_, w);
        return q >= 0 && is_final(q);
    }
    bool accepts_word(const Word& w) const {
        LetterWord enc;
        for (const Letter& l : w) {
            int i = alphabet_.index_of(l);
            if (i < 0) return false;
            enc.push_back(i);
        }
        return accepts(enc);
    }

private:
    Alphabet alphabet_;
    int initial_ = 0;
    std::vector<char> finals_;
    std::vector<int> delta_;
};

// Nondeterministic automaton; letter -1 marks an epsilon move.
struct Nfa {
    Alphabet alphabet;
    std::vector<char> finals;
    std::vector<int> initials;
    std::vector<std::vector<std::pair<int, int>>> edges;

    Nfa() = default;
    explicit Nfa(Alphabet a) : alphabet(std::move(a)) {}
    std::size_t size() const { return finals.size(); }
    int add_state(bool final = false) {
        finals.push_back(final ? 1 : 0);
        edges.emplace_back();
        return static_cast<int>(finals.size()) - 1;
    }
    void add_edge(int from, int letter, int to) { edges[static_cast<std::size_t>(from)].emplace_back(letter, to); }
};

inline Dfa empty_dfa(const Alphabet& a) {
    Dfa d(a);
    d.add_state(false);
    return d;
}

inline Dfa universal_dfa(const Alphabet& a) {
    Dfa d(a);
    d.add_state(true);
    for (std::size_t l = 0; l < a.size(); ++l) d.set_next(0, static_cast<int>(l), 0);
    return d;
}

// Trie automaton accepting exactly the given words.
inline Dfa words_dfa(const Alphabet& a, const std::vector<LetterWord>& words) {
    Dfa d(a);
    d.add_state(false);
    for (const LetterWord& w : words) {
        int q = 0;
        for (int l : w) {
            int n = d.next(q, l);
            if (n < 0) {
                n = d.add_state(false);
                d.set_next(q, l, n);
            }
            q = n;
        }
        d.set_final(q, true);
    }
    return d;
}

// Drops unreachable and non-co-accessible states and renumbers the rest in
// breadth-first discovery order (letters in alphabet order).
inline Dfa trim(const Dfa& d) {
    const std::size_t n = d.size(), k = d.letters();
    std::vector<std::vector<int>> rev(n);
    for (std::size_t q = 0; q < n; ++q)
        for (std::size_t a = 0; a < k; ++a) {
            int t = d.next(static_cast<int>(q), static_cast<int>(a));
            if (t >= 0) rev[static_cast<std::size_t>(t)].push_back(static_cast<int>(q));
        }
    std::vector<char> coacc(n, 0);
    std::deque<int> queue;
    for (std::size_t q = 0; q < n; ++q)
        if (d.is_final(static_cast<int>(q))) {
            coacc[q] = 1;
            queue.push_back(static_cast<int>(q));
        }
    while (!queue.empty()) {
        int q = queue.front();
        queue.pop_front();
        for (int p : rev[static_cast<std::size_t>(q)])
            if (!coacc[static_cast<std::size_t>(p)]) {
                coacc[static_cast<std::size_t>(p)] = 1;
                queue.push_back(p);
            }
    }
    if (n == 0 || !coacc[static_cast<std::size_t>(d.initial())]) return empty_dfa(d.alphabet());
    std::vector<int> id(n, -1);
    std::vector<int> order;
    id[static_cast<std::size_t>(d.initial())] = 0;
    order.push_back(d.initial());
    for (std::size_t i = 0; i < order.size(); ++i) {
        int q = order[i];
        for (std::size_t a = 0; a < k; ++a) {
            int t = d.next(q, static_cast<int>(a));
            if (t >= 0 && coacc[static_cast<std::size_t>(t)] && id[static_cast<std::size_t>(t)] < 0) {
                id[static_cast<std::size_t>(t)] = static_cast<int>(order.size());
                order.push_back(t);
            }
        }
    }
    Dfa out(d.alphabet());
    for (int q : order) out.add_state(d.is_final(q));
    out.set_initial(0);
    for (std::size_t i = 0; i < order.size(); ++i)
        for (std::size_t a = 0; a < k; ++a) {
            int t = d.next(order[i], static_cast<int>(a));
            if (t >= 0 && id[static_cast<std::size_t>(t)] >= 0)
                out.set_next(static_cast<int>(i), static_cast<int>(a), id[static_cast<std::size_t>(t)]);
        }
    return out;
}

inline bool is_complete(const Dfa& d) {
    for (std::size_t q = 0; q < d.size(); ++q)
        for (std::size_t a = 0; a < d.letters(); ++a)
            if (d.next(static_cast<int>(q), static_cast<int>(a)) < 0) return false;
    return d.size() > 0;
}

// Adds a non-final sink when some transition is undefined.
inline Dfa complete(const Dfa& d) {
    if (is_complete(d)) return d;
    Dfa out = d;
    if (out.size() == 0) {
        out.add_state(false);
        out.set_initial(0);
    }
    int sink = -1;
    const std::size_t n = out.size();
    for (std::size_t q = 0; q < n; ++q)
        for (std::size_t a = 0; a < out.letters(); ++a)
            if (out.next(static_cast<int>(q), static_cast<int>(a)) < 0) {
                if (sink < 0) sink = out.add_state(false);
                out.set_next(static_cast<int>(q), static_cast<int>(a), sink);
            }
    if (sink >= 0)
        for (std::size_t a = 0; a < out.letters(); ++a) out.set_next(sink, static_cast<int>(a), sink);
    return out;
}

// Refines a partition of the states of a complete automaton until it is
// stable under all letters; `initial` gives the starting classes.
inline std::vector<int> refine_partition(const Dfa& c, std::vector<int> cls) {
    const std::size_t n = c.size(), k = c.letters();
    std::size_t count = 0;
    {
        std::vector<int> seen;
        for (int x : cls) seen.push_back(x);
        std::sort(seen.begin(), seen.end());
        count = static_cast<std::size_t>(std::unique(seen.begin(), seen.end()) - seen.begin());
    }
    while (true) {
        std::unordered_map<std::vector<int>, int, VectorHash> ids;
        std::vector<int> next(n);
        std::vector<int> sig(k + 1);
        for (std::size_t q = 0; q < n; ++q) {
            sig[0] = cls[q];
            for (std::size_t a = 0; a < k; ++a) sig[a + 1] = cls[static_cast<std::size_t>(c.next(static_cast<int>(q), static_cast<int>(a)))];
            auto it = ids.emplace(sig, static_cast<int>(ids.size())).first;
            next[q] = it->second;
        }
        cls.swap(next);
        if (ids.size() == count) break;
        count = ids.size();
    }
    return cls;
}

// Minimal trimmed automaton (unique up to the canonical numbering).
inline Dfa minimize(const Dfa& d) {
    Dfa c = complete(trim(d));
    std::vector<int> cls(c.size());
    for (std::size_t q = 0; q < c.size(); ++q) cls[q] = c.is_final(static_cast<int>(q)) ? 1 : 0;
    cls = refine_partition(c, cls);
    int classes = *std::max_element(cls.begin(), cls.end()) + 1;
    Dfa q(c.alphabet());
    for (int i = 0; i < classes; ++i) q.add_state(false);
    for (std::size_t s = 0; s < c.size(); ++s) {
        int from = cls[s];
        q.set_final(from, c.is_final(static_cast<int>(s)));
        for (std::size_t a = 0; a < c.letters(); ++a)
            q.set_next(from, static_cast<int>(a), cls[static_cast<std::size_t>(c.next(static_cast<int>(s), static_cast<int>(a)))]);
    }
    q.set_initial(cls[static_cast<std::size_t>(c.initial())]);
    return trim(q);
}

inline Nfa to_nfa(const Dfa& d) {
    Nfa n(d.alphabet());
    for (std::size_t q = 0; q < d.size(); ++q) n.add_state(d.is_final(static_cast<int>(q)));
    for (std::size_t q = 0; q < d.size(); ++q)
        for (std::size_t a = 0; a < d.letters(); ++a) {
            int t = d.next(static_cast<int>(q), static_cast<int>(a));
            if (t >= 0) n.add_edge(static_cast<int>(q), static_cast<int>(a), t);
        }
    if (d.size() > 0) n.initials.push_back(d.initial());
    return n;
}

namespace detail {
inline void eps_close(const Nfa& n, std::vector<int>& set) {
    std::vector<char> in(n.size(), 0);
    for (int q : set) in[static_cast<std::size_t>(q)] = 1;
    for (std::size_t i = 0; i < set.size(); ++i)
        for (auto [l, t] : n.edges[static_cast<std::size_t>(set[i])])
            if (l < 0 && !in[static_cast<std::size_t>(t)]) {
                in[static_cast<std::size_t>(t)] = 1;
                set.push_back(t);
            }
    std::sort(set.begin(), set.end());
}
}  // namespace detail

// Subset construction with epsilon closure; the result is trimmed.
inline Dfa determinize(const Nfa& n, std::size_t budget = 0) {
    const std::size_t k = n.alphabet.size();
    Dfa d(n.alphabet);
    std::unordered_map<std::vector<int>, int, VectorHash> ids;
    std::vector<std::vector<int>> subsets;
    std::vector<int> start = n.initials;
    std::sort(start.begin(), start.end());
    start.erase(std::unique(start.begin(), start.end()), start.end());
    detail::eps_close(n, start);
    auto intern = [&](std::vector<int>&& s) {
        auto it = ids.find(s);
        if (it != ids.end()) return it->second;
        bool fin = std::any_of(s.begin(), s.end(), [&](int q) { return n.finals[static_cast<std::size_t>(q)] != 0; });
        int id = d.add_state(fin);
        if (budget != 0 && d.size() > budget)
            throw PreconditionError("subset construction exceeded the state budget of " + std::to_string(budget));
        ids.emplace(s, id);
        subsets.push_back(std::move(s));
        return id;
    };
    d.set_initial(intern(std::move(start)));
    std::vector<std::vector<int>> buckets(k);
    for (std::size_t i = 0; i < subsets.size(); ++i) {
        for (auto& b : buckets) b.clear();
        for (int q : subsets[i])
            for (auto [l, t] : n.edges[static_cast<std::size_t>(q)])
                if (l >= 0) buckets[static_cast<std::size_t>(l)].push_back(t);
        for (std::size_t a = 0; a < k; ++a) {
            if (buckets[a].empty()) continue;
            std::vector<int> s = buckets[a];
            std::sort(s.begin(), s.end());
            s.erase(std::unique(s.begin(), s.end()), s.end());
            detail::eps_close(n, s);
            int t = intern(std::move(s));
            d.set_next(static_cast<int>(i), static_cast<int>(a), t);
        }
    }
    return trim(d);
}

enum class BoolOp { Union, Intersection, Difference, SymmetricDifference };

inline void require_same_alphabet(const Dfa& a, const Dfa& b) {
    if (!(a.alphabet() == b.alphabet())) throw ValidationError("automata are over different alphabets");
}

// Synchronous product combined with a Boolean operation; result trimmed.
inline Dfa product(const Dfa& a0, const Dfa& b0, BoolOp op) {
    require_same_alphabet(a0, b0);
    const bool partial = op == BoolOp::Intersection;
    Dfa a = partial ? a0 : complete(a0);
    Dfa b = partial ? b0 : complete(b0);
    auto fin = [&](int p, int q) {
        bool x = a.is_final(p), y = b.is_final(q);
        switch (op) {
            case BoolOp::Union: return x || y;
            case BoolOp::Intersection: return x && y;
            case BoolOp::Difference: return x && !y;
            case BoolOp::SymmetricDifference: return x != y;
        }
        return false;
    };
    Dfa d(a.alphabet());
    std::unordered_map<std::vector<int>, int, VectorHash> ids;
    std::vector<std::pair<int, int>> pairs;
    auto intern = [&](int p, int q) {
        std::vector<int> key{p, q};
        auto it = ids.find(key);
        if (it != ids.end()) return it->second;
        int id = d.add_state(fin(p, q));
        ids.emplace(std::move(key), id);
        pairs.emplace_back(p, q);
        return id;
    };
    d.set_initial(intern(a.initial(), b.initial()));
    for (std::size_t i = 0; i < pairs.size(); ++i)
        for (std::size_t l = 0; l < a.letters(); ++l) {
            auto [p, q] = pairs[i];
            int x = a.next(p, static_cast<int>(l)), y = b.next(q, static_cast<int>(l));
            if (x < 0 || y < 0) continue;
            d.set_next(static_cast<int>(i), static_cast<int>(l), intern(x, y));
        }
    return trim(d);
}

inline Dfa intersect(const Dfa& a, const Dfa& b) { return product(a, b, BoolOp::Intersection); }
inline Dfa unite(const Dfa& a, const Dfa& b) { return product(a, b, BoolOp::Union); }
inline Dfa difference(const Dfa& a, const Dfa& b) { return product(a, b, BoolOp::Difference); }

// Complement with respect to all words over the automaton's alphabet.
inline Dfa complement(const Dfa& a) {
    Dfa c = complete(a);
    for (std::size_t q = 0; q < c.size(); ++q) c.set_final(static_cast<int>(q), !c.is_final(static_cast<int>(q)));
    return trim(c);
}

inline bool is_empty(const Dfa& a) {
    Dfa t = trim(a);
    return !t.is_final(t.initial()) && t.size() == 1 && [&] {
        for (std::size_t l = 0; l < t.letters(); ++l)
            if (t.next(0, static_cast<int>(l)) >= 0) return false;
        return true;
    }();
}

// True when the (trimmed) automaton has a cycle, i.e. its language is infinite.
inline bool is_infinite(const Dfa& a) {
    Dfa t = trim(a);
    if (is_empty(t)) return false;
    const std::size_t n = t.size();
    std::vector<int> color(n, 0);
    std::vector<std::pair<int, std::size_t>> stack;
    for (std::size_t s = 0; s < n; ++s) {
        if (color[s]) continue;
        stack.emplace_back(static_cast<int>(s), 0);
        color[s] = 1;
        while (!stack.empty()) {
            auto& [q, l] = stack.back();
            if (l == t.letters()) {
                color[static_cast<std::size_t>(q)] = 2;
                stack.pop_back();
                continue;
            }
            int nx = t.next(q, static_cast<int>(l++));
            if (nx < 0) continue;
            if (color[static_cast<std::size_t>(nx)] == 1) return true;
            if (color[static_cast<std::size_t>(nx)] == 0) {
                color[static_cast<std::size_t>(nx)] = 1;
                stack.emplace_back(nx, 0);
            }
        }
    }
    return false;
}

inline bool equivalent(const Dfa& a, const Dfa& b) { return is_empty(product(a, b, BoolOp::SymmetricDifference)); }
inline bool is_subset(const Dfa& a, const Dfa& b) { return is_empty(difference(a, b)); }

// Re-expresses an automaton over another alphabet, matching letters by value.
inline Dfa reindex(const Dfa& d, const Alphabet& target) {
    Dfa out(target);
    for (std::size_t q = 0; q < d.size(); ++q) out.add_state(d.is_final(static_cast<int>(q)));
    out.set_initial(d.initial());
    for (std::size_t l = 0; l < target.size(); ++l) {
        int src = d.alphabet().index_of(target[l]);
        if (src < 0) continue;
        for (std::size_t q = 0; q < d.size(); ++q)
            out.set_next(static_cast<int>(q), static_cast<int>(l), d.next(static_cast<int>(q), src));
    }
    return trim(out);
}

// Projection onto the kept tapes. Letters whose kept components are all
// `erase` become epsilon moves; other projected letters must exist in `target`.
inline Nfa project_tapes(const Dfa& d, const std::vector<std::size_t>& keep, const Alphabet& target,
                         const Symbol& erase = kPad) {
    if (keep.empty()) throw ValidationError("projection must keep at least one tape");
    for (std::size_t t : keep)
        if (t >= d.alphabet().arity()) throw ValidationError("tape index out of range");
    std::vector<int> image(d.letters());
    for (std::size_t l = 0; l < d.letters(); ++l) {
        Letter p = restrict_letter(d.alphabet()[l], keep);
        image[l] = is_all(p, erase) ? -1 : target.require(p);
    }
    Nfa n(target);
    for (std::size_t q = 0; q < d.size(); ++q) n.add_state(d.is_final(static_cast<int>(q)));
    n.initials.push_back(d.initial());
    for (std::size_t q = 0; q < d.size(); ++q)
        for (std::size_t l = 0; l < d.letters(); ++l) {
            int t = d.next(static_cast<int>(q), static_cast<int>(l));
            if (t >= 0) n.add_edge(static_cast<int>(q), image[l], t);
        }
    return n;
}

// { u : u w accepted }.
inline Dfa right_quotient(const Dfa& d, const LetterWord& w) {
    Dfa out = d;
    for (std::size_t q = 0; q < d.size(); ++q) {
        int t = d.run(static_cast<int>(q), w);
        out.set_final(static_cast<int>(q), t >= 0 && d.is_final(t));
    }
    return trim(out);
}

// Memoized counts of accepted words of each length from each state.
// Safe for concurrent use.
class WordCounter {
public:
    explicit WordCounter(Dfa d) : dfa_(std::move(d)) {}
    const Dfa& dfa() const { return dfa_; }

    BigInt count(int state, std::size_t length) const {
        std::lock_guard<std::mutex> lock(mutex_);
        extend(length);
        return table_[length][static_cast<std::size_t>(state)];
    }

private:
    void extend(std::size_t length) const {
        const std::size_t n = dfa_.size();
        if (table_.empty()) {
            std::vector<BigInt> row(n);
            for (std::size_t q = 0; q < n; ++q) row[q] = dfa_.is_final(static_cast<int>(q)) ? 1 : 0;
            table_.push_back(std::move(row));
        }
        while (table_.size() <= length) {
            const std::vector<BigInt>& prev = table_.back();
            std::vector<BigInt> row(n);
            for (std::size_t q = 0; q < n; ++q)
                for (std::size_t a = 0; a < dfa_.letters(); ++a) {
                    int t = dfa_.next(static_cast<int>(q), static_cast<int>(a));
                    if (t >= 0) row[q] += prev[static_cast<std::size_t>(t)];
                }
            table_.push_back(std::move(row));
        }
    }

    Dfa dfa_;
    mutable std::mutex mutex_;
    mutable std::vector<std::vector<BigInt>> table_;
};

inline BigInt count_words(const Dfa& d, int from, std::size_t length) {
    return WordCounter(d).count(from, length);
}

// Accepted words of length at most `max_len`, in radix order.
inline std::vector<LetterWord> accepted_words(const Dfa& d, std::size_t max_len) {
    std::vector<LetterWord> out;
    std::vector<std::pair<int, LetterWord>> layer{{d.initial(), {}}};
    for (std::size_t len = 0; len <= max_len && !layer.empty(); ++len) {
        std::vector<std::pair<int, LetterWord>> next;
        for (auto& [q, w] : layer) {
            if (d.is_final(q)) out.push_back(w);
            if (len == max_len) continue;
            for (std::size_t a = 0; a < d.letters(); ++a) {
                int t = d.next(q, static_cast<int>(a));
                if (t < 0) continue;
                LetterWord w2 = w;
                w2.push_back(static_cast<int>(a));
                next.emplace_back(t, std::move(w2));
            }
        }
        layer.swap(next);
    }
    return out;
}

// A group of tapes of a larger tuple together with an automaton reading
// exactly those tapes.
struct TapeGroup {
    const Dfa* dfa;
    std::vector<std::size_t> tapes;
};

// Words over `alphabet` such that, for every group, the restriction to the
// group's tapes with its leading all-`pad` letters removed is accepted by the
// group automaton. An all-`pad` restriction after the group has started is
// rejected.
inline Dfa padded_join(const Alphabet& alphabet, const std::vector<TapeGroup>& groups, const Symbol& pad) {
    const std::size_t g = groups.size(), k = alphabet.size();
    // code[i][l]: letter index in group i, -2 for all-pad, -1 for absent
    std::vector<std::vector<int>> code(g, std::vector<int>(k));
    for (std::size_t i = 0; i < g; ++i)
        for (std::size_t l = 0; l < k; ++l) {
            Letter r = restrict_letter(alphabet[l], groups[i].tapes);
            code[i][l] = is_all(r, pad) ? -2 : groups[i].dfa->alphabet().index_of(r);
        }
    Dfa d(alphabet);
    std::unordered_map<std::vector<int>, int, VectorHash> ids;
    std::vector<std::vector<int>> states;
    auto intern = [&](std::vector<int>&& s) {
        auto it = ids.find(s);
        if (it != ids.end()) return it->second;
        bool fin = true;
        for (std::size_t i = 0; i < g && fin; ++i) {
            const Dfa& gd = *groups[i].dfa;
            fin = s[i] < 0 ? gd.is_final(gd.initial()) : gd.is_final(s[i]);
        }
        int id = d.add_state(fin);
        ids.emplace(s, id);
        states.push_back(std::move(s));
        return id;
    };
    d.set_initial(intern(std::vector<int>(g, -1)));
    for (std::size_t idx = 0; idx < states.size(); ++idx)
        for (std::size_t l = 0; l < k; ++l) {
            std::vector<int> nx(g);
            bool ok = true;
            for (std::size_t i = 0; i < g && ok; ++i) {
                int c = code[i][l], cur = states[idx][i];
                if (c == -2) {
                    ok = cur < 0;
                    nx[i] = -1;
                } else if (c < 0) {
                    ok = false;
                } else {
                    const Dfa& gd = *groups[i].dfa;
                    int t = gd.next(cur < 0 ? gd.initial() : cur, c);
                    ok = t >= 0;
                    nx[i] = t;
                }
            }
            if (ok) d.set_next(static_cast<int>(idx), static_cast<int>(l), intern(std::move(nx)));
        }
    return trim(d);
}

// Words in which every tape group reads pad* followed by pad-free letters,
// a group being padded at a position when all its tapes carry `pad`.
inline Dfa canonical_padding_dfa(const Alphabet& alphabet, const std::vector<std::vector<std::size_t>>& groups,
                                 const Symbol& pad) {
    const std::size_t g = groups.size();
    std::vector<std::vector<int>> kind(alphabet.size(), std::vector<int>(g));  // 0 padded, 1 plain, 2 mixed
    for (std::size_t l = 0; l < alphabet.size(); ++l)
        for (std::size_t i = 0; i < g; ++i) {
            Letter r = restrict_letter(alphabet[l], groups[i]);
            std::size_t pads = static_cast<std::size_t>(std::count(r.begin(), r.end(), pad));
            kind[l][i] = pads == r.size() ? 0 : (pads == 0 ? 1 : 2);
        }
    Dfa d(alphabet);
    std::unordered_map<std::vector<int>, int, VectorHash> ids;
    std::vector<std::vector<int>> states;
    auto intern = [&](std::vector<int>&& s) {
        auto it = ids.find(s);
        if (it != ids.end()) return it->second;
        int id = d.add_state(true);
        ids.emplace(s, id);
        states.push_back(std::move(s));
        return id;
    };
    d.set_initial(intern(std::vector<int>(g, 0)));
    for (std::size_t idx = 0; idx < states.size(); ++idx)
        for (std::size_t l = 0; l < alphabet.size(); ++l) {
            std::vector<int> nx = states[idx];
            bool ok = true;
            for (std::size_t i = 0; i < g && ok; ++i) {
                if (kind[l][i] == 2) ok = false;
                else if (kind[l][i] == 0) ok = nx[i] == 0;
                else nx[i] = 1;
            }
            if (ok) d.set_next(static_cast<int>(idx), static_cast<int>(l), intern(std::move(nx)));
        }
    return trim(d);
}

}  // namespace anskit

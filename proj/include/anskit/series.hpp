#pragma once

// Recognizable formal series: linear representations, weighted automata and
// the operations on them.

#include <deque>
#include <map>
#include <optional>
#include <tuple>

#include "anskit/automata.hpp"
#include "anskit/semiring.hpp"

namespace anskit {

// (lambda, mu, gamma) over a semiring; coefficient of w is lambda mu(w) gamma.
struct LinRep {
    Semiring sr;
    Alphabet alphabet;
    Matrix lambda;           // 1 x r
    std::vector<Matrix> mu;  // one r x r matrix per alphabet letter
    Matrix gamma;            // r x 1

    std::size_t dim() const { return lambda.cols(); }

    void validate() const {
        std::size_t r = dim();
        if (r == 0) throw ValidationError("linear representation of dimension 0");
        if (lambda.rows() != 1 || gamma.rows() != r || gamma.cols() != 1)
            throw ValidationError("lambda/gamma shapes do not match dimension " + std::to_string(r));
        if (mu.size() != alphabet.size()) throw ValidationError("mu must have one matrix per letter");
        for (const Matrix& m : mu)
            if (m.rows() != r || m.cols() != r) throw ValidationError("mu matrix of wrong size");
        auto check_all = [&](const Matrix& m) {
            if (!(m.semiring() == sr)) throw ValidationError("matrix semiring differs from representation semiring");
            for (const Value& v : m.data()) sr.check(v);
        };
        check_all(lambda);
        check_all(gamma);
        for (const Matrix& m : mu) check_all(m);
    }

    Vec row_after(const LetterWord& w) const {
        Vec v = lambda.data();
        for (int a : w) v = vec_mat(sr, v, letter_matrix(a));
        return v;
    }
    // mu(w) gamma
    Vec column_after(const LetterWord& w) const {
        Vec v = gamma.data();
        for (auto it = w.rbegin(); it != w.rend(); ++it) v = mat_vec(sr, letter_matrix(*it), v);
        return v;
    }
    Value coeff(const LetterWord& w) const { return dot(sr, row_after(w), gamma.data()); }
    Value coeff_word(const Word& w) const { return coeff(alphabet.encode(w)); }

    const Matrix& letter_matrix(int a) const {
        if (a < 0 || static_cast<std::size_t>(a) >= mu.size()) throw ValidationError("letter index out of range");
        return mu[static_cast<std::size_t>(a)];
    }
};

inline LinRep zero_series(const Semiring& sr, const Alphabet& alphabet) {
    LinRep s{sr, alphabet, Matrix(sr, 1, 1), std::vector<Matrix>(alphabet.size(), Matrix(sr, 1, 1)), Matrix(sr, 1, 1)};
    return s;
}

// Weighted automaton: initial weights, final weights, weighted transitions.
struct WeightedAutomaton {
    Semiring sr;
    Alphabet alphabet;
    Vec initial;
    Vec final_weights;
    std::map<std::tuple<int, int, int>, Value> edges;  // (from, letter, to)

    std::size_t states() const { return initial.size(); }

    int add_state(Value in = Value(0), Value out = Value(0)) {
        initial.push_back(std::move(in));
        final_weights.push_back(std::move(out));
        return static_cast<int>(initial.size()) - 1;
    }
    // Accumulates parallel transitions; zero weights are not stored.
    void add_edge(int from, int letter, int to, const Value& w) {
        sr.check(w);
        auto key = std::make_tuple(from, letter, to);
        auto it = edges.find(key);
        Value total = it == edges.end() ? w : sr.add(it->second, w);
        if (total.is_zero()) {
            if (it != edges.end()) edges.erase(it);
        } else {
            edges[key] = total;
        }
    }

    Value weight(const LetterWord& w) const {
        Vec cur = initial;
        for (int a : w) {
            Vec next(states());
            for (const auto& [key, val] : edges) {
                auto [from, letter, to] = key;
                if (letter != a || cur[static_cast<std::size_t>(from)].is_zero()) continue;
                next[static_cast<std::size_t>(to)] = sr.add(next[static_cast<std::size_t>(to)], sr.mul(cur[static_cast<std::size_t>(from)], val));
            }
            cur.swap(next);
        }
        return dot(sr, cur, final_weights);
    }
};

inline WeightedAutomaton linrep_to_wfa(const LinRep& s) {
    WeightedAutomaton a{s.sr, s.alphabet, s.lambda.data(), s.gamma.data(), {}};
    for (std::size_t l = 0; l < s.mu.size(); ++l)
        for (std::size_t i = 0; i < s.dim(); ++i)
            for (std::size_t j = 0; j < s.dim(); ++j)
                if (!s.mu[l].at(i, j).is_zero()) a.add_edge(static_cast<int>(i), static_cast<int>(l), static_cast<int>(j), s.mu[l].at(i, j));
    return a;
}

inline LinRep wfa_to_linrep(const WeightedAutomaton& a) {
    if (a.states() == 0) return zero_series(a.sr, a.alphabet);
    std::size_t r = a.states();
    LinRep s{a.sr, a.alphabet, Matrix::row(a.sr, a.initial), std::vector<Matrix>(a.alphabet.size(), Matrix(a.sr, r, r)),
             Matrix::column(a.sr, a.final_weights)};
    for (const auto& [key, val] : a.edges) {
        auto [from, letter, to] = key;
        if (from < 0 || to < 0 || static_cast<std::size_t>(from) >= r || static_cast<std::size_t>(to) >= r)
            throw ValidationError("transition refers to a missing state");
        if (letter < 0 || static_cast<std::size_t>(letter) >= a.alphabet.size()) throw ValidationError("transition letter out of range");
        s.mu[static_cast<std::size_t>(letter)].set(static_cast<std::size_t>(from), static_cast<std::size_t>(to), val);
    }
    s.validate();
    return s;
}

namespace detail {
inline void require_compatible(const LinRep& s, const LinRep& t) {
    if (!(s.sr == t.sr)) throw ValidationError("semiring mismatch: " + s.sr.name() + " vs " + t.sr.name());
    if (!(s.alphabet == t.alphabet)) throw ValidationError("alphabet mismatch between series");
}
}  // namespace detail

inline LinRep add_series(const LinRep& s, const LinRep& t) {
    detail::require_compatible(s, t);
    LinRep out{s.sr, s.alphabet, Matrix(s.sr, 1, s.dim() + t.dim()), {}, Matrix(s.sr, s.dim() + t.dim(), 1)};
    for (std::size_t i = 0; i < s.dim(); ++i) {
        out.lambda.set(0, i, s.lambda.at(0, i));
        out.gamma.set(i, 0, s.gamma.at(i, 0));
    }
    for (std::size_t i = 0; i < t.dim(); ++i) {
        out.lambda.set(0, s.dim() + i, t.lambda.at(0, i));
        out.gamma.set(s.dim() + i, 0, t.gamma.at(i, 0));
    }
    for (std::size_t l = 0; l < s.mu.size(); ++l) out.mu.push_back(direct_sum(s.mu[l], t.mu[l]));
    return out;
}

inline LinRep scalar_mul(const Value& k, const LinRep& s) {
    LinRep out = s;
    out.lambda = mat_scalar(k, s.lambda);
    return out;
}

inline LinRep hadamard(const LinRep& s, const LinRep& t) {
    detail::require_compatible(s, t);
    LinRep out{s.sr, s.alphabet, kronecker(s.lambda, t.lambda), {}, kronecker(s.gamma, t.gamma)};
    for (std::size_t l = 0; l < s.mu.size(); ++l) out.mu.push_back(kronecker(s.mu[l], t.mu[l]));
    return out;
}

// Characteristic series of a DFA language with 0/1 of the target semiring.
inline LinRep char_series(const Dfa& d0, const Semiring& sr) {
    Dfa d = trim(d0);
    if (d.size() == 0) return zero_series(sr, d0.alphabet());
    std::size_t r = d.size();
    LinRep s{sr, d.alphabet(), Matrix(sr, 1, r), std::vector<Matrix>(d.letters(), Matrix(sr, r, r)), Matrix(sr, r, 1)};
    s.lambda.set(0, static_cast<std::size_t>(d.initial()), sr.one());
    for (std::size_t q = 0; q < r; ++q) {
        if (d.is_final(static_cast<int>(q))) s.gamma.set(q, 0, sr.one());
        for (std::size_t a = 0; a < d.letters(); ++a) {
            int to = d.next(static_cast<int>(q), static_cast<int>(a));
            if (to >= 0) s.mu[a].set(q, static_cast<std::size_t>(to), sr.one());
        }
    }
    return s;
}

// S u^{-1}: coefficient on w is the coefficient of S on wu.
inline LinRep right_quotient_series(const LinRep& s, const LetterWord& u) {
    LinRep out = s;
    out.gamma = Matrix::column(s.sr, s.column_after(u));
    return out;
}

// Finitely supported series from a word -> coefficient table (trie states).
inline LinRep polynomial(const Semiring& sr, const Alphabet& alphabet, const std::map<LetterWord, Value>& terms) {
    std::map<LetterWord, std::size_t> node{{LetterWord{}, 0}};
    for (const auto& [w, v] : terms) {
        sr.check(v);
        LetterWord prefix;
        for (int a : w) {
            if (a < 0 || static_cast<std::size_t>(a) >= alphabet.size()) throw ValidationError("letter index out of range");
            prefix.push_back(a);
            node.emplace(prefix, node.size());
        }
    }
    std::size_t r = node.size();
    LinRep s{sr, alphabet, Matrix(sr, 1, r), std::vector<Matrix>(alphabet.size(), Matrix(sr, r, r)), Matrix(sr, r, 1)};
    s.lambda.set(0, 0, sr.one());
    for (const auto& [w, idx] : node) {
        if (!w.empty()) {
            LetterWord parent(w.begin(), w.end() - 1);
            s.mu[static_cast<std::size_t>(w.back())].set(node.at(parent), idx, sr.one());
        }
        auto it = terms.find(w);
        if (it != terms.end()) s.gamma.set(idx, 0, it->second);
    }
    return s;
}

// Image of every entry under the canonical map into another semiring.
inline Value convert_value(const Value& v, const Semiring& from, const Semiring& to) {
    if (from == to) return v;
    if (v.is_inf()) {
        if (to.kind() != SemiringKind::NatInf) throw ValidationError("infinite value has no image in " + to.name());
        return v;
    }
    if (!v.is_integer()) {
        if (to.kind() != SemiringKind::Rat) throw ValidationError("non-integer value has no image in " + to.name());
        return v;
    }
    return to.from_int(v.num());
}

inline Matrix convert_matrix(const Matrix& m, const Semiring& to) {
    Matrix out(to, m.rows(), m.cols());
    for (std::size_t i = 0; i < m.data().size(); ++i) out.data()[i] = convert_value(m.data()[i], m.semiring(), to);
    return out;
}

inline LinRep change_semiring(const LinRep& s, const Semiring& to) {
    LinRep out{to, s.alphabet, convert_matrix(s.lambda, to), {}, convert_matrix(s.gamma, to)};
    for (const Matrix& m : s.mu) out.mu.push_back(convert_matrix(m, to));
    return out;
}

// Re-expresses s over a target alphabet: known letters keep their matrix,
// new letters get the zero matrix. Letters of s missing from the target are
// dropped.
inline LinRep reindex_series(const LinRep& s, const Alphabet& target) {
    LinRep out{s.sr, target, s.lambda, {}, s.gamma};
    for (const Letter& l : target.letters()) {
        int i = s.alphabet.index_of(l);
        out.mu.push_back(i >= 0 ? s.mu[static_cast<std::size_t>(i)] : Matrix(s.sr, s.dim(), s.dim()));
    }
    return out;
}

namespace detail {

// Row-echelon basis over Q kept alongside the words that produced each vector.
class RationalBasis {
public:
    // Returns true when v is independent of the current basis (and adds it).
    bool insert(Vec v) {
        for (const auto& [pivot, row] : rows_) {
            if (v[pivot].is_zero()) continue;
            BigRat factor = v[pivot].to_rat() / row[pivot].to_rat();
            for (std::size_t j = 0; j < v.size(); ++j)
                if (!row[j].is_zero()) v[j] = Value::rational(v[j].to_rat() - factor * row[j].to_rat());
        }
        for (std::size_t j = 0; j < v.size(); ++j)
            if (!v[j].is_zero()) {
                rows_.emplace_back(j, std::move(v));
                return true;
            }
        return false;
    }
    std::size_t rank() const { return rows_.size(); }

private:
    std::vector<std::pair<std::size_t, Vec>> rows_;
};

}  // namespace detail

struct EqualityResult {
    bool equal = true;
    std::optional<LetterWord> witness;  // a word with differing coefficients
};

inline EqualityResult series_equal(const LinRep& s0, const LinRep& t0, std::size_t budget = budget_from_env()) {
    detail::require_compatible(s0, t0);
    const Semiring& sr = s0.sr;
    if (sr.kind() == SemiringKind::NatInf)
        throw PreconditionError("series equality is not supported over NatInf; convert to Nat first");
    EqualityResult result;
    if (sr.embeds_in_rationals()) {
        Semiring q = Semiring::rationals();
        LinRep s = change_semiring(s0, q), t = change_semiring(t0, q);
        LinRep diff = add_series(s, scalar_mul(Value(-1), t));
        detail::RationalBasis basis;
        std::deque<std::pair<LetterWord, Vec>> queue;
        auto visit = [&](LetterWord w, Vec v) {
            if (!dot(q, v, diff.gamma.data()).is_zero()) {
                result.equal = false;
                result.witness = w;
                return false;
            }
            if (basis.insert(v)) queue.emplace_back(std::move(w), std::move(v));
            return true;
        };
        if (!visit({}, diff.lambda.data())) return result;
        while (!queue.empty()) {
            auto [w, v] = std::move(queue.front());
            queue.pop_front();
            for (std::size_t a = 0; a < diff.mu.size(); ++a) {
                LetterWord wa = w;
                wa.push_back(static_cast<int>(a));
                if (!visit(std::move(wa), vec_mat(q, v, diff.mu[a]))) return result;
            }
        }
        return result;
    }
    // Finite semiring: explore reachable pairs of row vectors.
    std::map<Vec, int> seen;
    std::deque<std::tuple<LetterWord, Vec, Vec>> queue;
    auto key_of = [](const Vec& x, const Vec& y) {
        Vec k = x;
        k.insert(k.end(), y.begin(), y.end());
        return k;
    };
    auto visit = [&](LetterWord w, Vec x, Vec y) {
        if (!(dot(sr, x, s0.gamma.data()) == dot(sr, y, t0.gamma.data()))) {
            result.equal = false;
            result.witness = w;
            return false;
        }
        if (seen.emplace(key_of(x, y), 0).second) {
            if (seen.size() > budget) throw PreconditionError("series equality exceeded budget of " + std::to_string(budget) + " configurations");
            queue.emplace_back(std::move(w), std::move(x), std::move(y));
        }
        return true;
    };
    if (!visit({}, s0.lambda.data(), t0.lambda.data())) return result;
    while (!queue.empty()) {
        auto [w, x, y] = std::move(queue.front());
        queue.pop_front();
        for (std::size_t a = 0; a < s0.mu.size(); ++a) {
            LetterWord wa = w;
            wa.push_back(static_cast<int>(a));
            if (!visit(std::move(wa), vec_mat(sr, x, s0.mu[a]), vec_mat(sr, y, t0.mu[a]))) return result;
        }
    }
    return result;
}

// DFA of { w : (S, w) = k }, exploring the finite set of row vectors lambda mu(w).
inline Dfa fiber_language(const LinRep& s, const Value& k, std::size_t bound = budget_from_env()) {
    s.sr.check(k);
    Dfa d(s.alphabet);
    std::map<Vec, int> index;
    std::vector<Vec> rows;
    auto intern = [&](Vec v) {
        auto it = index.find(v);
        if (it != index.end()) return it->second;
        if (rows.size() >= bound) throw PreconditionError("image not verified finite within bound " + std::to_string(bound));
        int q = d.add_state(dot(s.sr, v, s.gamma.data()) == k);
        index.emplace(v, q);
        rows.push_back(std::move(v));
        return q;
    };
    d.set_initial(intern(s.lambda.data()));
    for (std::size_t q = 0; q < rows.size(); ++q)
        for (std::size_t a = 0; a < s.mu.size(); ++a) {
            int to = intern(vec_mat(s.sr, rows[q], s.mu[a]));
            d.set_next(static_cast<int>(q), static_cast<int>(a), to);
        }
    return minimize(d);
}

}  // namespace anskit

#pragma once

// Deterministic finite automata with output over a multidimensional ANS.

#include <map>
#include <set>

#include "anskit/numeration.hpp"
#include "anskit/semiring.hpp"

namespace anskit {

class Dfao {
public:
    Dfao() = default;
    Dfao(MultiAns multi, Semiring sr) : multi_(std::move(multi)), sr_(std::move(sr)) {}

    const MultiAns& multi() const { return multi_; }
    const Alphabet& alphabet() const { return multi_.alphabet(); }
    const Semiring& semiring() const { return sr_; }
    std::size_t size() const { return outputs_.size(); }
    std::size_t letters() const { return alphabet().size(); }

    int add_state(Value out) {
        sr_.check(out);
        outputs_.push_back(std::move(out));
        delta_.resize(delta_.size() + letters(), -1);
        return static_cast<int>(outputs_.size()) - 1;
    }
    int initial() const { return initial_; }
    void set_initial(int q) { initial_ = q; }
    const Value& output(int q) const { return outputs_[static_cast<std::size_t>(q)]; }
    void set_output(int q, Value v) {
        sr_.check(v);
        outputs_[static_cast<std::size_t>(q)] = std::move(v);
    }
    int next(int q, int a) const { return delta_[static_cast<std::size_t>(q) * letters() + static_cast<std::size_t>(a)]; }
    void set_next(int q, int a, int to) { delta_[static_cast<std::size_t>(q) * letters() + static_cast<std::size_t>(a)] = to; }

    // Undefined transitions lead to an implicit sink with output 0.
    Value run(const LetterWord& w) const {
        int q = initial_;
        for (int a : w) {
            q = next(q, a);
            if (q < 0) return sr_.zero();
        }
        return output(q);
    }
    Value eval(const std::vector<BigInt>& n) const { return run(multi_.rep(n)); }

    bool is_complete() const {
        return std::all_of(delta_.begin(), delta_.end(), [](int t) { return t >= 0; });
    }
    // Makes delta total by adding a sink with output 0 when needed.
    Dfao completed() const {
        if (is_complete() && size() > 0) return *this;
        Dfao out = *this;
        if (out.size() == 0) out.set_initial(out.add_state(sr_.zero()));
        int sink = out.add_state(sr_.zero());
        for (std::size_t i = 0; i < out.delta_.size(); ++i)
            if (out.delta_[i] < 0) out.delta_[i] = sink;
        return out;
    }

    std::set<Value> output_alphabet() const { return {outputs_.begin(), outputs_.end()}; }

    // Underlying automaton whose final states are those with the given output.
    Dfa with_finals(const Value& k) const {
        Dfa d(alphabet());
        for (std::size_t q = 0; q < size(); ++q) d.add_state(outputs_[q] == k);
        d.set_initial(initial_);
        for (std::size_t q = 0; q < size(); ++q)
            for (std::size_t a = 0; a < letters(); ++a) d.set_next(static_cast<int>(q), static_cast<int>(a), next(static_cast<int>(q), static_cast<int>(a)));
        return d;
    }

    // States from which only the output 0 is reachable (the implicit sink
    // included) do not count as live.
    std::size_t live_size() const {
        std::vector<char> live(size(), 0);
        for (std::size_t q = 0; q < size(); ++q) live[q] = !outputs_[q].is_zero();
        bool changed = true;
        while (changed) {
            changed = false;
            for (std::size_t q = 0; q < size(); ++q) {
                if (live[q]) continue;
                for (std::size_t a = 0; a < letters(); ++a) {
                    int t = next(static_cast<int>(q), static_cast<int>(a));
                    if (t >= 0 && live[static_cast<std::size_t>(t)]) {
                        live[q] = 1;
                        changed = true;
                        break;
                    }
                }
            }
        }
        return static_cast<std::size_t>(std::count(live.begin(), live.end(), 1));
    }

private:
    MultiAns multi_;
    Semiring sr_;
    int initial_ = 0;
    Vec outputs_;
    std::vector<int> delta_;
};

// Moore minimization on outputs; the result is complete, reachable and minimal.
inline Dfao minimize_dfao(const Dfao& a0) {
    Dfao a = a0.completed();
    // Reachable states in BFS order.
    std::vector<int> order{a.initial()}, index(a.size(), -1);
    index[static_cast<std::size_t>(a.initial())] = 0;
    for (std::size_t i = 0; i < order.size(); ++i)
        for (std::size_t l = 0; l < a.letters(); ++l) {
            int t = a.next(order[i], static_cast<int>(l));
            if (index[static_cast<std::size_t>(t)] < 0) {
                index[static_cast<std::size_t>(t)] = static_cast<int>(order.size());
                order.push_back(t);
            }
        }
    Dfa shape(a.alphabet());
    std::map<Value, int> out_class;
    std::vector<int> cls;
    for (int q : order) {
        shape.add_state(false);
        cls.push_back(out_class.emplace(a.output(q), static_cast<int>(out_class.size())).first->second);
    }
    for (std::size_t i = 0; i < order.size(); ++i)
        for (std::size_t l = 0; l < a.letters(); ++l)
            shape.set_next(static_cast<int>(i), static_cast<int>(l), index[static_cast<std::size_t>(a.next(order[i], static_cast<int>(l)))]);
    cls = refine_partition(shape, cls);
    // Renumber classes in BFS order from the initial class.
    std::map<int, int> renum;
    for (int c : cls) renum.emplace(c, static_cast<int>(renum.size()));
    std::vector<int> first_of(renum.size(), -1);
    for (std::size_t i = 0; i < cls.size(); ++i) {
        int c = renum.at(cls[i]);
        if (first_of[static_cast<std::size_t>(c)] < 0) first_of[static_cast<std::size_t>(c)] = static_cast<int>(i);
    }
    Dfao out(a.multi(), a.semiring());
    for (std::size_t c = 0; c < first_of.size(); ++c) out.add_state(a.output(order[static_cast<std::size_t>(first_of[c])]));
    for (std::size_t c = 0; c < first_of.size(); ++c)
        for (std::size_t l = 0; l < a.letters(); ++l)
            out.set_next(static_cast<int>(c), static_cast<int>(l), renum.at(cls[static_cast<std::size_t>(shape.next(first_of[c], static_cast<int>(l)))]));
    out.set_initial(renum.at(cls[0]));
    return out;
}

// Output 0 on every word outside the numeration language.
inline Dfao complete_with_zero(const Dfao& a0) {
    Dfao a = a0.completed();
    Dfa lang = complete(minimize(a.multi().language()));
    Dfao out(a.multi(), a.semiring());
    std::map<std::pair<int, int>, int> index;
    std::vector<std::pair<int, int>> pairs;
    auto intern = [&](int p, int q) {
        auto [it, fresh] = index.emplace(std::make_pair(p, q), static_cast<int>(pairs.size()));
        if (fresh) {
            pairs.emplace_back(p, q);
            out.add_state(lang.is_final(q) ? a.output(p) : a.semiring().zero());
        }
        return it->second;
    };
    out.set_initial(intern(a.initial(), lang.initial()));
    for (std::size_t i = 0; i < pairs.size(); ++i)
        for (std::size_t l = 0; l < a.letters(); ++l) {
            auto [p, q] = pairs[i];
            int t = intern(a.next(p, static_cast<int>(l)), lang.next(q, static_cast<int>(l)));
            out.set_next(static_cast<int>(i), static_cast<int>(l), t);
        }
    return out;
}

// DFAO reading w with the output of the original on the mirror image of w.
// A state is the output table q -> output(delta(q, u)) for the word u read so far, mirrored.
inline Dfao reverse_dfao(const Dfao& a0, std::size_t budget = budget_from_env()) {
    Dfao a = a0.completed();
    Dfao out(a.multi(), a.semiring());
    std::map<Vec, int> index;
    std::vector<Vec> tables;
    auto intern = [&](Vec t) {
        auto it = index.find(t);
        if (it != index.end()) return it->second;
        if (tables.size() >= budget) throw PreconditionError("reversal exceeded budget of " + std::to_string(budget) + " states");
        int q = out.add_state(t[static_cast<std::size_t>(a.initial())]);
        index.emplace(t, q);
        tables.push_back(std::move(t));
        return q;
    };
    Vec start;
    for (std::size_t q = 0; q < a.size(); ++q) start.push_back(a.output(static_cast<int>(q)));
    out.set_initial(intern(start));
    for (std::size_t i = 0; i < tables.size(); ++i)
        for (std::size_t l = 0; l < a.letters(); ++l) {
            Vec t(a.size());
            for (std::size_t q = 0; q < a.size(); ++q)
                t[q] = tables[i][static_cast<std::size_t>(a.next(static_cast<int>(q), static_cast<int>(l)))];
            out.set_next(static_cast<int>(i), static_cast<int>(l), intern(std::move(t)));
        }
    return out;
}

// Fiber DFAs rep(f^{-1}(k)) for every output k (restricted to the language).
inline std::map<Value, Dfa> dfao_fibers(const Dfao& a0) {
    Dfao a = a0.completed();
    std::map<Value, Dfa> out;
    const Dfa& lang = a.multi().language();
    for (const Value& k : a.output_alphabet()) out.emplace(k, minimize(intersect(a.with_finals(k), lang)));
    return out;
}

}  // namespace anskit

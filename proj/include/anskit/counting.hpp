#pragma once

// Counting sequences n -> Card{n' : (n, n') in X} and the factor-complexity
// and recurrence pipelines built on them.

#include "anskit/logic.hpp"
#include "anskit/regular.hpp"

namespace anskit {

struct CountingSeries {
    MultiAns multi;  // system of the kept blocks
    LinRep series;   // over NatInf, zero off the numeration language
    std::vector<int> infinite_states;  // states with infinitely many leading-padding paths

    Value eval(const std::vector<BigInt>& n) const { return series.coeff(multi.rep(n)); }
};

// Counts, for each value of the first `kept` blocks, the accepted completions.
// Letters that are padding on every kept tape can only occur as a prefix of an
// accepted word; they are folded into the initial vector.
inline CountingSeries count_projection(const Predicate& x, std::size_t kept) {
    if (kept == 0 || kept >= x.arity()) throw ValidationError("must keep between 1 and arity-1 blocks");
    std::vector<MultiAns> first_blocks(x.blocks().begin(), x.blocks().begin() + static_cast<long>(kept));
    MultiAns first = concat_blocks(first_blocks);
    std::vector<std::size_t> keep(first.dim());
    std::iota(keep.begin(), keep.end(), 0);
    const Dfa d = trim(x.dfa());
    const std::size_t n = d.size();
    const Semiring sr = Semiring::nat_inf();
    const Alphabet& alpha = first.alphabet();

    std::vector<Matrix> mu(alpha.size(), Matrix(sr, n, n));
    std::vector<std::vector<int>> eps(n);
    for (std::size_t q = 0; q < n; ++q)
        for (std::size_t l = 0; l < d.letters(); ++l) {
            int t = d.next(static_cast<int>(q), static_cast<int>(l));
            if (t < 0) continue;
            Letter r = restrict_letter(d.alphabet()[l], keep);
            if (is_all(r, kPad)) {
                eps[q].push_back(t);
                continue;
            }
            Matrix& m = mu[static_cast<std::size_t>(alpha.require(r))];
            m.set(q, static_cast<std::size_t>(t), sr.add(m.at(q, static_cast<std::size_t>(t)), Value(1)));
        }

    // Padding paths from the initial state: counted exactly on the acyclic
    // part, infinite past any cycle.
    std::vector<int> reach{d.initial()};
    std::vector<char> seen(n, 0);
    seen[static_cast<std::size_t>(d.initial())] = 1;
    for (std::size_t i = 0; i < reach.size(); ++i)
        for (int t : eps[static_cast<std::size_t>(reach[i])])
            if (!seen[static_cast<std::size_t>(t)]) {
                seen[static_cast<std::size_t>(t)] = 1;
                reach.push_back(t);
            }
    // Kahn's algorithm on the reachable padding subgraph; leftovers lie on or after a cycle.
    std::vector<int> indeg(n, 0);
    for (int q : reach)
        for (int t : eps[static_cast<std::size_t>(q)]) ++indeg[static_cast<std::size_t>(t)];
    std::vector<int> order;
    for (int q : reach)
        if (indeg[static_cast<std::size_t>(q)] == 0) order.push_back(q);
    for (std::size_t i = 0; i < order.size(); ++i)
        for (int t : eps[static_cast<std::size_t>(order[i])])
            if (--indeg[static_cast<std::size_t>(t)] == 0) order.push_back(t);
    std::vector<char> finite(n, 0);
    for (int q : order) finite[static_cast<std::size_t>(q)] = 1;
    Vec lambda(n, Value(0));
    lambda[static_cast<std::size_t>(d.initial())] = Value(1);
    for (int q : order)
        for (int t : eps[static_cast<std::size_t>(q)])
            if (finite[static_cast<std::size_t>(t)])
                lambda[static_cast<std::size_t>(t)] = sr.add(lambda[static_cast<std::size_t>(t)], lambda[static_cast<std::size_t>(q)]);
    CountingSeries out;
    for (int q : reach)
        if (!finite[static_cast<std::size_t>(q)]) {
            lambda[static_cast<std::size_t>(q)] = Value::infinity();
            out.infinite_states.push_back(q);
        }
    Vec gamma(n);
    for (std::size_t q = 0; q < n; ++q) gamma[q] = Value(d.is_final(static_cast<int>(q)) ? 1 : 0);
    LinRep s{sr, alpha, Matrix::row(sr, lambda), std::move(mu), Matrix::column(sr, gamma)};
    out.multi = first;
    out.series = hadamard(s, char_series(first.language(), sr));
    return out;
}

// The same coefficients over N; fails when some count is infinite.
inline RegularSequence demote_to_nat(const CountingSeries& c) {
    if (!c.infinite_states.empty())
        throw PreconditionError("counting series has infinite coefficients: padding cycle through state " +
                                std::to_string(c.infinite_states.front()));
    return {c.multi, change_semiring(c.series, Semiring::nat())};
}

// x + y = z componentwise, for blocks whose components are integer bases.
inline Predicate block_adder(const MultiAns& block) {
    const std::size_t d = block.dim();
    MultiAns triple = block.power(3);
    std::vector<Predicate> parts;
    std::vector<TapeGroup> groups;
    parts.reserve(d);
    for (std::size_t i = 0; i < d; ++i) {
        const std::string& name = block.system(i).name();
        if (name.rfind("base:", 0) != 0) throw PreconditionError("no addition automaton for the system '" + name + "'");
        parts.push_back(adder(static_cast<unsigned>(std::stoul(name.substr(5)))));
    }
    for (std::size_t i = 0; i < d; ++i) groups.push_back({&parts[i].dfa(), {i, d + i, 2 * d + i}});
    return Predicate({block, block, block}, padded_join(triple.alphabet(), groups, kPad));
}

namespace detail {

inline PredicateLibrary sequence_library(const Dfao& a, const Predicate& add, const EnumOrder& e) {
    const MultiAns& block = a.multi();
    PredicateLibrary lib;
    lib.emplace("lt", less_predicate(block));
    lib.emplace("eq", equality_predicate(block));
    lib.emplace("add", add);
    lib.emplace("same", seq_equality_predicate(a));
    lib.emplace("before", enum_order_predicate(e, OrderRel::Lt));
    return lib;
}

}  // namespace detail

// rho(s) = Card{p : every p' earlier in the enumeration order has f[p', s] != f[p, s]}.
inline RegularSequence factor_complexity(const Dfao& a, const Predicate& add, const EnumOrder& e) {
    const MultiAns& block = a.multi();
    if (!(e.multi() == block)) throw ValidationError("enumeration order over another system");
    FormulaCompiler fc(block, detail::sequence_library(a, add, e));
    const std::string text =
        "(forall q (implies (before q p)"
        " (exists i (and (lt i s) (exists u (exists v (and (add q i u) (add p i v) (not (same u v)))))))))";
    CompiledFormula c = fc.compile(text, {"s", "p"});
    return demote_to_nat(count_projection(*c.predicate, 1));
}
inline RegularSequence factor_complexity(const Dfao& a) {
    return factor_complexity(a, block_adder(a.multi()), EnumOrder::lex(a.multi()));
}

// R(s) = Card{l : some window of length l misses some factor of length s}; one-dimensional.
inline CountingSeries recurrence_function(const Dfao& a, const Predicate& add) {
    const MultiAns& block = a.multi();
    if (block.dim() != 1) throw PreconditionError("recurrence_function is implemented for one-dimensional sequences");
    FormulaCompiler fc(block, detail::sequence_library(a, add, EnumOrder::lex(block)));
    // A window at p of length l contains the factor at q iff some k with k + s <= l has f[p+k, s] = f[q, s].
    const std::string text =
        "(exists p (exists q (forall k (implies (exists t (and (add k s t) (or (lt t l) (eq t l))))"
        " (exists i (and (lt i s) (exists u (and (add p k u) (exists w (exists v"
        " (and (add u i w) (add q i v) (not (same w v)))))))))))))";
    CompiledFormula c = fc.compile(text, {"s", "l"});
    return count_projection(*c.predicate, 1);
}
inline CountingSeries recurrence_function(const Dfao& a) { return recurrence_function(a, block_adder(a.multi())); }

}  // namespace anskit

#pragma once

// Regular sequences with a finite kernel as DFAOs.

#include "anskit/regular.hpp"

namespace anskit {

struct KernelDfao {
    Dfao dfao;                 // minimized forward DFAO
    std::size_t raw_states;  // states of the reversed kernel machine before reversal and minimization
};

// States of the reversed machine are pairs (L w^{-1}, f o w) where the first
// component is the set of states of the minimal automaton of L from which w
// leads to acceptance, and the second is mu(w) gamma up to observational
// equivalence. Reading a prepends a letter to w.
inline KernelDfao kernel_to_dfao_report(const RegularSequence& f, std::size_t budget = budget_from_env()) {
    require_prefix_closed(f.multi);
    const LinRep& s = f.series;
    if (s.sr.kind() == SemiringKind::Nat || s.sr.kind() == SemiringKind::NatInf)
        throw PreconditionError("kernel_to_dfao needs a ring or a finite semiring, got " + s.sr.name());
    Dfa lang = complete(minimize(f.multi.language()));
    const std::size_t nq = lang.size(), letters = f.multi.alphabet().size();
    detail::Observer obs(s, budget);

    using Key = std::pair<std::vector<char>, Vec>;
    std::map<Key, int> index;
    std::vector<std::pair<std::vector<char>, Vec>> states;  // (quotient, column vector)
    Dfao rev(f.multi, s.sr);
    auto intern = [&](std::vector<char> quot, Vec x) {
        Key key{quot, obs.signature(x)};
        auto it = index.find(key);
        if (it != index.end()) return it->second;
        if (states.size() >= budget)
            throw PreconditionError("kernel not finite within budget of " + std::to_string(budget) + " states");
        Value out = quot[static_cast<std::size_t>(lang.initial())] ? dot(s.sr, s.lambda.data(), x) : s.sr.zero();
        int id = rev.add_state(std::move(out));
        index.emplace(std::move(key), id);
        states.emplace_back(std::move(quot), std::move(x));
        return id;
    };
    std::vector<char> start(nq);
    for (std::size_t q = 0; q < nq; ++q) start[q] = lang.is_final(static_cast<int>(q));
    rev.set_initial(intern(start, s.gamma.data()));
    for (std::size_t i = 0; i < states.size(); ++i)
        for (std::size_t a = 0; a < letters; ++a) {
            std::vector<char> quot(nq);
            for (std::size_t q = 0; q < nq; ++q)
                quot[q] = states[i].first[static_cast<std::size_t>(lang.next(static_cast<int>(q), static_cast<int>(a)))];
            Vec x = mat_vec(s.sr, s.mu[a], states[i].second);
            rev.set_next(static_cast<int>(i), static_cast<int>(a), intern(std::move(quot), std::move(x)));
        }
    std::size_t raw = rev.size();
    return {minimize_dfao(reverse_dfao(rev, budget)), raw};
}

inline Dfao kernel_to_dfao(const RegularSequence& f, std::size_t budget = budget_from_env()) {
    return kernel_to_dfao_report(f, budget).dfao;
}

// f mod m through the representation reduced modulo m.
inline KernelDfao mod_m_report(const RegularSequence& f, const BigInt& m, std::size_t budget = budget_from_env()) {
    if (m < 2) throw ValidationError("modulus must be at least 2");
    SemiringKind k = f.semiring().kind();
    if (k != SemiringKind::Int && k != SemiringKind::Nat)
        throw ValidationError("mod_m expects an integer-valued sequence, got " + f.semiring().name());
    return kernel_to_dfao_report(change_semiring(f, Semiring::modular(m)), budget);
}
inline Dfao mod_m(const RegularSequence& f, const BigInt& m, std::size_t budget = budget_from_env()) {
    return mod_m_report(f, m, budget).dfao;
}

}  // namespace anskit

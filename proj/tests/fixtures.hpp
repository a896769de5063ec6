#pragma once

// Running two-dimensional example shared by several suites.

#include "anskit/synchronized.hpp"
#include "fixtures_automata.hpp"

namespace fixture {

using namespace anskit;

// Builds the tuple word whose i-th component is texts[i] (one char per symbol).
inline Word tuple_word(const std::vector<std::string>& texts) {
    std::size_t len = texts.empty() ? 0 : texts.front().size();
    Word w(len);
    for (std::size_t p = 0; p < len; ++p)
        for (const std::string& t : texts) w[p].push_back(std::string(1, t.at(p)));
    return w;
}

inline LetterWord pair_word(const std::string& top, const std::string& bottom) {
    return ab_pair().alphabet().encode(tuple_word({top, bottom}));
}

// Longest common suffix of the two components, as a two-state representation.
inline LinRep suffix_series(const Semiring& sr = Semiring::nat()) {
    Alphabet alpha = ab_pair().alphabet();
    Matrix same(sr, 2, 2), other(sr, 2, 2);
    same.set(0, 0, sr.one());
    same.set(1, 0, sr.one());
    same.set(1, 1, sr.one());
    other.set(1, 1, sr.one());
    LinRep s{sr, alpha, Matrix::row(sr, {sr.zero(), sr.one()}), {}, Matrix::column(sr, {sr.one(), sr.zero()})};
    for (const Letter& l : alpha.letters()) s.mu.push_back(l[0] == l[1] ? same : other);
    return s;
}

// The all-ones series.
inline LinRep ones_series(const Semiring& sr = Semiring::nat()) { return char_series(universal_dfa(ab_pair().alphabet()), sr); }

// Two-state automaton: T initial with a loop on every letter, S final with
// loops on matching letters, T -> S on matching letters.
inline WeightedAutomaton suffix_automaton() {
    Alphabet alpha = ab_pair().alphabet();
    WeightedAutomaton a{Semiring::nat(), alpha, {}, {}, {}};
    int t = a.add_state(Value(1), Value(0));
    int s = a.add_state(Value(0), Value(1));
    for (std::size_t l = 0; l < alpha.size(); ++l) {
        int letter = static_cast<int>(l);
        a.add_edge(t, letter, t, Value(1));
        if (alpha[l][0] == alpha[l][1]) {
            a.add_edge(t, letter, s, Value(1));
            a.add_edge(s, letter, s, Value(1));
        }
    }
    return a;
}

// The common-suffix sequence f as a regular sequence.
inline RegularSequence suffix_sequence(const Semiring& sr = Semiring::nat()) { return RegularSequence::from_series(ab_pair(), suffix_series(sr)); }

// Hand-built DFAO generating f mod m: seven bookkeeping states and two
// counters modulo m (runs of (a,a) and of (b,b)).
inline Dfao mod_figure_dfao(unsigned m) {
    Dfao d(ab_pair(), Semiring::modular(m));
    const Alphabet& alpha = d.alphabet();
    enum { Init, DiezA, ADiez, DiezB, AB, BDiez, BA, Fixed };
    for (int i = 0; i < Fixed; ++i) d.add_state(Value(0));
    std::vector<int> aa(m), bb(m);
    for (unsigned k = 0; k < m; ++k) aa[k] = d.add_state(Value(k));
    for (unsigned k = 0; k < m; ++k) bb[k] = d.add_state(Value(k));
    auto on = [&](int from, const char* top, const char* bottom, int to) { d.set_next(from, alpha.require({top, bottom}), to); };
    for (int q : {Init, DiezA, ADiez}) {
        on(q, "a", "a", aa[1 % m]);
        on(q, "a", "b", AB);
        on(q, "b", "a", BA);
    }
    for (int q : {Init, DiezA, ADiez, DiezB, AB, BDiez, BA}) on(q, "b", "b", bb[1 % m]);
    on(Init, "#", "a", DiezA);
    on(Init, "a", "#", ADiez);
    on(Init, "#", "b", DiezB);
    on(Init, "b", "#", BDiez);
    on(DiezA, "#", "a", DiezA);
    on(DiezA, "#", "b", DiezB);
    on(ADiez, "a", "#", ADiez);
    on(ADiez, "b", "#", BDiez);
    on(DiezB, "#", "b", DiezB);
    on(DiezB, "a", "b", AB);
    on(AB, "a", "b", AB);
    on(BDiez, "b", "#", BDiez);
    on(BDiez, "b", "a", BA);
    on(BA, "b", "a", BA);
    for (unsigned k = 0; k < m; ++k) {
        on(aa[k], "a", "a", aa[(k + 1) % m]);
        on(aa[k], "b", "b", bb[(k + 1) % m]);
        on(aa[k], "a", "b", AB);
        on(aa[k], "b", "a", BA);
        on(bb[k], "b", "b", bb[(k + 1) % m]);
    }
    d.set_initial(Init);
    return d;
}

enum class Slice { Zero, APower, All };

// Characteristic sequence of X1 x X2 with X in {{0}, val(a*), N}.
inline RegularSequence product_indicator(Slice x1, Slice x2, const Semiring& sr = Semiring::nat()) {
    MultiAns multi = ab_pair();
    Alphabet single = Ans::ab_star().alphabet();
    auto slice_dfa = [&](Slice x) {
        switch (x) {
            case Slice::Zero: return words_dfa(single, {LetterWord{}});
            case Slice::APower: {
                Dfa d(single);
                d.set_initial(d.add_state(true));
                d.set_next(0, single.require({"a"}), 0);
                return d;
            }
            default: return Ans::ab_star().dfa();
        }
    };
    Dfa d1 = slice_dfa(x1), d2 = slice_dfa(x2);
    Dfa joined = intersect(padded_join(multi.alphabet(), {{&d1, {0}}, {&d2, {1}}}, kPad), multi.language());
    return {multi, char_series(joined, sr)};
}

// Thue-Morse in base 2: parity of the binary digit sum.
inline Dfao thue_morse_dfao(const Semiring& sr = Semiring::integers()) {
    MultiAns multi(Ans::integer_base(2), 1);
    Dfao d(multi, sr);
    int even = d.add_state(Value(0)), odd = d.add_state(Value(1));
    int zero = multi.alphabet().require({"0"}), one = multi.alphabet().require({"1"});
    d.set_next(even, zero, even);
    d.set_next(even, one, odd);
    d.set_next(odd, zero, odd);
    d.set_next(odd, one, even);
    d.set_initial(even);
    return d;
}

// Length relation ||u| - |v|| <= 1 on the running two-dimensional alphabet.
inline SyncRelation length_relation() {
    Alphabet a = ab_pair().alphabet();
    Alphabet alpha = relation_alphabet(a, a);
    Dfa d(alpha);
    int start = d.add_state(true), body = d.add_state(true);
    d.set_initial(start);
    for (std::size_t l = 0; l < alpha.size(); ++l) {
        bool padded = std::count(alpha[l].begin(), alpha[l].end(), kRelPad) > 0;
        d.set_next(start, static_cast<int>(l), body);
        if (!padded) d.set_next(body, static_cast<int>(l), body);
    }
    return make_relation(a, a, d);
}

// Common-suffix sequence with unary output.
inline SyncSequence suffix_sync() { return make_sequence(ab_pair(), MultiAns(Ans::unary(), 1), suffix_graph_dfa()); }

}  // namespace fixture

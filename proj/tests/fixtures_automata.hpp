#pragma once

// Hand-built automata of the running two-dimensional example.

#include "anskit/numeration.hpp"

namespace fixture {

using namespace anskit;

inline MultiAns ab_pair() { return MultiAns(Ans::ab_star(), 2); }

// Graph of the common-suffix sequence with unary third tape c^{f(m,n)}.
inline Dfa suffix_graph_dfa() {
    MultiAns space(std::vector<Ans>{Ans::ab_star(), Ans::ab_star(), Ans::unary()});
    Dfa d(space.alphabet());
    enum { Init, DiezA, ADiez, DiezB, AB, BDiez, BA, AAWait, AA, BB, Count };
    for (int i = 0; i < Count; ++i) d.add_state(false);
    for (int q : {Init, DiezA, ADiez, DiezB, AB, BDiez, BA, AA, BB}) d.set_final(q, true);
    auto on = [&](int from, const Letter& l, int to) { d.set_next(from, space.alphabet().require(l), to); };
    const Letter da{"#", "a", "#"}, db{"#", "b", "#"}, ad{"a", "#", "#"}, bd{"b", "#", "#"};
    const Letter aaw{"a", "a", "#"}, aac{"a", "a", "c"}, bbc{"b", "b", "c"};
    const Letter ab{"a", "b", "#"}, ba{"b", "a", "#"};
    on(Init, da, DiezA);
    on(Init, ad, ADiez);
    on(Init, aac, AA);
    on(Init, aaw, AAWait);
    on(Init, db, DiezB);
    on(Init, ab, AB);
    on(Init, bd, BDiez);
    on(Init, ba, BA);
    on(Init, bbc, BB);
    on(DiezA, da, DiezA);
    on(DiezA, aac, AA);
    on(DiezA, aaw, AAWait);
    on(DiezA, db, DiezB);
    on(DiezA, ab, AB);
    on(DiezA, ba, BA);
    on(DiezA, bbc, BB);
    on(ADiez, ad, ADiez);
    on(ADiez, aac, AA);
    on(ADiez, aaw, AAWait);
    on(ADiez, ab, AB);
    on(ADiez, bd, BDiez);
    on(ADiez, ba, BA);
    on(ADiez, bbc, BB);
    on(AAWait, aaw, AAWait);
    on(AAWait, ab, AB);
    on(AAWait, ba, BA);
    on(AA, aac, AA);
    on(AA, bbc, BB);
    on(DiezB, db, DiezB);
    on(DiezB, ab, AB);
    on(DiezB, bbc, BB);
    on(AB, ab, AB);
    on(AB, bbc, BB);
    on(BDiez, bd, BDiez);
    on(BDiez, ba, BA);
    on(BDiez, bbc, BB);
    on(BA, ba, BA);
    on(BA, bbc, BB);
    on(BB, bbc, BB);
    return d;
}

inline MultiAns suffix_graph_space() { return MultiAns(std::vector<Ans>{Ans::ab_star(), Ans::ab_star(), Ans::unary()}); }

}  // namespace fixture

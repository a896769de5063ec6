#include <random>
#include <set>

#include <gtest/gtest.h>

#include "fixtures_automata.hpp"
#include "oracles.hpp"

using namespace anskit;

namespace {

Alphabet ab() { return Alphabet({{"a"}, {"b"}}); }

Dfa ab_star_dfa() {
    Dfa d(ab());
    d.add_state(true);
    d.add_state(true);
    d.add_state(false);
    d.set_next(0, 0, 0);
    d.set_next(0, 1, 1);
    d.set_next(1, 1, 1);
    d.set_next(1, 0, 2);
    d.set_next(2, 0, 2);
    d.set_next(2, 1, 2);
    return d;
}

Dfa random_dfa(std::mt19937& rng, const Alphabet& a, int states) {
    Dfa d(a);
    for (int i = 0; i < states; ++i) d.add_state(rng() % 3 == 0);
    for (int q = 0; q < states; ++q)
        for (std::size_t l = 0; l < a.size(); ++l)
            if (rng() % 5 != 0) d.set_next(q, static_cast<int>(l), static_cast<int>(rng() % static_cast<unsigned>(states)));
    return d;
}

std::set<LetterWord> language_slice(const Dfa& d, std::size_t max_len) {
    std::set<LetterWord> out;
    for (const auto& w : oracle::all_words(d.letters(), max_len))
        if (d.accepts(w)) out.insert(w);
    return out;
}

}  // namespace

TEST(Automata, DeterminizeContainsLetter) {
    Nfa n(ab());
    n.add_state(false);
    n.add_state(true);
    n.initials = {0};
    n.add_edge(0, 0, 0);
    n.add_edge(0, 1, 0);
    n.add_edge(0, 0, 1);
    n.add_edge(1, 0, 1);
    n.add_edge(1, 1, 1);
    Dfa d = determinize(n);
    EXPECT_EQ(d.size(), 2u);
    for (const auto& w : oracle::all_words(2, 6)) {
        bool has_a = std::find(w.begin(), w.end(), 0) != w.end();
        EXPECT_EQ(d.accepts(w), has_a);
    }
}

TEST(Automata, DeterminizeIsIdempotentOnDfa) {
    std::mt19937 rng(1);
    for (int i = 0; i < 100; ++i) {
        Dfa d = random_dfa(rng, ab(), 4);
        EXPECT_TRUE(equivalent(determinize(to_nfa(d)), d));
    }
}

TEST(Automata, MinimizeAbStar) {
    Dfa m = minimize(ab_star_dfa());
    EXPECT_EQ(m.size(), 2u);
    EXPECT_TRUE(m.is_final(0) && m.is_final(1));
    EXPECT_EQ(minimize(m).size(), m.size());
}

TEST(Automata, MinimizeMatchesNerodeClasses) {
    // Myhill-Nerode on a slice: distinct residual signatures over words of
    // length <= 6 bound the minimal complete automaton from below.
    Dfa d = ab_star_dfa();
    std::set<std::vector<bool>> residuals;
    auto words = oracle::all_words(2, 6);
    for (const auto& u : oracle::all_words(2, 3)) {
        std::vector<bool> sig;
        for (const auto& v : words) {
            LetterWord uv = u;
            uv.insert(uv.end(), v.begin(), v.end());
            sig.push_back(d.accepts(uv));
        }
        residuals.insert(sig);
    }
    EXPECT_EQ(residuals.size(), 3u);  // includes the empty residual (sink)
    EXPECT_EQ(complete(minimize(d)).size(), 3u);
}

TEST(Automata, MinimizePreservesLanguageProperty) {
    std::mt19937 rng(2);
    for (int i = 0; i < 100; ++i) {
        Dfa d = random_dfa(rng, ab(), 6);
        Dfa m = minimize(d);
        EXPECT_LE(m.size(), std::max<std::size_t>(d.size(), 1));
        for (const auto& w : oracle::all_words(2, 8)) ASSERT_EQ(m.accepts(w), d.accepts(w));
    }
}

TEST(Automata, BooleanAlgebraMatchesSlices) {
    std::mt19937 rng(3);
    for (int i = 0; i < 100; ++i) {
        Dfa a = random_dfa(rng, ab(), 4), b = random_dfa(rng, ab(), 3);
        auto sa = language_slice(a, 6), sb = language_slice(b, 6);
        for (const auto& w : oracle::all_words(2, 6)) {
            bool x = sa.count(w) > 0, y = sb.count(w) > 0;
            ASSERT_EQ(unite(a, b).accepts(w), x || y);
            ASSERT_EQ(intersect(a, b).accepts(w), x && y);
            ASSERT_EQ(difference(a, b).accepts(w), x && !y);
            ASSERT_EQ(complement(a).accepts(w), !x);
        }
        EXPECT_TRUE(is_empty(intersect(a, complement(a))));
        EXPECT_TRUE(is_empty(difference(a, a)));
    }
}

TEST(Automata, RecognizesDiagonalShiftSet) {
    // X = { n(n+1)/2 (1,1) + (0,n) } is represented by (a,b)^*.
    MultiAns m = fixture::ab_pair();
    Dfa x(m.alphabet());
    x.add_state(true);
    x.set_next(0, m.alphabet().require({"a", "b"}), 0);
    Dfa inter = intersect(x, m.language());
    for (std::uint64_t k = 0; k <= 5; ++k) {
        BigInt base = BigInt(k * (k + 1) / 2);
        LetterWord w = m.rep({base, base + k});
        EXPECT_TRUE(inter.accepts(w)) << k;
        EXPECT_EQ(w.size(), k);
    }
}

TEST(Automata, RightQuotients) {
    Dfa d = ab_star_dfa();
    EXPECT_TRUE(equivalent(right_quotient(d, {1}), d));
    EXPECT_TRUE(equivalent(right_quotient(d, {}), d));
    Dfa q = right_quotient(d, {1, 0});
    EXPECT_TRUE(is_empty(q));
    for (const auto& w : oracle::all_words(2, 6)) {
        LetterWord wba = w;
        wba.push_back(1);
        wba.push_back(0);
        EXPECT_FALSE(d.accepts(wba));
    }
}

TEST(Automata, RightQuotientProperty) {
    std::mt19937 rng(4);
    for (int i = 0; i < 100; ++i) {
        Dfa d = random_dfa(rng, ab(), 5);
        LetterWord u;
        for (unsigned j = rng() % 3; j > 0; --j) u.push_back(static_cast<int>(rng() % 2));
        Dfa q = right_quotient(d, u);
        for (const auto& w : oracle::all_words(2, 6)) {
            LetterWord wu = w;
            wu.insert(wu.end(), u.begin(), u.end());
            ASSERT_EQ(q.accepts(w), d.accepts(wu));
        }
    }
}

TEST(Automata, CountWords) {
    Dfa d = minimize(ab_star_dfa());
    BigInt total = 0;
    for (std::size_t len = 0; len <= 3; ++len) total += count_words(d, d.initial(), len);
    EXPECT_EQ(total, 10);
    for (std::size_t l = 0; l <= 20; ++l) {
        BigInt cumulative = 0;
        for (std::size_t len = 0; len <= l; ++len) cumulative += count_words(d, d.initial(), len);
        EXPECT_EQ(cumulative, BigInt((l + 1) * (l + 2) / 2));
    }
    Dfa bin = Ans::integer_base(2).dfa();
    EXPECT_EQ(count_words(bin, bin.initial(), 3), 4);
    EXPECT_EQ(count_words(bin, bin.initial(), 0), 1);
    std::mt19937 rng(5);
    for (int i = 0; i < 100; ++i) {
        Dfa r = random_dfa(rng, ab(), 4);
        WordCounter c(r);
        for (std::size_t len = 0; len <= 6; ++len) {
            std::size_t brute = 0;
            for (const auto& w : oracle::all_words(2, len))
                if (w.size() == len && r.accepts(w)) ++brute;
            ASSERT_EQ(c.count(r.initial(), len), BigInt(brute));
        }
    }
}

TEST(Automata, ProjectionsOfSuffixGraph) {
    MultiAns space = fixture::suffix_graph_space();
    Dfa g = fixture::suffix_graph_dfa();
    // The (corrected) figure automaton recognizes exactly the padded graph.
    std::size_t checked = 0;
    for (std::size_t m = 0; m < 28; ++m)
        for (std::size_t n = 0; n < 28; ++n) {
            std::size_t f = oracle::suffix_sequence(m, n);
            for (std::size_t c = 0; c <= 7; ++c) {
                LetterWord w = space.rep({m, n, c});
                ASSERT_EQ(g.accepts(w), c == f) << m << "," << n << "," << c;
                ++checked;
            }
        }
    EXPECT_GT(checked, 0u);

    // Onto the first two tapes: all of rep(N^2).
    MultiAns pair = fixture::ab_pair();
    Dfa first_two = determinize(project_tapes(g, {0, 1}, pair.alphabet()));
    for (const auto& w : oracle::all_words(pair.alphabet().size(), 4))
        ASSERT_EQ(first_two.accepts(w), pair.language().accepts(w));

    // Onto the third tape: c*.
    Dfa third = determinize(project_tapes(g, {2}, Ans::unary().alphabet()));
    for (std::size_t len = 0; len <= 5; ++len) EXPECT_TRUE(third.accepts(LetterWord(len, 0)));
    EXPECT_TRUE(equivalent(minimize(third), Ans::unary().dfa()));
}

TEST(Automata, ProjectionIdentityAndEqualityGraph) {
    Dfa d = minimize(ab_star_dfa());
    Dfa p = determinize(project_tapes(d, {0}, d.alphabet()));
    EXPECT_TRUE(equivalent(p, d));

    MultiAns pair = fixture::ab_pair();
    Dfa diag(pair.alphabet());
    diag.add_state(true);
    diag.set_next(0, pair.alphabet().require({"a", "a"}), 0);
    diag.set_next(0, pair.alphabet().require({"b", "b"}), 0);
    Dfa eq = intersect(diag, pair.language());
    Ans s = Ans::ab_star();
    Dfa first = determinize(project_tapes(eq, {0}, s.alphabet()));
    for (const auto& w : oracle::all_words(2, 5)) EXPECT_EQ(first.accepts(w), s.contains(w));
    EXPECT_THROW(project_tapes(eq, {3}, s.alphabet()), ValidationError);
}

TEST(Automata, PaddedJoinAndCanonicalPadding) {
    MultiAns pair = fixture::ab_pair();
    Dfa canon = canonical_padding_dfa(pair.alphabet(), {{0}, {1}}, kPad);
    EXPECT_TRUE(equivalent(intersect(canon, universal_dfa(pair.alphabet())), canon));
    // Every word of the pair language is canonically padded.
    EXPECT_TRUE(is_subset(pair.language(), canon));
    // Joining the two one-tape languages on separate tapes yields the pair language.
    Ans s = Ans::ab_star();
    Dfa joined = padded_join(pair.alphabet(), {{&s.dfa(), {0}}, {&s.dfa(), {1}}}, kPad);
    EXPECT_TRUE(equivalent(intersect(joined, canon), pair.language()));
}

TEST(Automata, AlphabetValidation) {
    EXPECT_THROW(Alphabet(std::vector<Letter>{{"#", "#"}}), ValidationError);
    EXPECT_THROW(Alphabet({{"$"}}), ValidationError);
    EXPECT_THROW(Alphabet({{"a"}, {"a"}}), ValidationError);
    EXPECT_THROW(Alphabet({{"a"}, {"a", "b"}}), ValidationError);
    Dfa a = ab_star_dfa();
    Dfa b{Alphabet({{"x"}})};
    b.add_state(true);
    EXPECT_THROW(intersect(a, b), ValidationError);
}

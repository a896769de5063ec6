#include <random>

#include <gtest/gtest.h>

#include "fixtures.hpp"
#include "oracles.hpp"

using namespace anskit;
using fixture::pair_word;

namespace {

Alphabet two_letters() { return Alphabet({{"a"}, {"b"}}); }

Value random_entry(const Semiring& sr, std::mt19937& rng) {
    int raw = static_cast<int>(rng() % 7) - 2;
    if (sr.kind() == SemiringKind::Nat) raw = std::abs(raw) % 3;
    if (sr.kind() == SemiringKind::Rat && rng() % 4 == 0) return Value::rational(raw, 2);
    return sr.from_int(raw);
}

LinRep random_series(const Semiring& sr, const Alphabet& alpha, std::size_t dim, std::mt19937& rng) {
    auto fill = [&](std::size_t r, std::size_t c) {
        Matrix m(sr, r, c);
        for (auto& v : m.data()) v = rng() % 3 == 0 ? sr.zero() : random_entry(sr, rng);
        return m;
    };
    LinRep s{sr, alpha, fill(1, dim), {}, fill(dim, 1)};
    for (std::size_t l = 0; l < alpha.size(); ++l) s.mu.push_back(fill(dim, dim));
    return s;
}

std::vector<Semiring> tags() {
    return {Semiring::nat(), Semiring::integers(), Semiring::rationals(), Semiring::modular(6), Semiring::boolean()};
}

LetterWord concat(LetterWord a, const LetterWord& b) {
    a.insert(a.end(), b.begin(), b.end());
    return a;
}

// Brute-force equality on every word up to the given length.
bool agree_up_to(const LinRep& s, const LinRep& t, std::size_t len) {
    for (const auto& w : oracle::all_words(s.alphabet.size(), len))
        if (!(s.coeff(w) == t.coeff(w))) return false;
    return true;
}

LinRep ab_star_char(const Semiring& sr) { return char_series(fixture::ab_pair().language(), sr); }

}  // namespace

TEST(Series, RunningCoefficientTable) {
    LinRep s = fixture::suffix_series();
    s.validate();
    EXPECT_EQ(s.coeff(pair_word("#ab", "aab")), Value(2));
    EXPECT_EQ(s.coeff(pair_word("aaaab", "#aaab")), Value(4));
    EXPECT_EQ(s.coeff(pair_word("aab", "bab")), Value(2));
    EXPECT_EQ(s.coeff(pair_word("aa", "ab")), Value(0));
    EXPECT_EQ(s.coeff(pair_word("a#a", "aba")), Value(1));
    EXPECT_EQ(s.coeff({}), dot(s.sr, s.lambda.data(), s.gamma.data()));
    EXPECT_THROW(s.coeff_word({{"c", "a"}}), ValidationError);
}

TEST(Series, CoefficientIsLongestCommonSuffix) {
    LinRep s = fixture::suffix_series();
    const std::string syms[] = {"#", "a", "b"};
    for (std::size_t len = 0; len <= 4; ++len) {
        std::size_t total = 1;
        for (std::size_t i = 0; i < len; ++i) total *= 9;
        for (std::size_t code = 0; code < total; ++code) {
            std::string u, v;
            std::size_t c = code;
            bool pad_pair = false;
            for (std::size_t i = 0; i < len; ++i) {
                u += syms[c % 3];
                v += syms[(c / 3) % 3];
                pad_pair |= (c % 9 == 0);
                c /= 9;
            }
            if (pad_pair) continue;
            // Padding symbols break a suffix match, so compare the raw strings.
            std::size_t k = 0;
            while (k < len && u[len - 1 - k] == v[len - 1 - k]) ++k;
            ASSERT_EQ(s.coeff(pair_word(u, v)), Value(static_cast<long long>(k))) << u << "/" << v;
        }
    }
}

TEST(Series, WeightedAutomatonMatchesRepresentation) {
    WeightedAutomaton a = fixture::suffix_automaton();
    LinRep s = fixture::suffix_series();
    EXPECT_EQ(a.weight(pair_word("#ab", "aab")), Value(2));
    EXPECT_EQ(a.weight(pair_word("aaaab", "#aaab")), Value(4));
    EXPECT_EQ(a.weight(pair_word("aab", "bab")), Value(2));
    EXPECT_EQ(a.weight(pair_word("aa", "ab")), Value(0));
    EXPECT_EQ(a.weight(pair_word("a#a", "aba")), Value(1));
    EXPECT_TRUE(series_equal(wfa_to_linrep(a), s).equal);
    for (const auto& w : oracle::all_words(s.alphabet.size(), 3)) ASSERT_EQ(a.weight(w), s.coeff(w));
}

TEST(Series, ConversionRoundTrips) {
    std::mt19937 rng(21);
    for (const Semiring& sr : tags()) {
        LinRep s = random_series(sr, two_letters(), 3, rng);
        WeightedAutomaton a = linrep_to_wfa(s);
        LinRep back = wfa_to_linrep(a);
        for (int i = 0; i < 50; ++i) {
            LetterWord w;
            for (unsigned j = rng() % 9; j > 0; --j) w.push_back(static_cast<int>(rng() % 2));
            ASSERT_EQ(a.weight(w), s.coeff(w)) << sr.name();
            ASSERT_EQ(back.coeff(w), s.coeff(w)) << sr.name();
        }
        for (const auto& [key, val] : a.edges) EXPECT_FALSE(val.is_zero());
    }
    WeightedAutomaton single{Semiring::nat(), two_letters(), {}, {}, {}};
    single.add_state(Value(1), Value(1));
    LinRep eps = wfa_to_linrep(single);
    EXPECT_EQ(eps.coeff({}), Value(1));
    for (const auto& w : oracle::all_words(2, 4))
        if (!w.empty()) {
            ASSERT_EQ(eps.coeff(w), Value(0));
        }
}

TEST(Series, DefiningIdentities) {
    std::mt19937 rng(22);
    for (const Semiring& sr : tags())
        for (int trial = 0; trial < 6; ++trial) {
            LinRep s = random_series(sr, two_letters(), 2, rng), t = random_series(sr, two_letters(), 3, rng);
            LinRep sum = add_series(s, t), prod = hadamard(s, t);
            LetterWord u;
            for (unsigned j = rng() % 3; j > 0; --j) u.push_back(static_cast<int>(rng() % 2));
            LinRep quot = right_quotient_series(s, u);
            LinRep lhs = right_quotient_series(prod, u), rhs = hadamard(right_quotient_series(s, u), right_quotient_series(t, u));
            for (const auto& w : oracle::all_words(2, 5)) {
                ASSERT_EQ(sum.coeff(w), sr.add(s.coeff(w), t.coeff(w))) << sr.name();
                ASSERT_EQ(prod.coeff(w), sr.mul(s.coeff(w), t.coeff(w))) << sr.name();
                ASSERT_EQ(quot.coeff(w), s.coeff(concat(w, u))) << sr.name();
                ASSERT_EQ(lhs.coeff(w), rhs.coeff(w)) << sr.name();
            }
        }
}

TEST(Series, CharacteristicQuotientCommutes) {
    std::mt19937 rng(23);
    for (int trial = 0; trial < 40; ++trial) {
        Dfa d(two_letters());
        for (int i = 0; i < 4; ++i) d.add_state(rng() % 2 == 0);
        for (int q = 0; q < 4; ++q)
            for (int a = 0; a < 2; ++a)
                if (rng() % 4 != 0) d.set_next(q, a, static_cast<int>(rng() % 4));
        LetterWord u;
        for (unsigned j = rng() % 3; j > 0; --j) u.push_back(static_cast<int>(rng() % 2));
        LinRep lhs = right_quotient_series(char_series(d, Semiring::nat()), u);
        LinRep rhs = char_series(right_quotient(d, u), Semiring::nat());
        ASSERT_TRUE(agree_up_to(lhs, rhs, 5));
    }
}

TEST(Series, RunningAlgebraExamples) {
    LinRep s = fixture::suffix_series();
    LinRep twice = add_series(s, s);
    EXPECT_EQ(twice.coeff(pair_word("#ab", "aab")), Value(4));
    EXPECT_EQ(twice.coeff(pair_word("aaaab", "#aaab")), Value(8));
    EXPECT_EQ(twice.coeff(pair_word("aab", "bab")), Value(4));
    EXPECT_EQ(twice.coeff(pair_word("aa", "ab")), Value(0));
    EXPECT_EQ(twice.coeff(pair_word("a#a", "aba")), Value(2));
    EXPECT_TRUE(series_equal(scalar_mul(Value(0), s), zero_series(s.sr, s.alphabet)).equal);

    LinRep restricted = hadamard(s, ab_star_char(s.sr));
    EXPECT_EQ(restricted.coeff(pair_word("ba", "ba")), Value(0));
    EXPECT_EQ(s.coeff(pair_word("ba", "ba")), Value(2));
    EXPECT_EQ(restricted.coeff(pair_word("#ab", "aab")), Value(2));
    EXPECT_EQ(restricted.coeff(pair_word("aaaab", "#aaab")), Value(4));
    EXPECT_EQ(restricted.coeff(pair_word("aab", "bab")), Value(0));
}

TEST(Series, CharacteristicSeries) {
    Ans ab = Ans::ab_star();
    LinRep c = char_series(ab.dfa(), Semiring::integers());
    EXPECT_EQ(c.coeff(ab.alphabet().encode({{"a"}, {"a"}, {"b"}})), Value(1));
    EXPECT_EQ(c.coeff(ab.alphabet().encode({{"b"}, {"a"}})), Value(0));
    LinRep none = char_series(empty_dfa(ab.alphabet()), Semiring::integers());
    EXPECT_TRUE(series_equal(none, zero_series(Semiring::integers(), ab.alphabet())).equal);
    for (const auto& w : oracle::all_words(2, 6)) ASSERT_EQ(c.coeff(w), Value(ab.contains(w) ? 1 : 0));
}

TEST(Series, RunningRightQuotients) {
    LinRep s = fixture::suffix_series(), t = fixture::ones_series();
    LinRep s_plus_t = add_series(s, t);
    const Alphabet& alpha = s.alphabet;
    for (std::size_t l = 0; l < alpha.size(); ++l) {
        LinRep q = right_quotient_series(s, {static_cast<int>(l)});
        if (alpha[l][0] == alpha[l][1]) {
            EXPECT_TRUE(series_equal(q, s_plus_t).equal) << letter_str(alpha[l]);
        } else {
            EXPECT_TRUE(series_equal(q, zero_series(s.sr, alpha)).equal) << letter_str(alpha[l]);
        }
        EXPECT_TRUE(series_equal(right_quotient_series(t, {static_cast<int>(l)}), t).equal);
    }
    EXPECT_TRUE(series_equal(right_quotient_series(s, {}), s).equal);

    std::mt19937 rng(24);
    for (int trial = 0; trial < 10; ++trial) {
        LetterWord u, v;
        for (unsigned j = rng() % 3; j > 0; --j) u.push_back(static_cast<int>(rng() % alpha.size()));
        for (unsigned j = rng() % 3; j > 0; --j) v.push_back(static_cast<int>(rng() % alpha.size()));
        LinRep lhs = right_quotient_series(right_quotient_series(s, u), v);
        LinRep rhs = right_quotient_series(s, concat(v, u));
        ASSERT_TRUE(agree_up_to(lhs, rhs, 3));
        ASSERT_TRUE(series_equal(lhs, rhs).equal);
    }
}

TEST(Series, EqualityDecision) {
    LinRep s = fixture::suffix_series();
    EXPECT_TRUE(series_equal(s, s).equal);
    EqualityResult r = series_equal(s, add_series(s, fixture::ones_series()));
    ASSERT_FALSE(r.equal);
    ASSERT_TRUE(r.witness.has_value());
    EXPECT_NE(s.coeff(*r.witness), add_series(s, fixture::ones_series()).coeff(*r.witness));
    EXPECT_THROW(series_equal(change_semiring(s, Semiring::nat_inf()), change_semiring(s, Semiring::nat_inf())), PreconditionError);
    EXPECT_THROW(series_equal(s, change_semiring(s, Semiring::integers())), ValidationError);
}

TEST(Series, EqualityAgreesWithBruteForce) {
    // Over Q a difference of total dimension n vanishes iff it vanishes on words shorter than n.
    std::mt19937 rng(25);
    for (const Semiring& sr : tags())
        for (int trial = 0; trial < 30; ++trial) {
            LinRep s = random_series(sr, two_letters(), 2, rng);
            LinRep t = trial % 2 == 0 ? random_series(sr, two_letters(), 2, rng) : add_series(s, add_series(s, scalar_mul(sr.is_ring() ? sr.from_int(-1) : sr.zero(), s)));
            if (!sr.is_ring() && trial % 2 == 1) t = add_series(s, zero_series(sr, s.alphabet));
            std::size_t horizon = sr.is_finite() ? 10 : s.dim() + t.dim();
            bool brute = agree_up_to(s, t, horizon);
            EqualityResult r = series_equal(s, t);
            if (r.equal) {
                ASSERT_TRUE(brute) << sr.name() << " trial " << trial;
            } else {
                ASSERT_NE(s.coeff(*r.witness), t.coeff(*r.witness));
            }
            if (sr.embeds_in_rationals()) {
                ASSERT_EQ(r.equal, brute) << sr.name() << " trial " << trial;
            }
        }
}

TEST(Series, FiberLanguages) {
    Semiring z2 = Semiring::modular(2);
    LinRep f_mod_2 = hadamard(fixture::suffix_series(z2), ab_star_char(z2));
    Dfa zero = fiber_language(f_mod_2, Value(0));
    Dfa one = fiber_language(f_mod_2, Value(1));
    EXPECT_TRUE(zero.accepts({}));
    EXPECT_TRUE(one.accepts(pair_word("#b", "ab")));
    for (const auto& w : oracle::all_words(f_mod_2.alphabet.size(), 3)) {
        ASSERT_EQ(zero.accepts(w), f_mod_2.coeff(w) == Value(0));
        ASSERT_EQ(one.accepts(w), f_mod_2.coeff(w) == Value(1));
    }
    Dfa lang = fixture::ab_pair().language();
    EXPECT_TRUE(equivalent(fiber_language(char_series(lang, Semiring::boolean()), Value(1)), lang));
    EXPECT_THROW(fiber_language(fixture::suffix_series(), Value(1), 50), PreconditionError);
}

TEST(Series, PolynomialAndConversion) {
    Semiring z = Semiring::integers();
    std::map<LetterWord, Value> terms{{{}, Value(3)}, {{0, 1}, Value(-2)}, {{0, 1, 1}, Value(5)}, {{1}, Value(7)}};
    LinRep p = polynomial(z, two_letters(), terms);
    for (const auto& w : oracle::all_words(2, 5)) {
        auto it = terms.find(w);
        ASSERT_EQ(p.coeff(w), it == terms.end() ? Value(0) : it->second);
    }
    LinRep s = fixture::suffix_series();
    LinRep q = change_semiring(s, Semiring::rationals());
    LinRep m = change_semiring(s, Semiring::modular(3));
    for (const auto& w : oracle::all_words(s.alphabet.size(), 3)) {
        ASSERT_EQ(q.coeff(w), s.coeff(w));
        ASSERT_EQ(m.coeff(w), Semiring::modular(3).from_int(s.coeff(w).num()));
    }
    EXPECT_THROW(change_semiring(scalar_mul(Value(-1), change_semiring(s, z)), Semiring::nat()), ValidationError);
}

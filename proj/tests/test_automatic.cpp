#include <random>

#include <gtest/gtest.h>

#include "anskit/automatic.hpp"
#include "fixtures.hpp"
#include "oracles.hpp"

using namespace anskit;

namespace {

std::vector<BigInt> pt(long m, long n) { return {BigInt(m), BigInt(n)}; }

Dfao constant_dfao(const MultiAns& multi, const Value& v) {
    Dfao d(multi, Semiring::integers());
    d.set_initial(d.add_state(v));
    for (std::size_t l = 0; l < d.letters(); ++l) d.set_next(0, static_cast<int>(l), 0);
    return d;
}

LetterWord mirror(LetterWord w) {
    std::reverse(w.begin(), w.end());
    return w;
}

Dfao random_dfao(std::mt19937& rng, const Semiring& sr, std::size_t states) {
    Dfao d(fixture::ab_pair(), sr);
    for (std::size_t q = 0; q < states; ++q) d.add_state(Value(static_cast<long>(rng() % 3)));
    for (std::size_t q = 0; q < states; ++q)
        for (std::size_t l = 0; l < d.letters(); ++l)
            d.set_next(static_cast<int>(q), static_cast<int>(l), rng() % 5 == 0 ? -1 : static_cast<int>(rng() % states));
    d.set_initial(0);
    return d;
}

}  // namespace

TEST(DfaoEval, FigureValues) {
    Dfao three = fixture::mod_figure_dfao(3);
    EXPECT_EQ(three.eval(pt(4, 7)), Value(2));
    EXPECT_EQ(three.eval(pt(16, 11)), Value(1));
    EXPECT_EQ(three.eval(pt(0, 0)), three.output(three.initial()));
    for (unsigned m : {2u, 3u, 5u}) {
        Dfao d = fixture::mod_figure_dfao(m);
        for (long i = 0; i < 40; ++i)
            for (long j = 0; j < 40; ++j)
                ASSERT_EQ(d.eval(pt(i, j)), Value(static_cast<long>(oracle::suffix_sequence(i, j) % m)));
    }
}

TEST(DfaoComplete, ZeroOffLanguage) {
    Dfao d = fixture::mod_figure_dfao(3);
    Dfao c = complete_with_zero(d);
    EXPECT_TRUE(c.is_complete());
    EXPECT_LE(c.size(), (d.size() + 1) * complete(minimize(d.multi().language())).size());
    const Dfa& lang = d.multi().language();
    for (const LetterWord& w : oracle::all_words(d.letters(), 4)) {
        if (lang.accepts(w))
            ASSERT_EQ(c.run(w), d.run(w));
        else
            ASSERT_TRUE(c.run(w).is_zero());
    }
    EXPECT_TRUE(c.run(fixture::pair_word("ba", "ab")).is_zero());
}

TEST(DfaoReverse, InvolutionAndThueMorse) {
    Dfao tm = fixture::thue_morse_dfao();
    Dfao rev = reverse_dfao(tm);
    for (long n = 0; n < 100; ++n)
        ASSERT_EQ(rev.run(mirror(tm.multi().rep({BigInt(n)}))), Value(oracle::thue_morse(static_cast<std::uint64_t>(n))));
    Dfao d = fixture::mod_figure_dfao(2);
    Dfao twice = reverse_dfao(reverse_dfao(d));
    for (const LetterWord& w : oracle::all_words(d.letters(), 5)) ASSERT_EQ(twice.run(w), d.run(w));
    Dfao c = reverse_dfao(constant_dfao(fixture::ab_pair(), Value(4)));
    EXPECT_EQ(minimize_dfao(c).size(), 1u);
}

TEST(DfaoMinimize, IdempotentAndFaithful) {
    std::mt19937 rng(3);
    for (int trial = 0; trial < 100; ++trial) {
        Dfao d = random_dfao(rng, Semiring::integers(), 2 + rng() % 5);
        Dfao m = minimize_dfao(d);
        ASSERT_EQ(minimize_dfao(m).size(), m.size());
        ASSERT_LE(m.size(), d.size() + 1);
        for (int s = 0; s < 50; ++s) {
            LetterWord w;
            std::size_t len = rng() % 6;
            for (std::size_t i = 0; i < len; ++i) w.push_back(static_cast<int>(rng() % d.letters()));
            ASSERT_EQ(m.run(w), d.run(w));
        }
    }
}

TEST(DfaoMinimize, FigureSize) {
    for (unsigned m : {2u, 3u, 5u}) {
        Dfao d = minimize_dfao(fixture::mod_figure_dfao(m));
        EXPECT_EQ(d.live_size(), 2 * m + 7);
        EXPECT_EQ(d.size(), 2 * m + 8);  // plus the zero sink
    }
}

TEST(KernelToDfao, ModMSizes) {
    RegularSequence f = fixture::suffix_sequence(Semiring::integers());
    for (unsigned m : {2u, 3u, 5u}) {
        KernelDfao k = mod_m_report(f, m);
        EXPECT_LE(k.raw_states, 9u * m * m * m * m);
        EXPECT_EQ(k.dfao.live_size(), 2 * m + 7) << "m=" << m;
        for (const Value& v : k.dfao.output_alphabet()) {
            EXPECT_GE(v.num(), 0);
            EXPECT_LT(v.num(), m);
        }
        for (long i = 0; i < 40; ++i)
            for (long j = 0; j < 40; ++j)
                ASSERT_EQ(k.dfao.eval(pt(i, j)), Value(static_cast<long>(oracle::suffix_sequence(i, j) % m)));
        // Same machine as the hand-built one up to renumbering.
        Dfao reference = minimize_dfao(complete_with_zero(fixture::mod_figure_dfao(m)));
        EXPECT_EQ(k.dfao.size(), reference.size());
    }
    Dfao two = mod_m(f, 2);
    EXPECT_EQ(two.eval(pt(4, 7)), Value(0));
    EXPECT_EQ(two.eval(pt(16, 11)), Value(0));
    EXPECT_EQ(mod_m(f, 3).eval(pt(4, 7)), Value(2));
}

TEST(KernelToDfao, ConstantAndErrors) {
    RegularSequence one = RegularSequence::constant(MultiAns(Ans::unary(), 1), Semiring::modular(4), Value(3));
    Dfao d = kernel_to_dfao(one);
    EXPECT_EQ(d.size(), 1u);
    EXPECT_EQ(d.eval({BigInt(10)}), Value(3));
    // Over Z the running example has infinitely many kernel elements.
    EXPECT_THROW(kernel_to_dfao(fixture::suffix_sequence(Semiring::integers()), 200), PreconditionError);
    EXPECT_THROW(kernel_to_dfao(fixture::suffix_sequence()), PreconditionError);
    EXPECT_THROW(mod_m(fixture::suffix_sequence(Semiring::integers()), 1), ValidationError);
}

TEST(KernelToDfao, RoundTripOnGrid) {
    std::mt19937 rng(5);
    for (int trial = 0; trial < 100; ++trial) {
        const Semiring sr = trial % 2 ? Semiring::modular(3) : Semiring::boolean();
        Dfao d = random_dfao(rng, Semiring::integers(), 2 + rng() % 4);
        for (std::size_t q = 0; q < d.size(); ++q) d.set_output(static_cast<int>(q), sr.from_int(d.output(static_cast<int>(q)).num()));
        RegularSequence f = from_dfao(d, sr);
        Dfao back = kernel_to_dfao(f);
        RegularSequence again = from_dfao(back);
        for (long i = 0; i < 15; ++i)
            for (long j = 0; j < 15; ++j) ASSERT_EQ(again.eval(pt(i, j)), f.eval(pt(i, j)));
        ASSERT_TRUE(sequences_equal(again, f).equal);
    }
}

TEST(KernelToDfao, KernelSizeBound) {
    for (unsigned m : {2u, 3u}) {
        Dfao d = minimize_dfao(fixture::mod_figure_dfao(m));
        RegularSequence f = from_dfao(d);
        KernelReport report = kernel_closure(f);
        ASSERT_TRUE(report.closed);
        // Card(ker) <= Card(outputs)^Card(states).
        double bound = std::pow(static_cast<double>(d.output_alphabet().size()), static_cast<double>(d.size()));
        EXPECT_LE(static_cast<double>(report.size), bound);
        // Brute-force count of distinct kernel members on a sampled grid.
        std::set<std::vector<Value>> seen;
        for (const LetterWord& w : oracle::all_words(d.letters(), 3)) {
            RegularSequence g = circ(f, w);
            std::vector<Value> s;
            for (long i = 0; i < 12; ++i)
                for (long j = 0; j < 12; ++j) s.push_back(g.eval(pt(i, j)));
            seen.insert(s);
        }
        EXPECT_LE(seen.size(), report.size);
    }
}

TEST(DfaoFibers, PartitionLanguage) {
    Dfao d = fixture::mod_figure_dfao(2);
    std::map<Value, Dfa> fibers = dfao_fibers(d);
    const Dfa& lang = d.multi().language();
    for (const LetterWord& w : oracle::all_words(d.letters(), 5)) {
        int hits = 0;
        for (const auto& [k, fib] : fibers)
            if (fib.accepts(w)) {
                ++hits;
                ASSERT_EQ(d.run(w), k);
            }
        ASSERT_EQ(hits, lang.accepts(w) ? 1 : 0);
    }
    auto single = dfao_fibers(constant_dfao(fixture::ab_pair(), Value(2)));
    ASSERT_EQ(single.size(), 1u);
    EXPECT_TRUE(series_equal(char_series(single.begin()->second, Semiring::nat()), char_series(lang, Semiring::nat())).equal);
}

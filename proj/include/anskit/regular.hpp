#pragma once

// (S,K)-regular sequences: a multidimensional ANS plus a series that vanishes
// off the numeration language.

#include "anskit/dfao.hpp"
#include "anskit/series.hpp"

namespace anskit {

struct RegularSequence {
    MultiAns multi;
    LinRep series;

    // Restricts an arbitrary series over the ANS alphabet to the language.
    static RegularSequence from_series(const MultiAns& multi, const LinRep& s) {
        if (!(s.alphabet == multi.alphabet())) throw ValidationError("series alphabet differs from the numeration alphabet");
        return {multi, hadamard(s, char_series(minimize(multi.language()), s.sr))};
    }
    // Constant sequence c on N^d.
    static RegularSequence constant(const MultiAns& multi, const Semiring& sr, const Value& c) {
        return {multi, scalar_mul(c, char_series(minimize(multi.language()), sr))};
    }

    const Semiring& semiring() const { return series.sr; }
    Value eval(const std::vector<BigInt>& n) const { return series.coeff(multi.rep(n)); }
};

inline void require_prefix_closed(const MultiAns& multi) {
    if (!multi.is_prefix_closed())
        throw PreconditionError("working hypothesis violated: the numeration language is not prefix-closed");
}

// f o w : n -> f(val(rep(n) w)), 0 when rep(n) w is outside the language.
inline RegularSequence circ(const RegularSequence& f, const LetterWord& w) {
    require_prefix_closed(f.multi);
    return {f.multi, right_quotient_series(f.series, w)};
}

inline RegularSequence add(const RegularSequence& f, const RegularSequence& g) {
    if (!(f.multi == g.multi)) throw ValidationError("sequences over different numeration systems");
    return {f.multi, add_series(f.series, g.series)};
}
inline RegularSequence scale(const Value& k, const RegularSequence& f) { return {f.multi, scalar_mul(k, f.series)}; }
inline RegularSequence hadamard(const RegularSequence& f, const RegularSequence& g) {
    if (!(f.multi == g.multi)) throw ValidationError("sequences over different numeration systems");
    return {f.multi, hadamard(f.series, g.series)};
}

inline EqualityResult sequences_equal(const RegularSequence& f, const RegularSequence& g) {
    if (!(f.multi == g.multi)) throw ValidationError("sequences over different numeration systems");
    return series_equal(f.series, g.series);
}

inline RegularSequence change_semiring(const RegularSequence& f, const Semiring& to) {
    return {f.multi, change_semiring(f.series, to)};
}

namespace detail {

// Coordinates identifying a column vector x up to observational equivalence
// (x ~ y iff lambda mu(u) x = lambda mu(u) y for every word u).
class Observer {
public:
    Observer(const LinRep& s, std::size_t budget) : sr_(s.sr) {
        if (s.sr.kind() == SemiringKind::NatInf) throw PreconditionError("observational equivalence is not supported over NatInf");
        if (s.sr.is_finite()) {
            std::map<Vec, int> seen;
            std::deque<Vec> queue{s.lambda.data()};
            seen.emplace(s.lambda.data(), 0);
            while (!queue.empty()) {
                Vec v = std::move(queue.front());
                queue.pop_front();
                rows_.push_back(v);
                for (const Matrix& m : s.mu) {
                    Vec next = vec_mat(sr_, v, m);
                    if (seen.emplace(next, 0).second) {
                        if (seen.size() > budget) throw PreconditionError("forward row set exceeded budget");
                        queue.push_back(std::move(next));
                    }
                }
            }
        } else {
            // Over Q a basis of the forward space made of actual row vectors.
            Semiring q = Semiring::rationals();
            LinRep r = change_semiring(s, q);
            RationalBasis basis;
            std::deque<Vec> queue;
            auto visit = [&](Vec v) {
                if (basis.insert(v)) {
                    rows_.push_back(v);
                    queue.push_back(std::move(v));
                }
            };
            visit(r.lambda.data());
            while (!queue.empty()) {
                Vec v = std::move(queue.front());
                queue.pop_front();
                for (const Matrix& m : r.mu) visit(vec_mat(q, v, m));
            }
            sr_ = q;
            rational_ = true;
        }
    }

    Vec signature(const Vec& x) const {
        Vec in = x;
        if (rational_)
            for (Value& v : in) v = Value::rational(v.to_rat());
        Vec sig;
        sig.reserve(rows_.size());
        for (const Vec& r : rows_) sig.push_back(dot(sr_, r, in));
        return sig;
    }
    bool rational() const { return rational_; }

private:
    Semiring sr_;
    std::vector<Vec> rows_;
    bool rational_ = false;
};

}  // namespace detail

struct KernelReport {
    std::vector<std::pair<LetterWord, Vec>> generators;  // word w and mu(w) gamma
    bool closed = false;
    std::size_t size = 0;  // rank over Q, or number of distinct kernel elements for finite semirings
    Semiring semiring;
};

// Explores f o w for all words w (x -> mu(a) x from gamma).
inline KernelReport kernel_closure(const RegularSequence& f, std::size_t budget = budget_from_env()) {
    require_prefix_closed(f.multi);
    const LinRep& s = f.series;
    KernelReport report;
    report.semiring = s.sr;
    if (s.sr.kind() == SemiringKind::Nat || s.sr.kind() == SemiringKind::NatInf)
        throw PreconditionError("kernel closure is not available over " + s.sr.name() +
                                " (the generated module need not be finitely generated); use verify_practical_criterion");
    detail::Observer obs(s, budget_from_env());
    std::deque<std::pair<LetterWord, Vec>> queue;
    if (obs.rational()) {
        detail::RationalBasis basis;
        auto visit = [&](LetterWord w, Vec x) {
            if (!basis.insert(obs.signature(x))) return;
            report.generators.emplace_back(w, x);
            queue.emplace_back(std::move(w), std::move(x));
        };
        visit({}, s.gamma.data());
        while (!queue.empty()) {
            if (report.generators.size() > budget) return report;
            auto [w, x] = std::move(queue.front());
            queue.pop_front();
            for (std::size_t a = 0; a < s.mu.size(); ++a) {
                LetterWord aw{static_cast<int>(a)};
                aw.insert(aw.end(), w.begin(), w.end());
                visit(std::move(aw), mat_vec(s.sr, s.mu[a], x));
            }
        }
        report.size = basis.rank();
    } else {
        std::map<Vec, int> seen;
        auto visit = [&](LetterWord w, Vec x) {
            if (!seen.emplace(obs.signature(x), 0).second) return;
            report.generators.emplace_back(w, x);
            queue.emplace_back(std::move(w), std::move(x));
        };
        visit({}, s.gamma.data());
        while (!queue.empty()) {
            if (seen.size() > budget) {
                report.size = seen.size();
                return report;
            }
            auto [w, x] = std::move(queue.front());
            queue.pop_front();
            for (std::size_t a = 0; a < s.mu.size(); ++a) {
                LetterWord aw{static_cast<int>(a)};
                aw.insert(aw.end(), w.begin(), w.end());
                visit(std::move(aw), mat_vec(s.sr, s.mu[a], x));
            }
        }
        report.size = seen.size();
    }
    report.closed = true;
    return report;
}

// Claimed relations f_i o a = sum_j coeffs[(a, i)][j] f_j.
using CriterionTable = std::map<std::pair<int, std::size_t>, std::vector<Value>>;

struct CriterionResult {
    bool holds = true;
    int letter = -1;
    std::size_t index = 0;
    std::optional<LetterWord> witness;
};

inline CriterionResult verify_practical_criterion(const std::vector<RegularSequence>& fs, const CriterionTable& coeffs) {
    if (fs.empty()) throw ValidationError("empty family");
    const MultiAns& multi = fs.front().multi;
    for (const RegularSequence& f : fs)
        if (!(f.multi == multi)) throw ValidationError("family members use different numeration systems");
    require_prefix_closed(multi);
    const Semiring& sr = fs.front().semiring();
    CriterionResult result;
    for (std::size_t a = 0; a < multi.alphabet().size(); ++a)
        for (std::size_t i = 0; i < fs.size(); ++i) {
            std::vector<Value> ks(fs.size(), sr.zero());
            auto it = coeffs.find({static_cast<int>(a), i});
            if (it != coeffs.end()) {
                if (it->second.size() != fs.size()) throw ValidationError("coefficient row has the wrong length");
                ks = it->second;
            }
            LinRep rhs = zero_series(sr, multi.alphabet());
            for (std::size_t j = 0; j < fs.size(); ++j)
                if (!ks[j].is_zero()) rhs = add_series(rhs, scalar_mul(ks[j], fs[j].series));
            EqualityResult eq = series_equal(right_quotient_series(fs[i].series, {static_cast<int>(a)}), rhs);
            if (!eq.equal) {
                result.holds = false;
                result.letter = static_cast<int>(a);
                result.index = i;
                result.witness = eq.witness;
                return result;
            }
        }
    return result;
}

// Linear representation of the sequence generated by a DFAO.
inline RegularSequence from_dfao(const Dfao& a0, const Semiring& sr) {
    Dfao a = complete_with_zero(a0);
    std::size_t r = a.size();
    LinRep s{sr, a.alphabet(), Matrix(sr, 1, r), std::vector<Matrix>(a.letters(), Matrix(sr, r, r)), Matrix(sr, r, 1)};
    s.lambda.set(0, static_cast<std::size_t>(a.initial()), sr.one());
    for (std::size_t q = 0; q < r; ++q) {
        s.gamma.set(q, 0, convert_value(a.output(static_cast<int>(q)), a.semiring(), sr));
        for (std::size_t l = 0; l < a.letters(); ++l)
            s.mu[l].set(q, static_cast<std::size_t>(a.next(static_cast<int>(q), static_cast<int>(l))), sr.one());
    }
    return {a.multi(), s};
}
inline RegularSequence from_dfao(const Dfao& a) { return from_dfao(a, a.semiring()); }

// S_g = S_f (.) char(A* \ F) + sum over patched words.
inline RegularSequence finite_modify(const RegularSequence& f, const std::map<std::vector<BigInt>, Value>& patch) {
    if (patch.empty()) return f;
    const Alphabet& alpha = f.multi.alphabet();
    std::map<LetterWord, Value> terms;
    std::vector<LetterWord> words;
    for (const auto& [n, v] : patch) {
        LetterWord w = f.multi.rep(n);
        terms[w] = v;
        words.push_back(w);
    }
    LinRep outside = char_series(complement(words_dfa(alpha, words)), f.semiring());
    return {f.multi, add_series(hadamard(f.series, outside), polynomial(f.semiring(), alpha, terms))};
}

// n -> f(n with k inserted at position `axis`).
inline RegularSequence project(const RegularSequence& f, std::size_t axis, const BigInt& k) {
    const MultiAns& multi = f.multi;
    if (multi.dim() < 2) throw PreconditionError("projection needs dimension at least 2");
    if (axis >= multi.dim()) throw ValidationError("projection axis out of range");
    const Ans& sys = multi.system(axis);
    LetterWord rep_k = sys.rep(k);
    Dfa only_k = words_dfa(sys.alphabet(), {rep_k});
    Dfa fixed = intersect(padded_join(multi.alphabet(), {{&only_k, {axis}}}, kPad), multi.language());
    LinRep restricted = hadamard(f.series, char_series(fixed, f.semiring()));

    MultiAns target = multi.without(axis);
    std::vector<std::size_t> others;
    for (std::size_t i = 0; i < multi.dim(); ++i)
        if (i != axis) others.push_back(i);
    const std::size_t r = restricted.dim();
    LinRep lifted{f.semiring(), target.alphabet(), restricted.lambda, std::vector<Matrix>(target.alphabet().size(), Matrix(f.semiring(), r, r)),
                  restricted.gamma};
    for (std::size_t l = 0; l < multi.alphabet().size(); ++l) {
        Letter b = restrict_letter(multi.alphabet()[l], others);
        if (is_all(b, kPad)) continue;
        std::size_t idx = static_cast<std::size_t>(target.alphabet().require(b));
        lifted.mu[idx] = mat_add(lifted.mu[idx], restricted.mu[l]);
    }
    RegularSequence g{target, lifted};
    // Points whose representation is shorter than rep(k) lose their leading letters.
    std::map<std::vector<BigInt>, Value> patch;
    if (!rep_k.empty())
        for (const LetterWord& w : accepted_words(target.language(), rep_k.size() - 1)) {
            std::vector<BigInt> n = target.val(w);
            std::vector<BigInt> full = n;
            full.insert(full.begin() + static_cast<long>(axis), k);
            patch[n] = f.eval(full);
        }
    return finite_modify(g, patch);
}

// c with |f(n)| <= c^(|rep(n)|+2) for the max-row-sum norm.
inline BigRat growth_bound(const RegularSequence& f) {
    const LinRep& s = f.series;
    if (!s.sr.has_norm()) throw PreconditionError("growth bound needs a normed semiring (Nat, Int, Rat)");
    BigRat c = std::max(max_row_sum_norm(s.lambda), max_row_sum_norm(s.gamma));
    for (const Matrix& m : s.mu) c = std::max(c, max_row_sum_norm(m));
    return c;
}

}  // namespace anskit

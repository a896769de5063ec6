#pragma once

// Synchronized relations and sequences, and composition of recognizable
// series with synchronized relations.

#include "anskit/counting.hpp"

namespace anskit {

// (A_$ x B_$) minus the all-$ letter; a padded side is the all-$ tuple of its arity.
inline Alphabet relation_alphabet(const Alphabet& left, const Alphabet& right) {
    std::vector<Letter> lefts = left.letters(), rights = right.letters();
    lefts.emplace_back(left.arity(), kRelPad);
    rights.emplace_back(right.arity(), kRelPad);
    std::vector<Letter> out;
    for (std::size_t i = 0; i < lefts.size(); ++i)
        for (std::size_t j = 0; j < rights.size(); ++j) {
            if (i + 1 == lefts.size() && j + 1 == rights.size()) continue;
            Letter l = lefts[i];
            l.insert(l.end(), rights[j].begin(), rights[j].end());
            out.push_back(std::move(l));
        }
    return Alphabet(std::move(out));
}

struct SyncRelation {
    Alphabet left, right;
    Dfa dfa;  // over relation_alphabet(left, right), canonically $-padded

    Alphabet alphabet() const { return dfa.alphabet(); }
    std::vector<std::size_t> left_tapes() const {
        std::vector<std::size_t> t(left.arity());
        std::iota(t.begin(), t.end(), 0);
        return t;
    }
    std::vector<std::size_t> right_tapes() const {
        std::vector<std::size_t> t(right.arity());
        std::iota(t.begin(), t.end(), left.arity());
        return t;
    }
    // Letter index pair (left, right) of a relation letter; -1 marks padding.
    std::pair<int, int> split(std::size_t letter) const {
        const Letter& l = dfa.alphabet()[letter];
        Letter x = restrict_letter(l, left_tapes()), y = restrict_letter(l, right_tapes());
        return {is_all(x, kRelPad) ? -1 : left.require(x), is_all(y, kRelPad) ? -1 : right.require(y)};
    }
    // (u, v) padded with leading $ on the shorter side.
    LetterWord pad_pair(const LetterWord& u, const LetterWord& v) const {
        std::size_t n = std::max(u.size(), v.size());
        const Alphabet alpha = alphabet();
        LetterWord out;
        for (std::size_t i = 0; i < n; ++i) {
            std::size_t su = n - u.size(), sv = n - v.size();
            Letter l = i < su ? Letter(left.arity(), kRelPad) : left[static_cast<std::size_t>(u[i - su])];
            Letter r = i < sv ? Letter(right.arity(), kRelPad) : right[static_cast<std::size_t>(v[i - sv])];
            l.insert(l.end(), r.begin(), r.end());
            out.push_back(alpha.require(l));
        }
        return out;
    }
    bool related(const LetterWord& u, const LetterWord& v) const { return dfa.accepts(pad_pair(u, v)); }
};

// Checks the alphabet and the canonical padding, then minimizes.
inline SyncRelation make_relation(const Alphabet& left, const Alphabet& right, const Dfa& d) {
    Alphabet alpha = relation_alphabet(left, right);
    for (const Letter& l : d.alphabet().letters())
        if (alpha.index_of(l) < 0) throw ValidationError("letter " + letter_str(l) + " is not a relation letter");
    Dfa r = reindex(d, alpha);
    SyncRelation out{left, right, r};
    Dfa canon = canonical_padding_dfa(alpha, {out.left_tapes(), out.right_tapes()}, kRelPad);
    if (!is_subset(r, canon)) throw ValidationError("relation automaton accepts a non-canonically padded word");
    out.dfa = minimize(r);
    return out;
}

inline SyncRelation identity_relation(const Alphabet& a) {
    Alphabet alpha = relation_alphabet(a, a);
    Dfa d(alpha);
    d.set_initial(d.add_state(true));
    for (const Letter& l : a.letters()) {
        Letter ll = l;
        ll.insert(ll.end(), l.begin(), l.end());
        d.set_next(0, alpha.require(ll), 0);
    }
    return {a, a, d};
}

// Composition r2 o r1: u (r2 o r1) w iff u r1 v and v r2 w for some v.
inline SyncRelation compose_relations(const SyncRelation& r1, const SyncRelation& r2) {
    if (!(r1.right == r2.left)) throw ValidationError("middle alphabets of the composed relations differ");
    const std::size_t ka = r1.left.arity(), kb = r1.right.arity(), kc = r2.right.arity();
    std::vector<std::vector<Letter>> sides(3);
    const Alphabet* parts[3] = {&r1.left, &r1.right, &r2.right};
    for (int i = 0; i < 3; ++i) {
        sides[static_cast<std::size_t>(i)] = parts[i]->letters();
        sides[static_cast<std::size_t>(i)].emplace_back(parts[i]->arity(), kRelPad);
    }
    std::vector<Letter> letters;
    for (const Letter& a : sides[0])
        for (const Letter& b : sides[1])
            for (const Letter& c : sides[2]) {
                if (is_all(a, kRelPad) && is_all(b, kRelPad) && is_all(c, kRelPad)) continue;
                Letter l = a;
                l.insert(l.end(), b.begin(), b.end());
                l.insert(l.end(), c.begin(), c.end());
                letters.push_back(std::move(l));
            }
    Alphabet triple(std::move(letters));
    std::vector<std::size_t> first(ka + kb), second(kb + kc), outer;
    std::iota(first.begin(), first.end(), 0);
    std::iota(second.begin(), second.end(), ka);
    for (std::size_t t = 0; t < ka; ++t) outer.push_back(t);
    for (std::size_t t = 0; t < kc; ++t) outer.push_back(ka + kb + t);
    Dfa join = padded_join(triple, {{&r1.dfa, first}, {&r2.dfa, second}}, kRelPad);
    Alphabet target = relation_alphabet(r1.left, r2.right);
    // Positions padded on both outer tapes form a prefix; erasing them re-canonicalizes.
    Dfa d = determinize(project_tapes(join, outer, target, kRelPad));
    return make_relation(r1.left, r2.right, d);
}

// ---------------------------------------------------------------------------
// Synchronized sequences N^d -> N^d' given by their #-padded graphs.

struct SyncSequence {
    MultiAns input, output;
    Dfa graph;  // over concat(input, output), canonically #-padded

    Predicate predicate() const { return Predicate({input, output}, graph); }

    std::vector<BigInt> eval(const std::vector<BigInt>& n) const {
        Predicate at = combine(Connective::And, predicate(), lift(constant_predicate(input, n), {input, output}, {0}));
        Dfa image = trim(quantify(Quantifier::Exists, at, 0).dfa());
        std::vector<LetterWord> words = accepted_words(image, image.size());
        if (words.empty()) throw PreconditionError("sequence undefined at this point");
        return output.val(words.front());
    }
};

inline SyncSequence make_sequence(const MultiAns& input, const MultiAns& output, const Dfa& graph) {
    Predicate p({input, output}, graph);
    return {input, output, minimize(p.dfa())};
}

inline SyncSequence identity_sequence(const MultiAns& multi) {
    Predicate eq = equality_predicate(multi);
    return {multi, multi, eq.dfa()};
}

// Every input has an image.
inline bool is_total(const SyncSequence& f) {
    return decide_closed(quantify(Quantifier::Exists, f.predicate(), 1), ClosedMode::Forall);
}
// No input has two images.
inline bool is_functional(const SyncSequence& f) {
    std::vector<MultiAns> blocks{f.input, f.output, f.output};
    Predicate two = combine(Connective::And, lift(f.predicate(), blocks, {0, 1}), lift(f.predicate(), blocks, {0, 2}));
    Predicate differ = combine(Connective::And, two, negate(lift(equality_predicate(f.output), blocks, {1, 2})));
    Predicate some = quantify(Quantifier::Exists, quantify(Quantifier::Exists, differ, 2), 1);
    return !decide_closed(some, ClosedMode::Exists);
}

// Relabels the #-padded graph as a $-padded relation between representations.
inline SyncRelation sequence_to_relation(const SyncSequence& f) {
    const MultiAns joint = concat_blocks({f.input, f.output});
    const std::size_t d = f.input.dim(), e = f.output.dim();
    Alphabet alpha = relation_alphabet(f.input.alphabet(), f.output.alphabet());
    Dfa graph = reindex(f.graph, joint.alphabet());
    Dfa out(alpha);
    for (std::size_t q = 0; q < graph.size(); ++q) out.add_state(graph.is_final(static_cast<int>(q)));
    out.set_initial(graph.initial());
    for (std::size_t l = 0; l < joint.alphabet().size(); ++l) {
        Letter g = joint.alphabet()[l];
        bool in_pad = is_all(Letter(g.begin(), g.begin() + static_cast<long>(d)), kPad);
        bool out_pad = is_all(Letter(g.begin() + static_cast<long>(d), g.end()), kPad);
        for (std::size_t t = 0; t < d + e; ++t)
            if ((t < d && in_pad) || (t >= d && out_pad)) g[t] = kRelPad;
        int target = alpha.require(g);
        for (std::size_t q = 0; q < graph.size(); ++q) out.set_next(static_cast<int>(q), target, graph.next(static_cast<int>(q), static_cast<int>(l)));
    }
    return {f.input.alphabet(), f.output.alphabet(), minimize(out)};
}

// Inverse relabelling; the relation must relate representations only.
inline SyncSequence relation_to_sequence(const SyncRelation& r, const MultiAns& input, const MultiAns& output) {
    if (!(r.left == input.alphabet()) || !(r.right == output.alphabet()))
        throw ValidationError("relation alphabets differ from the numeration alphabets");
    const MultiAns joint = concat_blocks({input, output});
    const std::size_t d = input.dim(), e = output.dim();
    Dfa out(joint.alphabet());
    for (std::size_t q = 0; q < r.dfa.size(); ++q) out.add_state(r.dfa.is_final(static_cast<int>(q)));
    out.set_initial(r.dfa.initial());
    for (std::size_t l = 0; l < r.dfa.letters(); ++l) {
        Letter g = r.dfa.alphabet()[l];
        for (std::size_t t = 0; t < d + e; ++t)
            if (g[t] == kRelPad) g[t] = kPad;
        int target = joint.alphabet().require(g);
        for (std::size_t q = 0; q < r.dfa.size(); ++q) out.set_next(static_cast<int>(q), target, r.dfa.next(static_cast<int>(q), static_cast<int>(l)));
    }
    if (!is_subset(out, joint.language())) throw ValidationError("relation relates words outside the numeration languages");
    return {input, output, minimize(out)};
}

inline SyncSequence compose_sequences(const SyncSequence& f, const SyncSequence& g) {
    if (!(f.output == g.input)) throw ValidationError("output system of the inner sequence differs from the input system of the outer one");
    return relation_to_sequence(compose_relations(sequence_to_relation(f), sequence_to_relation(g)), f.input, g.output);
}

// n -> n+1 on one system, from the radix-order characterization.
inline SyncSequence successor_sequence(const Ans& a) {
    MultiAns block(a, 1);
    FormulaCompiler fc(block, standard_library(block));
    CompiledFormula c = fc.compile("(and (radix_lt u v) (not (exists x (and (radix_lt u x) (radix_lt x v)))))", {"u", "v"});
    SyncSequence s{block, block, minimize(c.predicate->dfa())};
    if (!is_total(s) || !is_functional(s)) throw PreconditionError("successor relation of '" + a.name() + "' is not a total function");
    return s;
}

inline SyncRelation successor(const Ans& a) { return sequence_to_relation(successor_sequence(a)); }

inline SyncRelation plus_k(const Ans& a, std::size_t k) {
    MultiAns block(a, 1);
    SyncRelation r = sequence_to_relation(identity_sequence(block));
    if (k == 0) return r;
    SyncRelation step = successor(a);
    r = step;
    for (std::size_t i = 1; i < k; ++i) r = compose_relations(r, step);
    return r;
}

// n -> n + k componentwise.
inline SyncSequence shift_sequence(const MultiAns& multi, const std::vector<std::size_t>& k) {
    const std::size_t d = multi.dim();
    if (k.size() != d) throw ValidationError("shift vector has the wrong dimension");
    MultiAns joint = concat_blocks({multi, multi});
    std::vector<Dfa> graphs;
    graphs.reserve(d);
    for (std::size_t i = 0; i < d; ++i) {
        MultiAns one(multi.system(i), 1);
        graphs.push_back(relation_to_sequence(plus_k(multi.system(i), k[i]), one, one).graph);
    }
    std::vector<TapeGroup> groups;
    for (std::size_t i = 0; i < d; ++i) groups.push_back({&graphs[i], {i, d + i}});
    return make_sequence(multi, multi, padded_join(joint.alphabet(), groups, kPad));
}

// One-dimensional output: n -> Card{l : l < f(n)} counted by projection.
inline RegularSequence sync_to_regular(const SyncSequence& f) {
    if (f.output.dim() != 1) throw PreconditionError("sync_to_regular needs a one-dimensional output");
    std::vector<MultiAns> blocks{f.input, f.output, f.output};
    Predicate graph = lift(f.predicate(), blocks, {0, 1});
    Predicate below = lift(less_predicate(f.output), blocks, {2, 1});
    Predicate x = quantify(Quantifier::Exists, combine(Connective::And, graph, below), 1);
    return demote_to_nat(count_projection(x, 1));
}

// Finite-image synchronized sequence with one-dimensional output as a DFAO over N.
inline Dfao sync_automatic(const SyncSequence& f) {
    if (f.output.dim() != 1) throw PreconditionError("sync_automatic needs a one-dimensional output");
    Predicate p = f.predicate();
    Dfa image = minimize(quantify(Quantifier::Exists, p, 0).dfa());
    if (is_infinite(image)) throw PreconditionError("sequence takes infinitely many values");
    std::vector<BigInt> values;
    std::vector<Dfa> fibers;
    for (const LetterWord& w : accepted_words(image, image.size())) {
        std::vector<BigInt> v = f.output.val(w);
        Predicate at = combine(Connective::And, p, lift(constant_predicate(f.output, v), {f.input, f.output}, {1}));
        values.push_back(v[0]);
        fibers.push_back(complete(minimize(quantify(Quantifier::Exists, at, 1).dfa())));
    }
    Dfao out(f.input, Semiring::nat());
    std::map<std::vector<int>, int> ids;
    std::vector<std::vector<int>> states;
    auto intern = [&](std::vector<int> s) {
        auto it = ids.find(s);
        if (it != ids.end()) return it->second;
        Value v(0);
        int hits = 0;
        for (std::size_t i = 0; i < s.size(); ++i)
            if (fibers[i].is_final(s[i])) {
                v = Value(values[i]);
                ++hits;
            }
        if (hits > 1) throw ValidationError("graph is not functional");
        int id = out.add_state(v);
        ids.emplace(s, id);
        states.push_back(std::move(s));
        return id;
    };
    std::vector<int> start;
    for (const Dfa& fd : fibers) start.push_back(fd.initial());
    out.set_initial(intern(start));
    for (std::size_t i = 0; i < states.size(); ++i)
        for (std::size_t l = 0; l < out.letters(); ++l) {
            std::vector<int> nx;
            for (std::size_t j = 0; j < fibers.size(); ++j) {
                int li = fibers[j].alphabet().require(f.input.alphabet()[l]);
                nx.push_back(fibers[j].next(states[i][j], li));
            }
            int t = intern(std::move(nx));
            out.set_next(static_cast<int>(i), static_cast<int>(l), t);
        }
    return minimize_dfao(out);
}

// Graph of a DFAO with natural outputs, written in `output_system`.
inline SyncSequence dfao_to_sync(const Dfao& a, const Ans& output_system) {
    MultiAns out(output_system, 1);
    std::vector<MultiAns> blocks{a.multi(), out};
    Dfa graph = empty_dfa(concat_blocks(blocks).alphabet());
    for (const auto& [v, fiber] : dfao_fibers(a)) {
        if (v.is_inf() || !v.is_integer() || v.num() < 0) throw PreconditionError("DFAO output is not a natural number");
        Predicate piece = combine(Connective::And, lift(Predicate({a.multi()}, fiber), blocks, {0}),
                                  lift(constant_predicate(out, {v.num()}), blocks, {1}));
        graph = unite(graph, piece.dfa());
    }
    return make_sequence(a.multi(), out, graph);
}

// ---------------------------------------------------------------------------
// Composition of a recognizable series S over B with a relation R: A -> B,
// (S o R, u) = sum over u R v of (S, v).

struct ComposedAutomaton {
    Semiring sr;
    Alphabet alphabet;             // A; the $ letter is kept separately
    Vec initial, final_weights;    // final weight of `start` already patched for the empty word
    std::vector<Matrix> moves;     // one per letter of A
    Matrix pad_moves;              // label $
    std::size_t start = 0, alpha = 0;
    Value start_final_unpatched;

    std::size_t states() const { return initial.size(); }

    // Linear representation over A restricted to the useful states.
    LinRep series() const {
        const std::size_t n = states();
        auto sweep = [&](const Vec& seeds, bool forward) {
            std::vector<char> mark(n, 0);
            std::vector<std::size_t> stack;
            for (std::size_t i = 0; i < n; ++i)
                if (!seeds[i].is_zero()) {
                    mark[i] = 1;
                    stack.push_back(i);
                }
            while (!stack.empty()) {
                std::size_t i = stack.back();
                stack.pop_back();
                for (const Matrix& m : moves)
                    for (std::size_t j = 0; j < n; ++j)
                        if (!mark[j] && !(forward ? m.at(i, j) : m.at(j, i)).is_zero()) {
                            mark[j] = 1;
                            stack.push_back(j);
                        }
            }
            return mark;
        };
        std::vector<char> acc = sweep(initial, true), coacc = sweep(final_weights, false);
        std::vector<std::size_t> keep;
        for (std::size_t i = 0; i < n; ++i)
            if (acc[i] && coacc[i]) keep.push_back(i);
        if (keep.empty()) return zero_series(sr, alphabet);
        const std::size_t k = keep.size();
        LinRep out{sr, alphabet, Matrix(sr, 1, k), std::vector<Matrix>(moves.size(), Matrix(sr, k, k)), Matrix(sr, k, 1)};
        for (std::size_t a = 0; a < k; ++a) {
            out.lambda.set(0, a, initial[keep[a]]);
            out.gamma.set(a, 0, final_weights[keep[a]]);
            for (std::size_t l = 0; l < moves.size(); ++l)
                for (std::size_t b = 0; b < k; ++b) out.mu[l].set(a, b, moves[l].at(keep[a], keep[b]));
        }
        return out;
    }
};

namespace detail {

// Unique initial state without incoming transitions, appended last, with a $-loop of weight 1.
struct PaddedWeighted {
    std::size_t n;
    std::size_t init;
    std::vector<Matrix> mu;  // per letter of B
    Vec final_weights;
};

inline PaddedWeighted normalize_series(const LinRep& s) {
    const Semiring& sr = s.sr;
    const std::size_t n = s.dim() + 1, init = s.dim();
    PaddedWeighted b{n, init, std::vector<Matrix>(s.mu.size(), Matrix(sr, n, n)), Vec(n, sr.zero())};
    Vec lambda = s.lambda.data();
    for (std::size_t l = 0; l < s.mu.size(); ++l) {
        Vec row = vec_mat(sr, lambda, s.mu[l]);
        for (std::size_t i = 0; i < s.dim(); ++i) {
            b.mu[l].set(init, i, row[i]);
            for (std::size_t j = 0; j < s.dim(); ++j) b.mu[l].set(i, j, s.mu[l].at(i, j));
        }
    }
    Vec gamma = s.gamma.data();
    for (std::size_t i = 0; i < s.dim(); ++i) b.final_weights[i] = gamma[i];
    b.final_weights[init] = dot(sr, lambda, gamma);
    return b;
}

// Initial state without incoming transitions.
inline Dfa fresh_initial(const Dfa& d0) {
    Dfa d = trim(d0);
    bool incoming = false;
    for (std::size_t q = 0; q < d.size() && !incoming; ++q)
        for (std::size_t l = 0; l < d.letters(); ++l)
            if (d.next(static_cast<int>(q), static_cast<int>(l)) == d.initial()) incoming = true;
    if (!incoming) return d;
    int copy = d.add_state(d.is_final(d.initial()));
    for (std::size_t l = 0; l < d.letters(); ++l) d.set_next(copy, static_cast<int>(l), d.next(d.initial(), static_cast<int>(l)));
    d.set_initial(copy);
    return d;
}

}  // namespace detail

inline ComposedAutomaton compose_automaton(const LinRep& s, const SyncRelation& r) {
    if (!(s.alphabet == r.right)) throw ValidationError("series alphabet differs from the relation's output alphabet");
    const Semiring& sr = s.sr;
    const detail::PaddedWeighted b = detail::normalize_series(s);
    const Dfa a = detail::fresh_initial(r.dfa);
    const std::size_t na = a.size(), nb = b.n, n = na * nb + 1;
    const std::size_t letters = r.left.size();
    auto id = [&](std::size_t qa, std::size_t qb) { return qa * nb + qb; };

    ComposedAutomaton c{sr, r.left, Vec(n, sr.zero()), Vec(n, sr.zero()), std::vector<Matrix>(letters, Matrix(sr, n, n)),
                        Matrix(sr, n, n), id(static_cast<std::size_t>(a.initial()), b.init), n - 1, sr.zero()};
    for (std::size_t qa = 0; qa < na; ++qa)
        for (std::size_t l = 0; l < a.letters(); ++l) {
            int ta = a.next(static_cast<int>(qa), static_cast<int>(l));
            if (ta < 0) continue;
            auto [x, y] = r.split(l);
            Matrix& m = x < 0 ? c.pad_moves : c.moves[static_cast<std::size_t>(x)];
            for (std::size_t qb = 0; qb < nb; ++qb)
                for (std::size_t tb = 0; tb < nb; ++tb) {
                    Value w = y < 0 ? (qb == b.init && tb == b.init ? sr.one() : sr.zero()) : b.mu[static_cast<std::size_t>(y)].at(qb, tb);
                    if (w.is_zero()) continue;
                    std::size_t i = id(qa, qb), j = id(static_cast<std::size_t>(ta), tb);
                    m.set(i, j, sr.add(m.at(i, j), w));
                }
        }
    for (std::size_t qa = 0; qa < na; ++qa)
        if (a.is_final(static_cast<int>(qa)))
            for (std::size_t qb = 0; qb < nb; ++qb) c.final_weights[id(qa, qb)] = b.final_weights[qb];

    // Co-accessibility on non-zero transitions.
    std::vector<std::vector<std::size_t>> preds(n);
    auto note_edges = [&](const Matrix& m) {
        for (std::size_t i = 0; i + 1 < n; ++i)
            for (std::size_t j = 0; j + 1 < n; ++j)
                if (!m.at(i, j).is_zero()) preds[j].push_back(i);
    };
    for (const Matrix& m : c.moves) note_edges(m);
    note_edges(c.pad_moves);
    std::vector<char> coacc(n, 0);
    std::vector<std::size_t> stack;
    for (std::size_t i = 0; i + 1 < n; ++i)
        if (!c.final_weights[i].is_zero()) {
            coacc[i] = 1;
            stack.push_back(i);
        }
    while (!stack.empty()) {
        std::size_t j = stack.back();
        stack.pop_back();
        for (std::size_t i : preds[j])
            if (!coacc[i]) {
                coacc[i] = 1;
                stack.push_back(i);
            }
    }

    // $-paths from the start through co-accessible states must be acyclic.
    std::vector<char> seen(n, 0);
    std::vector<std::size_t> reach{c.start};
    seen[c.start] = 1;
    for (std::size_t k = 0; k < reach.size(); ++k)
        for (std::size_t j = 0; j + 1 < n; ++j)
            if (coacc[j] && !seen[j] && !c.pad_moves.at(reach[k], j).is_zero()) {
                seen[j] = 1;
                reach.push_back(j);
            }
    std::vector<int> indeg(n, 0);
    for (std::size_t i : reach)
        for (std::size_t j : reach)
            if (!c.pad_moves.at(i, j).is_zero()) ++indeg[j];
    std::vector<std::size_t> order;
    for (std::size_t i : reach)
        if (indeg[i] == 0) order.push_back(i);
    for (std::size_t k = 0; k < order.size(); ++k)
        for (std::size_t j : reach)
            if (!c.pad_moves.at(order[k], j).is_zero() && --indeg[j] == 0) order.push_back(j);
    if (order.size() != reach.size())
        throw PreconditionError("composition undefined: some input is related to infinitely many outputs (cycle of $-input transitions)");

    // v = sum over l >= 1 of start . pad^l, restricted to co-accessible states.
    Vec cur(n, sr.zero()), v(n, sr.zero());
    cur[c.start] = sr.one();
    for (std::size_t step = 0; step <= n; ++step) {
        cur = vec_mat(sr, cur, c.pad_moves);
        bool any = false;
        for (std::size_t j = 0; j < n; ++j) {
            if (!coacc[j]) cur[j] = sr.zero();
            if (!cur[j].is_zero()) {
                any = true;
                v[j] = sr.add(v[j], cur[j]);
            }
        }
        if (!any) break;
    }
    for (std::size_t l = 0; l < letters; ++l) {
        Vec row = vec_mat(sr, v, c.moves[l]);
        for (std::size_t j = 0; j + 1 < n; ++j)
            if (coacc[j]) c.moves[l].set(c.alpha, j, row[j]);
    }
    c.initial[c.start] = sr.one();
    c.initial[c.alpha] = sr.one();
    c.start_final_unpatched = c.final_weights[c.start];
    c.final_weights[c.start] = sr.add(c.final_weights[c.start], dot(sr, v, c.final_weights));
    return c;
}

inline LinRep compose_series_relation(const LinRep& s, const SyncRelation& r) { return compose_automaton(s, r).series(); }

// g o f for a total synchronized f and a regular g on the output system of f.
inline RegularSequence compose_sync_regular(const SyncSequence& f, const RegularSequence& g) {
    if (!(g.multi == f.output)) throw ValidationError("regular sequence is not over the output system of the synchronized sequence");
    if (!is_total(f)) throw PreconditionError("synchronized sequence is not total");
    // The graph relates representations only, so the result already vanishes off the language.
    return {f.input, compose_series_relation(g.series, sequence_to_relation(f))};
}

}  // namespace anskit

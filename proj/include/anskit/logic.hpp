#pragma once

// Recognizable predicates on tuples of N^d blocks and a first-order compiler.

#include <cctype>
#include <functional>
#include <sstream>

#include "anskit/dfao.hpp"

namespace anskit {

inline MultiAns concat_blocks(const std::vector<MultiAns>& blocks) {
    if (blocks.empty()) throw ValidationError("a predicate needs at least one variable block");
    std::vector<Ans> systems;
    for (const MultiAns& b : blocks) systems.insert(systems.end(), b.systems().begin(), b.systems().end());
    return MultiAns(std::move(systems));
}

// A subset of N^{d_1} x ... x N^{d_m}; the automaton reads the jointly padded
// representation and accepts only canonical words.
class Predicate {
public:
    Predicate() = default;
    Predicate(std::vector<MultiAns> blocks, const Dfa& d) : blocks_(std::move(blocks)), space_(concat_blocks(blocks_)) {
        if (!(d.alphabet() == space_.alphabet())) throw ValidationError("predicate automaton has the wrong alphabet");
        dfa_ = minimize(intersect(d, space_.language()));
    }

    std::size_t arity() const { return blocks_.size(); }
    const std::vector<MultiAns>& blocks() const { return blocks_; }
    const MultiAns& block(std::size_t i) const { return blocks_.at(i); }
    const MultiAns& space() const { return space_; }
    const Dfa& dfa() const { return dfa_; }

    std::vector<std::size_t> tapes_of(std::size_t block) const {
        std::size_t off = 0;
        for (std::size_t i = 0; i < block; ++i) off += blocks_[i].dim();
        std::vector<std::size_t> t(blocks_.at(block).dim());
        std::iota(t.begin(), t.end(), off);
        return t;
    }

    bool holds(const std::vector<std::vector<BigInt>>& args) const {
        if (args.size() != arity()) throw ValidationError("expected " + std::to_string(arity()) + " arguments");
        std::vector<BigInt> flat;
        for (std::size_t i = 0; i < args.size(); ++i) {
            if (args[i].size() != blocks_[i].dim()) throw ValidationError("argument " + std::to_string(i + 1) + " has the wrong dimension");
            flat.insert(flat.end(), args[i].begin(), args[i].end());
        }
        return dfa_.accepts(space_.rep(flat));
    }
    // Shorthand for blocks of dimension 1.
    bool holds_scalars(const std::vector<BigInt>& args) const {
        std::vector<std::vector<BigInt>> blocks;
        for (const BigInt& a : args) blocks.push_back({a});
        return holds(blocks);
    }

private:
    std::vector<MultiAns> blocks_;
    MultiAns space_;
    Dfa dfa_;
};

inline bool same_blocks(const Predicate& p, const Predicate& q) {
    if (p.arity() != q.arity()) return false;
    for (std::size_t i = 0; i < p.arity(); ++i)
        if (!(p.block(i) == q.block(i))) return false;
    return true;
}

inline Predicate full_predicate(const std::vector<MultiAns>& blocks) {
    MultiAns space = concat_blocks(blocks);
    return Predicate(blocks, space.language());
}
inline Predicate empty_predicate(const std::vector<MultiAns>& blocks) {
    return Predicate(blocks, empty_dfa(concat_blocks(blocks).alphabet()));
}

// Re-expresses p over `blocks`, its block j becoming block positions[j].
// Positions may repeat (diagonal) and unused blocks are unconstrained.
inline Predicate lift(const Predicate& p, const std::vector<MultiAns>& blocks, const std::vector<std::size_t>& positions) {
    if (positions.size() != p.arity()) throw ValidationError("one position per predicate block is required");
    Predicate shape = full_predicate(blocks);
    std::vector<std::size_t> tapes;
    for (std::size_t j = 0; j < positions.size(); ++j) {
        if (positions[j] >= blocks.size()) throw ValidationError("block position out of range");
        if (!(blocks[positions[j]] == p.block(j))) throw ValidationError("block numeration systems differ");
        std::vector<std::size_t> t = shape.tapes_of(positions[j]);
        tapes.insert(tapes.end(), t.begin(), t.end());
    }
    return Predicate(blocks, padded_join(shape.space().alphabet(), {{&p.dfa(), tapes}}, kPad));
}

// Inserts an unconstrained block at `position`.
inline Predicate add_variable(const Predicate& p, std::size_t position, const MultiAns& block) {
    if (position > p.arity()) throw ValidationError("variable position out of range");
    std::vector<MultiAns> blocks = p.blocks();
    blocks.insert(blocks.begin() + static_cast<long>(position), block);
    std::vector<std::size_t> pos;
    for (std::size_t j = 0; j < p.arity(); ++j) pos.push_back(j < position ? j : j + 1);
    return lift(p, blocks, pos);
}
inline Predicate add_variable(const Predicate& p, std::size_t position) {
    return add_variable(p, position, p.block(std::min(position, p.arity() - 1)));
}

enum class Connective { And, Or, Not, Implies, Iff };

inline Predicate negate(const Predicate& p) { return Predicate(p.blocks(), difference(p.space().language(), p.dfa())); }

inline Predicate combine(Connective op, const Predicate& p, const Predicate& q) {
    if (op == Connective::Not) return negate(p);
    if (!same_blocks(p, q)) throw ValidationError("connective operands have different variable blocks");
    switch (op) {
        case Connective::And: return Predicate(p.blocks(), intersect(p.dfa(), q.dfa()));
        case Connective::Or: return Predicate(p.blocks(), unite(p.dfa(), q.dfa()));
        case Connective::Implies: return Predicate(p.blocks(), unite(negate(p).dfa(), q.dfa()));
        default: return Predicate(p.blocks(), complement(product(p.dfa(), q.dfa(), BoolOp::SymmetricDifference)));
    }
}

enum class Quantifier { Exists, Forall };

inline Predicate quantify(Quantifier qt, const Predicate& p, std::size_t block) {
    if (p.arity() < 2) throw PreconditionError("quantifying needs arity at least 2; use decide_closed for sentences");
    if (block >= p.arity()) throw ValidationError("block index out of range");
    if (qt == Quantifier::Forall) return negate(quantify(Quantifier::Exists, negate(p), block));
    std::vector<MultiAns> rest = p.blocks();
    rest.erase(rest.begin() + static_cast<long>(block));
    MultiAns target = concat_blocks(rest);
    std::vector<std::size_t> keep;
    std::vector<std::size_t> drop = p.tapes_of(block);
    for (std::size_t t = 0; t < p.space().dim(); ++t)
        if (std::find(drop.begin(), drop.end(), t) == drop.end()) keep.push_back(t);
    // Positions where every kept tape is padding are leading; erasing them
    // leaves the canonical padding of the remaining blocks.
    Dfa d = determinize(project_tapes(p.dfa(), keep, target.alphabet(), kPad));
    return Predicate(rest, d);
}

enum class ClosedMode { Exists, Forall, ExistsInfinitelyMany };

inline bool decide_closed(const Predicate& p, ClosedMode mode) {
    if (p.arity() != 1) throw PreconditionError("decide_closed expects a predicate with one free variable block");
    switch (mode) {
        case ClosedMode::Exists: return !is_empty(p.dfa());
        case ClosedMode::Forall: return equivalent(p.dfa(), p.space().language());
        default: return is_infinite(p.dfa());
    }
}

// x = y on N^d.
inline Predicate equality_predicate(const MultiAns& block) {
    MultiAns pair = block.power(2);
    const std::size_t d = block.dim();
    Dfa diag(pair.alphabet());
    diag.set_initial(diag.add_state(true));
    for (std::size_t l = 0; l < pair.alphabet().size(); ++l) {
        const Letter& letter = pair.alphabet()[l];
        bool same = true;
        for (std::size_t i = 0; i < d; ++i) same = same && letter[i] == letter[d + i];
        if (same) diag.set_next(0, static_cast<int>(l), 0);
    }
    return Predicate({block, block}, diag);
}

// x < y in every component (radix order of the component representations).
inline Predicate less_predicate(const MultiAns& block) {
    MultiAns pair = block.power(2);
    const std::size_t d = block.dim();
    // Symbol rank in each component: padding least, then digit order.
    auto symbol_rank = [&](std::size_t comp, const Symbol& s) {
        return s == kPad ? -1 : block.system(comp).alphabet().require({s});
    };
    std::size_t states = 1;
    for (std::size_t i = 0; i < d; ++i) states *= 3;  // per component: 0 equal, 1 less, 2 greater
    Dfa cmp(pair.alphabet());
    for (std::size_t s = 0; s < states; ++s) {
        bool all_less = true;
        std::size_t code = s;
        for (std::size_t i = 0; i < d; ++i, code /= 3) all_less = all_less && code % 3 == 1;
        cmp.add_state(all_less);
    }
    cmp.set_initial(0);
    for (std::size_t s = 0; s < states; ++s)
        for (std::size_t l = 0; l < pair.alphabet().size(); ++l) {
            const Letter& letter = pair.alphabet()[l];
            std::size_t code = s, next = 0, weight = 1;
            for (std::size_t i = 0; i < d; ++i, code /= 3, weight *= 3) {
                std::size_t c = code % 3;
                if (c == 0) {
                    int x = symbol_rank(i, letter[i]), y = symbol_rank(i, letter[d + i]);
                    c = x < y ? 1 : (x > y ? 2 : 0);
                }
                next += c * weight;
            }
            cmp.set_next(static_cast<int>(s), static_cast<int>(l), static_cast<int>(next));
        }
    return Predicate({block, block}, cmp);
}

inline Predicate enum_order_predicate(const EnumOrder& e, OrderRel rel) {
    return Predicate({e.multi(), e.multi()}, order_predicate(e, rel));
}
// Radix order of the block representations: the enumeration order with letters in alphabet order.
inline Predicate radix_less_predicate(const MultiAns& block) { return enum_order_predicate(EnumOrder::lex(block), OrderRel::Lt); }

// x + y = z in base b, read most significant digit first; the state is the
// carry owed to the digits read so far.
inline Predicate adder(unsigned b) {
    MultiAns block(Ans::integer_base(b), 1);
    MultiAns triple = block.power(3);
    auto digit = [](const Symbol& s) { return s == kPad ? 0 : std::stoi(s); };
    Dfa d(triple.alphabet());
    int zero = d.add_state(true), one = d.add_state(false);
    d.set_initial(zero);
    for (std::size_t l = 0; l < triple.alphabet().size(); ++l) {
        const Letter& letter = triple.alphabet()[l];
        int x = digit(letter[0]), y = digit(letter[1]), z = digit(letter[2]);
        for (int owed : {0, 1}) {
            int incoming = z + static_cast<int>(b) * owed - x - y;
            if (incoming == 0 || incoming == 1) d.set_next(owed == 0 ? zero : one, static_cast<int>(l), incoming == 0 ? zero : one);
        }
    }
    return Predicate({block, block, block}, d);
}

// The pairs (x, y) with f(x) = f(y) for the sequence of a DFAO.
inline Predicate seq_equality_predicate(const Dfao& a0) {
    Dfao a = complete_with_zero(a0);
    const MultiAns& block = a.multi();
    const std::size_t d = block.dim();
    MultiAns pair = block.power(2);
    std::vector<std::size_t> left(d), right(d);
    std::iota(left.begin(), left.end(), 0);
    std::iota(right.begin(), right.end(), d);
    Dfa prod(pair.alphabet());
    std::map<std::pair<int, int>, int> index;
    std::vector<std::pair<int, int>> states;
    auto intern = [&](int p, int q) {
        auto [it, fresh] = index.emplace(std::make_pair(p, q), static_cast<int>(states.size()));
        if (fresh) {
            states.emplace_back(p, q);
            prod.add_state(a.output(p) == a.output(q));
        }
        return it->second;
    };
    prod.set_initial(intern(a.initial(), a.initial()));
    for (std::size_t i = 0; i < states.size(); ++i)
        for (std::size_t l = 0; l < pair.alphabet().size(); ++l) {
            auto [p, q] = states[i];
            Letter x = restrict_letter(pair.alphabet()[l], left), y = restrict_letter(pair.alphabet()[l], right);
            int np = is_all(x, kPad) ? p : a.next(p, block.alphabet().require(x));
            int nq = is_all(y, kPad) ? q : a.next(q, block.alphabet().require(y));
            prod.set_next(static_cast<int>(i), static_cast<int>(l), intern(np, nq));
        }
    return Predicate({block, block}, prod);
}

// Singleton {c} for a block.
inline Predicate constant_predicate(const MultiAns& block, const std::vector<BigInt>& c) {
    return Predicate({block}, words_dfa(block.alphabet(), {block.rep(c)}));
}

// ---------------------------------------------------------------------------
// Formula compiler. Syntax (prefix S-expressions):
//   (and F G) (or F G) (not F) (implies F G) (iff F G)
//   (exists x F) (forall x F)
//   (NAME t1 ... tk)   NAME a library predicate, each ti a variable or (for
//                      one-dimensional blocks) a nonnegative integer literal
//   true false

struct SExpr {
    std::string atom;
    std::vector<SExpr> items;
    bool is_atom() const { return !atom.empty(); }
};

inline SExpr parse_sexpr(const std::string& text) {
    std::size_t pos = 0;
    auto skip = [&] {
        while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
    };
    std::function<SExpr()> parse = [&]() -> SExpr {
        skip();
        if (pos >= text.size()) throw ValidationError("unexpected end of formula");
        if (text[pos] == ')') throw ValidationError("unexpected ')' at offset " + std::to_string(pos));
        if (text[pos] == '(') {
            ++pos;
            SExpr e;
            for (;;) {
                skip();
                if (pos >= text.size()) throw ValidationError("missing ')'");
                if (text[pos] == ')') {
                    ++pos;
                    break;
                }
                e.items.push_back(parse());
            }
            if (e.items.empty()) throw ValidationError("empty list in formula");
            return e;
        }
        std::size_t start = pos;
        while (pos < text.size() && !std::isspace(static_cast<unsigned char>(text[pos])) && text[pos] != '(' && text[pos] != ')') ++pos;
        return SExpr{text.substr(start, pos - start), {}};
    };
    SExpr e = parse();
    skip();
    if (pos != text.size()) throw ValidationError("trailing text after formula at offset " + std::to_string(pos));
    return e;
}

using PredicateLibrary = std::map<std::string, Predicate>;

// Built-in names for a block system: eq, lt, radix_lt, and add for integer bases.
inline PredicateLibrary standard_library(const MultiAns& block) {
    PredicateLibrary lib;
    lib.emplace("eq", equality_predicate(block));
    lib.emplace("lt", less_predicate(block));
    lib.emplace("radix_lt", radix_less_predicate(block));
    if (block.dim() == 1) {
        const std::string& name = block.system(0).name();
        if (name.rfind("base:", 0) == 0) lib.emplace("add", adder(static_cast<unsigned>(std::stoul(name.substr(5)))));
    }
    return lib;
}

struct CompiledFormula {
    std::vector<std::string> vars;  // free variables, in block order
    std::optional<Predicate> predicate;  // absent for sentences
    bool truth = false;                  // value of a sentence
};

class FormulaCompiler {
public:
    FormulaCompiler(MultiAns block, PredicateLibrary library) : block_(std::move(block)), lib_(std::move(library)) {}

    // Free variables are ordered by first occurrence unless `order` is given.
    CompiledFormula compile(const std::string& text, const std::vector<std::string>& order = {}) const {
        CompiledFormula c = compile_node(parse_sexpr(text));
        if (!order.empty()) {
            for (const std::string& v : c.vars)
                if (std::find(order.begin(), order.end(), v) == order.end()) throw ValidationError("free variable '" + v + "' missing from the order");
            c = align(c, order);
        }
        return c;
    }

private:
    static bool is_literal(const std::string& s) { return !s.empty() && std::all_of(s.begin(), s.end(), ::isdigit); }

    std::vector<MultiAns> blocks(std::size_t n) const { return std::vector<MultiAns>(n, block_); }

    CompiledFormula sentence(bool v) const { return {{}, std::nullopt, v}; }

    // Re-expresses c over `vars` (a superset of its free variables).
    CompiledFormula align(const CompiledFormula& c, const std::vector<std::string>& vars) const {
        if (vars.empty()) return c;
        if (!c.predicate) return {vars, c.truth ? full_predicate(blocks(vars.size())) : empty_predicate(blocks(vars.size())), false};
        if (c.vars == vars) return c;
        std::vector<std::size_t> pos;
        for (const std::string& v : c.vars) pos.push_back(static_cast<std::size_t>(std::find(vars.begin(), vars.end(), v) - vars.begin()));
        return {vars, lift(*c.predicate, blocks(vars.size()), pos), false};
    }

    static std::vector<std::string> merge(const std::vector<std::string>& a, const std::vector<std::string>& b) {
        std::vector<std::string> out = a;
        for (const std::string& v : b)
            if (std::find(out.begin(), out.end(), v) == out.end()) out.push_back(v);
        return out;
    }

    CompiledFormula binary(Connective op, const CompiledFormula& x, const CompiledFormula& y) const {
        if (!x.predicate && !y.predicate) {
            switch (op) {
                case Connective::And: return sentence(x.truth && y.truth);
                case Connective::Or: return sentence(x.truth || y.truth);
                case Connective::Implies: return sentence(!x.truth || y.truth);
                default: return sentence(x.truth == y.truth);
            }
        }
        std::vector<std::string> vars = merge(x.vars, y.vars);
        CompiledFormula a = align(x, vars), b = align(y, vars);
        return {vars, combine(op, *a.predicate, *b.predicate), false};
    }

    CompiledFormula quantified(Quantifier q, const std::string& var, const CompiledFormula& body) const {
        auto it = std::find(body.vars.begin(), body.vars.end(), var);
        if (it == body.vars.end()) return body;
        std::size_t idx = static_cast<std::size_t>(it - body.vars.begin());
        if (body.vars.size() == 1)
            return sentence(decide_closed(*body.predicate, q == Quantifier::Exists ? ClosedMode::Exists : ClosedMode::Forall));
        std::vector<std::string> rest = body.vars;
        rest.erase(rest.begin() + static_cast<long>(idx));
        return {rest, quantify(q, *body.predicate, idx), false};
    }

    CompiledFormula compile_node(const SExpr& e) const {
        if (e.is_atom()) {
            if (e.atom == "true") return sentence(true);
            if (e.atom == "false") return sentence(false);
            throw ValidationError("expected a formula, got '" + e.atom + "'");
        }
        if (!e.items[0].is_atom()) throw ValidationError("operator must be a name");
        const std::string& op = e.items[0].atom;
        auto arg = [&](std::size_t i) { return compile_node(e.items.at(i)); };
        auto need = [&](std::size_t n) {
            if (e.items.size() != n + 1) throw ValidationError("'" + op + "' takes " + std::to_string(n) + " operands");
        };
        if (op == "not") {
            need(1);
            CompiledFormula x = arg(1);
            if (!x.predicate) return sentence(!x.truth);
            return {x.vars, negate(*x.predicate), false};
        }
        if (op == "and" || op == "or") {
            if (e.items.size() < 3) throw ValidationError("'" + op + "' takes at least two operands");
            CompiledFormula acc = arg(1);
            for (std::size_t i = 2; i < e.items.size(); ++i) acc = binary(op == "and" ? Connective::And : Connective::Or, acc, arg(i));
            return acc;
        }
        if (op == "implies" || op == "iff") {
            need(2);
            return binary(op == "implies" ? Connective::Implies : Connective::Iff, arg(1), arg(2));
        }
        if (op == "exists" || op == "forall") {
            need(2);
            if (!e.items[1].is_atom() || is_literal(e.items[1].atom)) throw ValidationError("quantifier needs a variable name");
            return quantified(op == "exists" ? Quantifier::Exists : Quantifier::Forall, e.items[1].atom, arg(2));
        }
        auto it = lib_.find(op);
        if (it == lib_.end()) throw ValidationError("unknown predicate '" + op + "'");
        const Predicate& p = it->second;
        if (e.items.size() != p.arity() + 1)
            throw ValidationError("'" + op + "' takes " + std::to_string(p.arity()) + " arguments");
        for (const MultiAns& b : p.blocks())
            if (!(b == block_)) throw ValidationError("predicate '" + op + "' uses another numeration system");
        // Literals become fresh variables fixed by a singleton constraint.
        std::vector<std::string> args, vars;
        std::vector<std::pair<std::string, BigInt>> literals;
        for (std::size_t i = 1; i < e.items.size(); ++i) {
            if (!e.items[i].is_atom()) throw ValidationError("predicate arguments must be variables or literals");
            std::string a = e.items[i].atom;
            if (is_literal(a)) {
                if (block_.dim() != 1) throw ValidationError("integer literals need one-dimensional blocks");
                std::string fresh = " lit" + std::to_string(i);
                literals.emplace_back(fresh, BigInt(a));
                a = fresh;
            }
            args.push_back(a);
            if (std::find(vars.begin(), vars.end(), a) == vars.end()) vars.push_back(a);
        }
        std::vector<std::size_t> pos;
        for (const std::string& a : args) pos.push_back(static_cast<std::size_t>(std::find(vars.begin(), vars.end(), a) - vars.begin()));
        CompiledFormula c{vars, lift(p, blocks(vars.size()), pos), false};
        for (const auto& [name, value] : literals) {
            CompiledFormula fixed{{name}, constant_predicate(block_, {value}), false};
            c = quantified(Quantifier::Exists, name, binary(Connective::And, c, fixed));
        }
        return c;
    }

    MultiAns block_;
    PredicateLibrary lib_;
};

}  // namespace anskit

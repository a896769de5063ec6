#pragma once

// JSON interchange documents: dfa, ans, dfao, linrep, wfa, predicate,
// sync-relation. Writers are canonical (states in breadth-first discovery
// order from the initial state, transitions sorted), readers reject unknown
// fields and re-check every type invariant.

#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "anskit/synchronized.hpp"

namespace anskit::io {

using Json = nlohmann::ordered_json;

namespace detail {

inline void require_fields(const Json& j, const std::string& kind, std::initializer_list<const char*> required,
                           std::initializer_list<const char*> optional = {}) {
    if (!j.is_object()) throw ValidationError(kind + " document must be a JSON object");
    std::set<std::string> allowed{"kind"};
    for (const char* f : required) {
        allowed.insert(f);
        if (!j.contains(f)) throw ValidationError(kind + " document lacks the field '" + std::string(f) + "'");
    }
    for (const char* f : optional) allowed.insert(f);
    for (auto it = j.begin(); it != j.end(); ++it)
        if (!allowed.count(it.key())) throw ValidationError("unknown field '" + it.key() + "' in " + kind + " document");
}

template <class T>
T get(const Json& j, const char* field) {
    try {
        return j.at(field).get<T>();
    } catch (const nlohmann::json::exception&) {
        throw ValidationError("field '" + std::string(field) + "' has the wrong type");
    }
}

inline std::size_t index_in(const Json& v, std::size_t bound, const char* what) {
    if (!v.is_number_integer() || v.get<long long>() < 0 || static_cast<std::size_t>(v.get<long long>()) >= bound)
        throw ValidationError(std::string(what) + " index out of range");
    return static_cast<std::size_t>(v.get<long long>());
}

// Reachable states in breadth-first order, letters ascending.
template <class Next>
std::vector<int> discovery_order(int initial, std::size_t states, std::size_t letters, Next next) {
    std::vector<int> order{initial}, pos(states, -1);
    pos[static_cast<std::size_t>(initial)] = 0;
    for (std::size_t i = 0; i < order.size(); ++i)
        for (std::size_t l = 0; l < letters; ++l) {
            int t = next(order[i], static_cast<int>(l));
            if (t >= 0 && pos[static_cast<std::size_t>(t)] < 0) {
                pos[static_cast<std::size_t>(t)] = static_cast<int>(order.size());
                order.push_back(t);
            }
        }
    return order;
}

inline std::vector<int> positions(const std::vector<int>& order, std::size_t states) {
    std::vector<int> pos(states, -1);
    for (std::size_t i = 0; i < order.size(); ++i) pos[static_cast<std::size_t>(order[i])] = static_cast<int>(i);
    return pos;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Alphabets and values

inline Json alphabet_json(const Alphabet& a) {
    Json out = Json::array();
    for (const Letter& l : a.letters()) out.push_back(l);
    return out;
}

inline Alphabet alphabet_from(const Json& j) {
    if (!j.is_array() || j.empty()) throw ValidationError("alphabet must be a non-empty list of letter tuples");
    std::vector<Letter> letters;
    for (const Json& l : j) {
        if (!l.is_array()) throw ValidationError("letters must be tuples of strings");
        Letter x;
        for (const Json& s : l) {
            if (!s.is_string() || s.get<std::string>().empty()) throw ValidationError("letter components must be non-empty strings");
            x.push_back(s.get<std::string>());
        }
        letters.push_back(std::move(x));
    }
    return Alphabet(std::move(letters));
}

inline Json values_json(const Vec& v) {
    Json out = Json::array();
    for (const Value& x : v) out.push_back(x.str());
    return out;
}

inline Vec values_from(const Json& j, const Semiring& sr, std::size_t expected, const char* what) {
    if (!j.is_array() || j.size() != expected)
        throw ValidationError(std::string(what) + " must list " + std::to_string(expected) + " values");
    Vec out;
    for (const Json& x : j) {
        if (!x.is_string()) throw ValidationError(std::string(what) + " entries must be strings");
        out.push_back(sr.parse_value(x.get<std::string>()));
    }
    return out;
}

// ---------------------------------------------------------------------------
// DFA payload shared by several kinds

inline void put_dfa(Json& out, const Dfa& d) {
    out["alphabet"] = alphabet_json(d.alphabet());
    if (d.size() == 0) {
        out["states"] = 1;
        out["initial"] = 0;
        out["finals"] = Json::array();
        out["transitions"] = Json::array();
        return;
    }
    std::vector<int> order = detail::discovery_order(d.initial(), d.size(), d.letters(), [&](int q, int a) { return d.next(q, a); });
    std::vector<int> pos = detail::positions(order, d.size());
    out["states"] = order.size();
    out["initial"] = 0;
    Json finals = Json::array(), trans = Json::array();
    for (std::size_t i = 0; i < order.size(); ++i) {
        if (d.is_final(order[i])) finals.push_back(i);
        for (std::size_t l = 0; l < d.letters(); ++l) {
            int t = d.next(order[i], static_cast<int>(l));
            if (t >= 0) trans.push_back({i, l, pos[static_cast<std::size_t>(t)]});
        }
    }
    out["finals"] = finals;
    out["transitions"] = trans;
}

inline Dfa get_dfa(const Json& j, const Alphabet& alpha) {
    const std::size_t n = detail::get<std::size_t>(j, "states");
    if (n == 0) throw ValidationError("an automaton needs at least one state");
    Dfa d(alpha);
    for (std::size_t q = 0; q < n; ++q) d.add_state(false);
    d.set_initial(static_cast<int>(detail::index_in(j.at("initial"), n, "initial state")));
    if (!j.at("finals").is_array()) throw ValidationError("finals must be a list");
    for (const Json& f : j.at("finals")) d.set_final(static_cast<int>(detail::index_in(f, n, "final state")), true);
    if (!j.at("transitions").is_array()) throw ValidationError("transitions must be a list");
    for (const Json& t : j.at("transitions")) {
        if (!t.is_array() || t.size() != 3) throw ValidationError("a transition is [from, letter, to]");
        std::size_t from = detail::index_in(t[0], n, "transition source"), a = detail::index_in(t[1], alpha.size(), "letter");
        std::size_t to = detail::index_in(t[2], n, "transition target");
        int old = d.next(static_cast<int>(from), static_cast<int>(a));
        if (old >= 0 && static_cast<std::size_t>(old) != to) throw ValidationError("nondeterministic transition in a DFA");
        d.set_next(static_cast<int>(from), static_cast<int>(a), static_cast<int>(to));
    }
    return d;
}

// ---------------------------------------------------------------------------
// Numeration systems: preset names or inline ans documents

inline Json ans_json(const Ans& a) {
    Json out;
    out["kind"] = "ans";
    out["name"] = a.name();
    put_dfa(out, a.dfa());
    return out;
}

inline Json system_json(const Ans& a) {
    try {
        if (!a.name().empty() && Ans::preset(a.name()) == a) return a.name();
    } catch (const ValidationError&) {
    }
    return ans_json(a);
}

inline Ans ans_from(const Json& j) {
    detail::require_fields(j, "ans", {"alphabet", "states", "initial", "finals", "transitions"}, {"name"});
    Alphabet alpha = alphabet_from(j.at("alphabet"));
    return Ans::from_dfa(get_dfa(j, alpha), j.contains("name") ? detail::get<std::string>(j, "name") : "");
}

inline Ans system_from(const Json& j) {
    if (j.is_string()) return Ans::preset(j.get<std::string>());
    if (j.is_object() && j.value("kind", "") == "ans") return ans_from(j);
    throw ValidationError("a system is a preset name or an inline ans document");
}

inline Json systems_json(const MultiAns& m) {
    Json out = Json::array();
    for (const Ans& a : m.systems()) out.push_back(system_json(a));
    return out;
}

inline MultiAns systems_from(const Json& j) {
    if (!j.is_array() || j.empty()) throw ValidationError("systems must be a non-empty list");
    std::vector<Ans> s;
    for (const Json& x : j) s.push_back(system_from(x));
    return MultiAns(std::move(s));
}

// ---------------------------------------------------------------------------
// Kinds

inline Json dfa_json(const Dfa& d) {
    Json out;
    out["kind"] = "dfa";
    put_dfa(out, d);
    return out;
}

inline Dfa dfa_from(const Json& j) {
    detail::require_fields(j, "dfa", {"alphabet", "states", "initial", "finals", "transitions"});
    return get_dfa(j, alphabet_from(j.at("alphabet")));
}

inline Json dfao_json(const Dfao& a) {
    Json out;
    out["kind"] = "dfao";
    out["systems"] = systems_json(a.multi());
    out["semiring"] = a.semiring().name();
    out["alphabet"] = alphabet_json(a.alphabet());
    std::vector<int> order = detail::discovery_order(a.initial(), a.size(), a.letters(), [&](int q, int l) { return a.next(q, l); });
    std::vector<int> pos = detail::positions(order, a.size());
    out["states"] = order.size();
    out["initial"] = 0;
    Json outs = Json::array(), trans = Json::array();
    for (std::size_t i = 0; i < order.size(); ++i) {
        outs.push_back(a.output(order[i]).str());
        for (std::size_t l = 0; l < a.letters(); ++l) {
            int t = a.next(order[i], static_cast<int>(l));
            if (t >= 0) trans.push_back({i, l, pos[static_cast<std::size_t>(t)]});
        }
    }
    out["outputs"] = outs;
    out["transitions"] = trans;
    return out;
}

inline Dfao dfao_from(const Json& j) {
    detail::require_fields(j, "dfao", {"systems", "semiring", "alphabet", "states", "initial", "outputs", "transitions"});
    MultiAns multi = systems_from(j.at("systems"));
    if (!(alphabet_from(j.at("alphabet")) == multi.alphabet())) throw ValidationError("dfao alphabet differs from the systems' alphabet");
    Semiring sr = Semiring::parse(detail::get<std::string>(j, "semiring"));
    const std::size_t n = detail::get<std::size_t>(j, "states");
    if (n == 0) throw ValidationError("an automaton needs at least one state");
    Vec outs = values_from(j.at("outputs"), sr, n, "outputs");
    Dfao a(multi, sr);
    for (std::size_t q = 0; q < n; ++q) a.add_state(outs[q]);
    a.set_initial(static_cast<int>(detail::index_in(j.at("initial"), n, "initial state")));
    for (const Json& t : j.at("transitions")) {
        if (!t.is_array() || t.size() != 3) throw ValidationError("a transition is [from, letter, to]");
        std::size_t from = detail::index_in(t[0], n, "transition source"), l = detail::index_in(t[1], a.letters(), "letter");
        std::size_t to = detail::index_in(t[2], n, "transition target");
        a.set_next(static_cast<int>(from), static_cast<int>(l), static_cast<int>(to));
    }
    return a;
}

// A series, optionally tied to a numeration system (a regular sequence).
struct SeriesDoc {
    LinRep series;
    std::optional<MultiAns> systems;

    RegularSequence sequence() const {
        if (!systems) throw ValidationError("series document has no 'systems' field; it is not a sequence");
        return RegularSequence::from_series(*systems, series);
    }
};

inline Json linrep_json(const LinRep& s, const std::optional<MultiAns>& systems = std::nullopt) {
    Json out;
    out["kind"] = "linrep";
    if (systems) out["systems"] = systems_json(*systems);
    out["semiring"] = s.sr.name();
    out["alphabet"] = alphabet_json(s.alphabet);
    out["dim"] = s.dim();
    out["lambda"] = values_json(s.lambda.data());
    Json mu = Json::array();
    for (const Matrix& m : s.mu) mu.push_back(values_json(m.data()));
    out["mu"] = mu;
    out["gamma"] = values_json(s.gamma.data());
    return out;
}

inline SeriesDoc linrep_from(const Json& j) {
    detail::require_fields(j, "linrep", {"semiring", "alphabet", "dim", "lambda", "mu", "gamma"}, {"systems"});
    Semiring sr = Semiring::parse(detail::get<std::string>(j, "semiring"));
    Alphabet alpha = alphabet_from(j.at("alphabet"));
    const std::size_t r = detail::get<std::size_t>(j, "dim");
    if (r == 0) throw ValidationError("dimension must be positive");
    if (!j.at("mu").is_array() || j.at("mu").size() != alpha.size()) throw ValidationError("mu must hold one matrix per letter");
    LinRep s{sr, alpha, Matrix::row(sr, values_from(j.at("lambda"), sr, r, "lambda")), {}, Matrix::column(sr, values_from(j.at("gamma"), sr, r, "gamma"))};
    for (const Json& m : j.at("mu")) {
        Vec flat = values_from(m, sr, r * r, "mu matrix");
        Matrix x(sr, r, r);
        for (std::size_t i = 0; i < r; ++i)
            for (std::size_t k = 0; k < r; ++k) x.set(i, k, flat[i * r + k]);
        s.mu.push_back(std::move(x));
    }
    s.validate();
    SeriesDoc doc{s, std::nullopt};
    if (j.contains("systems")) {
        doc.systems = systems_from(j.at("systems"));
        if (!(doc.systems->alphabet() == alpha)) throw ValidationError("series alphabet differs from the systems' alphabet");
    }
    return doc;
}

inline Json wfa_json(const WeightedAutomaton& a, const std::optional<MultiAns>& systems = std::nullopt) {
    Json out;
    out["kind"] = "wfa";
    if (systems) out["systems"] = systems_json(*systems);
    out["semiring"] = a.sr.name();
    out["alphabet"] = alphabet_json(a.alphabet);
    out["states"] = a.states();
    out["initial"] = values_json(a.initial);
    out["final"] = values_json(a.final_weights);
    Json trans = Json::array();
    for (const auto& [key, w] : a.edges) trans.push_back({std::get<0>(key), std::get<1>(key), std::get<2>(key), w.str()});
    out["transitions"] = trans;
    return out;
}

inline std::pair<WeightedAutomaton, std::optional<MultiAns>> wfa_from(const Json& j) {
    detail::require_fields(j, "wfa", {"semiring", "alphabet", "states", "initial", "final", "transitions"}, {"systems"});
    Semiring sr = Semiring::parse(detail::get<std::string>(j, "semiring"));
    Alphabet alpha = alphabet_from(j.at("alphabet"));
    const std::size_t n = detail::get<std::size_t>(j, "states");
    WeightedAutomaton a{sr, alpha, values_from(j.at("initial"), sr, n, "initial"), values_from(j.at("final"), sr, n, "final"), {}};
    for (const Json& t : j.at("transitions")) {
        if (!t.is_array() || t.size() != 4 || !t[3].is_string()) throw ValidationError("a weighted transition is [from, letter, to, weight]");
        std::size_t from = detail::index_in(t[0], n, "transition source"), l = detail::index_in(t[1], alpha.size(), "letter");
        std::size_t to = detail::index_in(t[2], n, "transition target");
        a.add_edge(static_cast<int>(from), static_cast<int>(l), static_cast<int>(to), sr.parse_value(t[3].get<std::string>()));
    }
    std::optional<MultiAns> systems;
    if (j.contains("systems")) {
        systems = systems_from(j.at("systems"));
        if (!(systems->alphabet() == alpha)) throw ValidationError("automaton alphabet differs from the systems' alphabet");
    }
    return {a, systems};
}

inline Json predicate_json(const Predicate& p) {
    Json out;
    out["kind"] = "predicate";
    Json blocks = Json::array();
    for (const MultiAns& b : p.blocks()) blocks.push_back(systems_json(b));
    out["blocks"] = blocks;
    put_dfa(out, p.dfa());
    return out;
}

inline Predicate predicate_from(const Json& j) {
    detail::require_fields(j, "predicate", {"blocks", "alphabet", "states", "initial", "finals", "transitions"});
    if (!j.at("blocks").is_array() || j.at("blocks").empty()) throw ValidationError("blocks must be a non-empty list");
    std::vector<MultiAns> blocks;
    for (const Json& b : j.at("blocks")) blocks.push_back(systems_from(b));
    MultiAns space = concat_blocks(blocks);
    if (!(alphabet_from(j.at("alphabet")) == space.alphabet())) throw ValidationError("predicate alphabet differs from its blocks' alphabet");
    return Predicate(blocks, get_dfa(j, space.alphabet()));
}

inline Json relation_json(const SyncRelation& r) {
    Json out;
    out["kind"] = "sync-relation";
    out["pad"] = kRelPad;
    out["left"] = alphabet_json(r.left);
    out["right"] = alphabet_json(r.right);
    put_dfa(out, r.dfa);
    return out;
}

inline SyncRelation relation_from(const Json& j) {
    detail::require_fields(j, "sync-relation", {"pad", "left", "right", "alphabet", "states", "initial", "finals", "transitions"});
    if (detail::get<std::string>(j, "pad") != kRelPad) throw ValidationError("relation padding symbol must be \"$\"");
    Alphabet left = alphabet_from(j.at("left")), right = alphabet_from(j.at("right"));
    Alphabet alpha = alphabet_from(j.at("alphabet"));
    return make_relation(left, right, get_dfa(j, alpha));
}

// ---------------------------------------------------------------------------
// Text

// Top-level fields one per line; lists of lists one element per line.
inline std::string to_text(const Json& j) {
    std::ostringstream os;
    os << "{\n";
    std::size_t i = 0;
    for (auto it = j.begin(); it != j.end(); ++it, ++i) {
        os << "  " << Json(it.key()).dump() << ": ";
        const Json& v = it.value();
        bool nested = v.is_array() && !v.empty() && std::all_of(v.begin(), v.end(), [](const Json& x) { return x.is_array() || x.is_object(); });
        if (nested) {
            os << "[\n";
            for (std::size_t k = 0; k < v.size(); ++k) os << "    " << v[k].dump() << (k + 1 < v.size() ? ",\n" : "\n");
            os << "  ]";
        } else {
            os << v.dump();
        }
        os << (i + 1 < j.size() ? ",\n" : "\n");
    }
    os << "}\n";
    return os.str();
}

inline Json parse_text(const std::string& text) {
    try {
        return Json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ValidationError(std::string("malformed JSON: ") + e.what());
    }
}

inline Json read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ValidationError("cannot open '" + path + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_text(ss.str());
}

inline void write_file(const std::string& path, const Json& j) {
    std::ofstream out(path);
    if (!out) throw ValidationError("cannot write '" + path + "'");
    out << to_text(j);
}

inline std::string kind_of(const Json& j) {
    if (!j.is_object() || !j.contains("kind") || !j.at("kind").is_string()) throw ValidationError("document lacks a string 'kind'");
    return j.at("kind").get<std::string>();
}

// Loads the document with its type checks and returns its kind.
inline std::string validate(const Json& j) {
    const std::string kind = kind_of(j);
    if (kind == "dfa") dfa_from(j);
    else if (kind == "ans") ans_from(j);
    else if (kind == "dfao") dfao_from(j);
    else if (kind == "linrep") linrep_from(j);
    else if (kind == "wfa") wfa_from(j);
    else if (kind == "predicate") predicate_from(j);
    else if (kind == "sync-relation") relation_from(j);
    else throw ValidationError("unknown document kind '" + kind + "'");
    return kind;
}

// A linrep or wfa document as a series.
inline SeriesDoc series_from(const Json& j) {
    const std::string kind = kind_of(j);
    if (kind == "linrep") return linrep_from(j);
    if (kind == "wfa") {
        auto [a, systems] = wfa_from(j);
        return {wfa_to_linrep(a), systems};
    }
    throw ValidationError("expected a linrep or wfa document, got '" + kind + "'");
}

}  // namespace anskit::io

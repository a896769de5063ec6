#pragma once

// Documents shipped in data/, rebuilt from the fixtures.

#include "anskit/io.hpp"
#include "fixtures.hpp"

namespace samples {

using anskit::io::Json;

inline std::map<std::string, Json> all() {
    using namespace anskit;
    MultiAns pair = fixture::ab_pair();
    std::map<std::string, Json> out;
    out["ab_star.json"] = io::ans_json(Ans::ab_star());
    out["suffix_series.json"] = io::linrep_json(fixture::suffix_series(), pair);
    out["suffix_automaton.json"] = io::wfa_json(fixture::suffix_automaton(), pair);
    out["length_relation.json"] = io::relation_json(fixture::length_relation());
    out["thue_morse.json"] = io::dfao_json(fixture::thue_morse_dfao());
    out["suffix_mod2.json"] = io::dfao_json(fixture::mod_figure_dfao(2));
    out["suffix_graph.json"] = io::predicate_json(Predicate({pair, MultiAns(Ans::unary(), 1)}, fixture::suffix_graph_dfa()));
    out["zero_sequence.json"] = io::linrep_json(RegularSequence::constant(pair, Semiring::nat(), Value(0)).series, pair);
    out["criterion_empty.json"] = Json{{"relations", Json::array()}};
    out["criterion_suffix_partial.json"] =
        Json{{"relations", Json::array({Json{{"letter", {"b", "b"}}, {"index", 0}, {"coefficients", {"1"}}}})}};
    return out;
}

}  // namespace samples

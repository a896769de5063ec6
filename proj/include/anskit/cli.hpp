#pragma once

// Command-line front end. Exit codes: 0 success, 2 malformed input,
// 3 unmet precondition.

#include <filesystem>
#include <iostream>

#include <CLI11.hpp>

#include "anskit/automatic.hpp"
#include "anskit/counting.hpp"
#include "anskit/io.hpp"

namespace anskit::cli {

inline constexpr int kExitValidation = 2;
inline constexpr int kExitPrecondition = 3;

// ---------------------------------------------------------------------------
// Argument parsing helpers

inline BigInt parse_natural(const std::string& text) {
    if (text.empty() || !std::all_of(text.begin(), text.end(), [](unsigned char c) { return std::isdigit(c); }))
        throw ValidationError("'" + text + "' is not a natural number");
    return BigInt(text);
}

inline std::vector<BigInt> parse_tuple(const std::string& text) {
    std::vector<BigInt> out;
    std::stringstream ss(text);
    std::string part;
    while (std::getline(ss, part, ',')) out.push_back(parse_natural(part));
    if (out.empty() || text.back() == ',') throw ValidationError("'" + text + "' is not a tuple of natural numbers");
    return out;
}

inline std::string tuple_text(const std::vector<BigInt>& n) {
    std::string s;
    for (std::size_t i = 0; i < n.size(); ++i) s += (i ? "," : "") + n[i].str();
    return s;
}

inline Ans load_system(const std::string& spec) {
    if (std::filesystem::exists(spec)) {
        io::Json j = io::read_file(spec);
        if (io::kind_of(j) != "ans") throw ValidationError("'" + spec + "' is not an ans document");
        return io::ans_from(j);
    }
    return Ans::preset(spec);
}

// One system per --system; a single system is raised to the tuple dimension.
inline MultiAns systems_for(const std::vector<std::string>& specs, std::size_t dim) {
    if (specs.empty()) throw ValidationError("--system is required");
    std::vector<Ans> s;
    for (const std::string& x : specs) s.push_back(load_system(x));
    if (s.size() == 1) return MultiAns(s[0], dim);
    if (dim != s.size()) throw ValidationError("tuple has " + std::to_string(dim) + " components for " + std::to_string(s.size()) + " systems");
    return MultiAns(std::move(s));
}

// Tapes joined by ',' and symbols concatenated, padding shown as '#'.
inline std::string word_text(const Alphabet& alpha, const LetterWord& w) {
    std::string s;
    for (std::size_t t = 0; t < alpha.arity(); ++t) {
        if (t) s += ',';
        for (int a : w) s += alpha[static_cast<std::size_t>(a)][t];
    }
    return s;
}

// Inverse of word_text; symbols are matched greedily, longest first.
inline LetterWord parse_word(const Alphabet& alpha, const std::string& text) {
    const std::size_t k = alpha.arity();
    std::vector<std::string> tapes;
    std::stringstream ss(text);
    std::string part;
    while (std::getline(ss, part, ',')) tapes.push_back(part);
    if (!text.empty() && text.back() == ',') tapes.emplace_back();
    if (tapes.empty()) tapes.emplace_back();
    if (tapes.size() != k) throw ValidationError("word '" + text + "' needs " + std::to_string(k) + " comma-separated tapes");
    std::vector<std::vector<std::string>> symbols(k);
    for (std::size_t t = 0; t < k; ++t) {
        std::set<std::string> seen;
        for (const Letter& l : alpha.letters()) seen.insert(l[t]);
        symbols[t].assign(seen.begin(), seen.end());
        std::stable_sort(symbols[t].begin(), symbols[t].end(), [](const std::string& a, const std::string& b) { return a.size() > b.size(); });
    }
    std::vector<std::vector<std::string>> split(k);
    for (std::size_t t = 0; t < k; ++t) {
        std::size_t pos = 0;
        while (pos < tapes[t].size()) {
            auto hit = std::find_if(symbols[t].begin(), symbols[t].end(), [&](const std::string& s) { return tapes[t].compare(pos, s.size(), s) == 0; });
            if (hit == symbols[t].end()) throw ValidationError("unknown symbol in '" + tapes[t] + "'");
            split[t].push_back(*hit);
            pos += hit->size();
        }
        if (split[t].size() != split[0].size()) throw ValidationError("tapes of '" + text + "' differ in length");
    }
    Word w;
    for (std::size_t i = 0; i < split[0].size(); ++i) {
        Letter l;
        for (std::size_t t = 0; t < k; ++t) l.push_back(split[t][i]);
        w.push_back(std::move(l));
    }
    for (const Letter& l : w)
        if (alpha.index_of(l) < 0) throw ValidationError("word '" + text + "' uses a letter outside the alphabet");
    return alpha.encode(w);
}

inline RegularSequence load_sequence(const std::string& path) { return io::series_from(io::read_file(path)).sequence(); }

inline Dfao load_dfao(const std::string& path) {
    io::Json j = io::read_file(path);
    if (io::kind_of(j) != "dfao") throw ValidationError("'" + path + "' is not a dfao document");
    return io::dfao_from(j);
}

inline SyncRelation load_relation(const std::string& path) {
    io::Json j = io::read_file(path);
    if (io::kind_of(j) != "sync-relation") throw ValidationError("'" + path + "' is not a sync-relation document");
    return io::relation_from(j);
}

inline Predicate load_predicate(const std::string& path) {
    io::Json j = io::read_file(path);
    if (io::kind_of(j) != "predicate") throw ValidationError("'" + path + "' is not a predicate document");
    return io::predicate_from(j);
}

inline void maybe_write(const std::string& path, const io::Json& j) {
    if (!path.empty()) io::write_file(path, j);
}

// Criterion tables: {"relations": [{"letter": [...], "index": i, "coefficients": [...]}]}.
inline CriterionTable load_table(const std::string& path, const Alphabet& alpha, const Semiring& sr, std::size_t family) {
    io::Json j = io::read_file(path);
    if (!j.is_object() || j.size() != 1 || !j.contains("relations") || !j.at("relations").is_array())
        throw ValidationError("criterion table must be an object with a single 'relations' list");
    CriterionTable table;
    for (const io::Json& r : j.at("relations")) {
        io::detail::require_fields(r, "criterion relation", {"letter", "index", "coefficients"});
        io::Json letter = r.at("letter");
        Alphabet one = io::alphabet_from(io::Json::array({letter}));
        int a = alpha.index_of(one[0]);
        if (a < 0) throw ValidationError("criterion letter outside the alphabet");
        std::size_t i = io::detail::index_in(r.at("index"), family, "family");
        table[{a, i}] = io::values_from(r.at("coefficients"), sr, family, "coefficients");
    }
    return table;
}

// ---------------------------------------------------------------------------

inline int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Abstract numeration systems, regular sequences and automata"};
    app.require_subcommand(1);

    // State shared by the handlers below; each subcommand binds only what it needs.
    std::vector<std::string> systems, args, files;
    std::string seq_path, dfao_path, series_path, out_path, formula, mode = "exists", order, table_path, out_dir;
    std::vector<std::string> imports, relations, families;
    std::size_t count = 0, max_s = 0, k = 1, dim = 1, coeff_len = 0;
    std::string modulus;
    bool inverse = false;
    std::function<void()> action;

    auto add_systems = [&](CLI::App* c) { c->add_option("--system", systems, "preset name or ans document path (repeatable)")->required()->allow_extra_args(false); };

    // ans
    CLI::App* ans = app.add_subcommand("ans", "numeration systems");
    ans->require_subcommand(1);
    CLI::App* rep = ans->add_subcommand("rep", "representations of tuples");
    add_systems(rep);
    rep->add_option("numbers", args, "tuples such as 4,9")->required();
    rep->callback([&] {
        action = [&] {
            for (const std::string& a : args) {
                std::vector<BigInt> n = parse_tuple(a);
                MultiAns m = systems_for(systems, n.size());
                out << word_text(m.alphabet(), m.rep(n)) << "\n";
            }
        };
    });
    CLI::App* val = ans->add_subcommand("val", "values of representations");
    add_systems(val);
    val->add_option("words", args, "words, tapes separated by commas")->required();
    val->callback([&] {
        action = [&] {
            for (const std::string& a : args) {
                std::size_t tapes = a.empty() ? 1 : static_cast<std::size_t>(std::count(a.begin(), a.end(), ',')) + 1;
                MultiAns m = systems_for(systems, tapes);
                LetterWord w = parse_word(m.alphabet(), a);
                if (!m.language().accepts(w)) throw ValidationError("'" + a + "' is not a valid representation");
                out << tuple_text(m.val(w)) << "\n";
            }
        };
    });
    CLI::App* en = ans->add_subcommand("enum", "enumeration order of tuples");
    add_systems(en);
    en->add_option("--dim", dim, "tuple dimension")->check(CLI::PositiveNumber);
    en->add_option("--first", count, "print the first N tuples");
    en->add_flag("--unindex", inverse, "arguments are indices; print tuples");
    en->add_option("values", args, "tuples (or indices with --unindex)");
    en->callback([&] {
        action = [&] {
            EnumOrder e = EnumOrder::lex(systems_for(systems, systems.size() > 1 ? systems.size() : dim));
            for (std::size_t i = 0; i < count; ++i) out << tuple_text(e.unindex(BigInt(i))) << "\n";
            for (const std::string& a : args) {
                if (inverse) {
                    out << tuple_text(e.unindex(parse_natural(a))) << "\n";
                } else {
                    std::vector<BigInt> n = parse_tuple(a);
                    if (n.size() != e.multi().dim()) throw ValidationError("tuple '" + a + "' has the wrong dimension");
                    out << e.index(n).str() << "\n";
                }
            }
        };
    });

    // seq
    CLI::App* seq = app.add_subcommand("seq", "regular sequences");
    seq->require_subcommand(1);
    CLI::App* seval = seq->add_subcommand("eval", "evaluate a sequence");
    seval->add_option("--seq", seq_path, "linrep or wfa document with systems")->required();
    seval->add_option("numbers", args)->required();
    seval->callback([&] {
        action = [&] {
            RegularSequence f = load_sequence(seq_path);
            for (const std::string& a : args) out << f.eval(parse_tuple(a)).str() << "\n";
        };
    });
    CLI::App* kern = seq->add_subcommand("kernel", "kernel closure");
    kern->add_option("--seq", seq_path)->required();
    kern->callback([&] {
        action = [&] {
            RegularSequence f = load_sequence(seq_path);
            KernelReport r = kernel_closure(f);
            out << "closed " << (r.closed ? "yes" : "no") << "\n";
            out << "size " << r.size << "\n";
            out << "semiring " << r.semiring.name() << "\n";
            for (const auto& g : r.generators) out << "generator " << word_text(f.multi.alphabet(), g.first) << "\n";
        };
    });
    CLI::App* crit = seq->add_subcommand("check-criterion", "verify claimed kernel relations");
    crit->add_option("--seq", families, "family members in order (repeatable)")->required()->allow_extra_args(false);
    crit->add_option("--table", table_path, "criterion table document")->required();
    crit->callback([&] {
        action = [&] {
            std::vector<RegularSequence> fs;
            for (const std::string& p : families) fs.push_back(load_sequence(p));
            CriterionTable t = load_table(table_path, fs[0].multi.alphabet(), fs[0].semiring(), fs.size());
            CriterionResult r = verify_practical_criterion(fs, t);
            if (r.holds) {
                out << "holds\n";
            } else {
                const Alphabet& alpha = fs[0].multi.alphabet();
                out << "fails letter " << word_text(alpha, {r.letter}) << " index " << r.index;
                if (r.witness) out << " witness " << word_text(alpha, *r.witness);
                out << "\n";
            }
        };
    });

    // dfao
    CLI::App* dfao = app.add_subcommand("dfao", "automata with output");
    dfao->require_subcommand(1);
    CLI::App* deval = dfao->add_subcommand("eval", "evaluate a DFAO");
    deval->add_option("--dfao", dfao_path)->required();
    deval->add_option("numbers", args)->required();
    deval->callback([&] {
        action = [&] {
            Dfao a = load_dfao(dfao_path);
            for (const std::string& x : args) out << a.eval(parse_tuple(x)).str() << "\n";
        };
    });
    CLI::App* dmod = dfao->add_subcommand("mod", "DFAO of a sequence reduced modulo m");
    dmod->add_option("--seq", seq_path)->required();
    dmod->add_option("--modulus", modulus)->required();
    dmod->add_option("--out", out_path);
    dmod->callback([&] {
        action = [&] {
            BigInt m = parse_natural(modulus);
            if (m < 1) throw ValidationError("modulus must be positive");
            KernelDfao r = mod_m_report(load_sequence(seq_path), m);
            out << "raw-states " << r.raw_states << "\n";
            out << "states " << r.dfao.live_size() << "\n";
            maybe_write(out_path, io::dfao_json(r.dfao));
        };
    });
    CLI::App* fib = dfao->add_subcommand("fibers", "one DFA per output value");
    fib->add_option("--dfao", dfao_path)->required();
    fib->add_option("--out-dir", out_dir, "directory for fiber_<value>.json files");
    fib->callback([&] {
        action = [&] {
            for (const auto& [v, d] : dfao_fibers(load_dfao(dfao_path))) {
                Dfa m = minimize(d);
                out << v.str() << " " << m.size() << "\n";
                if (!out_dir.empty()) {
                    std::string name = v.str();
                    std::replace(name.begin(), name.end(), '/', '_');
                    io::write_file((std::filesystem::path(out_dir) / ("fiber_" + name + ".json")).string(), io::dfa_json(m));
                }
            }
        };
    });

    // logic
    CLI::App* logic = app.add_subcommand("logic", "first-order formulas");
    logic->require_subcommand(1);
    auto compiler = [&] {
        MultiAns block = systems_for(systems, systems.size());
        PredicateLibrary lib = standard_library(block);
        for (const std::string& imp : imports) {
            auto eq = imp.find('=');
            if (eq == std::string::npos || eq == 0) throw ValidationError("--import expects name=path");
            lib.insert_or_assign(imp.substr(0, eq), load_predicate(imp.substr(eq + 1)));
        }
        return FormulaCompiler(block, lib);
    };
    auto split_order = [&] {
        std::vector<std::string> vars;
        std::stringstream ss(order);
        std::string v;
        while (std::getline(ss, v, ',')) vars.push_back(v);
        return vars;
    };
    CLI::App* lc = logic->add_subcommand("compile", "compile a formula into a predicate");
    add_systems(lc);
    lc->add_option("--formula", formula, "prefix-notation formula")->required();
    lc->add_option("--import", imports, "name=predicate.json (repeatable)")->allow_extra_args(false);
    lc->add_option("--order", order, "free variables in block order, comma-separated");
    lc->add_option("--out", out_path);
    lc->callback([&] {
        action = [&] {
            CompiledFormula c = compiler().compile(formula, split_order());
            if (!c.predicate) {
                out << "sentence " << (c.truth ? "true" : "false") << "\n";
                return;
            }
            out << "vars";
            for (const std::string& v : c.vars) out << " " << v;
            out << "\nstates " << c.predicate->dfa().size() << "\n";
            maybe_write(out_path, io::predicate_json(*c.predicate));
        };
    });
    CLI::App* ld = logic->add_subcommand("decide", "decide a formula");
    add_systems(ld);
    ld->add_option("--formula", formula)->required();
    ld->add_option("--import", imports)->allow_extra_args(false);
    ld->add_option("--mode", mode, "closure of a single free variable")->check(CLI::IsMember({"exists", "forall", "infinite"}));
    ld->callback([&] {
        action = [&] {
            CompiledFormula c = compiler().compile(formula);
            bool truth = c.truth;
            if (c.predicate) {
                ClosedMode m = mode == "forall" ? ClosedMode::Forall : mode == "infinite" ? ClosedMode::ExistsInfinitelyMany : ClosedMode::Exists;
                truth = decide_closed(*c.predicate, m);
            }
            out << (truth ? "true" : "false") << "\n";
        };
    });

    // count
    CLI::App* cnt = app.add_subcommand("count", "counting sequences");
    cnt->require_subcommand(1);
    CLI::App* fc = cnt->add_subcommand("factor-complexity", "factor complexity of an automatic sequence");
    fc->add_option("--dfao", dfao_path)->required();
    fc->add_option("--max", max_s, "print values for s = 0..max")->required();
    fc->add_option("--out", out_path, "linrep of the complexity sequence");
    fc->callback([&] {
        action = [&] {
            RegularSequence rho = factor_complexity(load_dfao(dfao_path));
            for (std::size_t s = 0; s <= max_s; ++s) out << rho.eval({BigInt(s)}).str() << "\n";
            maybe_write(out_path, io::linrep_json(rho.series, rho.multi));
        };
    });
    CLI::App* rec = cnt->add_subcommand("recurrence", "recurrence function of an automatic sequence");
    rec->add_option("--dfao", dfao_path)->required();
    rec->add_option("--max", max_s)->required();
    rec->add_option("--out", out_path, "linrep over NatInf");
    rec->callback([&] {
        action = [&] {
            CountingSeries r = recurrence_function(load_dfao(dfao_path));
            for (std::size_t s = 0; s <= max_s; ++s) out << r.eval({BigInt(s)}).str() << "\n";
            maybe_write(out_path, io::linrep_json(r.series, r.multi));
        };
    });

    // sync
    CLI::App* sync = app.add_subcommand("sync", "synchronized relations");
    sync->require_subcommand(1);
    CLI::App* sc = sync->add_subcommand("compose", "compose two relations");
    sc->add_option("--relation", relations, "first then second relation (given twice)")->required()->allow_extra_args(false)->expected(2);
    sc->add_option("--out", out_path);
    sc->callback([&] {
        action = [&] {
            SyncRelation r = compose_relations(load_relation(relations[0]), load_relation(relations[1]));
            out << "states " << r.dfa.size() << "\n";
            maybe_write(out_path, io::relation_json(r));
        };
    });
    CLI::App* succ = sync->add_subcommand("succ", "n -> n + k as a synchronized relation");
    succ->add_option("--system", systems, "one-dimensional system")->required()->allow_extra_args(false)->expected(1);
    succ->add_option("--k", k, "shift");
    succ->add_option("--out", out_path);
    succ->add_option("numbers", args, "print the images of these numbers");
    succ->callback([&] {
        action = [&] {
            Ans a = load_system(systems[0]);
            SyncRelation r = plus_k(a, k);
            if (args.empty()) out << "states " << r.dfa.size() << "\n";
            MultiAns m(a, 1);
            SyncSequence f = relation_to_sequence(r, m, m);
            for (const std::string& x : args) out << tuple_text(f.eval(parse_tuple(x))) << "\n";
            maybe_write(out_path, io::relation_json(r));
        };
    });

    // series
    CLI::App* ser = app.add_subcommand("series", "recognizable series");
    ser->require_subcommand(1);
    CLI::App* coeff = ser->add_subcommand("coeff", "coefficients of words");
    coeff->add_option("--series", series_path)->required();
    coeff->add_option("words", args)->required();
    coeff->callback([&] {
        action = [&] {
            LinRep s = io::series_from(io::read_file(series_path)).series;
            for (const std::string& w : args) out << s.coeff(parse_word(s.alphabet, w)).str() << "\n";
        };
    });
    CLI::App* scr = ser->add_subcommand("compose-relation", "series composed with a synchronized relation");
    scr->add_option("--series", series_path)->required();
    scr->add_option("--relation", relations)->required()->allow_extra_args(false)->expected(1);
    scr->add_option("--coeff-len", coeff_len, "print coefficients of first-letter powers of lengths 1..N");
    scr->add_option("--out", out_path, "linrep of the composition");
    scr->add_option("words", args);
    scr->callback([&] {
        action = [&] {
            LinRep s = io::series_from(io::read_file(series_path)).series;
            LinRep c = compose_series_relation(s, load_relation(relations[0]));
            for (std::size_t n = 1; n <= coeff_len; ++n) out << c.coeff(LetterWord(n, 0)).str() << "\n";
            for (const std::string& w : args) out << c.coeff(parse_word(c.alphabet, w)).str() << "\n";
            maybe_write(out_path, io::linrep_json(c));
        };
    });

    // fmt
    CLI::App* fmt = app.add_subcommand("fmt", "document utilities");
    fmt->require_subcommand(1);
    CLI::App* fv = fmt->add_subcommand("validate", "load documents and check their invariants");
    fv->add_option("files", files)->required();
    fv->callback([&] {
        action = [&] {
            for (const std::string& f : files) {
                std::string kind;
                try {
                    kind = io::validate(io::read_file(f));
                } catch (const ValidationError& e) {
                    throw ValidationError(f + ": " + e.what());
                }
                out << f << ": " << kind << "\n";
            }
        };
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e, out, err);
        return code == 0 ? 0 : kExitValidation;
    }
    try {
        if (action) action();
        return 0;
    } catch (const ValidationError& e) {
        err << "validation error: " << e.what() << "\n";
        return kExitValidation;
    } catch (const PreconditionError& e) {
        err << "precondition violated: " << e.what() << "\n";
        return kExitPrecondition;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    }
}

}  // namespace anskit::cli

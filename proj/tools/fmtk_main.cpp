// fmtk: bounded-depth types, distorted sums and locality checks over finite
// relational structures. Exit codes: 0 pass, 1 witness/falsification,
// 2 usage or parse error, 3 budget exceeded.

#include <chrono>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "fmtk/corpus.hpp"
#include "fmtk/example23.hpp"
#include "fmtk/io.hpp"
#include "fmtk/report.hpp"

using namespace fmtk;

namespace {

struct Timer {
    std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
    ~Timer() {
        auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                      std::chrono::steady_clock::now() - start)
                      .count();
        std::cerr << "wall_time_ms " << ms << "\n";
    }
};

std::vector<Elem> parse_tuple(const ParsedFile& file, const std::string& csv) {
    std::vector<Elem> out;
    if (csv.empty()) return out;
    std::size_t pos = 0;
    while (pos <= csv.size()) {
        std::size_t comma = csv.find(',', pos);
        std::string name = csv.substr(pos, comma == std::string::npos ? comma : comma - pos);
        if (!name.empty()) out.push_back(file.id_of(name));
        if (comma == std::string::npos) break;
        pos = comma + 1;
    }
    return out;
}

int emit(RunReport& report, std::ostream* witness_out) {
    std::cout << report.body();
    if (!report.witnesses.empty()) {
        nlohmann::ordered_json ws = nlohmann::ordered_json::array();
        for (const auto& w : report.witnesses) ws.push_back(witness_json(w));
        (witness_out ? *witness_out : std::cerr) << ws.dump(2) << "\n";
    }
    return report.outcome == "pass" ? 0 : 1;
}

struct CorpusOptions {
    std::vector<std::string> files;
    bool generate = false;
    int max_index = 2;
    int max_block = 1;
    int max_global = 2;
    std::vector<std::uint64_t> palette = {1, 2};
    bool no_infinite = false;
    bool index_local = false;
    std::size_t sample = 0;
    std::uint64_t seed = 1;
    std::size_t cap = 500000;

    void attach(CLI::App* cmd) {
        cmd->add_option("files", files, "distorted-sum spec files");
        cmd->add_flag("--gen", generate, "add the enumerated corpus");
        cmd->add_option("--gen-index", max_index, "max index size");
        cmd->add_option("--gen-block", max_block, "max block size");
        cmd->add_option("--gen-global", max_global, "max global size");
        cmd->add_option("--gen-palette", palette, "metric palette values");
        cmd->add_flag("--gen-no-infinite", no_infinite, "exclude infinite distances");
        cmd->add_flag("--gen-index-local", index_local,
                      "restrict index relations to distance <= 1 pairs");
        cmd->add_option("--gen-sample", sample, "sample this many specs instead of enumerating");
        cmd->add_option("--seed", seed, "seed for sampled corpora");
        cmd->add_option("--gen-cap", cap, "enumeration cap");
    }

    std::vector<DistortedSumSpec> build(RunReport& report) const {
        std::vector<DistortedSumSpec> corpus;
        for (const auto& f : files) {
            ParsedFile parsed = parse_structure_file_named(f);
            if (!parsed.is_dsum) throw DomainError("'" + f + "' is not a distorted-sum file");
            report.inputs.emplace_back(f, fnv128(parsed.spec->fingerprint()).hex());
            corpus.push_back(std::move(*parsed.spec));
        }
        if (generate || sample > 0) {
            DsumCorpusBudget budget;
            budget.max_index = max_index;
            budget.max_block = max_block;
            budget.max_global = max_global;
            budget.palette = palette;
            budget.allow_infinite = !no_infinite;
            budget.index_adjacency_local = index_local;
            budget.cap = cap;
            auto generated = sample > 0 ? sample_dsum_corpus(budget, sample, seed)
                                        : enumerate_dsum_corpus(budget);
            report.budgets["gen_index"] = max_index;
            report.budgets["gen_block"] = max_block;
            report.budgets["gen_global"] = max_global;
            report.budgets["gen_count"] = generated.size();
            for (auto& s : generated) corpus.push_back(std::move(s));
        }
        std::string all;
        for (const auto& s : corpus) all += s.fingerprint();
        report.inputs.emplace_back("corpus", fnv128(all).hex());
        report.details["corpus_size"] = corpus.size();
        return corpus;
    }
};

int run_th(const std::string& path, const std::string& tuple_csv, int depth) {
    ParsedFile file = parse_structure_file_named(path);
    TheoryEngine eng;
    std::vector<Elem> tuple = parse_tuple(file, tuple_csv);
    TypeId t = eng.thn(file.structure, tuple, depth);
    std::cout << eng.table().full_serial(t) << "\n";
    return 0;
}

int run_eq(const std::string& pa, const std::string& ta, const std::string& pb,
           const std::string& tb, int depth) {
    ParsedFile fa = parse_structure_file_named(pa);
    ParsedFile fb = parse_structure_file_named(pb);
    TheoryEngine eng;
    std::vector<Elem> tua = parse_tuple(fa, ta), tub = parse_tuple(fb, tb);
    bool equal = eng.thn(fa.structure, tua, depth) == eng.thn(fb.structure, tub, depth);
    bool game = ef_equivalent(fa.structure, tua, fb.structure, tub, depth);
    std::cout << (equal ? "equal" : "distinct") << " ef_oracle_agrees="
              << (equal == game ? "yes" : "NO") << "\n";
    if (equal != game) return 1;  // oracle disagreement is a falsification
    return equal ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"finite-model-theory toolkit"};
    app.require_subcommand(1);

    // th
    auto* th = app.add_subcommand("th", "canonical serialization of th^n(M;a-bar)");
    std::string th_file, th_tuple;
    int th_depth = 0;
    th->add_option("--file", th_file)->required();
    th->add_option("--tuple", th_tuple, "comma separated element names");
    th->add_option("--depth,-n", th_depth)->required();

    // eq
    auto* eq = app.add_subcommand("eq", "type equality of two instances plus EF oracle");
    std::string eq_fa, eq_ta, eq_fb, eq_tb;
    int eq_depth = 0;
    eq->add_option("--file-a", eq_fa)->required();
    eq->add_option("--tuple-a", eq_ta);
    eq->add_option("--file-b", eq_fb)->required();
    eq->add_option("--tuple-b", eq_tb);
    eq->add_option("--depth,-n", eq_depth)->required();

    // dsum
    auto* dsum_cmd = app.add_subcommand("dsum", "distorted-sum checks");
    dsum_cmd->require_subcommand(1);
    std::string out_path, table_path;
    int opt_n = 1, opt_l = 1, max_len = 2, beta_boost = 1, otimes_n = 1;

    auto* verify = dsum_cmd->add_subcommand("verify", "quantifier-free composition (Def level)");
    CorpusOptions verify_corpus;
    verify_corpus.attach(verify);
    verify->add_option("--max-len", max_len);
    verify->add_option("--out", out_path, "witness output file");

    auto* lemma = dsum_cmd->add_subcommand("check-lemma", "distorted sum lemma table");
    CorpusOptions lemma_corpus;
    lemma_corpus.attach(lemma);
    lemma->add_option("-n", opt_n);
    lemma->add_option("-l", opt_l);
    lemma->add_option("--out", out_path);
    lemma->add_option("--out-table", table_path, "export the composition table");
    bool parallel = false;
    lemma->add_flag("--parallel", parallel);

    auto* compose = dsum_cmd->add_subcommand("compose", "table lookup for one instance");
    std::string compose_table, compose_spec, compose_tuple;
    compose->add_option("--table", compose_table)->required();
    compose->add_option("--spec", compose_spec)->required();
    compose->add_option("--tuple", compose_tuple);
    compose->add_option("-n", opt_n);
    compose->add_option("-l", opt_l);

    auto* abstract_cmd = dsum_cmd->add_subcommand("check-abstract", "abstract lemma table");
    CorpusOptions abstract_corpus;
    abstract_corpus.attach(abstract_cmd);
    abstract_cmd->add_option("-n", opt_n);
    abstract_cmd->add_option("-l", opt_l, "max tuple length");
    abstract_cmd->add_option("--beta-boost", beta_boost);
    abstract_cmd->add_option("--out", out_path);
    abstract_cmd->add_flag("--parallel", parallel);

    auto* otimes = dsum_cmd->add_subcommand("check-otimes", "tensor hypothesis");
    CorpusOptions otimes_corpus;
    otimes_corpus.attach(otimes);
    otimes->add_option("-n", otimes_n);
    otimes->add_option("-l", opt_l, "max tuple length");
    otimes->add_option("--beta-boost", beta_boost);
    otimes->add_option("--out", out_path);
    otimes->add_flag("--parallel", parallel);

    // locality
    auto* loc = app.add_subcommand("locality", "locality checks");
    loc->require_subcommand(1);
    std::uint64_t seed = 1;
    std::string loc_file, loc_tuple, loc_pred = "C";
    std::uint64_t loc_m = 1;
    int loc_cap = 3;

    auto* gaifman = loc->add_subcommand("gaifman-params", "normal-form parameter bounds");
    std::string variant = "improved";
    int gp_n = 1, gp_m = 0;
    gaifman->add_option("--variant", variant)->check(CLI::IsMember({"improved", "classical"}));
    gaifman->add_option("-n", gp_n)->required();
    gaifman->add_option("-m", gp_m)->required();

    auto* ex23 = loc->add_subcommand("example23", "finite locality lower-bound example");
    std::string fanout = "auto";
    int ex_depth = 2;
    ex23->add_option("--fanout", fanout, "integer or 'auto'");
    ex23->add_option("--depth", ex_depth);
    std::string ex_export;
    ex23->add_option("--export", ex_export, "write the graph as a structure file");

    auto* scattered = loc->add_subcommand("scattered", "max scattered C-sequence");
    scattered->add_option("--file", loc_file)->required();
    scattered->add_option("--pred", loc_pred);
    scattered->add_option("-m", loc_m);
    scattered->add_option("--cap", loc_cap);

    auto* distant = loc->add_subcommand("distant", "distant-element procedure vs brute force");
    distant->add_option("--file", loc_file)->required();
    distant->add_option("--tuple", loc_tuple);
    distant->add_option("--pred", loc_pred);
    distant->add_option("-m", loc_m);

    auto* minrad = loc->add_subcommand("min-radius", "corpus-relative radius probe");
    int mr_n = 1, mr_depth = 2, mr_graphs = 20, mr_vertices = 6, mr_budget = 8;
    bool mr_ex23 = false;
    minrad->add_option("-n", mr_n);
    minrad->add_option("--depth", mr_depth);
    minrad->add_option("--graphs", mr_graphs, "seeded random graphs to include");
    minrad->add_option("--max-vertices", mr_vertices);
    minrad->add_option("--budget", mr_budget);
    minrad->add_flag("--example23", mr_ex23, "include the lower-bound pair");
    minrad->add_option("--seed", seed);

    auto* subclaim = loc->add_subcommand("subclaim", "ball theory determines DTh");
    int sc_n = 1, sc_vertices = 4, sc_len = 1;
    subclaim->add_option("-n", sc_n);
    subclaim->add_option("--max-vertices", sc_vertices);
    subclaim->add_option("--max-len", sc_len);
    bool sc_parallel = false;
    subclaim->add_flag("--parallel", sc_parallel);

    auto* basic = loc->add_subcommand("eval-basic-local", "basic local sentence");
    int bl_count = 1;
    std::uint64_t bl_radius = 1;
    bool bl_oracle = false;
    basic->add_option("--file", loc_file)->required();
    basic->add_option("--pred", loc_pred, "psi(x0) := pred(x0)");
    basic->add_option("-s", bl_count);
    basic->add_option("-r", bl_radius);
    basic->add_flag("--oracle", bl_oracle, "compare with the expanded sentence");

    CLI11_PARSE(app, argc, argv);
    Timer timer;

    try {
        if (*th) return run_th(th_file, th_tuple, th_depth);
        if (*eq) return run_eq(eq_fa, eq_ta, eq_fb, eq_tb, eq_depth);

        std::ofstream out_stream;
        std::ostream* witness_out = nullptr;
        if (!out_path.empty()) {
            out_stream.open(out_path);
            witness_out = &out_stream;
        }

        if (*verify) {
            RunReport report;
            report.command = "dsum verify";
            report.budgets["max_len"] = max_len;
            auto corpus = verify_corpus.build(report);
            TheoryEngine eng;
            report.outcome = "pass";
            nlohmann::ordered_json results = nlohmann::ordered_json::array();
            for (std::size_t i = 0; i < corpus.size(); ++i) {
                auto r = verify_distorted_sum(eng, corpus[i], max_len);
                nlohmann::ordered_json item;
                item["spec"] = i;
                item["ok"] = r.ok;
                item["keys"] = r.table.map().key_count();
                results.push_back(item);
                if (!r.ok) {
                    report.outcome = "witness";
                    report.witnesses.push_back(*r.witness);
                }
            }
            report.details["results"] = results;
            return emit(report, witness_out);
        }

        if (*lemma || *abstract_cmd || *otimes) {
            RunReport report;
            TheoryEngine eng;
            DsumEngine dsum(eng);
            ExecMode mode = parallel ? ExecMode::Parallel : ExecMode::Serial;
            if (*lemma) {
                report.command = "dsum check-lemma";
                report.budgets["n"] = opt_n;
                report.budgets["l"] = opt_l;
                auto corpus = lemma_corpus.build(report);
                auto r = verify_distorted_sum_lemma(dsum, corpus, opt_n, opt_l, mode);
                report.outcome = r.ok ? "pass" : "witness";
                report.details["keys"] = r.table.map().key_count();
                report.details["instances"] = r.table.map().instance_count();
                if (!r.ok) report.witnesses.push_back(*r.witness);
                if (!table_path.empty()) {
                    std::ofstream tf(table_path);
                    tf << r.table.export_text();
                    report.details["table_file"] = table_path;
                }
                return emit(report, witness_out);
            }
            DTheoryEngine dt(dsum);
            RadiusSchedule sched =
                radius_schedule(std::max(opt_n, otimes_n), 2, beta_boost);
            report.budgets["beta_boost"] = beta_boost;
            report.budgets["schedule"] = sched.serial();
            if (*abstract_cmd) {
                report.command = "dsum check-abstract";
                report.budgets["n"] = opt_n;
                report.budgets["max_len"] = opt_l;
                auto corpus = abstract_corpus.build(report);
                auto pre = check_otimes(dt, corpus, sched, opt_n, opt_l, mode);
                report.details["otimes_functional"] = pre.functional;
                if (!pre.functional) {
                    report.outcome = "witness";
                    report.details["failed"] = "otimes precondition";
                    report.witnesses.push_back(*pre.witness);
                    return emit(report, witness_out);
                }
                auto r = verify_abstract_lemma(dt, corpus, sched, opt_n, opt_l, mode);
                report.outcome = r.ok ? "pass" : "witness";
                report.details["keys"] = r.table.map().key_count();
                report.details["instances"] = r.table.map().instance_count();
                if (!r.ok) report.witnesses.push_back(*r.witness);
                return emit(report, witness_out);
            }
            report.command = "dsum check-otimes";
            report.budgets["n"] = otimes_n;
            report.budgets["max_len"] = opt_l;
            auto corpus = otimes_corpus.build(report);
            auto r = check_otimes(dt, corpus, sched, otimes_n, opt_l, mode);
            report.outcome = r.functional ? "pass" : "witness";
            if (!r.functional) report.witnesses.push_back(*r.witness);
            return emit(report, witness_out);
        }

        if (*compose) {
            // load the exported table: lines "KEY -> VALUE #count"
            std::ifstream tf(compose_table);
            if (!tf) throw DomainError("cannot open table '" + compose_table + "'");
            std::map<std::string, std::vector<std::string>> table;
            std::string line;
            while (std::getline(tf, line)) {
                if (line.empty() || line[0] == '#') continue;
                auto arrow = line.find(" -> ");
                auto hash = line.rfind(" #");
                if (arrow == std::string::npos || hash == std::string::npos) continue;
                table[line.substr(0, arrow)].push_back(
                    line.substr(arrow + 4, hash - arrow - 4));
            }
            ParsedFile parsed = parse_structure_file_named(compose_spec);
            if (!parsed.is_dsum) throw DomainError("compose needs a distorted-sum file");
            TheoryEngine eng;
            DsumEngine dsum(eng);
            std::vector<Elem> tuple = parse_tuple(parsed, compose_tuple);
            std::string key = lemma_key(dsum, *parsed.spec, tuple, opt_n, opt_l);
            auto it = table.find(key);
            if (it == table.end()) {
                std::cerr << "unknown key (not realized by the table's corpus)\n";
                return 1;
            }
            TypeId direct = eng.thn(parsed.spec->global(), tuple, opt_n);
            std::string direct_digest = eng.table().digest_of(direct).hex();
            std::cout << "value " << it->second.front() << " direct " << direct_digest
                      << (it->second.front() == direct_digest ? " match" : " MISMATCH") << "\n";
            return it->second.front() == direct_digest ? 0 : 1;
        }

        if (*gaifman) {
            GaifmanParams p = gaifman_params(
                gp_n, gp_m,
                variant == "improved" ? GaifmanVariant::Improved : GaifmanVariant::Classical);
            std::cout << "r=" << p.r << " s=" << p.s << " t=" << p.t << "\n";
            return 0;
        }

        if (*ex23) {
            RunReport report;
            report.command = "locality example23";
            report.budgets["depth"] = ex_depth;
            TheoryEngine eng;
            Example23 ex = fanout == "auto" ? search_example_23(eng, ex_depth)
                                            : build_example_23(eng, std::stoi(fanout), ex_depth);
            report.inputs.emplace_back("graph", fnv128(ex.graph->fingerprint()).hex());
            report.outcome = "pass";
            report.details["fanout"] = ex.fanout;
            report.details["vertices"] = ex.graph->size();
            std::vector<Elem> ta{ex.a}, tb{ex.b};
            Structure b2a = neighborhood(*ex.graph, ta, 2);
            Structure b2b = neighborhood(*ex.graph, tb, 2);
            report.details["radius2_types_equal"] =
                eng.thn(b2a, ta, ex_depth) == eng.thn(b2b, tb, ex_depth);
            DefinableSet c = ex.c_set();
            report.details["distant_at_a"] = distant_exists_brute(*ex.graph, ta, c, 1);
            report.details["distant_at_b"] = distant_exists_brute(*ex.graph, tb, c, 1);
            Structure b3a = neighborhood(*ex.graph, ta, 3);
            Structure b3b = neighborhood(*ex.graph, tb, 3);
            report.details["radius3_types_equal"] =
                eng.thn(b3a, ta, ex_depth) == eng.thn(b3b, tb, ex_depth);
            if (!ex_export.empty()) {
                std::vector<std::string> names;
                for (Elem e : ex.graph->universe()) {
                    if (e == ex.a) names.push_back("a");
                    else if (e == ex.b) names.push_back("b");
                    else if (e == ex.c_star) names.push_back("cstar");
                    else names.push_back("v" + std::to_string(e));
                }
                std::ofstream xf(ex_export);
                xf << write_structure_file(*ex.graph, names);
                report.details["exported"] = ex_export;
            }
            return emit(report, nullptr);
        }

        if (*scattered) {
            ParsedFile file = parse_structure_file_named(loc_file);
            int k = scattered_max(file.structure, DefinableSet::predicate(loc_pred), loc_m,
                                  loc_cap);
            std::cout << k << "\n";
            return 0;
        }

        if (*distant) {
            RunReport report;
            report.command = "locality distant";
            ParsedFile file = parse_structure_file_named(loc_file);
            report.inputs.emplace_back(loc_file, fnv128(file.structure.fingerprint()).hex());
            std::vector<Elem> tuple = parse_tuple(file, loc_tuple);
            DefinableSet c = DefinableSet::predicate(loc_pred);
            int gsm = scattered_max(file.structure, c, loc_m,
                                    static_cast<int>(tuple.size()) + 1);
            Structure ball = neighborhood(file.structure, tuple, 3 * loc_m);
            bool local = distant_exists_local(ball, tuple, c, loc_m,
                                              static_cast<int>(tuple.size()), gsm);
            bool brute = distant_exists_brute(file.structure, tuple, c, loc_m);
            report.details["local"] = local;
            report.details["brute"] = brute;
            report.details["scatter_max"] = gsm;
            report.outcome = local == brute ? "pass" : "witness";
            return emit(report, nullptr);
        }

        if (*minrad) {
            RunReport report;
            report.command = "locality min-radius";
            report.seed = seed;
            report.budgets["n"] = mr_n;
            report.budgets["depth"] = mr_depth;
            report.budgets["k_budget"] = mr_budget;
            TheoryEngine eng;
            std::vector<LocalityInstance> corpus;
            if (mr_ex23) {
                Example23 ex = search_example_23(eng, 2);
                corpus.push_back({ex.graph, {ex.a}});
                corpus.push_back({ex.graph, {ex.b}});
                report.details["example23_fanout"] = ex.fanout;
            }
            Rng rng(seed);
            for (int i = 0; i < mr_graphs; ++i) {
                auto g = make_structure(random_graph(
                    2 + static_cast<int>(rng() % static_cast<std::uint64_t>(mr_vertices - 1)),
                    0.3, rng));
                for (Elem v : g->universe()) corpus.push_back({g, {v}});
            }
            report.details["instances"] = corpus.size();
            MinRadiusResult r = min_radius_search(eng, corpus, mr_n, mr_depth, mr_budget);
            report.outcome = "pass";
            report.details["min_radius"] = r.k;
            report.details["note"] = "corpus-relative lower-bound probe, not the true k(n)";
            if (r.collision_below) report.witnesses.push_back(*r.collision_below);
            std::cout << report.body();
            if (!report.witnesses.empty())
                std::cerr << witness_json(report.witnesses[0]).dump(2) << "\n";
            return 0;
        }

        if (*subclaim) {
            RunReport report;
            report.command = "locality subclaim";
            report.budgets["n"] = sc_n;
            report.budgets["max_vertices"] = sc_vertices;
            RadiusSchedule sched = radius_schedule(std::max(sc_n, 1));
            report.budgets["schedule"] = sched.serial();
            TheoryEngine eng;
            DsumEngine dsum(eng);
            DTheoryEngine dt(dsum);
            std::vector<LocalityInstance> corpus;
            for (const auto& g : enumerate_graphs("E", sc_vertices)) {
                auto model = make_structure(g);
                corpus.push_back({model, {}});
                for (Elem v : model->universe()) {
                    if (sc_len >= 1) corpus.push_back({model, {v}});
                    if (sc_len >= 2)
                        for (Elem w : model->universe()) corpus.push_back({model, {v, w}});
                }
            }
            report.details["instances"] = corpus.size();
            auto r = check_subclaim(dt, corpus, sched, sc_n,
                                    sc_parallel ? ExecMode::Parallel : ExecMode::Serial);
            report.outcome = r.functional ? "pass" : "witness";
            if (!r.functional) report.witnesses.push_back(*r.witness);
            return emit(report, nullptr);
        }

        if (*basic) {
            RunReport report;
            report.command = "locality eval-basic-local";
            ParsedFile file = parse_structure_file_named(loc_file);
            report.inputs.emplace_back(loc_file, fnv128(file.structure.fingerprint()).hex());
            BasicLocalSentence sentence;
            sentence.count = bl_count;
            sentence.radius = bl_radius;
            sentence.psi = Formula::rel(loc_pred, {0});
            bool holds = eval_basic_local(file.structure, sentence);
            report.details["holds"] = holds;
            report.outcome = "pass";
            if (bl_oracle) {
                FormulaPtr expanded = expand_basic_local(file.structure.sig(), sentence);
                std::vector<Elem> none;
                bool oracle = eval_formula(file.structure, *expanded, none);
                report.details["oracle"] = oracle;
                if (oracle != holds) report.outcome = "witness";
            }
            return emit(report, nullptr);
        }
    } catch (const ParseError& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return 2;
    } catch (const BudgetError& e) {
        std::cerr << "budget error: " << e.what() << "\n";
        return 3;
    } catch (const DomainError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}

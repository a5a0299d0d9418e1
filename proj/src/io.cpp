#include "fmtk/io.hpp"

#include <fstream>
#include <map>
#include <sstream>

namespace fmtk {

Elem ParsedFile::id_of(const std::string& name) const {
    for (std::size_t i = 0; i < names.size(); ++i)
        if (names[i] == name) return static_cast<Elem>(i);
    throw DomainError("unknown element name '" + name + "'");
}

const std::string& ParsedFile::name_of(Elem id) const {
    if (id < 0 || static_cast<std::size_t>(id) >= names.size())
        throw DomainError("unknown element id");
    return names[static_cast<std::size_t>(id)];
}

namespace {

struct Builder {
    std::vector<std::string> names;
    std::map<std::string, Elem> ids;

    Elem intern(const std::string& name) {
        auto it = ids.find(name);
        if (it != ids.end()) return it->second;
        Elem id = static_cast<Elem>(names.size());
        names.push_back(name);
        ids.emplace(name, id);
        return id;
    }
};

struct Section {
    std::vector<Symbol> symbols;
    std::vector<std::string> universe_names;
    std::map<std::string, std::vector<std::vector<std::string>>> relations;
};

std::vector<std::string> tokens_of(const std::string& line) {
    std::vector<std::string> out;
    std::istringstream is(line);
    std::string tok;
    while (is >> tok) {
        if (tok[0] == '#') break;
        out.push_back(tok);
    }
    return out;
}

Structure build_structure(const Section& sec, Builder& b, int line) {
    std::vector<Elem> universe;
    for (const auto& n : sec.universe_names) universe.push_back(b.intern(n));
    Signature sig(sec.symbols);
    std::vector<std::vector<std::vector<Elem>>> interp(sig.size());
    for (const auto& [name, tuples] : sec.relations) {
        int sym = sig.index_of(name);
        if (sym < 0) throw ParseError(line, "relation '" + name + "' not in signature");
        for (const auto& t : tuples) {
            std::vector<Elem> tuple;
            for (const auto& en : t) {
                auto it = b.ids.find(en);
                if (it == b.ids.end())
                    throw ParseError(line, "element '" + en + "' not in universe");
                tuple.push_back(it->second);
            }
            interp[static_cast<std::size_t>(sym)].push_back(std::move(tuple));
        }
    }
    try {
        return Structure(sig, std::move(universe), std::move(interp));
    } catch (const std::exception& e) {
        throw ParseError(line, e.what());
    }
}

}  // namespace

ParsedFile parse_structure_file(std::istream& in) {
    Builder builder;
    Section global, index;
    bool has_index = false, has_metric = false, has_partition = false;
    std::vector<std::tuple<std::string, std::string, std::string>> metric_lines;
    std::vector<std::pair<std::string, std::string>> partition_lines;

    enum class Mode {
        None,
        Signature,
        Universe,
        Relation,
        IndexSignature,
        IndexUniverse,
        IndexRelation,
        Metric,
        Partition
    };
    Mode mode = Mode::None;
    std::string current_relation;
    int line_no = 0;
    std::string line;

    while (std::getline(in, line)) {
        ++line_no;
        auto toks = tokens_of(line);
        if (toks.empty()) continue;

        if (toks[0] == "signature" && toks.size() == 1) {
            mode = Mode::Signature;
        } else if (toks[0] == "universe" && toks.size() == 1) {
            mode = Mode::Universe;
        } else if (toks[0] == "relation" && toks.size() == 2) {
            mode = Mode::Relation;
            current_relation = toks[1];
            global.relations[current_relation];
        } else if (toks[0] == "index" && toks.size() >= 2) {
            has_index = true;
            if (toks[1] == "signature" && toks.size() == 2) {
                mode = Mode::IndexSignature;
            } else if (toks[1] == "universe" && toks.size() == 2) {
                mode = Mode::IndexUniverse;
            } else if (toks[1] == "relation" && toks.size() == 3) {
                mode = Mode::IndexRelation;
                current_relation = toks[2];
                index.relations[current_relation];
            } else {
                throw ParseError(line_no, "bad index block header");
            }
        } else if (toks[0] == "metric" && toks.size() == 1) {
            mode = Mode::Metric;
            has_metric = true;
        } else if (toks[0] == "partition" && toks.size() == 1) {
            mode = Mode::Partition;
            has_partition = true;
        } else {
            switch (mode) {
                case Mode::Signature:
                case Mode::IndexSignature: {
                    if (toks.size() != 2) throw ParseError(line_no, "expected: name arity");
                    int arity = 0;
                    try {
                        arity = std::stoi(toks[1]);
                    } catch (...) {
                        throw ParseError(line_no, "bad arity '" + toks[1] + "'");
                    }
                    auto& sec = mode == Mode::Signature ? global : index;
                    sec.symbols.push_back({toks[0], arity});
                    break;
                }
                case Mode::Universe:
                    for (const auto& t : toks) global.universe_names.push_back(t);
                    break;
                case Mode::IndexUniverse:
                    for (const auto& t : toks) index.universe_names.push_back(t);
                    break;
                case Mode::Relation:
                    global.relations[current_relation].push_back(toks);
                    break;
                case Mode::IndexRelation:
                    index.relations[current_relation].push_back(toks);
                    break;
                case Mode::Metric: {
                    if (toks.size() != 3) throw ParseError(line_no, "expected: point point dist");
                    metric_lines.emplace_back(toks[0], toks[1], toks[2]);
                    break;
                }
                case Mode::Partition: {
                    if (toks.size() != 2) throw ParseError(line_no, "expected: element point");
                    partition_lines.emplace_back(toks[0], toks[1]);
                    break;
                }
                case Mode::None:
                    throw ParseError(line_no, "content before any block header");
            }
        }
    }

    ParsedFile out;
    if (has_index != has_metric || (has_index && !has_partition))
        throw ParseError(line_no,
                         "distorted-sum files need index, metric and partition blocks");

    // index names intern first so point ids stay below element ids
    Structure index_structure;
    if (has_index) index_structure = build_structure(index, builder, line_no);
    out.structure = build_structure(global, builder, line_no);

    if (has_index) {
        const int g = index_structure.size();
        std::vector<ExtDistance> d(static_cast<std::size_t>(g) * g, ExtDistance::infinity());
        for (int i = 0; i < g; ++i) d[static_cast<std::size_t>(i) * g + i] = ExtDistance::zero();
        for (const auto& [sn, tn, dv] : metric_lines) {
            auto si = builder.ids.find(sn);
            auto ti = builder.ids.find(tn);
            if (si == builder.ids.end() || ti == builder.ids.end())
                throw ParseError(line_no, "metric entry names unknown point");
            int a = index_structure.local_index(si->second);
            int bll = index_structure.local_index(ti->second);
            if (a < 0 || bll < 0) throw ParseError(line_no, "metric point not in index universe");
            ExtDistance v = dv == "inf" ? ExtDistance::infinity()
                                        : ExtDistance(std::stoull(dv));
            d[static_cast<std::size_t>(a) * g + bll] = v;
            d[static_cast<std::size_t>(bll) * g + a] = v;
        }
        MetricIndex metric;
        try {
            metric = MetricIndex(index_structure.universe(), std::move(d));
        } catch (const std::exception& e) {
            throw ParseError(line_no, e.what());
        }

        std::vector<Elem> h(static_cast<std::size_t>(out.structure.size()), -1);
        for (const auto& [en, pn] : partition_lines) {
            auto ei = builder.ids.find(en);
            auto pi = builder.ids.find(pn);
            if (ei == builder.ids.end() || pi == builder.ids.end())
                throw ParseError(line_no, "partition entry names unknown element/point");
            int li = out.structure.local_index(ei->second);
            if (li < 0) throw ParseError(line_no, "partition element not in universe");
            h[static_cast<std::size_t>(li)] = pi->second;
        }
        for (Elem v : h)
            if (v < 0) throw ParseError(line_no, "partition map must be total");
        try {
            out.spec = DistortedSumSpec(std::move(index_structure), std::move(metric),
                                        out.structure, std::move(h));
        } catch (const std::exception& e) {
            throw ParseError(line_no, e.what());
        }
        out.is_dsum = true;
    }

    out.names = std::move(builder.names);
    return out;
}

ParsedFile parse_structure_file_named(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw DomainError("cannot open '" + path + "'");
    return parse_structure_file(in);
}

namespace {
void write_section(std::string& out, const Structure& s,
                   const std::vector<std::string>& names, const std::string& prefix) {
    out += prefix + "signature\n";
    for (const auto& sym : s.sig().symbols())
        out += "  " + sym.name + " " + std::to_string(sym.arity) + "\n";
    out += prefix + "universe\n  ";
    for (Elem e : s.universe()) out += names[static_cast<std::size_t>(e)] + " ";
    out += "\n";
    for (std::size_t sym = 0; sym < s.sig().size(); ++sym) {
        out += prefix + "relation " + s.sig().at(static_cast<int>(sym)).name + "\n";
        for (const auto& t : s.tuples(static_cast<int>(sym))) {
            out += "  ";
            for (Elem e : t) out += names[static_cast<std::size_t>(e)] + " ";
            out += "\n";
        }
    }
}
}  // namespace

std::string write_structure_file(const Structure& s, const std::vector<std::string>& names) {
    std::string out;
    write_section(out, s, names, "");
    return out;
}

std::string write_dsum_file(const DistortedSumSpec& spec,
                            const std::vector<std::string>& names) {
    std::string out;
    write_section(out, spec.index(), names, "index ");
    out += "metric\n";
    const auto& pts = spec.metric().points();
    for (std::size_t i = 0; i < pts.size(); ++i)
        for (std::size_t j = i + 1; j < pts.size(); ++j) {
            ExtDistance d = spec.metric().dist_by_index(static_cast<int>(i),
                                                        static_cast<int>(j));
            if (d.is_infinite()) continue;  // omitted pairs read as infinite
            out += "  " + names[static_cast<std::size_t>(pts[i])] + " " +
                   names[static_cast<std::size_t>(pts[j])] + " " + d.str() + "\n";
        }
    write_section(out, spec.global(), names, "");
    out += "partition\n";
    for (Elem e : spec.global().universe())
        out += "  " + names[static_cast<std::size_t>(e)] + " " +
               names[static_cast<std::size_t>(spec.h(e))] + "\n";
    return out;
}

}  // namespace fmtk

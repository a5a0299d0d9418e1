#pragma once

#include <iosfwd>
#include <string>

#include "fmtk/dsum.hpp"

namespace fmtk {

// Line-oriented structure files. Blocks:
//   signature        name/arity pairs, one per line
//   universe         element names
//   relation <name>  tuples, one per line
// and, promoting the file to a distorted-sum spec:
//   index signature / index universe / index relation <name>
//   metric           "s t d" entries (d an integer or "inf"); omitted
//                    off-diagonal pairs are infinite
//   partition        "element point" lines (the map h)
// '#' starts a comment. Element names are interned to ids in first-use order
// (index section first), so files are reproducible bit-exactly.
struct ParsedFile {
    bool is_dsum = false;
    Structure structure;                 // the global structure
    std::optional<DistortedSumSpec> spec;

    // name interning, for echoing answers back in file terms
    std::vector<std::string> names;      // id -> name
    Elem id_of(const std::string& name) const;
    const std::string& name_of(Elem id) const;
};

struct ParseError : std::runtime_error {
    int line;
    ParseError(int line_no, const std::string& what)
        : std::runtime_error("line " + std::to_string(line_no) + ": " + what), line(line_no) {}
};

ParsedFile parse_structure_file(std::istream& in);
ParsedFile parse_structure_file_named(const std::string& path);

// Writers used for fixture generation and exports.
std::string write_structure_file(const Structure& s,
                                 const std::vector<std::string>& names);
std::string write_dsum_file(const DistortedSumSpec& spec,
                            const std::vector<std::string>& names);

}  // namespace fmtk

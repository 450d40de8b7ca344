#ifndef BSPEC_IO_HPP
#define BSPEC_IO_HPP

#include <json.hpp>

#include <string>
#include <utility>
#include <vector>

#include "bspec/graph.hpp"
#include "bspec/numberfield.hpp"
#include "bspec/tiling.hpp"

namespace bspec {

using ojson = nlohmann::ordered_json;

inline constexpr int kSchemaVersion = 1;

std::string read_file(const std::string& path);

// Graph spec: vertices, edges [{id, source, range}], star, rho,
// tau ("auto" or {edge: edge}), horizontal ("maximal" or [{from, to, orientation}]).
GraphSpec parse_graph_spec(const nlohmann::json& j);
GraphSpec load_graph_spec(const std::string& path);
nlohmann::json graph_to_json(const BratteliGraph& g);

// Rules: alphabet, rules {letter: word}, optional H_tr / H_lg as lists of edge-id pairs.
// Words are strings of one-character letters or arrays of letters.
SubstitutionRules parse_rules(const nlohmann::json& j);
SubstitutionRules load_rules(const std::string& path);

// Pairs file: [{"x": [edge ids], "y": [edge ids]}]; words are tau-extended.
std::vector<std::pair<PathWord, PathWord>> parse_pairs(const BratteliGraph& g, const nlohmann::json& j);

PathWord parse_word(const BratteliGraph& g, const std::vector<std::string>& ids, PathMode mode);
std::vector<std::string> word_ids(const BratteliGraph& g, const std::vector<int>& edges);

// FNV-1a 64-bit, hex.
std::string digest(const std::string& bytes);

// Report skeleton: schema_version, command, input digest, results, warnings.
ojson make_report(const std::string& command, const std::vector<std::string>& args,
                  const std::string& input_digest);

ojson complex_json(std::complex<double> z);
ojson field_json(const FieldElement& x);

class CsvWriter {
public:
    explicit CsvWriter(std::vector<std::string> header);
    void row(const std::vector<std::string>& cells);
    std::string str() const { return out_; }

private:
    size_t cols_;
    std::string out_;
};

// Shortest round-trip decimal representation.
std::string fmt_double(double x);

} // namespace bspec

#endif

#include "bspec/io.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace bspec {

namespace {

using nlohmann::json;

const json& require(const json& j, const char* key) {
    if (!j.is_object() || !j.contains(key)) throw Error(ErrorCode::Parse, std::string("missing field '") + key + "'");
    return j.at(key);
}

std::string as_string(const json& j, const char* what) {
    if (j.is_string()) return j.get<std::string>();
    if (j.is_number_integer()) return std::to_string(j.get<long>());
    throw Error(ErrorCode::Parse, std::string(what) + " must be a string");
}

std::vector<std::pair<std::string, std::string>> parse_id_pairs(const json& j, const char* what) {
    std::vector<std::pair<std::string, std::string>> out;
    if (!j.is_array()) throw Error(ErrorCode::Parse, std::string(what) + " must be an array of pairs");
    for (const auto& p : j) {
        if (!p.is_array() || p.size() != 2) throw Error(ErrorCode::Parse, std::string(what) + " entries must be pairs");
        out.emplace_back(as_string(p[0], what), as_string(p[1], what));
    }
    return out;
}

json parse_json_text(const std::string& text, const std::string& where) {
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        throw Error(ErrorCode::Parse, where + ": " + e.what());
    }
}

} // namespace

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorCode::Parse, "cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

GraphSpec parse_graph_spec(const json& j) {
    GraphSpec s;
    try {
        for (const auto& v : require(j, "vertices")) s.vertices.push_back(as_string(v, "vertex"));
        for (const auto& e : require(j, "edges"))
            s.edges.push_back({as_string(require(e, "id"), "edge id"), as_string(require(e, "source"), "source"),
                               as_string(require(e, "range"), "range")});
        s.star_edge = as_string(require(j, "star"), "star");
        const auto& rho = require(j, "rho");
        if (!rho.is_number()) throw Error(ErrorCode::Parse, "rho must be a number");
        s.rho = rho.get<double>();
        const auto& tau = require(j, "tau");
        if (tau.is_string()) {
            if (tau.get<std::string>() != "auto") throw Error(ErrorCode::Parse, "tau must be \"auto\" or a map");
            s.tau_auto = true;
        } else if (tau.is_object()) {
            for (const auto& [k, v] : tau.items()) s.tau.emplace_back(k, as_string(v, "tau target"));
        } else {
            throw Error(ErrorCode::Parse, "tau must be \"auto\" or a map");
        }
        const auto& h = require(j, "horizontal");
        if (h.is_string()) {
            if (h.get<std::string>() != "maximal")
                throw Error(ErrorCode::Parse, "horizontal must be \"maximal\" or a list");
            s.horizontal_maximal = true;
        } else if (h.is_array()) {
            for (const auto& p : h) {
                std::string o = p.contains("orientation") ? as_string(p.at("orientation"), "orientation") : "+";
                s.horizontal.push_back({as_string(require(p, "from"), "from"), as_string(require(p, "to"), "to"), o});
            }
        } else {
            throw Error(ErrorCode::Parse, "horizontal must be \"maximal\" or a list");
        }
    } catch (const json::exception& e) {
        throw Error(ErrorCode::Parse, e.what());
    }
    return s;
}

GraphSpec load_graph_spec(const std::string& path) {
    return parse_graph_spec(parse_json_text(read_file(path), path));
}

json graph_to_json(const BratteliGraph& g) {
    json j;
    j["vertices"] = g.vertices;
    j["edges"] = json::array();
    for (const auto& e : g.edges)
        j["edges"].push_back({{"id", e.id}, {"source", g.vertices[e.source]}, {"range", g.vertices[e.range]}});
    j["star"] = g.edges[g.star_edge].id;
    j["rho"] = g.rho;
    json tau = json::object();
    for (int e = 0; e < g.num_edges(); ++e) tau[g.edges[e].id] = g.edges[g.tau[e]].id;
    j["tau"] = tau;
    j["horizontal"] = json::array();
    for (const auto& h : g.horizontal)
        j["horizontal"].push_back({{"from", g.edges[h.from].id},
                                   {"to", g.edges[h.to].id},
                                   {"orientation", h.orientation == Orientation::Plus ? "+" : "-"}});
    return j;
}

SubstitutionRules parse_rules(const json& j) {
    SubstitutionRules r;
    try {
        for (const auto& a : require(j, "alphabet")) r.alphabet.push_back(as_string(a, "letter"));
        auto index = [&](const std::string& l) {
            for (size_t i = 0; i < r.alphabet.size(); ++i)
                if (r.alphabet[i] == l) return static_cast<int>(i);
            throw Error(ErrorCode::Parse, "unknown letter '" + l + "'");
        };
        const auto& rules = require(j, "rules");
        if (!rules.is_object()) throw Error(ErrorCode::Parse, "rules must be an object");
        r.words.resize(r.alphabet.size());
        std::vector<bool> seen(r.alphabet.size(), false);
        for (const auto& [k, w] : rules.items()) {
            int v = index(k);
            seen[v] = true;
            if (w.is_string()) {
                for (char c : w.get<std::string>()) r.words[v].push_back(index(std::string(1, c)));
            } else if (w.is_array()) {
                for (const auto& c : w) r.words[v].push_back(index(as_string(c, "letter")));
            } else {
                throw Error(ErrorCode::Parse, "word for " + k + " must be a string or an array");
            }
        }
        for (size_t v = 0; v < seen.size(); ++v)
            if (!seen[v]) throw Error(ErrorCode::Parse, "no rule for letter " + r.alphabet[v]);
        if (j.contains("H_tr")) r.h_tr = parse_id_pairs(j.at("H_tr"), "H_tr");
        if (j.contains("H_lg")) r.h_lg = parse_id_pairs(j.at("H_lg"), "H_lg");
    } catch (const json::exception& e) {
        throw Error(ErrorCode::Parse, e.what());
    }
    return r;
}

SubstitutionRules load_rules(const std::string& path) {
    return parse_rules(parse_json_text(read_file(path), path));
}

PathWord parse_word(const BratteliGraph& g, const std::vector<std::string>& ids, PathMode mode) {
    PathWord w{{}, mode};
    for (const auto& id : ids) {
        int e = g.edge_index(id);
        if (e < 0) throw Error(ErrorCode::Parse, "unknown edge '" + id + "' in word");
        w.edges.push_back(e);
    }
    if (w.edges.empty()) throw Error(ErrorCode::Parse, "empty word");
    if (!is_valid_path(g, w.edges)) throw Error(ErrorCode::Parse, "word is not a path");
    return w;
}

std::vector<std::string> word_ids(const BratteliGraph& g, const std::vector<int>& edges) {
    std::vector<std::string> out;
    for (int e : edges) out.push_back(g.edges[e].id);
    return out;
}

std::vector<std::pair<PathWord, PathWord>> parse_pairs(const BratteliGraph& g, const json& j) {
    std::vector<std::pair<PathWord, PathWord>> out;
    if (!j.is_array()) throw Error(ErrorCode::Parse, "pairs file must hold an array");
    try {
        for (const auto& p : j) {
            std::vector<std::string> x, y;
            for (const auto& e : require(p, "x")) x.push_back(as_string(e, "edge"));
            for (const auto& e : require(p, "y")) y.push_back(as_string(e, "edge"));
            out.emplace_back(parse_word(g, x, PathMode::TauExtended), parse_word(g, y, PathMode::TauExtended));
        }
    } catch (const json::exception& e) {
        throw Error(ErrorCode::Parse, e.what());
    }
    return out;
}

std::string digest(const std::string& bytes) {
    std::uint64_t h = 14695981039346656037ull;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 1099511628211ull;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

ojson make_report(const std::string& command, const std::vector<std::string>& args,
                  const std::string& input_digest) {
    ojson r;
    r["schema_version"] = kSchemaVersion;
    r["command"] = command;
    r["arguments"] = args;
    r["input_digest"] = input_digest;
    r["results"] = ojson::object();
    r["warnings"] = ojson::array();
    return r;
}

ojson complex_json(std::complex<double> z) { return ojson::array({z.real(), z.imag()}); }

ojson field_json(const FieldElement& x) {
    ojson c = ojson::array();
    for (const auto& q : x.coeffs()) c.push_back(q.get_str());
    return ojson{{"coefficients", c}, {"value", x.value()}};
}

CsvWriter::CsvWriter(std::vector<std::string> header) : cols_(header.size()) { row(header); }

void CsvWriter::row(const std::vector<std::string>& cells) {
    if (cells.size() != cols_) throw Error(ErrorCode::InvalidArgument, "csv row width mismatch");
    for (size_t i = 0; i < cells.size(); ++i) {
        if (i) out_ += ',';
        const auto& c = cells[i];
        if (c.find_first_of(",\"\n") != std::string::npos) {
            out_ += '"';
            for (char ch : c) {
                if (ch == '"') out_ += '"';
                out_ += ch;
            }
            out_ += '"';
        } else {
            out_ += c;
        }
    }
    out_ += '\n';
}

std::string fmt_double(double x) {
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof buf, x);
    return std::string(buf, res.ptr);
}

} // namespace bspec

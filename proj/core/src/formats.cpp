#include "cclab/formats.hpp"

#include <cstdint>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "cclab/errors.hpp"

namespace cclab {

namespace {

using nlohmann::json;
using ordered_json = nlohmann::ordered_json;

// Line/column of a byte offset, for parse error messages.
std::string position_of(const std::string& text, std::size_t byte) {
    std::size_t line = 1, col = 1;
    for (std::size_t k = 0; k < byte && k < text.size(); ++k) {
        if (text[k] == '\n') {
            ++line;
            col = 1;
        } else {
            ++col;
        }
    }
    return "line " + std::to_string(line) + ", column " + std::to_string(col);
}

json parse_json_text(const std::string& text) {
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        throw StructuralError("JSON parse error at " + position_of(text, e.byte) + ": " +
                              e.what());
    }
}

std::size_t require_count(const json& j, const char* key, const char* where) {
    if (!j.contains(key) || !j[key].is_number_unsigned()) {
        throw StructuralError(std::string(where) + ": missing or non-integer \"" + key + "\"");
    }
    return j[key].get<std::size_t>();
}

Matrix parse_matrix(const json& j, const char* where) {
    if (!j.is_array() || j.empty() || !j[0].is_array() || j[0].empty()) {
        throw StructuralError(std::string(where) + ": \"matrix\" must be a nonempty 2D array");
    }
    const std::size_t rows = j.size();
    const std::size_t cols = j[0].size();
    Matrix m(rows, cols);
    for (std::size_t r = 0; r < rows; ++r) {
        if (!j[r].is_array() || j[r].size() != cols) {
            throw StructuralError(std::string(where) + ": ragged matrix row " +
                                  std::to_string(r));
        }
        for (std::size_t c = 0; c < cols; ++c) {
            if (!j[r][c].is_number_integer() && !j[r][c].is_number_unsigned()) {
                throw StructuralError(std::string(where) + ": non-integer entry at (" +
                                      std::to_string(r) + "," + std::to_string(c) + ")");
            }
            m(r, c) = j[r][c].get<double>();
        }
    }
    return m;
}

} // namespace

std::string to_string(InputKind kind) {
    switch (kind) {
        case InputKind::ccjson: return "ccjson";
        case InputKind::design: return "design";
        case InputKind::bgr: return "bgr";
    }
    return "unknown";
}

CoherentConfig parse_ccjson(const std::string& text) {
    const json j = parse_json_text(text);
    if (!j.is_object() || !j.contains("fibres") || !j.contains("relations")) {
        throw StructuralError("ccjson: expected an object with \"fibres\" and \"relations\"");
    }
    if (!j["fibres"].is_array() || j["fibres"].empty()) {
        throw StructuralError("ccjson: \"fibres\" must be a nonempty array of sizes");
    }
    std::vector<std::size_t> sizes;
    for (const auto& s : j["fibres"]) {
        if (!s.is_number_unsigned() || s.get<std::size_t>() == 0) {
            throw StructuralError("ccjson: fibre sizes must be positive integers");
        }
        sizes.push_back(s.get<std::size_t>());
    }
    if (!j["relations"].is_array() || j["relations"].empty()) {
        throw StructuralError("ccjson: \"relations\" must be a nonempty array");
    }
    std::vector<Relation> relations;
    for (std::size_t k = 0; k < j["relations"].size(); ++k) {
        const json& rj = j["relations"][k];
        const std::string where = "ccjson relation " + std::to_string(k);
        if (!rj.is_object() || !rj.contains("matrix")) {
            throw StructuralError(where + ": expected an object with \"matrix\"");
        }
        Relation rel;
        rel.source = require_count(rj, "source", where.c_str());
        rel.target = require_count(rj, "target", where.c_str());
        rel.index = require_count(rj, "index", where.c_str());
        rel.matrix = parse_matrix(rj["matrix"], where.c_str());
        relations.push_back(std::move(rel));
    }
    return CoherentConfig(FibrePartition::from_sizes(std::move(sizes)), std::move(relations));
}

IncidenceStructure parse_design_json(const std::string& text) {
    const json j = parse_json_text(text);
    if (!j.is_object() || !j.contains("points") || !j.contains("blocks")) {
        throw StructuralError("design: expected an object with \"points\" and \"blocks\"");
    }
    IncidenceStructure d;
    d.points = require_count(j, "points", "design");
    if (!j["blocks"].is_array() || j["blocks"].empty()) {
        throw StructuralError("design: \"blocks\" must be a nonempty array");
    }
    for (const auto& bj : j["blocks"]) {
        if (!bj.is_array()) throw StructuralError("design: each block must be an array");
        std::vector<std::size_t> block;
        for (const auto& p : bj) {
            if (!p.is_number_unsigned()) {
                throw StructuralError("design: block entries must be point indices");
            }
            block.push_back(p.get<std::size_t>());
        }
        d.blocks.push_back(std::move(block));
    }
    return d;
}

BipartiteGraph parse_bgr(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    std::size_t lineno = 0;
    BipartiteGraph g;
    bool have_header = false;
    while (std::getline(in, line)) {
        ++lineno;
        std::istringstream fields(line);
        std::string first;
        if (!(fields >> first)) continue;  // blank line
        if (first[0] == '#') continue;
        long long a = 0, b = 0;
        std::istringstream two(line);
        if (!(two >> a >> b) || a < 0 || b < 0) {
            throw StructuralError("bgr: line " + std::to_string(lineno) +
                                  ": expected two nonnegative integers");
        }
        std::string extra;
        if (two >> extra) {
            throw StructuralError("bgr: line " + std::to_string(lineno) + ": trailing tokens");
        }
        if (!have_header) {
            g.left = static_cast<std::size_t>(a);
            g.right = static_cast<std::size_t>(b);
            have_header = true;
        } else {
            g.edges.push_back({static_cast<std::size_t>(a), static_cast<std::size_t>(b)});
        }
    }
    if (!have_header) throw StructuralError("bgr: missing \"p q\" header line");
    return g;
}

std::string write_ccjson(const CoherentConfig& cc) {
    ordered_json j;
    j["fibres"] = cc.fibres().sizes;
    j["relations"] = ordered_json::array();
    for (const Relation& rel : cc.relations()) {
        ordered_json rj;
        rj["source"] = rel.source;
        rj["target"] = rel.target;
        rj["index"] = rel.index;
        ordered_json rows = ordered_json::array();
        for (std::size_t r = 0; r < rel.matrix.rows(); ++r) {
            ordered_json row = ordered_json::array();
            for (std::size_t c = 0; c < rel.matrix.cols(); ++c)
                row.push_back(static_cast<long long>(rel.matrix(r, c)));
            rows.push_back(std::move(row));
        }
        rj["matrix"] = std::move(rows);
        j["relations"].push_back(std::move(rj));
    }
    return j.dump(2) + "\n";
}

std::string write_design_json(const IncidenceStructure& design) {
    ordered_json j;
    j["points"] = design.points;
    j["blocks"] = design.blocks;
    return j.dump(2) + "\n";
}

std::string write_bgr(const BipartiteGraph& g) {
    std::ostringstream out;
    out << g.left << " " << g.right << "\n";
    for (const auto& [u, v] : g.edges) out << u << " " << v << "\n";
    return out.str();
}

std::string content_digest(const std::string& bytes) {
    std::uint64_t hash = 1469598103934665603ULL;
    for (unsigned char c : bytes) {
        hash ^= c;
        hash *= 1099511628211ULL;
    }
    char buf[32];
    std::snprintf(buf, sizeof(buf), "fnv1a:%016llx", static_cast<unsigned long long>(hash));
    return buf;
}

ParsedInput parse_input(const std::string& text, const std::string& path, InputKind kind) {
    ParsedInput input;
    input.kind = kind;
    input.path = path;
    input.digest = content_digest(text);
    switch (kind) {
        case InputKind::ccjson: input.config = parse_ccjson(text); break;
        case InputKind::design: input.design = parse_design_json(text); break;
        case InputKind::bgr: input.graph = parse_bgr(text); break;
    }
    return input;
}

ParsedInput load_input(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw StructuralError("cannot open " + path);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    const std::string text = buffer.str();

    auto ends_with = [&](const char* suffix) {
        const std::string s(suffix);
        return path.size() >= s.size() && path.compare(path.size() - s.size(), s.size(), s) == 0;
    };
    InputKind kind;
    if (ends_with(".ccjson")) {
        kind = InputKind::ccjson;
    } else if (ends_with(".design.json")) {
        kind = InputKind::design;
    } else if (ends_with(".bgr")) {
        kind = InputKind::bgr;
    } else {
        throw StructuralError(path + ": unknown extension (expected .ccjson, .design.json or .bgr)");
    }
    return parse_input(text, path, kind);
}

} // namespace cclab

#pragma once

#include <optional>
#include <string>

#include "cclab/builders.hpp"
#include "cclab/relations.hpp"

namespace cclab {

enum class InputKind {
    ccjson,
    design,
    bgr,
};

std::string to_string(InputKind kind);

// One parsed input file. Exactly one of the three payloads is set,
// matching `kind`.
struct ParsedInput {
    InputKind kind = InputKind::ccjson;
    std::optional<CoherentConfig> config;
    std::optional<IncidenceStructure> design;
    std::optional<BipartiteGraph> graph;
    std::string path;
    std::string digest;
};

// Parsers throw StructuralError carrying line/column positions.
CoherentConfig parse_ccjson(const std::string& text);
IncidenceStructure parse_design_json(const std::string& text);
BipartiteGraph parse_bgr(const std::string& text);

std::string write_ccjson(const CoherentConfig& cc);
std::string write_design_json(const IncidenceStructure& design);
std::string write_bgr(const BipartiteGraph& g);

// Dispatches on the file extension: .ccjson, .design.json or .bgr.
ParsedInput load_input(const std::string& path);
ParsedInput parse_input(const std::string& text, const std::string& path, InputKind kind);

// FNV-1a hash of the raw bytes, as "fnv1a:<16 hex digits>".
std::string content_digest(const std::string& bytes);

} // namespace cclab

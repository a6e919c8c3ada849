#pragma once

#include "refhouse/errors.hpp"
#include "refhouse/model.hpp"
#include "refhouse/result.hpp"
#include "refhouse/sources.hpp"

#include <json.hpp>

#include <string>
#include <string_view>

namespace refhouse {

/// Malformed document or source file. Messages name the offending position.
class FormatError : public Error {
public:
    using Error::Error;
};

/// A file could not be opened.
class MissingInput : public Error {
public:
    using Error::Error;
};

/// Hedonic documents may hold at most this many subset entries in total.
inline constexpr std::size_t kMaxHedonicEntries = 100'000;

nlohmann::json instance_to_json(const Instance& instance);
/// Validates every model invariant; throws FormatError or InvalidInstance with the JSON path.
Instance instance_from_json(const nlohmann::json& document);

/// Canonical text: sorted keys, two-space indent, trailing newline.
std::string dump_canonical(const nlohmann::json& document);
nlohmann::json parse_json(std::string_view text, std::string_view origin);

std::string serialize_instance(const Instance& instance);
Instance parse_instance(std::string_view text, std::string_view origin = "<input>");

/// {"variant": ..., "witness": [vertex per refugee]}
nlohmann::json housing_to_json(const Housing& housing, Variant variant);
/// Accepts a housing document or a result document; `variant` is filled when the document names one.
Housing housing_from_json(const nlohmann::json& document, std::optional<Variant>* variant = nullptr);

nlohmann::json result_to_json(const SolveResult& result, Variant variant);

// Source problem text formats. Vertices, elements and items are 0-based; DIMACS variables 1-based.
//   CNF:          DIMACS ("c" comments, "p cnf <vars> <clauses>", clauses terminated by 0)
//   graph:        "<n> <m>" then m lines "<u> <v>"; channel graphs add a third column (separation)
//   clique:       a graph followed by a line "colours <c_0> ... <c_{n-1}>"
//   bin packing:  "<capacity> <bins> <a_1> ... <a_n>"
//   set cover:    "<universe> <k>" then one line per set: "<size> <e_1> ... <e_size>"
// Lines starting with '#' are comments everywhere.
Cnf parse_dimacs(std::string_view text);
std::string write_dimacs(const Cnf& formula);
Graph parse_graph(std::string_view text);
MulticolouredClique parse_clique(std::string_view text);
ChannelAssignment parse_channel(std::string_view text, int channels);
BinPacking parse_bin_packing(std::string_view text);
SetCover parse_set_cover(std::string_view text);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& content);

} // namespace refhouse

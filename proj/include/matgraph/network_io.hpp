#pragma once

#include "matgraph/analysis.hpp"

#include <filesystem>
#include <optional>
#include <string>

namespace matgraph {

enum class NetworkFormat { Json, Dot, Csv };

NetworkFormat parse_network_format(const std::string& name);

// File schemas (node indices are 1-based in every format):
//  csv:  "# nodes,<label_1>,...,<label_p>" then
//        "rank,i,j,source,target,w,p_value" and one row per edge.
//  json: {"schema_version":1,"kind":"edge_list","nodes":[...],
//         "edges":[{"rank","i","j","source","target","w","p_value"}]}
//  dot:  undirected graph, one node statement per label and one
//        `a -- b [w=..., p_value=...]` line per edge.
std::string format_network(const EdgeList& edges, NetworkFormat fmt);

/// Formats the first `top` edges (all when empty) and writes atomically.
void export_network(const EdgeList& edges, NetworkFormat fmt, const std::filesystem::path& path,
                    std::optional<std::size_t> top = std::nullopt);

/// Inverse of the csv format.
EdgeList parse_edge_csv(const std::string& text);
EdgeList read_edge_csv(const std::filesystem::path& path);

}  // namespace matgraph

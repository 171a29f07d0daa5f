#include "matgraph/network_io.hpp"

#include "matgraph/config.hpp"
#include "matgraph/error.hpp"

#include <json.hpp>

#include <charconv>
#include <cstdio>
#include <sstream>

namespace matgraph {

NetworkFormat parse_network_format(const std::string& name) {
  if (name == "json") return NetworkFormat::Json;
  if (name == "dot") return NetworkFormat::Dot;
  if (name == "csv") return NetworkFormat::Csv;
  throw InvalidParameter("unknown network format '" + name + "' (json, dot or csv)");
}

namespace {

// Shortest text that parses back to the same double.
std::string exact(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

std::string dot_quote(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out + "\"";
}

std::string format_csv(const EdgeList& edges) {
  std::ostringstream os;
  os << "# nodes";
  for (const auto& l : edges.labels) os << ',' << l;
  os << "\nrank,i,j,source,target,w,p_value\n";
  for (const auto& e : edges.entries) {
    os << e.rank << ',' << e.i + 1 << ',' << e.j + 1 << ',' << edges.labels[e.i] << ','
       << edges.labels[e.j] << ',' << exact(e.w) << ',' << exact(e.p_value) << '\n';
  }
  return os.str();
}

std::string format_json(const EdgeList& edges) {
  using nlohmann::json;
  json list = json::array();
  for (const auto& e : edges.entries) {
    list.push_back({{"rank", e.rank}, {"i", e.i + 1}, {"j", e.j + 1}, {"source", edges.labels[e.i]},
                    {"target", edges.labels[e.j]}, {"w", e.w}, {"p_value", e.p_value}});
  }
  json doc = {{"schema_version", 1}, {"kind", "edge_list"}, {"nodes", edges.labels}, {"edges", list}};
  return doc.dump(2) + "\n";
}

std::string format_dot(const EdgeList& edges) {
  std::ostringstream os;
  os << "graph network {\n";
  for (const auto& l : edges.labels) os << "  " << dot_quote(l) << ";\n";
  for (const auto& e : edges.entries) {
    os << "  " << dot_quote(edges.labels[e.i]) << " -- " << dot_quote(edges.labels[e.j]) << " [rank=" << e.rank
       << ", w=" << exact(e.w) << ", p_value=" << exact(e.p_value) << "];\n";
  }
  os << "}\n";
  return os.str();
}

}  // namespace

std::string format_network(const EdgeList& edges, NetworkFormat fmt) {
  for (const auto& e : edges.entries) {
    if (e.i >= edges.labels.size() || e.j >= edges.labels.size()) {
      throw InvalidInput("edge refers to a node without a label");
    }
  }
  switch (fmt) {
    case NetworkFormat::Json: return format_json(edges);
    case NetworkFormat::Dot: return format_dot(edges);
    case NetworkFormat::Csv: return format_csv(edges);
  }
  throw InvalidParameter("unknown network format");
}

void export_network(const EdgeList& edges, NetworkFormat fmt, const std::filesystem::path& path,
                    std::optional<std::size_t> top) {
  write_file_atomic(path, format_network(top ? top_k(edges, *top) : edges, fmt));
}

EdgeList parse_edge_csv(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  EdgeList out;
  if (!std::getline(in, line) || line.rfind("# nodes", 0) != 0) {
    throw FormatError("edge CSV must start with a '# nodes' line");
  }
  auto cells = split_list(line.substr(7));
  out.labels = cells;
  if (!std::getline(in, line) || trim(line) != "rank,i,j,source,target,w,p_value") {
    throw FormatError("edge CSV: missing column header");
  }
  std::size_t row = 2;
  while (std::getline(in, line)) {
    ++row;
    if (trim(line).empty()) continue;
    std::vector<std::string> f;
    std::istringstream ls(trim(line));
    std::string cell;
    while (std::getline(ls, cell, ',')) f.push_back(cell);
    if (f.size() != 7) throw FormatError("edge CSV: row " + std::to_string(row) + " needs 7 columns");
    auto count = [&](std::size_t col) {
      std::size_t v = 0;
      const auto r = std::from_chars(f[col].data(), f[col].data() + f[col].size(), v);
      if (r.ec != std::errc{} || r.ptr != f[col].data() + f[col].size()) {
        throw ParseError("edge CSV: bad integer '" + f[col] + "'", row, col + 1);
      }
      return v;
    };
    auto real = [&](std::size_t col) {
      double v = 0.0;
      const auto r = std::from_chars(f[col].data(), f[col].data() + f[col].size(), v);
      if (r.ec != std::errc{} || r.ptr != f[col].data() + f[col].size()) {
        throw ParseError("edge CSV: bad number '" + f[col] + "'", row, col + 1);
      }
      return v;
    };
    Edge e;
    e.rank = count(0);
    const std::size_t i = count(1);
    const std::size_t j = count(2);
    if (i == 0 || j == 0 || i > out.labels.size() || j > out.labels.size()) {
      throw FormatError("edge CSV: row " + std::to_string(row) + " node index out of range");
    }
    e.i = i - 1;
    e.j = j - 1;
    e.w = real(5);
    e.p_value = real(6);
    out.entries.push_back(e);
  }
  return out;
}

EdgeList read_edge_csv(const std::filesystem::path& path) { return parse_edge_csv(read_file(path)); }

}  // namespace matgraph

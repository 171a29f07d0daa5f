#include "matgraph/dataset.hpp"

#include "matgraph/config.hpp"
#include "matgraph/error.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <map>
#include <sstream>

namespace matgraph {

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> cells;
  std::string cell;
  std::istringstream in(line);
  while (std::getline(in, cell, ',')) cells.push_back(trim(cell));
  if (!line.empty() && line.back() == ',') cells.emplace_back();
  return cells;
}

std::optional<double> to_number(const std::string& cell) {
  if (cell.empty()) return std::nullopt;
  const char* first = cell.data();
  const char* last = cell.data() + cell.size();
  if (*first == '+') ++first;
  double v = 0.0;
  const auto res = std::from_chars(first, last, v);
  if (res.ec != std::errc{} || res.ptr != last || !std::isfinite(v)) return std::nullopt;
  return v;
}

std::vector<std::string> lines_of(const std::string& text) {
  std::vector<std::string> lines;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    lines.push_back(line);
  }
  while (!lines.empty() && trim(lines.back()).empty()) lines.pop_back();
  return lines;
}

double parse_cell(const std::string& cell, std::size_t row, std::size_t col, const std::string& where) {
  const auto v = to_number(cell);
  if (!v) {
    std::ostringstream os;
    os << where << ": non-numeric cell '" << cell << "' at row " << row << ", column " << col;
    throw ParseError(os.str(), row, col);
  }
  return *v;
}

}  // namespace

std::vector<std::string> default_labels(std::size_t p) {
  std::vector<std::string> out;
  out.reserve(p);
  for (std::size_t i = 1; i <= p; ++i) out.push_back(std::to_string(i));
  return out;
}

SpatioTemporalSample Dataset::to_sample() const {
  std::vector<Matrix> xs;
  xs.reserve(subjects.size());
  for (const auto& s : subjects) xs.push_back(s.matrix);
  return SpatioTemporalSample(std::move(xs));
}

SubjectRecord parse_subject_csv(const std::string& text, const std::string& id,
                                std::vector<std::string>* labels) {
  const std::vector<std::string> lines = lines_of(text);
  if (lines.empty()) throw FormatError("subject '" + id + "': empty file");

  std::size_t first_data = 0;
  std::vector<std::string> header = split_csv_line(lines.front());
  const bool has_header =
      std::any_of(header.begin(), header.end(), [](const std::string& c) { return !to_number(c); });
  if (has_header) {
    first_data = 1;
    if (labels != nullptr) *labels = header;
  } else if (labels != nullptr) {
    labels->clear();
  }

  const std::size_t q = lines.size() - first_data;
  if (q == 0) throw FormatError("subject '" + id + "': no data rows");
  const std::size_t p = split_csv_line(lines[first_data]).size();
  if (has_header && header.size() != p) {
    throw FormatError("subject '" + id + "': header has " + std::to_string(header.size()) +
                      " columns but data has " + std::to_string(p));
  }
  SubjectRecord rec;
  rec.id = id;
  rec.matrix.resize(static_cast<Eigen::Index>(p), static_cast<Eigen::Index>(q));
  for (std::size_t l = 0; l < q; ++l) {
    const std::size_t row = first_data + l + 1;
    const std::vector<std::string> cells = split_csv_line(lines[first_data + l]);
    if (cells.size() != p) {
      std::ostringstream os;
      os << "subject '" << id << "': row " << row << " has " << cells.size() << " columns, expected " << p;
      throw FormatError(os.str());
    }
    for (std::size_t i = 0; i < p; ++i) {
      rec.matrix(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(l)) =
          parse_cell(cells[i], row, i + 1, "subject '" + id + "'");
    }
  }
  return rec;
}

Dataset parse_long_csv(const std::string& text) {
  const std::vector<std::string> lines = lines_of(text);
  if (lines.empty()) throw FormatError("long CSV: empty file");
  const std::vector<std::string> header = split_csv_line(lines.front());
  if (header.size() < 3 || header[0] != "subject_id" || header[1] != "time_index") {
    throw FormatError("long CSV: header must start with subject_id,time_index");
  }
  const bool has_group = header[2] == "group";
  const std::size_t first_value = has_group ? 3 : 2;
  if (header.size() <= first_value + 1) throw FormatError("long CSV: need at least two value columns");

  Dataset data;
  data.node_labels.assign(header.begin() + static_cast<std::ptrdiff_t>(first_value), header.end());
  const std::size_t p = data.node_labels.size();

  struct Pending {
    std::optional<std::string> group;
    std::vector<std::pair<double, std::vector<double>>> rows;
  };
  std::vector<std::string> order;
  std::map<std::string, Pending> pending;

  for (std::size_t r = 1; r < lines.size(); ++r) {
    if (trim(lines[r]).empty()) continue;
    const std::size_t row = r + 1;
    const std::vector<std::string> cells = split_csv_line(lines[r]);
    if (cells.size() != header.size()) {
      std::ostringstream os;
      os << "long CSV: row " << row << " has " << cells.size() << " columns, expected " << header.size();
      throw FormatError(os.str());
    }
    const std::string& id = cells[0];
    auto [it, inserted] = pending.try_emplace(id);
    if (inserted) order.push_back(id);
    if (has_group) it->second.group = cells[2];
    std::vector<double> values(p);
    for (std::size_t i = 0; i < p; ++i) values[i] = parse_cell(cells[first_value + i], row, first_value + i + 1, "long CSV");
    it->second.rows.emplace_back(parse_cell(cells[1], row, 2, "long CSV"), std::move(values));
  }
  if (order.empty()) throw FormatError("long CSV: no data rows");

  const std::size_t q = pending[order.front()].rows.size();
  for (const std::string& id : order) {
    Pending& pend = pending[id];
    if (pend.rows.size() != q) {
      std::ostringstream os;
      os << "subject '" << id << "' has " << pend.rows.size() << " time points, expected " << q;
      throw FormatError(os.str());
    }
    std::stable_sort(pend.rows.begin(), pend.rows.end(),
                     [](const auto& a, const auto& b) { return a.first < b.first; });
    SubjectRecord rec;
    rec.id = id;
    rec.group = pend.group;
    rec.matrix.resize(static_cast<Eigen::Index>(p), static_cast<Eigen::Index>(q));
    for (std::size_t l = 0; l < q; ++l) {
      for (std::size_t i = 0; i < p; ++i) {
        rec.matrix(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(l)) = pend.rows[l].second[i];
      }
    }
    data.subjects.push_back(std::move(rec));
  }
  return data;
}

Dataset load_dataset(const std::filesystem::path& path) {
  namespace fs = std::filesystem;
  if (!fs::exists(path)) throw InvalidInput("no such file or directory: " + path.string());
  if (!fs::is_directory(path)) return parse_long_csv(read_file(path));

  std::vector<fs::path> files;
  for (const auto& entry : fs::directory_iterator(path)) {
    if (entry.is_regular_file() && entry.path().extension() == ".csv") files.push_back(entry.path());
  }
  std::sort(files.begin(), files.end());
  if (files.empty()) throw FormatError("no .csv files in " + path.string());

  Dataset data;
  for (const fs::path& file : files) {
    std::vector<std::string> labels;
    SubjectRecord rec = parse_subject_csv(read_file(file), file.stem().string(), &labels);
    if (!data.subjects.empty()) {
      const SubjectRecord& first = data.subjects.front();
      if (rec.p() != first.p() || rec.q() != first.q()) {
        std::ostringstream os;
        os << "subject '" << rec.id << "' is " << rec.q() << " x " << rec.p() << " (time x channel), expected "
           << first.q() << " x " << first.p();
        throw FormatError(os.str());
      }
    }
    if (data.node_labels.empty() && !labels.empty()) data.node_labels = labels;
    data.subjects.push_back(std::move(rec));
  }
  if (data.node_labels.empty()) data.node_labels = default_labels(data.subjects.front().p());
  return data;
}

SubjectRecord temporal_downsample(const SubjectRecord& rec, std::size_t window) {
  if (window < 1 || rec.q() % window != 0) {
    throw InvalidParameter("temporal_downsample: window " + std::to_string(window) +
                           " does not divide q = " + std::to_string(rec.q()));
  }
  const auto w = static_cast<Eigen::Index>(window);
  const Eigen::Index blocks = rec.matrix.cols() / w;
  SubjectRecord out{rec.id, Matrix(rec.matrix.rows(), blocks), rec.group};
  for (Eigen::Index b = 0; b < blocks; ++b) {
    out.matrix.col(b) = rec.matrix.middleCols(b * w, w).rowwise().mean();
  }
  return out;
}

Dataset temporal_downsample(const Dataset& data, std::size_t window) {
  Dataset out;
  out.node_labels = data.node_labels;
  for (const auto& s : data.subjects) out.subjects.push_back(temporal_downsample(s, window));
  return out;
}

Matrix read_matrix_csv(const std::filesystem::path& path) {
  const std::vector<std::string> lines = lines_of(read_file(path));
  if (lines.empty()) throw FormatError(path.string() + ": empty matrix file");
  const std::size_t cols = split_csv_line(lines.front()).size();
  Matrix m(static_cast<Eigen::Index>(lines.size()), static_cast<Eigen::Index>(cols));
  for (std::size_t r = 0; r < lines.size(); ++r) {
    const auto cells = split_csv_line(lines[r]);
    if (cells.size() != cols) throw FormatError(path.string() + ": ragged matrix row " + std::to_string(r + 1));
    for (std::size_t c = 0; c < cols; ++c) {
      m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = parse_cell(cells[c], r + 1, c + 1, path.string());
    }
  }
  return m;
}

}  // namespace matgraph

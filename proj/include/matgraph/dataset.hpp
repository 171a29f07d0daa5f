#pragma once

#include "matgraph/linalg.hpp"
#include "matgraph/simulate.hpp"

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace matgraph {

struct SubjectRecord {
  std::string id;
  Matrix matrix;  // p x q: rows are locations, columns time points
  std::optional<std::string> group;

  std::size_t p() const { return static_cast<std::size_t>(matrix.rows()); }
  std::size_t q() const { return static_cast<std::size_t>(matrix.cols()); }
};

struct Dataset {
  std::vector<SubjectRecord> subjects;
  std::vector<std::string> node_labels;  // length p

  std::size_t p() const { return node_labels.size(); }
  std::size_t q() const { return subjects.empty() ? 0 : subjects.front().q(); }

  SpatioTemporalSample to_sample() const;
};

/// Loads subject matrices.
///  - directory: one CSV per subject (`*.csv`, sorted by name), q rows x p
///    columns, file stem as id; an optional first row of column names
///    supplies node labels.
///  - file: long format with header `subject_id,time_index[,group],<labels>`;
///    rows of a subject are ordered by time_index.
/// Throws FormatError on ragged dimensions (naming the subject) and
/// ParseError on non-numeric cells (with 1-based row and column).
Dataset load_dataset(const std::filesystem::path& path);

/// Parses one subject file's contents; `labels` receives the header when present.
SubjectRecord parse_subject_csv(const std::string& text, const std::string& id,
                                std::vector<std::string>* labels = nullptr);

Dataset parse_long_csv(const std::string& text);

/// Averages consecutive blocks of `window` time points. Throws
/// InvalidParameter unless window >= 1 divides q.
SubjectRecord temporal_downsample(const SubjectRecord& rec, std::size_t window);
Dataset temporal_downsample(const Dataset& data, std::size_t window);

/// Reads a square numeric CSV (no header) such as a temporal covariance.
Matrix read_matrix_csv(const std::filesystem::path& path);

/// Default labels "1".."p".
std::vector<std::string> default_labels(std::size_t p);

}  // namespace matgraph

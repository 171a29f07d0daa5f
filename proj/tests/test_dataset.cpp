#include "matgraph/config.hpp"
#include "matgraph/dataset.hpp"
#include "matgraph/error.hpp"

#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>

using namespace matgraph;
namespace fs = std::filesystem;

namespace {

class TempDir {
 public:
  TempDir() {
    path_ = fs::temp_directory_path() /
            ("matgraph_ds_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(path_);
    fs::create_directories(path_);
  }
  ~TempDir() { fs::remove_all(path_); }
  const fs::path& path() const { return path_; }
  void write(const std::string& name, const std::string& text) const { std::ofstream(path_ / name) << text; }

 private:
  fs::path path_;
};

}  // namespace

TEST(Dataset, DirectoryOfSubjects) {
  TempDir dir;
  // 4 time points x 2 channels, with a header row on the first file only
  dir.write("s01.csv", "left,right\n1,2\n3,4\n5,6\n7,8\n");
  dir.write("s02.csv", "0,1\n0,1\n0,1\n0,2\n");
  dir.write("s03.csv", "1,1\n2,2\n3,3\n4,4.5\n");
  dir.write("notes.txt", "ignored");
  const Dataset d = load_dataset(dir.path());
  ASSERT_EQ(d.subjects.size(), 3u);
  EXPECT_EQ(d.p(), 2u);
  EXPECT_EQ(d.q(), 4u);
  EXPECT_EQ(d.node_labels, (std::vector<std::string>{"left", "right"}));
  EXPECT_EQ(d.subjects[0].id, "s01");
  // transposed: row = channel, column = time
  EXPECT_EQ(d.subjects[0].matrix(1, 2), 6.0);
  EXPECT_EQ(d.subjects[2].matrix(1, 3), 4.5);
  const SpatioTemporalSample x = d.to_sample();
  EXPECT_EQ(x.n(), 3u);
  EXPECT_EQ(x.p(), 2u);
}

TEST(Dataset, DefaultLabels) {
  TempDir dir;
  dir.write("a.csv", "1,2,3\n4,5,6\n");
  dir.write("b.csv", "1,2,3\n4,5,7\n");
  EXPECT_EQ(load_dataset(dir.path()).node_labels, (std::vector<std::string>{"1", "2", "3"}));
}

TEST(Dataset, LongFormat) {
  // 2 subjects x 5 time points x 3 nodes
  std::string text = "subject_id,time_index,group,A,B,C\n";
  for (int s = 0; s < 2; ++s) {
    for (int t = 4; t >= 0; --t) {  // out of order on purpose
      text += "sub" + std::to_string(s) + "," + std::to_string(t) + ",ctl," + std::to_string(100 * s + t) + "," +
              std::to_string(-t) + ",0.5\n";
    }
  }
  const Dataset d = parse_long_csv(text);
  ASSERT_EQ(d.subjects.size(), 2u);
  EXPECT_EQ(d.node_labels, (std::vector<std::string>{"A", "B", "C"}));
  EXPECT_EQ(d.p(), 3u);
  EXPECT_EQ(d.q(), 5u);
  EXPECT_EQ(d.subjects[1].id, "sub1");
  EXPECT_EQ(d.subjects[1].group, "ctl");
  EXPECT_EQ(d.subjects[1].matrix(0, 3), 103.0);
  EXPECT_EQ(d.subjects[0].matrix(1, 4), -4.0);

  TempDir dir;
  dir.write("long.csv", text);
  EXPECT_EQ(load_dataset(dir.path() / "long.csv").subjects.size(), 2u);
}

TEST(Dataset, LongFormatWithoutGroup) {
  const Dataset d = parse_long_csv("subject_id,time_index,x,y\na,0,1,2\na,1,3,4\nb,0,5,6\nb,1,7,8\n");
  EXPECT_FALSE(d.subjects[0].group.has_value());
  EXPECT_EQ(d.subjects[1].matrix(1, 1), 8.0);
  EXPECT_THROW(parse_long_csv("id,t,x,y\na,0,1,2\n"), FormatError);
}

TEST(Dataset, RaggedSubjectsNamed) {
  TempDir dir;
  dir.write("s1.csv", "1,2\n3,4\n5,6\n");
  dir.write("s2.csv", "1,2\n3,4\n");
  try {
    load_dataset(dir.path());
    FAIL() << "expected FormatError";
  } catch (const FormatError& e) {
    EXPECT_NE(std::string(e.what()).find("s2"), std::string::npos);
  }
  EXPECT_THROW(parse_long_csv("subject_id,time_index,x,y\na,0,1,2\na,1,3,4\nb,0,5,6\n"), FormatError);
  EXPECT_THROW(parse_subject_csv("1,2\n3\n", "r"), FormatError);
}

TEST(Dataset, ParseErrorLocation) {
  try {
    parse_subject_csv("a,b,c\n1,2,3\n4,oops,6\n", "s");
    FAIL() << "expected ParseError";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.row(), 3u);
    EXPECT_EQ(e.column(), 2u);
  }
  try {
    parse_long_csv("subject_id,time_index,x,y\na,0,1,2\na,1,3,zz\n");
    FAIL() << "expected ParseError";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.row(), 3u);
    EXPECT_EQ(e.column(), 4u);
  }
}

TEST(Dataset, MissingPath) {
  EXPECT_THROW(load_dataset("/nonexistent/matgraph/data"), InvalidInput);
}

TEST(Downsample, AveragesBlocks) {
  SubjectRecord rec{"s", Matrix(1, 4), std::nullopt};
  rec.matrix << 1, 3, 5, 7;
  const SubjectRecord out = temporal_downsample(rec, 2);
  ASSERT_EQ(out.q(), 2u);
  EXPECT_EQ(out.matrix(0, 0), 2.0);
  EXPECT_EQ(out.matrix(0, 1), 6.0);
  EXPECT_EQ(temporal_downsample(rec, 1).matrix, rec.matrix);
  EXPECT_THROW(temporal_downsample(rec, 3), InvalidParameter);
  EXPECT_THROW(temporal_downsample(rec, 0), InvalidParameter);
}

TEST(Downsample, DatasetWindowEight) {
  Dataset d;
  d.node_labels = default_labels(3);
  for (int s = 0; s < 2; ++s) {
    SubjectRecord rec{"s" + std::to_string(s), Matrix(3, 256), "g"};
    for (Eigen::Index l = 0; l < 256; ++l) rec.matrix.col(l).setConstant(static_cast<double>(l));
    d.subjects.push_back(rec);
  }
  const Dataset out = temporal_downsample(d, 8);
  EXPECT_EQ(out.q(), 32u);
  EXPECT_EQ(out.subjects[1].matrix(2, 1), (8 + 15) / 2.0);
  EXPECT_EQ(out.subjects[1].group, "g");
  EXPECT_EQ(out.node_labels, d.node_labels);
}

TEST(Dataset, MatrixCsv) {
  TempDir dir;
  dir.write("m.csv", "1,0.5\n0.5,2\n");
  const Matrix m = read_matrix_csv(dir.path() / "m.csv");
  EXPECT_EQ(m(1, 1), 2.0);
  EXPECT_EQ(m(0, 1), 0.5);
  dir.write("bad.csv", "1,0.5\n0.5\n");
  EXPECT_THROW(read_matrix_csv(dir.path() / "bad.csv"), FormatError);
}

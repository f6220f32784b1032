#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <string>

#include "qbic/io.hpp"

using namespace qbic;

namespace {

struct TempFile {
  std::string path;
  explicit TempFile(const std::string& name) : path("/tmp/qbic_io_test_" + name) {}
  ~TempFile() { std::remove(path.c_str()); }
  void write(const std::string& text) {
    std::ofstream f(path);
    f << text;
  }
};

}  // namespace

TEST_CASE("load_csv parses a header-first table") {
  TempFile tmp("basic.csv");
  tmp.write("a,b,c\n1,2.5,-3\n4,5e-1, 6 \n");
  RawTable t = load_csv(tmp.path);
  REQUIRE(t.names == std::vector<std::string>{"a", "b", "c"});
  REQUIRE(t.rows() == 2);
  CHECK(t.column("a") == std::vector<double>{1.0, 4.0});
  CHECK(t.column("b") == std::vector<double>{2.5, 0.5});
  CHECK(t.column("c") == std::vector<double>{-3.0, 6.0});
  CHECK(t.column_index("missing") == -1);
  CHECK_THROWS_AS(t.column("missing"), SchemaError);
}

TEST_CASE("load_csv error reporting") {
  TempFile tmp("bad.csv");
  tmp.write("a,b\n1,2\n1,oops\n");
  try {
    load_csv(tmp.path);
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    // diagnostic pinpoints the row and the column name
    CHECK(std::string(e.what()).find("row 3") != std::string::npos);
    CHECK(std::string(e.what()).find("'b'") != std::string::npos);
  }

  TempFile ragged("ragged.csv");
  ragged.write("a,b\n1,2,3\n");
  CHECK_THROWS_AS(load_csv(ragged.path), ParseError);

  TempFile empty("empty.csv");
  empty.write("");
  CHECK_THROWS_AS(load_csv(empty.path), ParseError);

  TempFile ok("schema.csv");
  ok.write("a,b\n1,2\n");
  CHECK_NOTHROW(load_csv(ok.path, {"a", "b"}));
  CHECK_THROWS_AS(load_csv(ok.path, {"a", "z"}), SchemaError);

  CHECK_THROWS_AS(load_csv("/nonexistent/nope.csv"), Error);
}

TEST_CASE("write_csv round trip keeps full precision") {
  RawTable t;
  t.names = {"u", "v"};
  t.columns = {{1.0 / 3.0, 2.0e-17}, {-123456.789012345, 0.1}};
  TempFile tmp("round.csv");
  write_csv(t, tmp.path);
  RawTable back = load_csv(tmp.path);
  REQUIRE(back.names == t.names);
  for (size_t c = 0; c < 2; ++c)
    for (size_t r = 0; r < 2; ++r)
      CHECK(back.columns[c][r] == t.columns[c][r]);  // bit-exact at 17 digits
}

TEST_CASE("write_dataset_csv emits y plus named covariates") {
  Dataset d;
  d.y = Vector(2);
  d.y << 1, 0;
  d.X = Matrix(2, 2);
  d.X << 0.5, -1.0, 2.0, 3.0;
  d.column_names = {"p1", "p2"};
  TempFile tmp("ds.csv");
  write_dataset_csv(d, tmp.path);
  RawTable back = load_csv(tmp.path, {"y", "p1", "p2"});
  CHECK(back.column("y") == std::vector<double>{1.0, 0.0});
  CHECK(back.column("p2") == std::vector<double>{-1.0, 3.0});
}

TEST_CASE("normalize is a z-score with the n-1 denominator") {
  RawTable t;
  t.names = {"a", "b"};
  t.columns = {{1.0, 2.0, 3.0}, {7.0, 7.0, 7.0}};
  RawTable z = normalize(t, {"a"});
  CHECK(z.columns[0][0] == doctest::Approx(-1.0));
  CHECK(z.columns[0][1] == doctest::Approx(0.0));
  CHECK(z.columns[0][2] == doctest::Approx(1.0));
  // untouched columns pass through
  CHECK(z.columns[1] == t.columns[1]);

  // normalizing twice is the identity on an already-normalized column
  RawTable zz = normalize(z, {"a"});
  for (size_t r = 0; r < 3; ++r)
    CHECK(zz.columns[0][r] == doctest::Approx(z.columns[0][r]).epsilon(1e-14));

  CHECK_THROWS_AS(normalize(t, {"b"}), DegenerateColumn);
  CHECK_THROWS_AS(normalize(t, {"zzz"}), SchemaError);
}

TEST_CASE("seasonal indicator thresholds year-over-year differences") {
  std::vector<double> s{10, 20, 30, 12, 20, 29};
  std::vector<double> ind = seasonal_indicator(s, 3);
  // 12-10 >= 0, 20-20 >= 0, 29-30 < 0
  CHECK(ind == std::vector<double>{1.0, 1.0, 0.0});
  CHECK(seasonal_indicator(std::vector<double>(13, 1.0), 12).size() == 1);
  CHECK_THROWS_AS(seasonal_indicator(std::vector<double>(12, 1.0), 12),
                  InsufficientHistory);
  CHECK_THROWS_AS(seasonal_indicator(s, 0), Error);
}

TEST_CASE("build_lagged_design aligns lagged predictors without look-ahead") {
  RawTable t;
  t.names = {"p"};
  t.columns = {{10, 20, 30, 40, 50}};
  // right-aligned response of length 3 -> covers table rows 2..4
  std::vector<double> y{1, 0, 1};

  Dataset d0 = build_lagged_design(t, y, {"p"}, 0);
  REQUIRE(d0.n() == 3);
  CHECK(d0.X(0, 0) == 30.0);
  CHECK(d0.X(2, 0) == 50.0);

  Dataset d2 = build_lagged_design(t, y, {"p"}, 2);
  // y_t against p_{t-2}: all three rows have history
  REQUIRE(d2.n() == 3);
  CHECK(d2.y[0] == 1.0);
  CHECK(d2.X(0, 0) == 10.0);
  CHECK(d2.X(1, 0) == 20.0);
  CHECK(d2.X(2, 0) == 30.0);

  // lag 3 drops the first response row (no history for it)
  Dataset d3 = build_lagged_design(t, y, {"p"}, 3);
  REQUIRE(d3.n() == 2);
  CHECK(d3.y[0] == 0.0);
  CHECK(d3.X(0, 0) == 10.0);

  CHECK_THROWS_AS(build_lagged_design(t, y, {"p"}, 10), InsufficientHistory);
  CHECK_THROWS_AS(build_lagged_design(t, y, {"nope"}, 0), SchemaError);
  CHECK(d2.column_names == std::vector<std::string>{"p"});
}

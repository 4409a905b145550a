#include <doctest.h>

#include <filesystem>
#include <fstream>

#include "../support/errors.hpp"
#include "thetacong/io.hpp"

using namespace thetacong;
using io::json;

TEST_CASE("matrix round trip") {
  IntegerMatrix m{{4, 1}, {1, 6}};
  CHECK(io::matrix_to_json(m) == json::parse("[[4,1],[1,6]]"));
  CHECK(io::matrix_from_json(io::matrix_to_json(m)) == m);

  IntegerMatrix big{{1, 0}};
  big(0, 0) = BigInt("-123456789012345678901234567890");
  json j = io::matrix_to_json(big);
  CHECK(j[0][0].is_string());
  CHECK(io::matrix_from_json(j) == big);
  CHECK(io::matrix_from_json(json::parse(R"([["7", 8]])")) == IntegerMatrix{{7, 8}});
}

TEST_CASE("malformed matrices are rejected") {
  for (const char* text : {R"([[1, 2], [3]])", R"([[1.5]])", R"([[true]])", R"({"a": 1})", R"([1, 2])", R"([["x"]])", R"([[null]])"})
    CHECK_MESSAGE(error_of([&] { io::matrix_from_json(json::parse(text)); }) == Errc::InvalidInput, text);
}

TEST_CASE("bigint round trip") {
  BigInt v("696729600123456789123456789");
  CHECK(io::bigint_from_json(io::bigint_to_json(v)) == v);
  CHECK(io::bigint_from_json(json(42)) == 42);
  CHECK(error_of([] { io::bigint_from_json(json(0.5)); }) == Errc::InvalidInput);
}

TEST_CASE("lattice round trip and validation") {
  const Lattice& e8 = catalog("E8").lattice;
  Lattice back = io::lattice_from_json(io::lattice_to_json(e8));
  CHECK(back.gram == e8.gram);
  CHECK(back.label == e8.label);

  CHECK(error_of([] { io::lattice_from_json(json::parse(R"({"label": "x"})")); }) == Errc::InvalidInput);
  CHECK(error_of([] { io::lattice_from_json(json::parse(R"({"gram": [[1]]})")); }) == Errc::InvalidInput);
  CHECK(error_of([] { io::lattice_from_json(json::parse(R"({"gram": [[2, 3], [3, 2]]})")); }) == Errc::NotPositiveDefinite);
  CHECK(error_of([] { io::lattice_from_json(json::parse(R"({"gram": [[2, 1, 0], [1, 2, 0]]})")); }) == Errc::NonSquare);
}

TEST_CASE("automorphism round trip") {
  const auto& a = catalog("E8").automorphism("order7");
  auto back = io::automorphism_from_json(io::automorphism_to_json(a.matrix, a.order));
  CHECK(back.matrix == a.matrix);
  CHECK(back.order == 7);
  CHECK(error_of([] { io::automorphism_from_json(json::parse(R"({"matrix": [[1]]})")); }) == Errc::InvalidInput);
  CHECK(error_of([] { io::automorphism_from_json(json::parse(R"({"matrix": [[1]], "order": -3})")); }) == Errc::InvalidInput);
}

TEST_CASE("table and report round trip") {
  ThetaTable t = theta_table(catalog("E8").lattice, 2, 2);
  json j = io::table_to_json(t);
  CHECK(j["entries"].size() == t.entries.size());
  ThetaTable back = io::table_from_json(j);
  CHECK(back.entries == t.entries);
  CHECK(back.degree == 2);
  CHECK(back.diag_bound == 2);
  CHECK(back.label == t.label);

  CongruenceReport r = singularity_check(t, 7);
  REQUIRE_FALSE(r.holds);
  CongruenceReport rb = io::report_from_json(io::report_to_json(r));
  CHECK(rb.claim == r.claim);
  CHECK(rb.p == 7);
  CHECK(rb.holds == r.holds);
  CHECK(rb.forms_checked == r.forms_checked);
  REQUIRE(rb.witnesses.size() == r.witnesses.size());
  for (std::size_t i = 0; i < r.witnesses.size(); ++i) {
    CHECK(rb.witnesses[i].form == r.witnesses[i].form);
    CHECK(rb.witnesses[i].count == r.witnesses[i].count);
    CHECK(rb.witnesses[i].det_two_t == r.witnesses[i].det_two_t);
  }
}

TEST_CASE("files") {
  auto dir = std::filesystem::temp_directory_path() / "thetacong_io_test";
  std::filesystem::create_directories(dir);
  auto path = dir / "a2.json";
  io::write_json_file(path, io::lattice_to_json(catalog("A2").lattice));
  CHECK(io::lattice_from_json(io::read_json_file(path)).gram == catalog("A2").lattice.gram);

  auto bad = dir / "bad.json";
  std::ofstream(bad) << "{\"gram\": [[2, 1], [1, 2]";
  CHECK(error_of([&] { io::read_json_file(bad); }) == Errc::InvalidInput);
  CHECK(error_of([&] { io::read_json_file(dir / "missing.json"); }) == Errc::InvalidInput);
  std::filesystem::remove_all(dir);
}

#include <doctest.h>

#include <filesystem>

#include "tightham/constructions.hpp"
#include "tightham/error.hpp"
#include "tightham/io.hpp"

using namespace tightham;
namespace fs = std::filesystem;

namespace {

ErrorKind parse_kind(std::string_view text) {
  try {
    parse_h3v1(text);
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("expected a parse failure");
  return ErrorKind::invalid_argument;
}

std::string parse_message(std::string_view text) {
  try {
    parse_h3v1(text);
  } catch (const Error& e) {
    return e.what();
  }
  return {};
}

}  // namespace

TEST_CASE("H3v1 text is canonical") {
  auto k4 = complete(4);
  CHECK(format_h3v1(k4) == "4 4\n1 2 3\n1 2 4\n1 3 4\n2 3 4\n");
  CHECK(parse_h3v1("5 2\n3 2 1\n1 4 5\n") == parse_h3v1("5 2\n1 2 3\n1 4 5\n"));
  CHECK(format_hypergraph_json(k4) == "{\"edges\":[[1,2,3],[1,2,4],[1,3,4],[2,3,4]],\"n\":4}\n");
}

TEST_CASE("write then read is the identity") {
  auto dir = fs::temp_directory_path() / "tightham_io_test";
  fs::create_directories(dir);
  for (const auto& h : {complete(6), random_uniform(9, 0.3, 5), example_half(10)}) {
    write_hypergraph(h, dir / "g.h3");
    CHECK(read_hypergraph(dir / "g.h3") == h);
    write_hypergraph(h, dir / "g.json");
    CHECK(read_hypergraph(dir / "g.json") == h);
  }
  fs::remove_all(dir);
}

TEST_CASE("malformed input reports the line") {
  CHECK(parse_kind("4 1\n1 2\n") == ErrorKind::parse_error);
  CHECK(parse_message("4 2\n1 2 3\n1 2\n").find("line 3") != std::string::npos);
  CHECK(parse_kind("4 1\n1 2 2\n") == ErrorKind::degenerate_triple);
  CHECK(parse_kind("4 1\n1 2 7\n") == ErrorKind::out_of_range);
  CHECK(parse_kind("4 2\n1 2 3\n") == ErrorKind::parse_error);
  CHECK(parse_kind("4 1\n1 2 x\n") == ErrorKind::parse_error);
  CHECK(parse_kind("") == ErrorKind::parse_error);
  CHECK_THROWS_AS(parse_hypergraph_json("{\"n\": 4}"), Error);
}

TEST_CASE("golden corpus round-trips byte for byte") {
  std::size_t files = 0;
  for (const auto& entry : fs::directory_iterator(TIGHTHAM_TEST_DATA)) {
    if (entry.path().extension() != ".h3") continue;
    std::string text = read_file(entry.path());
    CHECK(format_h3v1(parse_h3v1(text)) == text);
    ++files;
  }
  CHECK(files >= 10);
}

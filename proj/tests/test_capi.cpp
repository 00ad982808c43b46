#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <string>

#include "robotsys/robotsys.h"

namespace {

std::string take(char* s) {
  std::string out = s ? s : "";
  rs_string_free(s);
  return out;
}

}  // namespace

TEST_CASE("graph handles") {
  rs_graph* g = nullptr;
  REQUIRE(rs_graph_family("UR", 8, &g) == RS_OK);
  CHECK(rs_graph_vertex_count(g) == 8);
  CHECK(rs_graph_edge_count(g) == 8);
  size_t count = 0;
  CHECK(rs_graph_automorphism_count(g, &count) == RS_OK);
  CHECK(count == 16);
  size_t girth = 0;
  CHECK(rs_graph_girth(g, &girth) == RS_OK);
  CHECK(girth == 8);
  size_t classes = 0, longest = 0;
  CHECK(rs_graph_quotient(g, 10, &classes, &longest) == RS_OK);
  CHECK(classes == 1);
  CHECK(longest == 0);
  char* text = nullptr;
  REQUIRE(rs_graph_format(g, &text) == RS_OK);
  rs_graph* back = nullptr;
  CHECK(rs_graph_parse(text, &back) == RS_OK);
  rs_string_free(text);
  CHECK(rs_graph_vertex_count(back) == 8);
  rs_graph_free(back);
  rs_graph_free(g);

  rs_graph* path = nullptr;
  REQUIRE(rs_graph_family("OP", 4, &path) == RS_OK);
  CHECK(rs_graph_girth(path, &girth) == RS_OK);
  CHECK(girth == SIZE_MAX);
  rs_graph_free(path);
}

TEST_CASE("status codes") {
  rs_graph* g = nullptr;
  CHECK(rs_graph_parse("graph 2\ne 0 5 0 0\n", &g) == RS_PARSE);
  CHECK(g == nullptr);
  CHECK(std::string(rs_last_error()).find("line 2") != std::string::npos);
  CHECK(rs_graph_family("XX", 4, &g) == RS_PARSE);
  CHECK(rs_graph_parse(nullptr, &g) == RS_PARSE);

  const uint32_t bad[] = {0, 3};
  rs_function* f = nullptr;
  CHECK(rs_function_from_table(bad, 2, &f) == RS_PARSE);

  const uint32_t swap[] = {1, 0};
  REQUIRE(rs_function_from_table(swap, 2, &f) == RS_OK);
  rs_graph* host = nullptr;
  REQUIRE(rs_graph_family("UR", 7, &host) == RS_OK);
  rs_compiled* c = nullptr;
  CHECK(rs_compile(f, RS_TARGET_GIRTH, host, 0, &c) == RS_PRECONDITION);
  CHECK(rs_compile(f, RS_TARGET_GIRTH, nullptr, 0, &c) != RS_OK);
  rs_graph_free(host);
  rs_function_free(f);
}

TEST_CASE("spaces and configuration graphs") {
  rs_graph* g = nullptr;
  REQUIRE(rs_graph_family("UP", 5, &g) == RS_OK);
  rs_space* s = nullptr;
  REQUIRE(rs_space_create(g, 2, &s) == RS_OK);
  uint64_t n = 0;
  CHECK(rs_space_count(s, &n) == RS_OK);
  CHECK(n == 9);
  char* closed = nullptr;
  CHECK(rs_closed_form_count("UP", 5, 2, &closed) == RS_OK);
  CHECK(take(closed) == "9");
  char* list = nullptr;
  CHECK(rs_space_list(s, &list) == RS_OK);
  CHECK(take(list).rfind("0,0\n", 0) == 0);

  rs_cgraph* cg = nullptr;
  REQUIRE(rs_cgraph_build(s, &cg) == RS_OK);
  CHECK(rs_cgraph_node_count(cg) == 9);
  CHECK(rs_cgraph_deterministic(cg) == 0);
  CHECK(rs_cgraph_edge_count(cg, 1) < rs_cgraph_edge_count(cg, 0));
  char* dot = nullptr;
  CHECK(rs_cgraph_dot(cg, 0, 0, &dot) == RS_OK);
  CHECK(take(dot).find("dashed") != std::string::npos);
  char* report = nullptr;
  CHECK(rs_cgraph_check(s, cg, 3, &report) == RS_OK);
  CHECK(take(report).find("grid n/a") != std::string::npos);
  rs_cgraph_free(cg);
  rs_space_free(s);
  rs_graph_free(g);
}

TEST_CASE("compile, save, load and verify") {
  const uint32_t table[] = {1, 2, 0};
  rs_function* f = nullptr;
  REQUIRE(rs_function_from_table(table, 3, &f) == RS_OK);
  rs_compiled* c = nullptr;
  REQUIRE(rs_compile(f, RS_TARGET_OR, nullptr, 0, &c) == RS_OK);
  CHECK(rs_compiled_robots(c) == 2);
  CHECK(rs_check_opt2(rs_compiled_vertex_count(c), 3));
  const auto dir = (std::filesystem::temp_directory_path() / "robotsys_capi").string();
  std::filesystem::remove_all(dir);
  REQUIRE(rs_compiled_save(c, dir.c_str()) == RS_OK);
  rs_compiled* loaded = nullptr;
  REQUIRE(rs_compiled_load(dir.c_str(), &loaded) == RS_OK);
  rs_certificate* cert = nullptr;
  REQUIRE(rs_verify_function(loaded, f, &cert) == RS_OK);
  CHECK(rs_certificate_pass(cert));
  char* text = nullptr;
  CHECK(rs_certificate_format(cert, &text) == RS_OK);
  CHECK(take(text).find("verdict PASS") != std::string::npos);
  rs_certificate_free(cert);
  REQUIRE(rs_verify(loaded, &cert) == RS_OK);
  CHECK(rs_certificate_pass(cert));
  rs_certificate_free(cert);

  const uint32_t other[] = {2, 0, 1};
  rs_function* g = nullptr;
  REQUIRE(rs_function_from_table(other, 3, &g) == RS_OK);
  REQUIRE(rs_verify_function(loaded, g, &cert) == RS_OK);
  CHECK_FALSE(rs_certificate_pass(cert));
  rs_certificate_free(cert);
  rs_function_free(g);

  rs_compiled* missing = nullptr;
  CHECK(rs_compiled_load((dir + "/nope").c_str(), &missing) == RS_PARSE);
  std::filesystem::remove_all(dir);
  rs_compiled_free(loaded);
  rs_compiled_free(c);
  rs_function_free(f);
}

TEST_CASE("null handles are tolerated by free functions") {
  rs_graph_free(nullptr);
  rs_space_free(nullptr);
  rs_cgraph_free(nullptr);
  rs_compiled_free(nullptr);
  rs_certificate_free(nullptr);
  rs_function_free(nullptr);
  rs_string_free(nullptr);
  CHECK(rs_version() != nullptr);
}

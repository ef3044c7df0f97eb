#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "avd/error.hpp"
#include "avd/io.hpp"
#include "support.hpp"

using namespace avd;

namespace {

std::shared_ptr<SimplicialMetricMesh> mesh_from(const std::string& text) {
  std::istringstream in(text);
  return parse_mesh(in, "m");
}

SiteSet sites_from(const std::string& text) {
  std::istringstream in(text);
  return parse_sites(in, "s");
}

std::string parse_error(const std::string& text, ErrorCode expected = ErrorCode::Parse) {
  try {
    mesh_from(text);
  } catch (const Error& e) {
    CHECK(e.code() == expected);
    return e.what();
  }
  FAIL("no error for: " << text);
  return {};
}

const char* triangle =
    "avdmesh 2 3 1\n"
    "v 0 0 1 0 1\n"
    "v 1 0 2 0 2\n"
    "\n"
    "v 0 1 1 0 1\n"
    "s 0 1 2\n";

}  // namespace

TEST_SUITE("io") {
  TEST_CASE("parses a triangle") {
    const auto m = mesh_from(triangle);
    CHECK(m->dimension() == 2);
    CHECK(m->num_vertices() == 3);
    CHECK(m->num_simplices() == 1);
    CHECK(m->vertex_m(1)(0, 0) == 2.0);
    CHECK(m->vertex_m(1)(0, 1) == 0.0);
  }

  TEST_CASE("errors carry source and line") {
    CHECK(parse_error("avdmesh 2 3 1\nv 0 0 1 0\n").rfind("m:2: vertex record needs 5 numbers, got 4", 0) == 0);
    CHECK(parse_error("avdmesh 2 1 1\nv 0 0 1 0 1\nq 1\n").rfind("m:3: unknown record 'q'", 0) == 0);
    CHECK(parse_error("avdmesh 2 3 1\nv 0 0 1 0 1\nv 1 0 1 0 1\nv 0 1 1 0 1\ns 0 1 3\n").find("m:5:") == 0);
    CHECK(parse_error("avdmesh 2 3 1\nv 0 0 1 0 1\nv 1 0 1 0 x1\n").find("m:3: expected a finite number, got 'x1'") ==
          0);
    CHECK(parse_error("avdmesh 2 3 1\nv 0 0 1 0 1\nv 1 0 1 0 1 \nv 0 1 1 2 1\n").find("m:4: vertex matrix") == 0);
    CHECK(parse_error("avdmesh 4 3 1\n").find("m:1: dimension must be 2 or 3") == 0);
    CHECK(parse_error("").find("m:0: empty mesh file") == 0);
    CHECK(parse_error("avdmesh 2 3 1\nv 0 0 1 0 1\n").find("declared 3 vertices, found 1") != std::string::npos);
  }

  TEST_CASE("tokens are strict") {
    parse_error("avdmesh 2 3 1\nv 0 0 1 0 1 7\n");
    parse_error("avdmesh 2 3 1\nv 0 0 1 0 nan\n");
    parse_error("avdmesh 2 3 1\nv 0 0 1 0 inf\n");
    parse_error("avdmesh 2 3 1.0\n");
    parse_error("avdmesh 2 3 1\nv 0 0 1 0 1\nv 1 0 1 0 1\nv 0 1 1 0 1\ns 0 1 2 0\n");
    parse_error("avdmesh 2 3 2\nv 0 0 1 0 1\nv 1 0 1 0 1\nv 0 1 1 0 1\ns 0 1 2\n");
  }

  TEST_CASE("degenerate simplices are reported as such") {
    const auto msg = parse_error("avdmesh 2 3 1\nv 0 0 1 0 1\nv 1 0 1 0 1\nv 2 0 1 0 1\ns 0 1 2\n",
                                 ErrorCode::Degenerate);
    CHECK(msg.rfind("m: ", 0) == 0);
  }

  TEST_CASE("sites") {
    const auto s = sites_from("avdsites 2 2\n0.25 0.5\n0.75 0.5\n");
    CHECK(s.size() == 2);
    CHECK(s[1][0] == 0.75);
    CHECK_THROWS_AS(sites_from("avdsites 2 2\n0.25 0.5\n"), Error);
    CHECK_THROWS_AS(sites_from("avdsites 2 1\n0.25 0.5 1\n"), Error);
    CHECK_THROWS_AS(sites_from("avdsites 3 1\n0.25 0.5\n"), Error);
    try {
      sites_from("avdsites 2 2\n0.5 0.5\n0.5 0.5\n");
      FAIL("expected duplicate error");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::Parse);
    }
  }

  TEST_CASE("round trip is exact") {
    const auto m = fixture::soundness_meshes()[4].mesh;
    std::ostringstream out;
    write_mesh(out, *m);
    const auto back = mesh_from(out.str());
    REQUIRE(back->num_vertices() == m->num_vertices());
    REQUIRE(back->num_simplices() == m->num_simplices());
    for (std::size_t j = 0; j < m->num_vertices(); ++j) {
      CHECK(back->vertex(j) == m->vertex(j));
      CHECK(back->vertex_m(j).matrix() == m->vertex_m(j).matrix());
    }
    std::ostringstream again;
    write_mesh(again, *back);
    CHECK(again.str() == out.str());

    const auto s = fixture::hex_sites(7, 0.3, 5);
    std::ostringstream so;
    write_sites(so, s);
    const auto sb = sites_from(so.str());
    REQUIRE(sb.size() == s.size());
    for (std::size_t i = 0; i < s.size(); ++i) CHECK(sb[i] == s[i]);
  }

  TEST_CASE("3D round trip") {
    const auto m = make_grid_mesh(unit_box(3), 2, [](const Vec& p) {
      Mat a = Mat::Identity(3, 3) * (1 + p[2]);
      a(0, 2) = a(2, 0) = 0.1 * p[0];
      return a;
    });
    std::ostringstream out;
    write_mesh(out, *m);
    const auto back = mesh_from(out.str());
    CHECK(back->dimension() == 3);
    CHECK(back->num_simplices() == m->num_simplices());
    CHECK(back->vertex_m(5).matrix() == m->vertex_m(5).matrix());
  }

  TEST_CASE("missing files are Io errors") {
    try {
      load_mesh("/nonexistent/dir/x.avdmesh");
      FAIL("expected Io");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::Io);
    }
    CHECK_THROWS_AS(save_sites("/nonexistent/dir/x.avdsites", fixture::acceptance_sites()), Error);
    const auto dir = std::filesystem::temp_directory_path();
    save_mesh(dir / "avd_io_test.avdmesh", *fixture::hand_triangle());
    CHECK(load_mesh(dir / "avd_io_test.avdmesh")->num_vertices() == 3);
    std::filesystem::remove(dir / "avd_io_test.avdmesh");
  }
}

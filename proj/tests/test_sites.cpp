#include <doctest.h>

#include <algorithm>

#include "avd/error.hpp"
#include "support.hpp"

using namespace avd;
using fixture::vec;

namespace {

MetricField identity_over(double lo_x, double lo_y, double hi_x, double hi_y) {
  Box box;
  box.lo = vec(lo_x, lo_y);
  box.hi = vec(hi_x, hi_y);
  return MetricField::analytic(box, [](const Vec&) { return Mat::Identity(2, 2); });
}

}  // namespace

TEST_SUITE("sites") {
  TEST_CASE("packing under the identity metric") {
    const auto field = identity_over(-1, -1, 5, 1);
    CHECK(packing_constant(SiteSet(2, {vec(0, 0), vec(2, 0)}), field, DistanceKind::DW) == 2.0);
    CHECK(packing_constant(SiteSet(2, {vec(0, 0), vec(1, 0), vec(4, 0)}), field, DistanceKind::LS) == 1.0);
  }

  TEST_CASE("packing takes the larger ordered distance") {
    // M = I at v, M = 2I at w, |v - w| = 1.
    Box box;
    box.lo = vec(-1, -1);
    box.hi = vec(2, 1);
    const auto field = MetricField::analytic(
        box, [](const Vec& p) { return fixture::scaled_identity(2, p[0] > 0.5 ? 2.0 : 1.0); }, Smoothness::C0);
    const SiteSet s(2, {vec(0, 0), vec(1, 0)});
    CHECK(dw_distance(field, s[0], s[1]) == 2.0);
    CHECK(dw_distance(field, s[1], s[0]) == 1.0);
    CHECK(packing_constant(s, field, DistanceKind::DW) == 2.0);
    CHECK(packing_constant(s, field, DistanceKind::LS) == 2.0);
  }

  TEST_CASE("packing is permutation invariant and matches Euclidean minimum") {
    std::mt19937_64 rng(17);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    std::vector<Vec> pts;
    for (int i = 0; i < 30; ++i) pts.push_back(vec(u(rng), u(rng)));
    double euclid = 1e9;
    for (std::size_t i = 0; i < pts.size(); ++i)
      for (std::size_t j = i + 1; j < pts.size(); ++j) euclid = std::min(euclid, (pts[i] - pts[j]).norm());
    const auto id = fixture::pl(fixture::constant_mesh(2, Mat::Identity(2, 2)));
    const auto varying = fixture::pl(fixture::linear_x_mesh(6, 2.0));
    const double p0 = packing_constant(SiteSet(2, pts), varying, DistanceKind::DW);
    CHECK(packing_constant(SiteSet(2, pts), id, DistanceKind::DW) == doctest::Approx(euclid).epsilon(1e-15));
    for (int t = 0; t < 5; ++t) {
      std::shuffle(pts.begin(), pts.end(), rng);
      CHECK(packing_constant(SiteSet(2, pts), varying, DistanceKind::DW) == p0);
    }
  }

  TEST_CASE("cover of a single centred site") {
    const auto field = fixture::pl(fixture::constant_mesh(2, Mat::Identity(2, 2)));
    const auto c = cover_constant(SiteSet(2, {vec(0.5, 0.5)}), field, DistanceKind::DW, 33);
    CHECK(c.resolution == 33);
    CHECK(c.samples == 33u * 33u);
    CHECK(std::abs(c.value - std::sqrt(0.5)) <= std::sqrt(2.0) / 32.0);
  }

  TEST_CASE("cover when every sample node is a site") {
    const auto field = fixture::pl(fixture::constant_mesh(2, Mat::Identity(2, 2)));
    std::vector<Vec> pts;
    for (int i = 0; i < 9; ++i)
      for (int j = 0; j < 9; ++j) pts.push_back(vec(i / 8.0, j / 8.0));
    CHECK(cover_constant(SiteSet(2, pts), field, DistanceKind::LS, 9).value <= std::sqrt(2.0) / 8.0);
  }

  TEST_CASE("cover refinement moves by less than the coarse Lipschitz slack") {
    const auto mesh = fixture::linear_x_mesh(8, 1.5);
    const auto field = fixture::pl(mesh);
    const auto sites = jittered_lattice_sites(unit_box(2), 4, 0.3, 3);
    double max_rho = 0.0;
    for (std::size_t j = 0; j < mesh->num_vertices(); ++j) max_rho = std::max(max_rho, mesh->vertex_m(j).max_eigenvalue());
    for (auto kind : {DistanceKind::DW, DistanceKind::LS}) {
      const double coarse = cover_constant(sites, field, kind, 33).value;
      const double fine = cover_constant(sites, field, kind, 65).value;
      CHECK(std::abs(fine - coarse) < 2.0 * (std::sqrt(2.0) / 32.0) * max_rho);
    }
  }

  TEST_CASE("cover does not grow when sites are added") {
    const auto field = fixture::pl(fixture::linear_x_mesh(8, 2.0));
    std::mt19937_64 rng(23);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    std::vector<Vec> pts{vec(0.5, 0.5)};
    for (auto kind : {DistanceKind::DW, DistanceKind::LS}) {
      double previous = cover_constant(SiteSet(2, pts), field, kind, 40).value;
      std::vector<Vec> grown = pts;
      for (int i = 0; i < 12; ++i) {
        grown.push_back(vec(u(rng), u(rng)));
        const double c = cover_constant(SiteSet(2, grown), field, kind, 40).value;
        CHECK(c <= previous);
        previous = c;
      }
    }
  }

  TEST_CASE("constant metric gives identical DW and LS constants") {
    const auto field = fixture::pl(fixture::constant_mesh(3, fixture::diag(2.0, 0.7)));
    const auto sites = jittered_lattice_sites(unit_box(2), 5, 0.4, 9);
    CHECK(packing_constant(sites, field, DistanceKind::DW) == packing_constant(sites, field, DistanceKind::LS));
    CHECK(cover_constant(sites, field, DistanceKind::DW, 50).value ==
          cover_constant(sites, field, DistanceKind::LS, 50).value);
  }

  TEST_CASE("Delone classification") {
    auto c = classify_delone(1.0, 1.0);
    CHECK(c.kind == DeloneClass::Net);
    CHECK(c.ratio == 1.0);
    c = classify_delone(1.0, 0.5);
    CHECK(c.kind == DeloneClass::Delone);
    CHECK(c.ratio == 0.5);
    c = classify_delone(0.1, 0.2);
    CHECK(c.kind == DeloneClass::Net);
    CHECK(c.ratio == doctest::Approx(2.0));
    CHECK(std::string(to_string(DeloneClass::Net)) == "net");
    CHECK_THROWS_AS(classify_delone(0.0, 1.0), Error);
    CHECK_THROWS_AS(classify_delone(1.0, -1.0), Error);
  }

  TEST_CASE("invalid site sets") {
    CHECK_THROWS_AS(SiteSet(2, {vec(0.1, 0.1), vec(0.1, 0.1)}), Error);
    CHECK_THROWS_AS(SiteSet(2, {vec(0.1, 0.1, 0.1)}), Error);
    const auto field = fixture::pl(fixture::constant_mesh(2, Mat::Identity(2, 2)));
    CHECK_THROWS_AS(packing_constant(SiteSet(2, {vec(0.1, 0.1)}), field, DistanceKind::DW), Error);
    CHECK_THROWS_AS(cover_constant(SiteSet(2, {}), field, DistanceKind::DW, 8), Error);
    CHECK_THROWS_AS(cover_constant(SiteSet(2, {vec(0.1, 0.1)}), field, DistanceKind::DW, 1), Error);
    try {
      cover_constant(SiteSet(2, {vec(0.1, 0.1), vec(1.5, 0.2)}), field, DistanceKind::DW, 8);
      FAIL("expected Domain");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::Domain);
      CHECK(std::string(e.what()).find("site 1") != std::string::npos);
    }
  }

  TEST_CASE("lattice generators") {
    const auto l = lattice_sites(unit_box(2), 4);
    CHECK(l.size() == 16);
    CHECK(l[0] == vec(0.125, 0.125));
    const auto j1 = jittered_lattice_sites(unit_box(2), 4, 0.2, 5);
    const auto j2 = jittered_lattice_sites(unit_box(2), 4, 0.2, 5);
    for (std::size_t i = 0; i < j1.size(); ++i) {
      CHECK(j1[i] == j2[i]);
      CHECK((j1[i] - l[i]).cwiseAbs().maxCoeff() <= 0.2 * 0.25 + 1e-15);
    }
    CHECK(lattice_sites(unit_box(3), 3).size() == 27);
  }
}

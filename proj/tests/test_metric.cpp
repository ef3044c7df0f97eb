#include <doctest.h>

#include "avd/error.hpp"
#include "support.hpp"

using namespace avd;
using fixture::vec;

TEST_SUITE("metric") {
  TEST_CASE("distances under the identity metric") {
    const auto field = fixture::pl(fixture::constant_mesh(2, Mat::Identity(2, 2)));
    // Scale the points into the unit square: (0,0)-(0.3,0.4) has length 0.5.
    CHECK(dw_distance(field, vec(0, 0), vec(0.3, 0.4)) == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(ls_distance(field, vec(0, 0), vec(0.3, 0.4)) == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(dw_distance(field, vec(0.2, 0.7), vec(0.2, 0.7)) == 0.0);
    CHECK(ls_distance(field, vec(0.2, 0.7), vec(0.2, 0.7)) == 0.0);
  }

  TEST_CASE("Euclidean 3-4-5 on a large box") {
    Box box;
    box.lo = vec(-1, -1);
    box.hi = vec(5, 5);
    const auto field = MetricField::analytic(box, [](const Vec&) { return Mat::Identity(2, 2); });
    CHECK(dw_distance(field, vec(0, 0), vec(3, 4)) == 5.0);
  }

  TEST_CASE("metric at the second argument for DW") {
    // Q_b = diag(4, 1) means M_b = diag(2, 1); a - b = (3, 4).
    const auto m = [](const Vec& p) { return p[0] > 2.0 ? fixture::diag(2, 1) : Mat::Identity(2, 2); };
    Box box;
    box.lo = vec(-10, -10);
    box.hi = vec(10, 10);
    const auto field = MetricField::analytic(box, m, Smoothness::C0);
    const Vec b = vec(5, 0), a = vec(8, 4);
    CHECK(dw_distance(field, a, b) == doctest::Approx(std::sqrt(52.0)).epsilon(1e-15));
    CHECK(ls_distance(field, b, a) == dw_distance(field, a, b));
    CHECK(anisotropic_length(fixture::diag(2, 1), a, b) == doctest::Approx(std::sqrt(52.0)));
  }

  TEST_CASE("ls(a, b) equals dw(b, a) bit for bit") {
    const auto field = fixture::pl(fixture::linear_x_mesh(8, 2.0));
    const auto efield = fixture::exp_field();
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int i = 0; i < 500; ++i) {
      const Vec a = vec(u(rng), u(rng)), b = vec(u(rng), u(rng));
      CHECK(ls_distance(field, a, b) == dw_distance(field, b, a));
      CHECK(ls_distance(efield, a, b) == dw_distance(efield, b, a));
      CHECK(distance(field, DistanceKind::LS, a, b) == ls_distance(field, a, b));
    }
  }

  TEST_CASE("points outside the domain are rejected") {
    const auto field = fixture::pl(fixture::constant_mesh(2, Mat::Identity(2, 2)));
    CHECK_THROWS_AS(dw_distance(field, vec(0.5, 0.5), vec(1.5, 0.5)), Error);
    try {
      ls_distance(field, vec(-0.5, 0.5), vec(0.5, 0.5));
      FAIL("expected Domain");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::Domain);
    }
    const auto efield = fixture::exp_field();
    CHECK_THROWS_AS(dw_distance(efield, vec(0.5, 0.5), vec(0.5, 2.0)), Error);
  }

  TEST_CASE("interpolation at vertices and barycentres") {
    const auto mesh = fixture::linear_x_mesh(4, 1.5);
    for (std::size_t j = 0; j < mesh->num_vertices(); ++j) {
      const Mat m = interpolate_M(*mesh, mesh->vertex(j)).matrix();
      CHECK(m == mesh->vertex_m(j).matrix());
    }
    for (std::size_t i = 0; i < mesh->num_simplices(); ++i) {
      const auto s = mesh->simplex(i);
      Vec c = Vec::Zero(2);
      Mat mean = Mat::Zero(2, 2);
      for (int j : s) {
        c += mesh->vertex(j) / 3.0;
        mean += mesh->vertex_m(j).matrix() / 3.0;
      }
      CHECK((mesh->interpolate(c) - mean).norm() < 1e-14);
    }
  }

  TEST_CASE("interpolated matrices stay SPD") {
    // Vertex matrices with strong, varying anisotropy.
    std::mt19937_64 rng(5);
    const auto mesh = make_grid_mesh(unit_box(2), 3, [&](const Vec&) { return sqrt_spd(SpdMatrix(fixture::random_spd(rng, 2))).matrix(); });
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int i = 0; i < 100; ++i) {
      const Vec p = vec(u(rng), u(rng));
      const Mat m = mesh->interpolate(p);
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es{Eigen::MatrixXd(m)};
      CHECK(es.eigenvalues()(0) > 0.0);
      const Mat q = m.transpose() * m;
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eq{Eigen::MatrixXd(q)};
      CHECK(eq.eigenvalues()(0) > 0.0);
    }
  }

  TEST_CASE("outside the complex names the nearest simplex") {
    const auto mesh = fixture::hand_triangle();
    try {
      mesh->interpolate(vec(0.9, 0.9));
      FAIL("expected Domain");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::Domain);
      CHECK(std::string(e.what()).find("simplex 0") != std::string::npos);
    }
  }

  TEST_CASE("face points go to the lowest-index simplex") {
    const auto mesh = fixture::linear_x_mesh(2);
    const Vec p = vec(0.5, 0.5);  // shared by several triangles
    const auto i = mesh->locate(p);
    REQUIRE(i.has_value());
    for (std::size_t j = 0; j < *i; ++j) {
      const auto w = mesh->barycentric(j, p);
      bool inside = true;
      for (int k = 0; k < 3; ++k) inside = inside && w[k] >= -1e-12;
      CHECK_FALSE(inside);
    }
  }

  TEST_CASE("directional derivatives") {
    const auto constant = fixture::pl(fixture::constant_mesh(3, fixture::diag(2, 3)));
    CHECK(directional_derivative_M(constant, vec(0.21, 0.43), vec(1, 0)).norm() == 0.0);

    const auto tri = fixture::pl(fixture::hand_triangle());
    const Mat d = directional_derivative_M(tri, vec(0.2, 0.3), vec(1, 0));
    CHECK((d - Mat::Identity(2, 2)).norm() < 1e-14);
    CHECK(directional_derivative_M(tri, vec(0.2, 0.3), vec(0, 1)).norm() < 1e-14);

    const auto e = fixture::exp_field();
    const Mat de = directional_derivative_M(e, vec(0, 0), vec(1, 0));
    CHECK((de - Mat::Identity(2, 2)).norm() <= 1e-8);
    const Mat de2 = directional_derivative_M(e, vec(0.5, 0.5), vec(0.6, 0.8));
    CHECK((de2 - 0.6 * std::exp(0.5) * Mat::Identity(2, 2)).norm() <= 1e-8);
  }

  TEST_CASE("PL directional derivative is linear in r") {
    const auto mesh = fixture::linear_x_mesh(4, 0.7);
    const Vec r = vec(0.6, -0.8);
    for (std::size_t i = 0; i < mesh->num_simplices(); ++i)
      for (double alpha : {-2.0, 0.5, 3.0}) {
        const Mat a = directional_derivative_in_simplex(*mesh, i, alpha * r);
        const Mat b = alpha * directional_derivative_in_simplex(*mesh, i, r);
        CHECK((a - b).norm() <= 1e-14 * (1.0 + b.norm()));
      }
  }

  TEST_CASE("derivative on a face asks for per-simplex evaluation") {
    const auto field = fixture::pl(fixture::linear_x_mesh(2));
    CHECK_THROWS_AS(directional_derivative_M(field, vec(0.5, 0.25), vec(1, 0)), Error);
    CHECK_THROWS_AS(directional_derivative_M(field, vec(0.2, 0.3), vec(2, 0)), Error);
  }

  TEST_CASE("degenerate simplices carry their index") {
    std::vector<Vec> v{vec(0, 0), vec(1, 0), vec(0, 1), vec(2, 0)};
    std::vector<SpdMatrix> m(4, SpdMatrix(Mat::Identity(2, 2)));
    try {
      SimplicialMetricMesh mesh(2, v, {{0, 1, 2, 0}, {0, 1, 3, 0}}, m);
      FAIL("expected Degenerate");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::Degenerate);
      CHECK(std::string(e.what()).find("simplex 1") != std::string::npos);
    }
  }

  TEST_CASE("analytic fields are probed for SPD") {
    CHECK_THROWS_AS(MetricField::analytic(unit_box(2), [](const Vec& p) { return fixture::diag(1, p[0] - 0.5); }),
                    Error);
  }

  TEST_CASE("3D Kuhn mesh interpolation") {
    const auto mesh = make_grid_mesh(unit_box(3), 3, [](const Vec& p) {
      return fixture::scaled_identity(3, 1.0 + p[0] + 2.0 * p[1] + 0.5 * p[2]);
    });
    CHECK(mesh->num_simplices() == 27u * 6u);
    std::mt19937_64 rng(6);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int i = 0; i < 200; ++i) {
      const Vec p = vec(u(rng), u(rng), u(rng));
      const double s = 1.0 + p[0] + 2.0 * p[1] + 0.5 * p[2];
      CHECK((mesh->interpolate(p) - fixture::scaled_identity(3, s)).norm() < 1e-12);
    }
  }
}

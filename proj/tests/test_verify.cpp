#include <doctest.h>

#include "avd/report_json.hpp"
#include "avd/variation.hpp"
#include "avd/verify.hpp"
#include "support.hpp"

using namespace avd;

namespace {

VerifyOptions quick() {
  VerifyOptions o;
  o.num_pairs = 2000;
  o.sigma1_points = 300;
  o.sigma1_dirs = 8;
  o.spd_samples = 200;
  o.seed = 3;
  return o;
}

std::vector<std::string> keys(const Json& j) {
  std::vector<std::string> k;
  for (auto it = j.begin(); it != j.end(); ++it) k.push_back(it.key());
  return k;
}

}  // namespace

TEST_SUITE("verify") {
  TEST_CASE("constant metric passes every property with sigma zero") {
    const auto field = fixture::pl(fixture::constant_mesh(4, fixture::diag(2.0, 0.7)));
    const auto r = run_verification(field, 0.0, quick());
    CHECK(r.sigma1 == 0.0);
    CHECK(r.properties.size() == 5);
    for (const auto& p : r.properties) {
      CHECK_MESSAGE(p.passed(), p.name);
      CHECK(p.checks > 0);
    }
    CHECK(r.all_passed());
  }

  TEST_CASE("linear field passes with its PL bound") {
    const auto mesh = fixture::linear_x_mesh(16);
    const auto r = run_verification(fixture::pl(mesh), sigma1_pl_bound(*mesh), quick());
    for (const auto& p : r.properties) CHECK_MESSAGE(p.passed(), p.name);
  }

  TEST_CASE("an understated sigma is caught") {
    const auto mesh = fixture::linear_x_mesh(16);
    const double s = sigma1_pl_bound(*mesh);
    const auto r = run_verification(fixture::pl(mesh), s, quick(), 0.5 * s);
    CHECK(r.sigma1_overridden);
    CHECK(r.sigma1 == 0.5 * s);
    CHECK_FALSE(r.all_passed());
    CHECK(r.properties[0].violations > 0);
    CHECK(r.properties[0].worst_excess > 0.0);
  }

  TEST_CASE("sandwich on an isotropic linear field") {
    const auto mesh = fixture::linear_x_mesh(16);
    const auto field = fixture::pl(mesh);
    const double s = sigma1_pl_bound(*mesh);
    for (double eps : {0.05, 0.1}) {
      const auto o = check_sandwich(field, s, eps, 5000, 9, 1e-9);
      CHECK(o.pairs == 5000);
      CHECK(o.violations == 0);
    }
  }

  TEST_CASE("verification is deterministic") {
    const auto mesh = fixture::soundness_meshes()[4].mesh;
    const auto a = to_json(run_verification(fixture::pl(mesh), sigma1_pl_bound(*mesh), quick())).dump();
    const auto b = to_json(run_verification(fixture::pl(mesh), sigma1_pl_bound(*mesh), quick())).dump();
    CHECK(a == b);
  }
}

TEST_SUITE("json") {
  TEST_CASE("certificate keys are fixed and ordered") {
    const auto c = evaluate_certificate(DistanceKind::LS, 2.0, SigmaProvenance::PlBound, 0.6, 64, 1.0);
    const auto j = to_json(c);
    CHECK(keys(j) == std::vector<std::string>{"kind", "sigma1", "sigma1_provenance", "cover", "cover_resolution",
                                              "packing", "ratio", "condition_value", "verdict", "reason"});
    CHECK(j["condition_value"].is_null());
    CHECK(j["verdict"] == to_string(Verdict::Inapplicable));
    const auto ok = to_json(evaluate_certificate(DistanceKind::DW, 0.0, SigmaProvenance::PlBound, 1, 64, 1));
    CHECK(ok["condition_value"] == 0.5);
  }

  TEST_CASE("reports serialize every field") {
    const auto field = fixture::pl(fixture::acceptance_mesh());
    const auto sites = fixture::acceptance_sites();
    const auto l = label_grid(field, sites, DistanceKind::DW, 32);
    const auto orphans = to_json(detect_orphans(l, sites));
    CHECK(orphans.contains("orphan_free"));
    const auto vr = to_json(variation_report(field, 50, 4, 0.1, 1));
    CHECK(keys(vr).size() == 9);
    CHECK(vr["seed"] == 1);
  }
}

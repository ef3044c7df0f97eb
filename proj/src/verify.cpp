#include "avd/verify.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "avd/error.hpp"
#include "avd/sampling.hpp"
#include "avd/variation.hpp"

namespace avd {

bool VerifyReport::all_passed() const {
  return std::all_of(properties.begin(), properties.end(), [](const PropertyResult& p) { return p.passed(); });
}

namespace {

void tally(PropertyResult& p, double excess, double tolerance) {
  ++p.checks;
  if (excess > tolerance) {
    ++p.violations;
    p.worst_excess = std::max(p.worst_excess, excess);
  }
}

Mat random_spd(std::mt19937_64& rng, int n) {
  std::normal_distribution<double> normal;
  Mat b(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) b(i, j) = normal(rng);
  Mat a = b.transpose() * b;
  a.diagonal().array() += 0.1;
  return a;
}

}  // namespace

SandwichOutcome check_sandwich(const MetricField& field, double sigma1, double eps, std::size_t num_pairs,
                               std::uint64_t seed, double tolerance) {
  SandwichOutcome out;
  const auto pairs = sample_metric_ball_pairs(field, eps, num_pairs, seed);
  const double lower = 1.0 - eps * sigma1, upper = 1.0 + eps * sigma1;
  for (const auto& [a, b] : pairs) {
    const Mat m_a = field.sqrt_metric(a), m_b = field.sqrt_metric(b);
    const double len_a = anisotropic_length(m_a, a, b);
    if (len_a == 0.0 || len_a > eps * (1.0 + 1e-12)) continue;
    ++out.pairs;
    const Mat t = m_b * inverse(m_a);
    const double chain[5] = {lower, rho_min(t), anisotropic_length(m_b, a, b) / len_a, rho(t), upper};
    double excess = 0.0;
    for (int i = 0; i < 4; ++i) excess = std::max(excess, chain[i] - chain[i + 1]);
    if (excess > tolerance) {
      ++out.violations;
      out.worst_excess = std::max(out.worst_excess, excess);
    }
  }
  return out;
}

VerifyReport run_verification(const MetricField& field, double sigma1, const VerifyOptions& opt,
                              std::optional<double> override_sigma) {
  VerifyReport report;
  report.sigma1 = override_sigma.value_or(sigma1);
  report.sigma1_overridden = override_sigma.has_value();
  report.seed = opt.seed;
  const double s = report.sigma1;

  PropertyResult sandwich{"neighbor_ratio_sandwich"};
  for (std::size_t e = 0; e < opt.epsilons.size(); ++e) {
    const double eps = opt.epsilons[e];
    if (!(eps * s < 1.0)) continue;
    const SandwichOutcome o = check_sandwich(field, s, eps, opt.num_pairs, opt.seed + 101 * (e + 1), opt.tolerance);
    sandwich.checks += o.pairs;
    sandwich.violations += o.violations;
    sandwich.worst_excess = std::max(sandwich.worst_excess, o.worst_excess);
  }
  report.properties.push_back(sandwich);

  const double s1_sampled = sigma1_sampled(field, opt.sigma1_points, opt.sigma1_dirs, opt.seed);
  const double s0_sampled = sigma0_sampled(field, 4 * opt.sigma1_points * opt.sigma1_dirs, opt.seed, opt.sigma1_dirs);
  PropertyResult below_bound{"sigma1_sampled_le_bound"};
  tally(below_bound, s1_sampled - s, opt.tolerance);
  report.properties.push_back(below_bound);
  PropertyResult below_sigma0{"sigma1_le_sigma0"};
  tally(below_sigma0, s1_sampled - s0_sampled, opt.tolerance);
  report.properties.push_back(below_sigma0);

  PropertyResult dominance{"sigma0_of_C_dominance"};
  for (std::size_t c = 0; c < opt.covers.size(); ++c) {
    const double cover = opt.covers[c];
    const double bound = sigma0_of_C_bound(s, cover);
    const auto pairs = sample_metric_ball_pairs(field, cover, opt.num_pairs, opt.seed + 211 * (c + 1));
    for (const auto& [a, b] : pairs)
      tally(dominance, variation_ratio(field.sqrt_metric(a), field.sqrt_metric(b), a, b) - bound, opt.tolerance);
  }
  report.properties.push_back(dominance);

  PropertyResult identity{"spectral_inverse_identity"};
  std::mt19937_64 rng(opt.seed);
  auto check_identity = [&](const Mat& a) {
    tally(identity, std::abs(rho(inverse(a)) * rho_min(a) - 1.0), opt.identity_tolerance);
  };
  for (std::size_t i = 0; i < opt.spd_samples; ++i) check_identity(random_spd(rng, field.dimension()));
  for (std::size_t i = 0; i < opt.spd_samples; ++i) check_identity(field.sqrt_metric(interior_sample(field, i, opt.seed).p));
  report.properties.push_back(identity);
  return report;
}

}  // namespace avd

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "qlink/enigma.hpp"
#include "qlink/errors.hpp"

using namespace qlink;
using namespace qlink::enigma;

namespace {

// Composite Simpson quadrature of the standard normal density over [x, x+12] in long
// double; the truncated tail is below 1e-30 relative.
double q_by_quadrature(double x) {
  constexpr int kIntervals = 24'000;
  const long double a = x, b = x + 12.0L;
  const long double h = (b - a) / kIntervals;
  auto phi = [](long double t) { return std::exp(-t * t / 2.0L) / std::sqrt(2.0L * std::numbers::pi_v<long double>); };
  long double sum = phi(a) + phi(b);
  for (int i = 1; i < kIntervals; ++i) sum += (i % 2 ? 4.0L : 2.0L) * phi(a + i * h);
  return static_cast<double>(sum * h / 3.0L);
}

CipherConfig with_signal(double received_photons, Detector d = Detector::Homodyne) {
  CipherConfig cfg;
  cfg.mean_photon_number = received_photons;
  cfg.detector = d;
  return cfg;
}

bool within_ci(const BerEstimate& e, double expected, double sigmas = 3.0) {
  const double se = std::sqrt(expected * (1.0 - expected) / static_cast<double>(e.trials));
  return std::abs(e.p_error - expected) <= sigmas * se;
}

}  // namespace

TEST_CASE("gaussian_tail_q") {
  CHECK(gaussian_tail_q(0.0) == 0.5);
  // Reference values from 40-digit erfc.
  CHECK(gaussian_tail_q(6.0) == doctest::Approx(9.865876450376981407e-10).epsilon(1e-10));
  CHECK(gaussian_tail_q(3.0) == doctest::Approx(1.3498980316300945267e-3).epsilon(1e-10));
  CHECK(gaussian_tail_q(10.0) == doctest::Approx(7.619853024160526066e-24).epsilon(1e-10));
  CHECK(gaussian_tail_q(-1.3) == doctest::Approx(1.0 - gaussian_tail_q(1.3)).epsilon(1e-15));
  CHECK(gaussian_tail_q(1.3) == doctest::Approx(0.096800484585610325542).epsilon(1e-10));
  for (double x = 0.0; x <= 10.0; x += 0.25) {
    const double oracle = q_by_quadrature(x);
    CHECK(std::abs(gaussian_tail_q(x) - oracle) / oracle <= 1e-10);
  }
}

TEST_CASE("constellation geometry") {
  const auto pts = constellation(8, 2.0);
  REQUIRE(pts.size() == 16);
  for (std::uint32_t i = 0; i < 16; ++i) {
    CHECK(pts[i].index == i);
    CHECK(pts[i].phase == doctest::Approx(std::numbers::pi * i / 8));
    CHECK(pts[i].phase < 2 * std::numbers::pi);
    CHECK(pts[i].amplitude == 2.0);
  }
  for (std::uint32_t i = 0; i < 8; ++i) CHECK(pts[i + 8].phase - pts[i].phase == doctest::Approx(std::numbers::pi));
}

TEST_CASE("bit labelling: antipodal pairs carry opposite bits, neighbours alternate") {
  for (std::uint32_t m : {2U, 8U, 64U, 2048U}) {
    for (std::uint32_t b = 0; b < m; ++b) {
      for (bool d : {false, true}) {
        const auto idx = point_index(b, d, m);
        CHECK(idx % m == b);
        CHECK(point_bit(idx, m) == d);
      }
      CHECK(point_index(b, false, m) != point_index(b, true, m));
    }
    for (std::uint32_t j = 0; j + 1 < 2 * m; ++j) {
      if (j % m == m - 1) continue;  // seam between the two half circles
      CHECK(point_bit(j, m) != point_bit(j + 1, m));
    }
  }
}

TEST_CASE("nearest_point") {
  constexpr std::uint32_t m = 4;  // 8 points, spacing pi/4
  const double step = std::numbers::pi / m;
  for (std::uint32_t i = 0; i < 2 * m; ++i) {
    CHECK(nearest_point(i * step, m) == i);
    CHECK(nearest_point(i * step + 0.3 * step, m) == i);
    CHECK(nearest_point(i * step - 0.3 * step, m) == i);
  }
  CHECK(nearest_point(-0.1 * step, m) == 0);
  CHECK(nearest_point(2 * std::numbers::pi - 0.1 * step, m) == 0);
  CHECK(nearest_point(-std::numbers::pi / 2, m) == 6);
  CHECK(nearest_point(0.5 * step, m) == 0);  // tie: lower index
  CHECK(nearest_point(2.5 * step, m) == 2);
}

TEST_CASE("config validation") {
  CipherConfig cfg;
  CHECK_NOTHROW(cfg.validate());
  cfg.num_bases = 1;
  CHECK_THROWS_AS(cfg.validate(), ConfigError);
  cfg = {};
  cfg.seed_key_bits = 8;
  CHECK_THROWS_AS(cfg.validate(), ConfigError);
  cfg = {};
  cfg.eve_transmissivity = 0.0;
  CHECK_THROWS_AS(cfg.validate(), ConfigError);
  cfg = {};
  cfg.bob_transmissivity = 1.5;
  CHECK_THROWS_AS(cfg.validate(), ConfigError);
  cfg = {};
  cfg.mean_photon_number = -1.0;
  CHECK_THROWS_AS(cfg.validate(), ConfigError);
}

TEST_CASE("make_estimate") {
  const auto e = make_estimate(250, 100'000);
  CHECK(e.p_error == 0.0025);
  CHECK(e.ci_halfwidth_95 == doctest::Approx(1.96 * std::sqrt(0.0025 * 0.9975 / 1e5)));
  CHECK_FALSE(e.below_resolution);
  const auto zero = make_estimate(0, 1'000'000, 1e-9);
  CHECK(zero.below_resolution);
  CHECK(zero.upper_bound_95 == doctest::Approx(3e-6));
  CHECK(make_estimate(3, 100'000).below_resolution);
}

TEST_CASE("bob_ber_analytic examples") {
  CHECK(bob_ber_analytic(with_signal(9.0)).p_error == doctest::Approx(9.865876450376981e-10).epsilon(1e-10));
  CHECK(bob_ber_analytic(with_signal(0.0)).p_error == 0.5);
  CHECK(bob_ber_analytic(with_signal(2.25)).p_error == doctest::Approx(1.3498980316300945e-3).epsilon(1e-10));
  auto tapped = with_signal(900.0);
  tapped.bob_transmissivity = 0.01;
  CHECK(bob_ber_analytic(tapped).p_error == doctest::Approx(9.865876450376981e-10).epsilon(1e-9));
  CHECK_THROWS_AS(bob_ber_analytic(with_signal(9.0, Detector::Heterodyne)), DomainError);
}

TEST_CASE("bob Monte Carlo agrees with the analytic formula") {
  const auto e = bob_ber_monte_carlo(with_signal(2.25), 1'000'000);
  REQUIRE(e.analytic_p.has_value());
  CHECK(std::abs(e.p_error - *e.analytic_p) <= 3.0 * e.ci_halfwidth_95);
  CHECK_FALSE(e.below_resolution);

  const auto dark = bob_ber_monte_carlo(with_signal(0.0), 100'000);
  CHECK(within_ci(dark, 0.5));

  const auto strong = bob_ber_monte_carlo(with_signal(9.0), 1'000'000);
  CHECK(strong.below_resolution);
  CHECK(strong.errors <= 3);
  CHECK(*strong.analytic_p == doctest::Approx(9.865876450376981e-10).epsilon(1e-10));

  // Heterodyne Bob pays 3 dB: Q(mu / sqrt(1/2)).
  const auto het = bob_ber_monte_carlo(with_signal(2.25, Detector::Heterodyne), 200'000);
  CHECK_FALSE(het.analytic_p.has_value());
  CHECK(within_ci(het, 0.5 * std::erfc(1.5)));

  CHECK_THROWS_AS(bob_ber_monte_carlo(with_signal(2.25), 9'999), UsageError);
}

TEST_CASE("eve Monte Carlo") {
  const CipherConfig defaults;
  const auto masked = eve_ber_monte_carlo(defaults, 100'000);
  CHECK(masked.p_error >= 0.25);
  CHECK(masked.trials == 100'000);

  CipherConfig coarse;
  coarse.num_bases = 2;
  CHECK(eve_ber_monte_carlo(coarse, 100'000).p_error <= 1e-4);

  CHECK_THROWS_AS(eve_ber_monte_carlo(defaults, 100), UsageError);
}

TEST_CASE("Monte Carlo is deterministic and independent of worker count") {
  CipherConfig cfg;
  cfg.num_bases = 256;
  cfg.mean_photon_number = 2e3;
  const auto a = eve_ber_monte_carlo(cfg, 300'000, {1});
  const auto b = eve_ber_monte_carlo(cfg, 300'000, {1});
  const auto c = eve_ber_monte_carlo(cfg, 300'000, {4});
  CHECK(a.errors == b.errors);
  CHECK(a.errors == c.errors);
  CHECK(a.p_error == c.p_error);

  auto bob = with_signal(2.25);
  CHECK(bob_ber_monte_carlo(bob, 300'000, {1}).errors == bob_ber_monte_carlo(bob, 300'000, {3}).errors);
  bob.rng_seed = 43;
  CHECK(bob_ber_monte_carlo(bob, 300'000).errors != bob_ber_monte_carlo(with_signal(2.25), 300'000).errors);
}

TEST_CASE("masking_report") {
  const auto r = masking_report(CipherConfig{});
  CHECK(r.neighbor_spacing_rad == doctest::Approx(std::numbers::pi / 2048));
  CHECK(r.phase_noise_std_rad == doctest::Approx(7.0710678118654752e-3));
  CHECK(r.masking_number == doctest::Approx(9.2195).epsilon(1e-4));
  CHECK(r.masked());

  CipherConfig coarse;
  coarse.num_bases = 2;
  for (double photons : {10.0, 1e2, 1e4}) {
    coarse.mean_photon_number = photons;
    CHECK(masking_report(coarse).masking_number < 0.3);
    CHECK_FALSE(masking_report(coarse).masked());
  }

  CipherConfig doubled;
  doubled.num_bases = 4096;
  CHECK(masking_report(doubled).masking_number == 2.0 * r.masking_number);
}

TEST_CASE("error separation") {
  const auto def = error_separation(CipherConfig{}, 100'000);
  CHECK(def.separation_ratio >= 1e6);
  CHECK(def.separation_holds);

  CipherConfig m64;
  m64.num_bases = 64;
  const auto near = error_separation(m64, 100'000);
  m64.eve_transmissivity = 0.01;
  const auto far = error_separation(m64, 100'000);
  CHECK(far.separation_ratio > near.separation_ratio);

  CipherConfig coarse;
  coarse.num_bases = 2;
  const auto unmasked = error_separation(coarse, 100'000);
  CHECK_FALSE(unmasked.masking.masked());
  CHECK(unmasked.separation_ratio < def.separation_ratio);

  CipherConfig het;
  het.detector = Detector::Heterodyne;
  CHECK(error_separation(het, 20'000).separation_ratio >= 1e6);
}

TEST_CASE("ordering: eve never beats bob when her tap is no better") {
  for (std::uint32_t m : {2U, 16U, 256U}) {
    for (double photons : {1.0, 4.0, 100.0}) {
      for (double eve_tap : {1.0, 0.3}) {
        CipherConfig cfg;
        cfg.num_bases = m;
        cfg.mean_photon_number = photons;
        cfg.eve_transmissivity = eve_tap;
        const auto bob = bob_ber_monte_carlo(cfg, 50'000);
        const auto eve = eve_ber_monte_carlo(cfg, 50'000);
        CHECK(eve.p_error + eve.ci_halfwidth_95 + bob.ci_halfwidth_95 >= bob.p_error);
      }
    }
  }
}

TEST_CASE("masking monotonicity on a 3x3 grid") {
  const std::uint32_t ms[] = {8, 32, 128};
  const double received[] = {1e2, 1e3, 1e4};
  BerEstimate grid[3][3];
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      CipherConfig cfg;
      cfg.num_bases = ms[i];
      cfg.mean_photon_number = received[j];
      grid[i][j] = eve_ber_monte_carlo(cfg, 100'000);
    }
  }
  auto slack = [](const BerEstimate& a, const BerEstimate& b) { return a.ci_halfwidth_95 + b.ci_halfwidth_95; };
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      if (i + 1 < 3) CHECK(grid[i + 1][j].p_error + slack(grid[i + 1][j], grid[i][j]) >= grid[i][j].p_error);
      if (j + 1 < 3) CHECK(grid[i][j + 1].p_error <= grid[i][j].p_error + slack(grid[i][j + 1], grid[i][j]));
    }
  }
  // Ends of the grid are far apart.
  CHECK(grid[2][0].p_error > 0.4);
  CHECK(grid[0][2].p_error < 1e-3);
}

TEST_CASE("keyed pipeline round trip and rate preservation") {
  const auto cfg = with_signal(9.0);
  const auto stats = run_pipeline(cfg, 200'000, cfg.seed_key());
  CHECK(stats.symbols_in == 200'000);
  CHECK(stats.bits_out == stats.symbols_in);
  CHECK(stats.stalls == 0);
  CHECK(stats.bit_errors == 0);

  // A receiver holding a different key learns nothing.
  const auto wrong = run_pipeline(cfg, 200'000, cfg.seed_key().with_bit_flipped(17));
  const double p = static_cast<double>(wrong.bit_errors) / 200'000.0;
  CHECK(std::abs(p - 0.5) < 0.01);
}

TEST_CASE("transmitter emits the keyed constellation point") {
  const SeedKey key = SeedKey::derive(3, 64);
  Transmitter tx(key, 16, 4.0);
  Keystream ks(key, 16);
  for (int i = 0; i < 100; ++i) {
    const bool bit = i % 3 == 0;
    const auto field = tx.send(bit);
    const auto expected_index = point_index(ks.next(), bit, 16);
    CHECK(tx.last_index() == expected_index);
    CHECK(std::abs(field) == doctest::Approx(2.0));
    CHECK(nearest_point(std::arg(field), 16) == expected_index);
  }
  CHECK(std::abs(attenuate({3.0, 4.0}, 0.25)) == doctest::Approx(2.5));
}

#include <algorithm>
#include <cmath>
#include <vector>

#include "cellsim/errors.hpp"
#include "cellsim/outage.hpp"
#include "cellsim/rng.hpp"
#include "doctest.h"
#include "oracles.hpp"

using namespace cellsim;

namespace {

double rel_diff(double a, double b) {
  const double scale = std::max({std::fabs(a), std::fabs(b), 1e-300});
  return std::fabs(a - b) / scale;
}

OutageContext random_context(RngStream& rng, int max_m0, int max_interferers) {
  OutageContext ctx;
  ctx.m0 = 1 + static_cast<int>(rng.next_u64() % static_cast<std::uint64_t>(max_m0));
  ctx.gamma = std::pow(10.0, rng.uniform(0.5, 2.0));
  ctx.spread_factor = 8.0 + 8.0 * static_cast<double>(rng.next_u64() % 6);
  ctx.chip_factor = rng.uniform(0.4, 1.0);
  ctx.omega0 = std::pow(10.0, rng.uniform(-1.0, 1.0));
  const int n = static_cast<int>(rng.next_u64() % static_cast<std::uint64_t>(max_interferers + 1));
  for (int i = 0; i < n; ++i) {
    ctx.interferers.push_back({std::pow(10.0, rng.uniform(-3.0, 3.0)), rng.uniform(0.5, 4.0)});
  }
  return ctx;
}

}  // namespace

TEST_CASE("interference-free Rayleigh link has the textbook exponential tail") {
  OutageContext ctx;
  ctx.m0 = 1;
  ctx.omega0 = 1.0;
  ctx.gamma = 10.0;

  // beta0 = 1, z = 1/10: outage = 1 - exp(-0.1).
  const double eps = outage_probability(1.0, ctx);
  CHECK(std::fabs(eps - 0.09516258196404043) < 1e-15);

  // Inverting the 10% target lands on beta = -10 ln 0.9.
  const double beta = invert_outage(0.1, ctx);
  CHECK(std::fabs(beta - 1.0536051565782630) < 1e-7);
  CHECK(std::fabs(outage_probability(beta, ctx) - 0.1) <= 1e-9);

  CHECK(ccdf_z(1.0, 0.1, ctx) == ccdf_z_unclamped(1.0, 0.1, ctx));
}

TEST_CASE("general kernel reduces to the gamma tail without interference") {
  RngStream rng(101);
  for (int c = 0; c < 1000; ++c) {
    OutageContext ctx;
    ctx.m0 = 1 + static_cast<int>(rng.next_u64() % 8);
    const double beta0 = std::pow(10.0, rng.uniform(-2.0, 2.0));
    const double z = std::pow(10.0, rng.uniform(-2.0, 1.0));
    const double got = ccdf_z_unclamped(beta0, z, ctx);
    const double want = testref::erlang_ccdf(ctx.m0, beta0 * z);
    CHECK(rel_diff(got, want) <= 1e-12);
  }
}

TEST_CASE("Rayleigh serving link collapses to a pure product over interferers") {
  RngStream rng(202);
  for (int c = 0; c < 1000; ++c) {
    OutageContext ctx = random_context(rng, 1, 10);
    REQUIRE(ctx.m0 == 1);
    const double beta0 = std::pow(10.0, rng.uniform(-2.0, 2.0));
    const double z = std::pow(10.0, rng.uniform(-1.5, 0.5));
    const double h_over_g = ctx.chip_factor / ctx.spread_factor;
    double want = std::exp(-beta0 * z);
    for (const Interferer& itf : ctx.interferers) {
      const double u = h_over_g * itf.omega / itf.m;
      want *= std::pow(1.0 / (beta0 * u + 1.0), itf.m);
    }
    CHECK(rel_diff(ccdf_z_unclamped(beta0, z, ctx), want) <= 1e-12);
  }
}

TEST_CASE("truncated convolution agrees with composition enumeration") {
  RngStream rng(303);
  double worst = 0.0;
  for (int c = 0; c < 1000; ++c) {
    const OutageContext ctx = random_context(rng, 4, 6);
    const double beta0 = std::pow(10.0, rng.uniform(-2.0, 2.0));
    const double z = std::pow(10.0, rng.uniform(-1.5, 0.5));
    const double got = ccdf_z_unclamped(beta0, z, ctx);
    const double want = testref::enumerated_ccdf(beta0, z, ctx);
    worst = std::max(worst, rel_diff(got, want));
  }
  CHECK(worst <= 1e-12);
}

TEST_CASE("threshold inversion round-trips through the outage map") {
  RngStream rng(404);
  for (int c = 0; c < 200; ++c) {
    const OutageContext ctx = random_context(rng, 3, 20);
    const double target = rng.uniform(0.01, 0.95);
    const double beta = invert_outage(target, ctx);
    CHECK(beta > 0.0);
    CHECK(std::fabs(outage_probability(beta, ctx) - target) <= 1e-9);
    // The normalized solve is the same root, rescaled.
    CHECK(beta == invert_outage_beta0(target, ctx) * ctx.omega0 / ctx.m0);
  }
}

TEST_CASE("outage grows with the threshold and with interferer power") {
  OutageContext ctx;
  ctx.m0 = 3;
  ctx.omega0 = 0.05;
  ctx.interferers = {{0.4, 1.0}, {0.02, 2.5}};

  double prev = 0.0;
  for (double beta : {0.25, 0.5, 1.0, 2.0, 4.0, 8.0}) {
    const double eps = outage_probability(beta, ctx);
    CHECK(eps > prev);
    prev = eps;
  }

  OutageContext stronger = ctx;
  stronger.interferers[0].omega *= 10.0;
  CHECK(outage_probability(1.0, stronger) > outage_probability(1.0, ctx));

  OutageContext extra = ctx;
  extra.interferers.push_back({1.0, 1.0});
  CHECK(outage_probability(1.0, extra) > outage_probability(1.0, ctx));
}

TEST_CASE("degenerate arguments are rejected with domain errors") {
  OutageContext good;
  good.interferers = {{0.5, 1.0}};

  OutageContext bad_m0 = good;
  bad_m0.m0 = 0;
  CHECK_THROWS_AS(ccdf_z(1.0, 0.1, bad_m0), DomainError);

  OutageContext bad_itf = good;
  bad_itf.interferers[0].m = 0.0;
  CHECK_THROWS_AS(ccdf_z(1.0, 0.1, bad_itf), DomainError);

  OutageContext neg_omega = good;
  neg_omega.interferers[0].omega = -1.0;
  CHECK_THROWS_AS(ccdf_z(1.0, 0.1, neg_omega), DomainError);

  CHECK_THROWS_AS(ccdf_z(0.0, 0.1, good), DomainError);
  CHECK_THROWS_AS(ccdf_z(1.0, 0.0, good), DomainError);
  CHECK_THROWS_AS(outage_probability(0.0, good), DomainError);

  OutageContext no_power = good;
  no_power.omega0 = 0.0;
  CHECK_THROWS_AS(outage_probability(1.0, no_power), DomainError);

  OutageContext no_noise = good;
  no_noise.gamma = 0.0;
  CHECK_THROWS_AS(outage_probability(1.0, no_noise), DomainError);

  CHECK_THROWS_AS(invert_outage(0.0, good), DomainError);
  CHECK_THROWS_AS(invert_outage(1.0, good), DomainError);

  RngStream rng(1);
  CHECK_THROWS_AS(fading_oracle(1.0, good, 0, rng), DomainError);
}

TEST_CASE("bracket expansion gives up cleanly at both caps") {
  OutageContext ctx;  // m0 = 1, no interference: outage = 1 - exp(-beta0 / gamma)

  // Any positive threshold already overshoots an absurdly small target.
  CHECK_THROWS_AS(invert_outage(1e-300, ctx), BracketFailure);

  // With essentially no noise or interference, no threshold under the cap
  // can push the outage up to 50%.
  OutageContext quiet = ctx;
  quiet.gamma = 1e300;
  CHECK_THROWS_AS(invert_outage(0.5, quiet), BracketFailure);
}

TEST_CASE("fading oracle replays a seed exactly and skips silent interferers") {
  OutageContext ctx;
  ctx.m0 = 2;
  ctx.omega0 = 0.3;
  ctx.interferers = {{0.5, 1.0}, {0.0, 1.0}};

  RngStream a(77);
  RngStream b(77);
  const OracleEstimate ea = fading_oracle(1.0, ctx, 5000, a);
  const OracleEstimate eb = fading_oracle(1.0, ctx, 5000, b);
  CHECK(ea.epsilon == eb.epsilon);
  CHECK(ea.std_error == eb.std_error);

  // A zero-power interferer consumes no randomness, so dropping it entirely
  // replays the identical draw sequence.
  OutageContext dropped = ctx;
  dropped.interferers.pop_back();
  RngStream c(77);
  CHECK(fading_oracle(1.0, dropped, 5000, c).epsilon == ea.epsilon);
}

TEST_CASE("closed form tracks the fading oracle on mixed contexts") {
  RngStream rng(505);
  for (int c = 0; c < 5; ++c) {
    const OutageContext ctx = random_context(rng, 3, 12);
    const double target = rng.uniform(0.05, 0.6);
    const double beta = invert_outage(target, ctx);
    RngStream draws(900 + static_cast<std::uint64_t>(c));
    const OracleEstimate mc = fading_oracle(beta, ctx, 20000, draws);
    CHECK(std::fabs(mc.epsilon - target) <= 5.0 * mc.std_error + 1e-12);
  }
}

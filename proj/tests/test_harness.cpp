#include <cmath>
#include <vector>

#include "besov/families.hpp"
#include "besov/harness.hpp"
#include "besov/params.hpp"
#include "besov/regions.hpp"
#include "doctest.h"

using besov::BesovParams;
using besov::chi_membership;
using besov::divergence_experiment;
using besov::DivergenceKind;
using besov::Extension;
using besov::fit_slope;
using besov::functional_verdict;
using besov::GeneratorModel;
using besov::kInf;
using besov::probe_chi_membership;
using besov::ProbeOptions;
using besov::region_sweep;
using besov::SweepOptions;

namespace {

BesovParams make_params(double s, double p, double q, double tau, int n) {
  BesovParams prm;
  prm.s = s;
  prm.p = p;
  prm.q = q;
  prm.tau = tau;
  prm.n = n;
  return prm;
}

}  // namespace

TEST_CASE("slope fitting on exact lines") {
  const std::vector<double> x = {4, 5, 6, 7, 8};
  std::vector<double> y = x;
  CHECK(fit_slope(x, y) == doctest::Approx(1.0).epsilon(1e-12));
  y.assign(x.size(), 3.0);
  CHECK(fit_slope(x, y) == doctest::Approx(0.0).epsilon(1e-12));
  for (std::size_t i = 0; i < x.size(); ++i) y[i] = 0.5 * x[i] - 2.0;
  CHECK(fit_slope(x, y) == doctest::Approx(0.5).epsilon(1e-12));

  CHECK_THROWS_AS(fit_slope({1, 2}, {1, 2}), std::invalid_argument);
  CHECK_THROWS_AS(fit_slope({1, 2, 3}, {1, 2}), std::invalid_argument);
}

TEST_CASE("membership probe classifies the three regimes") {
  // Member: flat norms, bounded classification.
  auto member = probe_chi_membership(make_params(0.5, 2, kInf, 0, 1));
  CHECK(member.predicted.member);
  CHECK_FALSE(member.divergent);
  CHECK(member.fitted_slope < 0.05);
  CHECK_FALSE(member.boundary_case);
  CHECK(member.levels.size() == 7);  // default sweep 4..10

  // Clear divergence: slope tracks s - 1/p = 1.
  auto diverges = probe_chi_membership(make_params(1.5, 2, 2, 0, 1));
  CHECK_FALSE(diverges.predicted.member);
  CHECK(diverges.divergent);
  CHECK(diverges.predicted_slope == doctest::Approx(1.0));
  CHECK(diverges.fitted_slope == doctest::Approx(1.0).epsilon(0.15));

  // Morrey-driven divergence: slope tracks s + n tau - n/p.
  auto morrey = probe_chi_membership(make_params(0.25, 2, 2, 0.5, 1));
  CHECK_FALSE(morrey.predicted.member);
  CHECK(morrey.divergent);
  CHECK(morrey.predicted_slope == doctest::Approx(0.25));

  // Boundary s = 1/p with finite q: sub-exponential growth, caught by the
  // ratio test rather than the slope.
  auto boundary = probe_chi_membership(make_params(0.5, 2, 2, 0, 1));
  CHECK_FALSE(boundary.predicted.member);
  CHECK(boundary.boundary_case);
  CHECK(boundary.boundary_ratio <= 2.0);
  CHECK(boundary.divergent);
}

TEST_CASE("probe rejects dyadic shifts and bad sweeps") {
  ProbeOptions opt;
  opt.shift = {0.5};
  CHECK_THROWS_AS(probe_chi_membership(make_params(0.5, 2, 2, 0, 1), opt),
                  std::invalid_argument);
  opt.shift = {0.375};
  CHECK_THROWS_AS(probe_chi_membership(make_params(0.5, 2, 2, 0, 1), opt),
                  std::invalid_argument);
  opt.shift = {1.0 / 3.0, 1.0 / 3.0};  // dimension mismatch
  CHECK_THROWS_AS(probe_chi_membership(make_params(0.5, 2, 2, 0, 1), opt),
                  std::invalid_argument);

  ProbeOptions two;
  two.levels = {4, 5};
  CHECK_THROWS_AS(probe_chi_membership(make_params(0.5, 2, 2, 0, 1), two),
                  std::invalid_argument);
  two.levels = {6, 5, 4};
  CHECK_THROWS_AS(probe_chi_membership(make_params(0.5, 2, 2, 0, 1), two),
                  std::invalid_argument);
}

TEST_CASE("probe works in two dimensions") {
  ProbeOptions opt;
  opt.levels = {4, 5, 6, 7, 8};
  auto member = probe_chi_membership(make_params(0.25, 2, 2, 0, 2), opt);
  CHECK(member.predicted.member);
  CHECK_FALSE(member.divergent);
  auto diverges = probe_chi_membership(make_params(1.0, 2, 2, 0, 2), opt);
  CHECK_FALSE(diverges.predicted.member);
  CHECK(diverges.divergent);
  CHECK(diverges.predicted_slope == doctest::Approx(0.5));
  CHECK(diverges.fitted_slope == doctest::Approx(0.5).epsilon(0.3));
}

TEST_CASE("divergence experiments require their boundary tuples") {
  GeneratorModel gen;
  try {
    divergence_experiment(DivergenceKind::HarmonicFace,
                          make_params(2.0, 2.0, 2.0, 0.0, 2), gen,
                          {4, 8});
    FAIL("expected a rejection");
  } catch (const std::invalid_argument& e) {
    const std::string msg = e.what();
    CHECK(msg.find("Extends") != std::string::npos);
  }
}

TEST_CASE("the four experiments drive the ratio upward") {
  GeneratorModel gen;
  const std::vector<int> sweep = {4, 6, 8, 10, 12};
  struct Setup {
    DivergenceKind kind;
    BesovParams params;
  };
  const Setup setups[] = {
      {DivergenceKind::HarmonicFace, make_params(-0.5, 2, 4, 0, 2)},
      {DivergenceKind::LinearFace, make_params(-1, 2, 1, 0.5, 2)},
      {DivergenceKind::HarmonicSparse, make_params(1.5, 0.5, kInf, 0.5, 2)},
      {DivergenceKind::HarmonicColumn, make_params(2, 0.5, 2, 0, 2)},
  };
  for (const auto& setup : setups) {
    CAPTURE(besov::to_string(setup.kind));
    REQUIRE(functional_verdict(setup.params).value ==
            Extension::DoesNotExtend);
    auto table = divergence_experiment(setup.kind, setup.params, gen, sweep);
    CHECK(table.region.value == Extension::DoesNotExtend);
    REQUIRE(table.rows.size() == sweep.size());
    double prev = 0.0;
    for (const auto& row : table.rows) {
      CHECK(row.norm > 0.0);
      CHECK(row.ratio == doctest::Approx(std::abs(row.pairing) / row.norm));
      CHECK(row.ratio > prev);
      prev = row.ratio;
    }
    // The last ratio must be visibly larger, not a rounding artifact.
    CHECK(table.rows.back().ratio >= 1.4 * table.rows.front().ratio);
  }

  // Harmonic kinds start no earlier than level 1, and the sparse family
  // waits until the generator support fits strictly inside the level.
  auto face = divergence_experiment(DivergenceKind::HarmonicFace,
                                    setups[0].params, gen, sweep);
  CHECK(face.start_level >= 1);
  auto sparse = divergence_experiment(DivergenceKind::HarmonicSparse,
                                      setups[2].params, gen, sweep);
  CHECK((1LL << sparse.start_level) > gen.support_width());

  // Harmonic norms stay within a tight band while the pairing diverges.
  for (const auto& row : face.rows)
    CHECK(row.norm == doctest::Approx(face.rows.front().norm).epsilon(0.05));
}

TEST_CASE("region sweeps preserve order and agree with the predicates") {
  std::vector<BesovParams> grid = {
      make_params(0.5, 2, kInf, 0, 1), make_params(0.5, 2, 2, 0, 1),
      make_params(-1, 1, 1, 2, 1),     make_params(1.5, 0.5, 0.8, 0.5, 2),
      make_params(0, 1, 0.5, 0, 2),
  };
  auto rows = region_sweep(grid);
  REQUIRE(rows.size() == grid.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    CHECK(rows[i].params.s == grid[i].s);
    CHECK(rows[i].params.tau == grid[i].tau);
    CHECK(rows[i].membership.member == chi_membership(grid[i]).member);
    CHECK(rows[i].functional.value == functional_verdict(grid[i]).value);
    CHECK_FALSE(rows[i].probed);
  }
  CHECK(rows[3].functional.value == Extension::Open);

  SweepOptions with_probe;
  with_probe.probe = true;
  with_probe.probe_options.levels = {4, 5, 6, 7};
  std::vector<BesovParams> small = {make_params(0.25, 2, 2, 0, 1),
                                    make_params(1.5, 2, 2, 0, 1)};
  auto probed = region_sweep(small, with_probe);
  REQUIRE(probed.size() == 2);
  for (const auto& row : probed) {
    CHECK(row.probed);
    CHECK(row.probe.divergent == !row.membership.member);
  }
}

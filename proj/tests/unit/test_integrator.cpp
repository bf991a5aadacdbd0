#include <algorithm>
#include <cmath>

#include <doctest.h>

#include "soliton/equilibria.hpp"
#include "soliton/errors.hpp"
#include "soliton/families.hpp"
#include "soliton/integrator.hpp"

using namespace soliton;

namespace {

struct Seeded {
  SystemParams params;
  PhaseState seed;
  ChannelInit init;
};

Seeded seeded(FamilyKind fam, int m, int eps, std::vector<double> s, double delta, bool einstein = false) {
  const auto p = fam == FamilyKind::gamma_tilde ? SystemParams::octonionic(eps)
                                                : SystemParams::quaternionic(m, eps);
  const auto spec = validate_spec(fam, s, eps, einstein, delta);
  const auto eq = critical_point(p, equilibrium_of(fam));
  const auto basis = unstable_basis(p, equilibrium_of(fam));
  const auto x = seed_state(p, eq, basis, spec);
  return {p, x, channels_from_seed(p, x, eq.d_S)};
}

bool has_violation(const Trajectory& tr) {
  return std::any_of(tr.events.begin(), tr.events.end(),
                     [](const EventRecord& e) { return e.kind == EventKind::constraint_violation; });
}

}  // namespace

TEST_SUITE("integrator") {
  TEST_CASE("configuration validation") {
    IntegratorConfig c;
    CHECK_NOTHROW(c.validate());
    c.rtol = -1;
    CHECK_THROWS_AS(c.validate(), InvalidArgument);
    c = {};
    c.eta_max = 0.0;
    CHECK_THROWS_AS(c.validate(), InvalidArgument);
    CHECK(default_eta_max(SystemParams::quaternionic(1, 0)) == doctest::Approx(7000.0));
  }

  TEST_CASE("an equilibrium seed converges at the first check") {
    const auto p = SystemParams::quaternionic(1, 0);
    const auto eq = critical_point(p, EquilibriumLabel::P_dot);
    const auto tr = integrate(p, eq.point, ChannelInit{}, IntegratorConfig{});
    CHECK(tr.terminal_reason == TerminalReason::converged);
    REQUIRE(tr.samples.size() == 1);
    CHECK(tr.samples.front().state == eq.point);
    REQUIRE(tr.limit_state.has_value());
    CHECK(*tr.limit_state == eq.point);

    const auto ref = rk4_reference(p, eq.point, ChannelInit{}, 1e-2, 100);
    for (const auto& s : ref.samples) CHECK(s.state == eq.point);
    CHECK_THROWS_AS(rk4_reference(p, eq.point, ChannelInit{}, 0.0, 10), InvalidArgument);
  }

  TEST_CASE("adaptive and fixed-step integrations agree") {
    const auto sd = seeded(FamilyKind::zeta, 1, 0, {0.6, 0.3, 0, 0.74}, 1e-3);
    IntegratorConfig cfg;
    cfg.eta_max = 10.0;
    const auto tr = integrate(sd.params, sd.seed, sd.init, cfg);
    const auto ref = rk4_reference(sd.params, sd.seed, sd.init, 1e-4, 100000, 100);
    double worst = 0;
    for (const auto& s : tr.samples) {
      const auto k = static_cast<std::size_t>(std::lround(s.eta / 1e-2));
      REQUIRE(k < ref.samples.size());
      REQUIRE(std::abs(ref.samples[k].eta - s.eta) < 1e-9);
      for (std::size_t i = 0; i < sd.params.dim(); ++i)
        worst = std::max(worst, std::abs(ref.samples[k].state[i] - s.state[i]));
    }
    CHECK(worst < 1e-7);
  }

  TEST_CASE("steady zeta run stays in A and Q tends to -1") {
    const double r = std::sqrt(0.5);
    const auto sd = seeded(FamilyKind::zeta, 1, 0, {r, 0, 0, r}, 1e-7);
    const auto tr = integrate(sd.params, sd.seed, sd.init, IntegratorConfig{}, {InvariantSet::A});
    CHECK_FALSE(has_violation(tr));
    CHECK((tr.terminal_reason == TerminalReason::converged ||
           tr.terminal_reason == TerminalReason::eta_max_reached));
    CHECK(tr.samples.back().scalars.Q == doctest::Approx(-1.0).epsilon(1e-3));
    for (const auto& s : tr.samples) REQUIRE(s.state.get(Var::W) == 0.0);

    const auto diag = monitor(tr);
    CHECK(diag.max_q_identity_residual < 1e-8);
    CHECK(diag.conserved_rel_spread < 1e-6);
    CHECK(diag.y1_max_increase <= 1e-12);
  }

  TEST_CASE("expanding run approaches W eta = 1") {
    const double r = std::sqrt(0.5);
    const auto sd = seeded(FamilyKind::gamma, 1, 1, {0, 0, r, r}, 1e-7);
    const auto tr = integrate(sd.params, sd.seed, sd.init, IntegratorConfig{}, {InvariantSet::A});
    CHECK_FALSE(has_violation(tr));
    const auto& last = tr.samples.back();
    CHECK(last.state.get(Var::W) * last.eta == doctest::Approx(1.0).epsilon(2e-2));
    const auto diag = monitor(tr);
    CHECK(diag.conserved_rel_spread < 1e-6);
    CHECK(diag.max_q_identity_residual < 1e-8);
  }

  TEST_CASE("augmented channels follow their defining equations") {
    const auto sd = seeded(FamilyKind::gamma, 2, 0, {0.3, 0.4, 0, 0.866}, 1e-7);
    IntegratorConfig cfg;
    cfg.eta_max = 40.0;
    const auto tr = integrate(sd.params, sd.seed, sd.init, cfg);
    for (std::size_t i = 1; i + 1 < tr.samples.size(); ++i) {
      const auto &a = tr.samples[i - 1], &b = tr.samples[i], &c = tr.samples[i + 1];
      REQUIRE(b.eta > a.eta);
      REQUIRE(b.t >= a.t);
      REQUIRE(b.wtilde > 0);
      const double h = c.eta - a.eta;
      const double df = (c.f - a.f) / h, dt = (c.t - a.t) / h;
      CHECK(df == doctest::Approx(b.scalars.H - 1).epsilon(1e-3).scale(1e-6));
      CHECK(dt == doctest::Approx(b.wtilde).epsilon(1e-3));
    }
  }

  TEST_CASE("steady mu = 0 run: curvature ratio tends to one") {
    const auto sd = seeded(FamilyKind::gamma, 1, 0, {0.5, 0.5, 0, 0.7071}, 1e-7);
    const auto tr = integrate(sd.params, sd.seed, sd.init, IntegratorConfig{});
    const auto diag = monitor(tr);
    CHECK(diag.ratio.back() == doctest::Approx(1.0).epsilon(5e-2));
    CHECK(diag.y1_max_increase <= 1e-12);
    CHECK(diag.Y1.back() < 0.1);
  }

  TEST_CASE("flow-invariant subsets stay exact") {
    const double s2 = 1.0 / std::sqrt(101.0);
    const auto sd = seeded(FamilyKind::gamma, 1, 0, {0, s2, 0, 10 * s2}, 1e-7);
    const auto tr = integrate(sd.params, sd.seed, sd.init, IntegratorConfig{},
                              {InvariantSet::A, InvariantSet::RS_FS, InvariantSet::RS_KE});
    for (const auto& [set, value] : tr.worst_equality) {
      if (set == InvariantSet::RS_FS) CHECK(value < 1e-8);
      if (set == InvariantSet::RS_KE) CHECK(value < 1e-6);
    }
  }
}

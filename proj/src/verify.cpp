#include "heunspec/verify.hpp"

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>

#include <fmt/format.h>

#include "heunspec/errors.hpp"
#include "heunspec/fd_oracle.hpp"
#include "heunspec/io.hpp"
#include "heunspec/radial.hpp"
#include "heunspec/spectrum.hpp"
#include "heunspec/sweep.hpp"

namespace heunspec {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr std::array<Model, 2> kModels{Model::OscillatorInverseSquare, Model::InverseSquareOnly};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

class Draw {
 public:
  explicit Draw(std::uint64_t seed) : rng_(seed) {}

  double uniform(double a, double b) { return std::uniform_real_distribution<double>(a, b)(rng_); }
  int integer(int a, int b) { return std::uniform_int_distribution<int>(a, b)(rng_); }

  PhysicalParams params(Model model) {
    PhysicalParams p;
    p.model = model;
    p.mass = uniform(0.5, 2.0);
    p.gamma = uniform(0.0, 1.0);
    p.beta = uniform(0.2, 0.9);
    p.Omega = uniform(-1.0, 1.0);
    p.flux = uniform(0.0, 3.0);
    p.k = uniform(0.1, 2.0);
    p.ell = integer(-3, 3);
    if (model == Model::OscillatorInverseSquare) {
      p.omega0 = uniform(0.2, 2.0);
      p.delta = uniform(-1.0, 1.0);
    } else {
      p.omega0 = 0.0;
      p.delta = 0.0;
    }
    return p;
  }

  /// Parameters at which the closed-form n = 1 level exists.
  PhysicalParams params_with_level(Model model) {
    for (int attempt = 0; attempt < 100000; ++attempt) {
      PhysicalParams p = params(model);
      // Widen the angular range so that both signs of the radicand occur.
      p.ell = integer(-6, 6);
      try {
        ground_state_closed_form(p, Branch::Plus);
        return p;
      } catch (const NegativeDiscriminant&) {
      }
    }
    throw Error("no parameters with a real closed-form level found");
  }

  /// r in [0.05, 2.5], at least 1% of beta away from r = beta.
  double radius(double beta) {
    for (;;) {
      const double r = uniform(0.05, 2.5);
      if (std::abs(r - beta) > 0.01 * beta) return r;
    }
  }

 private:
  std::mt19937_64 rng_;
};

std::string model_name(Model m) { return std::string(to_string(m)); }

CheckRecord make(std::string name, int criterion, double measured, double tolerance,
                 bool ok, std::string detail) {
  CheckRecord c;
  c.name = std::move(name);
  c.criterion = criterion;
  c.measured = measured;
  c.tolerance = tolerance;
  c.status = ok ? CheckStatus::Pass : CheckStatus::Fail;
  c.detail = std::move(detail);
  return c;
}

// A finding against the literature: Pass when it reproduces, otherwise
// documented, never failed.
CheckRecord finding(std::string name, int criterion, double measured, double tolerance,
                    std::string detail) {
  CheckRecord c = make(std::move(name), criterion, measured, tolerance, true, std::move(detail));
  if (!(measured <= tolerance)) c.status = CheckStatus::DiscrepantDocumented;
  return c;
}

double series_worst(Draw& draw, int per_model, RecurrenceVariant variant,
                    const std::vector<Model>& models, std::string& note) {
  const std::array<double, 3> xs{0.1, 0.3, 0.5};
  double worst = 0.0;
  for (Model model : models) {
    for (int k = 0; k < per_model; ++k) {
      const PhysicalParams p = draw.params(model);
      const double s = draw.uniform(-10.0, 10.0);
      try {
        const SeriesSolution sol = series_coefficients(derive_params(p), {s, model}, 200, variant);
        worst = std::max(worst, series_residual(sol, xs).max_residual);
      } catch (const Error& e) {
        worst = kInf;
        if (note.empty()) note = e.what();
      }
    }
  }
  return worst;
}

CheckRecord check_series_residual(const VerifyOptions& o, Draw draw) {
  const int per_model = o.fast ? 20 : 50;
  std::string note;
  const double worst = series_worst(draw, per_model, o.series_variant,
                                    {kModels.begin(), kModels.end()}, note);
  std::string detail = fmt::format("{} series per model, N = 200, x in {{0.1, 0.3, 0.5}}",
                                   per_model);
  if (o.series_variant == RecurrenceVariant::SignTampered) detail += ", d2 sign tampered";
  if (!note.empty()) detail += "; " + note;
  return make("series_residual", 1, worst, 1e-9, worst <= 1e-9, detail);
}

CheckRecord check_printed_d3(const VerifyOptions& o, Draw draw) {
  const int per_model = o.fast ? 20 : 50;
  std::string note;
  const double worst = series_worst(draw, per_model, RecurrenceVariant::AsPrinted,
                                    {Model::OscillatorInverseSquare}, note);
  // Direct comparison of the printed d3 with the one obtained by substitution.
  PhysicalParams p = draw.params(Model::OscillatorInverseSquare);
  const DerivedParams d = derive_params(p);
  const double printed = recurrence_triple(0, d, {1.0, p.model}, RecurrenceVariant::AsPrinted).d3;
  const double derived = substitution_triple(0, d, {1.0, p.model}).d3;
  return finding("series_residual_printed_d3", 1, worst, 1e-9,
                 fmt::format("oscillator d3 = (i + (3+2j)/2)(i + 2) as printed; substitution "
                             "gives (i + 2)(i + 2 + j): at i = 0, j = {:.6g}: {:.10g} vs {:.10g}{}",
                             d.j, printed, derived, note.empty() ? "" : "; " + note));
}

CheckRecord check_substitution(const VerifyOptions& o, Draw draw) {
  const int per_model = o.fast ? 10 : 20;
  double worst = 0.0;
  for (Model model : kModels) {
    for (int k = 0; k < per_model; ++k) {
      const PhysicalParams p = draw.params(model);
      const DerivedParams d = derive_params(p);
      const SpectralParameter s{draw.uniform(-10.0, 10.0), model};
      for (int i = 0; i <= 10; ++i) {
        const RecurrenceTriple a = recurrence_triple(i, d, s, RecurrenceVariant::Corrected);
        const RecurrenceTriple b = substitution_triple(i, d, s);
        const SubstitutionRecurrence raw = derive_recurrence_by_substitution(i, d, s);
        const double scale = std::max({1.0, std::abs(a.d1), std::abs(a.d2), std::abs(a.d3)});
        worst = std::max({worst, std::abs(a.d1 - b.d1) / scale, std::abs(a.d2 - b.d2) / scale,
                          std::abs(a.d3 - b.d3) / scale, std::abs(raw.t3) / (4.0 * scale)});
      }
      // Seed: the i = -1 row fixes c_1 / c_0.
      const SubstitutionRecurrence seed = derive_recurrence_by_substitution(-1, d, s);
      const double c1 = -seed.t1 / seed.t0;
      worst = std::max(worst, std::abs(c1 - first_coefficient(d, s)) /
                                  std::max(1.0, std::abs(c1)));
    }
  }
  return make("recurrence_by_substitution", 0, worst, 1e-12, worst <= 1e-12,
              "recurrence and seed rederived by substituting the ansatz, i = -1 .. 10");
}

double change_of_variable_worst(Draw& draw, int draws, OmegaConvention convention) {
  double worst = 0.0;
  for (int k = 0; k < draws; ++k) {
    const Model model = convention == OmegaConvention::AsPrinted
                            ? Model::OscillatorInverseSquare
                            : kModels[k % 2];
    PhysicalParams p = draw.params(model);
    p.omega_convention = convention;
    const RadialProbe probe = gaussian_probe(draw.uniform(0.3, 2.0), draw.uniform(-1.0, 1.0));
    const double r = draw.radius(p.beta);
    const SpectralParameter s{draw.uniform(-10.0, 10.0), model};
    worst = std::max(worst, changeofvar_consistency(p, s, r, probe));
  }
  return worst;
}

CheckRecord check_change_of_variable(const VerifyOptions& o, Draw draw) {
  const int draws = o.fast ? 40 : 100;
  const double worst = change_of_variable_worst(draw, draws, OmegaConvention::Scaled);
  return make("change_of_variable", 2, worst, 1e-10, worst <= 1e-10,
              fmt::format("{} draws, omega = M w0 beta^2", draws));
}

CheckRecord check_printed_omega(const VerifyOptions& o, Draw draw) {
  const int draws = o.fast ? 20 : 50;
  const double worst = change_of_variable_worst(draw, draws, OmegaConvention::AsPrinted);
  return finding("change_of_variable_printed_omega", 2, worst, 1e-10,
                 fmt::format("{} oscillator draws with omega = M w0 beta: the x-form then "
                             "maps back to M^2 w0^2 r^2 / beta^2 instead of M^2 w0^2 r^2",
                             draws));
}

double separation_worst(Draw& draw, int draws, OperatorForm form) {
  double worst = 0.0;
  for (int k = 0; k < draws; ++k) {
    const PhysicalParams p = draw.params(kModels[k % 2]);
    const RadialProbe probe = gaussian_probe(draw.uniform(0.3, 2.0), draw.uniform(-1.0, 1.0));
    const double r = draw.radius(p.beta);
    const double phi = draw.uniform(0.0, 2.0 * std::numbers::pi);
    const double z = draw.uniform(-5.0, 5.0);
    const double energy = draw.uniform(-5.0, 5.0);
    worst = std::max(worst, separation_residual(p, probe, r, phi, z, energy, form));
  }
  return worst;
}

CheckRecord check_separation(const VerifyOptions& o, Draw draw) {
  const int draws = 30;
  (void)o;
  const double worst = separation_worst(draw, draws, OperatorForm::MetricLaplacian);
  return make("separation", 3, worst, 1e-8, worst <= 1e-8,
              fmt::format("{} draws, Laplace-Beltrami operator of the dislocation metric", draws));
}

CheckRecord check_printed_operator(const VerifyOptions& o, Draw draw) {
  (void)o;
  const double worst = separation_worst(draw, 30, OperatorForm::AsPrinted);
  return finding("separation_printed_operator", 3, worst, 1e-8,
                 "printed 3D operator lacks d_z^2, so it separates with S + k^2 in place of S");
}

CheckRecord check_truncation(const VerifyOptions& o, Draw draw) {
  const int per_model = o.fast ? 8 : 20;
  double worst = 0.0;
  int too_many = 0, total = 0;
  for (Model model : kModels) {
    for (int k = 0; k < per_model; ++k) {
      const PhysicalParams p = draw.params(model);
      for (int n = 1; n <= 3; ++n) {
        const auto levels = truncation_solve(p, n);
        if (static_cast<int>(levels.size()) > n + 1) ++too_many;
        for (const auto& l : levels) {
          worst = std::max(worst, l.truncation_residual);
          ++total;
        }
      }
    }
  }
  return make("truncation_roots", 4, worst, 1e-10, worst <= 1e-10 && too_many == 0,
              fmt::format("{} roots from n in {{1,2,3}}, {} sets per model; {} root-count "
                          "violations",
                          total, per_model, too_many));
}

std::vector<PhysicalParams> level_params(Draw& draw, int per_model) {
  std::vector<PhysicalParams> out;
  for (Model model : kModels)
    for (int k = 0; k < per_model; ++k) out.push_back(draw.params_with_level(model));
  return out;
}

CheckRecord check_closed_form_audit(const VerifyOptions& o, Draw draw) {
  const int per_model = o.fast ? 10 : 30;
  const auto sets = level_params(draw, per_model);
  double worst_rel = 0.0, worst_root = 0.0;
  int agree = 0;
  bool machinery_ok = true;
  std::vector<std::string> findings;
  for (const auto& p : sets) {
    const ClosedFormComparison cmp = compare_closed_form_vs_truncation(p);
    worst_root = std::max(worst_root, cmp.max_root_residual);
    if (!(cmp.max_root_residual <= 1e-10) || cmp.closed_form.size() != 2) machinery_ok = false;
    for (const auto& pair : cmp.pairing) {
      if (!std::isfinite(pair.relative_difference)) machinery_ok = false;
      worst_rel = std::max(worst_rel, pair.relative_difference);
    }
    if (cmp.pairing.size() != cmp.closed_form.size()) worst_rel = kInf;
    if (cmp.label == AuditLabel::Agree) {
      ++agree;
      continue;
    }
    std::string closed, trunc;
    for (double v : cmp.closed_form) closed += (closed.empty() ? "" : ", ") + format_number(v);
    for (double v : cmp.truncation) trunc += (trunc.empty() ? "" : ", ") + format_number(v);
    findings.push_back(fmt::format(
        "{} iota={} j={} omega={} beta={}: c2(S) = {} + {} S + {} S^2; closed form [{}]; "
        "truncation [{}]",
        model_name(p.model), format_number(derive_params(p).iota),
        format_number(derive_params(p).j), format_number(derive_params(p).omega),
        format_number(p.beta), format_number(cmp.quadratic[0]), format_number(cmp.quadratic[1]),
        format_number(cmp.quadratic[2]), closed, trunc));
  }
  CheckRecord c = make("closed_form_audit", 5, worst_rel, kAgreeTolerance, machinery_ok,
                       fmt::format("{}/{} AGREE, max root residual {:.3g}", agree,
                                   sets.size(), worst_root));
  if (machinery_ok && agree != static_cast<int>(sets.size()))
    c.status = CheckStatus::DiscrepantDocumented;
  c.findings = std::move(findings);
  return c;
}

CheckRecord check_c1_pairing(const VerifyOptions& o, Draw draw) {
  const auto sets = level_params(draw, o.fast ? 10 : 30);
  double worst = 0.0;
  for (const auto& p : sets) {
    for (Branch b : {Branch::Minus, Branch::Plus}) {
      const WavefunctionResult w = ground_state_wavefunction(p, b);
      worst = std::max(worst, std::abs(w.seed_c1 - w.solution.coeffs[1]) /
                                  std::max(1.0, std::abs(w.seed_c1)));
    }
  }
  return finding("closed_form_c1_pairing", 5, worst, kAgreeTolerance,
                 "printed c1 (upper sign of -/+ with the minus level) vs the series seed at the "
                 "closed-form spectral value");
}

CheckRecord check_emptiness(const VerifyOptions& o, Draw draw) {
  const int per_model = o.fast ? 20 : 50;
  int inconsistent = 0, total = 0;
  for (Model model : kModels) {
    for (int k = 0; k < per_model; ++k) {
      PhysicalParams p = draw.params(model);
      p.ell = draw.integer(-3, 3);
      const ClosedFormComparison cmp = compare_closed_form_vs_truncation(p);
      ++total;
      if (!cmp.same_emptiness) ++inconsistent;
    }
  }
  return finding("closed_form_existence", 5, inconsistent, 0.0,
                 fmt::format("{} of {} draws where exactly one of closed form / truncation has "
                             "real levels",
                             inconsistent, total));
}

CheckRecord check_termination_defect(const VerifyOptions& o, Draw draw) {
  const int per_model = o.fast ? 10 : 20;
  double smallest = kInf, largest = 0.0;
  for (Model model : kModels) {
    for (int k = 0; k < per_model; ++k) {
      for (const auto& l : truncation_solve(draw.params(model), 1)) {
        smallest = std::min(smallest, l.termination_defect);
        largest = std::max(largest, l.termination_defect);
      }
    }
  }
  return finding("termination_defect_n1", 0, largest, 1e-12,
                 fmt::format("|c_3| / max(|c_0|,|c_1|,|c_2|) at n = 1 truncation roots ranges "
                             "over [{:.3g}, {:.3g}]: c_2 = 0 alone leaves a quasi-truncation",
                             smallest, largest));
}

CheckRecord check_periodicity(const VerifyOptions& o, Draw draw) {
  const int per_model = o.fast ? 10 : 20;
  double worst = 0.0;
  int comparisons = 0;
  for (Model model : kModels) {
    for (int k = 0; k < per_model; ++k) {
      // Both sides sit at iota - nu, so the level must exist there for every nu.
      PhysicalParams p;
      for (;;) {
        p = draw.params_with_level(model);
        bool all = true;
        for (int nu = 1; nu <= 3 && all; ++nu) {
          PhysicalParams q = p;
          q.ell -= nu;
          try {
            ground_state_closed_form(q, Branch::Plus);
          } catch (const NegativeDiscriminant&) {
            all = false;
          }
        }
        if (all) break;
      }
      for (Branch b : {Branch::Minus, Branch::Plus}) {
        const LevelFunction closed = [b](const PhysicalParams& q) {
          return ground_state_closed_form(q, b).energy;
        };
        for (int nu = 1; nu <= 3; ++nu) {
          worst = std::max(worst, ab_periodicity_check(p, nu, closed).abs_diff);
          ++comparisons;
        }
      }
    }
  }
  return make("ab_periodicity", 6, worst, 1e-12, worst <= 1e-12,
              fmt::format("{} comparisons, nu in {{1,2,3}}, both branches", comparisons));
}

CheckRecord check_flat_oracle(const VerifyOptions& o) {
  (void)o;
  double worst_rel = 0.0, ratio_lo = kInf, ratio_hi = 0.0;
  for (double gamma : {0.0, 0.5}) {
    for (int ell : {0, 1, 2}) {
      PhysicalParams p;
      p.gamma = gamma;
      p.ell = ell;
      const auto coarse = oracle_eigenvalues(p, default_grid(p, GridMode::Flat, 2000), 5);
      const auto fine = oracle_eigenvalues(p, default_grid(p, GridMode::Flat, 4000), 5);
      for (int n = 0; n < 5; ++n) {
        const double exact = flat_exact_spectrum(p, n);
        const double e_fine = std::abs(fine.eigenvalues[n] - exact);
        const double e_coarse = std::abs(coarse.eigenvalues[n] - exact);
        worst_rel = std::max(worst_rel, e_fine / exact);
        const double ratio = e_coarse / e_fine;
        ratio_lo = std::min(ratio_lo, ratio);
        ratio_hi = std::max(ratio_hi, ratio);
      }
    }
  }
  const bool ok = worst_rel <= 5e-4 && ratio_lo >= 3.5 && ratio_hi <= 4.5;
  return make("flat_oracle", 7, worst_rel, 5e-4, ok,
              fmt::format("30 levels at 4000 points; grid-doubling error ratio in [{:.4f}, {:.4f}]",
                          ratio_lo, ratio_hi));
}

CheckRecord check_monotone_gamma(const VerifyOptions& o) {
  (void)o;
  PhysicalParams p;
  p.ell = 1;
  p.flux = 0.3;
  p.k = 0.5;
  std::vector<std::vector<double>> spectra;
  for (double gamma : {0.0, 0.25, 0.5}) {
    p.gamma = gamma;
    spectra.push_back(oracle_eigenvalues(p, default_grid(p, GridMode::Outer, 4000), 5).eigenvalues);
  }
  double worst_drop = 0.0;
  for (std::size_t g = 1; g < spectra.size(); ++g)
    for (int n = 0; n < 5; ++n)
      worst_drop = std::max(worst_drop, spectra[g - 1][n] - spectra[g][n]);
  return make("oracle_monotone_gamma", 8, worst_drop, 0.0, worst_drop <= 0.0,
              "largest decrease of any of the lowest 5 Outer eigenvalues as gamma grows over "
              "{0, 0.25, 0.5}");
}

CheckRecord check_omega_affinity(const VerifyOptions& o, Draw draw) {
  const int per_model = o.fast ? 3 : 5;
  double worst = 0.0;
  int fits = 0;
  for (Model model : kModels) {
    for (int k = 0; k < per_model; ++k) {
      SweepSpec spec;
      spec.parameter = SweepParameter::Omega;
      spec.from = -2.0;
      spec.to = 2.0;
      spec.steps = 41;
      spec.fixed = draw.params_with_level(model);
      const double iota = derive_params(spec.fixed).iota;
      const auto rows = run_sweep(spec, LevelMethod::ClosedForm);
      for (const std::string branch : {"minus", "plus"}) {
        std::vector<double> xs, ys;
        for (const auto& row : rows)
          if (row.branch == branch && row.level) {
            xs.push_back(row.param_value);
            ys.push_back(row.level->energy);
          }
        if (xs.size() < 2) continue;
        const double n = static_cast<double>(xs.size());
        double mx = 0.0, my = 0.0;
        for (std::size_t i = 0; i < xs.size(); ++i) {
          mx += xs[i] / n;
          my += ys[i] / n;
        }
        double sxy = 0.0, sxx = 0.0;
        for (std::size_t i = 0; i < xs.size(); ++i) {
          sxy += (xs[i] - mx) * (ys[i] - my);
          sxx += (xs[i] - mx) * (xs[i] - mx);
        }
        const double slope = sxy / sxx;
        const double intercept = my - slope * mx;
        double fit = 0.0;
        for (std::size_t i = 0; i < xs.size(); ++i)
          fit = std::max(fit, std::abs(ys[i] - (intercept + slope * xs[i])));
        worst = std::max({worst, fit, std::abs(slope + iota)});
        ++fits;
      }
    }
  }
  return make("omega_affinity", 9, worst, 1e-12, worst <= 1e-12 && fits > 0,
              fmt::format("{} Omega sweeps of 41 points; max of fit residual and |slope + iota|",
                          fits));
}

CheckRecord check_flux_sweep(const VerifyOptions& o, Draw draw) {
  (void)o;
  SweepSpec spec;
  spec.parameter = SweepParameter::Flux;
  spec.from = 0.0;
  spec.to = 3.0;
  spec.steps = 121;
  spec.fixed = draw.params(Model::OscillatorInverseSquare);
  spec.fixed.ell = 2;
  const auto base = run_sweep(spec, LevelMethod::Truncation, 1, 2);
  spec.fixed.ell = 3;
  const auto shifted = run_sweep(spec, LevelMethod::Truncation, 1, 2);
  // Two rows per grid point; flux + 1 is 40 grid points later.
  double worst = 0.0;
  int compared = 0;
  for (std::size_t i = 0; i + 80 < base.size(); ++i) {
    const auto& a = base[i];
    const auto& b = shifted[i + 80];
    if (a.level.has_value() != b.level.has_value()) {
      worst = kInf;
      continue;
    }
    if (!a.level) continue;
    worst = std::max(worst, std::abs(a.level->energy - b.level->energy) /
                                std::max(1.0, std::abs(a.level->energy)));
    ++compared;
  }
  return make("flux_sweep_periodicity", 0, worst, 1e-12, worst <= 1e-12,
              fmt::format("{} cells: E(ell, flux) vs E(ell + 1, flux + 1) on a 121-point sweep",
                          compared));
}

CheckRecord check_joint_termination(const VerifyOptions& o) {
  PhysicalParams p;
  p.gamma = 0.0;
  p.ell = 2;
  p.flux = 0.8;
  p.k = 1.0;  // iota = 0.7
  const int n = 1;
  const auto sols = joint_termination_scan(p, n, 0.01, 5.0, o.fast ? 200 : 400);
  const double j = derive_params(p).j;
  double structural = 0.0, oracle_gap = 0.0;
  std::string detail;
  for (const auto& s : sols) {
    const double l = s.spectral * p.beta * p.beta;
    double best = kInf;
    for (int m = 0; m <= n; ++m)
      best = std::min(best, std::abs(l - s.omega * (4.0 * m + 3.0 + 2.0 * j)) / std::abs(l));
    structural = std::max(structural, best);

    PhysicalParams q = p;
    q.omega0 = s.omega0;
    double nearest = kInf;
    for (GridMode mode : {GridMode::Outer, GridMode::Core}) {
      const auto oracle = oracle_eigenvalues(q, default_grid(q, mode, 4000), 4);
      for (double ev : oracle.eigenvalues)
        nearest = std::min(nearest, std::abs(ev - s.spectral) / s.spectral);
    }
    oracle_gap = std::max(oracle_gap, nearest);
    detail += fmt::format("{}S = {:.12g} at omega = {:.12g} (oracle rel. gap {:.2g})",
                          detail.empty() ? "" : "; ", s.spectral, s.omega, nearest);
  }
  const bool ok = !sols.empty() && structural <= 1e-9 && oracle_gap <= 1e-4;
  return make("joint_termination", 0, structural, 1e-9, ok,
              sols.empty() ? "no joint solution found" : detail);
}

CheckRecord check_boundary_insensitivity(const VerifyOptions& o) {
  (void)o;
  double worst = 0.0;
  for (GridMode mode : {GridMode::Flat, GridMode::Outer}) {
    PhysicalParams p;
    p.ell = 1;
    p.flux = 0.3;
    const GridSpec g = default_grid(p, mode, 4000);
    const OracleResult a = oracle_eigenvalues(p, g, 1);
    GridSpec wide = g;
    wide.r_max = a.r_lo + 1.25 * (g.r_max - a.r_lo);
    wide.n_points = 5000;  // same spacing
    const OracleResult b = oracle_eigenvalues(p, wide, 1);
    worst = std::max(worst, std::abs(a.eigenvalues[0] - b.eigenvalues[0]) / a.eigenvalues[0]);
  }
  return make("oracle_boundary_insensitivity", 0, worst, 1e-6, worst <= 1e-6,
              "lowest eigenvalue with r_max raised by 25% at fixed spacing (Flat and Outer)");
}

CheckRecord check_oracle_structure(const VerifyOptions& o) {
  (void)o;
  PhysicalParams p;
  p.ell = -1;
  p.gamma = 0.3;
  double worst = 0.0;
  bool ok = true;
  for (GridMode mode : {GridMode::Flat, GridMode::Outer, GridMode::Core}) {
    const auto r = oracle_eigenvalues(p, default_grid(p, mode, 2000), 6);
    for (std::size_t i = 0; i < r.eigenvalues.size(); ++i) {
      worst = std::max(worst, r.residual_norms[i]);
      if (i > 0 && !(r.eigenvalues[i] > r.eigenvalues[i - 1])) ok = false;
      const auto& v = r.eigenvectors[i];
      double vmax = 0.0;
      for (double x : v) vmax = std::max(vmax, std::abs(x));
      const auto first = std::find_if(v.begin(), v.end(),
                                      [&](double x) { return std::abs(x) > 1e-8 * vmax; });
      if (first == v.end() || *first < 0.0) ok = false;
    }
  }
  return make("oracle_structure", 0, worst, 1e-6, ok && worst <= 1e-6,
              "eigenvalues strictly ascending, eigenvector sign convention, pair residuals");
}

}  // namespace

std::string_view to_string(CheckStatus s) {
  switch (s) {
    case CheckStatus::Pass: return "PASS";
    case CheckStatus::Fail: return "FAIL";
    case CheckStatus::DiscrepantDocumented: break;
  }
  return "DISCREPANT-DOCUMENTED";
}

double time_budget(bool fast) { return fast ? 15.0 : 60.0; }

VerifyReport run_verify(const VerifyOptions& options) {
  const auto start = Clock::now();
  VerifyReport report;
  report.options = options;
  std::uint64_t stream = 0;
  auto draw = [&] { return Draw(options.seed + 7919 * ++stream); };
  auto run = [&](const char* name, int criterion, auto&& fn) {
    const auto t0 = Clock::now();
    CheckRecord c;
    try {
      c = fn();
    } catch (const std::exception& e) {
      c.name = name;
      c.criterion = criterion;
      c.status = CheckStatus::Fail;
      c.measured = kInf;
      c.detail = std::string("error: ") + e.what();
    }
    c.seconds = seconds_since(t0);
    report.checks.push_back(std::move(c));
  };

  run("series_residual", 1, [&] { return check_series_residual(options, draw()); });
  run("series_residual_printed_d3", 1, [&] { return check_printed_d3(options, draw()); });
  run("recurrence_by_substitution", 0, [&] { return check_substitution(options, draw()); });
  run("change_of_variable", 2, [&] { return check_change_of_variable(options, draw()); });
  run("change_of_variable_printed_omega", 2, [&] { return check_printed_omega(options, draw()); });
  run("separation", 3, [&] { return check_separation(options, draw()); });
  run("separation_printed_operator", 3, [&] { return check_printed_operator(options, draw()); });
  run("truncation_roots", 4, [&] { return check_truncation(options, draw()); });
  run("closed_form_audit", 5, [&] { return check_closed_form_audit(options, draw()); });
  run("closed_form_c1_pairing", 5, [&] { return check_c1_pairing(options, draw()); });
  run("closed_form_existence", 5, [&] { return check_emptiness(options, draw()); });
  run("termination_defect_n1", 0, [&] { return check_termination_defect(options, draw()); });
  run("ab_periodicity", 6, [&] { return check_periodicity(options, draw()); });
  run("flat_oracle", 7, [&] { return check_flat_oracle(options); });
  run("oracle_monotone_gamma", 8, [&] { return check_monotone_gamma(options); });
  run("omega_affinity", 9, [&] { return check_omega_affinity(options, draw()); });
  run("flux_sweep_periodicity", 0, [&] { return check_flux_sweep(options, draw()); });
  run("joint_termination", 0, [&] { return check_joint_termination(options); });
  run("oracle_boundary_insensitivity", 0, [&] { return check_boundary_insensitivity(options); });
  run("oracle_structure", 0, [&] { return check_oracle_structure(options); });

  const double elapsed = seconds_since(start);
  const double budget = time_budget(options.fast);
  CheckRecord timing = make("end_to_end_time", 10, elapsed, budget, elapsed <= budget,
                            options.fast ? "fast suite wall time (s)" : "full suite wall time (s)");
  report.checks.push_back(timing);

  report.overall = CheckStatus::Pass;
  for (const auto& c : report.checks)
    if (c.status == CheckStatus::Fail) report.overall = CheckStatus::Fail;
  report.wall_seconds = seconds_since(start);
  return report;
}

nlohmann::json report_to_json(const VerifyReport& report) {
  nlohmann::json checks = nlohmann::json::array();
  for (const auto& c : report.checks) {
    nlohmann::json jc{{"name", c.name},
                      {"criterion", c.criterion},
                      {"status", std::string(to_string(c.status))},
                      {"measured", c.measured},
                      {"tolerance", c.tolerance},
                      {"detail", c.detail},
                      {"seconds", c.seconds}};
    if (!std::isfinite(c.measured)) jc["measured"] = format_number(c.measured);
    if (!c.findings.empty()) jc["findings"] = c.findings;
    checks.push_back(std::move(jc));
  }
  return {{"overall", std::string(to_string(report.overall))},
          {"wall_seconds", report.wall_seconds},
          {"fast", report.options.fast},
          {"seed", report.options.seed},
          {"checks", checks}};
}

std::string report_table(const VerifyReport& report) {
  std::string out;
  for (const auto& c : report.checks)
    out += fmt::format("{:<22} {:>2}  {:<32} measured {:<11.4g} tol {:<9.3g} {:7.3f}s  {}\n",
                       to_string(c.status), c.criterion == 0 ? std::string("-") : std::to_string(c.criterion),
                       c.name, c.measured, c.tolerance, c.seconds, c.detail);
  out += fmt::format("overall {} in {:.2f} s\n", to_string(report.overall), report.wall_seconds);
  return out;
}

}  // namespace heunspec

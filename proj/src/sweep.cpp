#include "heunspec/sweep.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <thread>

#include <fmt/format.h>

#include "heunspec/errors.hpp"
#include "heunspec/io.hpp"

namespace heunspec {
namespace {

void assign(PhysicalParams& p, SweepParameter which, double value) {
  switch (which) {
    case SweepParameter::Flux: p.flux = value; break;
    case SweepParameter::Beta: p.beta = value; break;
    case SweepParameter::Omega: p.Omega = value; break;
    case SweepParameter::Gamma: p.gamma = value; break;
    case SweepParameter::Omega0: p.omega0 = value; break;
    case SweepParameter::K: p.k = value; break;
    case SweepParameter::Ell: p.ell = static_cast<int>(std::lround(value)); break;
  }
}

std::vector<SweepRow> rows_at(const SweepSpec& spec, int index, LevelMethod method, int n) {
  const PhysicalParams p = sweep_point(spec, index);
  const double value = sweep_value(spec, index);
  std::vector<SweepRow> rows;
  auto push = [&](std::string branch, std::optional<EnergyLevel> level) {
    rows.push_back({value, p.ell, std::move(branch), std::move(level)});
  };

  if (method == LevelMethod::ClosedForm) {
    for (Branch b : {Branch::Minus, Branch::Plus}) {
      std::optional<EnergyLevel> level;
      try {
        level = ground_state_closed_form(p, b);
      } catch (const NegativeDiscriminant&) {
      }
      push(b == Branch::Minus ? "minus" : "plus", level);
    }
    return rows;
  }

  const std::vector<EnergyLevel> levels = truncation_solve(p, n);
  if (n == 1) {
    std::optional<EnergyLevel> minus, plus;
    for (const auto& l : levels) {
      if (l.branch == Branch::Minus) minus = l;
      if (l.branch == Branch::Plus) plus = l;
    }
    push("minus", minus);
    push("plus", plus);
    return rows;
  }
  for (int k = 0; k <= n; ++k) {
    std::optional<EnergyLevel> level;
    if (k < static_cast<int>(levels.size())) level = levels[k];
    push("root_" + std::to_string(k), level);
  }
  return rows;
}

}  // namespace

std::string_view to_string(SweepParameter p) {
  switch (p) {
    case SweepParameter::Flux: return "flux";
    case SweepParameter::Beta: return "beta";
    case SweepParameter::Omega: return "Omega";
    case SweepParameter::Gamma: return "gamma";
    case SweepParameter::Omega0: return "omega0";
    case SweepParameter::K: return "k";
    case SweepParameter::Ell: break;
  }
  return "ell";
}

SweepParameter parse_sweep_parameter(std::string_view name) {
  for (SweepParameter p : {SweepParameter::Flux, SweepParameter::Beta, SweepParameter::Omega,
                           SweepParameter::Gamma, SweepParameter::Omega0, SweepParameter::K,
                           SweepParameter::Ell})
    if (name == to_string(p)) return p;
  throw InvalidParameter("unknown sweep parameter '" + std::string(name) + "'");
}

std::string_view to_string(LevelMethod m) {
  return m == LevelMethod::ClosedForm ? "closed-form" : "truncation";
}

LevelMethod parse_level_method(std::string_view name) {
  if (name == "closed-form") return LevelMethod::ClosedForm;
  if (name == "truncation") return LevelMethod::Truncation;
  throw InvalidParameter("unknown method '" + std::string(name) + "'");
}

void validate(const SweepSpec& spec) {
  if (spec.steps < 2) throw InvalidParameter("sweep needs steps >= 2");
  if (!std::isfinite(spec.from) || !std::isfinite(spec.to))
    throw InvalidParameter("sweep range must be finite");
  if (spec.parameter == SweepParameter::Ell) {
    const double stride = (spec.to - spec.from) / (spec.steps - 1);
    if (spec.from != std::round(spec.from) || stride != std::round(stride))
      throw InvalidParameter("ell sweeps must hit integer values only");
  }
  // Every constraint is an interval, so the two ends decide.
  for (int index : {0, spec.steps - 1}) {
    PhysicalParams p = spec.fixed;
    assign(p, spec.parameter, sweep_value(spec, index));
    validate(p);
  }
}

double sweep_value(const SweepSpec& spec, int index) {
  if (index == spec.steps - 1) return spec.to;
  return spec.from + (spec.to - spec.from) * index / (spec.steps - 1);
}

PhysicalParams sweep_point(const SweepSpec& spec, int index) {
  PhysicalParams p = spec.fixed;
  assign(p, spec.parameter, sweep_value(spec, index));
  return p;
}

std::vector<SweepRow> run_sweep(const SweepSpec& spec, LevelMethod method, int n, int jobs) {
  validate(spec);
  if (n < 1) throw InvalidParameter("sweep needs n >= 1");
  if (method == LevelMethod::ClosedForm && n != 1)
    throw InvalidParameter("closed-form levels exist for n = 1 only");

  std::vector<std::vector<SweepRow>> per_point(spec.steps);
  const int workers = std::clamp(jobs, 1, spec.steps);
  std::vector<std::exception_ptr> failures(workers);
  auto work = [&](int w) {
    try {
      for (int i = w; i < spec.steps; i += workers) per_point[i] = rows_at(spec, i, method, n);
    } catch (...) {
      failures[w] = std::current_exception();
    }
  };
  if (workers == 1) {
    work(0);
  } else {
    std::vector<std::thread> pool;
    for (int w = 0; w < workers; ++w) pool.emplace_back(work, w);
    for (auto& t : pool) t.join();
  }
  for (const auto& f : failures)
    if (f) std::rethrow_exception(f);

  std::vector<SweepRow> rows;
  for (auto& block : per_point)
    for (auto& row : block) rows.push_back(std::move(row));
  return rows;
}

std::string sweep_csv(const std::vector<SweepRow>& rows) {
  std::string out = "param_value,ell,branch,energy,spectral,discriminant,termination_defect\n";
  for (const auto& row : rows) {
    const auto& l = row.level;
    out += fmt::format("{},{},{},{},{},{},{}\n", format_number(row.param_value), row.ell,
                       row.branch, format_optional(l ? std::optional(l->energy) : std::nullopt),
                       format_optional(l ? std::optional(l->spectral) : std::nullopt),
                       format_optional(l ? std::optional(l->discriminant) : std::nullopt),
                       format_optional(l ? std::optional(l->termination_defect) : std::nullopt));
  }
  return out;
}

}  // namespace heunspec

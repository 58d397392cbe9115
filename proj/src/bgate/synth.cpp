#include "bgate/synth.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "bgate/parallel.hpp"
#include "bgate/stats.hpp"

namespace bgate {

const char* family_kind_name(FamilyKind kind) {
  switch (kind) {
    case FamilyKind::Boltzmann: return "boltzmann";
    case FamilyKind::Softmax: return "softmax";
    case FamilyKind::Uniform: return "uniform";
    case FamilyKind::ProbitBinary: return "probit-binary";
    case FamilyKind::CrossingLogOdds: return "crossing-logodds";
    case FamilyKind::ScaledConditioning: return "scaled-conditioning-breaker";
  }
  return "?";
}

FamilyKind family_kind_from_name(const std::string& name) {
  if (name == "boltzmann") return FamilyKind::Boltzmann;
  if (name == "softmax") return FamilyKind::Softmax;
  if (name == "uniform") return FamilyKind::Uniform;
  if (name == "probit-binary") return FamilyKind::ProbitBinary;
  if (name == "crossing-logodds") return FamilyKind::CrossingLogOdds;
  if (name == "scaled-conditioning-breaker") return FamilyKind::ScaledConditioning;
  fail(ErrorCode::InvalidArgument, "unknown family kind '" + name + "'");
}

namespace {

std::vector<double> softmax_cells(const std::map<StateId, double>& energies, double inv_kappa,
                                  const Menu& menu) {
  std::vector<double> w(menu.members.size());
  double max_w = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < menu.members.size(); ++i) {
    auto it = energies.find(menu.members[i]);
    if (it == energies.end()) {
      fail(ErrorCode::LookupError, "no energy assigned to state '" + menu.members[i] + "'");
    }
    w[i] = -it->second * inv_kappa;
    max_w = std::max(max_w, w[i]);
  }
  double z = 0.0;
  for (auto& x : w) {
    x = std::exp(x - max_w);
    z += x;
  }
  for (auto& x : w) x /= z;
  return w;
}

}  // namespace

std::vector<double> cell_probabilities(const FamilySpec& spec, double t, const Menu& menu) {
  if (!(t > 0.0)) {
    fail(ErrorCode::InvalidArgument, "temperature must be positive");
  }
  const std::size_t m = menu.members.size();
  switch (spec.kind) {
    case FamilyKind::Boltzmann:
      return softmax_cells(spec.energies, 1.0 / (spec.k * t), menu);
    case FamilyKind::Softmax:
      return softmax_cells(spec.energies, 1.0 / spec.kappa.value(t), menu);
    case FamilyKind::Uniform:
      return std::vector<double>(m, 1.0 / static_cast<double>(m));
    case FamilyKind::ProbitBinary: {
      if (m == 1) return {1.0};
      if (m != 2) {
        fail(ErrorCode::InvalidArgument,
             "probit-binary families support only binary menus, got '" + menu.id + "'");
      }
      double ea = spec.energies.at(menu.members[0]);
      double eb = spec.energies.at(menu.members[1]);
      double p = normal_cdf((eb - ea) / t);
      return {p, 1.0 - p};
    }
    case FamilyKind::CrossingLogOdds: {
      if (m == 1) return {1.0};
      if (m != 2) {
        fail(ErrorCode::InvalidArgument,
             "crossing-logodds families support only binary menus, got '" + menu.id + "'");
      }
      double w = spec.c0 - spec.c1 * t;  // ln r_t(first, second)
      double p = 1.0 / (1.0 + std::exp(-w));
      return {p, 1.0 - p};
    }
    case FamilyKind::ScaledConditioning: {
      double kappa = spec.k * t * (m == 2 ? spec.scale : 1.0);
      return softmax_cells(spec.energies, 1.0 / kappa, menu);
    }
  }
  fail(ErrorCode::InvalidArgument, "unreachable");
}

namespace {

void check_spec(const FamilySpec& spec) {
  if (spec.grid.empty()) {
    fail(ErrorCode::InvalidArgument, "family spec needs a temperature grid");
  }
  if (spec.menus.empty()) {
    fail(ErrorCode::InvalidArgument, "family spec needs at least one menu");
  }
  if ((spec.kind == FamilyKind::CrossingLogOdds) && !(spec.c0 > 0.0 && spec.c1 > 0.0)) {
    fail(ErrorCode::InvalidArgument, "crossing-logodds requires c0 > 0 and c1 > 0");
  }
}

}  // namespace

EmpiricalRSF exact_family(const FamilySpec& spec) {
  check_spec(spec);
  std::vector<FrequencyRecord> records;
  for (double t : spec.grid) {
    std::string token = format_temperature(t);
    for (const auto& menu : spec.menus) {
      auto probs = cell_probabilities(spec, t, menu);
      for (std::size_t i = 0; i < menu.members.size(); ++i) {
        records.push_back({token, menu.id, menu.members[i], probs[i], -1});
      }
    }
  }
  return EmpiricalRSF::from_frequencies(records);
}

EmpiricalRSF sample_family(const FamilySpec& spec) {
  check_spec(spec);
  if (spec.n < 1) {
    fail(ErrorCode::InvalidArgument, "sample_family requires n >= 1");
  }
  struct GroupTask {
    double t;
    std::string token;
    const Menu* menu;
    std::vector<long long> counts;
  };
  std::vector<GroupTask> tasks;
  for (double t : spec.grid) {
    std::string token = format_temperature(t);
    for (const auto& menu : spec.menus) {
      tasks.push_back({t, token, &menu, {}});
    }
  }
  parallel_for(tasks.size(), [&](std::size_t idx) {
    GroupTask& task = tasks[idx];
    auto probs = cell_probabilities(spec, task.t, *task.menu);
    std::vector<double> cdf(probs.size());
    double acc = 0.0;
    for (std::size_t i = 0; i < probs.size(); ++i) {
      acc += probs[i];
      cdf[i] = acc;
    }
    cdf.back() = 1.0;
    task.counts.assign(probs.size(), 0);
    SplitMix64 rng(SplitMix64::derive(spec.seed, idx));
    for (long long d = 0; d < spec.n; ++d) {
      double u = rng.uniform();
      std::size_t j = 0;
      while (u >= cdf[j]) ++j;
      ++task.counts[j];
    }
  });
  std::vector<CountRecord> records;
  for (const auto& task : tasks) {
    for (std::size_t i = 0; i < task.menu->members.size(); ++i) {
      records.push_back({task.token, task.menu->id, task.menu->members[i], task.counts[i], -1});
    }
  }
  return EmpiricalRSF::from_counts(records);
}

EmpiricalRSF synthesize(const FamilySpec& spec) {
  return spec.n == 0 ? exact_family(spec) : sample_family(spec);
}

}  // namespace bgate

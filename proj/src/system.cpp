#include "gelkit/system.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>

#include "gelkit/errors.hpp"

namespace gelkit {

ParticleSystem ParticleSystem::monodisperse(std::size_t n, Cutoff cut, double alpha) {
  if (n == 0) throw ConfigError("monodisperse system needs at least one particle");
  const std::vector<double> ones(n, 1.0);
  return ParticleSystem(ones, cut, alpha);
}

ParticleSystem ParticleSystem::from_masses(std::span<const double> masses, Cutoff cut,
                                           double alpha) {
  if (masses.empty()) throw ConfigError("particle system needs at least one mass");
  for (double x : masses) {
    if (!(x > 0.0) || !std::isfinite(x)) throw ConfigError("particle masses must be finite and positive");
  }
  return ParticleSystem(masses, cut, alpha);
}

ParticleSystem::ParticleSystem(std::span<const double> masses, Cutoff cut, double alpha)
    : cutoff_(cut), alpha_(alpha) {
  if (!(cut.a > 0.0)) throw ConfigError("cutoff must be positive");
  if (!(alpha > 0.0 && alpha <= 1.0)) throw ConfigError("alpha must lie in (0,1]");
  std::vector<WeightTree<3>::Weights> leaves;
  leaves.reserve(masses.size());
  for (double x : masses) {
    total_mass_ += x;
    largest_ = std::max(largest_, x);
    if (cutoff_.is_active(x)) {
      slot_mass_.push_back(x);
      leaves.push_back(weights_of(x));
      ++active_count_;
    } else {
      inert_.push_back(x);
    }
  }
  tree_.assign(leaves);
}

WeightTree<3>::Weights ParticleSystem::weights_of(double x) const {
  if (alpha_ == 1.0) return {x, x, x * x};
  const double xa = std::pow(x, alpha_);
  return {x, xa, x * xa};
}

std::vector<Slot> ParticleSystem::active_slots() const {
  std::vector<Slot> out;
  out.reserve(active_count_);
  for (Slot s = 0; s < slot_mass_.size(); ++s)
    if (slot_mass_[s] > 0.0) out.push_back(s);
  return out;
}

Slot ParticleSystem::draw_by_mass(double u) const {
  if (active_count_ == 0) throw LogicError("draw from a system without active particles");
  return tree_.find(0, u * tree_.total(0));
}

Slot ParticleSystem::draw_by_mass_alpha(double u) const {
  if (active_count_ == 0) throw LogicError("draw from a system without active particles");
  return tree_.find(1, u * tree_.total(1));
}

MergeOutcome ParticleSystem::coalesce(Slot i, Slot j) {
  if (i == j) throw LogicError("a particle cannot coalesce with itself");
  if (!is_occupied(i) || !is_occupied(j)) throw LogicError("coalesce requires two active particles");
  const double merged = slot_mass_[i] + slot_mass_[j];
  slot_mass_[j] = 0.0;
  tree_.set(j, {0.0, 0.0, 0.0});
  --active_count_;
  largest_ = std::max(largest_, merged);
  if (cutoff_.is_active(merged)) {
    slot_mass_[i] = merged;
    tree_.set(i, weights_of(merged));
    return {i, merged, false};
  }
  slot_mass_[i] = 0.0;
  tree_.set(i, {0.0, 0.0, 0.0});
  --active_count_;
  inert_.push_back(merged);
  return {i, merged, true};
}

double ParticleSystem::second_largest() const {
  double first = 0.0;
  double second = 0.0;
  for_each_mass([&](double x) {
    if (x > first) {
      second = first;
      first = x;
    } else if (x > second) {
      second = x;
    }
  });
  return second;
}

std::vector<double> ParticleSystem::masses() const {
  std::vector<double> out;
  out.reserve(size());
  for_each_mass([&](double x) { out.push_back(x); });
  return out;
}

std::vector<double> ParticleSystem::sorted_masses() const {
  auto out = masses();
  std::sort(out.begin(), out.end(), std::greater<>());
  return out;
}

// ---------------------------------------------------------------------------

namespace {

struct KindInfo {
  ObservableKind kind;
  std::string_view name;
  int params;
};

constexpr KindInfo kKinds[] = {
    {ObservableKind::CountAtMass, "count_at_mass", 1},
    {ObservableKind::MassFractionLargest, "mass_fraction_largest", 0},
    {ObservableKind::TailMass, "tail_mass", 1},
    {ObservableKind::SecondTail, "second_tail", 1},
    {ObservableKind::Moment, "moment", 1},
    {ObservableKind::ActiveMassFraction, "active_mass_fraction", 0},
    {ObservableKind::PairTail, "pair_tail", 2},
    {ObservableKind::InertCount, "inert_count", 0},
};

const KindInfo& info(ObservableKind kind) {
  for (const auto& k : kKinds)
    if (k.kind == kind) return k;
  throw ConfigError("unknown observable kind");
}

std::string format_param(double v) {
  char buf[64];
  if (v == std::floor(v) && std::fabs(v) < 1e15) {
    std::snprintf(buf, sizeof buf, "%.0f", v);
  } else {
    std::snprintf(buf, sizeof buf, "%.17g", v);
  }
  return buf;
}

double parse_param(std::string_view text) {
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc() || ptr != text.data() + text.size() || !std::isfinite(v)) {
    throw ConfigError("bad observable parameter '" + std::string(text) + "'");
  }
  return v;
}

}  // namespace

ObservableSpec ObservableSpec::parse(std::string_view text) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  while (true) {
    const auto pos = text.find(':', start);
    parts.push_back(text.substr(start, pos == std::string_view::npos ? pos : pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  for (const auto& k : kKinds) {
    if (parts[0] != k.name) continue;
    if (static_cast<int>(parts.size()) - 1 != k.params) {
      throw ConfigError("observable '" + std::string(k.name) + "' takes " +
                        std::to_string(k.params) + " parameter(s)");
    }
    ObservableSpec spec{k.kind};
    if (k.params >= 1) spec.param = parse_param(parts[1]);
    if (k.params >= 2) spec.param2 = parse_param(parts[2]);
    if (spec.kind == ObservableKind::CountAtMass && !(spec.param > 0.0)) {
      throw ConfigError("count_at_mass needs a positive mass");
    }
    if (spec.kind == ObservableKind::PairTail && !(spec.param < spec.param2)) {
      throw ConfigError("pair_tail needs b < a");
    }
    return spec;
  }
  throw ConfigError("unknown observable '" + std::string(text) + "'");
}

std::string ObservableSpec::name() const {
  const auto& k = info(kind);
  std::string out(k.name);
  if (k.params >= 1) out += ":" + format_param(param);
  if (k.params >= 2) out += ":" + format_param(param2);
  return out;
}

double observe(const ParticleSystem& sys, const ObservableSpec& spec) {
  const double m = sys.total_mass();
  switch (spec.kind) {
    case ObservableKind::CountAtMass: {
      std::size_t hits = 0;
      sys.for_each_mass([&](double x) { hits += (x == spec.param); });
      return static_cast<double>(hits) / m;
    }
    case ObservableKind::MassFractionLargest:
      return sys.largest() / m;
    case ObservableKind::TailMass: {
      double s = 0.0;
      sys.for_each_mass([&](double x) { s += x >= spec.param ? x : 0.0; });
      return s / m;
    }
    case ObservableKind::SecondTail: {
      double s = 0.0;
      sys.for_each_mass([&](double x) { s += x >= spec.param ? x : 0.0; });
      if (sys.largest() >= spec.param) s -= sys.largest();
      return s / m;
    }
    case ObservableKind::Moment: {
      double s = 0.0;
      sys.for_each_mass([&](double x) { s += std::pow(x, spec.param); });
      return s / m;
    }
    case ObservableKind::ActiveMassFraction:
      return sys.sum_mass_active() / m;
    case ObservableKind::PairTail: {
      double s1 = 0.0;
      double s2 = 0.0;
      sys.for_each_mass([&](double x) {
        if (x >= spec.param && x <= spec.param2) {
          s1 += x;
          s2 += x * x;
        }
      });
      return (s1 * s1 - s2) / (m * m);
    }
    case ObservableKind::InertCount:
      return static_cast<double>(sys.inert_count());
  }
  throw ConfigError("unknown observable kind");
}

}  // namespace gelkit

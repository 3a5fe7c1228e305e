#include "povsim/mrf.hpp"

#include "povsim/logspace.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>
#include <utility>

namespace povsim {

using logspace::kNegInf;
using logspace::log_add;
using logspace::safe_log;

std::string Variable::name() const {
  return is_latent() ? std::string("Z") : "X" + std::to_string(index() + 1);
}

void FactorTable::validate() const {
  bool any_positive = false;
  for (const auto &row : values) {
    for (double v : row) {
      if (!(v >= 0.0) || !std::isfinite(v)) {
        throw ConfigError("factor (" + first.name() + "," + second.name() +
                          ") has a negative or non-finite entry");
      }
      any_positive = any_positive || v > 0.0;
    }
  }
  if (!any_positive) {
    throw ConfigError("factor (" + first.name() + "," + second.name() + ") is all zero");
  }
}

void FactorTable::scale(double c) {
  for (auto &row : values) {
    for (double &v : row) v *= c;
  }
}

Evidence Evidence::full(std::span<const std::uint8_t> x) {
  Evidence e(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) e.observe(i, x[i]);
  return e;
}

Evidence &Evidence::observe(std::size_t indicator, int value) {
  if (indicator >= values_.size()) {
    throw ConfigError("evidence on X" + std::to_string(indicator + 1) + " but the model has " +
                      std::to_string(values_.size()) + " indicators");
  }
  if (value != 0 && value != 1) {
    throw ConfigError("evidence values must be 0 or 1, got " + std::to_string(value));
  }
  values_[indicator] = static_cast<std::uint8_t>(value);
  return *this;
}

std::string Evidence::to_string() const {
  std::string s = "{";
  bool first = true;
  for (std::size_t i = 0; i < values_.size(); ++i) {
    if (!values_[i]) continue;
    if (!first) s += ", ";
    s += "X" + std::to_string(i + 1) + "=" + std::to_string(*values_[i]);
    first = false;
  }
  return s + "}";
}

UndefinedPosterior::UndefinedPosterior(Evidence evidence)
    : Error("undefined posterior: both P(Z=0, e) and P(Z=1, e) are zero for e = " +
            evidence.to_string()),
      evidence_(std::move(evidence)) {}

MrfModel::MrfModel(std::vector<FactorTable> star, std::vector<FactorTable> chain,
                   std::size_t trained_on, double epsilon_used)
    : star_(std::move(star)), chain_(std::move(chain)), trained_on_(trained_on),
      epsilon_used_(epsilon_used) {
  if (star_.size() < 2) throw ConfigError("an MRF needs at least 2 indicators");
  if (chain_.size() + 1 != star_.size()) {
    throw ConfigError("expected " + std::to_string(star_.size() - 1) + " chain factors, got " +
                      std::to_string(chain_.size()));
  }
  for (std::size_t i = 0; i < star_.size(); ++i) {
    if (!(star_[i].first == Variable::latent() && star_[i].second == Variable::indicator(i))) {
      throw ConfigError("star factor " + std::to_string(i + 1) + " must be over (Z,X" +
                        std::to_string(i + 1) + ")");
    }
    star_[i].validate();
  }
  for (std::size_t i = 0; i < chain_.size(); ++i) {
    if (!(chain_[i].first == Variable::indicator(i) &&
          chain_[i].second == Variable::indicator(i + 1))) {
      throw ConfigError("chain factor " + std::to_string(i + 1) + " must be over (X" +
                        std::to_string(i + 1) + ",X" + std::to_string(i + 2) + ")");
    }
    chain_[i].validate();
  }

  auto to_log = [](const FactorTable &f) {
    std::array<std::array<double, 2>, 2> l{};
    for (int a = 0; a < 2; ++a) {
      for (int b = 0; b < 2; ++b) l[a][b] = safe_log(f(a, b));
    }
    return l;
  };
  log_star_.reserve(star_.size());
  for (const auto &f : star_) log_star_.push_back(to_log(f));
  log_chain_.reserve(chain_.size());
  for (const auto &f : chain_) log_chain_.push_back(to_log(f));
}

MrfModel MrfModel::uniform(std::size_t d) {
  if (d < 2) throw ConfigError("an MRF needs at least 2 indicators");
  std::vector<FactorTable> star;
  std::vector<FactorTable> chain;
  for (std::size_t i = 0; i < d; ++i) {
    star.push_back({Variable::latent(), Variable::indicator(i), {{{1.0, 1.0}, {1.0, 1.0}}}});
  }
  for (std::size_t i = 0; i + 1 < d; ++i) {
    chain.push_back(
        {Variable::indicator(i), Variable::indicator(i + 1), {{{1.0, 1.0}, {1.0, 1.0}}}});
  }
  return MrfModel(std::move(star), std::move(chain));
}

double MrfModel::log_mass(int z, const Evidence &evidence) const {
  if (evidence.size() != d()) {
    throw ConfigError("evidence covers " + std::to_string(evidence.size()) +
                      " indicators, model has " + std::to_string(d()));
  }
  auto allowed = [&](std::size_t i, int v) { return !evidence[i] || *evidence[i] == v; };

  // alpha[b] = log of the mass of X_1..X_i summed out with X_i = b.
  std::array<double, 2> alpha{};
  for (int b = 0; b < 2; ++b) alpha[b] = allowed(0, b) ? log_star_[0][z][b] : kNegInf;

  for (std::size_t i = 1; i < d(); ++i) {
    std::array<double, 2> next{kNegInf, kNegInf};
    for (int b = 0; b < 2; ++b) {
      if (!allowed(i, b)) continue;
      const double in = log_add(alpha[0] + log_chain_[i - 1][0][b],
                                alpha[1] + log_chain_[i - 1][1][b]);
      next[b] = in + log_star_[i][z][b];
    }
    alpha = next;
  }
  return log_add(alpha[0], alpha[1]);
}

MrfModel fit(const Dataset &train, const SimConfig &cfg) {
  if (train.empty()) throw FitError("cannot fit an MRF on an empty training set");
  const std::size_t d = train.n_indicators();
  if (d < 2) throw FitError("training records need at least 2 indicators");

  std::vector<std::array<std::array<std::uint64_t, 2>, 2>> star_counts(d);
  std::vector<std::array<std::array<std::uint64_t, 2>, 2>> chain_counts(d - 1);
  for (const auto &r : train.records) {
    if (r.x.size() != d) {
      throw FitError("record " + std::to_string(r.id) + " has " + std::to_string(r.x.size()) +
                     " indicators, expected " + std::to_string(d));
    }
    for (std::size_t i = 0; i < d; ++i) ++star_counts[i][r.z][r.x[i]];
    for (std::size_t i = 0; i + 1 < d; ++i) ++chain_counts[i][r.x[i]][r.x[i + 1]];
  }

  const double n = static_cast<double>(train.size());
  const double eps = cfg.smoothing_epsilon;
  auto to_table = [&](Variable a, Variable b, const auto &counts) {
    FactorTable f{a, b, {}};
    for (int u = 0; u < 2; ++u) {
      for (int v = 0; v < 2; ++v) f.values[u][v] = static_cast<double>(counts[u][v]) / n + eps;
    }
    return f;
  };

  std::vector<FactorTable> star;
  std::vector<FactorTable> chain;
  star.reserve(d);
  chain.reserve(d - 1);
  for (std::size_t i = 0; i < d; ++i) {
    star.push_back(to_table(Variable::latent(), Variable::indicator(i), star_counts[i]));
  }
  for (std::size_t i = 0; i + 1 < d; ++i) {
    chain.push_back(to_table(Variable::indicator(i), Variable::indicator(i + 1), chain_counts[i]));
  }
  return MrfModel(std::move(star), std::move(chain), train.size(), eps);
}

double posterior_z(const MrfModel &model, const Evidence &evidence) {
  const double l0 = model.log_mass(0, evidence);
  const double l1 = model.log_mass(1, evidence);
  if (l0 == kNegInf && l1 == kNegInf) throw UndefinedPosterior(evidence);
  return logspace::normalize_pair(l0, l1);
}

bool classify_mrf(const MrfModel &model, std::span<const std::uint8_t> x, const SimConfig &cfg) {
  return posterior_z(model, Evidence::full(x)) >= cfg.posterior_threshold;
}

void dump_model(const MrfModel &model, std::ostream &out) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6f", model.epsilon_used());
  out << "mrf d=" << model.d() << " trained_on=" << model.trained_on() << " epsilon=" << buf
      << '\n';
  auto print = [&](const char *kind, std::size_t i, const FactorTable &f) {
    out << kind << ' ' << i + 1 << " (" << f.first.name() << ',' << f.second.name() << ")\n";
    for (int a = 0; a < 2; ++a) {
      std::snprintf(buf, sizeof buf, "  %.6f %.6f\n", f(a, 0), f(a, 1));
      out << buf;
    }
  };
  for (std::size_t i = 0; i < model.star_factors().size(); ++i) {
    print("star", i, model.star_factors()[i]);
  }
  for (std::size_t i = 0; i < model.chain_factors().size(); ++i) {
    print("chain", i, model.chain_factors()[i]);
  }
}

} // namespace povsim

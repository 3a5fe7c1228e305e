#pragma once

// Pairwise Markov random field over a latent binary status Z and D binary
// indicators X_1..X_D. Edges are the star (Z, X_i) for every i plus the
// chain (X_i, X_{i+1}); the joint is
//
//   p(z, x) ∝ prod_i star_i(z, x_i) * prod_i chain_i(x_i, x_{i+1}).
//
// Conditioned on Z the indicators form a chain, so P(Z | evidence) is exact
// with one forward pass per value of Z (the junction tree of cliques
// {Z, X_i, X_{i+1}} has width 2).

#include "povsim/config.hpp"
#include "povsim/error.hpp"
#include "povsim/synthgen.hpp"

#include <array>
#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace povsim {

/// Node identifier: the latent status or a 0-based indicator index.
class Variable {
public:
  static constexpr Variable latent() noexcept { return Variable(-1); }
  static constexpr Variable indicator(std::size_t i) noexcept {
    return Variable(static_cast<long>(i));
  }

  constexpr bool is_latent() const noexcept { return id_ < 0; }
  /// 0-based indicator index. Meaningless for the latent node.
  constexpr std::size_t index() const noexcept {
    return static_cast<std::size_t>(id_);
  }
  /// "Z" or "X<i+1>".
  std::string name() const;

  friend constexpr bool operator==(Variable, Variable) = default;

private:
  explicit constexpr Variable(long id) noexcept : id_(id) {}
  long id_;
};

/// Nonnegative 2x2 potential; values[a][b] is the entry for first = a,
/// second = b.
struct FactorTable {
  Variable first = Variable::latent();
  Variable second = Variable::latent();
  std::array<std::array<double, 2>, 2> values{};

  double operator()(int a, int b) const noexcept { return values[a][b]; }

  /// Throws ConfigError unless every entry is finite, >= 0, and one is > 0.
  void validate() const;
  void scale(double c);
};

/// Observed indicator values; Z is never observable.
class Evidence {
public:
  explicit Evidence(std::size_t d) : values_(d) {}

  /// Every indicator observed.
  static Evidence full(std::span<const std::uint8_t> x);

  /// Throws ConfigError for an out-of-range index or a non-binary value.
  Evidence &observe(std::size_t indicator, int value);

  std::size_t size() const noexcept { return values_.size(); }
  const std::optional<std::uint8_t> &operator[](std::size_t i) const {
    return values_[i];
  }

  /// e.g. "{X1=1, X3=0}".
  std::string to_string() const;

private:
  std::vector<std::optional<std::uint8_t>> values_;
};

/// Both unnormalized masses P~(Z=0, e) and P~(Z=1, e) are zero.
class UndefinedPosterior : public Error {
public:
  explicit UndefinedPosterior(Evidence evidence);
  const Evidence &evidence() const noexcept { return evidence_; }

private:
  Evidence evidence_;
};

class MrfModel {
public:
  /// star.size() = D >= 2 with star[i] over (Z, X_i); chain.size() = D - 1
  /// with chain[i] over (X_i, X_{i+1}). Throws ConfigError otherwise.
  MrfModel(std::vector<FactorTable> star, std::vector<FactorTable> chain,
           std::size_t trained_on = 0, double epsilon_used = 0.0);

  /// Every entry of every factor equal to 1.
  static MrfModel uniform(std::size_t d);

  std::size_t d() const noexcept { return star_.size(); }
  const std::vector<FactorTable> &star_factors() const noexcept { return star_; }
  const std::vector<FactorTable> &chain_factors() const noexcept { return chain_; }
  std::size_t trained_on() const noexcept { return trained_on_; }
  double epsilon_used() const noexcept { return epsilon_used_; }

  /// log P~(Z=z, evidence), summing unobserved indicators out. -inf when
  /// the evidence is impossible under Z=z.
  double log_mass(int z, const Evidence &evidence) const;

private:
  std::vector<FactorTable> star_;
  std::vector<FactorTable> chain_;
  // log of every entry, laid out as [i][a][b]
  std::vector<std::array<std::array<double, 2>, 2>> log_star_;
  std::vector<std::array<std::array<double, 2>, 2>> log_chain_;
  std::size_t trained_on_;
  double epsilon_used_;
};

/// Potentials are joint relative frequencies in `train` plus cfg's
/// smoothing_epsilon on every cell. Throws FitError on an empty or ragged
/// training set.
MrfModel fit(const Dataset &train, const SimConfig &cfg);

/// P(Z=1 | evidence). Throws UndefinedPosterior when both masses vanish and
/// ConfigError when the evidence length differs from the model's D.
double posterior_z(const MrfModel &model, const Evidence &evidence);

/// posterior_z(full evidence) >= posterior_threshold.
bool classify_mrf(const MrfModel &model, std::span<const std::uint8_t> x,
                  const SimConfig &cfg);

/// Plain-text dump: star factors 1..D then chain factors 1..D-1, six
/// decimals per entry.
void dump_model(const MrfModel &model, std::ostream &out);

} // namespace povsim

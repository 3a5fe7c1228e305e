#include "povsim/synthgen.hpp"

#include "povsim/error.hpp"

#include <utility>

namespace povsim {

std::vector<std::uint8_t> Dataset::truth() const {
  std::vector<std::uint8_t> z;
  z.reserve(records.size());
  for (const auto &r : records) z.push_back(r.z);
  return z;
}

Record sample_individual(RngStream &rng, const SimConfig &cfg) {
  Record r;
  r.z = rng.bernoulli(cfg.p_poor) ? 1 : 0;
  const double p = r.z ? cfg.p_dep_poor : cfg.p_dep_nonpoor;
  r.x.resize(cfg.n_indicators);
  for (auto &xi : r.x) xi = rng.bernoulli(p) ? 1 : 0;
  return r;
}

void inject_correlation(std::span<std::uint8_t> x, RngStream &rng, const SimConfig &cfg) {
  for (std::size_t i = 0; i + 1 < x.size(); ++i) {
    if (rng.uniform() < cfg.match_prob) x[i + 1] = x[i];
  }
}

Dataset generate_population(const SimConfig &cfg, RngStream &rng, Provenance provenance) {
  Dataset data;
  data.provenance = provenance;
  data.records.reserve(cfg.n_individuals);
  for (std::size_t n = 0; n < cfg.n_individuals; ++n) {
    Record r = sample_individual(rng, cfg);
    inject_correlation(r.x, rng, cfg);
    r.id = n + 1;
    data.records.push_back(std::move(r));
  }
  return data;
}

Dataset generate_population(const SimConfig &cfg, std::uint64_t run_index) {
  RngStream rng = derive_stream(cfg.base_seed, run_index);
  return generate_population(cfg, rng, Provenance{cfg.base_seed, run_index});
}

std::pair<Dataset, Dataset> split(const Dataset &data, RngStream &rng, const SimConfig &cfg) {
  if (data.empty()) throw ConfigError("cannot split an empty dataset");

  std::vector<std::size_t> order(data.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  for (std::size_t i = order.size() - 1; i > 0; --i) {
    std::swap(order[i], order[rng.below(i + 1)]);
  }

  const std::size_t n_train = cfg.train_size(data.size());
  Dataset train;
  Dataset test;
  train.provenance = test.provenance = data.provenance;
  train.records.reserve(n_train);
  test.records.reserve(data.size() - n_train);
  for (std::size_t i = 0; i < order.size(); ++i) {
    (i < n_train ? train : test).records.push_back(data.records[order[i]]);
  }
  return {std::move(train), std::move(test)};
}

} // namespace povsim

#include "mjpslice/rng.hpp"

#include <cmath>
#include <stdexcept>

namespace mjps {

std::uint64_t splitmix64(std::uint64_t& state) {
  state += 0x9e3779b97f4a7c15ULL;
  std::uint64_t z = state;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

std::uint64_t derive_seed(std::uint64_t seed, std::initializer_list<std::uint64_t> tags) {
  std::uint64_t s = seed;
  std::uint64_t out = splitmix64(s);
  for (std::uint64_t t : tags) {
    s ^= t * 0xd6e8feb86659fd93ULL;
    out = splitmix64(s);
  }
  return out;
}

Rng::Rng(std::uint64_t seed) : gen_(seed) {}

Rng::Rng(std::uint64_t seed, std::initializer_list<std::uint64_t> tags)
    : gen_(derive_seed(seed, tags)) {}

double Rng::uniform() {
  // 53-bit mantissa; shift into (0,1) so log() is always finite.
  const std::uint64_t r = gen_() >> 11;
  return (static_cast<double>(r) + 0.5) * (1.0 / 9007199254740992.0);
}

double Rng::uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

std::uint64_t Rng::uniform_int(std::uint64_t n) {
  // Rejection to avoid modulo bias.
  const std::uint64_t limit = std::uint64_t(-1) - std::uint64_t(-1) % n;
  std::uint64_t r;
  do {
    r = gen_();
  } while (r >= limit);
  return r % n;
}

bool Rng::bernoulli(double prob) { return uniform() < prob; }

double Rng::exponential(double rate) { return -std::log(uniform()) / rate; }

double Rng::normal() {
  // Marsaglia polar method, one value per call (the pair's twin is dropped to
  // keep the stream position a pure function of the call count).
  double u, v, s;
  do {
    u = 2.0 * uniform() - 1.0;
    v = 2.0 * uniform() - 1.0;
    s = u * u + v * v;
  } while (s >= 1.0 || s == 0.0);
  return u * std::sqrt(-2.0 * std::log(s) / s);
}

double Rng::gamma_shape_ge1(double shape) {
  // Marsaglia-Tsang squeeze.
  const double d = shape - 1.0 / 3.0;
  const double c = 1.0 / std::sqrt(9.0 * d);
  for (;;) {
    double x, v;
    do {
      x = normal();
      v = 1.0 + c * x;
    } while (v <= 0.0);
    v = v * v * v;
    const double u = uniform();
    if (u < 1.0 - 0.0331 * x * x * x * x) return d * v;
    if (std::log(u) < 0.5 * x * x + d * (1.0 - v + std::log(v))) return d * v;
  }
}

double Rng::gamma(double shape, double rate) {
  if (!(shape > 0.0) || !(rate > 0.0)) throw std::invalid_argument("gamma: shape and rate must be positive");
  if (shape >= 1.0) return gamma_shape_ge1(shape) / rate;
  const double g = gamma_shape_ge1(shape + 1.0);
  return g * std::pow(uniform(), 1.0 / shape) / rate;
}

std::uint64_t Rng::poisson(double mean) {
  if (mean < 0.0) throw std::invalid_argument("poisson: negative mean");
  std::uint64_t total = 0;
  // Knuth's product method underflows past ~700; draw in chunks.
  while (mean > 500.0) {
    double chunk = 500.0;
    const double limit = std::exp(-chunk);
    std::uint64_t k = 0;
    double prod = 1.0;
    for (;;) {
      prod *= uniform();
      if (prod <= limit) break;
      ++k;
    }
    total += k;
    mean -= chunk;
  }
  if (mean > 0.0) {
    const double limit = std::exp(-mean);
    std::uint64_t k = 0;
    double prod = 1.0;
    for (;;) {
      prod *= uniform();
      if (prod <= limit) break;
      ++k;
    }
    total += k;
  }
  return total;
}

std::size_t Rng::categorical(const std::vector<double>& weights) {
  double total = 0.0;
  for (double w : weights) total += w;
  if (!(total > 0.0)) throw std::invalid_argument("categorical: total weight must be positive");
  double u = uniform() * total;
  for (std::size_t i = 0; i + 1 < weights.size(); ++i) {
    u -= weights[i];
    if (u <= 0.0) return i;
  }
  return weights.size() - 1;
}

}  // namespace mjps

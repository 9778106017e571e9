#include "tsq/random.hpp"

#include "tsq/errors.hpp"
#include "tsq/numeric.hpp"

namespace tsq {
namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

}  // namespace

RandomSource::RandomSource(std::uint64_t seed)
    : seed_(seed), engine_(splitmix64(seed)) {}

std::uint64_t RandomSource::bits() { return engine_(); }

double RandomSource::uniform() {
  return static_cast<double>(bits() >> 11) * 0x1.0p-53;
}

int RandomSource::sample_discrete(std::span<const double> weights) {
  if (weights.empty()) {
    throw DomainError("sample_discrete: empty weight list");
  }
  double total = 0.0;
  for (double w : weights) {
    if (w < 0.0) {
      throw DomainError("sample_discrete: negative weight");
    }
    total += w;
  }
  if (total < kProbFloor) {
    throw NumericalError("sample_discrete: all weights below probability floor");
  }
  const double u = uniform() * total;
  double acc = 0.0;
  for (std::size_t i = 0; i < weights.size(); ++i) {
    acc += weights[i];
    if (u < acc) {
      return static_cast<int>(i);
    }
  }
  return static_cast<int>(weights.size()) - 1;
}

RandomSource RandomSource::substream(std::uint64_t index) const {
  return RandomSource(splitmix64(seed_ ^ (0x9e3779b97f4a7c15ULL * (index + 1))));
}

}  // namespace tsq

#include "tsq/random_states.hpp"

#include <cmath>

namespace tsq {

double gaussian(RandomSource& rng) {
  double u1 = rng.uniform();
  while (u1 <= 0.0) {
    u1 = rng.uniform();
  }
  const double u2 = rng.uniform();
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * 3.14159265358979323846 * u2);
}

StateVector random_state(RandomSource& rng, int num_qubits) {
  std::vector<Complex> amps(1ULL << num_qubits);
  double n2 = 0.0;
  for (Complex& a : amps) {
    a = Complex{gaussian(rng), gaussian(rng)};
    n2 += std::norm(a);
  }
  const double inv = 1.0 / std::sqrt(n2);
  for (Complex& a : amps) {
    a *= inv;
  }
  return StateVector(num_qubits, std::move(amps));
}

}  // namespace tsq

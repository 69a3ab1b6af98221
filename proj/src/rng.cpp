#include "glmae/rng.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

namespace glmae {

uint64_t Rng::below(uint64_t n) {
  // Rejection sampling on the top of the range to avoid modulo bias.
  uint64_t threshold = (-n) % n;
  for (;;) {
    uint64_t r = next_u64();
    if (r >= threshold) return r % n;
  }
}

double Rng::normal() {
  if (has_spare_) {
    has_spare_ = false;
    return spare_;
  }
  // u1 in (0, 1] so log is finite.
  double u1 = 1.0 - uniform();
  double u2 = uniform();
  double r = std::sqrt(-2.0 * std::log(u1));
  double theta = 2.0 * std::numbers::pi * u2;
  spare_ = r * std::sin(theta);
  has_spare_ = true;
  return r * std::cos(theta);
}

double Rng::trunc_normal(double stddev) {
  for (;;) {
    double z = normal();
    if (z >= -2.0 && z <= 2.0) return z * stddev;
  }
}

std::vector<int> Rng::permutation(int n) {
  std::vector<int> idx(static_cast<size_t>(n));
  for (int i = 0; i < n; ++i) idx[static_cast<size_t>(i)] = i;
  shuffle(idx);
  return idx;
}

std::string Rng::state() const {
  std::ostringstream os;
  os << gen_ << ' ' << (has_spare_ ? 1 : 0) << ' ';
  os.precision(17);
  os << spare_;
  return os.str();
}

void Rng::restore(const std::string& s) {
  std::istringstream is(s);
  int spare_flag = 0;
  is >> gen_ >> spare_flag >> spare_;
  has_spare_ = spare_flag != 0;
}

uint64_t mix_seed(uint64_t seed, uint64_t index) {
  uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (index + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

}  // namespace glmae

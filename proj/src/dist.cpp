#include "dtq/dist.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace dtq {

DiscreteDist DiscreteDist::point(std::int64_t value) {
  return table(value, {1.0});
}

DiscreteDist DiscreteDist::geometric(double p) {
  if (!(p > 0.0 && p <= 1.0)) throw std::invalid_argument("geometric: p must be in (0,1]");
  DiscreteDist d;
  d.geometric_ = true;
  d.p_ = p;
  d.min_ = 1;
  return d;
}

DiscreteDist DiscreteDist::table(std::int64_t support_min, std::vector<double> pmf) {
  if (support_min < 0) throw std::invalid_argument("table: negative support");
  if (pmf.empty()) throw std::invalid_argument("table: empty pmf");
  double total = 0.0;
  for (double x : pmf) {
    if (!(x >= 0.0)) throw std::invalid_argument("table: negative probability");
    total += x;
  }
  if (std::abs(total - 1.0) > 1e-12) throw std::invalid_argument("table: probabilities do not sum to 1");
  // trim zero mass at both ends so support_min is meaningful
  std::size_t lo = 0;
  while (pmf[lo] == 0.0) ++lo;
  std::size_t hi = pmf.size();
  while (pmf[hi - 1] == 0.0) --hi;
  DiscreteDist d;
  d.min_ = support_min + static_cast<std::int64_t>(lo);
  d.pmf_.assign(pmf.begin() + lo, pmf.begin() + hi);
  d.cdf_.resize(d.pmf_.size());
  std::partial_sum(d.pmf_.begin(), d.pmf_.end(), d.cdf_.begin());
  return d;
}

std::int64_t DiscreteDist::support_max() const {
  if (geometric_) return p_ == 1.0 ? 1 : -1;
  return min_ + static_cast<std::int64_t>(pmf_.size()) - 1;
}

double DiscreteDist::pmf(std::int64_t n) const {
  if (geometric_) return n < 1 ? 0.0 : std::pow(1.0 - p_, static_cast<double>(n - 1)) * p_;
  if (n < min_ || n > support_max()) return 0.0;
  return pmf_[static_cast<std::size_t>(n - min_)];
}

double DiscreteDist::mean() const {
  if (geometric_) return 1.0 / p_;
  double m = 0.0;
  for (std::size_t i = 0; i < pmf_.size(); ++i) m += pmf_[i] * static_cast<double>(min_ + static_cast<std::int64_t>(i));
  return m;
}

double DiscreteDist::second_moment() const {
  if (geometric_) return (2.0 - p_) / (p_ * p_);
  double m = 0.0;
  for (std::size_t i = 0; i < pmf_.size(); ++i) {
    const double v = static_cast<double>(min_ + static_cast<std::int64_t>(i));
    m += pmf_[i] * v * v;
  }
  return m;
}

std::int64_t DiscreteDist::quantile(double u) const {
  if (geometric_) {
    if (p_ == 1.0) return 1;
    // smallest n with 1 - (1-p)^n > u
    const double n = std::ceil(std::log1p(-u) / std::log1p(-p_));
    return std::max<std::int64_t>(1, static_cast<std::int64_t>(n == 0.0 ? 1.0 : n));
  }
  auto it = std::upper_bound(cdf_.begin(), cdf_.end(), u);
  if (it == cdf_.end()) --it;  // rounding in the last cumulative entry
  return min_ + (it - cdf_.begin());
}

double DiscreteDist::pgf(double z) const {
  if (geometric_) return p_ * z / (1.0 - (1.0 - p_) * z);
  double acc = 0.0;
  for (std::size_t i = pmf_.size(); i-- > 0;) acc = acc * z + pmf_[i];
  return acc * std::pow(z, static_cast<double>(min_));
}

double pgf_eval(const DiscreteDist& dist, double z) {
  if (!(z >= 0.0 && z <= 1.0)) throw std::invalid_argument("pgf_eval: z outside [0,1]");
  return dist.pgf(z);
}

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

Rng Rng::stream(std::uint64_t seed, std::uint64_t stream_id) {
  return Rng{splitmix64(splitmix64(seed) ^ splitmix64(stream_id + 0x5851f42d4c957f2dULL))};
}

double Rng::uniform() {
  return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

std::uint64_t Rng::below(std::uint64_t n) {
  return static_cast<std::uint64_t>(uniform() * static_cast<double>(n));
}

}  // namespace dtq

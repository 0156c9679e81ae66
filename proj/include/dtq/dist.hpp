#pragma once

#include <cstdint>
#include <random>
#include <vector>

namespace dtq {

/// Probability mass function on the nonnegative integers.
///
/// Either a finite table starting at support_min, or a geometric law
/// P(X = n) = (1-p)^(n-1) p on n >= 1. Sampling is always inverse-CDF from one
/// uniform, so sample paths are pinned by the seed and not by library
/// distribution internals.
class DiscreteDist {
 public:
  static DiscreteDist point(std::int64_t value);
  static DiscreteDist geometric(double p);
  // pmf[i] = P(X = support_min + i); must sum to 1 within 1e-12.
  static DiscreteDist table(std::int64_t support_min, std::vector<double> pmf);

  bool is_geometric() const { return geometric_; }
  double geometric_p() const { return p_; }
  std::int64_t support_min() const { return min_; }
  // Largest value with positive mass; -1 for the unbounded geometric law.
  std::int64_t support_max() const;

  double pmf(std::int64_t n) const;
  double mean() const;
  double second_moment() const;

  std::int64_t quantile(double u) const;  // inverse CDF, u in [0,1)

  // F*(z) = sum_n pmf(n) z^n for z in [0,1].
  double pgf(double z) const;

 private:
  DiscreteDist() = default;
  bool geometric_ = false;
  double p_ = 1.0;
  std::int64_t min_ = 0;
  std::vector<double> pmf_;
  std::vector<double> cdf_;
};

double pgf_eval(const DiscreteDist& dist, double z);

/// Seeded generator with independent substreams derived via splitmix64.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_{seed} {}
  static Rng stream(std::uint64_t seed, std::uint64_t stream_id);

  double uniform();  // [0,1), 53-bit resolution
  bool bernoulli(double p) { return uniform() < p; }
  std::uint64_t below(std::uint64_t n);  // uniform on {0..n-1}

 private:
  std::mt19937_64 engine_;
};

std::uint64_t splitmix64(std::uint64_t x);

}  // namespace dtq

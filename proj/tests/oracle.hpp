#pragma once

// Reference implementations used only by tests. Each one evaluates the
// defining formula directly and shares no code with the library's fast paths.

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>
#include <vector>

#include "dctsteg/types.hpp"

namespace oracle {

/// y(k) = w(k) sum_n x(n) cos(pi (2n-1)(k-1) / 2N), 1-based, long double accumulation.
inline dctsteg::VectorXd naive_dct(const dctsteg::VectorXd& x) {
  const auto n = static_cast<long double>(x.size());
  dctsteg::VectorXd y(x.size());
  for (Eigen::Index k = 1; k <= x.size(); ++k) {
    long double sum = 0;
    for (Eigen::Index i = 1; i <= x.size(); ++i) {
      sum += static_cast<long double>(x(i - 1)) *
             std::cos(std::numbers::pi_v<long double> * (2 * i - 1) * (k - 1) / (2 * n));
    }
    const long double w = k == 1 ? std::sqrt(1 / n) : std::sqrt(2 / n);
    y(k - 1) = static_cast<double>(w * sum);
  }
  return y;
}

/// x(n) = sum_k w(k) y(k) cos(pi (2n-1)(k-1) / 2N).
inline dctsteg::VectorXd naive_idct(const dctsteg::VectorXd& y) {
  const auto n = static_cast<long double>(y.size());
  dctsteg::VectorXd x(y.size());
  for (Eigen::Index i = 1; i <= y.size(); ++i) {
    long double sum = 0;
    for (Eigen::Index k = 1; k <= y.size(); ++k) {
      const long double w = k == 1 ? std::sqrt(1 / n) : std::sqrt(2 / n);
      sum += w * static_cast<long double>(y(k - 1)) *
             std::cos(std::numbers::pi_v<long double> * (2 * i - 1) * (k - 1) / (2 * n));
    }
    x(i - 1) = static_cast<double>(sum);
  }
  return x;
}

/// 100 * sqrt(sum (x - x~)^2 / sum x^2), plain loops.
inline double naive_prd(const dctsteg::VectorXd& x, const dctsteg::VectorXd& other) {
  long double num = 0, den = 0;
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    const long double d = static_cast<long double>(x(i)) - other(i);
    num += d * d;
    den += static_cast<long double>(x(i)) * x(i);
  }
  return static_cast<double>(100 * std::sqrt(num / den));
}

inline dctsteg::VectorXd random_vector(std::mt19937_64& rng, std::size_t n, double scale) {
  std::uniform_real_distribution<double> dist(-scale, scale);
  dctsteg::VectorXd v(static_cast<Eigen::Index>(n));
  for (auto& s : v) s = dist(rng);
  return v;
}

inline dctsteg::Bytes random_bytes(std::mt19937_64& rng, std::size_t n) {
  dctsteg::Bytes b(n);
  for (auto& c : b) c = static_cast<std::uint8_t>(rng());
  return b;
}

}  // namespace oracle

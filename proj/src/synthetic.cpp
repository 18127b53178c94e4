#include "dctsteg/synthetic.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "dctsteg/error.hpp"
#include "dctsteg/ingest.hpp"

namespace dctsteg {
namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

// mt19937_64 output is fully specified; the standard distributions are not,
// so values are mapped by hand to stay identical across standard libraries.
class Source {
 public:
  explicit Source(std::uint64_t seed) : engine_(seed) {}

  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  /// Irwin-Hall approximation, zero mean, unit variance.
  double noise() {
    double sum = 0.0;
    for (int i = 0; i < 12; ++i) sum += uniform();
    return sum - 6.0;
  }
  std::size_t index(std::size_t n) { return static_cast<std::size_t>(uniform() * n) % n; }

 private:
  std::mt19937_64 engine_;
};

VectorXd chemical(std::size_t n, Source& src) {
  // MOX gas sensor: baseline with drift, exposure responses rising and decaying exponentially
  VectorXd x(n);
  const double baseline = src.uniform(1200.0, 1800.0);
  const double drift = src.uniform(-60.0, 60.0);
  for (std::size_t i = 0; i < n; ++i) {
    x(i) = baseline + drift * static_cast<double>(i) / static_cast<double>(n) + 1.5 * src.noise();
  }
  const std::size_t exposures = 2 + src.index(4);
  for (std::size_t e = 0; e < exposures; ++e) {
    const std::size_t start = src.index(n);
    const double amplitude = src.uniform(200.0, 900.0);
    const double rise = src.uniform(8.0, 30.0);
    const double hold = src.uniform(40.0, 200.0);
    const double decay = src.uniform(30.0, 120.0);
    for (std::size_t i = start; i < n; ++i) {
      const double t = static_cast<double>(i - start);
      const double up = 1.0 - std::exp(-t / rise);
      const double down = t > hold ? std::exp(-(t - hold) / decay) : 1.0;
      x(i) += amplitude * up * down;
    }
  }
  return x;
}

VectorXd environmental(std::size_t n, Source& src) {
  // indoor temperature: diurnal cycle, slower weather swing, sensor jitter
  VectorXd x(n);
  const double mean = src.uniform(18.0, 26.0);
  const double period = src.uniform(300.0, 900.0);
  const double phase = src.uniform(0.0, kTwoPi);
  const double swing = src.uniform(1.5, 5.0);
  for (std::size_t i = 0; i < n; ++i) {
    const double t = static_cast<double>(i);
    x(i) = mean + swing * std::sin(kTwoPi * t / period + phase) +
           0.4 * std::sin(kTwoPi * t / (period * 3.7)) + 0.03 * src.noise();
  }
  return x;
}

VectorXd smart_home(std::size_t n, Source& src) {
  // household power in watts: standby load, fridge duty cycle, short appliance bursts
  VectorXd x(n);
  const double standby = src.uniform(150.0, 350.0);
  const double fridge_period = src.uniform(120.0, 240.0);
  const double duty = src.uniform(0.3, 0.6);
  for (std::size_t i = 0; i < n; ++i) {
    const double cycle = std::fmod(static_cast<double>(i), fridge_period) / fridge_period;
    x(i) = standby + (cycle < duty ? 120.0 : 0.0) + 4.0 * src.noise();
  }
  const std::size_t bursts = 1 + src.index(5);
  for (std::size_t b = 0; b < bursts; ++b) {
    const std::size_t start = src.index(n);
    const std::size_t width = 10 + src.index(60);
    const double load = src.uniform(800.0, 2200.0);
    for (std::size_t i = start; i < std::min(n, start + width); ++i) x(i) += load;
  }
  return x;
}

}  // namespace

std::string_view family_name(SignalFamily family) {
  switch (family) {
    case SignalFamily::Chemical: return "chemical";
    case SignalFamily::Environmental: return "environmental";
    case SignalFamily::SmartHome: return "smart_home";
  }
  return "unknown";
}

VectorXd synthesize(SignalFamily family, std::size_t length, std::uint64_t seed) {
  Source src(seed * 3 + static_cast<std::uint64_t>(family));
  switch (family) {
    case SignalFamily::Chemical: return chemical(length, src);
    case SignalFamily::Environmental: return environmental(length, src);
    case SignalFamily::SmartHome: return smart_home(length, src);
  }
  return VectorXd::Zero(static_cast<Eigen::Index>(length));
}

VectorXd smooth_signal(std::size_t length) {
  VectorXd x(length);
  for (std::size_t i = 0; i < length; ++i) {
    const double t = static_cast<double>(i) / static_cast<double>(length);
    x(i) = 20.0 + 5.0 * t + 3.0 * std::sin(kTwoPi * 2.0 * t) + 1.0 * std::cos(kTwoPi * 5.0 * t);
  }
  return x;
}

std::vector<StreamSegment> synthetic_corpus(std::uint64_t seed) {
  std::vector<StreamSegment> corpus;
  std::uint64_t counter = seed;
  for (auto family : kAllFamilies) {
    for (std::size_t length : {512u, 1024u, 2048u, 4096u}) {
      for (int rep = 0; rep < 3; ++rep) {
        StreamSegment s;
        s.samples = synthesize(family, length, counter++);
        s.source = std::string(family_name(family));
        s.segment_id = s.source + ":" + std::to_string(length) + "#" + std::to_string(rep);
        corpus.push_back(std::move(s));
      }
    }
  }
  return corpus;
}

void write_synthetic_csv(const std::string& path, std::size_t rows, std::uint64_t seed) {
  std::vector<VectorXd> columns;
  std::vector<std::string> names;
  for (auto family : kAllFamilies) {
    columns.push_back(synthesize(family, rows, seed));
    names.emplace_back(family_name(family));
  }
  write_columns(path, names, columns);
}

}  // namespace dctsteg

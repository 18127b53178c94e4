#include "dctsteg/metrics.hpp"

#include <algorithm>
#include <chrono>
#include <fstream>
#include <string>
#include <thread>

#include <sys/resource.h>
#include <sys/utsname.h>
#if defined(__linux__)
#include <sched.h>
#endif

#include "dctsteg/synthetic.hpp"

namespace dctsteg {
namespace {

double median(std::vector<double> values) {
  std::sort(values.begin(), values.end());
  const std::size_t mid = values.size() / 2;
  return values.size() % 2 ? values[mid] : 0.5 * (values[mid - 1] + values[mid]);
}

void pin_to_one_cpu() {
#if defined(__linux__)
  cpu_set_t set;
  CPU_ZERO(&set);
  const int cpu = sched_getcpu();
  CPU_SET(cpu < 0 ? 0 : cpu, &set);
  sched_setaffinity(0, sizeof set, &set);
#endif
}

std::uint64_t peak_rss_bytes() {
  rusage usage{};
  if (getrusage(RUSAGE_SELF, &usage) != 0) return 0;
  return static_cast<std::uint64_t>(usage.ru_maxrss) * 1024u;  // kilobytes on Linux
}

}  // namespace

double prd(const StreamSegment& original, const StreamSegment& other) {
  return prd(original.samples, other.samples);
}

std::vector<SweepRow> distortion_sweep(const StreamSegment& segment, const StegoKey& key,
                                       const EmbedConfig& base_config, ByteView payload,
                                       const std::optional<Nonce>& nonce) {
  std::vector<SweepRow> rows;
  for (unsigned bits = kMinBitsPerCoeff; bits <= kMaxBitsPerCoeff; ++bits) {
    EmbedConfig config = base_config;
    config.bits_per_coeff = bits;
    const EmbedResult embedded = embed(segment, key, payload, config, nonce);
    const ExtractResult extracted = extract(embedded.stego, key, config);
    rows.push_back({bits, embedded.prd_stego, prd(segment, extracted.recovered)});
  }
  return rows;
}

std::string machine_description() {
  std::string cpu = "unknown cpu";
  std::ifstream info("/proc/cpuinfo");
  for (std::string line; std::getline(info, line);) {
    if (line.rfind("model name", 0) == 0) {
      const auto colon = line.find(':');
      if (colon != std::string::npos) cpu = line.substr(colon + 2);
      break;
    }
  }
  utsname host{};
  std::string os = "unknown os";
  if (uname(&host) == 0) os = std::string(host.sysname) + " " + host.release + " " + host.machine;
  return cpu + "; " + std::to_string(std::thread::hardware_concurrency()) + " logical cpus; " + os;
}

BenchReport timing_benchmark(const std::vector<std::size_t>& lengths, std::size_t trials,
                             const EmbedConfig& config) {
  if (trials < 3) fail(ErrorCode::InvalidParameters, "benchmark needs at least 3 trials");
  if (lengths.empty()) fail(ErrorCode::InvalidParameters, "benchmark needs at least one length");
  for (auto n : lengths) {
    if (n < kMinSegmentLength || n > kMaxSegmentLength) {
      fail(ErrorCode::InvalidParameters, "benchmark length " + std::to_string(n) + " out of range");
    }
  }
  pin_to_one_cpu();

  const StegoKey key{to_bytes("benchmark-key-0123456789abcdef-benchmark-key-0123456789abcdef")};
  const Bytes payload = to_bytes("ID=STN-042;lat=51.5072;lon=-0.1276;t=1700000000");
  const Nonce nonce{};
  using Clock = std::chrono::steady_clock;

  BenchReport report;
  report.machine = machine_description();
  for (auto n : lengths) {
    const StreamSegment segment{synthesize(SignalFamily::Environmental, n, 7), "bench", "bench"};
    // warm-up
    extract(embed(segment, key, payload, config, nonce).stego, key, config);

    std::vector<double> embed_times, extract_times;
    for (std::size_t t = 0; t < trials; ++t) {
      const auto t0 = Clock::now();
      const EmbedResult result = embed(segment, key, payload, config, nonce);
      const auto t1 = Clock::now();
      const ExtractResult recovered = extract(result.stego, key, config);
      const auto t2 = Clock::now();
      if (recovered.secret != payload) fail(ErrorCode::AuthenticationFailed, "benchmark round trip");
      embed_times.push_back(std::chrono::duration<double>(t1 - t0).count());
      extract_times.push_back(std::chrono::duration<double>(t2 - t1).count());
    }
    report.records.push_back({n, median(embed_times), median(extract_times), peak_rss_bytes()});
  }

  // least squares on total time
  const double count = static_cast<double>(report.records.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (const auto& r : report.records) {
    const double x = static_cast<double>(r.segment_length);
    const double y = r.embed_seconds + r.extract_seconds;
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  const double denom = count * sxx - sx * sx;
  if (denom != 0.0) {
    report.fit_slope = (count * sxy - sx * sy) / denom;
    report.fit_intercept = (sy - report.fit_slope * sx) / count;
  } else {
    report.fit_intercept = sy / count;
  }

  for (const auto& small : report.records) {
    for (const auto& large : report.records) {
      if (large.segment_length == 4 * small.segment_length &&
          small.segment_length > report.scaling_base) {
        report.scaling_base = small.segment_length;
        report.scaling_ratio = (large.embed_seconds + large.extract_seconds) /
                               (small.embed_seconds + small.extract_seconds);
      }
    }
  }
  return report;
}

}  // namespace dctsteg

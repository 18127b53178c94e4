#pragma once

// Seeded synthetic sensor streams standing in for the chemical, environmental
// and smart-home corpora. Output depends only on (family, length, seed).

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "dctsteg/types.hpp"

namespace dctsteg {

enum class SignalFamily { Chemical, Environmental, SmartHome };

inline constexpr SignalFamily kAllFamilies[] = {SignalFamily::Chemical,
                                                SignalFamily::Environmental,
                                                SignalFamily::SmartHome};

std::string_view family_name(SignalFamily family);

VectorXd synthesize(SignalFamily family, std::size_t length, std::uint64_t seed);

/// Sinusoid plus linear trend, no noise.
VectorXd smooth_signal(std::size_t length);

/// 36 segments: every family at lengths 512, 1024, 2048 and 4096, three seeds each.
std::vector<StreamSegment> synthetic_corpus(std::uint64_t seed = 2024);

/// Writes `rows` samples of each family as columns chemical,environmental,smart_home.
void write_synthetic_csv(const std::string& path, std::size_t rows, std::uint64_t seed);

}  // namespace dctsteg

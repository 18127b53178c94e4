// Regenerates data/synthetic_corpus.csv: make_corpus <path> [rows] [seed]
#include <cstdlib>
#include <iostream>
#include <string>

#include "dctsteg/error.hpp"
#include "dctsteg/synthetic.hpp"

int main(int argc, char** argv) {
  if (argc < 2) {
    std::cerr << "usage: make_corpus <path> [rows=4096] [seed=2024]\n";
    return 2;
  }
  const std::size_t rows = argc > 2 ? std::strtoull(argv[2], nullptr, 10) : 4096;
  const std::uint64_t seed = argc > 3 ? std::strtoull(argv[3], nullptr, 10) : 2024;
  try {
    dctsteg::write_synthetic_csv(argv[1], rows, seed);
  } catch (const dctsteg::Error& e) {
    std::cerr << e.what() << '\n';
    return 3;
  }
  return 0;
}

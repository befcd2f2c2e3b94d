#include <cstdlib>
#include <iostream>
#include <string>
#include <vector>

#include "grasspenta/verify.hpp"

int main(int argc, char** argv) {
  std::vector<int> only;
  std::uint64_t seed = 20240611;
  for (int i = 1; i < argc; ++i) {
    const std::string arg = argv[i];
    if (arg == "--criterion" && i + 1 < argc) {
      only.push_back(std::atoi(argv[++i]));
    } else if (arg == "--seed" && i + 1 < argc) {
      seed = std::strtoull(argv[++i], nullptr, 10);
    } else {
      std::cerr << "usage: grasspenta_acceptance [--criterion k]... [--seed s]\n";
      return 2;
    }
  }
  bool all = true;
  for (const auto& r : grasspenta::run_acceptance(seed, only)) {
    std::cout << grasspenta::format_result(r) << std::endl;
    all = all && r.passed;
  }
  return all ? 0 : 1;
}

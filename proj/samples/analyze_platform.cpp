// Prints the capacity report of a .mechx file, or of every bundled platform.
#include <fstream>
#include <iostream>
#include <sstream>

#include "kinex/kinex.hpp"

namespace {

void print(const kinex::CapacityReport& r) {
  std::cout << r.platform_name << ": C = " << r.c_all.scientific() << ", K = " << r.k_all_bits
            << " bits (mechanical " << r.k_mechanical_bits << ")";
  if (r.computational_bits) std::cout << ", processor " << *r.computational_bits << " bits";
  std::cout << "\n";
}

}  // namespace

int main(int argc, char** argv) {
  if (argc > 1) {
    std::ifstream in(argv[1]);
    if (!in) {
      std::cerr << "cannot open " << argv[1] << "\n";
      return 2;
    }
    std::stringstream ss;
    ss << in.rdbuf();
    print(kinex::analyze(kinex::parse_platform(ss.str()).platform));
    return 0;
  }
  for (const auto& doc : kinex::load_dataset()) {
    if (doc.platform.computable()) print(kinex::analyze(doc.platform, {kinex::CountMode::log_space}));
  }
  return 0;
}

// Writes the bundled synthetic corpus (planted important sentences plus
// noise) in the standard corpus layout, for demos and end-to-end checks.

#include <iostream>
#include <string>

#include "nler/synthetic.hpp"
#include "nler/util.hpp"

int main(int argc, char** argv) {
  nler::SyntheticSpec spec;
  std::string out;
  try {
    for (int i = 1; i < argc; ++i) {
      std::string arg = argv[i];
      auto value = [&]() -> std::string {
        if (i + 1 >= argc) nler::fail("usage", "flag " + arg + " needs a value");
        return argv[++i];
      };
      if (arg == "--out") out = value();
      else if (arg == "--clusters") spec.clusters = static_cast<std::size_t>(nler::parse_double(value(), "usage"));
      else if (arg == "--docs") spec.docs_per_cluster = static_cast<std::size_t>(nler::parse_double(value(), "usage"));
      else if (arg == "--sentences") spec.sentences_per_doc = static_cast<std::size_t>(nler::parse_double(value(), "usage"));
      else if (arg == "--planted") spec.planted_per_cluster = static_cast<std::size_t>(nler::parse_double(value(), "usage"));
      else if (arg == "--seed") spec.seed = static_cast<std::uint64_t>(nler::parse_double(value(), "usage"));
      else nler::fail("usage", "unknown flag " + arg);
    }
    if (out.empty()) nler::fail("usage", "missing required --out");
    nler::write_synthetic_corpus(out, spec);
    std::cout << "wrote " << spec.clusters << " clusters to " << out << "\n";
    return 0;
  } catch (const nler::Error& e) {
    std::cerr << "ERROR:" << e.category() << ": " << e.what() << "\n";
    return 1;
  }
}

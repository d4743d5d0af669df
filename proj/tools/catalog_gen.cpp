// Regenerates the frozen catalog bundle from the recipes.

#include <fstream>
#include <iostream>

#include "flatpbd/catalog.hpp"

int main(int argc, char** argv) {
  std::string out_path = argc > 1 ? argv[1] : "";
  try {
    std::string bundle = flatpbd::render_catalog_bundle();
    if (out_path.empty()) {
      std::cout << bundle;
    } else {
      std::ofstream out(out_path, std::ios::binary);
      if (!out) {
        std::cerr << "cannot open " << out_path << "\n";
        return 1;
      }
      out << bundle;
      std::cerr << "wrote " << bundle.size() << " bytes to " << out_path << "\n";
    }
    return 0;
  } catch (const std::exception& e) {
    std::cerr << "catalog generation failed: " << e.what() << "\n";
    return 1;
  }
}

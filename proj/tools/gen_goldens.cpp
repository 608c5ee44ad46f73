// Rewrites the golden files under a data directory.
#include <filesystem>
#include <fstream>
#include <iostream>

#include "goldens.hpp"

int main(int argc, char** argv) {
  namespace fs = std::filesystem;
  fs::path root = argc > 1 ? argv[1] : STOROP_DATA_DIR;
  for (const auto& f : storop::goldens::all()) {
    fs::path p = root / f.path;
    fs::create_directories(p.parent_path());
    std::ofstream(p, std::ios::binary) << f.content;
    std::cout << p.string() << "\n";
  }
}

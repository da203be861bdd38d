// Regenerates the JSON preset files under configs/ from the built-in presets,
// so the shipped files can never drift from the code.
#include <filesystem>
#include <fstream>
#include <iostream>

#include <nlohmann/json.hpp>

#include "svgp/config.hpp"
#include "svgp/experiments.hpp"

int main(int argc, char** argv) {
  const std::filesystem::path dir = argc > 1 ? argv[1] : "configs";
  std::filesystem::create_directories(dir);
  for (const std::string& name : svgp::preset_names()) {
    const svgp::ExperimentConfig cfg = svgp::preset(name);
    const std::filesystem::path path = dir / (name + ".json");
    std::ofstream out(path, std::ios::binary);
    out << svgp::config_to_json(cfg).dump(2) << "\n";
    std::cout << "wrote " << path.string() << "\n";
  }
  return 0;
}

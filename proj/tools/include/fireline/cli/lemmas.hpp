#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "fireline/cli/scene_io.hpp"

namespace fireline::cli {

struct LemmaRow {
  std::string scene;
  std::string lemma;
  bool pass = false;
  bool skipped = false;
  std::string detail{};
};

// Property checks on one scene. slack scales every tolerance (1 = default, <= 0 breaks them on purpose).
std::vector<LemmaRow> scene_lemmas(const SceneFile& sf, const std::string& label, double slack, std::uint64_t seed);
// Scene-independent checks of the sweep and detour engines.
std::vector<LemmaRow> engine_lemmas(double slack, std::uint64_t seed);

}  // namespace fireline::cli

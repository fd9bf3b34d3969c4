#pragma once

#include <map>
#include <memory>
#include <string>

#include "vag/embedcheck.hpp"
#include "vag/geodesy.hpp"
#include "vag/group.hpp"
#include "vag/length_formulas.hpp"

namespace fixtures {

inline const vag::VAGroup& H() {
  static const vag::VAGroup g = vag::compile_presentation(vag::preset_presentation("H"));
  return g;
}

inline const vag::VAGroup& G() {
  static const vag::VAGroup g = vag::compile_presentation(vag::preset_presentation("G"));
  return g;
}

inline const vag::HModel& model() {
  static const vag::HModel h(H());
  return h;
}

inline const vag::EmbeddingMap& embedding() {
  static const vag::EmbeddingMap e = vag::EmbeddingMap::tau_to_s2(H(), G());
  return e;
}

// Balls are cached per (group, radius); tests share them.
inline const vag::LengthTable& ball(const vag::VAGroup& g, vag::Int radius) {
  static std::map<std::pair<const vag::VAGroup*, vag::Int>, std::unique_ptr<vag::LengthTable>> cache;
  auto& slot = cache[{&g, radius}];
  if (!slot) slot = std::make_unique<vag::LengthTable>(vag::enumerate_ball(g, radius));
  return *slot;
}

inline vag::GroupElement eval(const vag::VAGroup& g, const std::string& w) { return vag::evaluate_word(g, w).element; }

inline std::string source_path(const std::string& relative) { return std::string(VAG_SOURCE_DIR) + "/" + relative; }

}  // namespace fixtures

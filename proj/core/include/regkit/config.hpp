#pragma once

#include <cstdint>
#include <string>

namespace regkit {

enum class Mode { Exact, Sampled };

std::string to_string(Mode m);
Mode parse_mode(const std::string& s);

// Knobs shared by every verifier and pipeline stage.
struct SearchConfig {
  Mode mode = Mode::Sampled;
  int pair_exact_threshold = 18;  // max side size for exact pair enumeration
  int weak_exact_threshold = 16;  // max |V| for exact weak-regularity enumeration
  int bipartite_weak_exact_threshold = 22;  // max |A| + |B| for the bipartite form
  // In sampled mode, pairs whose smaller side is at most this size are
  // decided exactly (cheaper than sampling); the verdict records mode exact.
  int auto_exact_side = 12;
  int samples = 20000;
  int workers = 1;
  std::uint64_t seed = 0;
};

}  // namespace regkit

#pragma once
#ifndef WEIGHTCELL_CAPS_HPP
#define WEIGHTCELL_CAPS_HPP

#include <cstddef>
#include <cstdlib>
#include <string>
#include <string_view>

#include "weightcell/errors.hpp"

namespace weightcell {

/// Resource caps for the exponential-in-the-worst-case computations.
struct Caps {
  std::size_t max_states = 1'000'000;  // subset construction / automaton builders
  std::size_t max_cycles = 100'000;    // elementary circuits
  std::size_t max_rays = 100'000;      // double description
  std::size_t max_words = 5'000'000;   // enumeration output
  std::size_t max_ball = 2'000'000;    // group elements in a ball
  std::size_t max_roots = 100'000;     // minimal roots
  std::size_t max_paths = 5'000'000;   // circuit-free paths
};

/// Parses "states=N,cycles=N,rays=N,words=N,ball=N,roots=N,paths=N" (any subset) on top
/// of `base`.
inline Caps parse_caps(std::string_view text, Caps base = {}) {
  std::size_t pos = 0;
  while (pos < text.size()) {
    auto comma = text.find(',', pos);
    if (comma == std::string_view::npos) comma = text.size();
    std::string_view item = text.substr(pos, comma - pos);
    pos = comma + 1;
    if (item.empty()) continue;
    auto eq = item.find('=');
    if (eq == std::string_view::npos) throw ValidationError("bad cap '" + std::string(item) + "'");
    std::string key(item.substr(0, eq));
    std::string value(item.substr(eq + 1));
    char* end = nullptr;
    const unsigned long long v = std::strtoull(value.c_str(), &end, 10);
    if (value.empty() || *end != '\0' || v == 0) throw ValidationError("cap '" + key + "' must be a positive integer");
    if (key == "states") base.max_states = v;
    else if (key == "cycles") base.max_cycles = v;
    else if (key == "rays") base.max_rays = v;
    else if (key == "words") base.max_words = v;
    else if (key == "ball") base.max_ball = v;
    else if (key == "roots") base.max_roots = v;
    else if (key == "paths") base.max_paths = v;
    else throw ValidationError("unknown cap '" + key + "'");
  }
  return base;
}

}  // namespace weightcell

#endif  // WEIGHTCELL_CAPS_HPP

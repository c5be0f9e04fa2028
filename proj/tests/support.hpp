#pragma once

#include <algorithm>
#include <map>
#include <random>
#include <string>
#include <vector>

#include "skh/braid.hpp"
#include "skh/diagram.hpp"
#include "skh/fixtures.hpp"

namespace testing {

inline const skh::Corpus& corpus() {
  static const skh::Corpus c = skh::load_corpus(skh::default_fixture_dir());
  return c;
}

inline const skh::SingularDiagram& fixture(const std::string& name) {
  const skh::Fixture* f = corpus().find(name);
  if (f == nullptr) throw std::runtime_error("no fixture " + name);
  return f->diagram;
}

// Circles of a smoothing, found by walking the smoothed picture edge to
// edge: each smoothing arc glues two slot positions. Maps every edge id to
// a component number. Shares nothing with the library's union-find.
inline std::map<int, int> edge_components(const skh::SingularDiagram& d, std::uint32_t state) {
  std::map<int, std::vector<int>> adjacent;
  for (int c = 0; c < d.crossing_count(); ++c) {
    const auto& e = d.crossings()[static_cast<std::size_t>(c)].edges;
    const bool one = (state >> c) & 1U;
    const int pairs[2][2][2] = {{{0, 1}, {2, 3}}, {{0, 3}, {1, 2}}};
    for (const auto& p : pairs[one]) {
      adjacent[e[static_cast<std::size_t>(p[0])]].push_back(e[static_cast<std::size_t>(p[1])]);
      adjacent[e[static_cast<std::size_t>(p[1])]].push_back(e[static_cast<std::size_t>(p[0])]);
    }
  }
  std::map<int, int> component;
  int next = 0;
  for (const auto& [start, unused] : adjacent) {
    if (component.contains(start)) continue;
    std::vector<int> stack{start};
    component[start] = next;
    while (!stack.empty()) {
      const int e = stack.back();
      stack.pop_back();
      for (int n : adjacent[e]) {
        if (!component.contains(n)) {
          component[n] = next;
          stack.push_back(n);
        }
      }
    }
    ++next;
  }
  return component;
}

inline int circle_count(const skh::SingularDiagram& d, std::uint32_t state) {
  int most = -1;
  for (const auto& [e, c] : edge_components(d, state)) most = std::max(most, c);
  return most + 1 + d.free_loops();
}

struct RandomBraid {
  int strands;
  std::string word;
  skh::SingularDiagram diagram;
};

// Closures of random braid words with at most `max_crossings` letters and
// at most `max_double` double points.
inline std::vector<RandomBraid> random_braids(unsigned seed, int count, int max_crossings, int max_double) {
  std::mt19937 rng(seed);
  std::vector<RandomBraid> out;
  while (static_cast<int>(out.size()) < count) {
    const int strands = std::uniform_int_distribution<int>(2, 4)(rng);
    const int length = std::uniform_int_distribution<int>(1, max_crossings)(rng);
    int doubles = 0;
    std::string word;
    for (int k = 0; k < length; ++k) {
      const int g = std::uniform_int_distribution<int>(1, strands - 1)(rng);
      const int kind = std::uniform_int_distribution<int>(0, 2)(rng);
      if (!word.empty()) word += ' ';
      if (kind == 2 && doubles < max_double) {
        ++doubles;
        word += "t" + std::to_string(g);
      } else {
        word += (kind == 1 ? "-" : "") + std::to_string(g);
      }
    }
    out.push_back({strands, word, skh::braid_closure(strands, skh::parse_braid_word(word))});
  }
  return out;
}

}  // namespace testing

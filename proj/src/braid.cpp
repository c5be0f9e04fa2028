#include "skh/braid.hpp"

#include <charconv>
#include <map>
#include <sstream>
#include <string>

#include "skh/errors.hpp"

namespace skh {

std::vector<BraidLetter> parse_braid_word(std::string_view word) {
  std::vector<BraidLetter> out;
  std::istringstream in{std::string(word)};
  std::string token;
  while (in >> token) {
    BraidLetter letter;
    std::string_view digits = token;
    if (digits.front() == 't') {
      letter.kind = CrossingKind::Singular;
      digits.remove_prefix(1);
    } else if (digits.front() == '-') {
      letter.kind = CrossingKind::Negative;
      digits.remove_prefix(1);
    }
    auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), letter.generator);
    if (digits.empty() || ec != std::errc() || ptr != digits.data() + digits.size() || letter.generator < 1) {
      throw SyntaxError("bad braid letter '" + token + "'");
    }
    out.push_back(letter);
  }
  return out;
}

SingularDiagram braid_closure(int strands, std::span<const BraidLetter> word) {
  if (strands < 1) throw DomainError("a braid needs at least one strand");
  std::vector<int> position(static_cast<std::size_t>(strands));
  for (int p = 0; p < strands; ++p) position[static_cast<std::size_t>(p)] = p + 1;
  int next = strands + 1;

  std::vector<Crossing> crossings;
  for (const BraidLetter& letter : word) {
    if (letter.generator >= strands) throw DomainError("braid generator exceeds strand count");
    const auto left = static_cast<std::size_t>(letter.generator - 1);
    const int in_left = position[left];
    const int in_right = position[left + 1];
    const int out_left = next++;
    const int out_right = next++;
    // The strand entering bottom-left leaves top-right and vice versa.
    // Counterclockwise from the bottom-left slot: SW, SE, NE, NW.
    switch (letter.kind) {
      case CrossingKind::Negative:
        crossings.push_back({CrossingKind::Negative, {in_left, in_right, out_right, out_left}});
        break;
      case CrossingKind::Positive:
      case CrossingKind::Singular:
        crossings.push_back({letter.kind, {in_right, out_right, out_left, in_left}});
        break;
    }
    position[left] = out_left;
    position[left + 1] = out_right;
  }

  // Close up: the top edge at each position is the bottom edge there.
  std::map<int, int> rename;
  int free_loops = 0;
  for (int p = 0; p < strands; ++p) {
    const int top = position[static_cast<std::size_t>(p)];
    if (top == p + 1) {
      ++free_loops;
    } else {
      rename[top] = p + 1;
    }
  }
  // Relabel edges 1..E in order of first appearance.
  std::map<int, int> compact;
  for (Crossing& x : crossings) {
    for (int& e : x.edges) {
      if (auto it = rename.find(e); it != rename.end()) e = it->second;
      auto [it, inserted] = compact.emplace(e, static_cast<int>(compact.size()) + 1);
      e = it->second;
    }
  }
  return SingularDiagram(std::move(crossings), free_loops);
}

}  // namespace skh

#pragma once

#include <span>
#include <string_view>
#include <vector>

#include "skh/diagram.hpp"

namespace skh {

/// One letter of a singular braid word: generator i (1-based) swaps the
/// strands at positions i and i+1. Positive letters put the strand moving
/// right on top; singular letters are transverse double points.
struct BraidLetter {
  int generator = 1;
  CrossingKind kind = CrossingKind::Positive;
};

/// Parses words such as "1 1 -2 t1": `k` is a positive generator, `-k` a
/// negative one and `tk` a double point.
std::vector<BraidLetter> parse_braid_word(std::string_view word);

/// PD code of the closure of a braid on `strands` strands. Strands that no
/// letter touches close up into free loops.
SingularDiagram braid_closure(int strands, std::span<const BraidLetter> word);

}  // namespace skh

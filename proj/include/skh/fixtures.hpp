#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "skh/diagram.hpp"

namespace skh {

enum class Move { RI, RII, RIII, S1, S2, S3 };

std::string_view move_name(Move m);
std::optional<Move> parse_move(std::string_view text);

/// One manifest line: `name  file  [pair=other move=M]`.
struct ManifestEntry {
  std::string name;
  std::string file;
  std::optional<std::string> pair;
  std::optional<Move> move;
};

/// Blank lines and `#` comments are skipped. Throws SyntaxError on
/// malformed lines, ValidationError on duplicate names or dangling pairs.
std::vector<ManifestEntry> parse_manifest(std::string_view text);

struct Fixture {
  ManifestEntry entry;
  SingularDiagram diagram;
};

struct Corpus {
  std::filesystem::path directory;
  std::vector<Fixture> fixtures;

  const Fixture* find(std::string_view name) const;
};

/// Reads manifest.txt in `directory` and parses every listed PD file.
Corpus load_corpus(const std::filesystem::path& directory);

std::filesystem::path default_fixture_dir();

/// Whether some double point of D is a kink.
bool has_fi_double_point(const SingularDiagram& diagram);

std::string read_text_file(const std::filesystem::path& path);

}  // namespace skh

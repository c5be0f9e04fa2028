#include "skh/fixtures.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include "skh/errors.hpp"

namespace skh {

namespace {

constexpr std::pair<Move, std::string_view> kMoves[] = {
    {Move::RI, "RI"}, {Move::RII, "RII"}, {Move::RIII, "RIII"}, {Move::S1, "S1"}, {Move::S2, "S2"}, {Move::S3, "S3"},
};

}  // namespace

std::string_view move_name(Move m) {
  for (const auto& [move, name] : kMoves) {
    if (move == m) return name;
  }
  return "?";
}

std::optional<Move> parse_move(std::string_view text) {
  for (const auto& [move, name] : kMoves) {
    if (name == text) return move;
  }
  return std::nullopt;
}

std::vector<ManifestEntry> parse_manifest(std::string_view text) {
  std::vector<ManifestEntry> out;
  std::istringstream lines{std::string(text)};
  std::string line;
  int number = 0;
  while (std::getline(lines, line)) {
    ++number;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream words(line);
    std::vector<std::string> fields;
    for (std::string w; words >> w;) fields.push_back(w);
    if (fields.empty()) continue;
    auto fail = [&](const std::string& what) {
      throw SyntaxError("manifest line " + std::to_string(number) + ": " + what);
    };
    if (fields.size() < 2) fail("expected `name file`");
    ManifestEntry e{fields[0], fields[1], std::nullopt, std::nullopt};
    for (std::size_t k = 2; k < fields.size(); ++k) {
      const std::string& f = fields[k];
      if (f.starts_with("pair=") && !e.pair) {
        e.pair = f.substr(5);
      } else if (f.starts_with("move=") && !e.move) {
        e.move = parse_move(std::string_view(f).substr(5));
        if (!e.move) fail("unknown move `" + f.substr(5) + "`");
      } else {
        fail("unexpected field `" + f + "`");
      }
    }
    if (e.pair.has_value() != e.move.has_value()) fail("pair= and move= go together");
    out.push_back(std::move(e));
  }

  std::set<std::string> names;
  for (const auto& e : out) {
    if (!names.insert(e.name).second) throw ValidationError("duplicate fixture name `" + e.name + "`");
  }
  for (const auto& e : out) {
    if (e.pair && !names.contains(*e.pair)) throw ValidationError("fixture `" + e.name + "` pairs with unknown `" + *e.pair + "`");
  }
  return out;
}

const Fixture* Corpus::find(std::string_view name) const {
  for (const auto& f : fixtures) {
    if (f.entry.name == name) return &f;
  }
  return nullptr;
}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ValidationError("cannot read " + path.string());
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

Corpus load_corpus(const std::filesystem::path& directory) {
  Corpus corpus;
  corpus.directory = directory;
  for (auto& entry : parse_manifest(read_text_file(directory / "manifest.txt"))) {
    const std::string text = read_text_file(directory / entry.file);
    try {
      SingularDiagram d = parse_pd(text);
      corpus.fixtures.push_back({std::move(entry), std::move(d)});
    } catch (const Error& e) {
      throw ValidationError(entry.file + ": " + e.what());
    }
  }
  return corpus;
}

std::filesystem::path default_fixture_dir() { return SKH_FIXTURE_DIR; }

bool has_fi_double_point(const SingularDiagram& diagram) {
  for (int c : diagram.singular_crossings()) {
    if (is_isolated_double_point(diagram, c)) return true;
  }
  return false;
}

}  // namespace skh

#include "lnc/corpus.hpp"

#include <fstream>
#include <set>
#include <sstream>

namespace lnc::corpus {

namespace fs = std::filesystem;

namespace {

Expected parse_expected(const std::string& s, int lineno) {
  if (s == "pass") return Expected{true, 0};
  if (s.rfind("fail:", 0) == 0) {
    int part = 0;
    try {
      part = std::stoi(s.substr(5));
    } catch (...) {
    }
    if (part >= 1 && part <= 5) return Expected{false, part};
  }
  throw CorpusError("manifest line " + std::to_string(lineno) +
                    ": expected 'pass' or 'fail:<1..5>', got '" + s + "'");
}

std::vector<std::string> split_tabs(const std::string& line) {
  std::vector<std::string> fields;
  std::string cur;
  for (char c : line) {
    if (c == '\t') {
      fields.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  fields.push_back(cur);
  return fields;
}

}  // namespace

std::vector<CorpusEntry> load_corpus(const fs::path& dir) {
  if (!fs::exists(dir)) throw CorpusError("no such directory: " + dir.string());
  const fs::path manifest = dir / "manifest.tsv";

  std::set<fs::path> sos_files;
  for (const auto& e : fs::recursive_directory_iterator(dir))
    if (e.is_regular_file() && e.path().extension() == ".sos")
      sos_files.insert(fs::weakly_canonical(e.path()));

  if (!fs::exists(manifest)) {
    if (sos_files.empty()) return {};
    throw CorpusError("manifest.tsv missing but " +
                      std::to_string(sos_files.size()) +
                      " .sos file(s) present in " + dir.string());
  }

  std::ifstream in(manifest);
  if (!in) throw CorpusError("cannot read " + manifest.string());

  std::vector<CorpusEntry> entries;
  std::set<fs::path> listed;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty() || line[0] == '#') continue;
    auto fields = split_tabs(line);
    if (fields.size() != 4)
      throw CorpusError("manifest line " + std::to_string(lineno) +
                        ": expected 4 tab-separated fields");
    CorpusEntry entry;
    entry.name = fields[0];
    entry.path = fs::weakly_canonical(dir / fields[1]);
    entry.expected = parse_expected(fields[2], lineno);
    entry.description = fields[3];
    if (!fs::exists(entry.path))
      throw CorpusError("manifest names a missing file: " + fields[1]);
    listed.insert(entry.path);
    entries.push_back(std::move(entry));
  }
  for (const auto& f : sos_files)
    if (!listed.count(f))
      throw CorpusError("file without a manifest line: " + f.string());
  return entries;
}

}  // namespace lnc::corpus

#ifndef LNC_CORPUS_HPP
#define LNC_CORPUS_HPP

#include <filesystem>
#include <stdexcept>
#include <string>
#include <vector>

// Fixture languages (positive and negative) and their manifest loader.

namespace lnc::corpus {

struct Expected {
  bool pass = true;
  int part = 0;  // 1..5 when pass == false
  bool operator==(const Expected&) const = default;
};

struct CorpusEntry {
  std::string name;
  std::filesystem::path path;  // absolute, resolved against the corpus dir
  Expected expected;
  std::string description;
};

struct CorpusError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Reads `dir`/manifest.tsv (tab-separated: name, relative path, expected
// `pass` or `fail:<part>`, description) and returns entries in manifest
// order. Throws CorpusError when a manifest line names a missing file, when
// a `.sos` file under `dir` has no manifest line, or on a malformed line.
// A directory without a manifest and without `.sos` files yields an empty
// list.
std::vector<CorpusEntry> load_corpus(const std::filesystem::path& dir);

}  // namespace lnc::corpus

#endif

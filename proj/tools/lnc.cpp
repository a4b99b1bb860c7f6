#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"
#include "lnc/corpus.hpp"
#include "lnc/eval.hpp"
#include "lnc/gsos.hpp"
#include "lnc/sos.hpp"

namespace {

using nlohmann::ordered_json;

constexpr int kExitPass = 0;
constexpr int kExitFail = 1;
constexpr int kExitParse = 2;
constexpr int kExitIo = 3;

std::optional<std::string> read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return std::nullopt;
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string outcome_str(const lnc::gsos::ValidationReport& rep) {
  return rep.pass ? "pass" : "fail:" + std::to_string(rep.part);
}

int cmd_check(const std::string& path, bool json) {
  auto text = read_file(path);
  if (!text) {
    std::cerr << "error: cannot read " << path << "\n";
    return kExitIo;
  }
  lnc::LanguageDef lang;
  try {
    lang = lnc::parse_language(*text);
  } catch (const lnc::ParseError& e) {
    std::cerr << path << ": parse error: " << e.what() << "\n";
    return kExitParse;
  }
  auto rep = lnc::gsos::validate_gsos(lang);
  if (json) {
    ordered_json j;
    j["file"] = path;
    j["outcome"] = rep.pass ? "pass" : "fail";
    j["part"] = rep.pass ? ordered_json(nullptr) : ordered_json(rep.part);
    j["rule_index"] =
        rep.pass ? ordered_json(nullptr) : ordered_json(rep.rule_index);
    j["message"] = rep.pass ? ordered_json(nullptr) : ordered_json(rep.message);
    std::cout << j.dump() << "\n";
  } else if (rep.pass) {
    std::cout << "OK: " << path << " conforms to GSOS\n";
  } else {
    std::cout << "GSOS violation (Part " << rep.part << ") in rule "
              << rep.rule_index << ": " << rep.message << "\n";
  }
  return rep.pass ? kExitPass : kExitFail;
}

int cmd_run(const std::string& program_path, const std::string& lang_path,
            bool json) {
  auto prog_text = read_file(program_path);
  if (!prog_text) {
    std::cerr << "error: cannot read " << program_path << "\n";
    return kExitIo;
  }
  auto lang_text = read_file(lang_path);
  if (!lang_text) {
    std::cerr << "error: cannot read " << lang_path << "\n";
    return kExitIo;
  }
  lnc::Program prog;
  lnc::LanguageDef lang;
  try {
    prog = lnc::parse_program(*prog_text);
  } catch (const lnc::ParseError& e) {
    std::cerr << program_path << ": parse error: " << e.what() << "\n";
    return kExitParse;
  }
  try {
    lang = lnc::parse_language(*lang_text);
  } catch (const lnc::ParseError& e) {
    std::cerr << lang_path << ": parse error: " << e.what() << "\n";
    return kExitParse;
  }
  try {
    lnc::Evaluator ev(lang);
    lnc::Value result = ev.run(prog);
    if (json) {
      ordered_json j;
      j["program"] = program_path;
      j["language"] = lang_path;
      j["outcome"] = "ok";
      j["value"] = lnc::render_value(result);
      j["message"] = nullptr;
      std::cout << j.dump() << "\n";
    } else {
      std::cout << lnc::render_value(result) << "\n";
    }
    return kExitPass;
  } catch (const lnc::EvalError& e) {
    if (json) {
      ordered_json j;
      j["program"] = program_path;
      j["language"] = lang_path;
      j["outcome"] =
          e.kind == lnc::EvalError::Kind::UserError ? "error" : "fault";
      j["value"] = nullptr;
      j["message"] = e.message;
      std::cout << j.dump() << "\n";
    } else {
      std::cout << e.message << "\n";
    }
    return kExitFail;
  }
}

int cmd_corpus(const std::string& dir, bool json) {
  std::vector<lnc::corpus::CorpusEntry> entries;
  try {
    entries = lnc::corpus::load_corpus(dir);
  } catch (const lnc::corpus::CorpusError& e) {
    std::cerr << "corpus error: " << e.what() << "\n";
    return kExitIo;
  }
  bool all_ok = true;
  for (const auto& entry : entries) {
    std::string expected = entry.expected.pass
                               ? "pass"
                               : "fail:" + std::to_string(entry.expected.part);
    auto text = read_file(entry.path.string());
    std::string dsl, oracle;
    bool agree = false, matches = false;
    if (!text) {
      dsl = oracle = "io-error";
    } else {
      try {
        lnc::LanguageDef lang = lnc::parse_language(*text);
        auto drep = lnc::gsos::validate_gsos(lang);
        auto orep = lnc::gsos::reference_check(lang);
        dsl = outcome_str(drep);
        oracle = outcome_str(orep);
        agree = drep.pass == orep.pass && drep.part == orep.part;
        matches = agree && dsl == expected;
      } catch (const lnc::ParseError&) {
        dsl = oracle = "parse-error";
      }
    }
    all_ok = all_ok && matches;
    if (json) {
      ordered_json j;
      j["name"] = entry.name;
      j["expected"] = expected;
      j["dsl"] = dsl;
      j["oracle"] = oracle;
      j["agree"] = agree;
      j["ok"] = matches;
      std::cout << j.dump() << "\n";
    } else {
      std::cout << std::left << std::setw(28) << entry.name << std::setw(8)
                << expected << std::setw(13) << dsl << std::setw(13) << oracle
                << (matches ? "ok" : "MISMATCH") << "\n";
    }
  }
  return all_ok ? kExitPass : kExitFail;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"GSOS rule-format validator and Lang-n-Change DSL runner"};
  app.require_subcommand(1);

  std::string lang_path, program_path, corpus_dir;
  bool json_check = false, json_run = false, json_corpus = false;

  auto* check = app.add_subcommand("check", "Validate a .sos language "
                                            "against the GSOS rule format");
  check->add_option("file", lang_path, "language definition (.sos)")
      ->required();
  check->add_flag("--json", json_check, "machine-readable output");

  auto* run = app.add_subcommand("run", "Run a DSL program over a language");
  run->add_option("program", program_path, "DSL program (.lnc)")->required();
  run->add_option("file", lang_path, "language definition (.sos)")->required();
  run->add_flag("--json", json_run, "machine-readable output");

  auto* corpus = app.add_subcommand("corpus", "Validate every corpus entry "
                                              "with both checkers");
  corpus->add_option("dir", corpus_dir, "corpus directory with manifest.tsv")
      ->required();
  corpus->add_flag("--json", json_corpus, "machine-readable output");

  CLI11_PARSE(app, argc, argv);

  if (check->parsed()) return cmd_check(lang_path, json_check);
  if (run->parsed()) return cmd_run(program_path, lang_path, json_run);
  return cmd_corpus(corpus_dir, json_corpus);
}

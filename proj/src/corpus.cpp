#include "useries/corpus.hpp"

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <numbers>
#include <sstream>

#include <json.hpp>

#include "useries/error.hpp"

#ifndef USERIES_DEFAULT_CORPUS
#define USERIES_DEFAULT_CORPUS "data/corpus.json"
#endif

namespace useries {

namespace {

using nlohmann::json;

FunctionHandle builtin(const std::string& name) {
  if (name == "exp") return FunctionHandle([](double x) { return std::exp(x); });
  if (name == "sin_2pi") return FunctionHandle([](double x) { return std::sin(2.0 * std::numbers::pi * x); });
  if (name == "abs_half") return FunctionHandle([](double x) { return std::abs(x - 0.5); });
  throw Error(Errc::invalid_argument, "corpus: unknown builtin '" + name + "'");
}

CorpusEntry parse_entry(const json& j) {
  if (!j.is_object()) throw Error(Errc::invalid_argument, "corpus: entries must be objects");
  CorpusEntry e{j.at("name").get<std::string>(), j.value("description", std::string{}), FunctionHandle(Polynomial{}),
                j.value("standard", false)};
  if (e.name.empty()) throw Error(Errc::invalid_argument, "corpus: empty name");
  const bool has_poly = j.contains("poly");
  const bool has_builtin = j.contains("builtin");
  if (has_poly == has_builtin)
    throw Error(Errc::invalid_argument, "corpus: '" + e.name + "' needs exactly one of poly, builtin");
  if (has_poly) {
    Polynomial p(j.at("poly").get<std::vector<double>>());
    if (j.contains("variable")) {
      const json& v = j.at("variable");
      p = p.compose_affine(v.value("scale", 1.0), v.value("offset", 0.0));
    }
    e.fn = FunctionHandle(std::move(p));
  } else {
    e.fn = builtin(j.at("builtin").get<std::string>());
  }
  return e;
}

}  // namespace

std::filesystem::path default_corpus_path() { return USERIES_DEFAULT_CORPUS; }

FunctionCorpus FunctionCorpus::parse(std::string_view json_text) {
  FunctionCorpus c;
  try {
    const json doc = json::parse(json_text);
    const int version = doc.at("version").get<int>();
    if (version != kVersion)
      throw Error(Errc::invalid_argument, "corpus: unsupported version " + std::to_string(version));
    for (const json& j : doc.at("functions")) {
      CorpusEntry e = parse_entry(j);
      if (c.contains(e.name)) throw Error(Errc::invalid_argument, "corpus: duplicate name '" + e.name + "'");
      c.entries_.push_back(std::move(e));
    }
  } catch (const json::exception& ex) {
    throw Error(Errc::invalid_argument, std::string("corpus: ") + ex.what());
  }
  return c;
}

FunctionCorpus FunctionCorpus::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(Errc::io, "corpus: cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse(ss.str());
}

FunctionCorpus FunctionCorpus::load_default() {
  if (const char* env = std::getenv("USERIES_CORPUS"); env && *env) return load(env);
  return load(default_corpus_path());
}

const CorpusEntry& FunctionCorpus::get(std::string_view name) const {
  for (const auto& e : entries_)
    if (e.name == name) return e;
  throw Error(Errc::not_found, "corpus: no function named '" + std::string(name) + "'");
}

bool FunctionCorpus::contains(std::string_view name) const noexcept {
  for (const auto& e : entries_)
    if (e.name == name) return true;
  return false;
}

std::vector<const CorpusEntry*> FunctionCorpus::standard() const {
  std::vector<const CorpusEntry*> out;
  for (const auto& e : entries_)
    if (e.standard) out.push_back(&e);
  return out;
}

}  // namespace useries

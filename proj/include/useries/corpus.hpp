#ifndef USERIES_CORPUS_HPP
#define USERIES_CORPUS_HPP

// Named cofactor functions h, read from a versioned JSON file.
//
//   {"version": 1,
//    "functions": [
//      {"name": "e2", "standard": true, "poly": [0, 0, 1]},
//      {"name": "abs_half_p8", "standard": true,
//       "poly": [...], "variable": {"scale": 2, "offset": -1}},
//      {"name": "exp", "builtin": "exp"}]}
//
// "poly" lists monomial coefficients in the variable scale*x + offset
// (default x).  "builtin" names one of exp, sin_2pi, abs_half.

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "useries/polyfun.hpp"

namespace useries {

struct CorpusEntry {
  std::string name;
  std::string description;
  FunctionHandle fn;
  /// Part of the standard set used for bound and convergence checks.
  bool standard;
};

class FunctionCorpus {
 public:
  static constexpr int kVersion = 1;

  static FunctionCorpus load(const std::filesystem::path& path);
  static FunctionCorpus parse(std::string_view json_text);
  /// $USERIES_CORPUS if set, otherwise the file shipped in data/.
  static FunctionCorpus load_default();

  const std::vector<CorpusEntry>& entries() const noexcept { return entries_; }
  /// Errc::not_found for unknown names.
  const CorpusEntry& get(std::string_view name) const;
  bool contains(std::string_view name) const noexcept;
  std::vector<const CorpusEntry*> standard() const;

 private:
  std::vector<CorpusEntry> entries_;
};

/// Path of the corpus file shipped with the sources.
std::filesystem::path default_corpus_path();

}  // namespace useries

#endif

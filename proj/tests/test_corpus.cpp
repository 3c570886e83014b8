#include <doctest.h>

#include <cmath>

#include "useries/corpus.hpp"
#include "useries/error.hpp"

using namespace useries;

namespace {

Errc code_of(std::string_view text) {
  try {
    FunctionCorpus::parse(text);
  } catch (const Error& e) {
    return e.code();
  }
  return Errc{};
}

}  // namespace

TEST_CASE("bundled corpus") {
  const FunctionCorpus c = FunctionCorpus::load(USERIES_TEST_DATA "/corpus.json");
  CHECK(c.entries().size() == 10);
  CHECK(c.standard().size() == 7);
  CHECK(c.contains("e4"));
  CHECK_FALSE(c.contains("nope"));
  try {
    c.get("nope");
    FAIL("expected not_found");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::not_found);
  }
  CHECK(c.get("one_minus_2x").fn(0.25) == doctest::Approx(0.5));
  CHECK(c.get("exp").fn(1.0) == doctest::Approx(std::exp(1.0)));
  CHECK(c.get("sin_2pi").fn(0.25) == doctest::Approx(1.0));
  CHECK(c.get("abs_half").fn(0.1) == doctest::Approx(0.4));
  CHECK_FALSE(c.get("exp").fn.is_polynomial());
  CHECK(c.get("abs_half_p8").fn.is_polynomial());
}

TEST_CASE("shifted polynomial entries") {
  const FunctionCorpus c = FunctionCorpus::load(default_corpus_path());
  const FunctionHandle& t6 = c.get("cheb6").fn;
  const FunctionHandle& p8 = c.get("abs_half_p8").fn;
  double err6 = 0.0, err8 = 0.0;
  for (int i = 0; i <= 4000; ++i) {
    const double x = i / 4000.0;
    err6 = std::max(err6, std::abs(t6(x) - std::cos(6.0 * std::acos(std::clamp(2 * x - 1, -1.0, 1.0)))));
    err8 = std::max(err8, std::abs(p8(x) - std::abs(x - 0.5)));
  }
  CHECK(err6 < 1e-12);
  CHECK(err8 == doctest::Approx(0.0173448637).epsilon(1e-6));
}

TEST_CASE("parse errors") {
  CHECK(code_of("{") == Errc::invalid_argument);
  CHECK(code_of(R"({"version": 2, "functions": []})") == Errc::invalid_argument);
  CHECK(code_of(R"({"version": 1})") == Errc::invalid_argument);
  CHECK(code_of(R"({"version": 1, "functions": [{"name": "a"}]})") == Errc::invalid_argument);
  CHECK(code_of(R"({"version": 1, "functions": [{"name": "a", "builtin": "tan"}]})") == Errc::invalid_argument);
  CHECK(code_of(R"({"version": 1, "functions": [{"name": "a", "poly": [1]}, {"name": "a", "poly": [2]}]})") ==
        Errc::invalid_argument);
  CHECK_THROWS_AS(FunctionCorpus::load("/nonexistent/corpus.json"), Error);
}

TEST_CASE("minimal parse") {
  const FunctionCorpus c = FunctionCorpus::parse(
      R"({"version": 1, "functions": [{"name": "q", "poly": [1, 1], "variable": {"scale": 2, "offset": -1}}]})");
  REQUIRE(c.entries().size() == 1);
  CHECK_FALSE(c.entries()[0].standard);
  CHECK(c.get("q").fn(1.0) == doctest::Approx(2.0));
  CHECK(c.get("q").fn(0.0) == doctest::Approx(0.0));
}

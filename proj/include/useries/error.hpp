#ifndef USERIES_ERROR_HPP
#define USERIES_ERROR_HPP

#include <stdexcept>
#include <string>

namespace useries {

enum class Errc {
  invalid_argument = 1,
  domain = 2,           // precondition on the function (e.g. nonvanishing endpoints)
  degree_overflow = 3,
  numerical = 4,
  convergence = 5,
  io = 6,
  not_found = 7,
};

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what) : std::runtime_error(what), code_(code) {}
  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

}  // namespace useries

#endif

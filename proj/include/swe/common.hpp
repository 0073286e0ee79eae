#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <sstream>
#include <stdexcept>
#include <string>

namespace swe {

using Eigen::Vector3d;

// Error raised for violated preconditions, broken geometry, solver failure, ...
class Error : public std::runtime_error {
public:
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

namespace detail {
template <typename... Args>
[[noreturn]] inline void fail(const char* cond, const char* file, int line, Args&&... args) {
  std::ostringstream os;
  os << "swe error: ";
  (os << ... << args);
  os << " [" << cond << " at " << file << ":" << line << "]";
  throw Error(os.str());
}
} // namespace detail

#define SWE_REQUIRE(cond, ...)                                                   \
  do {                                                                           \
    if (!(cond)) ::swe::detail::fail(#cond, __FILE__, __LINE__, __VA_ARGS__);    \
  } while (0)

inline constexpr double pi = 3.14159265358979323846;

// 90-degree rotation on the reference plane, R*(a,b) = (-b,a).
inline void rot90(const double v[2], double out[2]) {
  out[0] = -v[1];
  out[1] = v[0];
}

} // namespace swe

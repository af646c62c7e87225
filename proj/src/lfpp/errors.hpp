#pragma once
#include <stdexcept>
#include <string>

namespace lfpp {

// Error taxonomy shared by the whole library. The C layer maps these to
// status codes, the CLI maps them to exit codes (config -> 2, rest -> 1).
enum class errc : int {
  ok = 0,
  config = 1,      // bad parameters, malformed configuration
  domain = 2,      // geometry outside the sampled domain
  resolution = 3,  // request not resolvable at the current lattice spacing
  io = 4,          // file format / filesystem problems
  internal = 5,
};

class error : public std::runtime_error {
public:
  error(errc code, const std::string& what) : std::runtime_error(what), code_(code) {}
  errc code() const noexcept { return code_; }

private:
  errc code_;
};

[[noreturn]] inline void fail(errc code, const std::string& what) { throw error(code, what); }

inline void require(bool cond, errc code, const std::string& what) {
  if (!cond) fail(code, what);
}

}  // namespace lfpp

#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace pbn {

// Stable error codes; the CLI maps these to exit codes and prints the name.
enum class errc : int {
  invalid_input = 2,
  domain = 3,
  parse = 4,
  unknown_parent = 5,
  duplicate_node = 6,
  bad_probability = 7,
  arity = 8,
  capacity = 9,
  validation = 10,
  io = 11,
  insufficient_data = 12,
};

constexpr std::string_view errc_name(errc c) {
  switch (c) {
    case errc::invalid_input: return "invalid_input";
    case errc::domain: return "domain";
    case errc::parse: return "parse";
    case errc::unknown_parent: return "unknown_parent";
    case errc::duplicate_node: return "duplicate_node";
    case errc::bad_probability: return "bad_probability";
    case errc::arity: return "arity";
    case errc::capacity: return "capacity";
    case errc::validation: return "validation";
    case errc::io: return "io";
    case errc::insufficient_data: return "insufficient_data";
  }
  return "unknown";
}

class Error : public std::runtime_error {
 public:
  Error(errc code, const std::string& what) : std::runtime_error(what), code_(code) {}
  errc code() const noexcept { return code_; }
  int exit_code() const noexcept { return static_cast<int>(code_); }

 private:
  errc code_;
};

[[noreturn]] inline void raise(errc code, const std::string& what) { throw Error(code, what); }

}  // namespace pbn

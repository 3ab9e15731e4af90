#pragma once

#include <stdexcept>
#include <string>

namespace steinermap {

enum class ErrorCode {
  disconnected_target,
  size_limit_too_large,
  invalid_block,
  infeasible_balance,
  empty_region,
  malformed_header,
  pin_out_of_range,
  empty_net,
  asymmetric_edge,
  length_mismatch,
  too_large,
  io,
  config,
};

class Error : public std::runtime_error {
public:
  Error(ErrorCode code, const std::string &message) : std::runtime_error(message), code_(code) {}

  ErrorCode code() const { return code_; }

private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string &message) {
  throw Error(code, message);
}

} // namespace steinermap

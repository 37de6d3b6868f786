#pragma once

#include <stdexcept>
#include <string>

namespace brx {

/// Status codes shared between the C++ core and the C API.
enum class Status : int {
    ok = 0,
    parse_error = 1,
    dimension_mismatch = 2,
    dimension_too_large = 3,
    domain_error = 4,
    index_out_of_range = 5,
    infeasible_instance = 6,
    grid_too_large = 7,
    loop_outside_domain = 8,
    non_convergence = 9,
    invalid_argument = 10,
};

const char* status_name(Status s);

/// The single exception type thrown by the core; carries a Status so the
/// C boundary can translate it into an error code.
class Error : public std::runtime_error {
  public:
    Error(Status status, const std::string& what) : std::runtime_error(what), status_(status) {}
    Status status() const noexcept { return status_; }

  private:
    Status status_;
};

[[noreturn]] inline void fail(Status s, const std::string& msg) { throw Error(s, msg); }

} // namespace brx

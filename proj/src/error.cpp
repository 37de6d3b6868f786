#include "brx/error.hpp"

namespace brx {

const char* status_name(Status s) {
    switch (s) {
        case Status::ok: return "ok";
        case Status::parse_error: return "parse_error";
        case Status::dimension_mismatch: return "dimension_mismatch";
        case Status::dimension_too_large: return "dimension_too_large";
        case Status::domain_error: return "domain_error";
        case Status::index_out_of_range: return "index_out_of_range";
        case Status::infeasible_instance: return "infeasible_instance";
        case Status::grid_too_large: return "grid_too_large";
        case Status::loop_outside_domain: return "loop_outside_domain";
        case Status::non_convergence: return "non_convergence";
        case Status::invalid_argument: return "invalid_argument";
    }
    return "unknown";
}

} // namespace brx

#pragma once

#include <stdexcept>
#include <string>

namespace unravel {

struct error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct parse_error : error {
    using error::error;
};

// Formulas must be contingent: neither a tautology nor a contradiction.
struct tautology_error : error {
    using error::error;
};
struct contradiction_error : error {
    using error::error;
};

struct invalid_profile_error : error {
    using error::error;
};

struct bounds_error : error {
    using error::error;
};

struct inconsistent_certificate_error : error {
    using error::error;
};

struct cap_exceeded_error : error {
    cap_exceeded_error(const std::string& msg, unsigned long long requested_)
        : error(msg), requested(requested_) {}
    unsigned long long requested;
};

struct not_liquid_error : error {
    using error::error;
};

struct unreachable_node_error : error {
    using error::error;
};

struct agent_mismatch_error : error {
    using error::error;
};

struct domain_error : error {
    using error::error;
};

struct self_loop_error : error {
    using error::error;
};

struct parameter_error : error {
    using error::error;
};

}  // namespace unravel

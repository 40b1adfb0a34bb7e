#pragma once
#include <stdexcept>
#include <string>

namespace bfree {

// error categories map to cli exit codes: precondition/usage -> 2,
// budget -> 3, verification (a guaranteed invariant failed) -> 4.
struct error : std::runtime_error {
  explicit error(const std::string& m) : std::runtime_error(m) {}
};

struct precondition_error : error { using error::error; };
struct budget_exceeded : error { using error::error; };
struct verification_failure : error { using error::error; };

struct invalid_member : precondition_error { using precondition_error::precondition_error; };
struct not_admissible : precondition_error { using precondition_error::precondition_error; };
struct window_too_short : precondition_error { using precondition_error::precondition_error; };
struct exact_count_infeasible : precondition_error { using precondition_error::precondition_error; };
struct period_too_large : precondition_error { using precondition_error::precondition_error; };
struct not_coprime : precondition_error { using precondition_error::precondition_error; };
struct not_applicable : precondition_error { using precondition_error::precondition_error; };
struct hypothesis_unmet : precondition_error { using precondition_error::precondition_error; };
struct insufficient_rho_table : precondition_error { using precondition_error::precondition_error; };
struct divisible_polynomial : precondition_error { using precondition_error::precondition_error; };

} // namespace bfree

#ifndef MVPAVE_ERRORS_HPP
#define MVPAVE_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace mvpave {

// Everything thrown by the library derives from domain_error; the CLI maps it
// to exit status 2.
struct domain_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

#define MVPAVE_ERROR(name)                                          \
    struct name : domain_error {                                    \
        explicit name(const std::string &what = #name)              \
            : domain_error(std::string(#name ": ") + what) {}       \
    }

MVPAVE_ERROR(precision_loss);
MVPAVE_ERROR(division_by_zero);
MVPAVE_ERROR(inconsistent_family);
MVPAVE_ERROR(not_mv);
MVPAVE_ERROR(singular_matrix);
MVPAVE_ERROR(gauss_failure);
MVPAVE_ERROR(retry_exhausted);
MVPAVE_ERROR(budget_exceeded);
MVPAVE_ERROR(shape_mismatch);
MVPAVE_ERROR(normal_position_required);
MVPAVE_ERROR(pattern_mismatch);
MVPAVE_ERROR(precondition_violation);
MVPAVE_ERROR(paving_verification_failed);

#undef MVPAVE_ERROR

} // namespace mvpave

#endif

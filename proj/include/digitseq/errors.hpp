#pragma once

#include <stdexcept>

namespace digitseq {

// Invalid user-supplied parameters or input files. CLI exit code 2.
struct usage_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Enumeration or memory budget exceeded. CLI exit code 3.
struct budget_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A cross-checked identity failed at runtime. CLI exit code 4.
struct internal_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

} // namespace digitseq

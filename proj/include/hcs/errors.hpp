#pragma once

#include <stdexcept>
#include <string>

namespace hcs {

// Bad arguments, malformed files, labelings out of range, matrices that fail
// their structural checks, and similar caller mistakes.  CLI exit code 2.
struct InvalidParameterError : std::runtime_error {
    explicit InvalidParameterError(const std::string& what) : std::runtime_error(what) {}
};

// Request would exceed a hard table/graph size cap or a search budget.
// CLI exit code 3.
struct SizeLimitError : std::runtime_error {
    explicit SizeLimitError(const std::string& what) : std::runtime_error(what) {}
};

// An experiment driver observed an outcome it is contracted to reject
// (e.g. a planted instance failing completeness).  CLI exit code 4.
struct ExperimentFailure : std::runtime_error {
    explicit ExperimentFailure(const std::string& what) : std::runtime_error(what) {}
};

inline void require(bool cond, const std::string& msg) {
    if (!cond) throw InvalidParameterError(msg);
}

}  // namespace hcs

#pragma once

#include <stdexcept>
#include <string>

namespace ortho {

struct DomainError : std::domain_error {
    using std::domain_error::domain_error;
};

struct GeometryError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct AmbiguousGeometry : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct BudgetExceeded : std::runtime_error {
    using std::runtime_error::runtime_error;
};

} // namespace ortho

#pragma once

#include <stdexcept>
#include <string>

namespace prs {

// Reading a series coefficient outside its trust window, or asking a
// cohomology question the current truncation cannot answer. Callers are
// expected to enlarge the Truncation and retry.
struct untrusted_window_error : std::runtime_error {
    explicit untrusted_window_error(const std::string& what) : std::runtime_error(what) {}
};

// A prescribed principal part has a nonzero residue: there is no elliptic
// function of order one, so realization is impossible.
struct order_one_pole_error : std::runtime_error {
    explicit order_one_pole_error(const std::string& what) : std::runtime_error(what) {}
};

// A chart field violates the section degree caps (xi-degree <= 2 on d/dxi
// and bivector coefficients, xi-degree 0 on d/du coefficients).
struct ill_formed_section_error : std::runtime_error {
    explicit ill_formed_section_error(const std::string& what) : std::runtime_error(what) {}
};

// Moebius transition data whose determinant is not invertible in the
// working window.
struct singular_transition_error : std::runtime_error {
    explicit singular_transition_error(const std::string& what) : std::runtime_error(what) {}
};

struct invalid_parameters_error : std::runtime_error {
    explicit invalid_parameters_error(const std::string& what) : std::runtime_error(what) {}
};

// A deformation family whose first-order data does not live where the base
// Poisson structure requires it to (e.g. a t-derivative cocycle outside
// ker H^1(Theta) -> H^1(wedge^2 Theta)).
struct inconsistent_family_error : std::runtime_error {
    explicit inconsistent_family_error(const std::string& what) : std::runtime_error(what) {}
};

} // namespace prs

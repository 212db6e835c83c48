#ifndef SZG_TYPES_HPP
#define SZG_TYPES_HPP

#include <complex>
#include <stdexcept>
#include <string>

namespace szg {

using cpx = std::complex<double>;

inline constexpr double pi = 3.14159265358979323846;
inline constexpr cpx iunit{0.0, 1.0};
inline constexpr const char* version = "0.1.0";

// Error taxonomy mirrors the CLI exit codes: invalid_input -> 4,
// numeric_error -> 2, io_error -> 3.
struct invalid_input : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct numeric_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct io_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Value plus a near-boundary accuracy warning. The flag is advisory: interior
// evaluation within a few node spacings of the boundary loses the spectral
// accuracy of the trapezoid rule.
template <typename T>
struct Flagged {
    T value{};
    bool near_boundary = false;
    operator T() const { return value; }
};

}  // namespace szg

#endif

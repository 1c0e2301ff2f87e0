#pragma once

#include "doctest.h"

namespace leoshare::testing {

// doctest::Approx adds an absolute slack of epsilon by default, which hides every
// mismatch between quantities far below one. This variant is purely relative.
inline doctest::Approx approx(double value) {
    return doctest::Approx(value).scale(0.0);
}

}  // namespace leoshare::testing

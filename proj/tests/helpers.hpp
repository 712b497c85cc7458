#pragma once

#include <random>
#include <string>
#include <vector>

#include "pqm/f2lin.hpp"
#include "pqm/pqmod.hpp"
#include "pqm/tanglezoo.hpp"

namespace testutil {

inline pqm::F2Matrix random_matrix(std::mt19937& rng, std::size_t r, std::size_t c) {
    pqm::F2Matrix m(r, c);
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < c; ++j) m.set(i, j, rng() & 1u);
    return m;
}

inline pqm::F2Matrix random_invertible(std::mt19937& rng, std::size_t n) {
    for (;;) {
        auto m = random_matrix(rng, n, n);
        if (pqm::is_invertible(m)) return m;
    }
}

// monic polynomial of the given degree with nonzero constant term
inline pqm::F2Poly random_poly(std::mt19937& rng, int deg) {
    std::vector<bool> c(deg + 1);
    for (int i = 1; i < deg; ++i) c[i] = rng() & 1u;
    c[0] = true;
    c[deg] = true;
    return pqm::F2Poly(c);
}

// every builder spec exercised by the suites
inline const std::vector<std::string>& builder_specs() {
    static const std::vector<std::string> specs = {
        "zero",       "inf",        "x+",          "x-",          "twist:2",     "twist:-2",    "twist:3",
        "twist:-3",   "twist:4",    "twist:-4",    "pretzel:1,1", "pretzel:1,2", "pretzel:2,1", "pretzel:2,2",
        "pretzel:3,1", "pretzel:3,2", "fig8:a",    "fig8:b",      "rational:3/2", "rational:-2/5"};
    return specs;
}

}  // namespace testutil

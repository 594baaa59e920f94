#pragma once

#include <array>
#include <cstdint>
#include <optional>

#include "tsd/diagram.hpp"

namespace tsd {

// Critical point counts induced by a generalized bridge trisection: ambient
// index-1/2/3 handles and the restricted function's minima/saddles/maxima.
struct MorseData {
    std::int64_t n1 = 0, n2 = 0, n3 = 0;
    std::int64_t minima = 0, saddles = 0, maxima = 0;
};

// Parameters of the n-fold cyclic branched cover.
struct CoverParams {
    std::int64_t n = 1;
    std::int64_t g = 0;
    std::array<std::int64_t, 3> k{0, 0, 0};
    std::int64_t b = 0;
    std::array<std::int64_t, 3> c{0, 0, 0};
};

// chi of the knotted surface: c1 + c2 + c3 - b. For b = 0 there is no
// surface; callers that care use surface_euler_characteristic_opt.
std::int64_t euler_char_surface(const ComplexityTuple& t);
std::optional<std::int64_t> euler_char_surface_opt(const ComplexityTuple& t);

// chi of the ambient 4-manifold: 2 + g - (k1 + k2 + k3).
std::int64_t euler_char_ambient(const ComplexityTuple& t);

// Per-sector disk counts c_i from the endpoint matchings (alternating
// circuit counts); (0,0,0) when b = 0.
std::array<int, 3> disk_counts(const ShadowDiagram& d);

// Number of connected components of the knotted surface: components of the
// bridge-point graph under all three matchings; 0 when b = 0.
int component_count(const ShadowDiagram& d);

// b = 3n - chi(K); requires b >= 1.
bool is_efficient(const ShadowDiagram& d);
bool is_efficient_tuple(const ComplexityTuple& t, int n);

// Throws PreconditionError when g < k2 or b < c2 (negative counts).
MorseData morse_data(const ComplexityTuple& t);

// g' = n g + (n-1)(b-1), k_i' = n k_i + (n-1)(c_i - 1); b, c unchanged.
// Throws PreconditionError for n < 1, OverflowError on overflow.
CoverParams branched_cover_params(const ComplexityTuple& t, std::int64_t n);
std::int64_t cover_ambient_euler_char(const CoverParams& p);

} // namespace tsd

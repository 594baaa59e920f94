#pragma once

#include <cstdint>
#include <stdexcept>
#include <vector>

namespace tsd {

// Thrown when integer arithmetic would overflow. Parameters in this domain
// are tiny, so any overflow signals corrupted input rather than a real limit.
struct OverflowError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

inline std::int64_t checked_add(std::int64_t a, std::int64_t b) {
    std::int64_t r;
    if (__builtin_add_overflow(a, b, &r)) throw OverflowError("integer overflow in addition");
    return r;
}

inline std::int64_t checked_sub(std::int64_t a, std::int64_t b) {
    std::int64_t r;
    if (__builtin_sub_overflow(a, b, &r)) throw OverflowError("integer overflow in subtraction");
    return r;
}

inline std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
    std::int64_t r;
    if (__builtin_mul_overflow(a, b, &r)) throw OverflowError("integer overflow in multiplication");
    return r;
}

// Dense row-major integer matrix, just big enough for the intersection
// pairings that show up here (g x g with g in the single digits).
class IntMatrix {
public:
    IntMatrix() = default;
    IntMatrix(int rows, int cols) : rows_(rows), cols_(cols), data_(static_cast<size_t>(rows) * cols, 0) {}

    int rows() const { return rows_; }
    int cols() const { return cols_; }

    std::int64_t& at(int r, int c) { return data_[static_cast<size_t>(r) * cols_ + c]; }
    std::int64_t at(int r, int c) const { return data_[static_cast<size_t>(r) * cols_ + c]; }

    bool operator==(const IntMatrix& o) const = default;

    IntMatrix negated() const {
        IntMatrix m(rows_, cols_);
        for (size_t i = 0; i < data_.size(); ++i) m.data_[i] = checked_sub(0, data_[i]);
        return m;
    }

private:
    int rows_ = 0, cols_ = 0;
    std::vector<std::int64_t> data_;
};

// Invariant factors d_1 | d_2 | ... | d_r of an integer matrix, all
// nonnegative, trailing zeros included up to min(rows, cols).
std::vector<std::int64_t> smith_invariant_factors(IntMatrix m);

// Rank over Q (number of nonzero invariant factors).
int integer_rank(const IntMatrix& m);

// True when the Smith normal form is diag(1,...,1,0,...,0) with exactly
// `expected_ones` ones.
bool snf_is_unit_rank(const IntMatrix& m, int expected_ones);

} // namespace tsd

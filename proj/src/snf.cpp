#include "tsd/snf.hpp"

#include <cstdlib>

namespace tsd {

namespace {

std::int64_t abs64(std::int64_t v) {
    if (v == INT64_MIN) throw OverflowError("integer overflow in abs");
    return v < 0 ? -v : v;
}

void swap_rows(IntMatrix& m, int a, int b) {
    if (a == b) return;
    for (int c = 0; c < m.cols(); ++c) std::swap(m.at(a, c), m.at(b, c));
}

void swap_cols(IntMatrix& m, int a, int b) {
    if (a == b) return;
    for (int r = 0; r < m.rows(); ++r) std::swap(m.at(r, a), m.at(r, b));
}

// row[a] -= q * row[b]
void row_axpy(IntMatrix& m, int a, int b, std::int64_t q) {
    for (int c = 0; c < m.cols(); ++c) m.at(a, c) = checked_sub(m.at(a, c), checked_mul(q, m.at(b, c)));
}

void col_axpy(IntMatrix& m, int a, int b, std::int64_t q) {
    for (int r = 0; r < m.rows(); ++r) m.at(r, a) = checked_sub(m.at(r, a), checked_mul(q, m.at(r, b)));
}

} // namespace

std::vector<std::int64_t> smith_invariant_factors(IntMatrix m) {
    const int n = std::min(m.rows(), m.cols());
    std::vector<std::int64_t> factors;
    factors.reserve(n);

    for (int t = 0; t < n; ++t) {
        // Find the nonzero entry of smallest absolute value in the
        // remaining block; bail out to all-zero factors if none.
        int pr = -1, pc = -1;
        std::int64_t best = 0;
        for (int r = t; r < m.rows(); ++r)
            for (int c = t; c < m.cols(); ++c) {
                std::int64_t v = m.at(r, c);
                if (v != 0 && (pr < 0 || abs64(v) < best)) {
                    pr = r;
                    pc = c;
                    best = abs64(v);
                }
            }
        if (pr < 0) break;

        swap_rows(m, t, pr);
        swap_cols(m, t, pc);

        // Euclidean reduction until the pivot divides its row and column,
        // then clear them. Re-pivot whenever a smaller remainder appears.
        bool dirty = true;
        while (dirty) {
            dirty = false;
            for (int r = t + 1; r < m.rows(); ++r) {
                if (m.at(r, t) == 0) continue;
                std::int64_t q = m.at(r, t) / m.at(t, t);
                row_axpy(m, r, t, q);
                if (m.at(r, t) != 0) {
                    swap_rows(m, t, r);
                    dirty = true;
                }
            }
            for (int c = t + 1; c < m.cols(); ++c) {
                if (m.at(t, c) == 0) continue;
                std::int64_t q = m.at(t, c) / m.at(t, t);
                col_axpy(m, c, t, q);
                if (m.at(t, c) != 0) {
                    swap_cols(m, t, c);
                    dirty = true;
                }
            }
            if (dirty) continue;
            // Divisibility condition: pivot must divide every remaining
            // entry; if not, fold the offending row in and restart.
            for (int r = t + 1; r < m.rows() && !dirty; ++r)
                for (int c = t + 1; c < m.cols() && !dirty; ++c)
                    if (m.at(r, c) % m.at(t, t) != 0) {
                        for (int cc = t; cc < m.cols(); ++cc)
                            m.at(t, cc) = checked_add(m.at(t, cc), m.at(r, cc));
                        dirty = true;
                    }
        }
        factors.push_back(abs64(m.at(t, t)));
    }

    while (static_cast<int>(factors.size()) < n) factors.push_back(0);
    return factors;
}

int integer_rank(const IntMatrix& m) {
    auto f = smith_invariant_factors(m);
    int rank = 0;
    for (auto v : f)
        if (v != 0) ++rank;
    return rank;
}

bool snf_is_unit_rank(const IntMatrix& m, int expected_ones) {
    auto f = smith_invariant_factors(m);
    int ones = 0;
    for (auto v : f) {
        if (v == 0) continue;
        if (v != 1) return false;
        ++ones;
    }
    return ones == expected_ones;
}

} // namespace tsd

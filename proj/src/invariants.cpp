#include "tsd/invariants.hpp"

#include <vector>

namespace tsd {

std::int64_t euler_char_surface(const ComplexityTuple& t) {
    return checked_sub(checked_add(checked_add(t.c[0], t.c[1]), t.c[2]), t.b);
}

std::optional<std::int64_t> euler_char_surface_opt(const ComplexityTuple& t) {
    if (t.b == 0) return std::nullopt;
    return euler_char_surface(t);
}

std::int64_t euler_char_ambient(const ComplexityTuple& t) {
    return checked_sub(checked_add(2, t.g), checked_add(checked_add(t.k[0], t.k[1]), t.k[2]));
}

std::array<int, 3> disk_counts(const ShadowDiagram& d) {
    ComplexityTuple t = complexity(d);
    return t.c;
}

int component_count(const ShadowDiagram& d) {
    ValidationReport rep = validate(d);
    if (!rep.accepted()) throw PreconditionError("component count of a rejected diagram");
    if (rep.bridges == 0) return 0;
    auto ma = endpoint_matching(d, SystemLabel::A);
    auto mb = endpoint_matching(d, SystemLabel::B);
    auto mc = endpoint_matching(d, SystemLabel::C);
    const int n = static_cast<int>(ma.size());
    // Breadth-first components of the union graph.
    std::vector<int> comp(n, -1);
    int count = 0;
    std::vector<int> stack;
    for (int p = 0; p < n; ++p) {
        if (comp[p] >= 0) continue;
        ++count;
        comp[p] = count;
        stack.push_back(p);
        while (!stack.empty()) {
            int q = stack.back();
            stack.pop_back();
            for (int r : {ma[q], mb[q], mc[q]})
                if (comp[r] < 0) {
                    comp[r] = count;
                    stack.push_back(r);
                }
        }
    }
    return count;
}

bool is_efficient_tuple(const ComplexityTuple& t, int n) {
    if (t.b < 1) throw PreconditionError("efficiency is defined for b >= 1");
    return t.b == checked_sub(checked_mul(3, n), euler_char_surface(t));
}

bool is_efficient(const ShadowDiagram& d) {
    ComplexityTuple t = complexity(d);
    return is_efficient_tuple(t, component_count(d));
}

MorseData morse_data(const ComplexityTuple& t) {
    if (t.g < t.k[1]) throw PreconditionError("invalid tuple: g < k2");
    if (t.b < t.c[1]) throw PreconditionError("invalid tuple: b < c2");
    MorseData m;
    m.n1 = t.k[0];
    m.n2 = t.g - t.k[1];
    m.n3 = t.k[2];
    m.minima = t.c[0];
    m.saddles = t.b - t.c[1];
    m.maxima = t.c[2];
    return m;
}

CoverParams branched_cover_params(const ComplexityTuple& t, std::int64_t n) {
    if (n < 1) throw PreconditionError("cover degree must be at least 1");
    CoverParams p;
    p.n = n;
    p.g = checked_add(checked_mul(n, t.g), checked_mul(n - 1, checked_sub(t.b, 1)));
    for (int i = 0; i < 3; ++i)
        p.k[i] = checked_add(checked_mul(n, t.k[i]), checked_mul(n - 1, checked_sub(t.c[i], 1)));
    p.b = t.b;
    p.c = {t.c[0], t.c[1], t.c[2]};
    return p;
}

std::int64_t cover_ambient_euler_char(const CoverParams& p) {
    return checked_sub(checked_add(2, p.g), checked_add(checked_add(p.k[0], p.k[1]), p.k[2]));
}

} // namespace tsd

#include "crn/vec.hpp"

#include <algorithm>
#include <cassert>

namespace crn::vec {

bool all_nonnegative(const Counts& v) {
    return std::all_of(v.begin(), v.end(), [](long long x) { return x >= 0; });
}

bool is_zero(const Counts& v) {
    return std::all_of(v.begin(), v.end(), [](long long x) { return x == 0; });
}

bool ge(const Counts& a, const Counts& b) {
    assert(a.size() == b.size());
    for (std::size_t i = 0; i < a.size(); ++i)
        if (a[i] < b[i]) return false;
    return true;
}

Delta sub(const Counts& a, const Counts& b) {
    assert(a.size() == b.size());
    Delta out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] - b[i];
    return out;
}

Counts add_delta(const Counts& x, const Delta& d) {
    assert(x.size() == d.size());
    Counts out(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) out[i] = x[i] + d[i];
    return out;
}

Counts add(const Counts& a, const Counts& b) {
    assert(a.size() == b.size());
    Counts out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] + b[i];
    return out;
}

Counts clamped_sub(const Counts& a, const Counts& b) {
    assert(a.size() == b.size());
    Counts out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) out[i] = std::max(a[i] - b[i], 0LL);
    return out;
}

Counts cwise_max(const Counts& a, const Counts& b) {
    assert(a.size() == b.size());
    Counts out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) out[i] = std::max(a[i], b[i]);
    return out;
}

long long total(const Counts& v) {
    long long s = 0;
    for (long long x : v) s += x;
    return s;
}

std::string to_string(const Counts& v) {
    std::string out = "(";
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) out += ",";
        out += std::to_string(v[i]);
    }
    out += ")";
    return out;
}

}  // namespace crn::vec

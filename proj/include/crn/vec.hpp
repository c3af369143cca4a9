#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

namespace crn {

/// Dense count vectors. Counts/Complex entries are nonnegative; Delta entries
/// may be negative (a jump vector).
using Counts = std::vector<long long>;
using Delta = std::vector<long long>;

namespace vec {

bool all_nonnegative(const Counts& v);
bool is_zero(const Counts& v);

/// Componentwise a >= b.
bool ge(const Counts& a, const Counts& b);

Delta sub(const Counts& a, const Counts& b);
Counts add_delta(const Counts& x, const Delta& d);  // entries may go negative; caller checks
Counts add(const Counts& a, const Counts& b);

/// Componentwise max(a - b, 0).
Counts clamped_sub(const Counts& a, const Counts& b);

/// Componentwise max.
Counts cwise_max(const Counts& a, const Counts& b);

long long total(const Counts& v);

struct Hash {
    std::size_t operator()(const Counts& v) const {
        std::size_t h = 1469598103934665603ULL;
        for (long long x : v) {
            h ^= static_cast<std::size_t>(x) + 0x9e3779b97f4a7c15ULL;
            h *= 1099511628211ULL;
        }
        return h;
    }
};

std::string to_string(const Counts& v);

}  // namespace vec
}  // namespace crn

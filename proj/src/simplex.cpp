#include "crn/simplex.hpp"

#include <cassert>

#include "crn/errors.hpp"

namespace crn {

std::optional<std::vector<Rational>> lp_feasible_point(RationalMatrix constraints,
                                                       std::vector<Rational> rhs) {
    const std::size_t m = constraints.size();
    if (m == 0) return std::vector<Rational>{};
    const std::size_t n = constraints[0].size();
    assert(rhs.size() == m);

    for (std::size_t i = 0; i < m; ++i) {
        if (rhs[i] < 0) {
            for (auto& v : constraints[i]) v = -v;
            rhs[i] = -rhs[i];
        }
    }

    // Tableau [A | I | rhs] with one artificial per row; phase-1 objective
    // minimizes the artificial sum.
    const std::size_t cols = n + m;
    RationalMatrix tab(m, std::vector<Rational>(cols + 1));
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = 0; j < n; ++j) tab[i][j] = constraints[i][j];
        tab[i][n + i] = 1;
        tab[i][cols] = rhs[i];
    }
    std::vector<std::size_t> basis(m);
    for (std::size_t i = 0; i < m; ++i) basis[i] = n + i;

    // Reduced costs d_j = c_j - sum of rows (artificial costs are 1).
    std::vector<Rational> reduced(cols + 1);
    for (std::size_t j = 0; j <= cols; ++j) {
        Rational s(0);
        for (std::size_t i = 0; i < m; ++i) s += tab[i][j];
        reduced[j] = (j < n ? Rational(0) : (j < cols ? Rational(1) : Rational(0))) - s;
    }

    for (;;) {
        // Bland's rule: smallest-index entering column with negative reduced cost.
        std::size_t enter = cols;
        for (std::size_t j = 0; j < cols; ++j) {
            if (reduced[j] < 0) {
                enter = j;
                break;
            }
        }
        if (enter == cols) break;

        std::size_t leave = m;
        Rational best;
        for (std::size_t i = 0; i < m; ++i) {
            if (tab[i][enter] <= 0) continue;
            Rational ratio = tab[i][cols] / tab[i][enter];
            if (leave == m || ratio < best || (ratio == best && basis[i] < basis[leave])) {
                best = ratio;
                leave = i;
            }
        }
        if (leave == m) return std::nullopt;  // phase-1 objective unbounded: cannot happen

        Rational pivot = tab[leave][enter];
        for (std::size_t j = 0; j <= cols; ++j) tab[leave][j] /= pivot;
        for (std::size_t i = 0; i < m; ++i) {
            if (i == leave || tab[i][enter] == 0) continue;
            Rational f = tab[i][enter];
            for (std::size_t j = 0; j <= cols; ++j) tab[i][j] -= f * tab[leave][j];
        }
        Rational f = reduced[enter];
        for (std::size_t j = 0; j <= cols; ++j) reduced[j] -= f * tab[leave][j];
        basis[leave] = enter;
    }

    Rational objective(0);
    for (std::size_t i = 0; i < m; ++i)
        if (basis[i] >= n) objective += tab[i][cols];
    if (objective != 0) return std::nullopt;

    std::vector<Rational> x(n, Rational(0));
    for (std::size_t i = 0; i < m; ++i)
        if (basis[i] < n) x[basis[i]] = tab[i][cols];
    return x;
}

std::optional<std::vector<BigInt>> positive_cone_combination(
    const std::vector<std::vector<long long>>& vectors) {
    const std::size_t q = vectors.size();
    if (q == 0) return std::nullopt;
    const std::size_t n = vectors[0].size();

    // Find k >= 0 with sum_j k_j v_j >= 0 and total coordinate sum 1 (the cone
    // is scale-invariant, so hitting sum 1 is the same as hitting anything
    // positive). Variables: k (q), slack s (n):  V k - s = 0,  1^T V k = 1.
    RationalMatrix constraints(n + 1, std::vector<Rational>(q + n, Rational(0)));
    std::vector<Rational> rhs(n + 1, Rational(0));
    for (std::size_t row = 0; row < n; ++row) {
        for (std::size_t j = 0; j < q; ++j) constraints[row][j] = Rational(vectors[j][row]);
        constraints[row][q + row] = Rational(-1);
    }
    for (std::size_t j = 0; j < q; ++j) {
        Rational colsum(0);
        for (std::size_t row = 0; row < n; ++row) colsum += Rational(vectors[j][row]);
        constraints[n][j] = colsum;
    }
    rhs[n] = Rational(1);

    auto solution = lp_feasible_point(std::move(constraints), std::move(rhs));
    if (!solution) return std::nullopt;

    BigInt lcm(1);
    for (std::size_t j = 0; j < q; ++j) {
        BigInt d = denominator((*solution)[j]);
        lcm = lcm / gcd(lcm, d) * d;
    }
    std::vector<BigInt> coeffs(q);
    for (std::size_t j = 0; j < q; ++j)
        coeffs[j] = numerator((*solution)[j]) * (lcm / denominator((*solution)[j]));
    return coeffs;
}

}  // namespace crn

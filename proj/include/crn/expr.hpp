#pragma once

#include <memory>
#include <string>
#include <vector>

#include "crn/rational.hpp"
#include "crn/vec.hpp"

namespace crn {

/// Linear condition over species counts: sum(coeffs[i]*x[i]) + offset  <op>  0.
struct LinearCondition {
    enum class Op { ge, gt, le, lt, eq };
    std::vector<long long> coeffs;
    long long offset = 0;
    Op op = Op::ge;

    bool holds(const Counts& x) const;
};

/// Closed-form rate expression over species counts. Supports +, -, *, /,
/// integer powers, factorial, and indicator functions of linear conditions,
/// which is enough to express non-polynomial kinetics exactly.
class RateExpr {
public:
    enum class Kind { constant, species, add, sub, mul, div, neg, pow, factorial, indicator };

    static std::shared_ptr<RateExpr> constant(Rational v);
    static std::shared_ptr<RateExpr> species(int index);
    static std::shared_ptr<RateExpr> binary(Kind k, std::shared_ptr<RateExpr> a, std::shared_ptr<RateExpr> b);
    static std::shared_ptr<RateExpr> negate(std::shared_ptr<RateExpr> a);
    static std::shared_ptr<RateExpr> power(std::shared_ptr<RateExpr> a, long long e);
    static std::shared_ptr<RateExpr> fact(std::shared_ptr<RateExpr> a);
    static std::shared_ptr<RateExpr> indicator(std::vector<LinearCondition> conds);

    /// Exact evaluation; throws ExprEvaluationError on division by zero or a
    /// factorial of a negative/non-integer argument.
    Rational eval(const Counts& x) const;

    Kind kind() const { return kind_; }

private:
    RateExpr(Kind k) : kind_(k) {}

    Kind kind_;
    Rational value_;
    int species_ = -1;
    std::shared_ptr<RateExpr> lhs_;
    std::shared_ptr<RateExpr> rhs_;
    long long exponent_ = 0;
    std::vector<LinearCondition> conditions_;
};

using RateExprPtr = std::shared_ptr<RateExpr>;

/// Parses an expression in terms of the given species names.
/// `offset_col` shifts reported column positions into the enclosing line.
RateExprPtr parse_rate_expr(const std::string& text, const std::vector<std::string>& species_names,
                            int line, int offset_col);

}  // namespace crn

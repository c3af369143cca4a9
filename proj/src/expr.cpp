#include "crn/expr.hpp"

#include <cctype>

#include "crn/errors.hpp"

namespace crn {

bool LinearCondition::holds(const Counts& x) const {
    long long lhs = offset;
    for (std::size_t i = 0; i < coeffs.size() && i < x.size(); ++i) lhs += coeffs[i] * x[i];
    switch (op) {
        case Op::ge: return lhs >= 0;
        case Op::gt: return lhs > 0;
        case Op::le: return lhs <= 0;
        case Op::lt: return lhs < 0;
        case Op::eq: return lhs == 0;
    }
    return false;
}

RateExprPtr RateExpr::constant(Rational v) {
    auto e = std::shared_ptr<RateExpr>(new RateExpr(Kind::constant));
    e->value_ = std::move(v);
    return e;
}

RateExprPtr RateExpr::species(int index) {
    auto e = std::shared_ptr<RateExpr>(new RateExpr(Kind::species));
    e->species_ = index;
    return e;
}

RateExprPtr RateExpr::binary(Kind k, RateExprPtr a, RateExprPtr b) {
    auto e = std::shared_ptr<RateExpr>(new RateExpr(k));
    e->lhs_ = std::move(a);
    e->rhs_ = std::move(b);
    return e;
}

RateExprPtr RateExpr::negate(RateExprPtr a) {
    auto e = std::shared_ptr<RateExpr>(new RateExpr(Kind::neg));
    e->lhs_ = std::move(a);
    return e;
}

RateExprPtr RateExpr::power(RateExprPtr a, long long exp) {
    auto e = std::shared_ptr<RateExpr>(new RateExpr(Kind::pow));
    e->lhs_ = std::move(a);
    e->exponent_ = exp;
    return e;
}

RateExprPtr RateExpr::fact(RateExprPtr a) {
    auto e = std::shared_ptr<RateExpr>(new RateExpr(Kind::factorial));
    e->lhs_ = std::move(a);
    return e;
}

RateExprPtr RateExpr::indicator(std::vector<LinearCondition> conds) {
    auto e = std::shared_ptr<RateExpr>(new RateExpr(Kind::indicator));
    e->conditions_ = std::move(conds);
    return e;
}

Rational RateExpr::eval(const Counts& x) const {
    switch (kind_) {
        case Kind::constant:
            return value_;
        case Kind::species:
            return Rational(x.at(static_cast<std::size_t>(species_)));
        case Kind::add:
            return lhs_->eval(x) + rhs_->eval(x);
        case Kind::sub:
            return lhs_->eval(x) - rhs_->eval(x);
        case Kind::mul: {
            Rational a = lhs_->eval(x);
            if (a == 0) return a;  // skip the other branch; 0 * anything defined is 0
            return a * rhs_->eval(x);
        }
        case Kind::div: {
            Rational d = rhs_->eval(x);
            if (d == 0) throw ExprEvaluationError("division by zero in rate expression");
            return lhs_->eval(x) / d;
        }
        case Kind::neg:
            return -lhs_->eval(x);
        case Kind::pow:
            return rational_pow(lhs_->eval(x), exponent_);
        case Kind::factorial: {
            Rational a = lhs_->eval(x);
            if (denominator(a) != 1) throw ExprEvaluationError("factorial of non-integer in rate expression");
            if (a < 0) throw ExprEvaluationError("factorial of negative value in rate expression");
            return Rational(factorial(numerator(a).convert_to<long long>()));
        }
        case Kind::indicator: {
            for (const auto& c : conditions_)
                if (!c.holds(x)) return Rational(0);
            return Rational(1);
        }
    }
    throw InternalError("unreachable rate expression kind");
}

namespace {

// Recursive-descent parser over a single-line expression.
//
//   expr    := term (('+'|'-') term)*
//   term    := unary (('*'|'/') unary)*
//   unary   := '-' unary | postfix
//   postfix := primary ('!' | '^' integer)*
//   primary := rational | species | '(' expr ')' | 'ind' '(' cond (',' cond)* ')'
//   cond    := linsum ('<='|'<'|'>='|'>'|'=='|'=') linsum
class ExprParser {
public:
    ExprParser(const std::string& text, const std::vector<std::string>& names, int line, int offset_col)
        : text_(text), names_(names), line_(line), offset_(offset_col) {}

    RateExprPtr parse() {
        auto e = parse_expr();
        skip_ws();
        if (pos_ != text_.size()) fail("unexpected trailing input in rate expression");
        return e;
    }

private:
    [[noreturn]] void fail(const std::string& message) const {
        throw SyntaxError(line_, offset_ + static_cast<int>(pos_) + 1, message);
    }

    void skip_ws() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }

    bool peek(char c) {
        skip_ws();
        return pos_ < text_.size() && text_[pos_] == c;
    }

    bool accept(char c) {
        if (peek(c)) {
            ++pos_;
            return true;
        }
        return false;
    }

    bool accept_word(const std::string& w) {
        skip_ws();
        if (text_.compare(pos_, w.size(), w) == 0) {
            std::size_t end = pos_ + w.size();
            if (end < text_.size() && (std::isalnum(static_cast<unsigned char>(text_[end])) || text_[end] == '_'))
                return false;
            pos_ = end;
            return true;
        }
        return false;
    }

    RateExprPtr parse_expr() {
        auto e = parse_term();
        for (;;) {
            if (accept('+'))
                e = RateExpr::binary(RateExpr::Kind::add, e, parse_term());
            else if (accept('-'))
                e = RateExpr::binary(RateExpr::Kind::sub, e, parse_term());
            else
                return e;
        }
    }

    RateExprPtr parse_term() {
        auto e = parse_unary();
        for (;;) {
            if (accept('*'))
                e = RateExpr::binary(RateExpr::Kind::mul, e, parse_unary());
            else if (accept('/'))
                e = RateExpr::binary(RateExpr::Kind::div, e, parse_unary());
            else
                return e;
        }
    }

    RateExprPtr parse_unary() {
        if (accept('-')) return RateExpr::negate(parse_unary());
        return parse_postfix();
    }

    RateExprPtr parse_postfix() {
        auto e = parse_primary();
        for (;;) {
            if (accept('!')) {
                e = RateExpr::fact(e);
            } else if (accept('^')) {
                bool neg = accept('-');
                long long v = parse_integer();
                e = RateExpr::power(e, neg ? -v : v);
            } else {
                return e;
            }
        }
    }

    long long parse_integer() {
        skip_ws();
        std::size_t start = pos_;
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
        if (start == pos_) fail("expected integer");
        return std::stoll(text_.substr(start, pos_ - start));
    }

    RateExprPtr parse_primary() {
        skip_ws();
        if (pos_ >= text_.size()) fail("unexpected end of rate expression");
        char c = text_[pos_];
        if (c == '(') {
            ++pos_;
            auto e = parse_expr();
            if (!accept(')')) fail("expected ')'");
            return e;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            return RateExpr::constant(parse_number());
        }
        if (accept_word("ind")) {
            if (!accept('(')) fail("expected '(' after ind");
            std::vector<LinearCondition> conds;
            conds.push_back(parse_condition());
            while (accept(',')) conds.push_back(parse_condition());
            if (!accept(')')) fail("expected ')' closing ind(...)");
            return RateExpr::indicator(std::move(conds));
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            return RateExpr::species(parse_species_index());
        }
        fail("expected number, species, '(' or ind(...)");
    }

    Rational parse_number() {
        std::size_t start = pos_;
        while (pos_ < text_.size() &&
               (std::isdigit(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '.'))
            ++pos_;
        auto r = parse_rational(text_.substr(start, pos_ - start));
        if (!r) fail("malformed number");
        return *r;
    }

    int parse_species_index() {
        skip_ws();
        std::size_t start = pos_;
        while (pos_ < text_.size() &&
               (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
            ++pos_;
        std::string name = text_.substr(start, pos_ - start);
        for (std::size_t i = 0; i < names_.size(); ++i)
            if (names_[i] == name) return static_cast<int>(i);
        pos_ = start;
        fail("unknown species '" + name + "' in rate expression");
    }

    // One additive term of a linear sum: [int][*]species or a bare integer.
    void parse_linterm(std::vector<long long>& coeffs, long long& constant, long long sign) {
        skip_ws();
        long long mult = 1;
        bool have_number = false;
        if (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
            mult = parse_integer();
            have_number = true;
            accept('*');
        }
        skip_ws();
        if (pos_ < text_.size() &&
            (std::isalpha(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) {
            int idx = parse_species_index();
            coeffs[static_cast<std::size_t>(idx)] += sign * mult;
        } else if (have_number) {
            constant += sign * mult;
        } else {
            fail("expected linear term");
        }
    }

    void parse_linsum(std::vector<long long>& coeffs, long long& constant, long long outer_sign) {
        long long sign = outer_sign;
        if (accept('-')) sign = -sign;
        parse_linterm(coeffs, constant, sign);
        for (;;) {
            if (accept('+'))
                parse_linterm(coeffs, constant, outer_sign);
            else if (accept('-'))
                parse_linterm(coeffs, constant, -outer_sign);
            else
                return;
        }
    }

    LinearCondition parse_condition() {
        LinearCondition cond;
        cond.coeffs.assign(names_.size(), 0);
        long long constant = 0;
        parse_linsum(cond.coeffs, constant, +1);
        skip_ws();
        LinearCondition::Op op;
        if (accept('<')) {
            op = accept('=') ? LinearCondition::Op::le : LinearCondition::Op::lt;
        } else if (accept('>')) {
            op = accept('=') ? LinearCondition::Op::ge : LinearCondition::Op::gt;
        } else if (accept('=')) {
            accept('=');
            op = LinearCondition::Op::eq;
        } else {
            fail("expected comparison in ind(...) condition");
        }
        cond.op = op;
        // rhs folded into lhs with flipped sign: lhs - rhs <op> 0
        parse_linsum(cond.coeffs, constant, -1);
        cond.offset = constant;
        return cond;
    }

    const std::string& text_;
    const std::vector<std::string>& names_;
    int line_;
    int offset_;
    std::size_t pos_ = 0;
};

}  // namespace

RateExprPtr parse_rate_expr(const std::string& text, const std::vector<std::string>& species_names,
                            int line, int offset_col) {
    return ExprParser(text, species_names, line, offset_col).parse();
}

}  // namespace crn

#include "crn/parse.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <set>
#include <sstream>

#include "crn/errors.hpp"

namespace crn {

namespace {

struct Line {
    int number;
    std::string text;
};

std::vector<Line> split_lines(const std::string& text) {
    std::vector<Line> lines;
    std::string cur;
    int n = 1;
    for (char c : text) {
        if (c == '\n') {
            lines.push_back({n++, cur});
            cur.clear();
        } else {
            cur.push_back(c);
        }
    }
    if (!cur.empty()) lines.push_back({n, cur});
    return lines;
}

// Cursor over one line with 1-based column reporting.
class LineCursor {
public:
    LineCursor(const Line& line) : line_(line) {}

    [[noreturn]] void fail(const std::string& message) const {
        throw SyntaxError(line_.number, static_cast<int>(pos_) + 1, message);
    }

    void skip_ws() {
        while (pos_ < line_.text.size() && std::isspace(static_cast<unsigned char>(line_.text[pos_]))) ++pos_;
    }

    bool at_end() {
        skip_ws();
        return pos_ >= line_.text.size();
    }

    char peek() {
        skip_ws();
        return pos_ < line_.text.size() ? line_.text[pos_] : '\0';
    }

    bool accept(char c) {
        if (peek() == c && c != '\0') {
            ++pos_;
            return true;
        }
        return false;
    }

    void expect(char c, const std::string& what) {
        if (!accept(c)) fail("expected '" + std::string(1, c) + "' " + what);
    }

    bool accept_word(const std::string& w) {
        skip_ws();
        if (line_.text.compare(pos_, w.size(), w) == 0) {
            std::size_t end = pos_ + w.size();
            if (end < line_.text.size()) {
                char c = line_.text[end];
                if (std::isalnum(static_cast<unsigned char>(c)) || c == '_') return false;
            }
            pos_ = end;
            return true;
        }
        return false;
    }

    std::string identifier() {
        skip_ws();
        std::size_t start = pos_;
        while (pos_ < line_.text.size()) {
            char c = line_.text[pos_];
            if (std::isalnum(static_cast<unsigned char>(c)) || c == '_')
                ++pos_;
            else
                break;
        }
        if (start == pos_) fail("expected identifier");
        return line_.text.substr(start, pos_ - start);
    }

    long long integer() {
        skip_ws();
        std::size_t start = pos_;
        while (pos_ < line_.text.size() && std::isdigit(static_cast<unsigned char>(line_.text[pos_]))) ++pos_;
        if (start == pos_) fail("expected integer");
        return std::stoll(line_.text.substr(start, pos_ - start));
    }

    // Remaining text from the current position (for rate expressions).
    std::string rest() {
        skip_ws();
        return line_.text.substr(pos_);
    }

    // Consumes and returns text up to (not including) any of `stops`.
    std::string take_until(const std::string& stops) {
        skip_ws();
        std::size_t start = pos_;
        while (pos_ < line_.text.size() && stops.find(line_.text[pos_]) == std::string::npos) ++pos_;
        return line_.text.substr(start, pos_ - start);
    }

    // Skips whitespace and returns the 1-based column of the next token.
    int mark() {
        skip_ws();
        return static_cast<int>(pos_) + 1;
    }

    char raw_peek() const { return pos_ < line_.text.size() ? line_.text[pos_] : '\0'; }

    std::size_t pos() const { return pos_; }
    int line_number() const { return line_.number; }

private:
    const Line& line_;
    std::size_t pos_ = 0;
};

std::string strip_comment(const std::string& text) {
    auto hash = text.find('#');
    return hash == std::string::npos ? text : text.substr(0, hash);
}

std::string collapse_ws(const std::string& s) {
    std::string out;
    bool pending = false;
    for (char c : s) {
        if (std::isspace(static_cast<unsigned char>(c))) {
            pending = !out.empty();
        } else {
            if (pending) out.push_back(' ');
            pending = false;
            out.push_back(c);
        }
    }
    return out;
}

struct RawTerm {
    long long coeff;
    std::string species;
    int line, col;
};

struct RawComplex {
    std::vector<RawTerm> terms;  // empty means the zero complex
};

struct RawReaction {
    RawComplex reactant, product;
    bool mass_action;
    Rational rate;           // mass action
    std::string expr_text;   // expression kinetics
    int expr_line = 0, expr_col = 0;
    int line = 0;
};

RawComplex parse_complex(LineCursor& cur) {
    RawComplex out;
    if (cur.peek() == '0') {
        cur.accept('0');
        char next = cur.raw_peek();
        if (std::isalnum(static_cast<unsigned char>(next)) || next == '_')
            cur.fail("malformed complex term starting with '0'");
        return out;
    }
    for (;;) {
        RawTerm term;
        term.line = cur.line_number();
        term.col = cur.mark();
        term.coeff = 1;
        if (std::isdigit(static_cast<unsigned char>(cur.peek()))) {
            term.coeff = cur.integer();
            if (term.coeff <= 0) cur.fail("stoichiometric coefficient must be positive");
        }
        char c = cur.peek();
        if (!std::isalpha(static_cast<unsigned char>(c)) && c != '_')
            cur.fail("expected species name");
        term.species = cur.identifier();
        out.terms.push_back(std::move(term));
        if (!cur.accept('+')) return out;
    }
}

}  // namespace

std::optional<std::vector<int>> NetworkDocument::set_named(const std::string& name) const {
    for (const auto& [n, ids] : sets)
        if (n == name) return ids;
    return std::nullopt;
}

bool kinetics_equal(const Kinetics& a, const Kinetics& b) {
    if (a.index() != b.index()) return false;
    if (const auto* ma = std::get_if<MassAction>(&a))
        return ma->rate == std::get<MassAction>(b).rate;
    return collapse_ws(std::get<ExprKinetics>(a).source) == collapse_ws(std::get<ExprKinetics>(b).source);
}

bool NetworkDocument::operator==(const NetworkDocument& other) const {
    if (net.species_names() != other.net.species_names()) return false;
    if (net.reactions.size() != other.net.reactions.size()) return false;
    for (std::size_t i = 0; i < net.reactions.size(); ++i) {
        const auto& a = net.reactions[i];
        const auto& b = other.net.reactions[i];
        if (a.reactant != b.reactant || a.product != b.product) return false;
        if (!kinetics_equal(a.kinetics, b.kinetics)) return false;
    }
    return sets == other.sets && beta == other.beta;
}

NetworkDocument parse_network(const std::string& text) {
    NetworkDocument doc;
    std::vector<std::string> names;
    std::map<std::string, int> index;
    bool declared = false;

    auto species_id = [&](const RawTerm& term) -> int {
        auto it = index.find(term.species);
        if (it != index.end()) return it->second;
        if (declared)
            throw SyntaxError(term.line, term.col, "unknown species '" + term.species + "'");
        int id = static_cast<int>(names.size());
        names.push_back(term.species);
        index[term.species] = id;
        return id;
    };

    std::vector<RawReaction> raw_reactions;
    struct RawSet {
        std::string name;
        std::vector<RawTerm> members;
    };
    std::vector<RawSet> raw_sets;
    std::vector<std::pair<RawTerm, Rational>> raw_beta;

    for (const Line& full_line : split_lines(text)) {
        Line line{full_line.number, strip_comment(full_line.text)};
        LineCursor cur(line);
        if (cur.at_end()) continue;

        if (cur.accept_word("species")) {
            if (declared) cur.fail("duplicate species declaration");
            declared = true;
            while (!cur.at_end()) {
                std::string name = cur.identifier();
                if (index.count(name)) cur.fail("duplicate species '" + name + "'");
                index[name] = static_cast<int>(names.size());
                names.push_back(name);
                cur.accept(',');
            }
            if (names.empty()) cur.fail("empty species declaration");
            continue;
        }

        if (cur.accept_word("set")) {
            RawSet s;
            s.name = cur.identifier();
            cur.expect('=', "after set name");
            cur.expect('{', "before set members");
            for (;;) {
                RawTerm t;
                t.line = cur.line_number();
                t.col = cur.mark();
                t.coeff = 1;
                t.species = cur.identifier();
                s.members.push_back(t);
                if (cur.accept(',')) continue;
                break;
            }
            cur.expect('}', "closing set members");
            if (!cur.at_end()) cur.fail("unexpected trailing input after set");
            raw_sets.push_back(std::move(s));
            continue;
        }

        if (cur.accept_word("beta")) {
            cur.expect('{', "before beta entries");
            for (;;) {
                RawTerm t;
                t.line = cur.line_number();
                t.col = cur.mark();
                t.coeff = 1;
                t.species = cur.identifier();
                cur.expect(':', "after species in beta block");
                auto value = parse_rational(cur.take_until(",}"));
                if (!value || *value <= 0) cur.fail("beta exponent must be a positive rational");
                raw_beta.emplace_back(t, *value);
                if (cur.accept(',')) continue;
                break;
            }
            cur.expect('}', "closing beta block");
            if (!cur.at_end()) cur.fail("unexpected trailing input after beta");
            continue;
        }

        // Reaction line: complex -> complex : kinetics. A missing complex on
        // either side of the arrow is the zero complex.
        RawReaction rr;
        rr.line = line.number;
        if (cur.peek() != '-') rr.reactant = parse_complex(cur);
        cur.skip_ws();
        if (!cur.accept('-') || !cur.accept('>')) cur.fail("expected '->'");
        if (cur.peek() != ':') rr.product = parse_complex(cur);
        cur.expect(':', "before kinetics");
        if (cur.accept_word("k")) {
            cur.expect('=', "after 'k'");
            std::string rest = cur.rest();
            auto rate = parse_rational(rest);
            if (!rate) cur.fail("malformed rate constant");
            if (*rate <= 0) cur.fail("rate constant must be positive");
            rr.mass_action = true;
            rr.rate = *rate;
        } else if (cur.accept_word("rate")) {
            cur.expect('=', "after 'rate'");
            rr.mass_action = false;
            rr.expr_line = cur.line_number();
            rr.expr_col = cur.mark() - 1;
            rr.expr_text = cur.rest();
            if (rr.expr_text.empty()) cur.fail("empty rate expression");
        } else {
            cur.fail("expected kinetics 'k=<rational>' or 'rate=<expr>'");
        }
        raw_reactions.push_back(std::move(rr));
    }

    // Resolve species ids. Without a header, first-appearance order applies.
    auto build_complex = [&](const RawComplex& rc) {
        Complex c;
        for (const auto& t : rc.terms) {
            int id = species_id(t);
            if (static_cast<std::size_t>(id) >= c.size()) c.resize(static_cast<std::size_t>(id) + 1, 0);
            c[static_cast<std::size_t>(id)] += t.coeff;
        }
        return c;
    };

    std::vector<std::pair<Complex, Complex>> skeleton;
    for (auto& rr : raw_reactions) {
        Complex reactant = build_complex(rr.reactant);  // reactant first: fixes id order
        Complex product = build_complex(rr.product);
        skeleton.emplace_back(std::move(reactant), std::move(product));
    }

    const std::size_t n = names.size();
    doc.net.species.resize(n);
    for (std::size_t i = 0; i < n; ++i) doc.net.species[i] = {static_cast<int>(i), names[i]};

    std::set<std::pair<Complex, Complex>> seen;
    for (std::size_t i = 0; i < raw_reactions.size(); ++i) {
        auto& rr = raw_reactions[i];
        Reaction rx;
        rx.reactant = skeleton[i].first;
        rx.reactant.resize(n, 0);
        rx.product = skeleton[i].second;
        rx.product.resize(n, 0);
        if (rx.reactant == rx.product)
            throw SyntaxError(rr.line, 1, "self-loop reaction (reactant equals product)");
        if (!seen.insert({rx.reactant, rx.product}).second)
            throw SyntaxError(rr.line, 1, "duplicate reaction (merge the rates by hand)");
        if (rr.mass_action) {
            rx.kinetics = MassAction{rr.rate};
        } else {
            ExprKinetics ek;
            ek.source = collapse_ws(rr.expr_text);
            ek.expr = parse_rate_expr(rr.expr_text, names, rr.expr_line, rr.expr_col);
            rx.kinetics = std::move(ek);
        }
        doc.net.reactions.push_back(std::move(rx));
    }

    auto resolve = [&](const RawTerm& t) -> int {
        auto it = index.find(t.species);
        if (it == index.end())
            throw SyntaxError(t.line, t.col, "unknown species '" + t.species + "'");
        return it->second;
    };
    for (auto& s : raw_sets) {
        std::vector<int> ids;
        for (const auto& m : s.members) ids.push_back(resolve(m));
        doc.sets.emplace_back(s.name, std::move(ids));
    }
    for (auto& [term, value] : raw_beta) doc.beta.emplace_back(resolve(term), value);

    doc.explicit_species = declared;
    return doc;
}

NetworkDocument load_network_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open " + path);
    std::stringstream buffer;
    buffer << in.rdbuf();
    return parse_network(buffer.str());
}

namespace {

std::string canonical_complex(const Network& net, const Complex& c) {
    std::vector<std::pair<std::string, long long>> terms;
    for (std::size_t i = 0; i < c.size(); ++i)
        if (c[i] > 0) terms.emplace_back(net.species[i].name, c[i]);
    std::sort(terms.begin(), terms.end());
    if (terms.empty()) return "0";
    std::string out;
    for (const auto& [name, coeff] : terms) {
        if (!out.empty()) out += " + ";
        if (coeff != 1) out += std::to_string(coeff) + " ";
        out += name;
    }
    return out;
}

}  // namespace

std::string serialize_network(const NetworkDocument& doc) {
    std::ostringstream out;
    const Network& net = doc.net;
    out << "species";
    for (const auto& s : net.species) out << " " << s.name;
    out << "\n";
    for (const auto& rx : net.reactions) {
        out << canonical_complex(net, rx.reactant) << " -> " << canonical_complex(net, rx.product) << " : ";
        if (const auto* ma = std::get_if<MassAction>(&rx.kinetics))
            out << "k=" << format_rational(ma->rate);
        else
            out << "rate=" << collapse_ws(std::get<ExprKinetics>(rx.kinetics).source);
        out << "\n";
    }
    for (const auto& [name, ids] : doc.sets) {
        out << "set " << name << " = { ";
        for (std::size_t i = 0; i < ids.size(); ++i) {
            if (i) out << ", ";
            out << net.species[static_cast<std::size_t>(ids[i])].name;
        }
        out << " }\n";
    }
    if (!doc.beta.empty()) {
        out << "beta { ";
        for (std::size_t i = 0; i < doc.beta.size(); ++i) {
            if (i) out << ", ";
            out << net.species[static_cast<std::size_t>(doc.beta[i].first)].name << ": "
                << format_rational(doc.beta[i].second);
        }
        out << " }\n";
    }
    return out.str();
}

}  // namespace crn

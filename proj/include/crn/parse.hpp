#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "crn/model.hpp"

namespace crn {

/// Parsed .crn file: the network itself plus optional named species sets and
/// an optional per-species scaling exponent block.
struct NetworkDocument {
    Network net;
    bool explicit_species = false;                       // had a `species` header line
    std::vector<std::pair<std::string, std::vector<int>>> sets;  // name -> species ids
    std::vector<std::pair<int, Rational>> beta;          // species id -> exponent

    std::optional<std::vector<int>> set_named(const std::string& name) const;

    bool operator==(const NetworkDocument& other) const;
};

/// Parses the text format:
///
///   # comment
///   species A B U
///   A -> U : k=1
///   2 A + B -> 0 : rate=ind(A>=2,B>=1)*A*(A-1)*B
///   set fast = { U }
///   beta { U: 1 }
///
/// Throws SyntaxError with 1-based line/column. Structural violations
/// (duplicate reactions, self-loops, unknown species under a `species`
/// header) are also reported as positioned errors.
NetworkDocument parse_network(const std::string& text);

NetworkDocument load_network_file(const std::string& path);

/// Canonical text: species header, reactions in input order with complex
/// terms sorted by species name, then sets and beta. parse(serialize(d))
/// reproduces d.
std::string serialize_network(const NetworkDocument& doc);

bool kinetics_equal(const Kinetics& a, const Kinetics& b);

}  // namespace crn

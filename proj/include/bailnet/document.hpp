#ifndef BAILNET_DOCUMENT_HPP
#define BAILNET_DOCUMENT_HPP

#include "bailnet/network.hpp"

#include <map>
#include <optional>
#include <string>
#include <string_view>

namespace bailnet {

inline constexpr int kSchemaVersion = 1;

/// A network as it travels through files and the HTTP API, with the optional
/// metadata block that generated instances carry.
struct NetworkDocument {
    FinancialNetwork network;
    std::optional<std::string> family;
    std::map<std::string, Rational> params;

    friend bool operator==(const NetworkDocument&, const NetworkDocument&) = default;
};

/// Parses and validates. Errors are InputError with the line (for syntax
/// errors) or the field path, e.g. "banks[2].cash".
NetworkDocument parse_document(std::string_view text);

/// Deterministic text: fixed key order, two-space indent, trailing newline.
std::string serialize_document(const NetworkDocument& doc);

/// Graph files: {"n": 3, "edges": [[0,1],[1,2]]}.
struct SimpleGraph;
SimpleGraph parse_graph(std::string_view text);

} // namespace bailnet

#endif

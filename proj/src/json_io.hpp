#ifndef BAILNET_JSON_IO_HPP
#define BAILNET_JSON_IO_HPP

// Internal JSON helpers shared by the document codec and the engine.

#include "bailnet/document.hpp"
#include "bailnet/rational.hpp"

#include "json.hpp"

#include <string>

namespace bailnet::io {

using Json = nlohmann::ordered_json;

/// Exact string plus a 12-significant-digit convenience view.
Json number(const Rational& value);

/// A rational from a JSON string ("0.1", "1/3") or JSON number. `where`
/// names the field in error messages.
Rational read_rational(const Json& value, const std::string& where);

const Json& require(const Json& object, const char* key, const std::string& where);

Json document_json(const NetworkDocument& doc);
NetworkDocument document_from_json(const Json& json, const std::string& where);

/// Parses text, turning syntax errors into InputError with a line number.
Json parse_text(std::string_view text);

/// The serialization used for every document and result.
std::string dump(const Json& json);

} // namespace bailnet::io

#endif

#include "bailnet/document.hpp"

#include "bailnet/error.hpp"
#include "bailnet/reductions.hpp"
#include "json_io.hpp"

#include <algorithm>
#include <cmath>

namespace bailnet {

namespace io {

Json number(const Rational& value)
{
    Json out;
    out["exact"] = value.to_string();
    out["approx"] = value.approx();
    return out;
}

Rational read_rational(const Json& value, const std::string& where)
{
    try {
        if (value.is_string())
            return Rational::parse(value.get<std::string>());
        if (value.is_number_integer())
            return Rational(value.get<long>());
        if (value.is_number_float()) {
            // Re-read the shortest round-trip text so 0.1 means 1/10.
            const double d = value.get<double>();
            if (!std::isfinite(d))
                throw InputError("not a finite number");
            return Rational::parse(value.dump());
        }
    } catch (const InputError& e) {
        throw InputError(where + ": " + e.what());
    }
    throw InputError(where + ": expected a number or a decimal string");
}

const Json& require(const Json& object, const char* key, const std::string& where)
{
    if (!object.is_object())
        throw InputError(where + ": expected an object");
    auto it = object.find(key);
    if (it == object.end())
        throw InputError(where + (where.empty() ? "" : ".") + key + ": missing");
    return *it;
}

namespace {

std::string join(const std::string& where, const std::string& key)
{
    return where.empty() ? key : where + "." + key;
}

std::string read_string(const Json& value, const std::string& where)
{
    if (!value.is_string())
        throw InputError(where + ": expected a string");
    return value.get<std::string>();
}

} // namespace

Json document_json(const NetworkDocument& doc)
{
    const auto& net = doc.network;
    Json out;
    out["schema"] = kSchemaVersion;
    out["beta"] = net.beta.to_string();
    if (net.central_bank)
        out["central_bank"] = *net.central_bank;
    out["banks"] = Json::array();
    for (const auto& b : net.banks)
        out["banks"].push_back(Json{{"id", b.id}, {"cash", b.cash.to_string()}});
    out["liabilities"] = Json::array();
    for (const auto& l : net.liabilities)
        out["liabilities"].push_back(Json{{"from", l.debtor},
                                          {"to", l.creditor},
                                          {"amount", l.amount.to_string()},
                                          {"seniority", std::string(to_string(l.seniority))}});
    if (doc.family || !doc.params.empty()) {
        Json meta;
        if (doc.family)
            meta["family"] = *doc.family;
        meta["params"] = Json::object();
        for (const auto& [k, v] : doc.params)
            meta["params"][k] = v.to_string();
        out["metadata"] = std::move(meta);
    }
    return out;
}

NetworkDocument document_from_json(const Json& json, const std::string& where)
{
    if (!json.is_object())
        throw InputError((where.empty() ? std::string("document") : where) + ": expected an object");
    NetworkDocument doc;
    auto& net = doc.network;

    if (auto it = json.find("schema"); it != json.end()) {
        if (!it->is_number_integer() || it->get<int>() != kSchemaVersion)
            throw InputError(join(where, "schema") + ": unsupported schema version " + it->dump());
    }
    net.beta = read_rational(require(json, "beta", where), join(where, "beta"));
    if (auto it = json.find("central_bank"); it != json.end() && !it->is_null())
        net.central_bank = read_string(*it, join(where, "central_bank"));

    const auto& banks = require(json, "banks", where);
    if (!banks.is_array())
        throw InputError(join(where, "banks") + ": expected an array");
    for (std::size_t i = 0; i < banks.size(); ++i) {
        const std::string at = join(where, "banks[" + std::to_string(i) + "]");
        const auto& b = banks[i];
        net.banks.push_back({read_string(require(b, "id", at), at + ".id"),
                             read_rational(require(b, "cash", at), at + ".cash")});
    }

    if (auto it = json.find("liabilities"); it != json.end()) {
        if (!it->is_array())
            throw InputError(join(where, "liabilities") + ": expected an array");
        for (std::size_t i = 0; i < it->size(); ++i) {
            const std::string at = join(where, "liabilities[" + std::to_string(i) + "]");
            const auto& l = (*it)[i];
            Liability out{read_string(require(l, "from", at), at + ".from"),
                          read_string(require(l, "to", at), at + ".to"),
                          read_rational(require(l, "amount", at), at + ".amount"), Seniority::junior};
            if (auto s = l.find("seniority"); s != l.end()) {
                const auto token = read_string(*s, at + ".seniority");
                if (token == "senior")
                    out.seniority = Seniority::senior;
                else if (token != "junior")
                    throw InputError(at + ".seniority: unknown seniority \"" + token + "\"");
            }
            net.liabilities.push_back(std::move(out));
        }
    }

    if (auto it = json.find("metadata"); it != json.end() && !it->is_null()) {
        const std::string at = join(where, "metadata");
        if (!it->is_object())
            throw InputError(at + ": expected an object");
        if (auto f = it->find("family"); f != it->end())
            doc.family = read_string(*f, at + ".family");
        if (auto p = it->find("params"); p != it->end()) {
            if (!p->is_object())
                throw InputError(at + ".params: expected an object");
            for (auto kv = p->begin(); kv != p->end(); ++kv)
                doc.params[kv.key()] = read_rational(kv.value(), at + ".params." + kv.key());
        }
    }

    require_valid(net);
    return doc;
}

Json parse_text(std::string_view text)
{
    try {
        return Json::parse(text.begin(), text.end());
    } catch (const nlohmann::json::parse_error& e) {
        const std::size_t upto = std::min<std::size_t>(e.byte, text.size());
        const auto line = 1 + std::count(text.begin(), text.begin() + static_cast<long>(upto), '\n');
        throw InputError("malformed document at line " + std::to_string(line) + ": " + e.what());
    }
}

std::string dump(const Json& json) { return json.dump(2) + "\n"; }

} // namespace io

NetworkDocument parse_document(std::string_view text) { return io::document_from_json(io::parse_text(text), ""); }

std::string serialize_document(const NetworkDocument& doc) { return io::dump(io::document_json(doc)); }

SimpleGraph parse_graph(std::string_view text)
{
    const auto json = io::parse_text(text);
    const auto& n = io::require(json, "n", "graph");
    if (!n.is_number_integer() || n.get<long>() < 0)
        throw InputError("graph.n: expected a non-negative integer");
    SimpleGraph g;
    g.n = n.get<int>();
    if (auto it = json.find("edges"); it != json.end()) {
        if (!it->is_array())
            throw InputError("graph.edges: expected an array");
        for (std::size_t i = 0; i < it->size(); ++i) {
            const auto& e = (*it)[i];
            if (!e.is_array() || e.size() != 2 || !e[0].is_number_integer() || !e[1].is_number_integer())
                throw InputError("graph.edges[" + std::to_string(i) + "]: expected a pair of vertex indices");
            g.edges.emplace_back(e[0].get<int>(), e[1].get<int>());
        }
    }
    g.validate();
    return g;
}

} // namespace bailnet

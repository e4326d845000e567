// Command-line front end. Talks to the engine only through the C API.

#include "bailnet/bailnet.h"

#include "CLI11.hpp"
#include "json.hpp"

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

namespace {

using Json = nlohmann::ordered_json;

struct Failure {
    int status;
    std::string message;
};

std::string read_file(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw Failure{BAILNET_E_INPUT, "cannot read " + path};
    std::ostringstream text;
    text << in.rdbuf();
    return text.str();
}

// The document text goes in verbatim and first, so parse errors keep their
// line numbers.
std::string request_with(const std::string& key, const std::string& text, const Json& rest)
{
    std::string body = "{\"" + key + "\":" + text + "\n";
    const std::string tail = rest.dump();
    if (tail != "{}")
        body += "," + tail.substr(1);
    else
        body += "}";
    return body;
}

std::string call(const std::string& endpoint, const std::string& body, const bailnet_config& config)
{
    char* out = nullptr;
    const int rc = bailnet_handle_request(endpoint.c_str(), body.c_str(), &config, &out);
    std::string text = out ? out : "";
    bailnet_string_free(out);
    if (rc != BAILNET_OK)
        throw Failure{rc, bailnet_last_error()};
    return text;
}

void set_optional(Json& j, const char* key, const std::optional<std::string>& value)
{
    if (value)
        j[key] = *value;
}

std::string one_line(std::string s)
{
    for (auto& c : s)
        if (c == '\n' || c == '\r')
            c = ' ';
    return s;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Clearing, bailout optimization and abuse search for financial networks"};
    app.require_subcommand(1);
    app.set_version_flag("--version", std::string(bailnet_version()));

    bailnet_config config;
    bailnet_config_default(&config);
    app.add_option("--timeout-ms", config.timeout_ms, "Wall-clock cap per command, 0 for none")->capture_default_str();
    app.add_option("--cap", config.insolvent_cap, "Largest number of insolvent banks for exact search")
        ->capture_default_str();

    std::string file;
    std::optional<std::string> beta, budget, lambda, method, step, face_step, max_face;
    std::string objective = "total";

    auto* clear = app.add_subcommand("clear", "Clear a network and print the clearing result");
    clear->add_option("file", file, "Network document")->required();
    clear->add_option("--beta", beta, "Override the default-cost parameter");

    auto* optimize = app.add_subcommand("optimize", "Find the best bailout set");
    optimize->add_option("file", file, "Network document")->required();
    optimize->add_option("--objective", objective, "total | own:<id> | saved | welfare")->capture_default_str();
    optimize->add_option("--budget", budget, "Spending limit");
    optimize->add_option("--lambda", lambda, "Weight of central-bank losses (welfare)");
    optimize->add_option("--method", method, "exact | greedy | analytic");

    std::string bailout;
    bool recommend = false;
    std::optional<std::string> whatif_objective;
    auto* whatif = app.add_subcommand("whatif", "Evaluate a given bailout set");
    whatif->add_option("file", file, "Network document")->required();
    whatif->add_option("--bailout", bailout, "Comma-separated bank ids")->required();
    whatif->add_option("--objective", whatif_objective, "Objective (default welfare when lambda is known)");
    whatif->add_option("--lambda", lambda, "Weight of central-bank losses (welfare)");
    whatif->add_option("--budget", budget, "Spending limit");
    whatif->add_flag("--recommend", recommend, "Also report the optimal set");

    std::string family, graph_file;
    std::optional<int> k;
    std::optional<std::string> output;
    auto* generate = app.add_subcommand("generate", "Build a hardness-reduction instance from a graph");
    generate->add_option("family", family, "vertex-cover | densest-k | independent-set | welfare | total-value")
        ->required();
    generate->add_option("--graph", graph_file, "Graph file {\"n\":..,\"edges\":[[a,b],..]}")->required();
    generate->add_option("--k", k, "Size parameter");
    generate->add_option("--beta", beta, "Default-cost parameter (default 0.5)");
    generate->add_option("--lambda", lambda, "Welfare weight recorded in the instance");
    generate->add_option("-o,--output", output, "Write the document here instead of stdout");

    std::optional<std::string> abuse_objective;
    auto* abuse = app.add_subcommand("abuse-search", "Search for contracts that exploit the bailout policy");
    abuse->add_option("file", file, "Network document")->required();
    abuse->add_option("--objective", abuse_objective, "Objective (default welfare with a central bank)");
    abuse->add_option("--budget", budget, "Spending limit");
    abuse->add_option("--lambda", lambda, "Weight of central-bank losses (welfare)");
    abuse->add_option("--step", step, "Principal grid step (default 1)");
    abuse->add_option("--face-step", face_step, "Face grid step (default: the principal step)");
    abuse->add_option("--max-face", max_face, "Largest face value (default 4)");

    std::optional<std::string> example_name;
    auto* examples = app.add_subcommand("examples", "List bundled networks or print one");
    examples->add_option("name", example_name, "Example to print");

    int port = 8080;
    std::string host = "127.0.0.1";
    std::optional<std::string> static_dir;
    auto* serve = app.add_subcommand("serve", "Run the HTTP service");
    serve->add_option("--port", port, "Port, 0 for any free port")->capture_default_str();
    serve->add_option("--host", host, "Address to bind")->capture_default_str();
    serve->add_option("--static", static_dir, "Directory served at /");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << "error: E_INPUT: " << one_line(e.what()) << "\n";
        return BAILNET_E_INPUT;
    }

    try {
        std::string result;
        if (clear->parsed()) {
            Json rest = Json::object();
            set_optional(rest, "beta", beta);
            result = call("clear", request_with("network", read_file(file), rest), config);
        } else if (optimize->parsed()) {
            Json rest = Json::object();
            rest["objective"] = objective;
            set_optional(rest, "budget", budget);
            set_optional(rest, "lambda", lambda);
            set_optional(rest, "method", method);
            result = call("optimize", request_with("network", read_file(file), rest), config);
        } else if (whatif->parsed()) {
            Json rest = Json::object();
            Json ids = Json::array();
            std::stringstream list(bailout);
            for (std::string id; std::getline(list, id, ',');)
                if (!id.empty())
                    ids.push_back(id);
            rest["bailout"] = ids;
            set_optional(rest, "objective", whatif_objective);
            set_optional(rest, "lambda", lambda);
            set_optional(rest, "budget", budget);
            if (recommend)
                rest["recommend"] = true;
            result = call("whatif", request_with("network", read_file(file), rest), config);
        } else if (generate->parsed()) {
            Json rest = Json::object();
            rest["family"] = family;
            if (k)
                rest["k"] = *k;
            set_optional(rest, "beta", beta);
            set_optional(rest, "lambda", lambda);
            result = call("generate", request_with("graph", read_file(graph_file), rest), config);
            if (output) {
                std::ofstream out(*output, std::ios::binary);
                if (!(out << result))
                    throw Failure{BAILNET_E_INPUT, "cannot write " + *output};
                return 0;
            }
        } else if (abuse->parsed()) {
            Json rest = Json::object();
            set_optional(rest, "objective", abuse_objective);
            set_optional(rest, "budget", budget);
            set_optional(rest, "lambda", lambda);
            set_optional(rest, "step", step);
            set_optional(rest, "face_step", face_step);
            set_optional(rest, "max_face", max_face);
            result = call("abuse", request_with("network", read_file(file), rest), config);
        } else if (examples->parsed()) {
            result = example_name ? call("example", Json{{"name", *example_name}}.dump(), config)
                                  : call("examples", "", config);
        } else if (serve->parsed()) {
            bailnet_server* server = nullptr;
            const char* dir = static_dir ? static_dir->c_str() : nullptr;
            int rc = bailnet_server_create(host.c_str(), port, dir, &config, &server);
            if (rc != BAILNET_OK)
                throw Failure{rc, bailnet_last_error()};
            std::cerr << "listening on http://" << host << ":" << bailnet_server_port(server) << "\n";
            rc = bailnet_server_run(server);
            bailnet_server_free(server);
            if (rc != BAILNET_OK)
                throw Failure{rc, bailnet_last_error()};
            return 0;
        }
        std::fwrite(result.data(), 1, result.size(), stdout);
        return 0;
    } catch (const Failure& f) {
        std::cerr << "error: " << bailnet_status_name(f.status) << ": " << one_line(f.message) << "\n";
        return f.status;
    }
}

#include "bailnet/bailnet.h"

#include "bailnet/document.hpp"
#include "bailnet/reductions.hpp"
#include "engine.hpp"
#include "json_io.hpp"
#include "service.hpp"

#include <cstdlib>
#include <cstring>

struct bailnet_network {
    bailnet::NetworkDocument doc;
};

struct bailnet_server {
    std::unique_ptr<bailnet::service::Server> server;
};

namespace {

thread_local std::string last_error;

char* copy_out(const std::string& s)
{
    char* out = static_cast<char*>(std::malloc(s.size() + 1));
    if (out)
        std::memcpy(out, s.c_str(), s.size() + 1);
    return out;
}

bailnet::engine::Config to_config(const bailnet_config* config)
{
    bailnet::engine::Config out;
    if (config) {
        out.timeout_ms = config->timeout_ms;
        out.insolvent_cap = config->insolvent_cap;
    }
    return out;
}

// Runs f, mapping exceptions to status codes and the thread's last error.
template <class F>
int guarded(F&& f, char** error_out = nullptr)
{
    bailnet::Status status = bailnet::Status::ok;
    try {
        f();
        last_error.clear();
        return BAILNET_OK;
    } catch (const bailnet::Error& e) {
        status = e.status();
        last_error = e.what();
    } catch (const std::bad_alloc&) {
        status = bailnet::Status::capacity;
        last_error = "out of memory";
    } catch (const std::exception& e) {
        status = bailnet::Status::internal;
        last_error = e.what();
    }
    if (error_out)
        *error_out = copy_out(bailnet::engine::error_document(status, last_error));
    return static_cast<int>(status);
}

void require_arg(const void* p, const char* name)
{
    if (!p)
        throw bailnet::InputError(std::string(name) + " must not be NULL");
}

std::string network_request(const bailnet_network* network)
{
    bailnet::io::Json request;
    request["network"] = bailnet::io::document_json(network->doc);
    return request.dump();
}

} // namespace

extern "C" {

void bailnet_config_default(bailnet_config* config)
{
    if (!config)
        return;
    config->timeout_ms = bailnet::engine::Config{}.timeout_ms;
    config->insolvent_cap = bailnet::engine::Config{}.insolvent_cap;
}

const char* bailnet_last_error(void) { return last_error.c_str(); }

const char* bailnet_status_name(int status)
{
    return bailnet::status_code_name(static_cast<bailnet::Status>(status));
}

const char* bailnet_version(void)
{
    static const std::string v(bailnet::engine::kVersion);
    return v.c_str();
}

void bailnet_string_free(char* s) { std::free(s); }

int bailnet_network_parse(const char* text, bailnet_network** out)
{
    return guarded([&] {
        require_arg(text, "text");
        require_arg(out, "out");
        *out = new bailnet_network{bailnet::parse_document(text)};
    });
}

int bailnet_network_example(const char* name, bailnet_network** out)
{
    return guarded([&] {
        require_arg(name, "name");
        require_arg(out, "out");
        *out = new bailnet_network{bailnet::parse_document(bailnet::example_document(name))};
    });
}

int bailnet_network_serialize(const bailnet_network* network, char** out)
{
    return guarded([&] {
        require_arg(network, "network");
        require_arg(out, "out");
        *out = copy_out(bailnet::serialize_document(network->doc));
    });
}

size_t bailnet_network_size(const bailnet_network* network) { return network ? network->doc.network.banks.size() : 0; }

void bailnet_network_free(bailnet_network* network) { delete network; }

int bailnet_handle_request(const char* endpoint, const char* body, const bailnet_config* config, char** out)
{
    if (out)
        *out = nullptr;
    return guarded(
        [&] {
            require_arg(endpoint, "endpoint");
            require_arg(out, "out");
            *out = copy_out(bailnet::engine::handle(endpoint, body ? body : "", to_config(config)));
        },
        out);
}

int bailnet_clear(const bailnet_network* network, char** out)
{
    if (!network) {
        last_error = "network must not be NULL";
        return BAILNET_E_INPUT;
    }
    return bailnet_handle_request("clear", network_request(network).c_str(), nullptr, out);
}

int bailnet_optimize(const bailnet_network* network, const char* objective, const char* budget, const char* lambda,
                     const char* method, const bailnet_config* config, char** out)
{
    std::string body;
    const int rc = guarded([&] {
        require_arg(network, "network");
        auto request = bailnet::io::Json::parse(network_request(network));
        if (objective)
            request["objective"] = objective;
        if (budget)
            request["budget"] = budget;
        if (lambda)
            request["lambda"] = lambda;
        if (method)
            request["method"] = method;
        body = request.dump();
    });
    if (rc != BAILNET_OK)
        return rc;
    return bailnet_handle_request("optimize", body.c_str(), config, out);
}

int bailnet_whatif(const bailnet_network* network, const char* ids, const char* objective, const char* lambda,
                   char** out)
{
    std::string body;
    const int rc = guarded([&] {
        require_arg(network, "network");
        auto request = bailnet::io::Json::parse(network_request(network));
        auto list = bailnet::io::Json::array();
        std::string all = ids ? ids : "";
        for (std::size_t start = 0; start < all.size();) {
            const auto comma = all.find(',', start);
            const auto end = comma == std::string::npos ? all.size() : comma;
            if (end > start)
                list.push_back(all.substr(start, end - start));
            start = end + 1;
        }
        request["bailout"] = list;
        if (objective)
            request["objective"] = objective;
        if (lambda)
            request["lambda"] = lambda;
        body = request.dump();
    });
    if (rc != BAILNET_OK)
        return rc;
    return bailnet_handle_request("whatif", body.c_str(), nullptr, out);
}

int bailnet_server_create(const char* host, int port, const char* static_dir, const bailnet_config* config,
                          bailnet_server** out)
{
    return guarded([&] {
        require_arg(out, "out");
        if (port < 0 || port > 65535)
            throw bailnet::InputError("port must lie in 0..65535, got " + std::to_string(port));
        auto server = std::make_unique<bailnet::service::Server>(
            host ? host : "127.0.0.1", port,
            static_dir ? std::optional<std::string>(static_dir) : std::nullopt, to_config(config));
        server->bind();
        *out = new bailnet_server{std::move(server)};
    });
}

int bailnet_server_port(const bailnet_server* server) { return server ? server->server->port() : -1; }

int bailnet_server_start(bailnet_server* server)
{
    return guarded([&] {
        require_arg(server, "server");
        server->server->start();
    });
}

int bailnet_server_run(bailnet_server* server)
{
    return guarded([&] {
        require_arg(server, "server");
        server->server->run();
    });
}

void bailnet_server_stop(bailnet_server* server)
{
    if (server)
        server->server->stop();
}

void bailnet_server_free(bailnet_server* server) { delete server; }

} // extern "C"

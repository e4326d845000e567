#include "service.hpp"

#include "httplib.h"

#include <thread>

namespace bailnet::service {

namespace {

int http_status(Status s)
{
    switch (s) {
    case Status::ok: return 200;
    case Status::input: return 400;
    case Status::capacity: return 422;
    case Status::internal: return 500;
    }
    return 500;
}

void respond(httplib::Response& res, const engine::Config& config, std::string_view endpoint, std::string_view body)
{
    try {
        res.set_content(engine::handle(endpoint, body, config), "application/json");
    } catch (const Error& e) {
        res.status = http_status(e.status());
        res.set_content(engine::error_document(e.status(), e.what()), "application/json");
    } catch (const std::exception& e) {
        res.status = 500;
        res.set_content(engine::error_document(Status::internal, e.what()), "application/json");
    }
}

} // namespace

struct Server::Impl {
    httplib::Server http;
    std::thread worker;
    engine::Config config;
};

Server::Server(std::string host, int port, std::optional<std::string> static_dir, engine::Config config)
    : impl_(std::make_unique<Impl>()), host_(std::move(host)), port_(port)
{
    impl_->config = config;
    auto& http = impl_->http;
    const auto* cfg = &impl_->config;
    for (const char* endpoint : {"clear", "optimize", "whatif", "generate", "abuse"}) {
        const std::string name = endpoint;
        http.Post("/api/" + name, [cfg, name](const httplib::Request& req, httplib::Response& res) {
            respond(res, *cfg, name, req.body);
        });
    }
    http.Get("/api/examples", [cfg](const httplib::Request&, httplib::Response& res) {
        respond(res, *cfg, "examples", "");
    });
    http.Get(R"(/api/examples/([A-Za-z0-9_\-]+))", [cfg](const httplib::Request& req, httplib::Response& res) {
        const std::string body = std::string(R"({"name":")") + req.matches[1].str() + "\"}";
        respond(res, *cfg, "example", body);
    });
    http.Get("/api/health", [cfg](const httplib::Request&, httplib::Response& res) {
        respond(res, *cfg, "health", "");
    });
    if (static_dir && !http.set_mount_point("/", *static_dir))
        throw InputError("static directory " + *static_dir + " does not exist");
}

Server::~Server() { stop(); }

void Server::bind()
{
    auto& http = impl_->http;
    if (port_ == 0) {
        port_ = http.bind_to_any_port(host_);
        if (port_ < 0)
            throw InputError("could not bind " + host_ + " to a free port");
    } else if (!http.bind_to_port(host_, port_)) {
        throw InputError("could not bind " + host_ + ":" + std::to_string(port_));
    }
}

void Server::start()
{
    impl_->worker = std::thread([this] { impl_->http.listen_after_bind(); });
    impl_->http.wait_until_ready();
}

void Server::run() { impl_->http.listen_after_bind(); }

void Server::stop()
{
    if (!impl_)
        return;
    impl_->http.stop();
    if (impl_->worker.joinable())
        impl_->worker.join();
}

} // namespace bailnet::service

#ifndef BAILNET_SERVICE_HPP
#define BAILNET_SERVICE_HPP

#include "engine.hpp"

#include <memory>
#include <optional>
#include <string>

namespace bailnet::service {

/// HTTP front end over engine::handle. Stateless per request.
class Server {
public:
    Server(std::string host, int port, std::optional<std::string> static_dir, engine::Config config);
    ~Server();

    /// Binds (port 0 picks a free one); throws InputError when binding fails.
    void bind();
    int port() const { return port_; }
    void start();  // background thread
    void run();    // blocks
    void stop();

private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
    std::string host_;
    int port_;
};

} // namespace bailnet::service

#endif

#ifndef BAILNET_ENGINE_HPP
#define BAILNET_ENGINE_HPP

// Request handlers shared by the C API, the CLI and the HTTP service. Every
// handler takes a JSON request body and returns the serialized result
// document, so all front ends produce identical bytes.

#include "bailnet/error.hpp"

#include <cstddef>
#include <string>
#include <string_view>

namespace bailnet::engine {

inline constexpr std::string_view kVersion = "bailnet 1.0.0";

struct Config {
    long timeout_ms = 30000;     // per-request wall-clock cap; <= 0 disables it
    std::size_t insolvent_cap = 20;
};

/// endpoint: clear, optimize, whatif, generate, abuse, examples, example, health.
/// Throws bailnet::Error subclasses.
std::string handle(std::string_view endpoint, std::string_view body, const Config& config);

/// {"error":{"code":"E_INPUT","message":...}} as a serialized document.
std::string error_document(Status status, std::string_view message);

} // namespace bailnet::engine

#endif

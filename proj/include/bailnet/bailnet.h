#ifndef BAILNET_H
#define BAILNET_H

/* C interface to the bailout engine. Every function returns a status code;
 * on failure bailnet_last_error() describes it. Strings handed out by the
 * library are freed with bailnet_string_free. */

#include <stddef.h>

#if defined(BAILNET_BUILDING)
#define BAILNET_API __attribute__((visibility("default")))
#else
#define BAILNET_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum {
    BAILNET_OK = 0,
    BAILNET_E_INPUT = 2,
    BAILNET_E_CAPACITY = 3,
    BAILNET_E_INTERNAL = 4
} bailnet_status;

typedef struct bailnet_network bailnet_network;
typedef struct bailnet_server bailnet_server;

typedef struct {
    long timeout_ms;       /* per-request cap, <= 0 for none; default 30000 */
    size_t insolvent_cap;  /* exact-search limit; default 20 */
} bailnet_config;

BAILNET_API void bailnet_config_default(bailnet_config* config);

/* Message of the last failure on this thread, "" if none. */
BAILNET_API const char* bailnet_last_error(void);
/* "E_INPUT", "E_CAPACITY", ... */
BAILNET_API const char* bailnet_status_name(int status);
BAILNET_API const char* bailnet_version(void);
BAILNET_API void bailnet_string_free(char* s);

BAILNET_API int bailnet_network_parse(const char* text, bailnet_network** out);
BAILNET_API int bailnet_network_example(const char* name, bailnet_network** out);
BAILNET_API int bailnet_network_serialize(const bailnet_network* network, char** out);
BAILNET_API size_t bailnet_network_size(const bailnet_network* network);
BAILNET_API void bailnet_network_free(bailnet_network* network);

/* Generic entry point: endpoint is one of clear, optimize, whatif, generate,
 * abuse, examples, example, health; body is the JSON request. On success
 * *out holds the result document. On failure *out holds the error document. */
BAILNET_API int bailnet_handle_request(const char* endpoint, const char* body, const bailnet_config* config, char** out);

/* Typed shortcuts over bailnet_handle_request for a parsed network.
 * objective: "total", "own:<id>", "saved" or "welfare"; budget, lambda and
 * method may be NULL. */
BAILNET_API int bailnet_clear(const bailnet_network* network, char** out);
BAILNET_API int bailnet_optimize(const bailnet_network* network, const char* objective, const char* budget, const char* lambda,
                     const char* method, const bailnet_config* config, char** out);
/* ids: comma-separated bank ids, may be empty. */
BAILNET_API int bailnet_whatif(const bailnet_network* network, const char* ids, const char* objective, const char* lambda,
                   char** out);

/* HTTP service. static_dir may be NULL. port 0 picks a free port. */
BAILNET_API int bailnet_server_create(const char* host, int port, const char* static_dir, const bailnet_config* config,
                          bailnet_server** out);
BAILNET_API int bailnet_server_port(const bailnet_server* server);
/* Runs in a background thread until bailnet_server_stop. */
BAILNET_API int bailnet_server_start(bailnet_server* server);
/* Blocks the caller until stopped. */
BAILNET_API int bailnet_server_run(bailnet_server* server);
BAILNET_API void bailnet_server_stop(bailnet_server* server);
BAILNET_API void bailnet_server_free(bailnet_server* server);

#ifdef __cplusplus
}
#endif

#endif

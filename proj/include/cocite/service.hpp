#pragma once

// Read-only JSON API over an immutable AnalysisBundle. route() is a pure
// function of the bundle and the request; ApiServer wraps it in HTTP.

#include "cocite/pipeline.hpp"

#include <map>
#include <memory>
#include <string>

namespace cocite {

struct ApiRequest {
    std::string method = "GET";
    std::string path;                            // already percent-decoded
    std::map<std::string, std::string> query;    // decoded parameters
    std::string if_none_match;                   // value of If-None-Match, if any
};

struct ApiResponse {
    int status = 200;
    std::string body;  // JSON; empty for 304
    std::map<std::string, std::string> headers;
};

/// Strong ETag of a response body: quoted 16-digit hex FNV-1a hash.
std::string body_etag(const std::string& body);

ApiResponse route(const AnalysisBundle& bundle, const ApiRequest& request);

/// HTTP wrapper around route(). The bundle must outlive the server.
class ApiServer {
public:
    explicit ApiServer(const AnalysisBundle& bundle);
    ~ApiServer();
    ApiServer(const ApiServer&) = delete;
    ApiServer& operator=(const ApiServer&) = delete;

    /// Binds host:port (port 0 picks a free port) and returns the bound port.
    int bind(const std::string& host, int port);
    /// Serves until stop(); returns false if the listener failed.
    bool listen();
    void stop();

private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
};

}  // namespace cocite

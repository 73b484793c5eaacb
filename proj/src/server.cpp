#include "cocite/service.hpp"

#include <httplib.h>

namespace cocite {

struct ApiServer::Impl {
    const AnalysisBundle& bundle;
    httplib::Server server;

    explicit Impl(const AnalysisBundle& b) : bundle(b) {
        server.set_pre_routing_handler([this](const httplib::Request& req, httplib::Response& res) {
            ApiRequest request;
            request.method = req.method;
            request.path = req.path;
            for (const auto& [name, value] : req.params) request.query.emplace(name, value);
            request.if_none_match = req.get_header_value("If-None-Match");
            const auto response = route(bundle, request);
            res.status = response.status;
            for (const auto& [name, value] : response.headers) {
                if (name != "Content-Type") res.set_header(name, value);
            }
            if (response.status != 304) {
                const auto type = response.headers.count("Content-Type") ? response.headers.at("Content-Type")
                                                                         : std::string("application/json");
                res.set_content(response.body, type);
            }
            return httplib::Server::HandlerResponse::Handled;
        });
    }
};

ApiServer::ApiServer(const AnalysisBundle& bundle) : impl_(std::make_unique<Impl>(bundle)) {}

ApiServer::~ApiServer() = default;

int ApiServer::bind(const std::string& host, int port) {
    if (port == 0) return impl_->server.bind_to_any_port(host);
    return impl_->server.bind_to_port(host, port) ? port : -1;
}

bool ApiServer::listen() { return impl_->server.listen_after_bind(); }

void ApiServer::stop() { impl_->server.stop(); }

}  // namespace cocite

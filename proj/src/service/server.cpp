#include <iostream>

#include "codetales/service/service.hpp"
#include "httplib.h"

namespace codetales::service {

struct Server::Impl {
  Api& api;
  ServeOptions options;
  httplib::Server http;
};

namespace {

std::map<std::string, std::string> query_of(const httplib::Request& req) {
  std::map<std::string, std::string> q;
  for (const auto& [k, v] : req.params) q.emplace(k, v);
  return q;
}

}  // namespace

Server::Server(Api& api, ServeOptions options) : impl_(new Impl{api, std::move(options), {}}) {
  auto& http = impl_->http;
  auto dispatch = [this](const httplib::Request& req, httplib::Response& res) {
    auto r = impl_->api.handle(req.method, req.path, query_of(req), req.body);
    res.status = r.status;
    res.set_content(r.body.dump(), "application/json; charset=utf-8");
  };
  http.Get(R"(/api/.*)", dispatch);
  http.Post(R"(/api/.*)", dispatch);

  const auto media = impl_->api.bundle().root / "media";
  if (std::filesystem::is_directory(media)) http.set_mount_point("/media", media.string());
  if (!impl_->options.ui_dir.empty()) {
    if (!http.set_mount_point("/", impl_->options.ui_dir.string()))
      std::cerr << "warning: UI directory " << impl_->options.ui_dir << " does not exist\n";
  }
  http.set_file_extension_and_mimetype_mapping("svg", "image/svg+xml");
  http.set_error_handler([](const httplib::Request& req, httplib::Response& res) {
    if (!res.body.empty()) return;
    Json body{{"error", {{"code", "not-found"}, {"message", "no route for " + req.method + " " + req.path}}}};
    if (res.status != 404) body["error"]["code"] = "http-" + std::to_string(res.status);
    res.set_content(body.dump(), "application/json; charset=utf-8");
  });
}

Server::~Server() = default;

int Server::bind() {
  auto& o = impl_->options;
  if (o.port == 0) return impl_->http.bind_to_any_port(o.host);
  return impl_->http.bind_to_port(o.host, o.port) ? o.port : -1;
}

bool Server::listen() { return impl_->http.listen_after_bind(); }

void Server::stop() { impl_->http.stop(); }

}  // namespace codetales::service

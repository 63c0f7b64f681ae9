#include "mb/service.h"

#include <cstdlib>

#include "httplib.h"

namespace mb {

namespace {

using Json = nlohmann::ordered_json;

void Send(httplib::Response& res, int status, const Json& body) {
  res.status = status;
  res.set_content(body.dump(), "application/json");
}

template <typename F>
httplib::Server::Handler Wrap(F f) {
  return [f](const httplib::Request& req, httplib::Response& res) {
    try {
      Send(res, 200, f(req));
    } catch (const ServiceError& e) {
      Send(res, e.status(), e.ToJson());
    } catch (const std::exception& e) {
      Send(res, 500, Json{{"error", "Internal"}, {"message", e.what()}});
    }
  };
}

Json Body(const httplib::Request& req) {
  Json j = Json::parse(req.body, nullptr, false);
  if (j.is_discarded()) {
    throw ServiceError(400, "BadJson", "request body is not valid JSON");
  }
  return j;
}

}  // namespace

void RegisterRoutes(httplib::Server& server, SessionManager& sessions) {
  server.Post("/sessions", Wrap([&](const httplib::Request& req) {
                return sessions.Create(Body(req));
              }));
  server.Get(R"(/sessions/([^/]+))", Wrap([&](const httplib::Request& req) {
               return sessions.Get(req.matches[1]);
             }));
  server.Post(R"(/sessions/([^/]+)/moves)",
              Wrap([&](const httplib::Request& req) {
                return sessions.SubmitMove(req.matches[1], Body(req));
              }));
  server.Get(R"(/sessions/([^/]+)/tree)", Wrap([&](const httplib::Request& req) {
               return sessions.Tree(req.matches[1]);
             }));
  server.Get(R"(/sessions/([^/]+)/hints)",
             Wrap([&](const httplib::Request& req) {
               return sessions.Hints(req.matches[1]);
             }));
}

std::string BindAddress() {
  const char* env = std::getenv("MB_BIND_ADDRESS");
  return env && *env ? env : "127.0.0.1";
}

bool Serve(SessionManager& sessions, const std::string& host, int port) {
  httplib::Server server;
  RegisterRoutes(server, sessions);
  return server.listen(host, port);
}

}  // namespace mb

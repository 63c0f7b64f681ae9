// JSON over HTTP front end for SessionManager.
#ifndef MB_SERVICE_H_
#define MB_SERVICE_H_

#include <string>

#include "mb/session.h"

namespace httplib {
class Server;
}

namespace mb {

// POST /sessions, GET /sessions/{id}, POST /sessions/{id}/moves,
// GET /sessions/{id}/tree, GET /sessions/{id}/hints.
void RegisterRoutes(httplib::Server& server, SessionManager& sessions);

// Bind address from MB_BIND_ADDRESS, 127.0.0.1 when unset.
std::string BindAddress();

// Blocks until the server stops. Returns false if the port cannot be bound.
bool Serve(SessionManager& sessions, const std::string& host, int port);

}  // namespace mb

#endif  // MB_SERVICE_H_

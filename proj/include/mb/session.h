// Interactive games: a human plays one side against an engine strategy, one
// request at a time. Transport-free; the HTTP layer lives in service.h.
#ifndef MB_SESSION_H_
#define MB_SESSION_H_

#include <cstdint>
#include <fstream>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <stdexcept>
#include <string>

#include "json.hpp"
#include "mb/referee.h"
#include "mb/strategy.h"

namespace mb {

// Carries the HTTP status the request maps to: 400 bad request, 404 unknown
// session, 409 illegal move or endpoint not applicable.
class ServiceError : public std::runtime_error {
 public:
  ServiceError(int status, std::string code, const std::string& what,
               std::string field = "")
      : std::runtime_error(what),
        status_(status),
        code_(std::move(code)),
        field_(std::move(field)) {}
  int status() const { return status_; }
  const std::string& code() const { return code_; }
  const std::string& field() const { return field_; }
  nlohmann::ordered_json ToJson() const;

 private:
  int status_;
  std::string code_;
  std::string field_;
};

class SessionManager {
 public:
  // With a directory, every session appends its transcript to
  // <dir>/session-<id>.jsonl as the game goes.
  explicit SessionManager(std::optional<std::string> transcript_dir = {});
  ~SessionManager();

  // Body: {"board": <board JSON or "K6">, "goal": "clique:4",
  // "humanRole": "Breaker"|"Maker"|"B"|"M", "engine": "<strategy spec>",
  // "seed": n, "bias": k, "breakerFirst": b, "horizon": "w", "budget": n}.
  // Only board, goal, humanRole and engine are required. Returns
  // {"id", "engineMoves", "state"}.
  nlohmann::ordered_json Create(const nlohmann::ordered_json& body);
  nlohmann::ordered_json Get(const std::string& id);
  // Body: {"edge": [vertex, vertex]}. Returns {"accepted", "engineMoves",
  // "status", "witness"?, "treeDelta"?, "hints"?}.
  nlohmann::ordered_json SubmitMove(const std::string& id,
                                    const nlohmann::ordered_json& body);
  nlohmann::ordered_json Tree(const std::string& id);
  nlohmann::ordered_json Hints(const std::string& id);

  std::size_t size() const;

 private:
  struct Session;
  std::shared_ptr<Session> Find(const std::string& id) const;

  std::optional<std::string> transcript_dir_;
  mutable std::mutex mu_;
  std::uint64_t next_id_ = 1;
  std::map<std::string, std::shared_ptr<Session>> sessions_;
};

}  // namespace mb

#endif  // MB_SESSION_H_

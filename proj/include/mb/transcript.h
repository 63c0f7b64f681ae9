// JSON-lines transcripts and the shared JSON vocabulary (vertices, edges,
// boards) used by the harness and the session service.
#ifndef MB_TRANSCRIPT_H_
#define MB_TRANSCRIPT_H_

#include <istream>
#include <stdexcept>
#include <string>

#include "json.hpp"
#include "mb/board.h"
#include "mb/goal.h"
#include "mb/referee.h"

namespace mb {

using Json = nlohmann::ordered_json;

// Malformed input; line() is 1-based (0 when not tied to a line).
class TranscriptError : public std::runtime_error {
 public:
  TranscriptError(std::size_t line, const std::string& what)
      : std::runtime_error(line == 0 ? what
                                     : "line " + std::to_string(line) + ": " +
                                           what),
        line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

Json VertexToJson(const Vertex& v);
Vertex VertexFromJson(const Json& j);
Json EdgeToJson(const Edge& e);
Edge EdgeFromJson(const Json& j);
Json BoardToJson(const Board& b);
Board BoardFromJson(const Json& j);
Json WitnessToJson(const Goal& goal, const Witness& w);
Witness WitnessFromJson(const Goal& goal, const Json& j);
Json MoveToJson(const Move& m);

// Header line, one line per move, final line; each ends with '\n'.
std::string SerializeTranscript(const Transcript& t);
Json HeaderJson(const Transcript& t);
Json FinalJson(const Transcript& t);

// Parses a transcript without replaying it. Structural problems throw
// TranscriptError naming the line. Moves are returned as written; legality is
// the caller's business (see Replay).
Transcript ParseTranscript(std::istream& in);
Transcript ParseTranscriptFile(const std::string& path);

// Replays the moves on a fresh state. Throws TranscriptError naming the move
// line (header is line 1) on the first illegal claim or turn mismatch.
GameState Replay(const Transcript& t);

}  // namespace mb

#endif  // MB_TRANSCRIPT_H_

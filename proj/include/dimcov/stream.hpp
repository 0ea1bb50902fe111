#pragma once

#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "dimcov/graph.hpp"

namespace dimcov {

// Update stream text format, one event per line:
//
//   node              new node; ids are implicit and consecutive from 0
//   edge U V P        new edge U -> V with parameter P in (0, 1]
//   del U V           delete edge U -> V (recompute baseline only)
//   query             report the current seed set
//
// Blank lines and '#' comments are skipped.  Ids must be written in decimal;
// parameters accept anything strtod accepts.

enum class EventKind { kNode, kEdge, kDel, kQuery };

struct UpdateEvent {
  EventKind kind = EventKind::kNode;
  NodeId u = 0;
  NodeId v = 0;
  double param = 0.0;
};

// Errors: ParseError carrying the 1-based line number.
std::vector<UpdateEvent> parse_stream(std::istream& in);
std::vector<UpdateEvent> parse_stream_text(const std::string& text);

std::string format_event(const UpdateEvent& ev);
void write_stream(std::span<const UpdateEvent> events, std::ostream& out);

}  // namespace dimcov

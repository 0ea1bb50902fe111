#include "dimcov/stream.hpp"

#include <cctype>
#include <charconv>
#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "dimcov/errors.hpp"

namespace dimcov {

namespace {

std::vector<std::string_view> tokenize(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i])))
      ++i;
    if (i >= line.size() || line[i] == '#') break;
    std::size_t j = i;
    while (j < line.size() &&
           !std::isspace(static_cast<unsigned char>(line[j])) &&
           line[j] != '#')
      ++j;
    out.push_back(line.substr(i, j - i));
    i = j;
  }
  return out;
}

NodeId parse_id(std::string_view tok, std::size_t line_no) {
  NodeId value = 0;
  const auto [ptr, ec] =
      std::from_chars(tok.data(), tok.data() + tok.size(), value);
  if (ec != std::errc{} || ptr != tok.data() + tok.size()) {
    throw ParseError(line_no, "expected a node id, got '" + std::string(tok) +
                                  "'");
  }
  return value;
}

double parse_param(std::string_view tok, std::size_t line_no) {
  const std::string buf(tok);
  char* end = nullptr;
  const double value = std::strtod(buf.c_str(), &end);
  if (end != buf.c_str() + buf.size()) {
    throw ParseError(line_no, "expected an edge parameter, got '" + buf + "'");
  }
  return value;
}

}  // namespace

std::vector<UpdateEvent> parse_stream(std::istream& in) {
  std::vector<UpdateEvent> events;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto toks = tokenize(line);
    if (toks.empty()) continue;
    const std::string_view op = toks[0];
    UpdateEvent ev;
    if (op == "node") {
      if (toks.size() != 1) {
        throw ParseError(line_no, "'node' takes no arguments, ids are implicit");
      }
      ev.kind = EventKind::kNode;
    } else if (op == "edge") {
      if (toks.size() != 4) {
        throw ParseError(line_no, "'edge' needs source, target and parameter");
      }
      ev.kind = EventKind::kEdge;
      ev.u = parse_id(toks[1], line_no);
      ev.v = parse_id(toks[2], line_no);
      ev.param = parse_param(toks[3], line_no);
    } else if (op == "del") {
      if (toks.size() != 3) {
        throw ParseError(line_no, "'del' needs source and target");
      }
      ev.kind = EventKind::kDel;
      ev.u = parse_id(toks[1], line_no);
      ev.v = parse_id(toks[2], line_no);
    } else if (op == "query") {
      if (toks.size() != 1) {
        throw ParseError(line_no, "'query' takes no arguments");
      }
      ev.kind = EventKind::kQuery;
    } else {
      throw ParseError(line_no, "unknown event '" + std::string(op) + "'");
    }
    events.push_back(ev);
  }
  return events;
}

std::vector<UpdateEvent> parse_stream_text(const std::string& text) {
  std::istringstream in(text);
  return parse_stream(in);
}

std::string format_event(const UpdateEvent& ev) {
  char buf[96];
  switch (ev.kind) {
    case EventKind::kNode:
      return "node";
    case EventKind::kEdge:
      std::snprintf(buf, sizeof buf, "edge %u %u %.17g", ev.u, ev.v, ev.param);
      return buf;
    case EventKind::kDel:
      std::snprintf(buf, sizeof buf, "del %u %u", ev.u, ev.v);
      return buf;
    case EventKind::kQuery:
      return "query";
  }
  return {};
}

void write_stream(std::span<const UpdateEvent> events, std::ostream& out) {
  for (const UpdateEvent& ev : events) {
    out << format_event(ev) << '\n';
  }
}

}  // namespace dimcov

#include "toda/flows.hpp"

#include <cctype>

#include "toda/error.hpp"

namespace toda {

namespace {

int parse_int(const std::string& s, const std::string& whole) {
  std::size_t used = 0;
  int v = 0;
  try {
    v = std::stoi(s, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (s.empty() || used != s.size()) throw Error(ErrorKind::InvalidArgument, "bad flow name '" + whole + "'");
  return v;
}

}  // namespace

FlowTag parse_flow(const std::string& name) {
  if (name == "u") return FlowTag::u();
  if (name == "v") return FlowTag::v();
  if (name.rfind("t:", 0) == 0) return FlowTag::t(parse_int(name.substr(2), name));
  const bool bar = name.rfind("sbar", 0) == 0;
  if (bar || name.rfind("s", 0) == 0) {
    const int n = parse_int(name.substr(bar ? 4 : 1), name);
    if (n < 1) throw Error(ErrorKind::InvalidArgument, "Lax flows start at n = 1: '" + name + "'");
    return bar ? FlowTag::sbar(n) : FlowTag::s(n);
  }
  throw Error(ErrorKind::InvalidArgument, "unknown flow '" + name + "'");
}

std::string flow_name(const FlowTag& f) {
  switch (f.kind) {
    case FlowKind::S: return "s" + std::to_string(f.n);
    case FlowKind::SBar: return "sbar" + std::to_string(f.n);
    case FlowKind::T: return "t:" + std::to_string(f.n);
    case FlowKind::U: return "u";
    case FlowKind::V: return "v";
  }
  return "?";
}

}  // namespace toda

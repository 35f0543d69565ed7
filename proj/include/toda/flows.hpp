#pragma once

#include <string>

namespace toda {

enum class FlowKind { S, SBar, T, U, V };

// S / SBar: Lax flows s_n, s-bar_n (n >= 1). T: primary flow t^{alpha,0} with alpha = n.
// U, V: the primary flows t^{u,0}, t^{v,0}.
struct FlowTag {
  FlowKind kind = FlowKind::T;
  int n = 0;
  static FlowTag s(int n) { return {FlowKind::S, n}; }
  static FlowTag sbar(int n) { return {FlowKind::SBar, n}; }
  static FlowTag t(int alpha) { return {FlowKind::T, alpha}; }
  static FlowTag u() { return {FlowKind::U, 0}; }
  static FlowTag v() { return {FlowKind::V, 0}; }
  friend bool operator==(const FlowTag&, const FlowTag&) = default;
};

// Names: s<n>, sbar<n>, t:<alpha>, u, v.
FlowTag parse_flow(const std::string& name);
std::string flow_name(const FlowTag& f);

}  // namespace toda

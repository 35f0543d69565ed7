#include "toda/io.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>

namespace toda {

json to_json(cplx c) { return json::array({c.real(), c.imag()}); }

json to_json(const LaurentSeries& s) {
  json re = json::array(), im = json::array();
  for (const auto& v : s.coeffs()) {
    re.push_back(v.real());
    im.push_back(v.imag());
  }
  return {{"lo", s.lo()}, {"re", re}, {"im", im}};
}

json to_json(const Point& p) { return {{"lambda", to_json(p.lambda)}, {"lambda_bar", to_json(p.lambda_bar)}}; }

json to_json(const FlatChart& c) {
  json t = json::object();
  for (int n = -c.n_max; n <= c.n_max; ++n) t[std::to_string(n)] = to_json(c.tn(n));
  return {{"t", t}, {"u", to_json(c.u)}, {"v", to_json(c.v)}};
}

json to_json(const LoopField& f) {
  json rows = json::array();
  if (!f.empty())
    for (int d = f.lo(); d <= f.hi(); ++d) {
      json r = json::array();
      for (const auto& v : f.degree(d)) r.push_back(to_json(v));
      rows.push_back(r);
    }
  return {{"K", f.K()}, {"lo", f.lo()}, {"nodes", rows}};
}

json to_json(const LoopPoint& L) { return {{"lambda", to_json(L.lambda)}, {"lambda_bar", to_json(L.lambda_bar)}}; }

cplx complex_from_json(const json& j) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (!j.is_array() || j.size() != 2) throw Error(ErrorKind::InvalidArgument, "complex must be [re, im]");
  return {j.at(0).get<double>(), j.at(1).get<double>()};
}

LaurentSeries series_from_json(const json& j) {
  const auto& re = j.at("re");
  const json im = j.contains("im") ? j.at("im") : json::array();
  if (!im.empty() && im.size() != re.size()) throw Error(ErrorKind::InvalidArgument, "re and im differ in length");
  std::vector<cplx> c;
  for (std::size_t i = 0; i < re.size(); ++i) c.emplace_back(re.at(i).get<double>(), im.empty() ? 0.0 : im.at(i).get<double>());
  return LaurentSeries(j.at("lo").get<int>(), std::move(c));
}

Point point_from_json(const json& j) {
  return make_point(series_from_json(j.at("lambda")), series_from_json(j.at("lambda_bar")));
}

FlatChart chart_from_json(const json& j) {
  FlatChart c = FlatChart::zeros(0);
  for (const auto& [key, val] : j.at("t").items()) {
    std::size_t used = 0;
    const int n = std::stoi(key, &used);
    if (used != key.size()) throw Error(ErrorKind::InvalidArgument, "bad t index '" + key + "'");
    c.set_tn(n, complex_from_json(val));
  }
  c.u = complex_from_json(j.at("u"));
  c.v = complex_from_json(j.at("v"));
  return c;
}

LoopField loop_field_from_json(const json& j) {
  const int K = j.at("K").get<int>();
  std::vector<cplx> d;
  for (const auto& row : j.at("nodes")) {
    if (row.size() != static_cast<std::size_t>(K)) throw Error(ErrorKind::GridMismatch, "row length differs from K");
    for (const auto& v : row) d.push_back(complex_from_json(v));
  }
  if (d.empty()) return LoopField(K);
  return LoopField(j.at("lo").get<int>(), K, std::move(d));
}

LoopPoint loop_point_from_json(const json& j) {
  return {loop_field_from_json(j.at("lambda")), loop_field_from_json(j.at("lambda_bar"))};
}

std::string fmt(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

void write_file_atomic(const std::string& path, const std::string& contents) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream f(tmp, std::ios::binary);
    if (!f) throw Error(ErrorKind::InvalidArgument, "cannot write " + tmp);
    f << contents;
  }
  std::filesystem::rename(tmp, path);
}

}  // namespace toda

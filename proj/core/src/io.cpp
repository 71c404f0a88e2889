#include "resonator/io.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

namespace resonator {

using nlohmann::json;

namespace {

json parse_json(const std::string& text) {
  json j = json::parse(text, nullptr, false);
  if (j.is_discarded()) fail(errc::parse_error, "invalid JSON");
  return j;
}

Num num_from_json(const json& j) {
  if (j.is_string()) return parse_number(j.get<std::string>());
  if (j.is_number_integer()) return Num(long(j.get<long long>()));
  if (j.is_number_float()) return Num::inexact(j.get<double>());
  fail(errc::parse_error, "expected a number or numeric string");
}

}  // namespace

MetricRibbonGraph parse_graph_json(const std::string& text) {
  json j = parse_json(text);
  if (!j.contains("edges") || !j.contains("cyclic_order"))
    fail(errc::parse_error, "graph file needs 'edges' and 'cyclic_order'");
  MetricRibbonGraph g;
  std::vector<std::tuple<int, int, int, Num>> edges;  // id, u, v, length
  int max_vertex = -1;
  for (const auto& e : j["edges"]) {
    int id = e.at("id").get<int>();
    int u = e.at("u").get<int>(), v = e.at("v").get<int>();
    edges.emplace_back(id, u, v, num_from_json(e.at("length")));
    max_vertex = std::max({max_vertex, u, v});
  }
  std::sort(edges.begin(), edges.end(),
            [](const auto& a, const auto& b) { return std::get<0>(a) < std::get<0>(b); });
  for (size_t i = 0; i < edges.size(); ++i) {
    if (std::get<0>(edges[i]) != int(i) + 1)
      fail(errc::parse_error, "edge ids must be 1..k without gaps");
    g.edges.push_back({std::get<1>(edges[i]), std::get<2>(edges[i]), std::get<3>(edges[i])});
  }
  g.cyclic_order.assign(size_t(max_vertex) + 1, {});
  for (const auto& [key, val] : j["cyclic_order"].items()) {
    int v = std::stoi(key);
    if (v < 0 || v > max_vertex) fail(errc::parse_error, "cyclic order for unknown vertex");
    for (const auto& id : val) g.cyclic_order[v].push_back(id.get<int>());
  }
  return validate_graph(g);
}

std::string graph_to_json(const MetricRibbonGraph& g) {
  json j;
  j["edges"] = json::array();
  for (int e = 0; e < g.num_edges(); ++e)
    j["edges"].push_back({{"id", e + 1},
                          {"u", g.edges[e].u},
                          {"v", g.edges[e].v},
                          {"length", g.edges[e].length.str()}});
  j["cyclic_order"] = json::object();
  for (int v = 0; v < g.num_vertices(); ++v) j["cyclic_order"][std::to_string(v)] = g.cyclic_order[v];
  return j.dump(2);
}

ExpPoly parse_exp_poly_json(const std::string& text) {
  json j = parse_json(text);
  if (!j.is_array()) fail(errc::parse_error, "polynomial file must be a JSON array");
  ExpPoly p;
  for (const auto& t : j)
    p.add_term({num_from_json(t.at("a")), t.at("b").get<long>(), num_from_json(t.at("c"))});
  return p;
}

std::string exp_poly_to_json(const ExpPoly& p) {
  json j = json::array();
  for (const auto& t : p.terms())
    j.push_back({{"a", t.a.str()}, {"b", t.b}, {"c", t.c.str()}});
  return j.dump(2);
}

SectorData parse_sector_data_json(const std::string& text) {
  json j = parse_json(text);
  SectorData data;
  for (const auto& sec : j.at("sectors")) {
    std::vector<SectorSide> sides;
    for (const auto& side : sec.at("sides")) {
      std::string type = side.at("type").get<std::string>();
      if (type != "boundary" && type != "intercostal")
        fail(errc::parse_error, "side type must be 'boundary' or 'intercostal'");
      sides.push_back({type == "intercostal", num_from_json(side.at("len")).value()});
    }
    data.sectors.push_back(std::move(sides));
  }
  for (const auto& g : j.at("gluings")) {
    if (!g.is_array() || g.size() != 4) fail(errc::parse_error, "gluing must be [s,i,s,i]");
    data.gluings.push_back({g[0].get<int>(), g[1].get<int>(), g[2].get<int>(), g[3].get<int>()});
  }
  for (const auto& d : j.at("directed_edges")) {
    if (!d.is_array() || d.size() != 2) fail(errc::parse_error, "directed edge must be [s,i]");
    data.directed_edges.push_back({d[0].get<int>(), d[1].get<int>()});
  }
  return data;
}

std::string sector_data_to_json(const SectorData& data) {
  json j;
  j["sectors"] = json::array();
  for (const auto& sec : data.sectors) {
    json sides = json::array();
    for (const auto& s : sec)
      sides.push_back({{"type", s.intercostal ? "intercostal" : "boundary"},
                       {"len", format_double(s.len)}});
    j["sectors"].push_back({{"sides", sides}});
  }
  j["gluings"] = json::array();
  for (const auto& g : data.gluings) j["gluings"].push_back({g[0], g[1], g[2], g[3]});
  j["directed_edges"] = json::array();
  for (const auto& d : data.directed_edges) j["directed_edges"].push_back({d.first, d.second});
  return j.dump(2);
}

std::string resonances_to_csv(const ResonanceReport& report) {
  std::ostringstream out;
  out << "re,im,multiplicity,method\n";
  for (const auto& r : report.roots)
    out << format_double(r.s.real()) << ',' << format_double(r.s.imag()) << ','
        << r.multiplicity << ',' << report.method << '\n';
  return out.str();
}

ResonanceReport parse_resonances_csv(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  ResonanceReport report;
  bool header = true;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    if (header) {
      header = false;
      continue;
    }
    std::istringstream row(line);
    std::string re, im, mult, method;
    if (!std::getline(row, re, ',') || !std::getline(row, im, ',') || !std::getline(row, mult, ','))
      fail(errc::parse_error, "bad resonance CSV row: " + line);
    std::getline(row, method, ',');
    report.roots.push_back({cpx(std::stod(re), std::stod(im)), std::stoi(mult)});
    report.method = method;
  }
  return report;
}

std::string chains_to_json(const ChainReport& chains) {
  json j;
  j["chains"] = json::array();
  for (const auto& c : chains.chains) {
    json members = json::array();
    for (cpx m : c.members) members.push_back({m.real(), m.imag()});
    j["chains"].push_back({{"re", c.re}, {"period", c.period}, {"members", members}});
  }
  j["ungrouped"] = json::array();
  for (cpx m : chains.ungrouped) j["ungrouped"].push_back({m.real(), m.imag()});
  return j.dump(2);
}

std::string orbits_to_csv(const OrbitTable& table) {
  std::ostringstream out;
  out << "word,length,log_deriv,primitive\n";
  for (int n = 1; n <= table.max_length(); ++n)
    for (const auto& rec : table.records(n)) {
      for (size_t t = 0; t < rec.word.size(); ++t) out << (t ? "-" : "") << rec.word[t];
      out << ',' << format_double(rec.length) << ',' << format_double(rec.log_deriv) << ','
          << (rec.primitive ? 1 : 0) << '\n';
    }
  return out.str();
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(errc::parse_error, "cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) fail(errc::config_error, "cannot write " + path);
  out << content;
}

std::string svg_scatter(const std::vector<SvgSeries>& series, const std::string& x_label,
                        const std::string& y_label, bool log_y) {
  const double W = 640, H = 480, margin = 60;
  double xmin = 1e300, xmax = -1e300, ymin = 1e300, ymax = -1e300;
  auto ty = [&](double y) { return log_y ? std::log10(std::max(y, 1e-300)) : y; };
  for (const auto& s : series)
    for (auto [x, y] : s.points) {
      xmin = std::min(xmin, x);
      xmax = std::max(xmax, x);
      ymin = std::min(ymin, ty(y));
      ymax = std::max(ymax, ty(y));
    }
  if (xmin > xmax) {
    xmin = 0;
    xmax = 1;
    ymin = 0;
    ymax = 1;
  }
  if (xmax - xmin < 1e-12) xmax = xmin + 1;
  if (ymax - ymin < 1e-12) ymax = ymin + 1;
  auto px = [&](double x) { return margin + (x - xmin) / (xmax - xmin) * (W - 2 * margin); };
  auto py = [&](double y) { return H - margin - (ty(y) - ymin) / (ymax - ymin) * (H - 2 * margin); };

  std::ostringstream out;
  out << "<svg xmlns='http://www.w3.org/2000/svg' width='" << W << "' height='" << H << "'>\n";
  out << "<rect width='100%' height='100%' fill='white'/>\n";
  out << "<line x1='" << margin << "' y1='" << H - margin << "' x2='" << W - margin << "' y2='"
      << H - margin << "' stroke='black'/>\n";
  out << "<line x1='" << margin << "' y1='" << margin << "' x2='" << margin << "' y2='"
      << H - margin << "' stroke='black'/>\n";
  out << "<text x='" << W / 2 << "' y='" << H - 15 << "' text-anchor='middle' font-size='14'>"
      << x_label << "</text>\n";
  out << "<text x='18' y='" << H / 2 << "' text-anchor='middle' font-size='14' transform='rotate(-90 18 "
      << H / 2 << ")'>" << y_label << (log_y ? " (log10)" : "") << "</text>\n";
  for (const auto& s : series) {
    if (s.line && s.points.size() > 1) {
      out << "<polyline fill='none' stroke='" << s.color << "' points='";
      for (auto [x, y] : s.points) out << px(x) << ',' << py(y) << ' ';
      out << "'/>\n";
    }
    for (auto [x, y] : s.points)
      out << "<circle cx='" << px(x) << "' cy='" << py(y) << "' r='4' fill='" << s.color << "'/>\n";
  }
  out << "</svg>\n";
  return out.str();
}

}  // namespace resonator

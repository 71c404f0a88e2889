#pragma once

#include <string>
#include <vector>

#include "resonator/exp_poly.hpp"
#include "resonator/graph.hpp"
#include "resonator/ifs.hpp"
#include "resonator/orbits.hpp"
#include "resonator/solver.hpp"

namespace resonator {

// graph file: {"edges":[{"id":1,"u":0,"v":1,"length":"1/2"},...],
//              "cyclic_order":{"0":[1,2,3],"1":[-1,-3,-2]}}
MetricRibbonGraph parse_graph_json(const std::string& text);
std::string graph_to_json(const MetricRibbonGraph& g);

// ExpPoly file: [{"a":"-4","b":6,"c":"3"},...]
ExpPoly parse_exp_poly_json(const std::string& text);
std::string exp_poly_to_json(const ExpPoly& p);

// sector file: {"sectors":[{"sides":[{"type":"boundary","len":"4"},...]}],
//               "gluings":[[s,i,s,i],...],"directed_edges":[[s,i],...]}
SectorData parse_sector_data_json(const std::string& text);
std::string sector_data_to_json(const SectorData& data);

// resonance CSV: re,im,multiplicity,method
std::string resonances_to_csv(const ResonanceReport& report);

// chain JSON: [{"re":..,"period":..,"members":[[re,im],...]},...] plus ungrouped
std::string chains_to_json(const ChainReport& chains);
ResonanceReport parse_resonances_csv(const std::string& text);

// orbit CSV: word,length,log_deriv,primitive
std::string orbits_to_csv(const OrbitTable& table);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& content);

// minimal scatter/line plot, log-scale y optional
struct SvgSeries {
  std::vector<std::pair<double, double>> points;
  std::string color = "#1f77b4";
  bool line = true;
};
std::string svg_scatter(const std::vector<SvgSeries>& series, const std::string& x_label,
                        const std::string& y_label, bool log_y = false);

}  // namespace resonator

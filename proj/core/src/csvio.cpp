#include "qnet/csvio.hpp"

#include <cinttypes>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <limits>
#include <sstream>

#include "qnet/errors.hpp"

namespace qnet {

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError("cannot open '" + path + "' for writing");
  out << content;
  if (!out) throw DataError("failed writing '" + path + "'");
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> fields;
  std::string cur;
  for (const char c : line) {
    if (c == ',') {
      fields.push_back(cur);
      cur.clear();
    } else if (c != '\r') {
      cur.push_back(c);
    }
  }
  fields.push_back(cur);
  return fields;
}

double parse_double(const std::string& s, const std::string& path, size_t line_no) {
  char* end = nullptr;
  const double v = std::strtod(s.c_str(), &end);
  if (end == s.c_str() || *end != '\0') {
    throw DataError("'" + path + "' line " + std::to_string(line_no) +
                    ": bad number '" + s + "'");
  }
  return v;
}

long long parse_int(const std::string& s, const std::string& path, size_t line_no) {
  char* end = nullptr;
  const long long v = std::strtoll(s.c_str(), &end, 10);
  if (end == s.c_str() || *end != '\0') {
    throw DataError("'" + path + "' line " + std::to_string(line_no) +
                    ": bad integer '" + s + "'");
  }
  return v;
}

std::vector<std::vector<std::string>> read_csv(const std::string& path,
                                               const std::string& expected_header) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open '" + path + "'");
  std::string line;
  if (!std::getline(in, line)) throw DataError("'" + path + "': empty file");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != expected_header) {
    throw DataError("'" + path + "': expected header '" + expected_header + "'");
  }
  std::vector<std::vector<std::string>> rows;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    rows.push_back(split_csv_line(line));
  }
  return rows;
}

}  // namespace

void write_nodes_csv(const std::string& path, const NodeSet& nodes) {
  std::ostringstream out;
  out << "id,x_km,y_km,region_id\n";
  for (int i = 0; i < nodes.n(); ++i) {
    out << i << ',' << format_double(nodes.pos[i].x) << ','
        << format_double(nodes.pos[i].y) << ',' << nodes.region_id[i] << '\n';
  }
  write_text_file(path, out.str());
}

NodeSet read_nodes_csv(const std::string& path) {
  const auto rows = read_csv(path, "id,x_km,y_km,region_id");
  NodeSet nodes;
  size_t line_no = 1;
  for (const auto& row : rows) {
    ++line_no;
    if (row.size() != 4) {
      throw DataError("'" + path + "' line " + std::to_string(line_no) +
                      ": expected 4 fields");
    }
    const long long id = parse_int(row[0], path, line_no);
    if (id != static_cast<long long>(nodes.pos.size())) {
      throw DataError("'" + path + "' line " + std::to_string(line_no) +
                      ": node ids must be consecutive from 0");
    }
    nodes.pos.push_back({parse_double(row[1], path, line_no),
                         parse_double(row[2], path, line_no)});
    nodes.region_id.push_back(static_cast<int32_t>(parse_int(row[3], path, line_no)));
  }
  return nodes;
}

void write_edges_csv(const std::string& path, const Graph& fiber,
                     const Graph& photonic) {
  std::ostringstream out;
  out << "i,j,d_km,layer\n";
  for (const Edge& e : fiber.edges()) {
    out << e.u << ',' << e.v << ',' << format_double(e.length_km) << ",fiber\n";
  }
  for (const Edge& e : photonic.edges()) {
    out << e.u << ',' << e.v << ',' << format_double(e.length_km) << ",photonic\n";
  }
  write_text_file(path, out.str());
}

Graph read_edges_csv(const std::string& path, int num_nodes, const std::string& layer) {
  if (layer != "fiber" && layer != "photonic") {
    throw ConfigError("unknown edge layer '" + layer + "'");
  }
  const auto rows = read_csv(path, "i,j,d_km,layer");
  std::vector<Edge> edges;
  size_t line_no = 1;
  for (const auto& row : rows) {
    ++line_no;
    if (row.size() != 4) {
      throw DataError("'" + path + "' line " + std::to_string(line_no) +
                      ": expected 4 fields");
    }
    if (row[3] != "fiber" && row[3] != "photonic") {
      throw DataError("'" + path + "' line " + std::to_string(line_no) +
                      ": unknown layer '" + row[3] + "'");
    }
    if (row[3] != layer) continue;
    edges.push_back({static_cast<int32_t>(parse_int(row[0], path, line_no)),
                     static_cast<int32_t>(parse_int(row[1], path, line_no)),
                     parse_double(row[2], path, line_no)});
  }
  return Graph(num_nodes, std::move(edges));
}

std::string stats_header() {
  return "seed,N,rho,NG_over_N,avg_C,avg_l_hops,diameter_hops,avg_dist_m";
}

std::string stats_row(const StatsRow& row) {
  std::ostringstream out;
  out << row.seed << ',' << row.n << ',' << format_double(row.rho) << ','
      << format_double(row.ng_over_n) << ',' << format_double(row.avg_c) << ','
      << format_double(row.avg_l_hops) << ',' << row.diameter_hops << ','
      << format_double(row.avg_dist_m);
  return out.str();
}

void write_histogram_csv(const std::string& path, const Histogram& hist) {
  std::ostringstream out;
  out << "bin_lo,bin_hi,count,density\n";
  const int64_t total = hist.total();
  const double width = hist.bin_width();
  for (size_t b = 0; b < hist.counts.size(); ++b) {
    const double lo = hist.lo + width * static_cast<double>(b);
    const double hi = lo + width;
    const double density =
        total > 0 ? static_cast<double>(hist.counts[b]) / (total * width) : 0.0;
    out << format_double(lo) << ',' << format_double(hi) << ',' << hist.counts[b]
        << ',' << format_double(density) << '\n';
  }
  write_text_file(path, out.str());
}

void write_degree_histogram_csv(const std::string& path, const DegreeHistogram& hist) {
  std::ostringstream out;
  out << "bin_lo,bin_hi,density\n";
  for (const DegreeHistogram::Bin& b : hist.bins) {
    out << format_double(b.lo) << ',' << format_double(b.hi) << ','
        << format_double(b.density) << '\n';
  }
  write_text_file(path, out.str());
}

void write_hop_histogram_csv(const std::string& path,
                             const std::vector<int64_t>& hop_histogram) {
  std::ostringstream out;
  out << "hops,count\n";
  for (size_t h = 0; h < hop_histogram.size(); ++h) {
    out << h << ',' << hop_histogram[h] << '\n';
  }
  write_text_file(path, out.str());
}

void write_rates_csv(const std::string& path, const RateSummary& summary,
                     const RepeaterParams& params) {
  std::ostringstream out;
  out << "u,v,mode,m,L_km,P0,T_mean_s,rate_hz\n";
  for (const PairRate& pr : summary.pairs) {
    const double seg = pr.length_km / pr.m;
    const double p0 = segment_success_prob(seg, params.gamma_db_per_km);
    const double t_mean = pr.rate_hz > 0.0 ? 1.0 / pr.rate_hz
                                           : std::numeric_limits<double>::infinity();
    out << pr.u << ',' << pr.v << ',' << to_string(summary.mode) << ',' << pr.m << ','
        << format_double(pr.length_km) << ',' << format_double(p0) << ','
        << format_double(t_mean) << ',' << format_double(pr.rate_hz) << '\n';
  }
  write_text_file(path, out.str());
}

}  // namespace qnet

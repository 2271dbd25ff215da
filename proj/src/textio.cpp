#include "streamsim/textio.hpp"

#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>

namespace streamsim {

namespace {

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string join_ids(const std::vector<ServiceId>& ids) {
  std::string out;
  for (std::size_t i = 0; i < ids.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(ids[i]);
  }
  return out.empty() ? "-" : out;
}

std::vector<ServiceId> split_ids(const std::string& s) {
  std::vector<ServiceId> out;
  if (s == "-") return out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(static_cast<ServiceId>(std::stol(item)));
  return out;
}

}  // namespace

void write_graph(std::ostream& os, const ResourceGraph& graph, const ServiceCatalog& catalog) {
  os << "# streamsim graph v1\n";
  os << "# service <id> <cpu_usage_factor> <bandwidth_shrinkage_factor>\n";
  for (const ServiceType& s : catalog.all())
    os << "service " << s.id << ' ' << fmt(s.cpu_usage_factor) << ' '
       << fmt(s.bandwidth_shrinkage_factor) << '\n';
  os << "# node <id> <cpu_capacity> <uplink_bw> <downlink_bw> <public_delay_half> <services>\n";
  for (const ServerNode& n : graph.nodes())
    os << "node " << n.id << ' ' << fmt(n.cpu_capacity) << ' ' << fmt(n.uplink_bw) << ' '
       << fmt(n.downlink_bw) << ' ' << fmt(n.public_delay_half) << ' ' << join_ids(n.hosted)
       << '\n';
  os << "# edge <id> <a> <b> <bandwidth> <cost> <delay>\n";
  for (const DedicatedLink& e : graph.edges())
    os << "edge " << e.id << ' ' << e.a << ' ' << e.b << ' ' << fmt(e.bandwidth) << ' '
       << fmt(e.cost) << ' ' << fmt(e.delay) << '\n';
}

void write_workload(std::ostream& os, const Workload& workload) {
  os << "# streamsim workload v1\n";
  os << "# task <id> <arrival> <source> <delivery> <rate> <window> <price_per_byte> <volume> "
        "<services>\n";
  for (const TaskSpec& t : workload.tasks)
    os << "task " << t.id << ' ' << fmt(t.arrival_time) << ' ' << t.source << ' ' << t.delivery
       << ' ' << fmt(t.delivery_rate) << ' ' << fmt(t.window) << ' ' << fmt(t.price_per_byte)
       << ' ' << fmt(t.volume) << ' ' << join_ids(t.services) << '\n';
}

GraphFile read_graph(std::istream& is) {
  GraphFile out;
  std::vector<ServiceType> services;
  std::string line;
  while (std::getline(is, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::istringstream ss(line);
    std::string kind;
    ss >> kind;
    if (kind == "service") {
      ServiceType s;
      ss >> s.id >> s.cpu_usage_factor >> s.bandwidth_shrinkage_factor;
      services.push_back(s);
    } else if (kind == "node") {
      ServerNode n;
      NodeId id = kNoNode;
      std::string svc;
      ss >> id >> n.cpu_capacity >> n.uplink_bw >> n.downlink_bw >> n.public_delay_half >> svc;
      n.hosted = split_ids(svc);
      NodeId got = out.graph.add_node(std::move(n));
      if (got != id) throw ConfigError("graph file: node ids must be dense and ordered");
    } else if (kind == "edge") {
      EdgeId id = kNoEdge;
      NodeId a = kNoNode, b = kNoNode;
      double bw = 0, cost = 0, delay = 0;
      ss >> id >> a >> b >> bw >> cost >> delay;
      EdgeId got = out.graph.add_edge(a, b, bw, cost, delay);
      if (got != id) throw ConfigError("graph file: edge ids must be dense and ordered");
    } else {
      throw ConfigError("graph file: unknown record '" + kind + "'");
    }
    if (ss.fail()) throw ConfigError("graph file: malformed line: " + line);
  }
  out.catalog = ServiceCatalog(std::move(services));
  out.graph.rebuild_directory(out.catalog.size());
  return out;
}

Workload read_workload(std::istream& is) {
  Workload wl;
  std::string line;
  while (std::getline(is, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::istringstream ss(line);
    std::string kind;
    ss >> kind;
    if (kind != "task") throw ConfigError("workload file: unknown record '" + kind + "'");
    TaskSpec t;
    std::string svc;
    ss >> t.id >> t.arrival_time >> t.source >> t.delivery >> t.delivery_rate >> t.window >>
        t.price_per_byte >> t.volume >> svc;
    if (ss.fail()) throw ConfigError("workload file: malformed line: " + line);
    t.services = split_ids(svc);
    wl.tasks.push_back(std::move(t));
  }
  return wl;
}

}  // namespace streamsim
